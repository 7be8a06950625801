//! Word-file input/output.
//!
//! A word file holds one word per line. For alphabets up to 36 each word is
//! a string of base-36 digits; for larger alphabets symbols are
//! space-separated decimals and the file begins with a `#q=<value>` header.
//! Lines starting with `#` are otherwise comments, and blank lines are
//! skipped. Reading and re-writing a file is byte-stable for the words.

use diffvt::{Error, Result, Word};
use std::fmt::Write as _;
use std::path::Path;

pub fn read_words(path: &Path, q: u32) -> Result<Vec<Word>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    let mut words = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(value) = rest.trim().strip_prefix("q=") {
                let declared: u32 = value.trim().parse().map_err(|_| {
                    Error::Domain(format!(
                        "{}:{}: malformed alphabet header {line:?}",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                if declared != q {
                    return Err(Error::Domain(format!(
                        "{}:{}: file declares q={declared} but q={q} was requested",
                        path.display(),
                        lineno + 1
                    )));
                }
            }
            continue;
        }
        let w = Word::parse(q, line)
            .map_err(|e| Error::Domain(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        words.push(w);
    }
    Ok(words)
}

pub fn write_words(path: &Path, words: &[Word], q: u32) -> Result<()> {
    let mut text = String::new();
    if q > 36 {
        writeln!(text, "#q={q}").expect("writing to a string");
    }
    for w in words {
        writeln!(text, "{w}").expect("writing to a string");
    }
    std::fs::write(path, text)
        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}
