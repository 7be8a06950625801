//! Words over a finite alphabet.

use crate::{Error, Result};
use std::fmt;

/// Largest supported alphabet size. Symbols are stored as `u16`, so the
/// alphabet `{0, .., q-1}` must fit in one.
pub const MAX_Q: u32 = 1 << 16;

const BASE36: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// An immutable word over the alphabet `{0, .., q-1}`.
///
/// Equality, ordering and hashing are by `(q, symbols)`, so words of different
/// alphabets never compare equal and sets of words sort lexicographically
/// within one alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    q: u32,
    symbols: Vec<u16>,
}

impl Word {
    /// Creates a word, validating every symbol against the alphabet.
    pub fn new(q: u32, symbols: Vec<u16>) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::Domain(format!("alphabet size must be in 2..={MAX_Q}, got {q}")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| u32::from(s) >= q) {
            return Err(Error::Domain(format!("symbol {s} out of range for alphabet size {q}")));
        }
        Ok(Word { q, symbols })
    }

    /// The empty word over alphabet `q`.
    pub fn empty(q: u32) -> Result<Self> {
        Word::new(q, Vec::new())
    }

    /// Parses the textual form produced by [`Display`](fmt::Display).
    ///
    /// For `q <= 36` a word is a string of base-36 digits (`0-9a-z`, upper
    /// case accepted), e.g. `"0211301"`. For larger alphabets — or whenever
    /// the text contains whitespace — it is a sequence of space-separated
    /// decimal symbols, e.g. `"0 17 42"`. An empty or all-whitespace string
    /// is the empty word.
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Word::empty(q);
        }
        if q > 36 || text.contains(char::is_whitespace) {
            let symbols = text
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u16>().map_err(|_| {
                        Error::Domain(format!(
                            "invalid symbol {tok:?}: expected a decimal in 0..{q}"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Word::new(q, symbols);
        }
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u16)
                    .ok_or_else(|| Error::Domain(format!("invalid base-36 digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(q, symbols)
    }

    /// Alphabet size.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of symbols.
    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Whether the word has no symbols.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The symbols as a slice.
    #[inline]
    pub fn symbols(&self) -> &[u16] {
        &self.symbols
    }

    /// Consumes the word, returning its symbols.
    pub fn into_symbols(self) -> Vec<u16> {
        self.symbols
    }

    /// Builds a word from symbols already known to be in range.
    ///
    /// Used internally where symbols come from arithmetic mod `q`; debug
    /// builds still validate.
    pub(crate) fn from_trusted(q: u32, symbols: Vec<u16>) -> Self {
        debug_assert!(symbols.iter().all(|&s| u32::from(s) < q));
        Word { q, symbols }
    }

    /// Validates that `other` shares this word's alphabet.
    pub(crate) fn check_same_q(&self, other: &Word) -> Result<()> {
        if self.q != other.q {
            return Err(Error::Domain(format!("alphabet mismatch: {} vs {}", self.q, other.q)));
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Word {
    type Output = u16;
    #[inline]
    fn index(&self, i: usize) -> &u16 {
        &self.symbols[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 36 {
            for &s in &self.symbols {
                write!(f, "{}", BASE36[s as usize] as char)?;
            }
        } else {
            for (i, &s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}
