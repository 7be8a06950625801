//! Run-length limiting by sequence replacement.
//!
//! The burst constructions need their first row to contain no run longer
//! than `ell = ceil(log_q n) + 3`. This module provides an invertible map
//! from arbitrary words of length `n - 1` to run-length-limited words of
//! length `n`: every run of `T = ell + 1` equal symbols is deleted and
//! re-described by a fixed-width record appended at the tail, repeatedly,
//! until no such run remains.
//!
//! Layout of the encoded word when `k >= 1` replacements fired:
//!
//! ```text
//! D | g | pad (k-1) | rec_1 | ... | rec_k | flag
//! ```
//!
//! where `D` is the residual data, `g = (last of D) + 1 mod q` guards the
//! data boundary, the pad alternates `g+1, g, g+1, ..`, each record is
//! `[position digits (LSB first), sigma, sigma+1, continuation]`, and the
//! flag copies its left neighbour. When nothing fired the output is the
//! message plus one tail symbol differing from its neighbour, so the last
//! two symbols tell the two shapes apart.

use crate::pos::idx;
use crate::word::Word;
use crate::{ceil_log, Error, Result};

/// Length of the longest run of equal symbols (0 for the empty word).
pub fn max_run(w: &Word) -> usize {
    let mut best = 0;
    let mut cur = 0;
    let mut prev: Option<u16> = None;
    for &s in w.symbols() {
        if Some(s) == prev {
            cur += 1;
        } else {
            cur = 1;
            prev = Some(s);
        }
        best = best.max(cur);
    }
    best
}

/// The run-length bound `ell = ceil(log_q n) + 3` the encoder guarantees for
/// output length `n`.
pub fn run_limit(q: u32, n: usize) -> usize {
    ceil_log(u64::from(q), n as u64) + 3
}

/// The run bound after composing the replacement encoder with a systematic
/// differential VT encoder at length `n`: `2*ceil(log_q n) + 5`.
pub fn composite_run_limit(q: u32, n: usize) -> usize {
    2 * ceil_log(u64::from(q), n as u64) + 5
}

/// Whether `w` obeys the composite run bound for its own length.
pub fn check_composite_bound(w: &Word) -> bool {
    max_run(w) <= composite_run_limit(w.q(), w.len())
}

/// Whether the replacement scheme supports output length `n` over alphabet
/// `q`: the tail bookkeeping must fit even in the worst case, which needs
/// `n >= q^2` and `n >= 2(m + 4)` with `m = ceil(log_q n)`.
pub fn supports(q: u32, n: usize) -> bool {
    let m = ceil_log(u64::from(q), n as u64);
    (n as u64) >= u64::from(q) * u64::from(q) && n >= 2 * (m + 4)
}

fn require_support(q: u32, n: usize) -> Result<()> {
    if !supports(q, n) {
        return Err(Error::Domain(format!(
            "run-length limiting unsupported at q={q}, n={n}: need n >= q^2 and n >= 2(m+4)"
        )));
    }
    Ok(())
}

/// 1-based start of the leftmost window of `t` equal symbols, if any.
fn find_long_run(v: &[u16], t: usize) -> Option<usize> {
    let mut start = 0usize;
    for i in 0..v.len() {
        if i > 0 && v[i] != v[i - 1] {
            start = i;
        }
        if i + 1 - start >= t {
            return Some(i + 2 - t);
        }
    }
    None
}

/// Encodes a message of `n - 1` symbols into a word of length `n` whose
/// longest run is at most [`run_limit`]`(q, n)`.
pub fn encode_rll(msg: &Word, n: usize) -> Result<Word> {
    let q = msg.q();
    require_support(q, n)?;
    if msg.len() + 1 != n {
        return Err(Error::Domain(format!(
            "message must have {} symbols for output length {n}, got {}",
            n - 1,
            msg.len()
        )));
    }
    let m = ceil_log(u64::from(q), n as u64);
    let t = m + 4;

    let mut data = msg.symbols().to_vec();
    let mut records: Vec<(usize, u16)> = Vec::new();
    while let Some(p) = find_long_run(&data, t) {
        let sigma = data[idx(p)];
        data.drain(idx(p)..idx(p) + t);
        records.push((p, sigma));
    }

    let qq = q as u16;
    let mut out = data;
    if records.is_empty() {
        let last = *out.last().expect("message is nonempty");
        out.push((last + 1) % qq);
        debug_assert_eq!(out.len(), n);
        return Ok(Word::from_trusted(q, out));
    }

    let k = records.len();
    let g = out.last().map_or(0, |&last| (last + 1) % qq);
    out.push(g);
    for i in 0..k - 1 {
        out.push(if i % 2 == 0 { (g + 1) % qq } else { g });
    }
    for (i, &(p, sigma)) in records.iter().enumerate() {
        let mut v = (p - 1) as u64;
        for _ in 0..m {
            out.push((v % u64::from(q)) as u16);
            v /= u64::from(q);
        }
        debug_assert_eq!(v, 0, "position fits in m digits");
        out.push(sigma);
        out.push((sigma + 1) % qq);
        out.push(u16::from(i > 0));
    }
    let flag = *out.last().expect("records emitted");
    out.push(flag);
    debug_assert_eq!(out.len(), n);

    let word = Word::from_trusted(q, out);
    debug_assert!(max_run(&word) <= run_limit(q, n), "run bound violated: {word}");
    Ok(word)
}

/// Inverts [`encode_rll`]. Rejects words outside the encoder's image.
pub fn decode_rll(cw: &Word) -> Result<Word> {
    let q = cw.q();
    let n = cw.len();
    require_support(q, n)?;
    let m = ceil_log(u64::from(q), n as u64);
    let t = m + 4;
    let v = cw.symbols();

    let msg = if v[n - 1] != v[n - 2] {
        Word::from_trusted(q, v[..n - 1].to_vec())
    } else {
        // Parse records right to left; the continuation symbol is the last
        // of each (m+3)-wide block and is 0 exactly on the leftmost record.
        let mut blocks: Vec<(usize, u16)> = Vec::new();
        let mut end = n - 1; // exclusive end of the current block
        loop {
            if end < m + 3 + 1 {
                return Err(Error::Decode("replacement records overrun the word".into()));
            }
            let block = &v[end - (m + 3)..end];
            let mut p = 0u64;
            for &d in block[..m].iter().rev() {
                p = p * u64::from(q) + u64::from(d);
            }
            let sigma = block[m];
            if block[m + 1] != (sigma + 1) % q as u16 {
                return Err(Error::Decode("corrupt record separator".into()));
            }
            let cont = block[m + 2];
            if cont > 1 {
                return Err(Error::Decode("corrupt record continuation".into()));
            }
            blocks.push((p as usize + 1, sigma));
            end -= m + 3;
            if cont == 0 {
                break;
            }
        }
        let k = blocks.len();
        let Some(d_len) = (n - 1).checked_sub(k * (m + 4)) else {
            return Err(Error::Decode("replacement records overrun the word".into()));
        };
        let data = &v[..d_len];
        let g = v[d_len];
        let expect_g = data.last().map_or(0, |&last| (last + 1) % q as u16);
        if g != expect_g {
            return Err(Error::Decode("corrupt data guard".into()));
        }
        for i in 0..k - 1 {
            let expect = if i % 2 == 0 { (g + 1) % q as u16 } else { g };
            if v[d_len + 1 + i] != expect {
                return Err(Error::Decode("corrupt pad".into()));
            }
        }
        let mut cur = data.to_vec();
        // blocks[0] is the rightmost record, i.e. the last deletion applied;
        // undo in that order.
        for &(p, sigma) in &blocks {
            if p < 1 || p > cur.len() + 1 {
                return Err(Error::Decode(format!("record position {p} out of range")));
            }
            cur.splice(idx(p)..idx(p), std::iter::repeat_n(sigma, t));
        }
        Word::from_trusted(q, cur)
    };

    // Round-trip guard: only canonical encoder outputs decode.
    let again = encode_rll(&msg, n)?;
    if &again != cw {
        return Err(Error::Decode("word is not a canonical encoder output".into()));
    }
    Ok(msg)
}
