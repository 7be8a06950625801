//! Burst error application, exact error balls, and the brute-force
//! confusability oracle.
//!
//! Everything here is definition-level: no decoder knowledge is used. The
//! rest of the crate is tested *against* this module, so it stays as close to
//! the definitions as possible.

use crate::pos::idx;
use crate::word::Word;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

/// Default guard on the number of ball members an exhaustive routine may
/// enumerate before giving up with [`Error::Capacity`].
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Which way a burst goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BurstKind {
    Deletion,
    Insertion,
}

/// Ball semantics: a burst of exactly `t`, or any burst of length `1..=t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallMode {
    Exact,
    AtMost,
}

/// A single burst error.
///
/// For a deletion, `start` is the 1-based position of the first deleted
/// symbol and `1 <= start <= n - length + 1` must hold. For an insertion,
/// `start` is the position *after which* the block is spliced in, so
/// `0 <= start <= n`, with `start = 0` meaning a prefix insertion. The
/// invariants are checked by [`apply`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorSpec {
    pub kind: BurstKind,
    pub start: usize,
    pub length: usize,
    /// The spliced-in symbols; insertions only, with `inserted.len() == length`.
    pub inserted: Vec<u16>,
}

impl ErrorSpec {
    /// A burst deletion of `length` symbols starting at 1-based `start`.
    pub fn deletion(start: usize, length: usize) -> Self {
        ErrorSpec { kind: BurstKind::Deletion, start, length, inserted: Vec::new() }
    }

    /// A burst insertion of `symbols` after 1-based position `start`
    /// (`start = 0` prepends).
    pub fn insertion(start: usize, symbols: Vec<u16>) -> Self {
        ErrorSpec { kind: BurstKind::Insertion, start, length: symbols.len(), inserted: symbols }
    }
}

/// Applies a burst error to a word.
pub fn apply(w: &Word, e: &ErrorSpec) -> Result<Word> {
    let n = w.len();
    if e.length == 0 {
        return Err(Error::Domain("burst length must be at least 1".into()));
    }
    match e.kind {
        BurstKind::Deletion => {
            if e.start < 1 || e.start + e.length - 1 > n {
                return Err(Error::Domain(format!(
                    "deletion burst start={} length={} out of range for word of length {n}",
                    e.start, e.length
                )));
            }
            let mut out = Vec::with_capacity(n - e.length);
            out.extend_from_slice(&w.symbols()[..idx(e.start)]);
            out.extend_from_slice(&w.symbols()[idx(e.start) + e.length..]);
            Ok(Word::from_trusted(w.q(), out))
        }
        BurstKind::Insertion => {
            if e.start > n {
                return Err(Error::Domain(format!(
                    "insertion point {} out of range for word of length {n}",
                    e.start
                )));
            }
            if e.inserted.len() != e.length {
                return Err(Error::Domain(format!(
                    "insertion block has {} symbols but length says {}",
                    e.inserted.len(),
                    e.length
                )));
            }
            if let Some(&s) = e.inserted.iter().find(|&&s| u32::from(s) >= w.q()) {
                return Err(Error::Domain(format!(
                    "inserted symbol {s} out of range for alphabet size {}",
                    w.q()
                )));
            }
            let mut out = Vec::with_capacity(n + e.length);
            out.extend_from_slice(&w.symbols()[..e.start]);
            out.extend_from_slice(&e.inserted);
            out.extend_from_slice(&w.symbols()[e.start..]);
            Ok(Word::from_trusted(w.q(), out))
        }
    }
}

/// The burst sizes a mode covers, clipped for the deletion side.
fn sizes(t: usize, mode: BallMode) -> std::ops::RangeInclusive<usize> {
    match mode {
        BallMode::Exact => t..=t,
        BallMode::AtMost => 1..=t,
    }
}

/// Upper bound on the number of (not necessarily distinct) members generated
/// for one word, used for the capacity guard.
fn ball_estimate(q: u64, n: u64, t: usize, mode: BallMode) -> u64 {
    let mut total = 0u64;
    for s in sizes(t, mode) {
        let s64 = s as u64;
        if s64 <= n {
            total = total.saturating_add(n - s64 + 1);
        }
        let ins = crate::checked_pow(q, s).and_then(|p| p.checked_mul(n + 1)).unwrap_or(u64::MAX);
        total = total.saturating_add(ins);
    }
    total
}

/// All distinct words reachable from `w` by deleting one burst of exactly `s`
/// symbols, as raw symbol vectors.
fn deletions_of(w: &Word, s: usize) -> BTreeSet<Vec<u16>> {
    let n = w.len();
    let mut out = BTreeSet::new();
    if s <= n {
        for start in 1..=n - s + 1 {
            let mut v = Vec::with_capacity(n - s);
            v.extend_from_slice(&w.symbols()[..idx(start)]);
            v.extend_from_slice(&w.symbols()[idx(start) + s..]);
            out.insert(v);
        }
    }
    out
}

/// All distinct words reachable from `w` by inserting one burst of exactly
/// `s` symbols.
fn insertions_of(w: &Word, s: usize) -> BTreeSet<Vec<u16>> {
    let q = w.q() as u64;
    let n = w.len();
    let mut out = BTreeSet::new();
    let mut block = vec![0u16; s];
    loop {
        for start in 0..=n {
            let mut v = Vec::with_capacity(n + s);
            v.extend_from_slice(&w.symbols()[..start]);
            v.extend_from_slice(&block);
            v.extend_from_slice(&w.symbols()[start..]);
            out.insert(v);
        }
        // Advance the block like an odometer; stop after wrapping.
        let mut i = 0;
        loop {
            if i == s {
                return out;
            }
            block[i] += 1;
            if u64::from(block[i]) < q {
                break;
            }
            block[i] = 0;
            i += 1;
        }
    }
}

/// The burst error ball around `w`: every word reachable by one burst of `t`
/// deletions or `t` insertions (`Exact`), or by one burst of `1..=t` of
/// either kind (`AtMost`, which never contains `w` itself).
///
/// Uses the default capacity guard; see [`error_ball_with_cap`].
pub fn error_ball(w: &Word, t: usize, mode: BallMode) -> Result<BTreeSet<Word>> {
    error_ball_with_cap(w, t, mode, DEFAULT_CAP)
}

/// [`error_ball`] with an explicit capacity guard.
pub fn error_ball_with_cap(w: &Word, t: usize, mode: BallMode, cap: u64) -> Result<BTreeSet<Word>> {
    if t == 0 {
        return Err(Error::Domain("ball radius t must be at least 1".into()));
    }
    if mode == BallMode::Exact && t > w.len() {
        return Err(Error::Domain(format!(
            "exact radius t={t} exceeds word length {}; the deletion side is undefined",
            w.len()
        )));
    }
    let est = ball_estimate(w.q() as u64, w.len() as u64, t, mode);
    if est > cap {
        return Err(Error::Capacity(format!(
            "error ball would enumerate about {est} members, over the cap of {cap}"
        )));
    }
    let mut out = BTreeSet::new();
    for s in sizes(t, mode) {
        for v in deletions_of(w, s) {
            out.insert(Word::from_trusted(w.q(), v));
        }
        for v in insertions_of(w, s) {
            out.insert(Word::from_trusted(w.q(), v));
        }
    }
    Ok(out)
}

/// Whether the error balls of two distinct words intersect.
pub fn confusable(u: &Word, v: &Word, t: usize, mode: BallMode) -> Result<bool> {
    confusable_with_cap(u, v, t, mode, DEFAULT_CAP)
}

/// [`confusable`] with an explicit capacity guard.
pub fn confusable_with_cap(u: &Word, v: &Word, t: usize, mode: BallMode, cap: u64) -> Result<bool> {
    u.check_same_q(v)?;
    if u == v {
        return Err(Error::Domain("confusability is defined for distinct words".into()));
    }
    let bu = error_ball_with_cap(u, t, mode, cap)?;
    let bv = error_ball_with_cap(v, t, mode, cap)?;
    Ok(bu.intersection(&bv).next().is_some())
}

fn fingerprint(v: &[u16]) -> u64 {
    // DefaultHasher with fixed keys: deterministic within a process, which is
    // all the sort-and-verify scheme needs.
    let mut h = std::collections::hash_map::DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Whether a code corrects one burst of `t` deletions or insertions
/// (`Exact`), or any burst of up to `t` (`AtMost`): true iff all pairwise
/// error balls are disjoint.
///
/// Duplicates in `code` are ignored. All members must share one length and
/// alphabet.
pub fn code_is_correcting(code: &[Word], t: usize, mode: BallMode) -> Result<bool> {
    code_is_correcting_with_cap(code, t, mode, DEFAULT_CAP)
}

/// [`code_is_correcting`] with an explicit capacity guard on the total
/// number of ball members enumerated.
pub fn code_is_correcting_with_cap(
    code: &[Word],
    t: usize,
    mode: BallMode,
    cap: u64,
) -> Result<bool> {
    if t == 0 {
        return Err(Error::Domain("ball radius t must be at least 1".into()));
    }
    let mut words: Vec<&Word> = code.iter().collect();
    words.sort_unstable();
    words.dedup();
    let Some(first) = words.first() else {
        return Ok(true);
    };
    let (q, n) = (first.q(), first.len());
    if words.iter().any(|w| w.q() != q || w.len() != n) {
        return Err(Error::Domain("codewords must share one length and alphabet".into()));
    }
    if mode == BallMode::Exact && t > n {
        return Err(Error::Domain(format!("exact radius t={t} exceeds codeword length {n}")));
    }
    let per_word = ball_estimate(q as u64, n as u64, t, mode);
    let total = per_word.saturating_mul(words.len() as u64);
    if total > cap {
        return Err(Error::Capacity(format!(
            "confusability sweep would enumerate about {total} ball members, over the cap of {cap}"
        )));
    }

    // Two balls can only meet side-by-side at equal burst size, because every
    // other combination produces different received lengths. Check each
    // (side, size) stratum via sorted fingerprints, verifying any fingerprint
    // group that spans two codewords by exact recomputation.
    for s in sizes(t, mode) {
        for side in [BurstKind::Deletion, BurstKind::Insertion] {
            if side == BurstKind::Deletion && s > n {
                continue;
            }
            let mut entries: Vec<(u64, u32)> = words
                .par_iter()
                .enumerate()
                .flat_map_iter(|(i, w)| {
                    let members = match side {
                        BurstKind::Deletion => deletions_of(w, s),
                        BurstKind::Insertion => insertions_of(w, s),
                    };
                    members
                        .into_iter()
                        .map(move |v| (fingerprint(&v), i as u32))
                        .collect::<Vec<_>>()
                })
                .collect();
            entries.par_sort_unstable();
            let mut g = 0;
            while g < entries.len() {
                let mut h = g + 1;
                while h < entries.len() && entries[h].0 == entries[g].0 {
                    h += 1;
                }
                let mut idxs: Vec<u32> = entries[g..h].iter().map(|e| e.1).collect();
                idxs.dedup();
                if idxs.len() > 1 {
                    // Possible cross-codeword collision; recompute exactly.
                    idxs.sort_unstable();
                    idxs.dedup();
                    let balls: Vec<BTreeSet<Vec<u16>>> = idxs
                        .iter()
                        .map(|&i| match side {
                            BurstKind::Deletion => deletions_of(words[i as usize], s),
                            BurstKind::Insertion => insertions_of(words[i as usize], s),
                        })
                        .collect();
                    for a in 0..balls.len() {
                        for b in a + 1..balls.len() {
                            if balls[a].intersection(&balls[b]).next().is_some() {
                                return Ok(false);
                            }
                        }
                    }
                }
                g = h;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    #[test]
    fn apply_deletion_examples() {
        let x = w(4, "0211301");
        assert_eq!(apply(&x, &ErrorSpec::deletion(2, 1)).unwrap(), w(4, "011301"));
        let x = w(4, "0103112013");
        assert_eq!(apply(&x, &ErrorSpec::deletion(8, 1)).unwrap(), w(4, "010311213"));
        // Deleting everything leaves the empty word.
        let x = w(3, "0120");
        assert!(apply(&x, &ErrorSpec::deletion(1, 4)).unwrap().is_empty());
    }

    #[test]
    fn apply_insertion_positions() {
        let x = w(3, "012");
        assert_eq!(apply(&x, &ErrorSpec::insertion(0, vec![2, 2])).unwrap(), w(3, "22012"));
        assert_eq!(apply(&x, &ErrorSpec::insertion(3, vec![1])).unwrap(), w(3, "0121"));
        assert_eq!(apply(&x, &ErrorSpec::insertion(1, vec![2])).unwrap(), w(3, "0212"));
    }

    #[test]
    fn apply_validates_specs() {
        let x = w(3, "012");
        assert!(apply(&x, &ErrorSpec::deletion(0, 1)).is_err());
        assert!(apply(&x, &ErrorSpec::deletion(3, 2)).is_err());
        assert!(apply(&x, &ErrorSpec::deletion(1, 0)).is_err());
        assert!(apply(&x, &ErrorSpec::insertion(4, vec![0])).is_err());
        assert!(apply(&x, &ErrorSpec::insertion(1, vec![3])).is_err());
    }

    #[test]
    fn ball_frozen_example() {
        let b = error_ball(&w(2, "00"), 1, BallMode::Exact).unwrap();
        let got: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(got, vec!["0", "000", "001", "010", "100"]);
    }

    #[test]
    fn deletion_side_counts_runs() {
        // The deletion side of a radius-1 exact ball has one member per run.
        for text in ["0012", "0000", "0101", "2", "1100"] {
            let x = w(3, text);
            let dels = deletions_of(&x, 1);
            let runs = 1 + x.symbols().windows(2).filter(|p| p[0] != p[1]).count();
            assert_eq!(dels.len(), runs, "word {text}");
        }
    }

    #[test]
    fn at_most_excludes_identity() {
        let x = w(3, "0120");
        let b = error_ball(&x, 2, BallMode::AtMost).unwrap();
        assert!(!b.contains(&x));
        // It still contains both radius-1 and radius-2 results.
        assert!(b.contains(&w(3, "120")));
        assert!(b.contains(&w(3, "20")));
        assert!(b.contains(&w(3, "012012")));
    }

    #[test]
    fn confusable_matches_ball_intersection() {
        // Shared prefix/suffix around swapped symbols: classic collision.
        let u = w(4, "02130");
        let v = w(4, "01320");
        assert!(confusable(&u, &v, 1, BallMode::Exact).unwrap());
        // Far-apart constant words are not confusable at t=1.
        let u = w(4, "00000");
        let v = w(4, "33333");
        assert!(!confusable(&u, &v, 1, BallMode::Exact).unwrap());
    }

    #[test]
    fn confusable_rejects_equal_or_mismatched() {
        let u = w(3, "012");
        assert!(confusable(&u, &u.clone(), 1, BallMode::Exact).is_err());
        assert!(confusable(&u, &w(4, "012"), 1, BallMode::Exact).is_err());
    }

    #[test]
    fn full_space_is_not_correcting() {
        let code: Vec<Word> = (0..8)
            .map(|v| Word::new(2, vec![(v >> 2) & 1, (v >> 1) & 1, v & 1]).unwrap())
            .collect();
        assert!(!code_is_correcting(&code, 1, BallMode::Exact).unwrap());
        let single = vec![w(2, "000")];
        assert!(code_is_correcting(&single, 1, BallMode::Exact).unwrap());
    }

    #[test]
    fn capacity_guard_fires() {
        let x = w(4, "00112233");
        match error_ball_with_cap(&x, 3, BallMode::AtMost, 100) {
            Err(Error::Capacity(_)) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn ball_radius_zero_rejected() {
        let x = w(3, "012");
        assert!(error_ball(&x, 0, BallMode::Exact).is_err());
        assert!(error_ball(&x, 4, BallMode::Exact).is_err()); // t > n, exact
        assert!(error_ball(&x, 4, BallMode::AtMost).is_ok());
    }
}
