//! q-ary codes for correcting deletions and insertions.
//!
//! This crate implements a family of deletion/insertion-correcting codes built
//! around the *differential* Varshamov-Tenengolts construction: a word is
//! constrained through the VT syndrome of its difference transform rather than
//! of the word itself. That one change makes the classical binary VT machinery
//! carry over to arbitrary alphabets with a single syndrome, and the same idea
//! extends to shifted (window-restricted) variants and to burst errors.
//!
//! The main entry points are:
//!
//! * [`DiffVt`] — single deletion/insertion correcting code with a systematic
//!   encoder, a linear-time deletion decoder, and coset enumeration.
//! * [`DiffSvt`] — shifted variant correcting one deletion whose position is
//!   known up to a window of length `P`.
//! * [`BurstFixed`] — corrects a burst of exactly `t` adjacent deletions (or
//!   insertions) by interleaving one run-length-limited [`DiffVt`] row with
//!   `t - 1` [`DiffSvt`] rows.
//! * [`MarkerCode`] and [`TwoRowCode`] — correct a burst of *at most two*
//!   deletions, via a marker-guarded systematic construction (`q >= 3`) and a
//!   binary-decomposition construction (`q` even), respectively.
//! * [`error_model`] — exact error balls, confusability tests, and a
//!   brute-force `code_is_correcting` oracle used to verify every decoder in
//!   the test suite.
//! * [`verify`] — self-contained verification sweeps shared by the test suite
//!   and the `diffvt verify` command-line tool.
//!
//! Words live in [`Word`]: an immutable symbol sequence over a fixed alphabet
//! `{0, .., q-1}`. Positions in every public API are 1-based, matching the
//! usual coding-theory convention; the conversion to 0-based indices happens
//! in exactly one place ([`pos::idx`]).

pub mod burst;
pub mod burst_le2;
pub mod diff_svt;
pub mod diff_vt;
pub mod error_model;
pub mod rll;
pub mod seq;
pub mod tenengolts;
pub mod verify;
pub mod word;

pub use burst::{BurstFixed, CodewordArray};
pub use burst_le2::{
    subsequence, tau, tau_inv, CodebookCode, FirstRowCode, MarkerCode, TwoRowCode,
};
pub use diff_svt::DiffSvt;
pub use diff_vt::{Case, DecodeReport, DiffVt};
pub use error_model::{BallMode, BurstKind, ErrorSpec};
pub use tenengolts::Tenengolts;
pub use word::Word;

use std::fmt;

/// Errors reported by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments violate a documented precondition (bad alphabet, length,
    /// parameter range, malformed input text, ...).
    Domain(String),
    /// The received word cannot be decoded to a codeword of this code; the
    /// input was not produced by an admissible error.
    Decode(String),
    /// An enumeration or error-ball computation would exceed the configured
    /// work cap.
    Capacity(String),
    /// A guarantee the construction proves was observed to fail. Seeing this
    /// means either the inputs violated an unchecked precondition or there is
    /// a bug; it is never part of normal operation.
    InternalInvariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Decode(msg) => write!(f, "decode error: {msg}"),
            Error::Capacity(msg) => write!(f, "capacity error: {msg}"),
            Error::InternalInvariant(msg) => write!(f, "internal invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// 1-based position handling.
///
/// All public APIs speak 1-based positions. The single conversion to 0-based
/// vector indices lives here so the convention cannot drift between modules.
pub mod pos {
    /// Converts a 1-based position to a 0-based index. Panics on 0, which is
    /// never a valid position; callers validate ranges before converting.
    #[inline]
    pub fn idx(pos: usize) -> usize {
        debug_assert!(pos >= 1, "positions are 1-based");
        pos - 1
    }
}

/// `ceil(log_q(n))` for `q >= 2`, `n >= 1`, by repeated multiplication.
pub(crate) fn ceil_log(q: u64, n: u64) -> usize {
    debug_assert!(q >= 2 && n >= 1);
    let mut m = 0usize;
    let mut pow = 1u64;
    while pow < n {
        pow = pow.saturating_mul(q);
        m += 1;
    }
    m
}

/// `q^e` with overflow detection.
pub(crate) fn checked_pow(q: u64, e: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(q)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log_small_values() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(2, 16), 4);
        assert_eq!(ceil_log(2, 17), 5);
        assert_eq!(ceil_log(3, 10), 3);
        assert_eq!(ceil_log(3, 27), 3);
        assert_eq!(ceil_log(3, 28), 4);
        assert_eq!(ceil_log(10, 1000), 3);
    }

    #[test]
    fn checked_pow_detects_overflow() {
        assert_eq!(checked_pow(3, 4), Some(81));
        assert_eq!(checked_pow(2, 63), Some(1u64 << 63));
        assert_eq!(checked_pow(2, 64), None);
    }

    #[test]
    fn error_display_is_prefixed() {
        let e = Error::Domain("q must be at least 2".into());
        assert_eq!(e.to_string(), "domain error: q must be at least 2");
        let e = Error::Decode("no candidate".into());
        assert!(e.to_string().starts_with("decode error:"));
    }
}
