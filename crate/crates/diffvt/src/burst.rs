//! Burst correction for a fixed burst length `t`.
//!
//! A word of length `n = t * n'` is viewed as a `t x n'` array read column
//! by column: row `i` holds the symbols at positions congruent to `i` mod
//! `t`. A burst of exactly `t` consecutive deletions removes exactly one
//! symbol from every row, and the rows keep their identities in the received
//! word. Row 1 carries a run-length-limited differential VT codeword, whose
//! decoder both repairs the row and narrows the deletion column down to one
//! run; the remaining rows are shifted VT codes decoded inside that window.

use crate::diff_svt::DiffSvt;
use crate::diff_vt::DiffVt;
use crate::error_model::DEFAULT_CAP;
use crate::pos::idx;
use crate::rll;
use crate::word::Word;
use crate::{ceil_log, checked_pow, Error, Result};

/// A word arranged as `t` interleaved rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordArray {
    rows: Vec<Word>,
}

impl CodewordArray {
    /// Splits `w` into `t` rows by stride; requires `t >= 1` and `t | n`.
    pub fn from_word(w: &Word, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("row count must be at least 1".into()));
        }
        if !w.len().is_multiple_of(t) {
            return Err(Error::Domain(format!(
                "row count {t} does not divide word length {}",
                w.len()
            )));
        }
        let rows = (0..t)
            .map(|i| {
                let symbols = w.symbols().iter().skip(i).step_by(t).copied().collect();
                Word::from_trusted(w.q(), symbols)
            })
            .collect();
        Ok(CodewordArray { rows })
    }

    /// The rows, top to bottom.
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// Re-interleaves rows of equal length back into a word.
    pub fn to_word(&self) -> Result<Word> {
        let Some(first) = self.rows.first() else {
            return Err(Error::Domain("array must have at least one row".into()));
        };
        let cols = first.len();
        let q = first.q();
        if self.rows.iter().any(|r| r.len() != cols || r.q() != q) {
            return Err(Error::Domain("rows must share one length and alphabet".into()));
        }
        let mut symbols = Vec::with_capacity(cols * self.rows.len());
        for c in 0..cols {
            for row in &self.rows {
                symbols.push(row[c]);
            }
        }
        Ok(Word::from_trusted(q, symbols))
    }

    /// Builds an array directly from rows.
    pub fn new(rows: Vec<Word>) -> Result<Self> {
        let arr = CodewordArray { rows };
        arr.to_word()?; // validates shape
        Ok(arr)
    }
}

/// A code correcting one burst of exactly `t` deletions (or, by length
/// dispatch, recognizing intact codewords).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurstFixed {
    q: u32,
    n: usize,
    t: usize,
    a1: u64,
    a2: u64,
    b: u64,
    ell: usize,
    p: usize,
}

impl BurstFixed {
    /// The construction with its analysis parameters: row run bound
    /// `ell = ceil(log_q n') + 3` and window `P = ell + 1`.
    pub fn new(q: u32, n: usize, t: usize, a1: u64, a2: u64, b: u64) -> Result<Self> {
        let row_len = Self::row_len_checked(n, t)?;
        let m = ceil_log(u64::from(q), row_len as u64);
        Self::with_limits(q, n, t, a1, a2, b, m + 3, m + 4)
    }

    /// The parameters matching the systematic encoder, whose first row obeys
    /// only the looser composed bound `ell = 2*ceil(log_q n') + 5` (and so
    /// `P = ell + 1`). [`encode`](Self::encode) requires these.
    pub fn for_encoder(q: u32, n: usize, t: usize, a1: u64, a2: u64, b: u64) -> Result<Self> {
        let row_len = Self::row_len_checked(n, t)?;
        let m = ceil_log(u64::from(q), row_len as u64);
        Self::with_limits(q, n, t, a1, a2, b, 2 * m + 5, 2 * m + 6)
    }

    /// Explicit run bound and window; `p >= ell + 1` is required so the
    /// decoder's search window always fits.
    #[allow(clippy::too_many_arguments)]
    pub fn with_limits(
        q: u32,
        n: usize,
        t: usize,
        a1: u64,
        a2: u64,
        b: u64,
        ell: usize,
        p: usize,
    ) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("alphabet size must be at least 2, got {q}")));
        }
        let row_len = Self::row_len_checked(n, t)?;
        if ell == 0 || p < ell + 1 {
            return Err(Error::Domain(format!(
                "window P={p} must be at least ell+1 with ell={ell} >= 1"
            )));
        }
        if a1 >= u64::from(q) * row_len as u64 {
            return Err(Error::Domain(format!("residue a1={a1} out of range")));
        }
        if a2 >= u64::from(q) * (p as u64 + 1) {
            return Err(Error::Domain(format!("residue a2={a2} out of range")));
        }
        if b > u64::from(q) {
            return Err(Error::Domain(format!("residue b={b} out of range")));
        }
        Ok(BurstFixed { q, n, t, a1, a2, b, ell, p })
    }

    fn row_len_checked(n: usize, t: usize) -> Result<usize> {
        if t == 0 {
            return Err(Error::Domain("burst length t must be at least 1".into()));
        }
        if n == 0 || !n.is_multiple_of(t) {
            return Err(Error::Domain(format!("burst length {t} must divide the code length {n}")));
        }
        Ok(n / t)
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn t(&self) -> usize {
        self.t
    }
    /// Columns per row.
    pub fn row_len(&self) -> usize {
        self.n / self.t
    }
    /// Run bound imposed on the first row.
    pub fn run_bound(&self) -> usize {
        self.ell
    }
    /// Window parameter of the secondary rows.
    pub fn window(&self) -> usize {
        self.p
    }
    /// First-row syndrome residue.
    pub fn a1(&self) -> u64 {
        self.a1
    }
    /// Secondary-row syndrome residue.
    pub fn a2(&self) -> u64 {
        self.a2
    }
    /// Secondary-row sum residue.
    pub fn b(&self) -> u64 {
        self.b
    }

    fn row1_code(&self) -> Result<DiffVt> {
        DiffVt::new(self.q, self.row_len(), self.a1)
    }

    fn row_code(&self) -> Result<DiffSvt> {
        DiffSvt::new(self.q, self.row_len(), self.p, self.a2, self.b)
    }

    fn check_alphabet(&self, w: &Word) -> Result<()> {
        if w.q() != self.q {
            return Err(Error::Domain(format!(
                "word alphabet {} does not match code alphabet {}",
                w.q(),
                self.q
            )));
        }
        Ok(())
    }

    /// Whether `w` is a codeword: row 1 in the differential VT code with runs
    /// bounded by `ell`, rows 2..t in the shifted code.
    pub fn is_member(&self, w: &Word) -> Result<bool> {
        self.check_alphabet(w)?;
        if w.len() != self.n {
            return Ok(false);
        }
        let arr = CodewordArray::from_word(w, self.t)?;
        let rows = arr.rows();
        if !self.row1_code()?.is_member(&rows[0])? || rll::max_run(&rows[0]) > self.ell {
            return Ok(false);
        }
        let svt = self.row_code()?;
        for row in &rows[1..] {
            if !svt.is_member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_encoder(&self) -> Result<()> {
        let m = ceil_log(u64::from(self.q), self.row_len() as u64);
        if self.ell != 2 * m + 5 || self.p != 2 * m + 6 {
            return Err(Error::Domain(
                "encoding requires the composed-bound parameters; construct with for_encoder"
                    .into(),
            ));
        }
        let n1 = self.row_len() - m - 1;
        if !rll::supports(self.q, n1) {
            return Err(Error::Domain(format!(
                "first-row length {n1} too short for run-length limiting at q={}",
                self.q
            )));
        }
        self.row1_code()?.message_len()?; // n' >= q etc.
        if self.t > 1 {
            self.row_code()?.message_len()?; // n' >= 3q(P+1)
        }
        Ok(())
    }

    /// Message symbols carried by the first row.
    pub fn row1_message_len(&self) -> Result<usize> {
        self.require_encoder()?;
        let m = ceil_log(u64::from(self.q), self.row_len() as u64);
        Ok(self.row_len() - m - 2)
    }

    /// Message symbols carried by each of the other `t - 1` rows.
    pub fn row_message_len(&self) -> Result<usize> {
        self.require_encoder()?;
        self.row_code()?.message_len()
    }

    /// Total message length `k1 + (t-1) * k2`.
    pub fn message_len(&self) -> Result<usize> {
        Ok(self.row1_message_len()? + (self.t - 1) * self.row_message_len()?)
    }

    /// Encodes a message: the first `k1` symbols pass through run-length
    /// limiting and the row-1 systematic encoder, the rest fill the other
    /// rows' systematic encoders, and the rows interleave.
    pub fn encode(&self, msg: &Word) -> Result<Word> {
        self.check_alphabet(msg)?;
        let k1 = self.row1_message_len()?;
        let k2 = if self.t > 1 { self.row_message_len()? } else { 0 };
        let k = k1 + (self.t - 1) * k2;
        if msg.len() != k {
            return Err(Error::Domain(format!("message must have {k} symbols, got {}", msg.len())));
        }
        let m = ceil_log(u64::from(self.q), self.row_len() as u64);
        let n1 = self.row_len() - m - 1;

        let x1 = Word::from_trusted(self.q, msg.symbols()[..k1].to_vec());
        let limited = rll::encode_rll(&x1, n1)?;
        let row1 = self.row1_code()?.encode(&limited)?;
        if rll::max_run(&row1) > self.ell {
            return Err(Error::InternalInvariant(format!(
                "encoded first row exceeds the run bound: {row1}"
            )));
        }

        let mut rows = vec![row1];
        let svt = self.row_code()?;
        for i in 0..self.t - 1 {
            let chunk = &msg.symbols()[k1 + i * k2..k1 + (i + 1) * k2];
            rows.push(svt.encode(&Word::from_trusted(self.q, chunk.to_vec()))?);
        }
        let cw = CodewordArray::new(rows)?.to_word()?;
        debug_assert!(self.is_member(&cw)?);
        Ok(cw)
    }

    /// Reads the message back out of a codeword.
    pub fn extract_message(&self, codeword: &Word) -> Result<Word> {
        self.check_alphabet(codeword)?;
        if codeword.len() != self.n {
            return Err(Error::Domain(format!(
                "codeword must have length {}, got {}",
                self.n,
                codeword.len()
            )));
        }
        self.require_encoder()?;
        let arr = CodewordArray::from_word(codeword, self.t)?;
        let rows = arr.rows();
        let limited = self.row1_code()?.extract_message(&rows[0])?;
        let mut symbols = rll::decode_rll(&limited)?.into_symbols();
        let svt = self.row_code()?;
        for row in &rows[1..] {
            symbols.extend(svt.extract_message(row)?.into_symbols());
        }
        Ok(Word::from_trusted(self.q, symbols))
    }

    /// Decodes a received word of length `n` (intact) or `n - t` (one burst
    /// of exactly `t` deletions).
    pub fn decode(&self, r: &Word) -> Result<Word> {
        self.check_alphabet(r)?;
        if r.len() == self.n {
            return if self.is_member(r)? {
                Ok(r.clone())
            } else {
                Err(Error::Decode("received word has full length but is not a codeword".into()))
            };
        }
        if r.len() + self.t != self.n {
            return Err(Error::Domain(format!(
                "received length {} is neither n nor n-t (n={}, t={})",
                r.len(),
                self.n,
                self.t
            )));
        }

        // Each received stride class is the matching row minus one symbol.
        let arr = CodewordArray::from_word(r, self.t)?;
        let rows_r = arr.rows();
        let report = self.row1_code()?.decode_deletion(&rows_r[0])?;
        let row1 = report.recovered;
        let pos = report.position.expect("deletion reports carry a position");

        // The ambiguity in the reported column is exactly the run of row 1
        // containing it; a burst hits row 1 at the latest column it touches,
        // so every other row lost its symbol in that run extended one column
        // to the left.
        let (lo, hi) = run_extent(&row1, pos);
        if hi - lo + 1 > self.ell {
            return Err(Error::Decode(
                "first-row ambiguity exceeds the run bound; received word is inconsistent".into(),
            ));
        }
        let mut rows = vec![row1];
        if self.t > 1 {
            let svt = self.row_code()?;
            let w_lo = lo.saturating_sub(1).max(1);
            for row_r in &rows_r[1..] {
                rows.push(svt.decode_windowed(row_r, w_lo, hi)?);
            }
        }
        let cw = CodewordArray::new(rows)?.to_word()?;
        if !self.is_member(&cw)? {
            return Err(Error::Decode(
                "reconstruction is not a codeword; the received word was not a codeword minus one burst"
                    .into(),
            ));
        }
        Ok(cw)
    }

    /// Decodes and extracts the message in one step.
    pub fn decode_message(&self, r: &Word) -> Result<Word> {
        let cw = self.decode(r)?;
        self.extract_message(&cw)
    }

    /// Enumerates all codewords, guarded by a cap on `q^n`.
    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Vec<Word>> {
        let total = checked_pow(u64::from(self.q), self.n);
        match total {
            Some(v) if v <= cap => {}
            _ => {
                return Err(Error::Capacity(format!(
                    "enumerating q^n = {}^{} words exceeds the cap of {cap}",
                    self.q, self.n
                )))
            }
        }
        let mut out = Vec::new();
        let mut symbols = vec![0u16; self.n];
        loop {
            let w = Word::from_trusted(self.q, symbols.clone());
            if self.is_member(&w)? {
                out.push(w);
            }
            let mut i = self.n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                symbols[i] += 1;
                if u32::from(symbols[i]) < self.q {
                    break;
                }
                symbols[i] = 0;
            }
        }
    }

    /// Enumerates codewords with the default cap.
    pub fn enumerate(&self) -> Result<Vec<Word>> {
        self.enumerate_with_cap(DEFAULT_CAP)
    }
}

/// 1-based extent `[lo, hi]` of the run of `w` containing position `pos`.
fn run_extent(w: &Word, pos: usize) -> (usize, usize) {
    let v = w.symbols();
    let i = idx(pos);
    let s = v[i];
    let mut lo = i;
    while lo > 0 && v[lo - 1] == s {
        lo -= 1;
    }
    let mut hi = i;
    while hi + 1 < v.len() && v[hi + 1] == s {
        hi += 1;
    }
    (lo + 1, hi + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_model::{apply, ErrorSpec};

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    #[test]
    fn array_roundtrip() {
        let x = w(3, "012012012012");
        let arr = CodewordArray::from_word(&x, 3).unwrap();
        assert_eq!(arr.rows().len(), 3);
        assert_eq!(arr.rows()[0], w(3, "0000"));
        assert_eq!(arr.rows()[1], w(3, "1111"));
        assert_eq!(arr.rows()[2], w(3, "2222"));
        assert_eq!(arr.to_word().unwrap(), x);

        assert!(CodewordArray::from_word(&x, 5).is_err());
        assert!(CodewordArray::from_word(&x, 0).is_err());
    }

    #[test]
    fn array_rejects_ragged_rows() {
        let rows = vec![w(2, "010"), w(2, "01")];
        assert!(CodewordArray::new(rows).is_err());
    }

    #[test]
    fn run_extent_finds_runs() {
        let x = w(2, "0011100");
        assert_eq!(run_extent(&x, 1), (1, 2));
        assert_eq!(run_extent(&x, 4), (3, 5));
        assert_eq!(run_extent(&x, 7), (6, 7));
    }

    #[test]
    fn constructor_validation() {
        assert!(BurstFixed::new(2, 16, 2, 0, 0, 0).is_ok());
        assert!(BurstFixed::new(2, 15, 2, 0, 0, 0).is_err()); // t does not divide n
        assert!(BurstFixed::with_limits(2, 16, 2, 0, 0, 0, 4, 4).is_err()); // P < ell+1
        assert!(BurstFixed::new(2, 16, 2, 16, 0, 0).is_err()); // a1 >= q*n'
    }

    #[test]
    fn degenerate_single_row_is_diffvt() {
        // t = 1 reduces to a run-limited differential VT code.
        let code = BurstFixed::new(3, 6, 1, 0, 0, 0).unwrap();
        let vt = DiffVt::new(3, 6, 0).unwrap();
        for cw in vt.enumerate().unwrap() {
            let in_burst = code.is_member(&cw).unwrap();
            let bounded = rll::max_run(&cw) <= code.run_bound();
            assert_eq!(in_burst, bounded, "cw={cw}");
        }
    }

    #[test]
    fn membership_splits_rows() {
        // Hand-build a member at q=2, t=2, n=16 from row codes.
        let code = BurstFixed::new(2, 16, 2, 0, 0, 0).unwrap();
        let vt = DiffVt::new(2, 8, 0).unwrap();
        let svt = DiffSvt::new(2, 8, code.window(), 0, 0).unwrap();
        let row1 = vt
            .enumerate()
            .unwrap()
            .into_iter()
            .find(|r| rll::max_run(r) <= code.run_bound())
            .unwrap();
        let row2 = svt.enumerate_with_cap(1 << 20).unwrap().into_iter().next().unwrap();
        let cw = CodewordArray::new(vec![row1, row2]).unwrap().to_word().unwrap();
        assert!(code.is_member(&cw).unwrap());
    }

    #[test]
    fn encode_decode_all_burst_positions() {
        // q=2, t=2, n=512: rows of 256.
        let code = BurstFixed::for_encoder(2, 512, 2, 3, 7, 1).unwrap();
        let k = code.message_len().unwrap();
        let symbols: Vec<u16> = (0..k).map(|i| ((i * i + i / 3) % 2) as u16).collect();
        let msg = Word::new(2, symbols).unwrap();
        let cw = code.encode(&msg).unwrap();
        assert_eq!(cw.len(), 512);
        assert_eq!(code.extract_message(&cw).unwrap(), msg);
        assert_eq!(code.decode(&cw).unwrap(), cw);
        for start in (1..=511).step_by(17).chain([1, 511]) {
            let r = apply(&cw, &ErrorSpec::deletion(start, 2)).unwrap();
            assert_eq!(code.decode(&r).unwrap(), cw, "start={start}");
            assert_eq!(code.decode_message(&r).unwrap(), msg, "start={start}");
        }
    }

    #[test]
    fn encode_rejects_analysis_parameters() {
        let code = BurstFixed::new(2, 512, 2, 0, 0, 0).unwrap();
        assert!(code.message_len().is_err());
    }

    #[test]
    fn decode_length_dispatch() {
        let code = BurstFixed::for_encoder(2, 512, 2, 0, 0, 0).unwrap();
        let msg = Word::new(2, vec![0; code.message_len().unwrap()]).unwrap();
        let cw = code.encode(&msg).unwrap();
        let r = apply(&cw, &ErrorSpec::deletion(5, 2)).unwrap();
        let shorter = apply(&r, &ErrorSpec::deletion(1, 1)).unwrap();
        assert!(code.decode(&shorter).is_err());
        assert!(code.decode(&r).is_ok());
    }
}
