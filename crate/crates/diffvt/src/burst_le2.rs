//! Correction of a burst of *at most two* deletions.
//!
//! Two constructions live here.
//!
//! For even `q`, [`TwoRowCode`] splits each symbol into a bit and a residual
//! (`tau`). The bit row carries a binary code that corrects bursts of up to
//! two deletions and additionally narrows the burst start down to a short
//! window (the [`FirstRowCode`] contract, backed here by a greedy
//! [`CodebookCode`]). The residual row carries three shifted VT constraints —
//! on the full sequence and on both stride-2 subsequences — which are exactly
//! what is needed to finish decoding inside that window: a one-deletion burst
//! hits the full residual sequence once, and a two-deletion burst hits each
//! stride-2 subsequence once.
//!
//! For `q >= 3`, [`MarkerCode`] is systematic: the message is followed by a
//! seven-symbol marker and by registers holding the shifted-VT syndromes of
//! the message and of its stride-2 subsequences. A burst confined to the
//! protected suffix is undone by re-encoding the intact message prefix; a
//! burst in the message is decoded from the registers, which the marker keeps
//! out of harm's way.

use crate::diff_svt::DiffSvt;
use crate::error_model::{self, BallMode};
use crate::pos::idx;
use crate::seq::{diff, symbol_sum, vt_syndrome};
use crate::word::Word;
use crate::{ceil_log, checked_pow, Error, Result};
use std::collections::{HashMap, HashSet};

/// Splits a symbol over even `q` into `(bit, residual)` with
/// `symbol = bit * q/2 + residual`.
pub fn tau(q: u32, symbol: u16) -> Result<(u16, u16)> {
    if q < 4 || !q.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "the bit/residual split requires an even alphabet size >= 4, got {q}"
        )));
    }
    if u32::from(symbol) >= q {
        return Err(Error::Domain(format!("symbol {symbol} out of range for q={q}")));
    }
    let half = (q / 2) as u16;
    Ok((symbol / half, symbol % half))
}

/// Inverse of [`tau`].
pub fn tau_inv(q: u32, bit: u16, residual: u16) -> Result<u16> {
    if q < 4 || !q.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "the bit/residual split requires an even alphabet size >= 4, got {q}"
        )));
    }
    let half = (q / 2) as u16;
    if bit > 1 || residual >= half {
        return Err(Error::Domain(format!(
            "invalid bit/residual pair ({bit}, {residual}) for q={q}"
        )));
    }
    Ok(bit * half + residual)
}

/// The stride-`s` subsequence starting at 1-based position `i <= s`:
/// symbols at positions `i, i+s, i+2s, ..`.
pub fn subsequence(w: &Word, i: usize, s: usize) -> Result<Word> {
    if s == 0 || i == 0 || i > s {
        return Err(Error::Domain(format!("subsequence start {i} must lie in 1..=stride ({s})")));
    }
    let symbols = w.symbols().iter().skip(idx(i)).step_by(s).copied().collect();
    Ok(Word::from_trusted(w.q(), symbols))
}

/// Length of the longest substring with period 2 (each symbol equal to the
/// one two places before it). Any substring of length <= 2 qualifies.
pub fn max_period2(w: &Word) -> usize {
    let v = w.symbols();
    if v.len() <= 2 {
        return v.len();
    }
    let mut best = 2;
    let mut cur = 2;
    for j in 2..v.len() {
        if v[j] == v[j - 2] {
            cur += 1;
        } else {
            cur = 2;
        }
        best = best.max(cur);
    }
    best
}

/// The contract the bit row of [`TwoRowCode`] must satisfy: a binary code
/// correcting every burst of at most two deletions, whose decoder also
/// reports the window of burst start positions consistent with the received
/// word, and whose codewords have period-2 substrings no longer than
/// [`period2_limit`](FirstRowCode::period2_limit).
pub trait FirstRowCode {
    /// Codeword length.
    fn n(&self) -> usize;
    /// Bound on period-2 substrings; the composite construction needs
    /// `ceil(log2 n) + 5` or less so its windows fit the row codes.
    fn period2_limit(&self) -> usize;
    /// All codewords (binary words of length [`n`](FirstRowCode::n)).
    fn codewords(&self) -> &[Word];
    /// Membership test.
    fn is_member(&self, w: &Word) -> bool;
    /// Decodes a received word of length `n`, `n-1` or `n-2`. For a
    /// shortened word, returns the codeword together with the inclusive
    /// window `[lo, hi]` of burst start positions that reproduce the
    /// received word; for an intact codeword the window is `None`.
    fn decode(&self, r: &Word) -> Result<(Word, Option<(usize, usize)>)>;
}

/// A greedy codebook implementation of [`FirstRowCode`]: binary words are
/// scanned in lexicographic order and kept whenever their `<=2`-burst ball
/// avoids the balls of all words kept so far.
#[derive(Debug, Clone)]
pub struct CodebookCode {
    n: usize,
    limit: usize,
    words: Vec<Word>,
    members: HashSet<Word>,
    /// received symbols -> (codeword index, burst start) pairs; the accepted
    /// balls are disjoint, so all pairs for one key share the index.
    received: HashMap<Vec<u16>, Vec<(u32, u32)>>,
}

impl CodebookCode {
    /// Builds the codebook at length `n` with the standard period-2 limit
    /// `ceil(log2 n) + 5`.
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with(n, ceil_log(2, n as u64) + 5, error_model::DEFAULT_CAP)
    }

    /// Builds with an explicit period-2 limit and enumeration cap.
    pub fn build_with(n: usize, limit: usize, cap: u64) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain("codebook length must be at least 4".into()));
        }
        let total = checked_pow(2, n).filter(|&v| v <= cap).ok_or_else(|| {
            Error::Capacity(format!("codebook scan over 2^{n} words exceeds the cap of {cap}"))
        })?;
        let mut words = Vec::new();
        let mut taken: HashSet<Word> = HashSet::new();
        for v in 0..total {
            let symbols: Vec<u16> = (0..n).map(|j| ((v >> (n - 1 - j)) & 1) as u16).collect();
            let cand = Word::from_trusted(2, symbols);
            if max_period2(&cand) > limit {
                continue;
            }
            let ball = error_model::error_ball_with_cap(&cand, 2, BallMode::AtMost, cap)?;
            if ball.iter().any(|w| taken.contains(w)) {
                continue;
            }
            taken.extend(ball);
            words.push(cand);
        }

        let mut received: HashMap<Vec<u16>, Vec<(u32, u32)>> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            for s in 1..=2usize {
                for start in 1..=n - s + 1 {
                    let mut v = w.symbols().to_vec();
                    v.drain(idx(start)..idx(start) + s);
                    received.entry(v).or_default().push((i as u32, start as u32));
                }
            }
        }
        Ok(CodebookCode { n, limit, members: words.iter().cloned().collect(), words, received })
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Whether the codebook is empty.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl FirstRowCode for CodebookCode {
    fn n(&self) -> usize {
        self.n
    }

    fn period2_limit(&self) -> usize {
        self.limit
    }

    fn codewords(&self) -> &[Word] {
        &self.words
    }

    fn is_member(&self, w: &Word) -> bool {
        w.q() == 2 && self.members.contains(w)
    }

    fn decode(&self, r: &Word) -> Result<(Word, Option<(usize, usize)>)> {
        if r.q() != 2 {
            return Err(Error::Domain("the bit row is binary".into()));
        }
        let s = self.n.checked_sub(r.len()).filter(|&s| s <= 2).ok_or_else(|| {
            Error::Domain(format!(
                "received length {} is not within a 2-burst of n = {}",
                r.len(),
                self.n
            ))
        })?;
        if s == 0 {
            return if self.is_member(r) {
                Ok((r.clone(), None))
            } else {
                Err(Error::Decode("received word has full length but is not a codeword".into()))
            };
        }
        let Some(hits) = self.received.get(r.symbols()) else {
            return Err(Error::Decode("no codeword explains the received word".into()));
        };
        let index = hits[0].0;
        debug_assert!(hits.iter().all(|&(i, _)| i == index), "balls are disjoint");
        let lo = hits.iter().map(|&(_, p)| p).min().unwrap() as usize;
        let hi = hits.iter().map(|&(_, p)| p).max().unwrap() as usize;
        Ok((self.words[index as usize].clone(), Some((lo, hi))))
    }
}

/// The even-alphabet `<=2`-burst construction: a [`FirstRowCode`] on the bit
/// row and three shifted VT constraints on the residual row.
#[derive(Debug, Clone)]
pub struct TwoRowCode<F: FirstRowCode> {
    q: u32,
    n: usize,
    first: F,
    svt_full: DiffSvt,
    svt_odd: DiffSvt,
    svt_even: DiffSvt,
}

impl<F: FirstRowCode> TwoRowCode<F> {
    /// Combines a bit-row code with residual keys
    /// `[(a1, b1), (a2, b2), (a3, b3)]` for the full residual sequence and
    /// its odd and even stride-2 subsequences. All three use window
    /// `P = ceil(log2 n) + 6`, one more than the bit row's period-2 limit.
    pub fn new(q: u32, first: F, keys: [(u64, u64); 3]) -> Result<Self> {
        if q < 4 || !q.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "the two-row construction requires an even alphabet size >= 4, got {q}"
            )));
        }
        let n = first.n();
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::Domain(format!("code length must be even and >= 2, got {n}")));
        }
        let ell = ceil_log(2, n as u64) + 5;
        if first.period2_limit() > ell {
            return Err(Error::Domain(format!(
                "bit-row period-2 limit {} exceeds ceil(log2 n) + 5 = {ell}",
                first.period2_limit()
            )));
        }
        let p = ell + 1;
        let qp = q / 2;
        Ok(TwoRowCode {
            q,
            n,
            first,
            svt_full: DiffSvt::new(qp, n, p, keys[0].0, keys[0].1)?,
            svt_odd: DiffSvt::new(qp, n / 2, p, keys[1].0, keys[1].1)?,
            svt_even: DiffSvt::new(qp, n / 2, p, keys[2].0, keys[2].1)?,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// The bit-row code.
    pub fn first_row(&self) -> &F {
        &self.first
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

    fn decompose(&self, w: &Word) -> Result<(Word, Word)> {
        let mut bits = Vec::with_capacity(w.len());
        let mut resid = Vec::with_capacity(w.len());
        for &sym in w.symbols() {
            let (b, r) = tau(self.q, sym)?;
            bits.push(b);
            resid.push(r);
        }
        Ok((Word::from_trusted(2, bits), Word::from_trusted(self.q / 2, resid)))
    }

    fn recompose(&self, bits: &Word, resid: &Word) -> Result<Word> {
        if bits.len() != resid.len() {
            return Err(Error::InternalInvariant("row lengths diverged".into()));
        }
        let symbols = bits
            .symbols()
            .iter()
            .zip(resid.symbols())
            .map(|(&b, &r)| tau_inv(self.q, b, r))
            .collect::<Result<Vec<u16>>>()?;
        Ok(Word::from_trusted(self.q, symbols))
    }

    /// Whether `w` is a codeword.
    pub fn is_member(&self, w: &Word) -> Result<bool> {
        self.check_alphabet(w)?;
        if w.len() != self.n {
            return Ok(false);
        }
        let (bits, resid) = self.decompose(w)?;
        Ok(self.first.is_member(&bits)
            && self.svt_full.is_member(&resid)?
            && self.svt_odd.is_member(&subsequence(&resid, 1, 2)?)?
            && self.svt_even.is_member(&subsequence(&resid, 2, 2)?)?)
    }

    /// Decodes a received word after a burst of 0, 1 or 2 deletions.
    ///
    /// The bit row pins the codeword's bits and a window of possible burst
    /// starts. A single deletion is then repaired on the full residual
    /// sequence. A double deletion removes one symbol from each stride-2
    /// subsequence — consecutive positions have opposite parities — so each
    /// subsequence is repaired in its translated window and the two
    /// interleave back together.
    pub fn decode(&self, r: &Word) -> Result<Word> {
        self.check_alphabet(r)?;
        let s = self.n.checked_sub(r.len()).filter(|&s| s <= 2).ok_or_else(|| {
            Error::Domain(format!(
                "received length {} is not within a 2-burst of n = {}",
                r.len(),
                self.n
            ))
        })?;
        if s == 0 {
            return if self.is_member(r)? {
                Ok(r.clone())
            } else {
                Err(Error::Decode("received word has full length but is not a codeword".into()))
            };
        }
        let (bits_r, resid_r) = self.decompose(r)?;
        let (bits, window) = self.first.decode(&bits_r)?;
        let (lo, hi) = window.ok_or_else(|| {
            Error::InternalInvariant("bit-row decoder reported no burst window".into())
        })?;
        let resid = if s == 1 {
            self.svt_full.decode_windowed(&resid_r, lo, hi)?
        } else {
            // Burst start j deletes word positions j and j+1: the odd
            // subsequence loses its element floor(j/2)+1 and the even one
            // loses element ceil(j/2).
            let odd = self.svt_odd.decode_windowed(
                &subsequence(&resid_r, 1, 2)?,
                lo / 2 + 1,
                hi / 2 + 1,
            )?;
            let even = self.svt_even.decode_windowed(
                &subsequence(&resid_r, 2, 2)?,
                lo.div_ceil(2),
                hi.div_ceil(2),
            )?;
            let mut symbols = Vec::with_capacity(self.n);
            for (o, e) in odd.symbols().iter().zip(even.symbols()) {
                symbols.push(*o);
                symbols.push(*e);
            }
            Word::from_trusted(self.q / 2, symbols)
        };
        let cw = self.recompose(&bits, &resid)?;
        if !self.is_member(&cw)? {
            return Err(Error::Decode(
                "reconstruction is not a codeword; the received word was not a codeword minus one burst"
                    .into(),
            ));
        }
        Ok(cw)
    }

    /// Enumerates all codewords (bit row codewords times admissible residual
    /// rows), sorted, guarded by a cap on the residual scan.
    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Vec<Word>> {
        let qp = self.q / 2;
        let total = checked_pow(u64::from(qp), self.n).filter(|&v| v <= cap).ok_or_else(|| {
            Error::Capacity(format!(
                "residual scan over {qp}^{} words exceeds the cap of {cap}",
                self.n
            ))
        })?;
        let mut residuals = Vec::new();
        let mut symbols = vec![0u16; self.n];
        for _ in 0..total {
            let w = Word::from_trusted(qp, symbols.clone());
            if self.svt_full.is_member(&w)?
                && self.svt_odd.is_member(&subsequence(&w, 1, 2)?)?
                && self.svt_even.is_member(&subsequence(&w, 2, 2)?)?
            {
                residuals.push(w);
            }
            let mut i = self.n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                symbols[i] += 1;
                if u32::from(symbols[i]) < qp {
                    break;
                }
                symbols[i] = 0;
            }
        }
        let mut out = Vec::with_capacity(self.first.codewords().len() * residuals.len());
        for bits in self.first.codewords() {
            for resid in &residuals {
                out.push(self.recompose(bits, resid)?);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// The systematic `q >= 3` construction for bursts of at most two deletions.
///
/// A codeword is `x | marker | registers`: the marker is
/// `(x_k, x_k, g, g, g, B, B)` with `g` differing from both `x_k` and `B`,
/// and the registers spell out, in base `q`, the shifted-VT syndrome and sum
/// of `diff(x)` and of both stride-2 subsequences of `x`. Decoding first
/// checks whether re-encoding the received prefix explains the damage (burst
/// in the suffix); otherwise the registers are intact and drive windowed
/// decoding of the message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerCode {
    q: u32,
    k: usize,
    p: usize,
    m: usize,
    n: usize,
}

impl MarkerCode {
    /// A marker code with message length `k` (even) and window parameter `p`.
    pub fn new(q: u32, k: usize, p: usize) -> Result<Self> {
        if q < 3 {
            return Err(Error::Domain(format!("the marker construction requires q >= 3, got {q}")));
        }
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::Domain(format!("message length must be even and >= 2, got {k}")));
        }
        if p == 0 {
            return Err(Error::Domain("window parameter must be at least 1".into()));
        }
        let m = ceil_log(u64::from(q), u64::from(q) * (p as u64 + 1));
        Ok(MarkerCode { q, k, p, m, n: k + 7 + 3 * (m + 2) })
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    /// Message length.
    pub fn message_len(&self) -> usize {
        self.k
    }
    /// Codeword length `k + 7 + 3(m+2)`.
    pub fn n(&self) -> usize {
        self.n
    }
    /// Window parameter.
    pub fn window(&self) -> usize {
        self.p
    }

    fn syn_modulus(&self) -> u64 {
        u64::from(self.q) * (self.p as u64 + 1)
    }

    /// The `(syndrome, sum)` pair of `diff(view)` for one view of the message.
    fn keys_of(&self, view: &Word) -> Result<(u64, u64)> {
        let y = diff(view)?;
        Ok((vt_syndrome(&y, self.syn_modulus())?, symbol_sum(&y, u64::from(self.q) + 1)?))
    }

    fn digits_msb(&self, mut value: u64, width: usize) -> Vec<u16> {
        let q = u64::from(self.q);
        let mut out = vec![0u16; width];
        for d in out.iter_mut().rev() {
            *d = (value % q) as u16;
            value /= q;
        }
        debug_assert_eq!(value, 0, "value fits in {width} digits");
        out
    }

    fn read_msb(&self, digits: &[u16]) -> u64 {
        digits.iter().fold(0u64, |acc, &d| acc * u64::from(self.q) + u64::from(d))
    }

    /// Encodes a message of `k` symbols.
    pub fn encode(&self, x: &Word) -> Result<Word> {
        if x.q() != self.q {
            return Err(Error::Domain(format!(
                "message alphabet {} does not match code alphabet {}",
                x.q(),
                self.q
            )));
        }
        if x.len() != self.k {
            return Err(Error::Domain(format!(
                "message must have {} symbols, got {}",
                self.k,
                x.len()
            )));
        }
        let views = [x.clone(), subsequence(x, 1, 2)?, subsequence(x, 2, 2)?];
        let mut registers = Vec::with_capacity(3 * (self.m + 2));
        let mut beta = 0u16;
        for (i, view) in views.iter().enumerate() {
            let (a, b) = self.keys_of(view)?;
            let u = self.digits_msb(a, self.m);
            if i == 0 {
                beta = u[0];
            }
            registers.extend_from_slice(&u);
            registers.extend_from_slice(&self.digits_msb(b, 2));
        }
        let xk = x[idx(self.k)];
        let guard = (0..self.q as u16)
            .find(|&g| g != xk && g != beta)
            .expect("q >= 3 leaves a free symbol");

        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(x.symbols());
        out.extend_from_slice(&[xk, xk, guard, guard, guard, beta, beta]);
        out.extend_from_slice(&registers);
        debug_assert_eq!(out.len(), self.n);
        Ok(Word::from_trusted(self.q, out))
    }

    /// Whether `w` is a codeword (the image of some message).
    pub fn is_member(&self, w: &Word) -> Result<bool> {
        if w.q() != self.q {
            return Err(Error::Domain(format!(
                "word alphabet {} does not match code alphabet {}",
                w.q(),
                self.q
            )));
        }
        if w.len() != self.n {
            return Ok(false);
        }
        let prefix = Word::from_trusted(self.q, w.symbols()[..self.k].to_vec());
        Ok(self.encode(&prefix)? == *w)
    }

    /// Decodes a received word after a burst of 0, 1 or 2 deletions,
    /// returning the message.
    ///
    /// `window`, when given, restricts the burst start positions within the
    /// message to `lo..=hi` (1-based); it is required whenever the message is
    /// longer than the window parameter allows, and is what an outer
    /// construction that localizes the burst passes in.
    pub fn decode(&self, r: &Word, window: Option<(usize, usize)>) -> Result<Word> {
        if r.q() != self.q {
            return Err(Error::Domain(format!(
                "word alphabet {} does not match code alphabet {}",
                r.q(),
                self.q
            )));
        }
        let s = self.n.checked_sub(r.len()).filter(|&s| s <= 2).ok_or_else(|| {
            Error::Domain(format!(
                "received length {} is not within a 2-burst of n = {}",
                r.len(),
                self.n
            ))
        })?;
        let prefix = Word::from_trusted(self.q, r.symbols()[..self.k.min(r.len())].to_vec());
        if s == 0 {
            return if self.encode(&prefix)? == *r {
                Ok(prefix)
            } else {
                Err(Error::Decode("received word has full length but is not a codeword".into()))
            };
        }

        // Suffix burst: the first k symbols are intact, so re-encode them and
        // look for a burst position past the message that explains r.
        let reencoded = self.encode(&prefix)?;
        for start in self.k + 1..=self.n - s + 1 {
            let mut v = reencoded.symbols().to_vec();
            v.drain(idx(start)..idx(start) + s);
            if v == r.symbols() {
                return Ok(prefix);
            }
        }

        // Message burst: the registers at the tail are intact. Read the keys
        // back out and decode the damaged message in the window.
        let regs = &r.symbols()[r.len() - 3 * (self.m + 2)..];
        let mut keys = [(0u64, 0u64); 3];
        for (i, key) in keys.iter_mut().enumerate() {
            let block = &regs[i * (self.m + 2)..(i + 1) * (self.m + 2)];
            let a = self.read_msb(&block[..self.m]);
            let b = self.read_msb(&block[self.m..]);
            if a >= self.syn_modulus() || b > u64::from(self.q) {
                return Err(Error::Decode("register values out of range".into()));
            }
            *key = (a, b);
        }
        let data = Word::from_trusted(self.q, r.symbols()[..self.k - s].to_vec());
        let (lo, hi) = window.unwrap_or((1, self.k));
        if lo < 1 || lo > hi || hi > self.k {
            return Err(Error::Domain(format!("invalid window [{lo}, {hi}]")));
        }
        let message = if s == 1 {
            let svt = DiffSvt::new(self.q, self.k, self.p, keys[0].0, keys[0].1)?;
            svt.decode_windowed(&data, lo, hi)?
        } else {
            let hi = hi.min(self.k - 1);
            if lo > hi {
                return Err(Error::Decode(
                    "no burst position inside the message fits the window".into(),
                ));
            }
            let svt_odd = DiffSvt::new(self.q, self.k / 2, self.p, keys[1].0, keys[1].1)?;
            let svt_even = DiffSvt::new(self.q, self.k / 2, self.p, keys[2].0, keys[2].1)?;
            let odd =
                svt_odd.decode_windowed(&subsequence(&data, 1, 2)?, lo / 2 + 1, hi / 2 + 1)?;
            let even = svt_even.decode_windowed(
                &subsequence(&data, 2, 2)?,
                lo.div_ceil(2),
                hi.div_ceil(2),
            )?;
            let mut symbols = Vec::with_capacity(self.k);
            for (o, e) in odd.symbols().iter().zip(even.symbols()) {
                symbols.push(*o);
                symbols.push(*e);
            }
            Word::from_trusted(self.q, symbols)
        };

        // The recovered message must actually explain the received word.
        let cw = self.encode(&message)?;
        let ok = (1..=self.n - s + 1).any(|start| {
            let head = &cw.symbols()[..idx(start)];
            let tail = &cw.symbols()[idx(start) + s..];
            r.symbols()[..head.len()] == *head && r.symbols()[head.len()..] == *tail
        });
        if !ok {
            return Err(Error::Decode("reconstruction does not explain the received word".into()));
        }
        Ok(message)
    }
}
