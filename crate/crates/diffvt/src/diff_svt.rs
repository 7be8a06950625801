//! Shifted differential VT codes: single-deletion correction when the
//! deletion position is known up to a window of `P` consecutive positions.
//!
//! `DiffSvt { q, n, p, a, b }` keeps the words whose difference transform has
//! VT syndrome `a` modulo `q * (P + 1)` *and* symbol sum `b` modulo `q + 1`.
//! The shrunken syndrome modulus is what makes these usable as the row codes
//! of burst constructions: the redundancy depends on `P`, not on `n`.

use crate::pos::idx;
use crate::seq::{diff, diff_inv, raw_sum, symbol_sum, vt_syndrome};
use crate::word::Word;
use crate::{ceil_log, checked_pow, Error, Result};

/// A shifted differential VT code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSvt {
    q: u32,
    n: usize,
    p: usize,
    a: u64,
    b: u64,
}

impl DiffSvt {
    /// The code over `{0,..,q-1}^n` with window parameter `p`, syndrome
    /// residue `a` modulo `q*(p+1)` and sum residue `b` modulo `q+1`.
    pub fn new(q: u32, n: usize, p: usize, a: u64, b: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("alphabet size must be at least 2, got {q}")));
        }
        if n == 0 {
            return Err(Error::Domain("code length must be at least 1".into()));
        }
        if p == 0 {
            return Err(Error::Domain("window parameter must be at least 1".into()));
        }
        let syn_mod = u64::from(q) * (p as u64 + 1);
        if a >= syn_mod {
            return Err(Error::Domain(format!(
                "residue a={a} out of range for modulus q*(P+1) = {syn_mod}"
            )));
        }
        if b > u64::from(q) {
            return Err(Error::Domain(format!(
                "residue b={b} out of range for modulus q+1 = {}",
                q + 1
            )));
        }
        Ok(DiffSvt { q, n, p, a, b })
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn window(&self) -> usize {
        self.p
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }

    /// Syndrome modulus `q * (P + 1)`.
    pub fn syn_modulus(&self) -> u64 {
        u64::from(self.q) * (self.p as u64 + 1)
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

    /// Whether `w` is a codeword.
    pub fn is_member(&self, w: &Word) -> Result<bool> {
        self.check_alphabet(w)?;
        if w.len() != self.n {
            return Ok(false);
        }
        let y = diff(w)?;
        Ok(vt_syndrome(&y, self.syn_modulus())? == self.a
            && symbol_sum(&y, u64::from(self.q) + 1)? == self.b)
    }

    /// Recovers the codeword from which one symbol was deleted at a position
    /// inside `lo..=hi` (1-based positions in the codeword, window length
    /// `hi - lo + 1 <= P`).
    ///
    /// The restored symbol is pinned by the sum constraint, so decoding tries
    /// it at every window position and keeps the codeword that appears;
    /// exactly one can (window confusability is excluded by the choice of
    /// moduli). No candidate means the received word or window was wrong;
    /// several distinct candidates cannot happen and are reported as an
    /// internal invariant violation.
    pub fn decode_windowed(&self, r: &Word, lo: usize, hi: usize) -> Result<Word> {
        self.check_alphabet(r)?;
        if r.len() + 1 != self.n {
            return Err(Error::Domain(format!(
                "windowed decoding expects length {} (n-1), got {}",
                self.n - 1,
                r.len()
            )));
        }
        if lo < 1 || lo > hi {
            return Err(Error::Domain(format!("invalid window [{lo}, {hi}]")));
        }
        if hi - lo + 1 > self.p {
            return Err(Error::Domain(format!("window [{lo}, {hi}] longer than P = {}", self.p)));
        }
        let q = u64::from(self.q);
        let gamma = ((self.a % q + q - raw_sum(r) % q) % q) as u16;
        let hi = hi.min(r.len() + 1);
        if lo > hi {
            return Err(Error::Domain(format!("window [{lo}, ..] lies beyond the received word")));
        }
        let mut found: Option<Word> = None;
        for p in lo..=hi {
            let mut symbols = Vec::with_capacity(self.n);
            symbols.extend_from_slice(&r.symbols()[..idx(p)]);
            symbols.push(gamma);
            symbols.extend_from_slice(&r.symbols()[idx(p)..]);
            let cand = Word::from_trusted(self.q, symbols);
            if self.is_member(&cand)? {
                match &found {
                    None => found = Some(cand),
                    Some(prev) if *prev == cand => {}
                    Some(_) => {
                        return Err(Error::InternalInvariant(
                            "two distinct codewords fit the window".into(),
                        ))
                    }
                }
            }
        }
        found.ok_or_else(|| {
            Error::Decode("no codeword matches the received word within the window".into())
        })
    }

    /// Number of redundancy symbols `m + 2` the systematic encoder uses,
    /// where `m = ceil(log_q(q*(P+1)))`.
    fn num_syndrome_digits(&self) -> usize {
        ceil_log(u64::from(self.q), self.syn_modulus())
    }

    /// Positions used by the systematic encoder: powers of `q` for the
    /// syndrome digits plus two positions for the sum pair.
    pub fn syndrome_positions(&self) -> Result<Vec<usize>> {
        self.require_encoder()?;
        let m = self.num_syndrome_digits();
        let mut s: Vec<usize> =
            (0..m).map(|j| checked_pow(u64::from(self.q), j).unwrap() as usize).collect();
        let unit = self.syn_modulus() as usize;
        s.push(2 * unit);
        s.push(3 * unit);
        s.sort_unstable();
        Ok(s)
    }

    /// Message length `k = n - m - 2` of the systematic encoder.
    pub fn message_len(&self) -> Result<usize> {
        self.require_encoder()?;
        Ok(self.n - self.num_syndrome_digits() - 2)
    }

    fn require_encoder(&self) -> Result<()> {
        let needed = 3 * self.syn_modulus();
        if (self.n as u64) < needed {
            return Err(Error::Domain(format!(
                "the systematic encoder requires n >= 3*q*(P+1) = {needed}, got n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Encodes a message of [`message_len`](Self::message_len) symbols.
    ///
    /// Works in the difference domain: the syndrome deficit is written in
    /// base `q` at the power-of-`q` positions, and a pair of symbols at
    /// positions `2q(P+1)` and `3q(P+1)` absorbs the sum residue. The pair is
    /// the lexicographically smallest one with the right sum mod `q+1`; those
    /// two positions contribute `0 mod q(P+1)` to the syndrome, so the two
    /// constraints decouple.
    pub fn encode(&self, msg: &Word) -> Result<Word> {
        self.check_alphabet(msg)?;
        let k = self.message_len()?;
        if msg.len() != k {
            return Err(Error::Domain(format!("message must have {k} symbols, got {}", msg.len())));
        }
        let q = u64::from(self.q);
        let syn_mod = self.syn_modulus();
        let positions = self.syndrome_positions()?;
        let m = self.num_syndrome_digits();
        let unit = syn_mod as usize;

        let mut y = vec![0u16; self.n];
        let mut next = msg.symbols().iter();
        for p in 1..=self.n {
            if !positions.contains(&p) {
                y[idx(p)] = *next.next().expect("message length matches free positions");
            }
        }

        // Base-q digits of the syndrome deficit at positions q^j. Each such
        // position contributes q^j * z_j to the syndrome, and q^j < q(P+1)
        // for j < m, so the digits land exactly.
        let y_word = Word::from_trusted(self.q, y.clone());
        let mut deficit = (self.a + syn_mod - vt_syndrome(&y_word, syn_mod)?) % syn_mod;
        for j in 0..m {
            let p = checked_pow(q, j).unwrap() as usize;
            y[idx(p)] = (deficit % q) as u16;
            deficit /= q;
        }
        debug_assert_eq!(deficit, 0);

        // Sum pair: positions 2*unit and 3*unit are multiples of q(P+1), so
        // anything placed there is syndrome-neutral. Pick the smallest pair
        // (u, v) with u + v matching the sum deficit mod q+1.
        let sum_mod = q + 1;
        let partial = {
            let mut t = 0u64;
            for (i, &s) in y.iter().enumerate() {
                if i + 1 != 2 * unit && i + 1 != 3 * unit {
                    t += u64::from(s);
                }
            }
            t % sum_mod
        };
        let r = (self.b + sum_mod - partial) % sum_mod;
        let (u, v) = (0..q)
            .find_map(|u| {
                let v = (r + sum_mod - u % sum_mod) % sum_mod;
                (v < q).then_some((u, v))
            })
            .ok_or_else(|| Error::InternalInvariant("no admissible sum pair exists".into()))?;
        y[idx(2 * unit)] = u as u16;
        y[idx(3 * unit)] = v as u16;

        let codeword = diff_inv(&Word::from_trusted(self.q, y))?;
        debug_assert!(self.is_member(&codeword)?);
        Ok(codeword)
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
        let positions = self.syndrome_positions()?;
        let y = diff(codeword)?;
        let msg = (1..=self.n).filter(|p| !positions.contains(p)).map(|p| y[idx(p)]).collect();
        Ok(Word::from_trusted(self.q, msg))
    }

    /// Enumerates the whole code, guarded by the default capacity cap.
    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Vec<Word>> {
        let total = checked_pow(u64::from(self.q), self.n);
        match total {
            Some(t) if t <= cap => {}
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
}
