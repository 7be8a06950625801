//! Tenengolts' q-ary single-deletion codes, used as the enumeration baseline
//! for cardinality comparisons.
//!
//! A word belongs to the `(a, b)` coset when the VT syndrome of its
//! signature (the binary word marking non-decreasing adjacent pairs) is `a`
//! modulo `n` and its symbol sum is `b` modulo `q`.

use crate::seq::{diff, signature, symbol_sum, vt_syndrome};
use crate::word::Word;
use crate::{checked_pow, Error, Result};
use rayon::prelude::*;

/// One coset of Tenengolts' construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tenengolts {
    q: u32,
    n: usize,
    a: u64,
    b: u64,
}

impl Tenengolts {
    /// The coset with signature syndrome `a` (mod `n`) and symbol sum `b`
    /// (mod `q`).
    pub fn new(q: u32, n: usize, a: u64, b: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("alphabet size must be at least 2, got {q}")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("code length must be at least 2, got {n}")));
        }
        if a >= n as u64 {
            return Err(Error::Domain(format!(
                "syndrome residue {a} out of range for modulus {n}"
            )));
        }
        if b >= u64::from(q) {
            return Err(Error::Domain(format!("sum residue {b} out of range for modulus {q}")));
        }
        Ok(Tenengolts { q, n, a, b })
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }

    /// Whether `w` lies in this coset.
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
        let sig = signature(w)?;
        Ok(vt_syndrome(&sig, self.n as u64)? == self.a
            && symbol_sum(w, u64::from(self.q))? == self.b)
    }

    /// All coset members in lexicographic order, guarded by `cap`.
    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Vec<Word>> {
        let total =
            checked_pow(u64::from(self.q), self.n).filter(|&v| v <= cap).ok_or_else(|| {
                Error::Capacity(format!(
                    "enumerating {}^{} words exceeds the cap of {cap}",
                    self.q, self.n
                ))
            })?;
        let mut out = Vec::new();
        for v in 0..total {
            let w = word_at(self.q, self.n, v);
            if self.is_member(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// Which code family a coset-size scan runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetFamily {
    /// Signature-based cosets keyed by `(a mod n, b mod q)`.
    Tenengolts,
    /// Differential VT cosets keyed by `a mod qn`.
    DiffVt,
}

/// The argmax coset of a family at `(q, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestCoset {
    pub family: CosetFamily,
    pub a: u64,
    /// Present for the Tenengolts family, absent for differential VT.
    pub b: Option<u64>,
    pub size: u64,
}

/// The word with lexicographic rank `v` among all `q`-ary words of length `n`.
pub(crate) fn word_at(q: u32, n: usize, mut v: u64) -> Word {
    let mut symbols = vec![0u16; n];
    for s in symbols.iter_mut().rev() {
        *s = (v % u64::from(q)) as u16;
        v /= u64::from(q);
    }
    Word::from_trusted(q, symbols)
}

/// Sizes of every coset of `family` at `(q, n)`, as `(a, b, size)` sorted by
/// `(a, b)`. The scan over all `q^n` words is parallelized and capped.
pub fn coset_sizes(
    q: u32,
    n: usize,
    family: CosetFamily,
    cap: u64,
) -> Result<Vec<(u64, Option<u64>, u64)>> {
    if q < 2 || n < 2 {
        return Err(Error::Domain(format!(
            "coset scan requires q >= 2 and n >= 2, got q={q}, n={n}"
        )));
    }
    let total = checked_pow(u64::from(q), n).filter(|&v| v <= cap).ok_or_else(|| {
        Error::Capacity(format!("scanning {q}^{n} words exceeds the cap of {cap}"))
    })?;
    let buckets = match family {
        CosetFamily::Tenengolts => n * q as usize,
        CosetFamily::DiffVt => n * q as usize,
    };
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; buckets],
            |mut acc, v| {
                let w = word_at(q, n, v);
                let slot = match family {
                    CosetFamily::Tenengolts => {
                        let sig = signature(&w).expect("length >= 2");
                        let a = vt_syndrome(&sig, n as u64).expect("valid modulus");
                        let b = symbol_sum(&w, u64::from(q)).expect("valid modulus");
                        a as usize * q as usize + b as usize
                    }
                    CosetFamily::DiffVt => {
                        let y = diff(&w).expect("nonempty");
                        vt_syndrome(&y, u64::from(q) * n as u64).expect("valid modulus") as usize
                    }
                };
                acc[slot] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; buckets],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(match family {
        CosetFamily::Tenengolts => counts
            .iter()
            .enumerate()
            .map(|(i, &c)| ((i / q as usize) as u64, Some((i % q as usize) as u64), c))
            .collect(),
        CosetFamily::DiffVt => {
            counts.iter().enumerate().map(|(i, &c)| (i as u64, None, c)).collect()
        }
    })
}

/// The largest coset of `family` at `(q, n)`; ties resolve to the smallest
/// `(a, b)`.
pub fn best_coset_size(q: u32, n: usize, family: CosetFamily, cap: u64) -> Result<BestCoset> {
    let sizes = coset_sizes(q, n, family, cap)?;
    let &(a, b, size) = sizes
        .iter()
        .max_by(|x, y| x.2.cmp(&y.2).then(y.0.cmp(&x.0)).then(y.1.cmp(&x.1)))
        .expect("at least one coset");
    Ok(BestCoset { family, a, b, size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_model::DEFAULT_CAP;

    #[test]
    fn constant_word_closed_form() {
        // 111111 over q=3: signature 11111, Syn = 15 mod 6 = 3, sum = 6 mod 3 = 0.
        let w = Word::parse(3, "111111").unwrap();
        assert!(Tenengolts::new(3, 6, 3, 0).unwrap().is_member(&w).unwrap());
        assert!(!Tenengolts::new(3, 6, 0, 0).unwrap().is_member(&w).unwrap());
        assert!(!Tenengolts::new(3, 6, 3, 1).unwrap().is_member(&w).unwrap());
    }

    #[test]
    fn cosets_partition_the_space() {
        let mut total = 0u64;
        for a in 0..6 {
            for b in 0..3 {
                let code = Tenengolts::new(3, 6, a, b).unwrap();
                total += code.enumerate_with_cap(DEFAULT_CAP).unwrap().len() as u64;
            }
        }
        assert_eq!(total, 729);
        let sizes = coset_sizes(3, 6, CosetFamily::Tenengolts, DEFAULT_CAP).unwrap();
        assert_eq!(sizes.iter().map(|&(_, _, c)| c).sum::<u64>(), 729);
    }

    #[test]
    fn frozen_maxima_at_q3_n8() {
        let t = best_coset_size(3, 8, CosetFamily::Tenengolts, DEFAULT_CAP).unwrap();
        assert_eq!((t.a, t.b, t.size), (4, Some(0), 278));
        let d = best_coset_size(3, 8, CosetFamily::DiffVt, DEFAULT_CAP).unwrap();
        assert_eq!((d.a, d.b, d.size), (0, None, 278));
        // Pigeonhole: both beat ceil(3^8 / 24) = 274.
        assert!(t.size >= 274 && d.size >= 274);
    }

    #[test]
    fn wrong_length_and_alphabet() {
        let code = Tenengolts::new(3, 6, 0, 0).unwrap();
        assert!(!code.is_member(&Word::parse(3, "11111").unwrap()).unwrap());
        assert!(code.is_member(&Word::parse(4, "111111").unwrap()).is_err());
        assert!(Tenengolts::new(3, 6, 6, 0).is_err());
        assert!(Tenengolts::new(3, 6, 0, 3).is_err());
        assert!(Tenengolts::new(1, 6, 0, 0).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(
            coset_sizes(3, 8, CosetFamily::DiffVt, 100),
            Err(crate::Error::Capacity(_))
        ));
    }
}
