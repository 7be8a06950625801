//! Elementary sequence transforms and syndromes.

use crate::pos::idx;
use crate::word::Word;
use crate::{Error, Result};

/// The difference transform.
///
/// For `x = x_1 .. x_n` returns `y` with `y_i = (x_i - x_{i+1}) mod q` for
/// `i < n` and `y_n = x_n`. The transform is a bijection on words of each
/// length; see [`diff_inv`]. Errors on the empty word.
pub fn diff(x: &Word) -> Result<Word> {
    if x.is_empty() {
        return Err(Error::Domain("diff of the empty word is undefined".into()));
    }
    let q = x.q();
    let n = x.len();
    let mut out = Vec::with_capacity(n);
    for i in 1..n {
        let d = (u32::from(x[idx(i)]) + q - u32::from(x[idx(i + 1)])) % q;
        out.push(d as u16);
    }
    out.push(x[idx(n)]);
    Ok(Word::from_trusted(x.q(), out))
}

/// Inverse of [`diff`]: `x_i = (y_i + y_{i+1} + .. + y_n) mod q`.
pub fn diff_inv(y: &Word) -> Result<Word> {
    if y.is_empty() {
        return Err(Error::Domain("diff_inv of the empty word is undefined".into()));
    }
    let q = y.q();
    let n = y.len();
    let mut out = vec![0u16; n];
    let mut suffix = 0u32;
    for i in (1..=n).rev() {
        suffix = (suffix + u32::from(y[idx(i)])) % q;
        out[idx(i)] = suffix as u16;
    }
    Ok(Word::from_trusted(y.q(), out))
}

/// Scales every symbol by `p` modulo `q`.
///
/// Requires `gcd(p, q) = 1` so the map is a bijection on the alphabet.
pub fn p_transform(x: &Word, p: u32) -> Result<Word> {
    let q = x.q();
    if gcd(u64::from(p), u64::from(q)) != 1 {
        return Err(Error::Domain(format!("p = {p} is not invertible modulo q = {q}")));
    }
    let out = x
        .symbols()
        .iter()
        .map(|&s| ((u64::from(p) * u64::from(s)) % u64::from(q)) as u16)
        .collect();
    Ok(Word::from_trusted(q, out))
}

/// The Varshamov-Tenengolts syndrome `sum_i i * w_i mod modulus` with
/// 1-based positions.
pub fn vt_syndrome(w: &Word, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Domain("syndrome modulus must be positive".into()));
    }
    let mut acc = 0u64;
    for (i0, &s) in w.symbols().iter().enumerate() {
        acc = (acc + ((i0 as u64 + 1) % modulus) * (u64::from(s) % modulus)) % modulus;
    }
    Ok(acc)
}

/// Sum of the symbols modulo `modulus`.
pub fn symbol_sum(w: &Word, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Domain("sum modulus must be positive".into()));
    }
    Ok(w.symbols().iter().map(|&s| u64::from(s)).sum::<u64>() % modulus)
}

/// The binary signature: bit `i` is 1 iff `x_{i+1} >= x_i`.
///
/// The output has length `n - 1` over the alphabet `{0, 1}`. Errors on the
/// empty word; the signature of a single symbol is the empty binary word.
pub fn signature(x: &Word) -> Result<Word> {
    if x.is_empty() {
        return Err(Error::Domain("signature of the empty word is undefined".into()));
    }
    let out = x.symbols().windows(2).map(|p| u16::from(p[1] >= p[0])).collect();
    Ok(Word::from_trusted(2, out))
}

/// Greatest common divisor.
pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Raw (unreduced) sum of the symbols as a `u64`.
pub(crate) fn raw_sum(w: &Word) -> u64 {
    w.symbols().iter().map(|&s| u64::from(s)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q: u32, s: &str) -> Word {
        Word::parse(q, s).unwrap()
    }

    #[test]
    fn diff_known_values() {
        assert_eq!(diff(&w(4, "0211301")).unwrap(), w(4, "2102331"));
        assert_eq!(diff(&w(3, "0102122200")).unwrap(), w(3, "2111200200"));
        assert_eq!(diff(&w(4, "0103112013")).unwrap(), w(4, "3112032323"));
        // A single symbol is its own difference transform.
        assert_eq!(diff(&w(5, "3")).unwrap(), w(5, "3"));
    }

    #[test]
    fn diff_inv_known_value() {
        assert_eq!(diff_inv(&w(3, "0212001100")).unwrap(), w(3, "1121222100"));
    }

    #[test]
    fn diff_roundtrips() {
        for text in ["0", "01", "3120", "2222", "0123012301"] {
            let x = w(4, text);
            let y = diff(&x).unwrap();
            assert_eq!(diff_inv(&y).unwrap(), x);
            assert_eq!(diff(&diff_inv(&y).unwrap()).unwrap(), y);
        }
    }

    #[test]
    fn diff_rejects_empty() {
        let e = Word::empty(3).unwrap();
        assert!(diff(&e).is_err());
        assert!(diff_inv(&e).is_err());
        assert!(signature(&e).is_err());
    }

    #[test]
    fn vt_syndrome_examples() {
        // 1*2 + 2*1 + 3*0 + 4*2 + 5*3 + 6*3 + 7*1 = 52
        assert_eq!(vt_syndrome(&w(4, "2102331"), 1000).unwrap(), 52);
        assert_eq!(vt_syndrome(&w(4, "2102331"), 28).unwrap(), 52 % 28);
        assert_eq!(vt_syndrome(&w(3, "2111200200"), 30).unwrap(), 7);
        assert_eq!(vt_syndrome(&w(4, "3112032323"), 40).unwrap(), 0);
        assert_eq!(vt_syndrome(&Word::empty(3).unwrap(), 7).unwrap(), 0);
    }

    #[test]
    fn symbol_sum_reduces() {
        assert_eq!(symbol_sum(&w(4, "0211301"), 4).unwrap(), 0);
        assert_eq!(symbol_sum(&w(4, "0211301"), 100).unwrap(), 8);
        assert_eq!(symbol_sum(&Word::empty(4).unwrap(), 5).unwrap(), 0);
    }

    #[test]
    fn signature_known_value() {
        assert_eq!(signature(&w(4, "0211301")).unwrap(), w(2, "101101"));
        assert_eq!(signature(&w(3, "2")).unwrap(), Word::empty(2).unwrap());
    }

    #[test]
    fn p_transform_requires_coprime_scale() {
        let x = w(5, "01234");
        assert_eq!(p_transform(&x, 2).unwrap(), w(5, "02413"));
        assert_eq!(p_transform(&x, 1).unwrap(), x);
        assert!(p_transform(&w(4, "0123"), 2).is_err());
    }

    #[test]
    fn p_transform_is_bijective_on_symbols() {
        let x = w(9, "012345678");
        let y = p_transform(&x, 7).unwrap();
        let mut seen: Vec<u16> = y.symbols().to_vec();
        seen.sort_unstable();
        assert_eq!(seen, (0..9).collect::<Vec<u16>>());
    }

    #[test]
    fn zero_modulus_rejected() {
        let x = w(3, "012");
        assert!(vt_syndrome(&x, 0).is_err());
        assert!(symbol_sum(&x, 0).is_err());
    }
}
