//! Property-based invariants: transforms are inverses, error balls are dual,
//! encoders round-trip, and decoder reports stay internally consistent.

use diffvt::error_model::{self, apply, BallMode, ErrorSpec};
use diffvt::rll;
use diffvt::seq;
use diffvt::{Case, DiffSvt, DiffVt, Word};
use proptest::prelude::*;

fn word(max_q: u32, min_len: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (2..=max_q).prop_flat_map(move |q| {
        proptest::collection::vec(0..q as u16, min_len..=max_len)
            .prop_map(move |symbols| Word::new(q, symbols).unwrap())
    })
}

/// A word together with a 1-based position in it.
fn word_with_pos(
    max_q: u32,
    min_len: usize,
    max_len: usize,
) -> impl Strategy<Value = (Word, usize)> {
    word(max_q, min_len, max_len).prop_flat_map(|w| {
        let n = w.len();
        (Just(w), 1..=n)
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn diff_and_diff_inv_are_inverses(w in word(9, 1, 16)) {
        let y = seq::diff(&w).unwrap();
        prop_assert_eq!(seq::diff_inv(&y).unwrap(), w.clone());
        let x = seq::diff_inv(&w).unwrap();
        prop_assert_eq!(seq::diff(&x).unwrap(), w);
    }

    #[test]
    fn signature_is_binary_one_shorter(w in word(9, 2, 16)) {
        let sig = seq::signature(&w).unwrap();
        prop_assert_eq!(sig.q(), 2);
        prop_assert_eq!(sig.len(), w.len() - 1);
        for (i, &s) in sig.symbols().iter().enumerate() {
            prop_assert_eq!(s == 1, w[i + 1] >= w[i]);
        }
    }

    #[test]
    fn p_transform_is_invertible(w in word(9, 1, 12), p in 1u32..9) {
        let q = u64::from(w.q());
        prop_assume!(gcd(u64::from(p), q) == 1);
        let inv = (1..w.q()).find(|pi| (u64::from(p * pi)) % q == 1).unwrap();
        let forward = seq::p_transform(&w, p).unwrap();
        prop_assert_eq!(seq::p_transform(&forward, inv).unwrap(), w);
    }

    #[test]
    fn vt_syndrome_is_reduced_and_additive(w in word(9, 1, 16), modulus in 1u64..200) {
        let s = seq::vt_syndrome(&w, modulus).unwrap();
        prop_assert!(s < modulus);
        let direct: u64 = w.symbols().iter().enumerate()
            .map(|(i, &x)| (i as u64 + 1) * u64::from(x))
            .sum();
        prop_assert_eq!(s, direct % modulus);
    }

    #[test]
    fn deletion_and_insertion_balls_are_dual(w in word(4, 2, 8), t in 1usize..=2) {
        prop_assume!(t <= w.len());
        let ball = error_model::error_ball(&w, t, BallMode::Exact).unwrap();
        // Exact balls are only defined down to length t, so recurse only on
        // shortened words that are still long enough.
        for u in ball.iter().filter(|u| u.len() == w.len() - t && u.len() >= t) {
            let back = error_model::error_ball(u, t, BallMode::Exact).unwrap();
            prop_assert!(back.contains(&w), "{w} not reachable back from {u}");
        }
    }

    #[test]
    fn confusability_is_symmetric(u in word(3, 1, 7), v_syms in proptest::collection::vec(0u16..3, 1..7), t in 1usize..=2) {
        let v = Word::new(u.q(), v_syms.into_iter().map(|s| s % u.q() as u16).collect()).unwrap();
        prop_assume!(u != v);
        prop_assume!(t <= u.len().min(v.len()));
        let uv = error_model::confusable(&u, &v, t, BallMode::AtMost).unwrap();
        let vu = error_model::confusable(&v, &u, t, BallMode::AtMost).unwrap();
        prop_assert_eq!(uv, vu);
    }

    #[test]
    fn insert_then_delete_is_identity(w in word(9, 1, 12), at in 0usize..=12, len in 1usize..=3) {
        let at = at.min(w.len());
        let block: Vec<u16> = (0..len).map(|i| (i % w.q() as usize) as u16).collect();
        let bigger = apply(&w, &ErrorSpec::insertion(at, block)).unwrap();
        let back = apply(&bigger, &ErrorSpec::deletion(at + 1, len)).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn apply_validates_exactly_the_in_range_specs(w in word(5, 1, 10), start in 0usize..14, len in 0usize..4) {
        let outcome = apply(&w, &ErrorSpec::deletion(start, len));
        let valid = len >= 1 && start >= 1 && start + len <= w.len() + 1;
        prop_assert_eq!(outcome.is_ok(), valid);
    }

    #[test]
    fn vt_coset_decodes_its_own_deletions((w, d) in word_with_pos(5, 2, 12)) {
        let modulus = u64::from(w.q()) * w.len() as u64;
        let a = seq::vt_syndrome(&seq::diff(&w).unwrap(), modulus).unwrap();
        let code = DiffVt::new(w.q(), w.len(), a).unwrap();
        let r = apply(&w, &ErrorSpec::deletion(d, 1)).unwrap();
        let report = code.decode(&r).unwrap();
        prop_assert_eq!(report.recovered, w.clone());

        // The report's case tag must match its own delta/s arithmetic.
        let delta = report.delta.unwrap();
        let s = report.s.unwrap();
        let q = u64::from(w.q());
        match report.case {
            Case::Case2a => prop_assert!(delta <= s),
            Case::Case1Front => prop_assert!(s < delta && delta < s + q),
            Case::Case2b => prop_assert!(delta > s + q),
            other => prop_assert!(false, "unexpected case {other:?} for a deletion"),
        }
        let pos = report.position.unwrap();
        prop_assert!((1..=w.len()).contains(&pos));
    }

    #[test]
    fn vt_coset_decodes_its_own_insertions(w in word(4, 2, 10), at in 0usize..=10, sym in 0u16..4) {
        let at = at.min(w.len());
        let sym = sym % w.q() as u16;
        let modulus = u64::from(w.q()) * w.len() as u64;
        let a = seq::vt_syndrome(&seq::diff(&w).unwrap(), modulus).unwrap();
        let code = DiffVt::new(w.q(), w.len(), a).unwrap();
        let r = apply(&w, &ErrorSpec::insertion(at, vec![sym])).unwrap();
        let report = code.decode(&r).unwrap();
        prop_assert_eq!(report.recovered, w);
        prop_assert_eq!(report.case, Case::Insertion);
    }

    #[test]
    fn vt_encoder_roundtrips(q in 2u32..=4, n in 6usize..=20, seed in any::<u64>()) {
        prop_assume!(n >= q as usize);
        let code = DiffVt::new(q, n, 0).unwrap();
        let k = code.message_len().unwrap();
        // Derive a message deterministically from the seed.
        let symbols: Vec<u16> = (0..k).map(|i| {
            ((seed.rotate_left(7 * i as u32) >> 5) % u64::from(q)) as u16
        }).collect();
        let msg = Word::new(q, symbols).unwrap();
        let cw = code.encode(&msg).unwrap();
        prop_assert_eq!(cw.len(), n);
        prop_assert!(code.is_member(&cw).unwrap());
        prop_assert_eq!(code.extract_message(&cw).unwrap(), msg.clone());
        let d = 1 + (seed as usize % n);
        let r = apply(&cw, &ErrorSpec::deletion(d, 1)).unwrap();
        prop_assert_eq!(code.decode_message(&r).unwrap(), msg);
    }

    #[test]
    fn svt_encoder_roundtrips_in_window(q in 2u32..=3, p in 1usize..=3, extra in 0usize..=4, seed in any::<u64>()) {
        let n = 3 * q as usize * (p + 1) + extra;
        let code = DiffSvt::new(q, n, p, 0, 0).unwrap();
        let k = code.message_len().unwrap();
        let symbols: Vec<u16> = (0..k).map(|i| {
            ((seed.rotate_left(11 * i as u32) >> 3) % u64::from(q)) as u16
        }).collect();
        let msg = Word::new(q, symbols).unwrap();
        let cw = code.encode(&msg).unwrap();
        prop_assert!(code.is_member(&cw).unwrap());
        prop_assert_eq!(code.extract_message(&cw).unwrap(), msg);

        let d = 1 + (seed as usize % n);
        let r = apply(&cw, &ErrorSpec::deletion(d, 1)).unwrap();
        let lo = d.saturating_sub(p - 1).max(1);
        let rec = code.decode_windowed(&r, lo, (lo + p - 1).min(n)).unwrap();
        prop_assert_eq!(rec, cw);
    }

    #[test]
    fn rll_encoding_obeys_its_bound(q in 2u32..=4, n in 14usize..=36, seed in any::<u64>()) {
        prop_assume!(rll::supports(q, n));
        let symbols: Vec<u16> = (0..n - 1).map(|i| {
            ((seed.rotate_left(13 * i as u32) >> 2) % u64::from(q)) as u16
        }).collect();
        let msg = Word::new(q, symbols).unwrap();
        let enc = rll::encode_rll(&msg, n).unwrap();
        prop_assert_eq!(enc.len(), n);
        prop_assert!(rll::max_run(&enc) <= rll::run_limit(q, n));
        prop_assert_eq!(rll::decode_rll(&enc).unwrap(), msg);
    }

    #[test]
    fn word_text_roundtrip_base36(w in word(36, 0, 12)) {
        let text = w.to_string();
        prop_assert_eq!(Word::parse(w.q(), &text).unwrap(), w);
    }

    #[test]
    fn word_text_roundtrip_decimal(q in 37u32..200, syms in proptest::collection::vec(any::<u16>(), 1..8)) {
        let symbols: Vec<u16> = syms.into_iter().map(|s| s % q as u16).collect();
        let w = Word::new(q, symbols).unwrap();
        let text = w.to_string();
        prop_assert_eq!(Word::parse(q, &text).unwrap(), w);
    }
}
