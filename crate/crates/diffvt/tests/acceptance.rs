//! Acceptance gate: eight end-to-end criteria, each printing exactly one
//! pass/fail line. A criterion aggregates its sub-checks and fails loudly
//! with the list of offending sub-checks.

use diffvt::error_model::DEFAULT_CAP;
use diffvt::tenengolts::{best_coset_size, CosetFamily};
use diffvt::{
    seq, verify, BurstFixed, Case, CodebookCode, DiffSvt, DiffVt, FirstRowCode, MarkerCode,
    TwoRowCode, Word,
};

const SAMPLE_SEED: u64 = 1729;

fn verdict(criterion: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    // Write straight to stdout so the line shows even under the harness's
    // output capture.
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "acceptance {criterion}: {status}");
    assert!(failures.is_empty(), "{criterion} failed: {failures:?}");
}

/// Records a named sub-check into the failure list.
macro_rules! check {
    ($failures:expr, $label:expr, $cond:expr) => {
        if !$cond {
            $failures.push($label.to_string());
        }
    };
}

fn w(q: u32, s: &str) -> Word {
    Word::parse(q, s).unwrap()
}

/// Independent ceiling logarithm for the redundancy identities.
fn clog(q: u64, n: u64) -> usize {
    let mut m = 0;
    let mut pow = 1u64;
    while pow < n {
        pow *= q;
        m += 1;
    }
    m
}

#[test]
fn criterion_1_reference_examples() {
    let mut f = Vec::new();

    check!(f, "diff", seq::diff(&w(4, "0211301")).unwrap() == w(4, "2102331"));
    check!(f, "signature", seq::signature(&w(4, "0211301")).unwrap() == w(2, "101101"));
    check!(
        f,
        "diff_syndrome",
        seq::vt_syndrome(&seq::diff(&w(4, "0103112013")).unwrap(), 40).unwrap() == 0
    );

    // Single-deletion decoding, interior case: delta = 16 <= s = 20, position 3.
    let code = DiffVt::new(4, 10, 0).unwrap();
    let rep = code.decode(&w(4, "013112013")).unwrap();
    check!(f, "case2a_recovered", rep.recovered == w(4, "0103112013"));
    check!(f, "case2a_tag", rep.case == Case::Case2a);
    check!(f, "case2a_delta", rep.delta == Some(16));
    check!(f, "case2a_s", rep.s == Some(20));
    check!(f, "case2a_position", rep.position == Some(3));

    // Same codeword, late deletion: delta = 36 > s + q = 20, position 8.
    let rep = code.decode(&w(4, "010311213")).unwrap();
    check!(f, "case2b_recovered", rep.recovered == w(4, "0103112013"));
    check!(f, "case2b_tag", rep.case == Case::Case2b);
    check!(f, "case2b_delta", rep.delta == Some(36));
    check!(f, "case2b_s", rep.s == Some(16));
    check!(f, "case2b_position", rep.position == Some(8));

    // Run case over q=3: the deleted symbol re-enters inside its run.
    let code = DiffVt::new(3, 10, 7).unwrap();
    let rep = code.decode(&w(3, "010212200")).unwrap();
    check!(f, "run_recovered", rep.recovered == w(3, "0102122200"));
    check!(f, "run_delta", rep.delta == Some(2));
    check!(f, "run_s", rep.s == Some(9));
    check!(f, "run_gamma", rep.gamma == Some(2));
    check!(f, "run_position", rep.position == Some(6));

    // Systematic encoders.
    let code = DiffVt::new(3, 10, 0).unwrap();
    let cw = code.encode(&w(3, "220011")).unwrap();
    check!(f, "vt_encoder", cw == w(3, "1121222100"));
    check!(f, "vt_encoder_syndrome", seq::vt_syndrome(&seq::diff(&cw).unwrap(), 30).unwrap() == 0);
    check!(
        f,
        "vt_encoder_q4",
        DiffVt::new(4, 10, 0).unwrap().encode(&w(4, "3210123")).unwrap() == w(4, "0120033201")
    );
    let svt = DiffSvt::new(2, 20, 2, 0, 0).unwrap();
    check!(f, "svt_positions", svt.syndrome_positions().unwrap() == vec![1, 2, 4, 12, 18]);
    check!(
        f,
        "svt_encoder",
        svt.encode(&w(2, "101100111000101")).unwrap() == w(2, "01011101110101111011")
    );
    check!(f, "diff_inv", seq::diff_inv(&w(3, "0212001100")).unwrap() == w(3, "1121222100"));

    verdict("criterion 1 (reference examples)", &f);
}

#[test]
fn criterion_2_single_error_exhaustive() {
    let mut f = Vec::new();
    for q in [2u32, 3, 4] {
        for n in [6usize, 7, 8] {
            let report = verify::verify_diffvt(q, n, DEFAULT_CAP).unwrap();
            for c in report.checks.iter().filter(|c| !c.passed) {
                f.push(format!("q={q} n={n} {}: {}", c.name, c.detail));
            }
        }
    }
    verdict("criterion 2 (exhaustive single-deletion/insertion correction)", &f);
}

#[test]
fn criterion_3_coset_cardinality() {
    let mut f = Vec::new();
    let bound = 274; // ceil(3^8 / (3*8))
    let d = best_coset_size(3, 8, CosetFamily::DiffVt, DEFAULT_CAP).unwrap();
    check!(f, "diffvt_bound", d.size >= bound);
    check!(f, "diffvt_exact_maximum", d.size == 278 && d.a == 0);
    let t = best_coset_size(3, 8, CosetFamily::Tenengolts, DEFAULT_CAP).unwrap();
    check!(f, "baseline_bound", t.size >= bound);
    check!(f, "baseline_exact_maximum", t.size == 278 && t.a == 4 && t.b == Some(0));
    verdict("criterion 3 (pigeonhole coset cardinality)", &f);
}

#[test]
fn criterion_4_encoder_redundancy() {
    let mut f = Vec::new();

    // Single-deletion encoder: redundancy is ceil(log_q n) + 1 symbols.
    for q in [2u32, 3, 4, 5] {
        for n in [8usize, 10, 16, 27, 40, 100] {
            let code = DiffVt::new(q, n, 0).unwrap();
            let k = code.message_len().unwrap();
            check!(f, format!("diffvt q={q} n={n}"), n - k == clog(q.into(), n as u64) + 1);
        }
    }

    // Windowed encoder: redundancy is ceil(log_q q(P+1)) + 2 symbols.
    for q in [2u32, 3, 4] {
        for p in [1usize, 2, 4, 8] {
            let n = 3 * q as usize * (p + 1) + 5;
            let code = DiffSvt::new(q, n, p, 0, 0).unwrap();
            let k = code.message_len().unwrap();
            check!(
                f,
                format!("diffsvt q={q} p={p}"),
                n - k == clog(q.into(), u64::from(q) * (p as u64 + 1)) + 2
            );
        }
    }

    // Marker encoder: redundancy is 3(ceil(log_q q(P+1)) + 2) + 7 symbols.
    for q in [3u32, 4, 8] {
        for p in [1usize, 3, 9] {
            for k in [4usize, 10, 50] {
                let code = MarkerCode::new(q, k, p).unwrap();
                let m = clog(q.into(), u64::from(q) * (p as u64 + 1));
                check!(f, format!("marker q={q} p={p} k={k}"), code.n() - k == 3 * (m + 2) + 7);
            }
        }
    }
    verdict("criterion 4 (encoder redundancy identities)", &f);
}

#[test]
fn criterion_5_windowed_svt_property() {
    let mut f = Vec::new();
    for (q, n, p) in [(2u32, 12usize, 4usize), (3, 10, 2), (3, 12, 4)] {
        let report = verify::verify_diffsvt(q, n, p, DEFAULT_CAP).unwrap();
        for c in report.checks.iter().filter(|c| !c.passed) {
            f.push(format!("q={q} n={n} p={p} {}: {}", c.name, c.detail));
        }
    }
    verdict("criterion 5 (window-bounded deletion correction)", &f);
}

#[test]
fn criterion_6_fixed_burst_correction() {
    let mut f = Vec::new();

    // Small-length variant with tightened run/window limits: exhaustive over
    // every nonempty coset.
    let report = verify::verify_burst_t(2, 16, 2, Some((4, 5)), DEFAULT_CAP).unwrap();
    for c in report.checks.iter().filter(|c| !c.passed) {
        f.push(format!("small {}: {}", c.name, c.detail));
    }
    let reference = BurstFixed::with_limits(2, 16, 2, 0, 0, 0, 4, 5).unwrap();
    check!(f, "frozen_small_coset_size", reference.enumerate().unwrap().len() == 126);

    // Encoded variant at scale; the burst length must divide the length, so
    // t=3 runs at 513 = 3 * 171.
    for (n, t) in [(512usize, 2usize), (513, 3)] {
        let report = verify::verify_burst_encoded(2, n, t, 1000, SAMPLE_SEED).unwrap();
        for c in report.checks.iter().filter(|c| !c.passed) {
            f.push(format!("n={n} t={t} {}: {}", c.name, c.detail));
        }
    }
    verdict("criterion 6 (fixed-length burst correction)", &f);
}

#[test]
fn criterion_7_le2_burst_correction() {
    let mut f = Vec::new();

    // Frozen structural facts about the q=4, n=16 instantiation.
    let cb = CodebookCode::build(16).unwrap();
    check!(f, "codebook_size", cb.len() == 1247);
    check!(f, "codebook_first_word", cb.codewords()[0] == w(2, "0000000001000000"));
    let code = TwoRowCode::new(4, cb, [(12, 1), (18, 1), (16, 1)]).unwrap();
    let words = code.enumerate_with_cap(DEFAULT_CAP).unwrap();
    check!(f, "composite_size", words.len() == 26187);

    // Full sweep + generic ball-disjointness oracle.
    let report = verify::verify_burst_le2(4, 16, DEFAULT_CAP).unwrap();
    for c in report.checks.iter().filter(|c| !c.passed) {
        f.push(format!("{}: {}", c.name, c.detail));
    }
    verdict("criterion 7 (bursts of at most two deletions)", &f);
}

#[test]
fn criterion_8_closed_form_fallback() {
    // Headline redundancy comparisons at asymptotic scale are not
    // reproducible by enumeration; the accepted substitute is the exact
    // closed-form redundancy of each encoder at large lengths, which the
    // correction suites (criteria 2, 5, 6, 7) back at small lengths.
    let mut f = Vec::new();
    for q in [2u32, 4, 8] {
        for t in [2usize, 3] {
            for row_len in [512usize, 4096, 32768] {
                let n = t * row_len;
                let code = BurstFixed::for_encoder(q, n, t, 0, 0, 0).unwrap();
                let k = code.message_len().unwrap();
                let m1 = clog(q.into(), row_len as u64);
                let m2 = clog(q.into(), u64::from(q) * (code.window() as u64 + 1));
                // Redundancy: one VT-redundant row plus t-1 windowed rows,
                // i.e. (m1 + 2) + (t-1)(m2 + 2) symbols, where m2 grows with
                // log log of the row length.
                check!(
                    f,
                    format!("burst q={q} t={t} n={n}"),
                    n - k == (m1 + 2) + (t - 1) * (m2 + 2)
                );
                check!(f, format!("loglog q={q} t={t} n={n}"), m2 <= m1);
            }
        }
    }
    // Marker-based construction at message lengths far beyond enumeration.
    for q in [3u32, 8] {
        for k in [1000usize, 100_000] {
            let p = 16;
            let code = MarkerCode::new(q, k, p).unwrap();
            let m = clog(q.into(), u64::from(q) * (p as u64 + 1));
            check!(f, format!("marker q={q} k={k}"), code.n() - k == 3 * (m + 2) + 7);
        }
    }
    verdict("criterion 8 (closed-form redundancy in place of asymptotics)", &f);
}
