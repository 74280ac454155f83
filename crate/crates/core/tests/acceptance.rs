//! Acceptance suite: ten end-to-end checks, one pass/fail line each.
//!
//! Runs without the libtest harness so the summary is always printed; exits nonzero
//! if any check fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use yuzvinski::corpus;
use yuzvinski::entropy::{algebraic_entropy, is_zero_entropy};
use yuzvinski::exact_arith::{primitivize, vp_int, IntPolynomial, Place};
use yuzvinski::mahler::{mahler_measure, DEFAULT_TOLERANCE};
use yuzvinski::padic::{newton_polygon, place_contribution, relevant_primes};
use yuzvinski::rational_linalg::{block_diag, char_poly, inverse, RationalMatrix};
use yuzvinski::trajectory::{
    admissible_m, bernoulli_counts, classify_growth, trajectory_counts, GrowthClass, TrajectoryRun, DEFAULT_BUDGET,
};

use common::{oracle_measure, reference};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn int(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows).unwrap()
}

fn frac(rows: &[&[(i64, i64)]]) -> RationalMatrix {
    RationalMatrix::from_fractions(rows).unwrap()
}

fn three_halves() -> RationalMatrix {
    frac(&[&[(3, 2)]])
}

fn fibonacci() -> RationalMatrix {
    int(&[&[0, 1], &[1, 1]])
}

fn six() -> RationalMatrix {
    frac(&[&[(0, 1), (-1, 6)], &[(1, 1), (5, 6)]])
}

fn rotation() -> RationalMatrix {
    int(&[&[0, -1], &[1, 0]])
}

fn doubling() -> RationalMatrix {
    int(&[&[2]])
}

fn place_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = corpus::rng(1);
    let mut failures = Vec::new();
    let mut primes_checked = 0usize;
    for i in 0..200 {
        let p = corpus::random_primitive_poly(&mut rng, 8, 1000);
        let s = p.leading().unwrap().clone();
        let primes = relevant_primes(&p).unwrap();
        let mut log_sum = 0.0;
        for &q in &primes {
            let c = place_contribution(&newton_polygon(&p, q).unwrap());
            let v = vp_int(&s, q).finite().unwrap();
            if !c.exact.is_integer() || *c.exact.numer() != v {
                failures.push(format!("poly {i}: p={q} polygon {} vs v_p(s) {v}", c.exact));
            }
            log_sum += v as f64 * (q as f64).ln();
            primes_checked += 1;
        }
        let log_s = s.to_f64().unwrap().ln();
        if (log_sum - log_s).abs() > 1e-12 * log_s.max(1.0) {
            failures.push(format!("poly {i}: sum {log_sum} vs log s {log_s}"));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(5);
    outcome(
        pass,
        format!(
            "200 polynomials, {primes_checked} prime checks, {} failures, {elapsed:.2?} {}",
            failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn lehmer() -> Outcome {
    let start = Instant::now();
    let m = mahler_measure(&corpus::lehmer(), DEFAULT_TOLERANCE).unwrap();
    let elapsed = start.elapsed();
    let oracle = oracle_measure(&corpus::lehmer());
    let pass = (m.value - 0.1623576120).abs() <= 1e-9
        && (m.value - reference::LEHMER_MEASURE).abs() <= 1e-12
        && (m.value - oracle).abs() <= 1e-12
        && m.certified
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("m = {:.15} (oracle {oracle:.15}, certified {}), {elapsed:.2?}", m.value, m.certified),
    )
}

fn oracle_three_halves() -> Outcome {
    let start = Instant::now();
    let run = trajectory_counts(&three_halves(), 1, 12, DEFAULT_BUDGET, 1).unwrap();
    let elapsed = start.elapsed();
    let expected: Vec<u64> = (1..=12u32).map(|n| 3u64.pow(n)).collect();
    let formula = algebraic_entropy(&three_halves()).unwrap().total;
    let h12 = run.growth.h_inc[11];
    let pass = run.counts() == expected.as_slice()
        && (h12 - 3f64.ln()).abs() <= 1e-12
        && (formula - 3f64.ln()).abs() <= 1e-12
        && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!("tau(12) = {}, H_inc(12) = {h12:.15}, formula {formula:.15}, {elapsed:.2?}", run.counts()[11]),
    )
}

fn oracle_fibonacci() -> Outcome {
    let start = Instant::now();
    let run = trajectory_counts(&fibonacci(), 1, 60, DEFAULT_BUDGET, 1).unwrap();
    let elapsed = start.elapsed();
    let formula = algebraic_entropy(&fibonacci()).unwrap().total;
    let h = run.growth.last_h_inc().unwrap();
    let pass = run.levels() >= 25
        && (formula - reference::GOLDEN_LOG).abs() <= 1e-12
        && (h - formula).abs() <= 0.05
        && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "n = {}, H_inc = {h:.6}, formula {formula:.7}, gap {:.2e}, {elapsed:.2?}",
            run.levels(),
            (h - formula).abs()
        ),
    )
}

fn non_archimedean() -> Outcome {
    let report = algebraic_entropy(&six()).unwrap();
    let places = report.places();
    let places_ok = places.len() == 3
        && places[0].0 == Place::Finite(2)
        && (places[0].1 - 2f64.ln()).abs() <= 1e-12
        && places[1].0 == Place::Finite(3)
        && (places[1].1 - 3f64.ln()).abs() <= 1e-12
        && places[2] == (Place::Infinity, 0.0);
    let m = admissible_m(&six()).unwrap();
    let start = Instant::now();
    let run = trajectory_counts(&six(), m, 60, DEFAULT_BUDGET, 1).unwrap();
    let elapsed = start.elapsed();
    let h = run.growth.last_h_inc().unwrap();
    let pass = (report.total - 6f64.ln()).abs() <= 1e-12
        && report.archimedean == 0.0
        && places_ok
        && (h - 6f64.ln()).abs() <= 0.15;
    outcome(
        pass,
        format!(
            "total {:.15}, archimedean {}, m = {m}, n = {}, H_inc = {h:.4}, gap {:.3}, {elapsed:.2?}",
            report.total,
            report.archimedean,
            run.levels(),
            (h - 6f64.ln()).abs()
        ),
    )
}

fn dichotomy() -> Outcome {
    let mut notes = Vec::new();
    let rot = trajectory_counts(&rotation(), 1, 50, DEFAULT_BUDGET, 1).unwrap();
    let rot_expected: Vec<u64> = (1..=50u64).map(|n| (2 * n + 1).pow(2)).collect();
    let rot_formula = algebraic_entropy(&rotation()).unwrap().total;
    let rot_verdict = classify_growth(&rot, Some(rot_formula)).unwrap();
    let rot_ok = rot.counts() == rot_expected.as_slice()
        && rot_verdict.class == GrowthClass::Polynomial
        && rot_formula == 0.0
        && !rot_verdict.discrepancy;
    notes.push(format!("rotation {}", rot_verdict.class));

    let dbl = trajectory_counts(&doubling(), 1, 12, DEFAULT_BUDGET, 1).unwrap();
    let dbl_expected: Vec<u64> = (1..=12u32).map(|n| 2u64.pow(n + 1) - 1).collect();
    let dbl_verdict = classify_growth(&dbl, Some(algebraic_entropy(&doubling()).unwrap().total)).unwrap();
    let dbl_ok = dbl.counts() == dbl_expected.as_slice()
        && dbl_verdict.class == GrowthClass::Exponential
        && !dbl_verdict.discrepancy;
    notes.push(format!("doubling {}", dbl_verdict.class));

    let mut rng = corpus::rng(6);
    let mut tally = [0usize; 3];
    let mut discrepancies = Vec::new();
    let mut matrices: Vec<RationalMatrix> = vec![RationalMatrix::identity(2), three_halves(), fibonacci(), six()];
    matrices.extend((0..40).map(|_| corpus::random_small_matrix(&mut rng)));
    for (i, m) in matrices.iter().enumerate() {
        let run = trajectory_counts(m, 1, 40, 2_000_000, 1).unwrap();
        let formula = algebraic_entropy(m).unwrap().total;
        let verdict = classify_growth(&run, Some(formula)).unwrap();
        tally[verdict.class as usize] += 1;
        if verdict.discrepancy {
            discrepancies.push(format!("#{i} {m} {} vs {formula:.4}", verdict.class));
        }
    }
    notes.push(format!(
        "corpus {}: {} polynomial, {} exponential, {} inconclusive, {} discrepancies",
        matrices.len(),
        tally[0],
        tally[1],
        tally[2],
        discrepancies.len()
    ));
    outcome(
        rot_ok && dbl_ok && discrepancies.is_empty(),
        format!("{} {}", notes.join("; "), discrepancies.join(" | ")),
    )
}

fn invariance() -> Outcome {
    let mut rng = corpus::rng(7);
    let matrices: Vec<RationalMatrix> = (0..100)
        .map(|_| corpus::random_rational_matrix(&mut rng, 4, 20, 20))
        .collect();
    let totals: Vec<f64> = matrices.iter().map(|m| algebraic_entropy(m).unwrap().total).collect();
    let mut worst = [0f64; 4];
    let mut conj_fail = 0usize;
    let mut invertible = 0usize;
    for (i, m) in matrices.iter().enumerate() {
        let j = (i + 1) % matrices.len();
        let sum = algebraic_entropy(&block_diag(m, &matrices[j])).unwrap().total;
        worst[0] = worst[0].max((sum - totals[i] - totals[j]).abs());

        if let Ok(inv) = inverse(m) {
            invertible += 1;
            worst[1] = worst[1].max((algebraic_entropy(&inv).unwrap().total - totals[i]).abs());
        }

        let p = corpus::random_invertible(&mut rng, m.dim(), 3);
        let conj = inverse(&p).unwrap().mul(m).unwrap().mul(&p).unwrap();
        if char_poly(&conj) != char_poly(m) {
            conj_fail += 1;
        }

        for k in [2u32, 3] {
            let hk = algebraic_entropy(&m.pow(k)).unwrap().total;
            worst[2] = worst[2].max((hk - k as f64 * totals[i]).abs());
        }

        let f = primitivize(&char_poly(m)).unwrap().primitive.strip_x_power().1;
        if f.degree().unwrap_or(0) > 0 {
            let a = mahler_measure(&f, DEFAULT_TOLERANCE).unwrap().value;
            let b = mahler_measure(&f.reciprocal().unwrap(), DEFAULT_TOLERANCE).unwrap().value;
            worst[3] = worst[3].max((a - b).abs());
        }
    }
    let pass = worst[0] <= 2e-12 && worst[1] <= 1e-10 && conj_fail == 0 && worst[2] <= 1e-9 && worst[3] <= 1e-10;
    outcome(
        pass,
        format!(
            "100 matrices ({invertible} invertible): additivity {:.1e}, inverse {:.1e}, conjugation failures {conj_fail}, power {:.1e}, reciprocal {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn kronecker() -> Outcome {
    let mut rng = corpus::rng(8);
    let mut failures = Vec::new();
    let mut check = |p: IntPolynomial, expect_zero: bool| {
        let m = corpus::matrix_of(&p);
        let exact = is_zero_entropy(&m);
        let report = algebraic_entropy(&m).unwrap();
        let measured_zero = report.certified && report.total == 0.0;
        if exact != expect_zero || measured_zero != expect_zero {
            failures.push(format!("{p}: exact {exact}, measured {}", report.total));
        }
    };
    for _ in 0..50 {
        check(corpus::random_cyclotomic_product(&mut rng, 12), true);
    }
    for _ in 0..50 {
        check(corpus::random_non_cyclotomic(&mut rng, 14), false);
    }
    outcome(
        failures.is_empty(),
        format!("50 cyclotomic + 50 non-examples, {} failures {}", failures.len(), failures.join(" | ")),
    )
}

fn bernoulli() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [2u64, 3, 5] {
        let g = bernoulli_counts(q, 8).unwrap();
        let expected: Vec<u64> = (1..=8u32).map(|n| q.pow(n)).collect();
        let exact = g.counts == expected && g.h_inc.iter().all(|&h| h == (q as f64).ln());
        pass &= exact;
        notes.push(format!("q={q} tau(8)={} estimate {}", g.counts[7], g.h_inc[7]));
    }
    outcome(pass, notes.join(", "))
}

fn determinism() -> Outcome {
    let cases: Vec<(&str, RationalMatrix, u64, usize, usize)> = vec![
        ("3/2", three_halves(), 1, 12, DEFAULT_BUDGET),
        ("fibonacci", fibonacci(), 1, 60, 2_000_000),
        ("six", six(), admissible_m(&six()).unwrap(), 60, 2_000_000),
        ("rotation", rotation(), 1, 50, DEFAULT_BUDGET),
        ("doubling", doubling(), 1, 12, DEFAULT_BUDGET),
    ];
    let fingerprint = |r: &TrajectoryRun| format!("{:?}/{:?}", r.counts(), r.budget_exhausted_at);
    let mut mismatches = Vec::new();
    for (name, m, scale, n_max, budget) in &cases {
        let prints: Vec<String> = [1usize, 2, 8]
            .iter()
            .map(|&parts| fingerprint(&trajectory_counts(m, *scale, *n_max, *budget, parts).unwrap()))
            .collect();
        if prints.iter().any(|p| p != &prints[0]) {
            mismatches.push(name.to_string());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{} runs x partitions 1/2/8, mismatches: {:?}", cases.len(), mismatches),
    )
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Outcome); 10] = [
        ("exact place identity", place_identity),
        ("Lehmer measure", lehmer),
        ("trajectory agreement [[3/2]]", oracle_three_halves),
        ("trajectory agreement Fibonacci", oracle_fibonacci),
        ("non-archimedean entropy", non_archimedean),
        ("growth dichotomy", dichotomy),
        ("invariance suite", invariance),
        ("Kronecker equivalence", kronecker),
        ("Bernoulli shift", bernoulli),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let result = f();
        if !result.pass {
            failed += 1;
        }
        println!(
            "[{:>2}] {} {name}: {}",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail.trim_end()
        );
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
