//! Seeded property suites runnable from the command line.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use yuzvinski::corpus;
use yuzvinski::entropy::{algebraic_entropy, is_zero_entropy};
use yuzvinski::exact_arith::IntPolynomial;
use yuzvinski::mahler::{mahler_measure, DEFAULT_TOLERANCE};
use yuzvinski::padic::verify_place_identity;
use yuzvinski::rational_linalg::block_diag;
use yuzvinski::trajectory::{admissible_m, classify_growth, trajectory_counts};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PlaceIdentity,
    Multiplicativity,
    Reciprocal,
    BlockAdditivity,
    OracleAgreement,
    Kronecker,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::PlaceIdentity,
        Suite::Multiplicativity,
        Suite::Reciprocal,
        Suite::BlockAdditivity,
        Suite::OracleAgreement,
        Suite::Kronecker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PlaceIdentity => "place-identity",
            Suite::Multiplicativity => "multiplicativity",
            Suite::Reciprocal => "reciprocal",
            Suite::BlockAdditivity => "block-additivity",
            Suite::OracleAgreement => "oracle-agreement",
            Suite::Kronecker => "kronecker",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown suite '{s}'")))
    }
}

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Check {
    Check { pass, detail }
}

fn measure(p: &IntPolynomial) -> yuzvinski::Result<f64> {
    Ok(mahler_measure(p, DEFAULT_TOLERANCE)?.value)
}

/// Small polynomial with nonzero constant term, for the measure identities.
fn small_poly(rng: &mut corpus::CorpusRng) -> IntPolynomial {
    loop {
        let p = corpus::random_primitive_poly(rng, 5, 50);
        if !p.coeff(0).eq(&0.into()) {
            return p;
        }
    }
}

fn one_check(suite: Suite, i: usize, count: usize, rng: &mut corpus::CorpusRng) -> yuzvinski::Result<Check> {
    Ok(match suite {
        Suite::PlaceIdentity => {
            let p = corpus::random_primitive_poly(rng, 8, 1000);
            let r = verify_place_identity(&p)?;
            check(r.passed(), format!("{p}: s = {}, {} primes", r.s, r.checks.len()))
        }
        Suite::Multiplicativity => {
            let (f, g) = (small_poly(rng), small_poly(rng));
            let gap = (measure(&(&f * &g))? - measure(&f)? - measure(&g)?).abs();
            check(gap <= 1e-10, format!("({f}) * ({g}): gap {gap:.2e}"))
        }
        Suite::Reciprocal => {
            let f = small_poly(rng);
            let gap = (measure(&f)? - measure(&f.reciprocal()?)?).abs();
            check(gap <= 1e-10, format!("{f}: gap {gap:.2e}"))
        }
        Suite::BlockAdditivity => {
            let a = corpus::random_rational_matrix(rng, 4, 20, 20);
            let b = corpus::random_rational_matrix(rng, 4, 20, 20);
            let sum = algebraic_entropy(&block_diag(&a, &b))?.total;
            let gap = (sum - algebraic_entropy(&a)?.total - algebraic_entropy(&b)?.total).abs();
            check(gap <= 2e-12, format!("dims {}+{}: gap {gap:.2e}", a.dim(), b.dim()))
        }
        Suite::OracleAgreement => {
            // For admissible m, log tau(n) / n decreases to the entropy, so every
            // cumulative estimate is an upper bound for the formula value.
            let m = corpus::random_small_matrix(rng);
            let h = algebraic_entropy(&m)?.total;
            let scale = admissible_m(&m)?;
            let run = trajectory_counts(&m, scale, 16, 300_000, 1)?;
            let floor = run.growth.h_cum.iter().cloned().fold(f64::INFINITY, f64::min);
            let discrepancy = classify_growth(&run, Some(h)).map(|v| v.discrepancy).unwrap_or(false);
            check(
                floor >= h - 1e-9 && !discrepancy,
                format!("{m} m={scale}: min H_cum {floor:.4} vs formula {h:.4}, {} levels", run.levels()),
            )
        }
        Suite::Kronecker => {
            let (p, expected) = if i < count.div_ceil(2) {
                (corpus::random_cyclotomic_product(rng, 12), true)
            } else {
                (corpus::random_non_cyclotomic(rng, 14), false)
            };
            let m = corpus::matrix_of(&p);
            let exact = is_zero_entropy(&m);
            let r = algebraic_entropy(&m)?;
            let measured = r.certified && r.total == 0.0;
            check(
                exact == expected && measured == expected,
                format!("{p}: exact {exact}, measured {measured}, expected {expected}"),
            )
        }
    })
}

/// Runs `count` seeded checks; fails with exit code 4 if any check fails.
pub fn run_verify(suite: Suite, seed: u64, count: usize) -> CliResult<Value> {
    let mut rng = corpus::rng(seed);
    let mut checks = Vec::with_capacity(count);
    let mut failed = 0usize;
    for i in 0..count {
        let c = one_check(suite, i, count, &mut rng).unwrap_or_else(|e| check(false, format!("error: {e}")));
        if !c.pass {
            failed += 1;
        }
        checks.push(json!({ "index": i, "pass": c.pass, "detail": c.detail }));
    }
    let report = json!({
        "suite": suite.name(),
        "seed": seed.to_string(),
        "count": count,
        "passed": count - failed,
        "failed": failed,
        "checks": checks,
    });
    if failed > 0 {
        Err(CliError::Verification {
            message: format!("{failed} of {count} checks failed in {suite}"),
            report,
        })
    } else {
        Ok(report)
    }
}
