//! Brute-force trajectory oracle.
//!
//! `T_n(phi, E_m) = E_m + phi(E_m) + ... + phi^(n-1)(E_m)` is enumerated exactly and
//! its growth rate estimated. For admissible `m` the limit of `log |T_n| / n` is the
//! algebraic entropy, which makes these runs an independent check of the formula side.

mod engine;
mod growth;

pub use growth::{bernoulli_counts, classify, GrowthClass, GrowthSequence, GrowthVerdict, EPS_EXP, MIN_LEVELS, WINDOW};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact_arith::{abs_p, prime_factors, Place};
use crate::rational_linalg::{operator_norm, RationalMatrix};
use crate::{Error, Result};

/// Default cap on stored points per level.
pub const DEFAULT_BUDGET: usize = 20_000_000;
/// Largest dimension the enumerator handles.
pub const MAX_DIM: usize = 8;

/// The finite primes allowed in denominators of trajectory points; infinity is always included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSupport {
    pub primes: Vec<u64>,
}

impl PrimeSupport {
    pub fn includes_infinity(&self) -> bool {
        true
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// True iff every coordinate has non-negative valuation at each prime outside the support.
    pub fn admits(&self, x: &BigRational) -> bool {
        match prime_factors(x.denom()) {
            Ok(f) => f.iter().all(|(p, _)| self.contains(*p)),
            Err(_) => false,
        }
    }
}

/// `E_m`: all vectors with coordinates in `{0, +-1/m, ..., +-m/m}`, in lexicographic order.
pub fn generate_em(n: usize, m: u64) -> Result<Vec<Vec<BigRational>>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("E_m needs N >= 1 and m >= 1".into()));
    }
    let m_i = m as i64;
    let coords: Vec<BigRational> = (-m_i..=m_i)
        .map(|c| BigRational::new(c.into(), m_i.into()))
        .collect();
    let mut out: Vec<Vec<BigRational>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                coords.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

pub fn prime_support(m: &RationalMatrix, scale: u64) -> Result<PrimeSupport> {
    if scale == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let lcm = m.denominator_lcm() * BigInt::from(scale);
    let mut primes: Vec<u64> = prime_factors(&lcm)?.into_iter().map(|(p, _)| p).collect();
    primes.sort_unstable();
    Ok(PrimeSupport { primes })
}

/// `c * prod_p p^(e_p)` with `c = max(ceil(||M||_inf) + 1, 3)` and `p^(e_p) = max_ij |a_ij|_p`.
pub fn admissible_m(m: &RationalMatrix) -> Result<u64> {
    let norm = operator_norm(m, Place::Infinity)?;
    let ceil = norm.ceil().to_integer();
    let mut total = (ceil + BigInt::one()).max(BigInt::from(3));
    for p in prime_support(m, 1)?.primes {
        let mut worst = BigRational::one();
        for x in m.entries() {
            let a = abs_p(x, p)?;
            if a > worst {
                worst = a;
            }
        }
        total *= worst.to_integer();
    }
    total
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("admissible m = {total} does not fit in 64 bits")))
}

/// One exact trajectory enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRun {
    pub matrix: RationalMatrix,
    pub m: u64,
    pub growth: GrowthSequence,
    pub budget: usize,
    /// First level whose point count would exceed the budget.
    pub budget_exhausted_at: Option<usize>,
    pub support: PrimeSupport,
    /// Classification without a formula cross-check (`Inconclusive` for short runs).
    pub classification: GrowthClass,
}

impl TrajectoryRun {
    pub fn counts(&self) -> &[u64] {
        &self.growth.counts
    }

    pub fn levels(&self) -> usize {
        self.growth.levels()
    }

    pub fn classify(&self, formula: Option<f64>) -> Result<GrowthVerdict> {
        classify_growth(self, formula)
    }
}

pub fn classify_growth(run: &TrajectoryRun, formula: Option<f64>) -> Result<GrowthVerdict> {
    classify(&run.growth, 2 * run.matrix.dim(), formula)
}

struct Integral {
    a: Vec<Vec<i64>>,
    d: i64,
}

fn integral_form(m: &RationalMatrix) -> Result<Integral> {
    let dim = m.dim();
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidInput(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    let d_big = m.denominator_lcm();
    let d = d_big.to_i64().ok_or(Error::Overflow(0))?;
    let a = m
        .rows()
        .map(|row| {
            row.iter()
                .map(|x| (x * &d_big).to_integer().to_i64().ok_or(Error::Overflow(0)))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(Integral { a, d })
}

fn check_args(m: &RationalMatrix, scale: u64, n_max: usize) -> Result<i64> {
    if scale == 0 || n_max == 0 {
        return Err(Error::InvalidInput("m and n_max must be positive".into()));
    }
    let m_i = i64::try_from(scale).map_err(|_| Error::InvalidInput(format!("m = {scale} too large")))?;
    let side = 2 * u128::from(scale) + 1;
    if side.checked_pow(m.dim() as u32).is_none_or(|s| s > u64::MAX as u128) {
        return Err(Error::InvalidInput("|E_m| does not fit in 64 bits".into()));
    }
    Ok(m_i)
}

fn enumerate(
    matrix: &RationalMatrix,
    scale: u64,
    n_max: usize,
    budget: usize,
    partitions: usize,
    keep_points: bool,
) -> Result<(engine::Outcome, Integral)> {
    let m_i = check_args(matrix, scale, n_max)?;
    let form = integral_form(matrix)?;
    let base = (2 * scale + 1).pow(matrix.dim() as u32);
    if (budget as u64) < base {
        return Err(Error::InvalidInput(format!("budget {budget} below |E_m| = {base}")));
    }
    let job = engine::Job {
        a: &form.a,
        d: form.d,
        m: m_i,
        n_max,
        budget,
        partitions: partitions.max(1),
        keep_points,
    };
    let outcome = engine::run(&job).map_err(|engine::Stop::Overflow(n)| Error::Overflow(n))?;
    Ok((outcome, form))
}

/// Exact counts `tau(n) = |T_n(M, E_m)|` for `n = 1..=n_max`, stopping early when a level exceeds `budget` points.
///
/// Level `n` is stored at the common scale `m * d^(n-1)`, so every point has
/// denominators supported on the primes of `m * d`; the run asserts these lie in
/// [`prime_support`]. Counts do not depend on `partitions`.
pub fn trajectory_counts(
    matrix: &RationalMatrix,
    m: u64,
    n_max: usize,
    budget: usize,
    partitions: usize,
) -> Result<TrajectoryRun> {
    let (outcome, form) = enumerate(matrix, m, n_max, budget, partitions, false)?;
    let support = prime_support(matrix, m)?;
    let scale_primes = prime_factors(&(BigInt::from(form.d) * BigInt::from(m)))?;
    if let Some((p, _)) = scale_primes.iter().find(|(p, _)| !support.contains(*p)) {
        return Err(Error::InvariantViolation(format!(
            "denominator prime {p} outside the prime support"
        )));
    }
    let growth = GrowthSequence::from_counts(outcome.counts);
    growth.check_invariants()?;
    let classification = classify(&growth, 2 * matrix.dim(), None)
        .map(|v| v.class)
        .unwrap_or(GrowthClass::Inconclusive);
    Ok(TrajectoryRun {
        matrix: matrix.clone(),
        m,
        growth,
        budget,
        budget_exhausted_at: outcome.exhausted_at,
        support,
        classification,
    })
}

/// The points of `T_n(M, E_m)` as rational vectors, in no particular order.
pub fn trajectory_points(matrix: &RationalMatrix, m: u64, n: usize) -> Result<Vec<Vec<BigRational>>> {
    let (outcome, form) = enumerate(matrix, m, n, usize::MAX, 1, true)?;
    let got = outcome.counts.len();
    if got < n {
        return Err(Error::TooFewLevels { needed: n, got });
    }
    let scale = BigInt::from(m) * BigInt::from(form.d).pow(n as u32 - 1);
    Ok(outcome
        .last
        .expect("points requested")
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|x| BigRational::new(x.into(), scale.clone()))
                .collect()
        })
        .collect())
}

/// Counts of the minor trajectories `E_m + M^(n-1) E_m` for `n = 1..=n_max`.
pub fn minor_trajectory_counts(matrix: &RationalMatrix, m: u64, n_max: usize) -> Result<Vec<u64>> {
    let m_i = check_args(matrix, m, n_max)?;
    let form = integral_form(matrix)?;
    engine::minor_counts(&form.a, form.d, m_i, n_max).map_err(|engine::Stop::Overflow(n)| Error::Overflow(n))
}

/// True iff `v` lies in `(Z_(P))^N` for the support `P`.
pub fn in_support_lattice(support: &PrimeSupport, v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero() || x.denom().is_one() || support.admits(x))
}
