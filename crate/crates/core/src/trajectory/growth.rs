use std::fmt;

use rustc_hash::FxHashSet;

use crate::{Error, Result};

/// Growth below this many nats per level is not called exponential.
pub const EPS_EXP: f64 = 0.02;
/// Trailing levels inspected by the classifier.
pub const WINDOW: usize = 5;
/// Minimum number of computed levels the classifier accepts.
pub const MIN_LEVELS: usize = WINDOW + 1;

/// Counts `tau(1..=n)` with cumulative and incremental log-growth estimates.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSequence {
    pub counts: Vec<u64>,
    /// `log tau(n) / n`
    pub h_cum: Vec<f64>,
    /// `log(tau(n) / tau(n-1))` with `tau(0) = 1`
    pub h_inc: Vec<f64>,
}

impl GrowthSequence {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let h_cum = counts
            .iter()
            .enumerate()
            .map(|(i, &t)| (t as f64).ln() / (i + 1) as f64)
            .collect();
        let h_inc = counts
            .iter()
            .scan(1u64, |prev, &t| {
                let r = (t as f64 / *prev as f64).ln();
                *prev = t;
                Some(r)
            })
            .collect();
        GrowthSequence { counts, h_cum, h_inc }
    }

    pub fn levels(&self) -> usize {
        self.counts.len()
    }

    pub fn last_h_inc(&self) -> Option<f64> {
        self.h_inc.last().copied()
    }

    /// Nesting, subadditivity of `log tau` and the Fekete lower bound, checked exactly where possible.
    pub fn check_invariants(&self) -> Result<()> {
        let c = &self.counts;
        if let Some(i) = (1..c.len()).find(|&i| c[i] < c[i - 1]) {
            return Err(Error::InvariantViolation(format!(
                "tau({}) = {} < tau({}) = {}",
                i + 1,
                c[i],
                i,
                c[i - 1]
            )));
        }
        for a in 1..=c.len() {
            for b in a..=c.len() - a {
                if c[a + b - 1] as u128 > c[a - 1] as u128 * c[b - 1] as u128 {
                    return Err(Error::InvariantViolation(format!(
                        "tau({}) > tau({a}) * tau({b})",
                        a + b
                    )));
                }
            }
        }
        if let Some(&last) = self.h_cum.last() {
            let w = WINDOW.min(self.h_inc.len());
            let avg = self.h_inc[self.h_inc.len() - w..].iter().sum::<f64>() / w as f64;
            if last < avg - 1e-9 {
                return Err(Error::InvariantViolation(format!(
                    "cumulative estimate {last} below trailing incremental average {avg}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    Polynomial,
    Exponential,
    Inconclusive,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Polynomial => "Polynomial",
            GrowthClass::Exponential => "Exponential",
            GrowthClass::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthVerdict {
    pub class: GrowthClass,
    /// `H_inc(n) / log(n / (n-1))` over the window: the exponent of a local power-law fit.
    pub local_degree: Vec<f64>,
    pub formula: Option<f64>,
    /// The class contradicts the supplied formula value.
    pub discrepancy: bool,
}

/// Separates polynomial from exponential growth over the trailing window.
///
/// Polynomial growth of degree `k` has `H_inc(n) ~ k log(n/(n-1))`, so the local
/// degree estimate stays bounded; exponential growth makes it grow linearly in `n`.
/// `degree_cap` bounds the polynomial degree (the callers use `2N`).
pub fn classify(growth: &GrowthSequence, degree_cap: usize, formula: Option<f64>) -> Result<GrowthVerdict> {
    let levels = growth.levels();
    if levels < MIN_LEVELS {
        return Err(Error::TooFewLevels {
            needed: MIN_LEVELS,
            got: levels,
        });
    }
    let window: Vec<(usize, f64)> = (levels - WINDOW + 1..=levels)
        .map(|n| (n, growth.h_inc[n - 1]))
        .collect();
    let local_degree: Vec<f64> = window
        .iter()
        .map(|&(n, h)| h / (n as f64 / (n - 1) as f64).ln())
        .collect();
    let cap = degree_cap as f64;
    let exponential = window.iter().all(|&(_, h)| h >= EPS_EXP) && local_degree.iter().all(|&k| k > cap);
    let polynomial =
        local_degree.iter().all(|&k| k <= cap) && window.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    let class = if exponential {
        GrowthClass::Exponential
    } else if polynomial {
        GrowthClass::Polynomial
    } else {
        GrowthClass::Inconclusive
    };
    let discrepancy = match (class, formula) {
        (GrowthClass::Polynomial, Some(h)) => h > 1e-9,
        (GrowthClass::Exponential, Some(h)) => h <= 1e-9,
        _ => false,
    };
    Ok(GrowthVerdict {
        class,
        local_degree,
        formula,
        discrepancy,
    })
}

/// Trajectory counts of the right shift on `(Z/q)^n_max` at the first-coordinate copy of `Z/q`.
pub fn bernoulli_counts(q: u64, n_max: usize) -> Result<GrowthSequence> {
    if !(2..=256).contains(&q) {
        return Err(Error::InvalidInput(format!("group order {q} outside 2..=256")));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut set: FxHashSet<Vec<u8>> = FxHashSet::default();
    set.insert(vec![0u8; n_max]);
    let mut counts = Vec::with_capacity(n_max);
    for k in 0..n_max {
        // Add beta^k F: the copy of Z/q sitting in coordinate k.
        let mut next = FxHashSet::default();
        for x in &set {
            for a in 0..q {
                let mut y = x.clone();
                y[k] = ((y[k] as u64 + a) % q) as u8;
                next.insert(y);
            }
        }
        set = next;
        counts.push(set.len() as u64);
    }
    Ok(GrowthSequence::from_counts(counts))
}
