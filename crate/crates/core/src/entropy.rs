//! Algebraic entropy of `φ: Q^N -> Q^N` from its characteristic polynomial over Z.
//!
//! With `p_φ = s*f` the primitive integer form of the monic characteristic polynomial,
//! `h(φ) = m(p_φ) = log s + sum_{|λ|>1} log|λ|`. The `log s` term splits exactly over
//! the primes dividing `s`, each read off a Newton polygon; only the archimedean
//! part involves floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exact_arith::{primitivize, IntPolynomial, Place, RationalPolynomial};
use crate::mahler::{self, ComplexRootSet, DEFAULT_TOLERANCE};
use crate::padic::{newton_polygon, place_contribution, relevant_primes, Slope};
use crate::rational_linalg::{char_poly, RationalMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FinitePlace {
    pub prime: u64,
    pub vp_s: i64,
    /// Positive-slope total of the Newton polygon (equals `vp_s`).
    pub exact: Slope,
    pub contribution: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub total: f64,
    pub log_s: f64,
    pub archimedean: f64,
    pub finite_places: Vec<FinitePlace>,
    pub char_poly_monic: RationalPolynomial,
    pub char_poly_primitive: IntPolynomial,
    pub s: BigInt,
    pub roots: ComplexRootSet,
    /// Exact decision: `s = 1` and the primitive polynomial is a cyclotomic product.
    pub zero_entropy_exact: bool,
    pub certified: bool,
}

impl EntropyReport {
    pub fn finite_total(&self) -> f64 {
        self.finite_places.iter().map(|p| p.contribution).sum()
    }

    /// `(place, contribution)` for each prime dividing `s`, then the archimedean place.
    pub fn places(&self) -> Vec<(Place, f64)> {
        self.finite_places
            .iter()
            .map(|p| (Place::Finite(p.prime), p.contribution))
            .chain(std::iter::once((Place::Infinity, self.archimedean)))
            .collect()
    }

    /// Checks the internal consistency invariants of a report.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let finite = self.finite_total();
        if (self.total - (self.archimedean + finite)).abs() > 1e-12 {
            return Err(format!(
                "total {} != archimedean {} + finite {}",
                self.total, self.archimedean, finite
            ));
        }
        if (self.log_s - finite).abs() > 1e-12 * self.log_s.max(1.0) {
            return Err(format!("log s {} != finite places {}", self.log_s, finite));
        }
        if self.zero_entropy_exact && !(self.s.is_one() && mahler::is_cyclotomic_product(&self.char_poly_primitive)) {
            return Err("zero entropy flagged without s = 1 and a cyclotomic product".into());
        }
        if self.total < 0.0 {
            return Err(format!("negative entropy {}", self.total));
        }
        Ok(())
    }
}

/// Entropy from an already primitive integer characteristic polynomial.
pub fn entropy_of_primitive(p: &IntPolynomial, tolerance: f64) -> Result<EntropyReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_primitive() {
        return Err(Error::NotPrimitive(p.content().to_string()));
    }
    let p = if p.leading().is_some_and(Signed::is_negative) {
        p.neg()
    } else {
        p.clone()
    };
    let s = p.leading().expect("nonzero").clone();
    let monic = {
        let lead = num_rational::BigRational::from_integer(s.clone());
        RationalPolynomial::new(p.to_rational().coeffs().iter().map(|c| c / &lead).collect())
    };
    build_report(monic, s, p, tolerance)
}

fn build_report(
    monic: RationalPolynomial,
    s: BigInt,
    primitive: IntPolynomial,
    tolerance: f64,
) -> Result<EntropyReport> {
    let mut finite_places = Vec::new();
    if primitive.degree().unwrap_or(0) > 0 {
        for prime in relevant_primes(&primitive)? {
            let c = place_contribution(&newton_polygon(&primitive, prime)?);
            finite_places.push(FinitePlace {
                prime,
                vp_s: crate::exact_arith::vp_int(&s, prime).finite().unwrap_or(0),
                exact: c.exact,
                contribution: c.value,
            });
        }
    }
    let log_s = mahler::log_abs(&s);
    let zero_entropy_exact = s.is_one() && mahler::is_cyclotomic_product(&primitive);

    let (roots, archimedean, certified, failure) = if primitive.degree().unwrap_or(0) == 0 {
        (
            ComplexRootSet {
                roots: Vec::new(),
                working_precision: 0,
            },
            0.0,
            true,
            None,
        )
    } else {
        match mahler::mahler_measure(&primitive, tolerance) {
            Ok(m) => {
                debug_assert!((m.value - (m.archimedean + log_s)).abs() < 1e-9);
                (m.roots, m.archimedean, m.certified, None)
            }
            Err(Error::RootCertification { bits, partial }) => {
                let arch = partial.log_outside().max(0.0);
                (*partial, arch, false, Some(bits))
            }
            Err(e) => return Err(e),
        }
    };

    let finite: f64 = finite_places.iter().map(|p| p.contribution).sum();
    let report = EntropyReport {
        total: archimedean + finite,
        log_s,
        archimedean,
        finite_places,
        char_poly_monic: monic,
        char_poly_primitive: primitive,
        s,
        roots,
        zero_entropy_exact,
        certified,
    };
    match failure {
        None => Ok(report),
        Some(bits) => Err(Error::EntropyCertification {
            reason: format!("root disks not separated at {bits} bits"),
            partial: Box::new(report),
        }),
    }
}

pub fn algebraic_entropy_with(m: &RationalMatrix, tolerance: f64) -> Result<EntropyReport> {
    let pair = primitivize(&char_poly(m))?;
    build_report(pair.monic, pair.s, pair.primitive, tolerance)
}

/// Full entropy report of `M` at the default tolerance of 1e-12.
pub fn algebraic_entropy(m: &RationalMatrix) -> Result<EntropyReport> {
    algebraic_entropy_with(m, DEFAULT_TOLERANCE)
}

/// Entropy of an integer matrix as the sum of `log|λ|` over eigenvalues outside the unit disc.
pub fn ks_entropy(m: &RationalMatrix) -> Result<f64> {
    if let Some(bad) = m.entries().iter().find(|x| !x.is_integer()) {
        return Err(Error::NonIntegerEntry(bad.to_string()));
    }
    let report = algebraic_entropy(m)?;
    debug_assert!(report.s.is_one());
    Ok(report.archimedean)
}

/// One entry per prime dividing `s`, then `(∞, archimedean)`; all other places contribute 0.
pub fn place_decomposition(m: &RationalMatrix) -> Result<Vec<(Place, f64)>> {
    Ok(algebraic_entropy(m)?.places())
}

/// Exact zero-entropy test with no floating point.
pub fn is_zero_entropy(m: &RationalMatrix) -> bool {
    let pair = primitivize(&char_poly(m)).expect("characteristic polynomials are monic");
    pair.s.is_one() && mahler::is_cyclotomic_product(&pair.primitive)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN_LOG: f64 = 0.48121182505960344;

    fn frac(rows: &[&[(i64, i64)]]) -> RationalMatrix {
        RationalMatrix::from_fractions(rows).unwrap()
    }

    fn int(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn three_halves() {
        let r = algebraic_entropy(&frac(&[&[(3, 2)]])).unwrap();
        assert!((r.total - 3f64.ln()).abs() < 1e-12);
        assert!((r.archimedean - 1.5f64.ln()).abs() < 1e-12);
        assert_eq!(r.finite_places.len(), 1);
        assert_eq!((r.finite_places[0].prime, r.finite_places[0].vp_s), (2, 1));
        assert!((r.finite_places[0].contribution - 2f64.ln()).abs() < 1e-15);
        assert!(r.check_consistency().is_ok());
        assert!(!r.zero_entropy_exact);
    }

    #[test]
    fn identity_has_zero_entropy() {
        let r = algebraic_entropy(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(r.total, 0.0);
        assert!(r.zero_entropy_exact);
        assert!(r.certified);
    }

    #[test]
    fn golden_mean_shift() {
        let r = algebraic_entropy(&int(&[&[0, 1], &[1, 1]])).unwrap();
        assert!((r.total - GOLDEN_LOG).abs() < 1e-12);
        assert!(r.finite_places.is_empty());
    }

    #[test]
    fn purely_non_archimedean() {
        let m = frac(&[&[(0, 1), (-1, 6)], &[(1, 1), (5, 6)]]);
        let r = algebraic_entropy(&m).unwrap();
        assert!((r.total - 6f64.ln()).abs() < 1e-12);
        assert_eq!(r.archimedean, 0.0);
        let places = place_decomposition(&m).unwrap();
        assert_eq!(places.len(), 3);
        assert_eq!(places[0].0, Place::Finite(2));
        assert!((places[0].1 - 2f64.ln()).abs() < 1e-15);
        assert_eq!(places[1].0, Place::Finite(3));
        assert!((places[1].1 - 3f64.ln()).abs() < 1e-15);
        assert_eq!(places[2], (Place::Infinity, 0.0));
        assert!(!is_zero_entropy(&m));
    }

    #[test]
    fn kolmogorov_sinai_examples() {
        assert!((ks_entropy(&int(&[&[2]])).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert_eq!(ks_entropy(&int(&[&[0, -1], &[1, 0]])).unwrap(), 0.0);
        let cat = ks_entropy(&int(&[&[2, 1], &[1, 1]])).unwrap();
        assert!((cat - 0.9624236501192069).abs() < 1e-12);
        assert!(matches!(ks_entropy(&frac(&[&[(1, 2)]])), Err(Error::NonIntegerEntry(_))));
        assert_eq!(place_decomposition(&int(&[&[2]])).unwrap(), vec![(Place::Infinity, 2f64.ln())]);
    }

    #[test]
    fn zero_entropy_decisions() {
        assert!(is_zero_entropy(&int(&[&[0, -1], &[1, 0]])));
        assert!(!is_zero_entropy(&int(&[&[2]])));
        assert!(is_zero_entropy(&int(&[&[1, 1], &[0, 1]])));
        assert!(is_zero_entropy(&int(&[&[0, 0], &[0, 0]])));
    }

    #[test]
    fn empty_matrix_has_zero_entropy() {
        let r = algebraic_entropy(&RationalMatrix::zeros(0)).unwrap();
        assert_eq!(r.total, 0.0);
        assert!(r.zero_entropy_exact);
        assert!(r.check_consistency().is_ok());
    }

    #[test]
    fn singular_matrix_ignores_zero_eigenvalue() {
        // Eigenvalues 0 and 5/2.
        let r = algebraic_entropy(&frac(&[&[(5, 2), (0, 1)], &[(7, 3), (0, 1)]])).unwrap();
        assert!((r.total - 5f64.ln()).abs() < 1e-12);
        assert!(r.check_consistency().is_ok());
    }

    #[test]
    fn polynomial_entry_point() {
        let r = entropy_of_primitive(&IntPolynomial::from_i64(&[1, -5, 6]), DEFAULT_TOLERANCE).unwrap();
        assert!((r.total - 6f64.ln()).abs() < 1e-12);
        let neg = entropy_of_primitive(&IntPolynomial::from_i64(&[-1, 5, -6]), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(neg.total, r.total);
        assert!(matches!(
            entropy_of_primitive(&IntPolynomial::from_i64(&[2, 4]), DEFAULT_TOLERANCE),
            Err(Error::NotPrimitive(_))
        ));
    }
}
