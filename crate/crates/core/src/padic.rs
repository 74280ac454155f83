//! Newton polygons of primitive integer polynomials and the per-prime entropy.
//!
//! Slope convention: a segment of slope `σ` and length `ℓ` accounts for exactly `ℓ`
//! roots `λ` (in an extension of Q_p, with multiplicity) with `vp(λ) = -σ`, that is
//! `|λ|_p = p^σ`. Positive slopes are the roots outside the p-adic unit disc, and
//! for a primitive polynomial they add up to `vp(s)` where `s` is the leading
//! coefficient. Everything here is exact; no floating point enters until the final
//! multiplication by `log p`.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{prime_factors, require_prime, vp_int, IntPolynomial, Valuation};
use crate::{Error, Result};

pub type Slope = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Slope,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(i, vp(b_i))` for every nonzero coefficient `b_i`.
    pub points: Vec<(usize, i64)>,
    /// Left to right, slopes strictly increasing.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Vertices of the lower hull, left to right.
    pub fn vertices(&self) -> Vec<(usize, Slope)> {
        let Some(&(x0, y0)) = self.points.first() else {
            return Vec::new();
        };
        let mut out = vec![(x0, Slope::from_integer(y0))];
        let (mut x, mut y) = (x0, Slope::from_integer(y0));
        for s in &self.segments {
            x += s.length;
            y += s.slope * Slope::from_integer(s.length as i64);
            out.push((x, y));
        }
        out
    }

    /// Root valuations `vp(λ)` as a multiset, one entry per root (roots at 0 excluded).
    pub fn root_valuations(&self) -> Vec<Slope> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(-s.slope, s.length))
            .collect()
    }
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Lower convex hull of `(i, vp(b_i))` by a monotone-chain scan.
pub fn newton_polygon(p: &IntPolynomial, prime: u64) -> Result<NewtonPolygon> {
    require_prime(prime)?;
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooSmall(1)),
        Some(_) => {}
    }
    if !p.is_primitive() {
        return Err(Error::NotPrimitive(p.content().to_string()));
    }
    let points: Vec<(usize, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match vp_int(c, prime) {
            Valuation::Finite(v) => Some((i, v)),
            Valuation::Infinite => None,
        })
        .collect();

    let mut hull: Vec<(usize, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        // Pop while the last turn is clockwise or straight; collinear points are not vertices.
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let length = w[1].0 - w[0].0;
            Segment {
                slope: Slope::new(w[1].1 - w[0].1, length as i64),
                length,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        prime,
        points,
        segments,
    })
}

/// Per-prime entropy `h(φ_p) = (sum of ℓσ over segments with σ > 0) * log p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceContribution {
    pub prime: u64,
    pub exact: Slope,
    pub value: f64,
}

pub fn place_contribution(np: &NewtonPolygon) -> PlaceContribution {
    let exact = np
        .segments
        .iter()
        .filter(|s| s.slope.is_positive())
        .map(|s| s.slope * Slope::from_integer(s.length as i64))
        .fold(Slope::zero(), |a, b| a + b);
    let value = *exact.numer() as f64 / *exact.denom() as f64 * (np.prime as f64).ln();
    PlaceContribution {
        prime: np.prime,
        exact,
        value,
    }
}

/// Prime divisors of the leading coefficient, ascending.
pub fn relevant_primes(p: &IntPolynomial) -> Result<Vec<u64>> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    if !p.is_primitive() {
        return Err(Error::NotPrimitive(p.content().to_string()));
    }
    Ok(prime_factors(lead)?.into_iter().map(|(q, _)| q).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaceCheck {
    pub prime: u64,
    /// Positive-slope total of the polygon at `prime`.
    pub polygon_total: Slope,
    pub vp_s: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaceIdentityReport {
    pub s: BigInt,
    pub checks: Vec<PlaceCheck>,
    /// `prod p^vp(s)` over the checked primes reproduces `|s|` exactly.
    pub product_matches: bool,
    pub log_s: f64,
    pub log_s_from_places: f64,
}

impl PlaceIdentityReport {
    pub fn passed(&self) -> bool {
        self.product_matches
            && self.checks.iter().all(|c| c.pass)
            && (self.log_s - self.log_s_from_places).abs() <= 1e-12 * self.log_s.max(1.0)
    }
}

/// Checks, prime by prime, that the polygon's positive-slope total equals `vp(s)`,
/// and that these valuations rebuild `log s`.
pub fn verify_place_identity(p: &IntPolynomial) -> Result<PlaceIdentityReport> {
    let s = p.leading().ok_or(Error::ZeroPolynomial)?.abs();
    let mut checks = Vec::new();
    let mut rebuilt = BigInt::one();
    let mut log_s_from_places = 0.0;
    for prime in relevant_primes(p)? {
        let polygon = newton_polygon(p, prime)?;
        let contribution = place_contribution(&polygon);
        let vp_s = vp_int(&s, prime).finite().expect("s is nonzero");
        rebuilt *= num_traits::pow(BigInt::from(prime), vp_s as usize);
        log_s_from_places += vp_s as f64 * (prime as f64).ln();
        checks.push(PlaceCheck {
            prime,
            polygon_total: contribution.exact,
            vp_s,
            pass: contribution.exact == Slope::from_integer(vp_s),
        });
    }
    Ok(PlaceIdentityReport {
        product_matches: rebuilt == s,
        log_s: crate::mahler::log_abs(&s),
        log_s_from_places,
        s,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn seg(num: i64, den: i64, length: usize) -> Segment {
        Segment {
            slope: Slope::new(num, den),
            length,
        }
    }

    #[test]
    fn polygon_examples() {
        let np = newton_polygon(&ip(&[-3, 2]), 2).unwrap();
        assert_eq!(np.points, vec![(0, 0), (1, 1)]);
        assert_eq!(np.segments, vec![seg(1, 1, 1)]);

        let np = newton_polygon(&ip(&[1, -5, 6]), 2).unwrap();
        assert_eq!(np.points, vec![(0, 0), (1, 0), (2, 1)]);
        assert_eq!(np.segments, vec![seg(0, 1, 1), seg(1, 1, 1)]);
        // Roots 1/3 (v2 = 0) and 1/2 (v2 = -1).
        assert_eq!(np.root_valuations(), vec![Slope::from_integer(0), Slope::from_integer(-1)]);

        let np = newton_polygon(&ip(&[1, 0, 1]), 2).unwrap();
        assert_eq!(np.points, vec![(0, 0), (2, 0)]);
        assert_eq!(np.segments, vec![seg(0, 1, 2)]);
    }

    #[test]
    fn collinear_points_merge_and_fractional_slopes() {
        // 8X^3 + 4X^2 + 2X + 1 at p = 2: all four points on one line of slope 1.
        let np = newton_polygon(&ip(&[1, 2, 4, 8]), 2).unwrap();
        assert_eq!(np.segments, vec![seg(1, 1, 3)]);
        // 4X^2 + 1 at p = 2: a single segment of slope 1 with no middle point.
        let np = newton_polygon(&ip(&[1, 0, 4]), 2).unwrap();
        assert_eq!(np.segments, vec![seg(1, 1, 2)]);
        // 2X^2 + 1 at p = 2: slope 1/2, two roots of valuation -1/2 (ramified).
        let np = newton_polygon(&ip(&[1, 0, 2]), 2).unwrap();
        assert_eq!(np.segments, vec![seg(1, 2, 2)]);
        assert_eq!(place_contribution(&np).exact, Slope::from_integer(1));
    }

    #[test]
    fn polygon_skips_root_at_zero() {
        // X * (3X - 1) at p = 3 starts at index 1.
        let np = newton_polygon(&ip(&[0, -1, 3]), 3).unwrap();
        assert_eq!(np.points, vec![(1, 0), (2, 1)]);
        assert_eq!(np.segments, vec![seg(1, 1, 1)]);
        assert_eq!(np.vertices(), vec![(1, Slope::from_integer(0)), (2, Slope::from_integer(1))]);
    }

    #[test]
    fn polygon_errors() {
        assert!(matches!(newton_polygon(&ip(&[2, 4]), 2), Err(Error::NotPrimitive(_))));
        assert!(matches!(newton_polygon(&ip(&[1, 1]), 9), Err(Error::NotPrime(9))));
        assert!(matches!(newton_polygon(&ip(&[1]), 2), Err(Error::DegreeTooSmall(1))));
    }

    #[test]
    fn contribution_examples() {
        let c = place_contribution(&newton_polygon(&ip(&[-3, 2]), 2).unwrap());
        assert_eq!(c.exact, Slope::from_integer(1));
        assert!((c.value - 2f64.ln()).abs() < 1e-15);
        let c = place_contribution(&newton_polygon(&ip(&[1, 0, 1]), 2).unwrap());
        assert_eq!(c.exact, Slope::zero());
        assert_eq!(c.value, 0.0);
        let np = newton_polygon(&ip(&[1, -5, 6]), 3).unwrap();
        assert_eq!(np.points, vec![(0, 0), (1, 0), (2, 1)]);
        let c = place_contribution(&np);
        assert_eq!(c.exact, Slope::from_integer(1));
        assert!((c.value - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn relevant_prime_examples() {
        assert_eq!(relevant_primes(&ip(&[1, -5, 6])).unwrap(), vec![2, 3]);
        assert_eq!(relevant_primes(&ip(&[-2, 0, 1])).unwrap(), Vec::<u64>::new());
        assert_eq!(relevant_primes(&ip(&[-1, 10])).unwrap(), vec![2, 5]);
    }

    #[test]
    fn place_identity_examples() {
        let r = verify_place_identity(&ip(&[1, -5, 6])).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 2);
        assert_eq!((r.checks[0].prime, r.checks[0].vp_s), (2, 1));
        assert_eq!((r.checks[1].prime, r.checks[1].vp_s), (3, 1));

        let r = verify_place_identity(&ip(&[-1, -1, 1])).unwrap();
        assert!(r.passed());
        assert!(r.checks.is_empty());
        assert_eq!(r.log_s, 0.0);

        // Both complex roots have modulus exactly 1, yet p = 5 carries log 5.
        let r = verify_place_identity(&ip(&[5, -6, 5])).unwrap();
        let np = newton_polygon(&ip(&[5, -6, 5]), 5).unwrap();
        assert_eq!(np.points, vec![(0, 1), (1, 0), (2, 1)]);
        assert!(r.passed());
        assert_eq!(r.checks[0].polygon_total, Slope::from_integer(1));
    }
}
