//! Certified logarithmic Mahler measure of integer polynomials.
//!
//! `m(P) = log|s| + sum over roots |z| > 1 of log|z|`, where `s` is the leading
//! coefficient. Roots are located with an Aberth-Ehrlich iteration in binary fixed
//! point and then enclosed in disks that are certified in exact integer arithmetic;
//! the working precision doubles from 64 bits up to a cap of 4096 bits until every
//! disk is isolated and on a definite side of the unit circle.
//!
//! Unit-circle roots get special care. Every root of modulus 1 of a real polynomial
//! satisfies `conj(z) = 1/z`, so it is a common root of `P` and its reciprocal.
//! [`split_unit_circle`] moves them into a self-reciprocal candidate factor, where
//! modulus exactly 1 can be proven by a symmetry argument (see
//! `enclosure::certify_on_circle`). A root that is neither proven on the circle nor
//! separated from it at the cap is *assumed* to lie on it: it contributes 0 and the
//! result is flagged as uncertified.

mod cyclotomic;
mod enclosure;
mod fixed;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub use cyclotomic::{cyclotomic, is_cyclotomic_product};
pub use enclosure::CirclePosition;

use crate::exact_arith::{poly_gcd_q, IntPolynomial};
use crate::{Error, Result};
use enclosure::Disk;
use fixed::Fixed;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MIN_PRECISION_BITS: u32 = 64;
pub const PRECISION_CAP_BITS: u32 = 4096;

/// One root (with multiplicity) and its certified enclosure.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure {
    pub re: f64,
    pub im: f64,
    /// Modulus of the approximation.
    pub modulus: f64,
    /// Upper bound on the distance from the approximation to the exact root.
    pub radius: f64,
    pub modulus_lower: f64,
    pub modulus_upper: f64,
    pub multiplicity: usize,
    pub position: CirclePosition,
}

impl RootEnclosure {
    pub fn on_circle_assumed(&self) -> bool {
        self.position == CirclePosition::AssumedOnCircle
    }

    fn zero_root(multiplicity: usize) -> Self {
        Self {
            re: 0.0,
            im: 0.0,
            modulus: 0.0,
            radius: 0.0,
            modulus_lower: 0.0,
            modulus_upper: 0.0,
            multiplicity,
            position: CirclePosition::Inside,
        }
    }

    fn from_disk(disk: &Disk, bits: u32, multiplicity: usize, position: CirclePosition) -> Self {
        let z = disk.center.to_complex(bits);
        let (modulus, radius) = enclosure::to_f64_parts(disk, bits);
        Self {
            re: z.re,
            im: z.im,
            modulus,
            radius,
            modulus_lower: (modulus - radius).next_down().next_down().max(0.0),
            modulus_upper: (modulus + radius).next_up().next_up(),
            multiplicity,
            position,
        }
    }
}

/// All roots of a polynomial with certified modulus intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexRootSet {
    pub roots: Vec<RootEnclosure>,
    /// Highest precision used for any factor, in bits.
    pub working_precision: u32,
}

impl ComplexRootSet {
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// False if any root was assumed to lie on the unit circle.
    pub fn certified(&self) -> bool {
        !self.roots.iter().any(RootEnclosure::on_circle_assumed)
    }

    /// `sum over roots outside the unit disc of multiplicity * log|z|`.
    pub fn log_outside(&self) -> f64 {
        self.roots
            .iter()
            .filter(|r| r.position == CirclePosition::Outside)
            .map(|r| r.multiplicity as f64 * r.modulus.ln())
            .sum()
    }

    fn extend(&mut self, other: ComplexRootSet) {
        self.roots.extend(other.roots);
        self.working_precision = self.working_precision.max(other.working_precision);
    }
}

/// Which roots need a tight enclosure before refinement stops.
#[derive(Clone, Copy, Debug)]
enum Accuracy {
    /// Every root: `radius <= rel * max(|z|, 1)`.
    AllRoots(f64),
    /// Only roots outside the unit circle, the ones whose logarithms are summed.
    OutsideRoots(f64),
}

/// Square-free decomposition (Yun): primitive factors `A_i` with `P ~ prod A_i^i`.
fn squarefree_factors(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = p.to_rational();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_integer_part(), i));
        }
        i += 1;
    }
    out
}

/// Isolates the roots of a square-free polynomial with nonzero constant term.
fn isolate_squarefree(
    p: &IntPolynomial,
    multiplicity: usize,
    start_bits: u32,
    cap_bits: u32,
    accuracy: Accuracy,
) -> Result<ComplexRootSet> {
    let coeffs = p.coeffs();
    let n = coeffs.len() - 1;
    let self_reciprocal = p.is_self_reciprocal();
    let seeds = fixed::aberth_f64(coeffs, 500).unwrap_or_else(|| fixed::initial_guesses(coeffs));

    let mut bits = start_bits;
    let mut centers: Vec<Fixed> = seeds.iter().map(|z| Fixed::from_complex(*z, bits)).collect();
    let mut first_pass = true;
    loop {
        let sweeps = if first_pass { 400 } else { 60 };
        first_pass = false;
        fixed::aberth_fixed(coeffs, &mut centers, bits, sweeps);
        let disks = enclosure::inclusion_disks(coeffs, &centers, bits);
        let isolated = enclosure::isolated(&disks);

        let positions: Vec<Option<CirclePosition>> = (0..n)
            .map(|i| {
                if !isolated[i] {
                    return None;
                }
                enclosure::side(&disks[i], bits).or_else(|| {
                    (self_reciprocal && enclosure::certify_on_circle(&disks, i, bits))
                        .then_some(CirclePosition::OnCircle)
                })
            })
            .collect();
        let accurate = |i: usize| match accuracy {
            Accuracy::AllRoots(rel) => enclosure::within_relative(&disks[i], rel, bits),
            Accuracy::OutsideRoots(rel) => {
                positions[i] != Some(CirclePosition::Outside)
                    || enclosure::within_relative(&disks[i], rel, bits)
            }
        };
        let done = positions.iter().all(Option::is_some) && (0..n).all(accurate);
        let at_cap = bits >= cap_bits;

        if done || at_cap {
            let all_isolated = isolated.iter().all(|&b| b);
            let roots = disks
                .iter()
                .zip(&positions)
                .map(|(d, pos)| {
                    let pos = pos.unwrap_or(CirclePosition::AssumedOnCircle);
                    RootEnclosure::from_disk(d, bits, multiplicity, pos)
                })
                .collect();
            let set = ComplexRootSet {
                roots,
                working_precision: bits,
            };
            // An unresolved disk may only be treated as on-circle if it actually meets the circle.
            let bad_assumption = set
                .roots
                .iter()
                .zip(&disks)
                .any(|(r, d)| r.on_circle_assumed() && !meets_unit_circle(d, bits));
            if !all_isolated || bad_assumption {
                return Err(Error::RootCertification {
                    bits,
                    partial: Box::new(set),
                });
            }
            return Ok(set);
        }

        let next = (bits * 2).min(cap_bits);
        centers = centers.iter().map(|z| z.rescale(bits, next)).collect();
        bits = next;
    }
}

fn meets_unit_circle(disk: &Disk, bits: u32) -> bool {
    disk.radius.is_some()
        && !matches!(
            enclosure::side(disk, bits),
            Some(CirclePosition::Inside | CirclePosition::Outside)
        )
}

fn find_roots_with(p: &IntPolynomial, start_bits: u32, accuracy: Accuracy) -> Result<ComplexRootSet> {
    let start = start_bits.max(MIN_PRECISION_BITS);
    let cap = PRECISION_CAP_BITS.max(start);
    let (zeros, rest) = p.strip_x_power();
    let mut set = ComplexRootSet {
        roots: Vec::new(),
        working_precision: start,
    };
    if zeros > 0 {
        set.roots.push(RootEnclosure::zero_root(zeros));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(set);
    }
    for (factor, mult) in squarefree_factors(&rest) {
        match isolate_squarefree(&factor, mult, start, cap, accuracy) {
            Ok(found) => set.extend(found),
            Err(Error::RootCertification { bits, partial }) => {
                set.extend(*partial);
                return Err(Error::RootCertification {
                    bits,
                    partial: Box::new(set),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(set)
}

/// All roots of `p` with multiplicity, each in a certified disk.
///
/// Refinement starts at `precision` bits (at least 64) and doubles up to 4096 bits
/// (or `precision`, if larger) until every disk is isolated, lies on a definite side
/// of the unit circle, and has radius at most `2^(-precision/2) * max(|z|, 1)`.
pub fn find_roots(p: &IntPolynomial, precision: u32) -> Result<ComplexRootSet> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooSmall(1)),
        Some(_) => {}
    }
    let rel = 2f64.powi(-(precision.max(MIN_PRECISION_BITS) as i32) / 2);
    find_roots_with(p, precision, Accuracy::AllRoots(rel))
}

/// Splits `p` into the primitive factor `gcd(p, p*)`, which carries every root of
/// modulus 1, and the exact cofactor.
pub fn split_unit_circle(p: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
    let reciprocal = p.reciprocal()?;
    let candidate = poly_gcd_q(p, &reciprocal)?.primitive_integer_part();
    let cofactor = p
        .div_exact(&candidate)
        .expect("a primitive divisor over Q divides over Z");
    Ok((candidate, cofactor))
}

/// A certified logarithmic Mahler measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerMeasure {
    pub value: f64,
    /// `log|s|` for the leading coefficient `s`.
    pub log_leading: f64,
    /// `sum_{|z|>1} log|z|`.
    pub archimedean: f64,
    /// False if some root had to be assumed on the unit circle.
    pub certified: bool,
    pub roots: ComplexRootSet,
}

pub(crate) fn log_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.abs().to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        (n.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Logarithmic Mahler measure, within `tolerance` of the true value when certified.
pub fn mahler_measure(p: &IntPolynomial, tolerance: f64) -> Result<MahlerMeasure> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?;
    let log_leading = log_abs(lead);
    let (zeros, rest) = p.strip_x_power();
    let mut roots = ComplexRootSet {
        roots: Vec::new(),
        working_precision: MIN_PRECISION_BITS,
    };
    if zeros > 0 {
        roots.roots.push(RootEnclosure::zero_root(zeros));
    }
    if let Some(deg) = rest.degree().filter(|&d| d > 0) {
        // Per-root log error is at most about rel, so deg * rel <= tolerance / 2.
        let rel = (tolerance / (2.0 * deg as f64)).max(1e-300);
        let accuracy = Accuracy::OutsideRoots(rel);
        let (candidate, cofactor) = split_unit_circle(&rest)?;
        for part in [&candidate, &cofactor] {
            if part.degree().unwrap_or(0) == 0 {
                continue;
            }
            match find_roots_with(part, MIN_PRECISION_BITS, accuracy) {
                Ok(found) => roots.extend(found),
                Err(Error::RootCertification { bits, partial }) => {
                    roots.extend(*partial);
                    return Err(Error::RootCertification {
                        bits,
                        partial: Box::new(roots),
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    let archimedean = roots.log_outside().max(0.0);
    Ok(MahlerMeasure {
        value: log_leading + archimedean,
        log_leading,
        archimedean,
        certified: roots.certified(),
        roots,
    })
}

/// Exact zero test for the measure: `m(p) = 0` iff `p` is `+-X^k` times cyclotomic factors.
pub fn is_zero_measure(p: &IntPolynomial) -> bool {
    !p.is_zero() && is_cyclotomic_product(p)
}

/// A posteriori check that the residual `|p(z)|` at each center is consistent with
/// the enclosure radii: `|p(z_i)| <= |s| * r_i * prod_{j != i}(|z_i - z_j| + r_j)`.
pub fn residual_consistent(p: &IntPolynomial, roots: &ComplexRootSet) -> bool {
    use num_complex::Complex64;
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let lead = coeffs.last().copied().unwrap_or(0.0).abs();
    let expanded: Vec<(Complex64, f64)> = roots
        .roots
        .iter()
        .flat_map(|r| std::iter::repeat_n((Complex64::new(r.re, r.im), r.radius), r.multiplicity))
        .collect();
    expanded.iter().enumerate().all(|(i, &(z, r))| {
        let value = coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
        let mut bound = lead * (r + 1e-15 * z.norm().max(1.0));
        for (j, &(w, rw)) in expanded.iter().enumerate() {
            if j != i {
                bound *= (z - w).norm() + rw + 1e-15;
            }
        }
        // Double-precision evaluation error of the residual itself.
        let slack = coeffs.iter().map(|c| c.abs()).sum::<f64>() * z.norm().max(1.0).powi(coeffs.len() as i32) * 1e-13;
        value.norm() <= bound * (1.0 + 1e-9) + slack
    })
}
