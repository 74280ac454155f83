//! A posteriori inclusion disks for simple roots, in exact integer arithmetic.
//!
//! For distinct approximations `z_1..z_n` of the roots of a degree-`n` polynomial
//! with leading coefficient `a`, every root lies in the union of the disks
//! `D(z_i, r_i)` with `r_i = n |P(z_i)| / (|a| prod_{j != i} |z_i - z_j|)`, and each
//! connected component made of `k` disks holds exactly `k` roots. An isolated disk
//! therefore holds exactly one root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fixed::{to_f64, Fixed};

/// Where a certified root sits relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CirclePosition {
    Inside,
    Outside,
    /// Modulus exactly 1, proven.
    OnCircle,
    /// Could not be separated from the unit circle at the precision cap; treated as modulus 1.
    AssumedOnCircle,
}

#[derive(Clone, Debug)]
pub(crate) struct Disk {
    pub center: Fixed,
    /// Upper bound on the radius at the same scale as `center`; `None` when unbounded.
    pub radius: Option<BigInt>,
}

fn ceil_sqrt(q: &BigInt) -> BigInt {
    let s = q.sqrt();
    if &(&s * &s) < q {
        s + 1u32
    } else {
        s
    }
}

/// `P(z) * 2^(bits * n)` as an exact Gaussian integer.
fn eval_exact(coeffs: &[BigInt], z: &Fixed, bits: u32) -> Fixed {
    let n = coeffs.len() - 1;
    let mut acc = Fixed::new(coeffs[n].clone(), BigInt::zero());
    for k in (0..n).rev() {
        acc = acc.mul_raw(z);
        acc.re += &coeffs[k] << (bits as usize * (n - k));
    }
    acc
}

pub(crate) fn inclusion_disks(coeffs: &[BigInt], centers: &[Fixed], bits: u32) -> Vec<Disk> {
    let n = coeffs.len() - 1;
    let lead_sq = &coeffs[n] * &coeffs[n];
    let n_sq = BigInt::from(n * n);
    centers
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let value = eval_exact(coeffs, z, bits).norm_sq();
            let mut denom = lead_sq.clone();
            for (j, w) in centers.iter().enumerate() {
                if j != i {
                    denom *= z.sub(w).norm_sq();
                }
            }
            let radius = (!denom.is_zero()).then(|| {
                let q = (&n_sq * value).div_ceil(&denom);
                ceil_sqrt(&q)
            });
            Disk {
                center: z.clone(),
                radius,
            }
        })
        .collect()
}

fn disjoint(a: &Disk, b: &Disk) -> bool {
    match (&a.radius, &b.radius) {
        (Some(ra), Some(rb)) => {
            let reach = ra + rb;
            a.center.sub(&b.center).norm_sq() > &reach * &reach
        }
        _ => false,
    }
}

pub(crate) fn isolated(disks: &[Disk]) -> Vec<bool> {
    (0..disks.len())
        .map(|i| {
            disks[i].radius.is_some()
                && disks
                    .iter()
                    .enumerate()
                    .all(|(j, d)| j == i || disjoint(&disks[i], d))
        })
        .collect()
}

/// Strict position of a disk relative to the unit circle, if decided.
pub(crate) fn side(disk: &Disk, bits: u32) -> Option<CirclePosition> {
    let r = disk.radius.as_ref()?;
    let one = BigInt::one() << bits;
    let m = disk.center.norm_sq();
    let outer = &one + r;
    if m > &outer * &outer {
        return Some(CirclePosition::Outside);
    }
    if r < &one {
        let inner = &one - r;
        if m < &inner * &inner {
            return Some(CirclePosition::Inside);
        }
    }
    if r.is_zero() && m == &one * &one {
        return Some(CirclePosition::OnCircle);
    }
    None
}

/// Proves `|root| = 1` for the single root in an isolated disk of a self-reciprocal
/// polynomial.
///
/// Roots of a real self-reciprocal polynomial are closed under `z -> 1/conj(z)`.
/// That map sends disk `i` to another disk; if the image meets no other inclusion
/// disk, the image of the root in disk `i` must be that same root, so its modulus is 1.
pub(crate) fn certify_on_circle(disks: &[Disk], i: usize, bits: u32) -> bool {
    let Some(r) = disks[i].radius.as_ref() else {
        return false;
    };
    let c = &disks[i].center;
    let k = c.norm_sq() - r * r;
    if k <= BigInt::zero() {
        return false;
    }
    let four_w = BigInt::one() << (2 * bits);
    // Image disk scaled by k * 4^w: center c * 4^w, radius r * 4^w; others scaled by k.
    let image_center = Fixed::new(&c.re * &four_w, &c.im * &four_w);
    let image_radius = r * &four_w;
    disks.iter().enumerate().all(|(j, d)| {
        if j == i {
            return true;
        }
        let Some(rj) = d.radius.as_ref() else {
            return false;
        };
        let other = Fixed::new(&d.center.re * &k, &d.center.im * &k);
        let reach = &image_radius + rj * &k;
        image_center.sub(&other).norm_sq() > &reach * &reach
    })
}

/// `radius <= rel * max(|center|, 1)`, decided exactly.
pub(crate) fn within_relative(disk: &Disk, rel: f64, bits: u32) -> bool {
    let Some(r) = disk.radius.as_ref() else {
        return false;
    };
    let Some(rel_sq) = BigRational::from_float(rel * rel) else {
        return false;
    };
    let one_sq = BigInt::one() << (2 * bits);
    let m = disk.center.norm_sq().max(one_sq);
    // r^2 * den <= num * m
    r * r * rel_sq.denom() <= rel_sq.numer() * m
}

/// Modulus of the center and an upward-rounded radius, as doubles.
pub(crate) fn to_f64_parts(disk: &Disk, bits: u32) -> (f64, f64) {
    let modulus = to_f64(&disk.center.norm_sq(), 2 * bits).sqrt();
    let radius = disk
        .radius
        .as_ref()
        .map_or(f64::INFINITY, |r| to_f64(r, bits).next_up().next_up());
    (modulus, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn coeffs(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn exact_center_gets_zero_radius() {
        let bits = 64;
        let c = coeffs(&[-6, 5, -1]); // -(X-2)(X-3)
        let centers = [
            Fixed::from_complex(Complex64::new(2.0, 0.0), bits),
            Fixed::from_complex(Complex64::new(3.0, 0.0), bits),
        ];
        let disks = inclusion_disks(&c, &centers, bits);
        assert!(disks.iter().all(|d| d.radius.as_ref().unwrap().is_zero()));
        assert_eq!(isolated(&disks), vec![true, true]);
        assert_eq!(side(&disks[0], bits), Some(CirclePosition::Outside));
    }

    #[test]
    fn perturbed_centers_still_enclose() {
        let bits = 64;
        let c = coeffs(&[1, -5, 6]); // roots 1/2 and 1/3
        let centers = [
            Fixed::from_complex(Complex64::new(0.5 + 1e-9, 1e-9), bits),
            Fixed::from_complex(Complex64::new(1.0 / 3.0 - 2e-9, 0.0), bits),
        ];
        let disks = inclusion_disks(&c, &centers, bits);
        for (d, root) in disks.iter().zip([0.5, 1.0 / 3.0]) {
            let (m, r) = to_f64_parts(d, bits);
            let center = d.center.to_complex(bits);
            assert!((center - Complex64::new(root, 0.0)).norm() <= r);
            assert!(m < 1.0);
            assert_eq!(side(d, bits), Some(CirclePosition::Inside));
        }
    }

    #[test]
    fn coincident_centers_are_unbounded() {
        let bits = 32;
        let c = coeffs(&[1, 0, 1]);
        let z = Fixed::from_complex(Complex64::new(0.0, 1.0), bits);
        let disks = inclusion_disks(&c, &[z.clone(), z], bits);
        assert!(disks.iter().all(|d| d.radius.is_none()));
        assert_eq!(isolated(&disks), vec![false, false]);
    }

    #[test]
    fn on_circle_certificate_for_gaussian_unit() {
        let bits = 64;
        let c = coeffs(&[5, -6, 5]); // roots (3 +- 4i)/5
        let centers = [
            Fixed::from_complex(Complex64::new(0.6 + 1e-12, 0.8), bits),
            Fixed::from_complex(Complex64::new(0.6, -0.8 - 1e-12), bits),
        ];
        let disks = inclusion_disks(&c, &centers, bits);
        assert_eq!(isolated(&disks), vec![true, true]);
        assert_eq!(side(&disks[0], bits), None);
        assert!(certify_on_circle(&disks, 0, bits));
        assert!(certify_on_circle(&disks, 1, bits));
    }
}
