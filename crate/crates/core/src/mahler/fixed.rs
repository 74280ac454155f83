//! Binary fixed-point complex numbers and the Aberth-Ehrlich iteration.
//!
//! A [`Fixed`] value `(re, im)` at scale `bits` stands for `(re + i*im) / 2^bits`.
//! All values taking part in one computation share the same scale.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

impl Fixed {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    pub fn one(bits: u32) -> Self {
        Self::new(BigInt::from(1) << bits, BigInt::zero())
    }

    pub fn from_complex(z: Complex64, bits: u32) -> Self {
        let conv = |x: f64| {
            let mantissa = BigInt::from_f64((x * 2f64.powi(52)).round()).unwrap_or_default();
            if bits >= 52 {
                mantissa << (bits - 52)
            } else {
                mantissa >> (52 - bits)
            }
        };
        Self::new(conv(z.re), conv(z.im))
    }

    pub fn to_complex(&self, bits: u32) -> Complex64 {
        Complex64::new(to_f64(&self.re, bits), to_f64(&self.im, bits))
    }

    pub fn rescale(&self, from: u32, to: u32) -> Self {
        debug_assert!(to >= from);
        Self::new(&self.re << (to - from), &self.im << (to - from))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    /// Product without rescaling: the result carries the sum of both scales.
    pub fn mul_raw(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn mul(&self, o: &Self, bits: u32) -> Self {
        let p = self.mul_raw(o);
        Self::new(p.re >> bits, p.im >> bits)
    }

    pub fn div(&self, o: &Self, bits: u32) -> Option<Self> {
        let den = o.norm_sq();
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << bits;
        let im = (&self.im * &o.re - &self.re * &o.im) << bits;
        Some(Self::new(re / &den, im / den))
    }

    /// `|z|^2` at twice the scale.
    pub fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// `x / 2^bits` as a double, without overflowing the intermediate.
pub(crate) fn to_f64(x: &BigInt, bits: u32) -> f64 {
    const KEEP: u32 = 64;
    let significant = x.bits() as u32;
    if significant > KEEP && bits > 0 {
        let shift = (significant - KEEP).min(bits);
        let head = (x >> shift).to_f64().unwrap_or(f64::NAN);
        head * 2f64.powi(shift as i32 - bits as i32)
    } else {
        x.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(bits as i32))
    }
}

/// Fujiwara's bound on the moduli of all roots.
pub(crate) fn fujiwara_bound(coeffs: &[BigInt]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].to_f64().unwrap_or(1.0).abs();
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let mut ratio = coeffs[n - k].to_f64().unwrap_or(0.0).abs() / lead;
        if k == n {
            ratio /= 2.0;
        }
        bound = bound.max(ratio.powf(1.0 / k as f64));
    }
    2.0 * bound.max(f64::MIN_POSITIVE)
}

pub(crate) fn initial_guesses(coeffs: &[BigInt]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = fujiwara_bound(coeffs);
    let offset = std::f64::consts::PI / (2.0 * n as f64) + 0.4;
    (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// Double-precision Aberth-Ehrlich pass used to seed the fixed-point refinement.
///
/// Returns `None` if the iteration produced non-finite values.
pub(crate) fn aberth_f64(coeffs: &[BigInt], max_iter: usize) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let a: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if a.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut z = initial_guesses(coeffs);
    for _ in 0..max_iter {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (mut p, mut dp) = (Complex64::new(a[n], 0.0), Complex64::zero());
            for k in (0..n).rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + a[k];
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.iter()
        .all(|w| w.re.is_finite() && w.im.is_finite())
        .then_some(z)
}

/// Aberth-Ehrlich refinement at fixed precision `bits`.
///
/// Runs until every correction is below `2^(-bits/2)` and then two more sweeps,
/// which is enough for the quadratic convergence to reach the rounding floor.
pub(crate) fn aberth_fixed(coeffs: &[BigInt], roots: &mut [Fixed], bits: u32, max_iter: usize) {
    let n = coeffs.len() - 1;
    let scaled: Vec<BigInt> = coeffs.iter().map(|c| c << bits).collect();
    let one = Fixed::one(bits);
    let threshold = BigInt::from(1) << bits;
    let mut extra = 2;
    for _ in 0..max_iter {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let z = roots[i].clone();
            let mut p = Fixed::new(scaled[n].clone(), BigInt::zero());
            let mut dp = Fixed::default();
            for k in (0..n).rev() {
                dp = dp.mul(&z, bits).add(&p);
                p = p.mul(&z, bits).add(&Fixed::new(scaled[k].clone(), BigInt::zero()));
            }
            if p.is_zero() {
                continue;
            }
            let Some(ratio) = p.div(&dp, bits) else {
                // Critical point: nudge off it.
                roots[i] = z.add(&Fixed::new(BigInt::from(1) << (bits / 2), BigInt::from(1) << (bits / 2)));
                worst = worst.max(threshold.clone() + 1u32);
                continue;
            };
            let mut sum = Fixed::default();
            for (j, zj) in roots.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(inv) = one.div(&z.sub(zj), bits) {
                    sum = sum.add(&inv);
                }
            }
            let denom = one.sub(&ratio.mul(&sum, bits));
            let w = ratio.div(&denom, bits).unwrap_or(ratio);
            let size = w.norm_sq();
            if size > worst {
                worst = size;
            }
            roots[i] = z.sub(&w);
        }
        if worst <= threshold {
            if extra == 0 {
                break;
            }
            extra -= 1;
        }
    }
    for r in roots.iter_mut() {
        // Keep real roots of real polynomials on the axis when the drift is pure noise.
        if r.im.abs() <= BigInt::from(4) {
            r.im = BigInt::zero();
        }
    }
}
