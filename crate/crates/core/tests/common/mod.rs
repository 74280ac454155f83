//! Independent root oracle: companion-matrix eigenvalues from nalgebra, polished by Newton steps.
//! Shares no code with the crate's root finder.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use yuzvinski::exact_arith::IntPolynomial;

/// Reference values computed to 50 digits with an arbitrary-precision library.
pub mod reference {
    pub const LEHMER_MEASURE: f64 = 0.162_357_612_007_738_139_43;
    pub const LEHMER_OUTSIDE_ROOT: f64 = 1.176_280_818_259_917_50;
    pub const LEHMER_INSIDE_ROOT: f64 = 0.850_137_130_927_042_35;
    pub const GOLDEN_LOG: f64 = 0.481_211_825_059_603_447_50;
    pub const CAT_MAP_LOG: f64 = 0.962_423_650_119_206_895_00;
}

pub fn to_f64_coeffs(p: &IntPolynomial) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().expect("finite")).collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// All complex roots of `sum c_i X^i` (ascending, nonzero leading coefficient, degree >= 1).
pub fn oracle_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / lead;
    }
    comp.complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..8 {
                let (v, dv) = horner(c, z);
                if dv.norm() == 0.0 {
                    break;
                }
                let next = z - v / dv;
                if horner(c, next).0.norm() >= v.norm() {
                    break;
                }
                z = next;
            }
            z
        })
        .collect()
}

/// `log|lead| + sum log max(1, |z|)` from the oracle roots.
pub fn oracle_measure(p: &IntPolynomial) -> f64 {
    let c = to_f64_coeffs(p);
    let lead = c[c.len() - 1].abs().ln();
    if c.len() == 1 {
        return lead;
    }
    lead + oracle_roots(&c).iter().map(|z| z.norm().ln().max(0.0)).sum::<f64>()
}
