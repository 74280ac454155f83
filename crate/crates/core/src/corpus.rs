//! Seeded test corpora shared by the property suites, the acceptance tests and the CLI.
//!
//! Every generator takes a `u64` seed and is deterministic across platforms (ChaCha8).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_arith::{IntPolynomial, RationalPolynomial};
use crate::mahler::cyclotomic;
use crate::rational_linalg::{companion, RationalMatrix};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Primitive integer polynomial of degree `1..=max_degree` with coefficients in `[-max_coeff, max_coeff]`,
/// positive leading coefficient.
pub fn random_primitive_poly<R: Rng>(rng: &mut R, max_degree: usize, max_coeff: i64) -> IntPolynomial {
    loop {
        let deg = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
        if c[deg] == 0 {
            c[deg] = rng.gen_range(1..=max_coeff);
        }
        let p = IntPolynomial::from_i64(&c).primitive_part();
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

/// `n x n` matrix, `n` in `1..=max_dim`, entries `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_num: i64, max_den: i64) -> RationalMatrix {
    let n = rng.gen_range(1..=max_dim);
    random_square(rng, n, max_num, max_den)
}

pub fn random_square<R: Rng>(rng: &mut R, n: usize, max_num: i64, max_den: i64) -> RationalMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-max_num..=max_num)),
                        BigInt::from(rng.gen_range(1..=max_den)),
                    )
                })
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("square by construction")
}

/// Random `n x n` integer matrix with nonzero determinant.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, max_entry: i64) -> RationalMatrix {
    loop {
        let p = random_square(rng, n, max_entry, 1);
        if !crate::rational_linalg::char_poly(&p).coeff(0).is_zero() {
            return p;
        }
    }
}

/// Indices with small totient, so products stay at modest degree.
const CYCLOTOMIC_INDICES: [u64; 20] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 16, 18, 20, 24, 30, 36, 42];

/// Product of one to three cyclotomic polynomials (repeats allowed), total degree at most `max_degree`.
pub fn random_cyclotomic_product<R: Rng>(rng: &mut R, max_degree: usize) -> IntPolynomial {
    loop {
        let k = rng.gen_range(1..=3);
        let mut p = IntPolynomial::one();
        for _ in 0..k {
            let n = *CYCLOTOMIC_INDICES.choose(rng).expect("nonempty");
            p = &p * &cyclotomic(n);
        }
        if p.degree().is_some_and(|d| d <= max_degree) {
            return p;
        }
    }
}

/// Lehmer's degree-10 polynomial.
pub fn lehmer() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// A polynomial that is certainly not `+-X^k` times cyclotomic factors.
///
/// Each variant multiplies a cyclotomic product by a factor of positive measure:
/// a monic factor with constant term of modulus at least 2 (some root lies outside
/// the unit disc), a primitive non-monic linear factor (leading coefficient at least 2), or
/// Lehmer's polynomial.
pub fn random_non_cyclotomic<R: Rng>(rng: &mut R, max_degree: usize) -> IntPolynomial {
    let base = random_cyclotomic_product(rng, max_degree.saturating_sub(10).max(2));
    let factor = match rng.gen_range(0..3) {
        0 => {
            let deg = rng.gen_range(1..=3usize);
            let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
            let c0: i64 = rng.gen_range(2..=5);
            c[0] = if rng.gen_bool(0.5) { c0 } else { -c0 };
            c[deg] = 1;
            IntPolynomial::from_i64(&c)
        }
        1 => loop {
            let (c0, c1): (i64, i64) = (rng.gen_range(1..=3), rng.gen_range(2..=4));
            if num_integer::gcd(c0, c1) == 1 {
                break IntPolynomial::from_i64(&[if rng.gen_bool(0.5) { c0 } else { -c0 }, c1]);
            }
        },
        _ => lehmer(),
    };
    &base * &factor
}

/// Companion-form matrix of a polynomial with nonzero leading coefficient.
pub fn matrix_of(p: &IntPolynomial) -> RationalMatrix {
    let lead = BigRational::from_integer(p.leading().expect("nonzero").abs());
    let sign = if p.leading().is_some_and(Signed::is_negative) { -1 } else { 1 };
    let monic = RationalPolynomial::new(
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c * sign) / &lead)
            .collect(),
    );
    companion(&monic).expect("degree >= 1 and monic")
}

/// Small matrices whose trajectories stay within a desk-scale budget.
pub fn random_small_matrix<R: Rng>(rng: &mut R) -> RationalMatrix {
    let n = rng.gen_range(1..=2);
    random_square(rng, n, 3, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::is_cyclotomic_product;

    #[test]
    fn generators_are_deterministic() {
        let a: Vec<_> = (0..5).map(|_| random_primitive_poly(&mut rng(1), 8, 1000)).collect();
        let b: Vec<_> = (0..5).map(|_| random_primitive_poly(&mut rng(1), 8, 1000)).collect();
        assert_eq!(a, b);
        let mut r = rng(2);
        let p = random_primitive_poly(&mut r, 8, 1000);
        assert!(p.is_primitive());
        assert!(p.leading().unwrap().is_positive());
    }

    #[test]
    fn labelled_corpora() {
        let mut r = rng(3);
        for _ in 0..20 {
            assert!(is_cyclotomic_product(&random_cyclotomic_product(&mut r, 12)));
            let p = random_non_cyclotomic(&mut r, 14);
            assert!(p.is_primitive() && !is_cyclotomic_product(&p));
        }
    }

    #[test]
    fn companion_of_non_monic_keeps_polynomial() {
        let p = IntPolynomial::from_i64(&[1, -5, 6]);
        let m = matrix_of(&p);
        let pair = crate::exact_arith::primitivize(&crate::rational_linalg::char_poly(&m)).unwrap();
        assert_eq!(pair.primitive, p);
    }
}
