use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::IntPolynomial;

fn totient(n: u64) -> u64 {
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn mobius(n: u64) -> i32 {
    let factors = num_prime::nt_funcs::factorize64(n);
    if factors.values().any(|&e| e > 1) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiplies by `X^e - 1` in place.
fn mul_binomial(c: &mut Vec<BigInt>, e: usize) {
    let old = c.clone();
    c.resize(old.len() + e, BigInt::zero());
    for x in c.iter_mut().take(old.len()) {
        *x = -&*x;
    }
    for (i, x) in old.into_iter().enumerate() {
        c[i + e] += x;
    }
}

/// Divides by `X^e - 1` exactly (the caller guarantees divisibility).
fn div_binomial(c: &mut Vec<BigInt>, e: usize) {
    let n = c.len() - 1;
    let mut q = vec![BigInt::zero(); n + 1 - e];
    let mut rem = std::mem::take(c);
    for k in (0..=n - e).rev() {
        let t = rem[k + e].clone();
        rem[k] += &t;
        q[k] = t;
    }
    *c = q;
}

/// The n-th cyclotomic polynomial, `prod_{d | n} (X^(n/d) - 1)^mu(d)`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut c = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(d) == 1 {
            mul_binomial(&mut c, (n / d) as usize);
        }
    }
    for &d in &divisors {
        if mobius(d) == -1 {
            div_binomial(&mut c, (n / d) as usize);
        }
    }
    IntPolynomial::new(c)
}

/// True iff `p = +-X^k * (product of cyclotomic polynomials)`.
///
/// Decided by exact trial division by every `Phi_n` with `phi(n) <= deg p`.
pub fn is_cyclotomic_product(p: &IntPolynomial) -> bool {
    if p.is_zero() {
        return false;
    }
    let (_, mut rest) = p.strip_x_power();
    if !rest.leading().is_some_and(|c| c.abs().is_one()) || !rest.coeff(0).abs().is_one() {
        return false;
    }
    if rest.leading().is_some_and(Signed::is_negative) {
        rest = rest.neg();
    }
    let degree = rest.degree().unwrap_or(0) as u64;
    // phi(n) >= sqrt(n / 2), so phi(n) <= d forces n <= 2 d^2.
    let limit = 2 * degree * degree;
    for n in 1..=limit.max(2) {
        if rest.degree() == Some(0) {
            break;
        }
        if totient(n) > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        let phi_n = cyclotomic(n);
        while let Some(q) = rest.div_exact(&phi_n) {
            rest = q;
        }
    }
    rest == IntPolynomial::one()
}
