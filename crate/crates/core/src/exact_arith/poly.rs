use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, ascending degree order.
///
/// Trailing zero coefficients are trimmed on construction, so the zero polynomial
/// is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient (the multiplicity of 0 as a root).
    pub fn lowest_order(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Splits `self = X^k * rest` with `rest(0) != 0`.
    pub fn strip_x_power(&self) -> (usize, IntPolynomial) {
        let k = self.lowest_order();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            content = -content;
        }
        Self::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    pub fn neg(&self) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `X^deg * f(1/X)`; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<IntPolynomial> {
        match self.coeffs.first() {
            None => Err(Error::ZeroPolynomial),
            Some(c) if c.is_zero() => Err(Error::ZeroConstantTerm),
            Some(_) => Ok(Self::new(self.coeffs.iter().rev().cloned().collect())),
        }
    }

    pub fn derivative(&self) -> IntPolynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Exact quotient over Z, or `None` if `divisor` does not divide `self` in Z[X].
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// True when `f* = f` or `f* = -f`.
    pub fn is_self_reciprocal(&self) -> bool {
        match self.reciprocal() {
            Ok(r) => r == *self || r == self.neg(),
            Err(_) => false,
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        poly_mul(self, rhs)
    }
}

/// Exact convolution product.
pub fn poly_mul(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() || g.is_zero() {
        return IntPolynomial::zero();
    }
    let mut out = vec![BigInt::zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    IntPolynomial::new(out)
}

fn write_terms<T: fmt::Display + Zero + One + PartialEq + Signed + Clone>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let magnitude = c.abs();
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let unit = magnitude.is_one();
        match i {
            0 => write!(f, "{magnitude}")?,
            1 if unit => f.write_str("X")?,
            1 => write!(f, "{magnitude}X")?,
            _ if unit => write!(f, "X^{i}")?,
            _ => write!(f, "{magnitude}X^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Polynomial over Q, ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn make_monic(&self) -> RationalPolynomial {
        match self.leading() {
            None => self.clone(),
            Some(lead) => Self::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    pub fn sub(&self, other: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RationalPolynomial) -> (RationalPolynomial, RationalPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero divisor");
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return (Self::new(Vec::new()), self.clone());
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = &rem[k + dd] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RationalPolynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic gcd over Q; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RationalPolynomial) -> RationalPolynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // Keep the remainder sequence monic to contain coefficient growth.
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Clears denominators and content: the primitive integer polynomial with
    /// positive leading coefficient that is a rational multiple of `self`.
    pub fn primitive_integer_part(&self) -> IntPolynomial {
        let lcm = self.denominator_lcm();
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Monic greatest common divisor over Q, by the Euclidean algorithm.
pub fn poly_gcd_q(f: &IntPolynomial, g: &IntPolynomial) -> Result<RationalPolynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.to_rational().gcd(&g.to_rational()))
}

/// A monic rational polynomial `f` together with the least positive integer `s`
/// such that `s*f` has integer coefficients, and that integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivePair {
    pub monic: RationalPolynomial,
    pub s: BigInt,
    pub primitive: IntPolynomial,
}

pub fn primitivize(f: &RationalPolynomial) -> Result<PrimitivePair> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let s = f.denominator_lcm();
    let scale = BigRational::from_integer(s.clone());
    let primitive = IntPolynomial::new(
        f.coeffs
            .iter()
            .map(|c| {
                let scaled = c * &scale;
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect(),
    );
    debug_assert!(primitive.is_primitive());
    Ok(PrimitivePair {
        monic: f.clone(),
        s,
        primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{prime_factors, rational};
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn rp(c: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&(a, b)| rational(a, b)).collect())
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(poly_mul(&ip(&[-1, 1]), &ip(&[1, 1])), ip(&[-1, 0, 1]));
        assert_eq!(poly_mul(&ip(&[4, 0, -2, 7]), &IntPolynomial::one()), ip(&[4, 0, -2, 7]));
        // (2X-3)(3X-2) = 6X^2 - 13X + 6
        assert_eq!(poly_mul(&ip(&[-3, 2]), &ip(&[-2, 3])), ip(&[6, -13, 6]));
        assert!(poly_mul(&ip(&[1, 2]), &IntPolynomial::zero()).is_zero());
        assert_eq!(poly_mul(&ip(&[1, 1, 1]), &ip(&[0, 0, 5])).degree(), Some(4));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(ip(&[-3, 2]).reciprocal().unwrap(), ip(&[2, -3]));
        assert_eq!(ip(&[5, -6, 5]).reciprocal().unwrap(), ip(&[5, -6, 5]));
        let f = ip(&[7, 0, 3, -1]);
        assert_eq!(f.reciprocal().unwrap().reciprocal().unwrap(), f);
        assert!(matches!(ip(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm)));
        assert!(ip(&[5, -6, 5]).is_self_reciprocal());
        assert!(ip(&[-1, 0, 1]).is_self_reciprocal());
        assert!(!ip(&[-2, 1]).is_self_reciprocal());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd_q(&ip(&[-1, 0, 1]), &ip(&[0, -1, 1])).unwrap(), rp(&[(-1, 1), (1, 1)]));
        let f = ip(&[6, -13, 6]);
        assert_eq!(poly_gcd_q(&f, &f).unwrap(), f.to_rational().make_monic());
        // X^2+1 and X^2-1 are coprime: neither divides into the other's remainder chain.
        let g = poly_gcd_q(&ip(&[1, 0, 1]), &ip(&[-1, 0, 1])).unwrap();
        assert_eq!(g, RationalPolynomial::one());
        let (_, r) = ip(&[1, 0, 1]).to_rational().div_rem(&ip(&[-1, 0, 1]).to_rational());
        assert_eq!(r, rp(&[(2, 1)]));
        assert!(matches!(poly_gcd_q(&IntPolynomial::zero(), &IntPolynomial::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn primitivize_examples() {
        let pair = primitivize(&rp(&[(-3, 2), (1, 1)])).unwrap();
        assert_eq!(pair.s, BigInt::from(2));
        assert_eq!(pair.primitive, ip(&[-3, 2]));

        let pair = primitivize(&rp(&[(1, 1), (-2, 1), (1, 1)])).unwrap();
        assert_eq!(pair.s, BigInt::from(1));
        assert_eq!(pair.primitive, ip(&[1, -2, 1]));

        let pair = primitivize(&rp(&[(1, 6), (-5, 6), (1, 1)])).unwrap();
        assert_eq!(pair.s, BigInt::from(6));
        assert_eq!(pair.primitive, ip(&[1, -5, 6]));

        assert!(matches!(primitivize(&rp(&[(1, 1), (2, 1)])), Err(Error::NotMonic)));
    }

    #[test]
    fn exact_division() {
        let f = ip(&[6, -13, 6]);
        assert_eq!(f.div_exact(&ip(&[-3, 2])), Some(ip(&[-2, 3])));
        assert_eq!(f.div_exact(&ip(&[1, 1])), None);
        // Divisible over Q but not over Z.
        assert_eq!(ip(&[1, 2]).div_exact(&ip(&[2, 4])), None);
    }

    #[test]
    fn display() {
        assert_eq!(ip(&[1, -5, 6]).to_string(), "6X^2 - 5X + 1");
        assert_eq!(ip(&[0, -1]).to_string(), "-X");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(rp(&[(1, 6), (-5, 6), (1, 1)]).to_string(), "X^2 - 5/6X + 1/6");
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-30i64..30, 1..=max_deg + 1).prop_map(|c| IntPolynomial::from_i64(&c))
    }

    fn monic_rational(max_deg: usize) -> impl Strategy<Value = RationalPolynomial> {
        proptest::collection::vec((-40i64..40, 1i64..30), 0..max_deg).prop_map(|c| {
            let mut coeffs: Vec<BigRational> = c.into_iter().map(|(a, b)| rational(a, b)).collect();
            coeffs.push(BigRational::one());
            RationalPolynomial::new(coeffs)
        })
    }

    proptest! {
        #[test]
        fn gcd_divides_both(f in small_poly(5), g in small_poly(5), h in small_poly(3)) {
            prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
            let fh = &f * &h;
            let gh = &g * &h;
            prop_assume!(!fh.is_zero() || !gh.is_zero());
            let d = poly_gcd_q(&fh, &gh).unwrap();
            prop_assert!(d.is_monic());
            prop_assert!(fh.to_rational().div_rem(&d).1.is_zero());
            prop_assert!(gh.to_rational().div_rem(&d).1.is_zero());
            // h divides both, so it divides the gcd.
            prop_assert!(d.div_rem(&h.to_rational()).1.is_zero());
        }

        #[test]
        fn primitivize_is_minimal(f in monic_rational(6)) {
            let pair = primitivize(&f).unwrap();
            prop_assert!(pair.primitive.is_primitive());
            prop_assert_eq!(pair.primitive.leading().unwrap(), &pair.s);
            for (c, m) in pair.primitive.coeffs().iter().zip(f.coeffs()) {
                prop_assert_eq!(BigRational::from_integer(c.clone()), m * BigRational::from_integer(pair.s.clone()));
            }
            for (q, _) in prime_factors(&pair.s).unwrap() {
                let smaller = BigRational::new(pair.s.clone(), BigInt::from(q));
                let integral = f.coeffs().iter().all(|c| (c * &smaller).is_integer());
                prop_assert!(!integral, "s/{} still clears denominators", q);
            }
        }
    }
}
