//! Exact rational scalars, integer and rational polynomials, and p-adic valuations.
//!
//! Scalars are [`BigRational`] from `num-rational`, which always stores a reduced
//! fraction with a positive denominator. That canonical form is what makes hashing
//! and set membership of rational vectors well defined elsewhere in the crate.
//!
//! Polynomial coefficients are stored in ascending degree order everywhere.

mod poly;
mod valuation;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use poly::{poly_gcd_q, poly_mul, primitivize, IntPolynomial, PrimitivePair, RationalPolynomial};
pub use valuation::{
    abs_p, is_prime, prime_factors, require_prime, vp, vp_int, Place, Valuation,
};

use num_traits::{One, Zero};

/// Parses `"a/b"` or `"a"` into a canonical rational.
pub fn parse_rational(text: &str) -> crate::Result<BigRational> {
    let text = text.trim();
    // Accept the unicode minus sign as well as ASCII '-'.
    let normalized = text.replace('\u{2212}', "-");
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| crate::Error::InvalidInput(format!("not a rational number: {text:?}")))
    };
    match normalized.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(crate::Error::InvalidInput(format!(
                    "zero denominator in {text:?}"
                )));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(&normalized)?)),
    }
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
