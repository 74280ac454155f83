use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A place of Q: a finite prime or the archimedean absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exponent of `p` in a nonzero integer. Caller guarantees `p` prime.
pub fn vp_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// p-adic valuation of a rational: `vp(a/b) = vp(a) - vp(b)`, and `Infinite` for zero.
pub fn vp(x: &BigRational, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let num = vp_int(x.numer(), p).finite().unwrap_or(0);
    let den = vp_int(x.denom(), p).finite().unwrap_or(0);
    Ok(Valuation::Finite(num - den))
}

/// `|x|_p = p^(-vp(x))` as an exact rational; `|0|_p = 0`.
pub fn abs_p(x: &BigRational, p: u64) -> Result<BigRational> {
    match vp(x, p)? {
        Valuation::Infinite => Ok(BigRational::zero()),
        Valuation::Finite(v) => {
            let base = BigInt::from(p);
            let power = num_traits::pow(base, v.unsigned_abs() as usize);
            Ok(if v >= 0 {
                BigRational::new(BigInt::one(), power)
            } else {
                BigRational::from_integer(power)
            })
        }
    }
}

/// Primes below this bound are removed by trial division before the general factorizer runs.
const TRIAL_BOUND: u64 = 1 << 12;

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
///
/// Small primes are divided out first; the remaining cofactor must fit in 128 bits.
/// Leading coefficients and denominators built from small-denominator matrices are
/// smooth, so this covers every input the crate produces on its corpora.
pub fn prime_factors(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut factors = Vec::new();
    for p in (2..TRIAL_BOUND).filter(|&p| is_prime(p)) {
        if rest.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if rest.is_one() {
        return Ok(factors);
    }
    let magnitude = rest
        .to_u128()
        .ok_or_else(|| Error::InvalidInput(format!("integer {n} has a cofactor too large to factor")))?;
    let large: Vec<(u64, u32)> = if let Ok(small) = u64::try_from(magnitude) {
        num_prime::nt_funcs::factorize64(small)
            .into_iter()
            .map(|(p, e)| (p, e as u32))
            .collect()
    } else {
        num_prime::nt_funcs::factorize128(magnitude)
            .into_iter()
            .map(|(p, e)| {
                u64::try_from(p)
                    .map(|p| (p, e as u32))
                    .map_err(|_| Error::InvalidInput(format!("prime factor {p} exceeds 64 bits")))
            })
            .collect::<Result<_>>()?
    };
    factors.extend(large);
    factors.sort_unstable();
    Ok(factors)
}
