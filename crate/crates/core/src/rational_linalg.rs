//! Exact square matrices over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{abs_p, require_prime, Place, RationalPolynomial};
use crate::{Error, Result};

/// N x N matrix of canonical rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {dim}x{dim} matrix",
                bad.len()
            )));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Builds from `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigRational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    fn check_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim == rhs.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{0}x{0} against {1}x{1}",
                self.dim, rhs.dim
            )))
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Monic characteristic polynomial `det(X*I - M)` by the Faddeev-LeVerrier recurrence.
///
/// With `M_0 = 0` and `c_N = 1`, each step sets `M_k = M*M_{k-1} + c_{N-k+1}*I`
/// and `c_{N-k} = -tr(M*M_k)/k`.
pub fn char_poly(m: &RationalMatrix) -> RationalPolynomial {
    let n = m.dim();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut acc = RationalMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.mul(&acc).expect("same dimension");
        for i in 0..n {
            next.entries[i * n + i] += &coeffs[n - k + 1];
        }
        let am = m.mul(&next).expect("same dimension");
        coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
        acc = next;
    }
    RationalPolynomial::new(coeffs)
}

/// Companion matrix: ones on the subdiagonal, negated low coefficients in the last column.
pub fn companion(f: &RationalPolynomial) -> Result<RationalMatrix> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::DegreeTooSmall(1));
    }
    let mut m = RationalMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, BigRational::one());
    }
    for i in 0..n {
        m.set(i, n - 1, -f.coeff(i));
    }
    Ok(m)
}

pub fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut m = RationalMatrix::zeros(na + nb);
    for i in 0..na {
        for j in 0..na {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            m.set(na + i, na + j, b.get(i, j).clone());
        }
    }
    m
}

// Pivot preference: nonzero, then smallest denominator, then smallest numerator.
fn pivot_key(x: &BigRational) -> (BigInt, BigInt) {
    (x.denom().clone(), x.numer().abs())
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    let n = m.dim();
    let mut a = m.clone();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .filter(|&r| !a.get(r, col).is_zero())
            .min_by_key(|&r| pivot_key(a.get(r, col)))
            .ok_or(Error::SingularMatrix)?;
        if pivot_row != col {
            for j in 0..n {
                a.entries.swap(pivot_row * n + j, col * n + j);
                inv.entries.swap(pivot_row * n + j, col * n + j);
            }
        }
        let p = a.get(col, col).clone();
        for j in 0..n {
            a.entries[col * n + j] /= &p;
            inv.entries[col * n + j] /= &p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let da = &factor * a.get(col, j);
                let di = &factor * inv.get(col, j);
                a.entries[r * n + j] -= da;
                inv.entries[r * n + j] -= di;
            }
        }
    }
    Ok(inv)
}

/// `max_i sum_j |a_ij|_place`, exactly.
pub fn operator_norm(m: &RationalMatrix, place: Place) -> Result<BigRational> {
    if let Place::Finite(p) = place {
        require_prime(p)?;
    }
    let mut best = BigRational::zero();
    for row in m.rows() {
        let mut sum = BigRational::zero();
        for x in row {
            sum += match place {
                Place::Infinity => x.abs(),
                Place::Finite(p) => abs_p(x, p)?,
            };
        }
        if sum > best {
            best = sum;
        }
    }
    Ok(best)
}
