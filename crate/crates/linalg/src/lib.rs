//! Exact linear algebra over the rationals.
//!
//! Everything here works on [`BigRational`] entries, so results are exact and
//! structurally comparable. Bases emitted by this crate are scaled to coprime
//! integer vectors whose first nonzero entry is positive.

mod matrix;
mod subspace;

pub use matrix::{rref, Matrix};
pub use subspace::{
    intersect, kernel_basis, orth_complement, project_block, project_subspace, solve_equalities,
    AffineSpace, Subspace,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// Shorthand for the exact scalar type.
pub type Q = BigRational;

/// Errors raised on malformed inputs. Infeasibility is never an error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Builds an integer rational.
pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a vector of `i64` into rationals.
pub fn ivec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| int(x)).collect()
}

/// Dot product of two equally long vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales `v` to a primitive integer vector with positive leading entry.
///
/// The zero vector is returned unchanged.
pub fn normalize_vector(v: &[Q]) -> Vec<Q> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if lead.is_negative() {
        g = -g;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Number of bits needed to write `q` as numerator and denominator.
pub fn bit_length(q: &Q) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// True iff every entry is zero.
pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
