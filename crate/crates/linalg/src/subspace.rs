use num_traits::{One, Zero};

use crate::matrix::{rref, Matrix};
use crate::{is_zero_vector, normalize_vector, LinalgError, Q};

/// A linear subspace of `Q^ambient_dim`, stored by a linearly independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Q>>,
}

/// `offset + direction`, the solution set of a consistent linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub offset: Vec<Q>,
    pub direction: Subspace,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors. The stored basis is the normalized nonzero rows
    /// of their reduced echelon form.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Q>]) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(ambient_dim, vectors)?;
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| normalize_vector(r.row(i))).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_dim(&self, found: usize) -> Result<(), LinalgError> {
        if found != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found });
        }
        Ok(())
    }

    /// Exact span membership.
    pub fn contains(&self, v: &[Q]) -> Result<bool, LinalgError> {
        self.check_dim(v.len())?;
        if is_zero_vector(v) {
            return Ok(true);
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(self.ambient_dim, &rows)?;
        Ok(m.rank() == self.dim())
    }

    /// True iff both subspaces have the same span.
    pub fn spans_equal(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_dim(other.ambient_dim)?;
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `U + V`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_dim(other.ambient_dim)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &rows)
    }
}

/// Basis of `{ v : M v = 0 }`, one vector per free column of `rref(M)` in column order.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    let mut next_pivot = 0;
    for free in 0..n {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Q::zero(); n];
        v[free] = Q::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        basis.push(normalize_vector(&v));
    }
    Subspace { ambient_dim: n, basis }
}

/// Solves `coeffs · x = rhs` for every row. `Ok(None)` means the system is infeasible.
pub fn solve_equalities(n: usize, eqs: &[(Vec<Q>, Q)]) -> Result<Option<AffineSpace>, LinalgError> {
    let rows: Vec<Vec<Q>> = eqs
        .iter()
        .map(|(a, b)| {
            if a.len() != n {
                return Err(LinalgError::DimensionMismatch { expected: n, found: a.len() });
            }
            let mut r = a.clone();
            r.push(b.clone());
            Ok(r)
        })
        .collect::<Result<_, _>>()?;
    let aug = Matrix::from_rows(n + 1, &rows)?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut offset = vec![Q::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        offset[p] = r[(i, n)].clone();
    }
    let coeffs = Matrix::from_rows(n, &eqs.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>())?;
    Ok(Some(AffineSpace { offset, direction: kernel_basis(&coeffs) }))
}

/// Zassenhaus sum-intersection: a basis of `U ∩ V`.
pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    u.check_dim(v.ambient_dim)?;
    let n = u.ambient_dim;
    let mut rows = Vec::with_capacity(u.dim() + v.dim());
    for b in &u.basis {
        let mut r = b.clone();
        r.extend(b.iter().cloned());
        rows.push(r);
    }
    for b in &v.basis {
        let mut r = b.clone();
        r.extend(std::iter::repeat_n(Q::zero(), n));
        rows.push(r);
    }
    let (r, _) = rref(&Matrix::from_rows(2 * n, &rows)?);
    let mut basis = Vec::new();
    for i in 0..r.rows() {
        let row = r.row(i);
        if is_zero_vector(&row[..n]) && !is_zero_vector(&row[n..]) {
            basis.push(normalize_vector(&row[n..]));
        }
    }
    Ok(Subspace { ambient_dim: n, basis })
}

/// `U^⊥`, computed as the kernel of the matrix whose rows are `U`'s basis.
pub fn orth_complement(u: &Subspace) -> Subspace {
    let m = Matrix::from_rows(u.ambient_dim, &u.basis).expect("basis vectors share the ambient dim");
    kernel_basis(&m)
}

/// Restricts `v` to the listed coordinates, preserving their order.
pub fn project_block(block: &[usize], v: &[Q]) -> Result<Vec<Q>, LinalgError> {
    block
        .iter()
        .map(|&i| v.get(i).cloned().ok_or(LinalgError::IndexOutOfRange { index: i, dim: v.len() }))
        .collect()
}

/// Image of `U` under the coordinate projection onto `block`.
pub fn project_subspace(block: &[usize], u: &Subspace) -> Result<Subspace, LinalgError> {
    let projected =
        u.basis.iter().map(|b| project_block(block, b)).collect::<Result<Vec<_>, _>>()?;
    if let Some(&bad) = block.iter().find(|&&i| i >= u.ambient_dim) {
        return Err(LinalgError::IndexOutOfRange { index: bad, dim: u.ambient_dim });
    }
    Subspace::span(block.len(), &projected)
}
