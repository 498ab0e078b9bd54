//! Matrix-free symmetric linear operators.
//!
//! Every seed matrix the solver assembles is a [`SymmetricOperator`]: the
//! diagonal part, the regularizer Hessian and their sum are all represented
//! here without ever forming a dense matrix.

use crate::error::{check_dim, Error, Result};

/// Symmetric matrix in compressed sparse row storage.
///
/// Both triangles are stored, so a row-wise product is a plain CSR matvec.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetric {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymmetric {
    /// Assembles a matrix from `(row, col, value)` triplets. Duplicates are
    /// summed. The resulting pattern and values must be symmetric.
    pub fn from_triplets(dim: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); dim];
        for &(i, j, v) in triplets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidInput(format!(
                    "triplet ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite entry at ({i}, {j})"
                )));
            }
            rows[i].push((j, v));
        }

        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in &mut rows {
            row.sort_by_key(|&(j, _)| j);
            let mut last: Option<usize> = None;
            for &(j, v) in row.iter() {
                if last == Some(j) {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_idx.push(j);
                    values.push(v);
                    last = Some(j);
                }
            }
            row_ptr.push(col_idx.len());
        }

        let m = Self {
            dim,
            row_ptr,
            col_idx,
            values,
        };
        m.check_symmetric()?;
        Ok(m)
    }

    fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                match self.get(j, i) {
                    Some(w) if w == v => {}
                    Some(w) => {
                        return Err(Error::InvalidInput(format!(
                            "asymmetric values at ({i}, {j}): {v} vs {w}"
                        )))
                    }
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "pattern not symmetric: ({i}, {j}) stored without ({j}, {i})"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// Stored value at `(i, j)`, if the position is in the pattern.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .binary_search(&j)
            .ok()
            .map(|p| self.values[range.start + p])
    }

    fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o += self.row(i).map(|(j, a)| a * v[j]).sum::<f64>();
        }
    }
}

/// A symmetric positive semi-definite linear map on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricOperator {
    Diagonal(Vec<f64>),
    ScaledIdentity { scale: f64, dim: usize },
    Sparse(SparseSymmetric),
    Sum(Box<SymmetricOperator>, Box<SymmetricOperator>),
}

impl SymmetricOperator {
    pub fn diagonal(entries: Vec<f64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "diagonal entry {i} is not finite"
            )));
        }
        Ok(Self::Diagonal(entries))
    }

    pub fn scaled_identity(scale: f64, dim: usize) -> Self {
        Self::ScaledIdentity { scale, dim }
    }

    pub fn identity(dim: usize) -> Self {
        Self::ScaledIdentity { scale: 1.0, dim }
    }

    /// `left + right`. Both operands must share a dimension.
    pub fn sum(left: SymmetricOperator, right: SymmetricOperator) -> Result<Self> {
        check_dim(left.dim(), right.dim())?;
        Ok(Self::Sum(Box::new(left), Box::new(right)))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Diagonal(d) => d.len(),
            Self::ScaledIdentity { dim, .. } => *dim,
            Self::Sparse(m) => m.dim(),
            Self::Sum(l, _) => l.dim(),
        }
    }

    /// Returns `op * v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), v.len())?;
        let mut out = vec![0.0; v.len()];
        self.accumulate(v, &mut out);
        Ok(out)
    }

    /// `out += op * v`, dimensions already checked.
    pub(crate) fn accumulate(&self, v: &[f64], out: &mut [f64]) {
        match self {
            Self::Diagonal(d) => {
                for ((o, di), vi) in out.iter_mut().zip(d).zip(v) {
                    *o += di * vi;
                }
            }
            Self::ScaledIdentity { scale, .. } => {
                for (o, vi) in out.iter_mut().zip(v) {
                    *o += scale * vi;
                }
            }
            Self::Sparse(m) => m.apply_into(v, out),
            Self::Sum(l, r) => {
                l.accumulate(v, out);
                r.accumulate(v, out);
            }
        }
    }

    /// The diagonal entries of the operator.
    pub fn diagonal_of(&self) -> Vec<f64> {
        match self {
            Self::Diagonal(d) => d.clone(),
            Self::ScaledIdentity { scale, dim } => vec![*scale; *dim],
            Self::Sparse(m) => (0..m.dim()).map(|i| m.get(i, i).unwrap_or(0.0)).collect(),
            Self::Sum(l, r) => l
                .diagonal_of()
                .into_iter()
                .zip(r.diagonal_of())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Row-major dense copy. Intended for small systems only.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut dense = vec![vec![0.0; n]; n];
        self.add_to_dense(&mut dense);
        dense
    }

    fn add_to_dense(&self, dense: &mut [Vec<f64>]) {
        match self {
            Self::Diagonal(d) => d.iter().enumerate().for_each(|(i, v)| dense[i][i] += v),
            Self::ScaledIdentity { scale, dim } => (0..*dim).for_each(|i| dense[i][i] += scale),
            Self::Sparse(m) => {
                for (i, row) in dense.iter_mut().enumerate() {
                    for (j, v) in m.row(i) {
                        row[j] += v;
                    }
                }
            }
            Self::Sum(l, r) => {
                l.add_to_dense(dense);
                r.add_to_dense(dense);
            }
        }
    }
}

/// Five-point finite-difference Laplacian on an `m x m` interior grid with
/// zero Dirichlet boundary, lexicographic ordering.
///
/// Row entries are `4 * scale` on the diagonal and `-scale` for each grid
/// neighbour. `scale = 1` gives the unscaled stencil, `scale = (m + 1)^2`
/// the `h^-2` scaled one.
pub fn five_point_laplacian(grid_side: usize, scale: f64) -> Result<SymmetricOperator> {
    if grid_side == 0 {
        return Err(Error::InvalidInput("grid side must be at least 1".into()));
    }
    if !scale.is_finite() || scale < 0.0 {
        return Err(Error::InvalidInput(format!(
            "invalid stencil scale {scale}"
        )));
    }
    let m = grid_side;
    let idx = |i: usize, j: usize| i * m + j;
    let mut triplets = Vec::with_capacity(5 * m * m);
    for i in 0..m {
        for j in 0..m {
            let k = idx(i, j);
            triplets.push((k, k, 4.0 * scale));
            if i > 0 {
                triplets.push((k, idx(i - 1, j), -scale));
            }
            if i + 1 < m {
                triplets.push((k, idx(i + 1, j), -scale));
            }
            if j > 0 {
                triplets.push((k, idx(i, j - 1), -scale));
            }
            if j + 1 < m {
                triplets.push((k, idx(i, j + 1), -scale));
            }
        }
    }
    Ok(SymmetricOperator::Sparse(SparseSymmetric::from_triplets(
        m * m,
        &triplets,
    )?))
}
