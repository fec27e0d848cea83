//! Dense linear algebra over ℚ: reduced row echelon form, rank, solving and
//! kernels. Every routine is exact and deterministic.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Row-major dense matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` fixes the width so that empty
    /// row lists still carry a shape.
    pub fn from_rows(cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(rows, columns)?.transpose())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if !a.is_zero() {
                    acc += a * &other[(t, j)];
                }
            }
            acc
        }))
    }

    /// Gauss-Jordan elimination, choosing the first nonzero entry as pivot.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m[(pivot_row, col)].recip();
            for j in col..m.cols {
                let v = &m[(pivot_row, j)] * &inv;
                m[(pivot_row, j)] = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    let delta = &factor * &m[(pivot_row, j)];
                    if !delta.is_zero() {
                        m[(r, j)] -= delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            reduced: m,
            pivot_columns: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let rref = self.rref();
        let r = rref.rank();
        Matrix {
            rows: r,
            cols: self.cols,
            entries: rref.reduced.entries[..r * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `acc += factor * v`
pub fn axpy(acc: &mut [Scalar], factor: &Scalar, v: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += factor * x;
        }
    }
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dimension of the span of `vectors`. All vectors must share one length.
pub fn row_space_rank(vectors: &[Vec<Scalar>]) -> Result<usize, LinalgError> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    Ok(Matrix::from_rows(first.len(), vectors)?.rank())
}

/// Solves `a·x = b`. Free variables are set to zero; `None` means the
/// system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let augmented = Matrix::from_fn(a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let rref = augmented.rref();
    if rref.pivot_columns.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); a.cols()];
    for (row, &col) in rref.pivot_columns.iter().enumerate() {
        x[col] = rref.reduced[(row, a.cols())].clone();
    }
    Ok(Some(x))
}

/// Basis of the right kernel `{v : a·v = 0}`, one vector per free column,
/// with that free coordinate set to one.
pub fn kernel(a: &Matrix) -> Vec<Vec<Scalar>> {
    let rref = a.rref();
    let mut is_pivot = vec![false; a.cols()];
    for &c in &rref.pivot_columns {
        is_pivot[c] = true;
    }
    (0..a.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); a.cols()];
            v[free] = Scalar::one();
            for (row, &pc) in rref.pivot_columns.iter().enumerate() {
                v[pc] = -rref.reduced[(row, free)].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    #[test]
    fn rref_proportional_rows() {
        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.reduced, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn rref_tall_matrix() {
        let r = m(&[&[1, 3], &[0, 0], &[2, 7]]).rref();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.reduced, m(&[&[1, 0], &[0, 1], &[0, 0]]));
    }

    #[test]
    fn rref_empty() {
        let r = Matrix::zeros(0, 3).rref();
        assert_eq!(r.rank(), 0);
        assert_eq!(Matrix::zeros(2, 0).rank(), 0);
    }

    #[test]
    fn row_space_rank_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(row_space_rank(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap(), 2);
        assert_eq!(row_space_rank(&[]).unwrap(), 0);
        assert_eq!(row_space_rank(&[v(&[2, 4, 6]), v(&[1, 2, 3])]).unwrap(), 1);
        assert_eq!(
            row_space_rank(&[v(&[1, 2]), v(&[1])]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn solve_examples() {
        let x = solve(&Matrix::identity(2), &[int(3), ratio(1, 2)]).unwrap();
        assert_eq!(x, Some(vec![int(3), ratio(1, 2)]));
        let x = solve(&m(&[&[1, 1]]), &[int(5)]).unwrap();
        assert_eq!(x, Some(vec![int(5), int(0)]));
        assert_eq!(solve(&m(&[&[1], &[1]]), &[int(1), int(2)]).unwrap(), None);
        assert!(solve(&m(&[&[1, 1]]), &[int(1), int(2)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&m(&[&[1, 1]])), vec![vec![int(-1), int(1)]]);
        assert!(kernel(&Matrix::identity(3)).is_empty());
        assert_eq!(kernel(&m(&[&[1, 2], &[2, 4]])), vec![vec![int(-2), int(1)]]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Scalar>> = vals
                    .chunks(c.max(1))
                    .take(r)
                    .map(|ch| ch.iter().map(|&(n, d)| ratio(n, d)).collect())
                    .collect();
                if c == 0 {
                    Matrix::zeros(r, 0)
                } else {
                    Matrix::from_rows(c, &rows).unwrap()
                }
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let once = a.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once);
        }

        #[test]
        fn rank_nullity(a in small_matrix()) {
            let ker = kernel(&a);
            prop_assert_eq!(a.rank() + ker.len(), a.cols());
            for v in &ker {
                prop_assert!(is_zero_vector(&a.mul_vec(v).unwrap()));
            }
            prop_assert_eq!(row_space_rank(&ker).unwrap(), ker.len());
        }

        #[test]
        fn solutions_check_exactly(a in small_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            let b: Vec<Scalar> = (0..a.rows()).map(|i| int(seed[i])).collect();
            if let Some(x) = solve(&a, &b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
            }
        }
    }
}
