use std::fmt;

use super::echelon::Echelon;
use super::sparse::SparseVec;
use crate::scalar::Scalar;

/// Dense matrix with exact entries. Dimensions are fixed at creation.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<T> {
    /// A particular solution (free variables set to zero) and the dimension
    /// of the solution space's kernel.
    Consistent { x: Vec<T>, kernel_dim: usize },
    Inconsistent,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter().map(|row| row.iter().map(|x| T::from_int(*x)).collect()).collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect()
    }

    fn row_echelon(&self) -> Echelon<T> {
        let mut e = Echelon::new();
        for i in 0..self.rows {
            e.insert(&SparseVec::from_dense(self.row(i)));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().rank()
    }

    /// Canonical kernel basis derived from the reduced echelon form: one
    /// vector per free column, carrying a 1 there.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        self.row_echelon()
            .kernel_basis(self.cols)
            .into_iter()
            .map(|v| v.to_dense(self.cols))
            .collect()
    }

    /// Solves `self · x = b`; free variables are set to zero.
    pub fn solve(&self, b: &[T]) -> Solution<T> {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let mut e = Echelon::new();
        for i in 0..self.rows {
            let mut row: Vec<T> = self.row(i).to_vec();
            row.push(b[i].clone());
            e.insert(&SparseVec::from_dense(&row));
        }
        if e.pivots().contains(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, p) in e.rows().iter().zip(e.pivots()) {
            if let Some(v) = row.get(self.cols) {
                x[*p] = v.clone();
            }
        }
        Solution::Consistent { x, kernel_dim: self.cols - e.rank() }
    }

    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return T::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= pivot.clone();
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].div_ref(&pivot);
                for j in col..n {
                    let sub = f.mul_ref(&a[col * n + j]);
                    a[r * n + j] -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut e = Echelon::new();
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            e.insert(&SparseVec::from_dense(&row));
        }
        if e.pivots().iter().any(|p| *p >= n) || e.rank() < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (row, p) in e.rows().iter().zip(e.pivots()) {
            for (c, v) in row.iter() {
                if *c >= n {
                    inv.set(*p, c - n, v.clone());
                }
            }
        }
        Some(inv)
    }

    /// Principal submatrix on the given index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Matrix<T> {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_exact_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
