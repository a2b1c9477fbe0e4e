use std::fmt;
use std::ops::{Index, IndexMut};

use super::MatError;

/// Real rectangular matrix stored column-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from column-major data. Rejects empty shapes,
    /// length mismatches and non-finite entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatError> {
        if rows == 0 || cols == 0 {
            return Err(MatError::EmptyShape);
        }
        if data.len() != rows * cols {
            return Err(MatError::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(MatError::NonFinite {
                row: pos % rows,
                col: pos / rows,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a slice of rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(MatError::RaggedRow {
                row: bad,
                expected: c,
                found: rows[bad].len(),
            });
        }
        let mut data = vec![0.0; r * c];
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                data[i + j * r] = x;
            }
        }
        Self::from_col_major(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix entry by entry. Panics on non-finite output.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                let x = f(i, j);
                assert!(x.is_finite(), "non-finite entry at ({i}, {j})");
                m.data[i + j * rows] = x;
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn column(v: &[f64]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column-major backing storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let out_col = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = rhs.data[k + j * rhs.rows];
                if b == 0.0 {
                    continue;
                }
                let a_col = &self.data[k * self.rows..(k + 1) * self.rows];
                for (o, &a) in out_col.iter_mut().zip(a_col) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matvec shape mismatch");
        let mut y = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            for (yi, &a) in y.iter_mut().zip(self.col(j)) {
                *yi += a * xj;
            }
        }
        y
    }

    /// `self^T x`
    pub fn tr_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len(), "tr_matvec shape mismatch");
        (0..self.cols).map(|j| dot(self.col(j), x)).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x * s)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "elementwise shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `self + s * rhs`
    pub fn axpy(&self, s: f64, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a + s * b)
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm2(&self.data)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Max absolute row sum (the ℓ∞ operator norm).
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `⟨A, B⟩ = tr(A^T B)`.
    pub fn frobenius_dot(&self, rhs: &Self) -> f64 {
        assert_eq!(self.shape(), rhs.shape(), "inner product shape mismatch");
        dot(&self.data, &rhs.data)
    }

    /// `‖A - A^T‖_F`, or infinity for non-square input.
    pub fn symmetry_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.sub(&self.transpose()).frobenius_norm()
    }

    /// Outer product `a b^T`.
    pub fn outer(a: &[f64], b: &[f64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j])
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.6e} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    // scaled to avoid overflow on large entries
    let scale = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * a.iter().map(|x| (x / scale).powi(2)).sum::<f64>().sqrt()
}

/// ℓp norm for `p >= 1`; `p = f64::INFINITY` gives the max norm.
pub fn norm_p(a: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    } else if p == 1.0 {
        a.iter().map(|x| x.abs()).sum()
    } else if p == 2.0 {
        norm2(a)
    } else {
        a.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}
