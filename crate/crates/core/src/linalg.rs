//! Small dense vectors and square matrices.
//!
//! Problem dimensions are tiny (a handful of unknown components), so matrices
//! are stored row-major in a flat `Vec<f64>` and every operation is a plain loop.

use crate::error::{invalid, Error, Result};

/// Vector norm together with the operator norm it induces on matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Norm {
    /// `max_j |v_j|`; induced matrix norm is the maximum absolute row sum.
    #[default]
    Max,
    /// `Σ_j |v_j|`; induced matrix norm is the maximum absolute column sum.
    Sum,
}

impl Norm {
    pub fn vector(self, v: &[f64]) -> f64 {
        match self {
            Norm::Max => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Norm::Sum => v.iter().map(|x| x.abs()).sum(),
        }
    }

    pub fn matrix(self, m: &Matrix) -> f64 {
        let n = m.dim;
        match self {
            Norm::Max => (0..n)
                .map(|r| m.row(r).iter().map(|x| x.abs()).sum::<f64>())
                .fold(0.0, f64::max),
            Norm::Sum => (0..n)
                .map(|c| (0..n).map(|r| m.get(r, c).abs()).sum::<f64>())
                .fold(0.0, f64::max),
        }
    }
}

/// Square `dim × dim` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn scalar(v: f64) -> Self {
        Matrix { dim: 1, data: vec![v] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(invalid("matrix must have at least one row"));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(invalid(format!(
                    "matrix row {r} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        let m = Matrix { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.dim).map(|r| self.get(r, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(invalid("matrix entries must be finite"))
        }
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, other: &Matrix, s: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// `out += s * self * x`
    pub fn mul_vec_acc(&self, x: &[f64], s: f64, out: &mut [f64]) {
        let n = self.dim;
        for (r, o) in out.iter_mut().enumerate().take(n) {
            let row = &self.data[r * n..(r + 1) * n];
            let dot: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            *o += s * dot;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.mul_vec_acc(x, 1.0, &mut out);
        out
    }

    /// Solves `self · y = rhs` by Gaussian elimination with partial pivoting.
    ///
    /// The matrix is declared singular when a pivot falls below
    /// `rel_pivot_tol · ‖self‖_∞`.
    pub fn solve(&self, rhs: &[f64], rel_pivot_tol: f64) -> Result<Vec<f64>> {
        let n = self.dim;
        if rhs.len() != n {
            return Err(invalid("right-hand side has the wrong length"));
        }
        let scale = Norm::Max.matrix(self);
        if scale == 0.0 {
            return Err(Error::Inconsistent("matrix is zero".into()));
        }
        let threshold = rel_pivot_tol * scale;
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let (piv, pval) = (col..n)
                .map(|r| (r, a[r * n + col].abs()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pval <= threshold {
                return Err(Error::Inconsistent(format!(
                    "matrix is numerically singular (pivot {pval:.3e} at column {col})"
                )));
            }
            if piv != col {
                for c in 0..n {
                    a.swap(col * n + c, piv * n + c);
                }
                b.swap(col, piv);
            }
            let d = a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / d;
                if f != 0.0 {
                    for c in col..n {
                        a[r * n + c] -= f * a[col * n + c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
        let mut y = vec![0.0; n];
        for r in (0..n).rev() {
            let s: f64 = (r + 1..n).map(|c| a[r * n + c] * y[c]).sum();
            y[r] = (b[r] - s) / a[r * n + r];
        }
        Ok(y)
    }
}

pub(crate) fn axpy(out: &mut [f64], s: f64, x: &[f64]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += s * v;
    }
}
