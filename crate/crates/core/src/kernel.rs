//! Double power-series kernels.
//!
//! A linear kernel is `K(t, s) = Σ_{i,j} K_{ij} t^i s^j` with `N × N`
//! matrix coefficients. A nonlinear kernel is
//! `K(t, s, x) = Σ_{i,j,k} K_{ijk} t^i s^j x^k` with vector coefficients.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::linalg::{axpy, Matrix};
use crate::series::MultiIndex;

/// `Σ_{i,j} K_{ij} t^i s^j` with only the stored coefficients nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearKernelExpansion {
    dim: usize,
    terms: BTreeMap<(usize, usize), Matrix>,
}

impl LinearKernelExpansion {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        LinearKernelExpansion { dim, terms: BTreeMap::new() }
    }

    /// Scalar kernel from `(i, j, K_ij)` triples.
    pub fn scalar(terms: &[(usize, usize, f64)]) -> Result<Self> {
        let mut k = Self::new(1);
        for &(i, j, v) in terms {
            k.add(i, j, &Matrix::scalar(v))?;
        }
        Ok(k)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `m` to the coefficient of `t^i s^j`.
    pub fn add(&mut self, i: usize, j: usize, m: &Matrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(invalid(format!(
                "kernel coefficient ({i}, {j}) is {}x{0}, expected {1}x{1}",
                m.dim(),
                self.dim
            )));
        }
        m.check_finite()?;
        self.terms
            .entry((i, j))
            .or_insert_with(|| Matrix::zeros(self.dim))
            .add_scaled(m, 1.0);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Matrix> {
        self.terms.get(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Matrix)> {
        self.terms.iter().map(|(&(i, j), m)| (i, j, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Matrix::is_zero)
    }

    /// Largest `i + j` among stored coefficients.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    /// Keeps only coefficients with `i + j ≤ degree`.
    pub fn truncated(&self, degree: usize) -> Self {
        LinearKernelExpansion {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j <= degree)
                .map(|(&k, m)| (k, m.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, t: f64, s: f64) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        for (&(i, j), m) in &self.terms {
            out.add_scaled(m, t.powi(i as i32) * s.powi(j as i32));
        }
        out
    }

    /// `K(t, s) x`
    pub fn apply(&self, t: f64, s: f64, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (&(i, j), m) in &self.terms {
            m.mul_vec_acc(x, t.powi(i as i32) * s.powi(j as i32), &mut out);
        }
        out
    }

    /// The same kernel written as `Σ K_{ij} e_m t^i s^j x_m`.
    pub fn to_nonlinear(&self) -> NonlinearKernelExpansion {
        let mut out = NonlinearKernelExpansion::new(self.dim);
        for (&(i, j), m) in &self.terms {
            for col in 0..self.dim {
                let v = m.column(col);
                if v.iter().any(|&x| x != 0.0) {
                    out.terms.push(NonlinearTerm {
                        i,
                        j,
                        k: MultiIndex::unit(self.dim, col),
                        value: v,
                    });
                }
            }
        }
        out
    }
}

/// One coefficient `K_{ijk} t^i s^j x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearTerm {
    pub i: usize,
    pub j: usize,
    pub k: MultiIndex,
    pub value: Vec<f64>,
}

/// `Σ K_{ijk} t^i s^j x^k` stored as a list of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearKernelExpansion {
    dim: usize,
    terms: Vec<NonlinearTerm>,
}

impl NonlinearKernelExpansion {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        NonlinearKernelExpansion { dim, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, i: usize, j: usize, k: MultiIndex, value: Vec<f64>) -> Result<()> {
        if k.len() != self.dim || value.len() != self.dim {
            return Err(invalid(format!(
                "term (i={i}, j={j}, k={k}) does not match dimension {}",
                self.dim
            )));
        }
        if !value.iter().all(|x| x.is_finite()) {
            return Err(invalid("kernel coefficients must be finite"));
        }
        self.terms.push(NonlinearTerm { i, j, k, value });
        Ok(())
    }

    pub fn terms(&self) -> &[NonlinearTerm] {
        &self.terms
    }

    /// Distinct multi-indices appearing in the kernel.
    pub fn multi_indices(&self) -> Vec<MultiIndex> {
        let mut ks: Vec<MultiIndex> = self.terms.iter().map(|t| t.k.clone()).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// Largest `|k|`.
    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.k.order()).max().unwrap_or(0)
    }

    pub fn eval(&self, t: f64, s: f64, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for term in &self.terms {
            let w = t.powi(term.i as i32) * s.powi(term.j as i32) * term.k.monomial(x);
            axpy(&mut out, w, &term.value);
        }
        out
    }
}
