use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `k` of a monomial `x^k = ∏_j x_j^{k_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// Unit multi-index `e_m`.
    pub fn unit(dim: usize, m: usize) -> Self {
        let mut v = vec![0; dim];
        v[m] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|k| = k_1 + ... + k_N`
    pub fn order(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// `i • k`
    pub fn dot(&self, i: &[usize]) -> usize {
        self.0.iter().zip(i).map(|(&k, &i)| k as usize * i).sum()
    }

    /// `x^k`
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, &xv)| xv.powi(k as i32))
            .product()
    }

    /// Component index of every factor in the expanded product, e.g.
    /// `(2, 0, 1)` becomes `[0, 0, 2]`.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &k)| std::iter::repeat_n(j, k as usize))
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, k) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}
