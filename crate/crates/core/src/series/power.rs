//! Coefficients of monomials `x^k` of a truncated series.
//!
//! The coefficient of `t^l` in `x(t)^k` (written `Z_k(l)`) is the full
//! multinomial convolution: each of the `|k|` factors picks its own
//! coefficient index and the indices add up to `l`. For the bivariate
//! families the row indices add up as well.
//!
//! [`PowerEngine`] keeps every product needed by a set of multi-indices and
//! extends them one column at a time, so a recursion that fills column `n`
//! of `x` can immediately read column `n` of every `x^k`.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::series::table::CoeffGrid;
use crate::series::{AbelTable, LogTable, MultiIndex, TaylorTable};

/// Scalar `rows × cols` grid.
#[derive(Debug, Clone)]
struct ScalarGrid {
    cols: usize,
    data: Vec<f64>,
}

impl ScalarGrid {
    fn zeros(rows: usize, cols: usize) -> Self {
        ScalarGrid { cols, data: vec![0.0; rows * cols] }
    }

    fn get(&self, r: usize, i: usize) -> f64 {
        self.data[r * self.cols + i]
    }

    fn set(&mut self, r: usize, i: usize, v: f64) {
        self.data[r * self.cols + i] = v;
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// `(parent, j)` with `k = parent + e_j`; `None` for `k = 0`.
    parent: Option<(usize, usize)>,
    values: ScalarGrid,
}

/// Incrementally maintained products `x^k` on a `rows × cols` grid.
#[derive(Debug, Clone)]
pub struct PowerEngine {
    dim: usize,
    rows: usize,
    cols: usize,
    nodes: Vec<Node>,
    lookup: BTreeMap<MultiIndex, usize>,
    filled: usize,
}

impl PowerEngine {
    /// Engine for the given multi-indices (and every multi-index on their
    /// construction chains). Products are kept for rows `0..rows` and
    /// columns `0..cols`.
    pub fn new(dim: usize, indices: &[MultiIndex], rows: usize, cols: usize) -> Result<Self> {
        if dim == 0 || rows == 0 {
            return Err(invalid("power engine needs positive dimension and rows"));
        }
        let mut eng = PowerEngine {
            dim,
            rows,
            cols,
            nodes: Vec::new(),
            lookup: BTreeMap::new(),
            filled: 0,
        };
        eng.insert(&MultiIndex::zero(dim));
        for k in indices {
            if k.len() != dim {
                return Err(invalid(format!(
                    "multi-index {k} has length {}, expected {dim}",
                    k.len()
                )));
            }
            eng.insert(k);
        }
        Ok(eng)
    }

    fn insert(&mut self, k: &MultiIndex) -> usize {
        if let Some(&id) = self.lookup.get(k) {
            return id;
        }
        let parent = k.entries().iter().rposition(|&e| e > 0).map(|j| {
            let mut e = k.entries().to_vec();
            e[j] -= 1;
            (self.insert(&MultiIndex::new(e)), j)
        });
        let mut values = ScalarGrid::zeros(self.rows, self.cols);
        if parent.is_none() && self.cols > 0 {
            values.set(0, 0, 1.0);
        }
        self.nodes.push(Node { parent, values });
        let id = self.nodes.len() - 1;
        self.lookup.insert(k.clone(), id);
        id
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of columns computed so far.
    pub fn filled(&self) -> usize {
        self.filled
    }

    /// Computes column `filled()` of every product. Columns `0..=filled()` of
    /// `x` must be final; rows of `x` beyond the engine rows are ignored.
    pub(crate) fn push_column(&mut self, x: &CoeffGrid) {
        let c = self.filled;
        assert!(c < self.cols, "power engine column capacity exceeded");
        debug_assert_eq!(x.dim(), self.dim);
        let xr = x.rows().min(self.rows);
        // nodes are stored after their parents
        for id in 0..self.nodes.len() {
            let Some((parent, j)) = self.nodes[id].parent else {
                continue;
            };
            let (head, tail) = self.nodes.split_at_mut(id);
            let out = &mut tail[0].values;
            if head[parent].parent.is_none() {
                // first power: copy the component
                for rho in 0..self.rows {
                    let v = if rho < xr && c < x.cols() { x.component(rho, c, j) } else { 0.0 };
                    out.set(rho, c, v);
                }
                continue;
            }
            let a = &head[parent].values;
            for rho in 0..self.rows {
                let mut acc = 0.0;
                for r2 in 0..=rho.min(xr - 1) {
                    let r1 = rho - r2;
                    for i2 in 0..=c.min(x.cols() - 1) {
                        let xv = x.component(r2, i2, j);
                        if xv != 0.0 {
                            acc += a.get(r1, c - i2) * xv;
                        }
                    }
                }
                out.set(rho, c, acc);
            }
        }
        self.filled += 1;
    }

    /// Coefficient of `(row ρ, column l)` in `x^k`. The column must already
    /// be computed.
    pub fn coeff(&self, k: &MultiIndex, rho: usize, l: usize) -> f64 {
        let id = self.lookup[k];
        assert!(l < self.filled, "column {l} of the power table is not computed yet");
        if rho >= self.rows {
            return 0.0;
        }
        self.nodes[id].values.get(rho, l)
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        self.lookup.contains_key(k)
    }
}

fn single_power(k: &MultiIndex, grid: &CoeffGrid, rows: usize, rho: usize, l: usize) -> Result<f64> {
    if k.len() != grid.dim() {
        return Err(invalid(format!(
            "multi-index {k} has length {}, but the series has dimension {}",
            k.len(),
            grid.dim()
        )));
    }
    if l >= grid.cols() {
        return Err(invalid(format!(
            "column {l} exceeds the series order {}",
            grid.cols() - 1
        )));
    }
    let mut eng = PowerEngine::new(grid.dim(), std::slice::from_ref(k), rows, l + 1)?;
    for _ in 0..=l {
        eng.push_column(grid);
    }
    Ok(eng.coeff(k, rho, l))
}

/// `Z_k(l)`: coefficient of `t^l` in `x(t)^k`.
pub fn z_coeff(k: &MultiIndex, x: &TaylorTable, l: usize) -> Result<f64> {
    single_power(k, x.grid(), 1, 0, l)
}

/// `Z_k(ρ, l)`: coefficient of `t^{l − ρα}` in `x(t)^k` for a series in
/// `t^{i − rα}`, treating rows as formal (no reduction modulo `q`).
pub fn z_coeff_abel(k: &MultiIndex, x: &AbelTable, rho: usize, l: usize) -> Result<f64> {
    single_power(k, x.grid(), rho + 1, rho, l)
}

/// `Z_k(ρ, l)`: coefficient of `(ln t)^ρ t^l` in `x(t)^k`.
pub fn z_coeff_log(k: &MultiIndex, x: &LogTable, rho: usize, l: usize) -> Result<f64> {
    single_power(k, x.grid(), rho + 1, rho, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::AlphaExponent;
    use crate::special::binomial;

    /// Sum over every assignment of a coefficient index to each factor.
    fn brute_force(k: &MultiIndex, x: &[Vec<f64>], l: usize) -> f64 {
        fn rec(f: &[usize], x: &[Vec<f64>], left: usize) -> f64 {
            match f.split_first() {
                None => {
                    if left == 0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Some((&j, rest)) => (0..=left.min(x.len() - 1))
                    .map(|i| x[i][j] * rec(rest, x, left - i))
                    .sum(),
            }
        }
        rec(&k.factors(), x, l)
    }

    #[test]
    fn agrees_with_brute_force() {
        let x = vec![
            vec![0.5, -1.0, 2.0],
            vec![1.5, 0.25, -0.75],
            vec![-2.0, 3.0, 0.1],
            vec![0.3, 0.0, 1.0],
        ];
        let t = TaylorTable::from_coeffs(x.clone()).unwrap();
        for k in [vec![2, 0, 1], vec![0, 3, 0], vec![1, 1, 1], vec![0, 0, 0], vec![4, 0, 0]] {
            let k = MultiIndex::new(k);
            for l in 0..=3 {
                let want = brute_force(&k, &x, l);
                let got = z_coeff(&k, &t, l).unwrap();
                assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()), "{k} {l}");
            }
        }
    }

    #[test]
    fn binomial_power_of_affine() {
        // (1 + 2t)^5
        let t = TaylorTable::from_scalars(&[1.0, 2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let k = MultiIndex::new(vec![5]);
        for l in 0..=5 {
            let want = binomial(5, l) * 2f64.powi(l as i32);
            assert!((z_coeff(&k, &t, l).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn bivariate_rows_add() {
        // x = 1 + t^{1-α}: x^2 = 1 + 2 t^{1-α} + t^{2-2α}
        let a = AlphaExponent::irrational(0.4).unwrap();
        let mut x = AbelTable::irrational(1, a, 2, 2).unwrap();
        x.set(0, 0, &[1.0]).unwrap();
        x.set(1, 1, &[1.0]).unwrap();
        let k = MultiIndex::new(vec![2]);
        assert_eq!(z_coeff_abel(&k, &x, 0, 0).unwrap(), 1.0);
        assert_eq!(z_coeff_abel(&k, &x, 1, 1).unwrap(), 2.0);
        assert_eq!(z_coeff_abel(&k, &x, 2, 2).unwrap(), 1.0);
        assert_eq!(z_coeff_abel(&k, &x, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let t = TaylorTable::from_scalars(&[1.0, 1.0]).unwrap();
        assert!(z_coeff(&MultiIndex::new(vec![1, 1]), &t, 1).is_err());
        assert!(z_coeff(&MultiIndex::new(vec![1]), &t, 2).is_err());
    }
}
