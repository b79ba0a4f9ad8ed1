//! Coefficient containers for the three series families
//!
//! * [`TaylorTable`]: `Σ_i t^i X_i`
//! * [`AbelTable`]: `Σ_{r,i} t^{i − rα} X_{r,i}` over admissible `i > rα − 1`
//! * [`LogTable`]: `Σ_{r,i} (ln t)^r t^i X_{r,i}`
//!
//! All coefficients are `N`-vectors stored densely on a `(row, column)` grid.

use crate::error::{invalid, Error, Result};
use crate::linalg::Norm;
use crate::series::AlphaExponent;

/// Dense grid of `dim`-vectors indexed by `(row, column)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CoeffGrid {
    dim: usize,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CoeffGrid {
    pub(crate) fn zeros(dim: usize, rows: usize, cols: usize) -> Self {
        CoeffGrid { dim, rows, cols, data: vec![0.0; dim * rows * cols] }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn rows(&self) -> usize {
        self.rows
    }

    pub(crate) fn cols(&self) -> usize {
        self.cols
    }

    fn offset(&self, r: usize, i: usize) -> usize {
        debug_assert!(r < self.rows && i < self.cols);
        (r * self.cols + i) * self.dim
    }

    pub(crate) fn get(&self, r: usize, i: usize) -> &[f64] {
        let o = self.offset(r, i);
        &self.data[o..o + self.dim]
    }

    pub(crate) fn try_get(&self, r: usize, i: usize) -> Option<&[f64]> {
        (r < self.rows && i < self.cols).then(|| self.get(r, i))
    }

    pub(crate) fn get_mut(&mut self, r: usize, i: usize) -> &mut [f64] {
        let o = self.offset(r, i);
        &mut self.data[o..o + self.dim]
    }

    pub(crate) fn component(&self, r: usize, i: usize, j: usize) -> f64 {
        self.data[self.offset(r, i) + j]
    }

    pub(crate) fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Copy of the sub-grid `rows × cols` (both must not exceed the current extent).
    pub(crate) fn cropped(&self, rows: usize, cols: usize) -> CoeffGrid {
        let mut out = CoeffGrid::zeros(self.dim, rows, cols);
        for r in 0..rows {
            for i in 0..cols {
                out.get_mut(r, i).copy_from_slice(self.get(r, i));
            }
        }
        out
    }
}

fn check_vector(dim: usize, v: &[f64]) -> Result<()> {
    if v.len() != dim {
        return Err(invalid(format!(
            "coefficient has {} components, expected {dim}",
            v.len()
        )));
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err(invalid("coefficients must be finite"));
    }
    Ok(())
}

/// Sums `(exponent, weight, coefficient)` terms in descending exponent order.
fn accumulate_descending(dim: usize, mut terms: Vec<(f64, f64, &[f64])>) -> Vec<f64> {
    terms.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out = vec![0.0; dim];
    for (_, w, c) in terms {
        for (o, x) in out.iter_mut().zip(c) {
            *o += w * x;
        }
    }
    out
}

/// Truncated power series `Σ_{i=0}^{order} t^i X_i` with `X_i ∈ ℝ^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorTable {
    grid: CoeffGrid,
}

impl TaylorTable {
    pub fn zeros(dim: usize, order: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        TaylorTable { grid: CoeffGrid::zeros(dim, 1, order + 1) }
    }

    pub fn from_coeffs(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let dim = coeffs
            .first()
            .map(|c| c.len())
            .ok_or_else(|| invalid("a Taylor table needs at least one coefficient"))?;
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        let mut t = TaylorTable::zeros(dim, coeffs.len() - 1);
        for (i, c) in coeffs.iter().enumerate() {
            t.set(i, c)?;
        }
        Ok(t)
    }

    /// Scalar (`N = 1`) series from its coefficients.
    pub fn from_scalars(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| vec![c]).collect())
    }

    pub(crate) fn from_grid(grid: CoeffGrid) -> Self {
        debug_assert_eq!(grid.rows(), 1);
        TaylorTable { grid }
    }

    pub(crate) fn grid(&self) -> &CoeffGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn order(&self) -> usize {
        self.grid.cols() - 1
    }

    /// `X_i`; panics when `i > order`.
    pub fn coeff(&self, i: usize) -> &[f64] {
        self.grid.get(0, i)
    }

    /// `X_i`, or `None` past the truncation order.
    pub fn get(&self, i: usize) -> Option<&[f64]> {
        self.grid.try_get(0, i)
    }

    pub fn set(&mut self, i: usize, value: &[f64]) -> Result<()> {
        if i > self.order() {
            return Err(invalid(format!("index {i} exceeds order {}", self.order())));
        }
        check_vector(self.dim(), value)?;
        self.grid.get_mut(0, i).copy_from_slice(value);
        Ok(())
    }

    pub(crate) fn coeff_mut(&mut self, i: usize) -> &mut [f64] {
        self.grid.get_mut(0, i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[f64])> {
        (0..=self.order()).map(move |i| (i, self.coeff(i)))
    }

    /// Sequence of `‖X_i‖`.
    pub fn norms(&self, norm: Norm) -> Vec<f64> {
        self.iter().map(|(_, c)| norm.vector(c)).collect()
    }

    /// The first `order + 1` coefficients.
    pub fn truncated(&self, order: usize) -> Result<TaylorTable> {
        if order > self.order() {
            return Err(invalid(format!(
                "cannot truncate order {} to the larger order {order}",
                self.order()
            )));
        }
        Ok(TaylorTable { grid: self.grid.cropped(1, order + 1) })
    }

    /// Partial sum at `t ≥ 0`, accumulated from the highest power down (Horner).
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "Taylor series is evaluated on t >= 0, got t = {t}"
            )));
        }
        let mut acc = vec![0.0; self.dim()];
        for i in (0..=self.order()).rev() {
            for (a, c) in acc.iter_mut().zip(self.coeff(i)) {
                *a = *a * t + c;
            }
        }
        Ok(acc)
    }
}

/// Series in the powers `t^{i − rα}`.
///
/// For rational `α = p/q` the rows are `r = 0..q−1`; for irrational `α`
/// the rows are `r = 0..=rmax`. Entries violating `i > rα − 1` are held at
/// zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelTable {
    alpha: AlphaExponent,
    grid: CoeffGrid,
}

impl AbelTable {
    pub fn rational(dim: usize, alpha: AlphaExponent, order: usize) -> Result<Self> {
        let (_, q) = alpha
            .as_rational()
            .ok_or_else(|| invalid("expected a rational alpha"))?;
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        Ok(AbelTable { alpha, grid: CoeffGrid::zeros(dim, q as usize, order + 1) })
    }

    pub fn irrational(dim: usize, alpha: AlphaExponent, order: usize, rmax: usize) -> Result<Self> {
        if alpha.is_rational() {
            return Err(invalid("expected an irrational alpha"));
        }
        if dim == 0 {
            return Err(invalid("dimension must be positive"));
        }
        Ok(AbelTable { alpha, grid: CoeffGrid::zeros(dim, rmax + 1, order + 1) })
    }

    /// Zero table with the row layout implied by `alpha`; `rmax` only
    /// matters for irrational `alpha`.
    pub fn zeros(dim: usize, alpha: AlphaExponent, order: usize, rmax: usize) -> Result<Self> {
        if alpha.is_rational() {
            Self::rational(dim, alpha, order)
        } else {
            Self::irrational(dim, alpha, order, rmax)
        }
    }

    /// Embeds an analytic series into row `r = 0`.
    pub fn from_taylor(alpha: AlphaExponent, xi: &TaylorTable, rmax: usize) -> Result<Self> {
        let mut t = Self::zeros(xi.dim(), alpha, xi.order(), rmax)?;
        for (i, c) in xi.iter() {
            t.set(0, i, c)?;
        }
        Ok(t)
    }

    pub(crate) fn from_grid(alpha: AlphaExponent, grid: CoeffGrid) -> Self {
        AbelTable { alpha, grid }
    }

    pub(crate) fn grid(&self) -> &CoeffGrid {
        &self.grid
    }

    pub fn alpha(&self) -> AlphaExponent {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn order(&self) -> usize {
        self.grid.cols() - 1
    }

    /// Largest stored row index.
    pub fn rmax(&self) -> usize {
        self.grid.rows() - 1
    }

    pub fn exponent(&self, r: usize, i: usize) -> f64 {
        i as f64 - r as f64 * self.alpha.value()
    }

    pub fn is_admissible(&self, r: usize, i: usize) -> bool {
        self.alpha.admissible(r, i)
    }

    /// `X_{r,i}`, or `None` outside the stored bounds.
    pub fn coeff(&self, r: usize, i: usize) -> Option<&[f64]> {
        self.grid.try_get(r, i)
    }

    pub fn set(&mut self, r: usize, i: usize, value: &[f64]) -> Result<()> {
        if r > self.rmax() || i > self.order() {
            return Err(invalid(format!(
                "index (r={r}, i={i}) outside rows 0..={} and columns 0..={}",
                self.rmax(),
                self.order()
            )));
        }
        check_vector(self.dim(), value)?;
        if !self.is_admissible(r, i) && value.iter().any(|&x| x != 0.0) {
            return Err(invalid(format!(
                "term t^({}) with r={r}, i={i} violates i > r*alpha - 1",
                self.alpha.exponent_label(r, i)
            )));
        }
        self.grid.get_mut(r, i).copy_from_slice(value);
        Ok(())
    }

    /// Admissible `(r, i, X_{r,i})` triples.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &[f64])> {
        let cols = self.grid.cols();
        (0..self.grid.rows())
            .flat_map(move |r| (0..cols).map(move |i| (r, i)))
            .filter(|&(r, i)| self.is_admissible(r, i))
            .map(|(r, i)| (r, i, self.grid.get(r, i)))
    }

    /// Row `r = 0` as a Taylor table.
    pub fn analytic_row(&self) -> TaylorTable {
        let mut t = TaylorTable::zeros(self.dim(), self.order());
        for i in 0..=self.order() {
            t.coeff_mut(i).copy_from_slice(self.grid.get(0, i));
        }
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.grid.max_abs()
    }

    /// Partial sum at `t > 0`, accumulated in descending exponent order.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "series in t^(i - r*alpha) needs t > 0, got t = {t}"
            )));
        }
        let ln_t = t.ln();
        let terms = self
            .iter()
            .map(|(r, i, c)| {
                let e = self.exponent(r, i);
                (e, (e * ln_t).exp(), c)
            })
            .collect();
        Ok(accumulate_descending(self.dim(), terms))
    }

    /// Limit of the partial sum as `t → 0⁺`; fails if a term with negative
    /// exponent is present.
    pub fn evaluate_at_origin(&self) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        for (r, i, c) in self.iter() {
            if c.iter().all(|&x| x == 0.0) {
                continue;
            }
            let e = self.exponent(r, i);
            if e < 0.0 {
                return Err(Error::Domain(format!(
                    "term t^({}) is unbounded at t = 0",
                    self.alpha.exponent_label(r, i)
                )));
            }
            if r == 0 && i == 0 {
                out.copy_from_slice(c);
            }
        }
        Ok(out)
    }
}

/// Formal coefficients `W_{r,i}` of `Σ_{r≥0} Σ_i t^{i − rα} W_{r,i}` with
/// unbounded row index, produced by running the irrational-α recursion
/// with a rational `α`. Folding regroups rows `r + mq` into residue row `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalAbelTable {
    alpha: AlphaExponent,
    grid: CoeffGrid,
}

impl FormalAbelTable {
    pub fn zeros(dim: usize, alpha: AlphaExponent, order: usize, rmax: usize) -> Self {
        FormalAbelTable { alpha, grid: CoeffGrid::zeros(dim, rmax + 1, order + 1) }
    }

    pub(crate) fn from_grid(alpha: AlphaExponent, grid: CoeffGrid) -> Self {
        FormalAbelTable { alpha, grid }
    }

    pub(crate) fn grid(&self) -> &CoeffGrid {
        &self.grid
    }

    pub(crate) fn grid_mut(&mut self) -> &mut CoeffGrid {
        &mut self.grid
    }

    pub fn alpha(&self) -> AlphaExponent {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn order(&self) -> usize {
        self.grid.cols() - 1
    }

    pub fn rmax(&self) -> usize {
        self.grid.rows() - 1
    }

    pub fn coeff(&self, r: usize, i: usize) -> Option<&[f64]> {
        self.grid.try_get(r, i)
    }

    /// Largest `‖W_{ρ+mq, n+mp}‖_∞` over `ρ < q`, `n ≤ order`; zero when
    /// the slice lies outside the stored extent.
    pub fn fold_increment(&self, m: usize, order: usize) -> f64 {
        let Some((p, q)) = self.alpha.as_rational() else {
            return 0.0;
        };
        let (p, q) = (p as usize, q as usize);
        let mut inc: f64 = 0.0;
        for rho in 0..q {
            for n in 0..=order {
                if let Some(c) = self.grid.try_get(rho + m * q, n + m * p) {
                    inc = inc.max(Norm::Max.vector(c));
                }
            }
        }
        inc
    }

    /// `X_{ρ,n} = Σ_{m < terms} W_{ρ+mq, n+mp}` for `ρ < q`, `n ≤ order`.
    pub fn fold(&self, order: usize, terms: usize) -> Result<AbelTable> {
        let (p, q) = self
            .alpha
            .as_rational()
            .ok_or_else(|| Error::Unsupported("folding needs a rational alpha".into()))?;
        let (p, q) = (p as usize, q as usize);
        let mut out = AbelTable::rational(self.dim(), self.alpha, order)?;
        for rho in 0..q {
            for n in 0..=order {
                if !self.alpha.admissible(rho, n) {
                    continue;
                }
                let mut acc = vec![0.0; self.dim()];
                for m in (0..terms).rev() {
                    if let Some(c) = self.grid.try_get(rho + m * q, n + m * p) {
                        for (a, x) in acc.iter_mut().zip(c) {
                            *a += x;
                        }
                    }
                }
                out.grid.get_mut(rho, n).copy_from_slice(&acc);
            }
        }
        Ok(out)
    }
}

/// Series in `(ln t)^r t^i`, `0 ≤ r ≤ rmax`, `0 ≤ i ≤ order`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogTable {
    grid: CoeffGrid,
}

impl LogTable {
    pub fn zeros(dim: usize, order: usize, rmax: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        LogTable { grid: CoeffGrid::zeros(dim, rmax + 1, order + 1) }
    }

    pub fn from_taylor(xi: &TaylorTable, rmax: usize) -> Self {
        let mut t = LogTable::zeros(xi.dim(), xi.order(), rmax);
        for (i, c) in xi.iter() {
            t.grid.get_mut(0, i).copy_from_slice(c);
        }
        t
    }

    pub(crate) fn from_grid(grid: CoeffGrid) -> Self {
        LogTable { grid }
    }

    pub(crate) fn grid(&self) -> &CoeffGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn order(&self) -> usize {
        self.grid.cols() - 1
    }

    pub fn rmax(&self) -> usize {
        self.grid.rows() - 1
    }

    pub fn coeff(&self, r: usize, i: usize) -> Option<&[f64]> {
        self.grid.try_get(r, i)
    }

    pub fn set(&mut self, r: usize, i: usize, value: &[f64]) -> Result<()> {
        if r > self.rmax() || i > self.order() {
            return Err(invalid(format!(
                "index (r={r}, i={i}) outside rows 0..={} and columns 0..={}",
                self.rmax(),
                self.order()
            )));
        }
        check_vector(self.dim(), value)?;
        self.grid.get_mut(r, i).copy_from_slice(value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &[f64])> {
        let cols = self.grid.cols();
        (0..self.grid.rows())
            .flat_map(move |r| (0..cols).map(move |i| (r, i)))
            .map(|(r, i)| (r, i, self.grid.get(r, i)))
    }

    pub fn analytic_row(&self) -> TaylorTable {
        TaylorTable::from_grid(self.grid.cropped(1, self.grid.cols()))
    }

    pub fn max_abs(&self) -> f64 {
        self.grid.max_abs()
    }

    /// Partial sum at `t > 0`. Terms are accumulated in descending order of
    /// the power of `t`, then of the power of `ln t`.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "series in (ln t)^r t^i needs t > 0, got t = {t}"
            )));
        }
        let ln_t = t.ln();
        let rows = self.grid.rows() as f64;
        let terms = self
            .iter()
            .map(|(r, i, c)| {
                let key = i as f64 + r as f64 / (rows + 1.0);
                (key, ln_t.powi(r as i32) * t.powi(i as i32), c)
            })
            .collect();
        Ok(accumulate_descending(self.dim(), terms))
    }

    /// Limit as `t → 0⁺`; fails if a nonzero `(ln t)^r` term with `i = 0`,
    /// `r ≥ 1` is present.
    pub fn evaluate_at_origin(&self) -> Result<Vec<f64>> {
        for r in 1..self.grid.rows() {
            if self.grid.get(r, 0).iter().any(|&x| x != 0.0) {
                return Err(Error::Domain(format!(
                    "term (ln t)^{r} is unbounded at t = 0"
                )));
            }
        }
        Ok(self.grid.get(0, 0).to_vec())
    }
}

/// Any of the three series families.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Taylor(TaylorTable),
    Abel(AbelTable),
    Log(LogTable),
}

impl Series {
    pub fn dim(&self) -> usize {
        match self {
            Series::Taylor(t) => t.dim(),
            Series::Abel(t) => t.dim(),
            Series::Log(t) => t.dim(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Series::Taylor(t) => t.order(),
            Series::Abel(t) => t.order(),
            Series::Log(t) => t.order(),
        }
    }

    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        match self {
            Series::Taylor(s) => s.evaluate(t),
            Series::Abel(s) => s.evaluate(t),
            Series::Log(s) => s.evaluate(t),
        }
    }

    pub fn evaluate_at_origin(&self) -> Result<Vec<f64>> {
        match self {
            Series::Taylor(s) => s.evaluate(0.0),
            Series::Abel(s) => s.evaluate_at_origin(),
            Series::Log(s) => s.evaluate_at_origin(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            Series::Taylor(s) => s.grid().max_abs(),
            Series::Abel(s) => s.max_abs(),
            Series::Log(s) => s.max_abs(),
        }
    }

    /// Rows `(r, i, exponent label, coefficient)` in storage order.
    pub fn entries(&self) -> Vec<(usize, usize, String, Vec<f64>)> {
        match self {
            Series::Taylor(s) => s
                .iter()
                .map(|(i, c)| (0, i, i.to_string(), c.to_vec()))
                .collect(),
            Series::Abel(s) => s
                .iter()
                .map(|(r, i, c)| (r, i, s.alpha().exponent_label(r, i), c.to_vec()))
                .collect(),
            Series::Log(s) => s
                .iter()
                .map(|(r, i, c)| {
                    let label = if r == 0 { i.to_string() } else { format!("{i};ln^{r}") };
                    (r, i, label, c.to_vec())
                })
                .collect(),
        }
    }

    /// Adds `delta` to coefficient `(r, i)` component `j`.
    pub fn perturb(&mut self, r: usize, i: usize, j: usize, delta: f64) -> Result<()> {
        let grid = match self {
            Series::Taylor(s) => &mut s.grid,
            Series::Abel(s) => &mut s.grid,
            Series::Log(s) => &mut s.grid,
        };
        if r >= grid.rows() || i >= grid.cols() || j >= grid.dim() {
            return Err(invalid(format!("no coefficient ({r}, {i}) component {j}")));
        }
        grid.get_mut(r, i)[j] += delta;
        Ok(())
    }
}
