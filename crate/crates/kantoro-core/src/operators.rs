//! The sampling operators: the generalized operator `G_w` (point samples),
//! the sampling Kantorovich operator `S_w` (cell means), its shifted-grid
//! variant `S^π_w`, and the representation decomposition that writes `S_w`
//! as a weighted sum of `G_w` applied to derivatives plus a remainder of
//! order `w^{-r}`.
//!
//! Series are summed over an explicit [`EvalWindow`] in ascending `k` with
//! compensated accumulation, so results are deterministic and shifted-grid
//! comparisons are meaningful. For compactly supported kernels the window
//! is exact; for decaying kernels it is truncated with an explicit tail
//! budget (default [`DEFAULT_TAIL_BUDGET`]).

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::kernels::{Kernel, Support};
use crate::math::{abs, ceil, factorial, floor, powf, powi};
use crate::quad::{adaptive, gauss_legendre_8, QuadError};
use crate::sum::CompensatedSum;

/// Default truncation budget for decay-kernel series.
pub const DEFAULT_TAIL_BUDGET: f64 = 1e-6;

/// Refuse windows with more terms than this (would indicate an
/// unreasonably tight budget for a slowly decaying kernel).
const MAX_WINDOW_TERMS: i64 = 1 << 27;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Errors from operator evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorError {
    /// Decay order ≤ 1: the sampling series cannot be truncated with a
    /// finite tail bound.
    TruncationInfeasible { decay_order: f64 },
    /// The tail budget demands more terms than the implementation is
    /// willing to sum.
    WindowTooLarge { terms: i64 },
    /// `representation_decompose` needs derivatives up to order `r`.
    MissingDerivatives { needed: u32, got: usize },
    /// `cell_mean` needs `a < b`.
    InvalidInterval { a: f64, b: f64 },
    /// Scale `w` must be positive (and finite).
    InvalidScale { w: f64 },
    /// Quadrature for a cell mean failed to converge.
    QuadratureNonConvergence { panels: usize },
}

impl fmt::Display for OperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorError::TruncationInfeasible { decay_order } => write!(
                f,
                "series truncation infeasible: kernel decay order {decay_order} <= 1"
            ),
            OperatorError::WindowTooLarge { terms } => {
                write!(f, "summation window of {terms} terms exceeds the limit")
            }
            OperatorError::MissingDerivatives { needed, got } => {
                write!(f, "signal provides {got} derivatives, needs {needed}")
            }
            OperatorError::InvalidInterval { a, b } => {
                write!(f, "invalid cell [{a}, {b}]: needs a < b")
            }
            OperatorError::InvalidScale { w } => write!(f, "scale w = {w} must be positive"),
            OperatorError::QuadratureNonConvergence { panels } => {
                write!(f, "cell-mean quadrature did not converge ({panels} panels)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OperatorError {}

/// A signal `f` with optional derivative closures, an optional
/// antiderivative (preferred for exact cell means), and optional sup-norm
/// bounds `sup_bounds[j] = ‖f^{(j)}‖_∞` (index 0 is `f` itself; non-finite
/// entries mean "unknown").
#[derive(Clone)]
pub struct Signal {
    name: String,
    f: RealFn,
    derivatives: Vec<RealFn>,
    antiderivative: Option<RealFn>,
    sup_bounds: Option<Vec<f64>>,
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Signal")
            .field("name", &self.name)
            .field("derivatives", &self.derivatives.len())
            .field("antiderivative", &self.antiderivative.is_some())
            .field("sup_bounds", &self.sup_bounds)
            .finish()
    }
}

impl Signal {
    pub fn new<F>(name: &str, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: String::from(name),
            f: Arc::new(f),
            derivatives: Vec::new(),
            antiderivative: None,
            sup_bounds: None,
        }
    }

    /// Appends the next derivative closure (`f'`, then `f''`, …).
    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivatives.push(Arc::new(d));
        self
    }

    /// Sets an antiderivative `F` with `F' = f`; cell means then evaluate
    /// exactly as `(F(b) − F(a))/(b − a)`.
    pub fn with_antiderivative<F>(mut self, anti: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.antiderivative = Some(Arc::new(anti));
        self
    }

    /// Sets `‖f^{(j)}‖_∞` bounds, index 0 for `f` itself.
    pub fn with_sup_bounds(mut self, bounds: Vec<f64>) -> Self {
        self.sup_bounds = Some(bounds);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn derivative_count(&self) -> usize {
        self.derivatives.len()
    }

    /// Evaluates `f^{(j)}`, `j ≥ 1`, if that derivative was supplied.
    pub fn eval_derivative(&self, j: u32, x: f64) -> Option<f64> {
        if j == 0 {
            return Some(self.eval(x));
        }
        self.derivatives.get(j as usize - 1).map(|d| d(x))
    }

    pub fn has_antiderivative(&self) -> bool {
        self.antiderivative.is_some()
    }

    /// `‖f^{(j)}‖_∞` if supplied and finite.
    pub fn sup_bound(&self, j: u32) -> Option<f64> {
        self.sup_bounds
            .as_ref()
            .and_then(|b| b.get(j as usize))
            .copied()
            .filter(|v| v.is_finite())
    }

    /// The signal `f^{(j)}` as a standalone `Signal` (its own derivatives
    /// and bounds re-indexed); `None` if derivatives are missing.
    pub fn derivative_signal(&self, j: u32) -> Option<Signal> {
        if j == 0 {
            return Some(self.clone());
        }
        let idx = j as usize - 1;
        let f = self.derivatives.get(idx)?.clone();
        let derivatives = self.derivatives[idx + 1..].to_vec();
        // The (j-1)-th derivative closure is an antiderivative of f^{(j)}.
        let antiderivative = if idx == 0 {
            Some(self.f.clone())
        } else {
            Some(self.derivatives[idx - 1].clone())
        };
        let sup_bounds = self
            .sup_bounds
            .as_ref()
            .map(|b| b.get(j as usize..).map(|s| s.to_vec()).unwrap_or_default());
        Some(Signal {
            name: alloc::format!("{}^({})", self.name, j),
            f,
            derivatives,
            antiderivative,
            sup_bounds,
        })
    }

    /// The translate `g_y(x) = f(x − y)` with derivatives, antiderivative
    /// and bounds carried along.
    pub fn translate(&self, y: f64) -> Signal {
        let shift = move |g: &RealFn| {
            let g = g.clone();
            Arc::new(move |x: f64| g(x - y)) as RealFn
        };
        Signal {
            name: alloc::format!("{}(.-{y})", self.name),
            f: shift(&self.f),
            derivatives: self.derivatives.iter().map(|d| shift(d)).collect(),
            antiderivative: self.antiderivative.as_ref().map(|a| shift(a)),
            sup_bounds: self.sup_bounds.clone(),
        }
    }

    /// Consistency check used by the test suites: derivatives against
    /// central differences of the previous order (tolerance `deriv_tol`)
    /// and the antiderivative against quadrature of `f` on small
    /// intervals (tolerance `anti_tol`).
    pub fn check_consistency(
        &self,
        points: &[f64],
        deriv_tol: f64,
        anti_tol: f64,
    ) -> Result<(), String> {
        let h = 1e-5;
        for (j, d) in self.derivatives.iter().enumerate() {
            for &x in points {
                let lower = |t: f64| {
                    if j == 0 {
                        self.eval(t)
                    } else {
                        self.derivatives[j - 1](t)
                    }
                };
                let fd = (lower(x + h) - lower(x - h)) / (2.0 * h);
                if abs(fd - d(x)) > deriv_tol {
                    return Err(alloc::format!(
                        "derivative {} of {} at {x}: closure {} vs finite difference {fd}",
                        j + 1,
                        self.name,
                        d(x)
                    ));
                }
            }
        }
        if let Some(anti) = &self.antiderivative {
            for &x in points {
                let (a, b) = (x, x + 0.37);
                let exact = (anti(b) - anti(a)) / (b - a);
                let quad = adaptive(&|t| self.eval(t), a, b, 1e-12).map_err(|e| {
                    alloc::format!("quadrature failed while validating {}: {e}", self.name)
                })? / (b - a);
                if abs(exact - quad) > anti_tol {
                    return Err(alloc::format!(
                        "antiderivative of {} over [{a}, {b}]: {exact} vs quadrature {quad}",
                        self.name
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The unit-spaced sampling grid `t_k = k + δ`. Spacing is structurally 1.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShiftedGrid {
    pub offset: f64,
}

impl ShiftedGrid {
    pub fn new(offset: f64) -> Self {
        Self { offset }
    }

    #[inline]
    pub fn point(&self, k: i64) -> f64 {
        k as f64 + self.offset
    }
}

/// The active summation range for one evaluation point: all `k` with
/// `χ(wx − t_k) ≠ 0` for compact kernels, or a tail-budgeted truncation
/// for decaying kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalWindow {
    pub x: f64,
    pub w: f64,
    pub k_lo: i64,
    pub k_hi: i64,
    /// Bound on the absolute tail left out of the truncated series
    /// (zero for compact kernels).
    pub tail_budget: f64,
}

impl EvalWindow {
    /// Builds the window for a series centered at `wx − δ`.
    ///
    /// `signal_sup` scales the decay tail bound (pass 1.0 for series of
    /// the kernel alone, or `‖f‖_∞` for sampling series).
    pub fn new(
        kernel: &Kernel,
        w: f64,
        x: f64,
        grid_offset: f64,
        tail_budget: f64,
        signal_sup: f64,
    ) -> Result<Self, OperatorError> {
        if !(w > 0.0) || !w.is_finite() {
            return Err(OperatorError::InvalidScale { w });
        }
        let center = w * x - grid_offset;
        let (k_lo, k_hi, tail) = match kernel.support() {
            Support::Compact { lo, hi } => {
                (ceil(center - hi) as i64, floor(center - lo) as i64, 0.0)
            }
            Support::Decay { order: p, constant: c } => {
                if p <= 1.0 {
                    return Err(OperatorError::TruncationInfeasible { decay_order: p });
                }
                let sup = if signal_sup > 0.0 && signal_sup.is_finite() {
                    signal_sup
                } else {
                    1.0
                };
                // sup·Σ_{|m|>R} C·m^{-p} ≤ sup·2C(R-1)^{1-p}/(p-1) ≤ budget
                let radius =
                    1.0 + powf(2.0 * c * sup / (tail_budget * (p - 1.0)), 1.0 / (p - 1.0));
                (
                    ceil(center - radius) as i64,
                    floor(center + radius) as i64,
                    tail_budget,
                )
            }
        };
        if k_hi - k_lo > MAX_WINDOW_TERMS {
            return Err(OperatorError::WindowTooLarge {
                terms: k_hi - k_lo,
            });
        }
        Ok(Self {
            x,
            w,
            k_lo,
            k_hi,
            tail_budget: tail,
        })
    }
}

/// Estimated `‖f‖_∞`: the supplied bound when available, otherwise the
/// max of `|f|` over the samples in a preliminary window widened by two
/// `x`-units on each side (a documented approximation for decay kernels).
fn signal_sup_estimate(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
    grid_offset: f64,
    tail_budget: f64,
) -> Result<f64, OperatorError> {
    if let Some(b) = signal.sup_bound(0) {
        return Ok(b);
    }
    if kernel.support().is_compact() {
        return Ok(1.0); // unused for compact windows
    }
    let prelim = EvalWindow::new(kernel, w, x, grid_offset, tail_budget, 1.0)?;
    let pad = ceil(2.0 * w) as i64;
    let (lo, hi) = (prelim.k_lo - pad, prelim.k_hi + pad);
    if hi - lo > MAX_WINDOW_TERMS {
        return Err(OperatorError::WindowTooLarge { terms: hi - lo });
    }
    let mut sup: f64 = 0.0;
    for k in lo..=hi {
        sup = sup.max(abs(signal.eval((k as f64 + grid_offset) / w)));
    }
    Ok(sup.max(f64::MIN_POSITIVE))
}

/// The generalized sampling operator
/// `(G_w f)(x) = Σ_k χ(wx − k) · f(k/w)` with the default tail budget.
pub fn generalized_apply(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
) -> Result<f64, OperatorError> {
    generalized_apply_with_budget(kernel, signal, w, x, DEFAULT_TAIL_BUDGET)
}

/// As [`generalized_apply`] with an explicit truncation budget for decay
/// kernels (ignored for compact support, where the sum is exact).
pub fn generalized_apply_with_budget(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
    tail_budget: f64,
) -> Result<f64, OperatorError> {
    let sup = signal_sup_estimate(kernel, signal, w, x, 0.0, tail_budget)?;
    let window = EvalWindow::new(kernel, w, x, 0.0, tail_budget, sup)?;
    let mut acc = CompensatedSum::new();
    for k in window.k_lo..=window.k_hi {
        let chi = kernel.evaluate(w * x - k as f64);
        if chi != 0.0 {
            acc.add(chi * signal.eval(k as f64 / w));
        }
    }
    Ok(acc.value())
}

/// Mean value `(1/(b−a)) ∫_a^b f`.
///
/// Uses the antiderivative when present (exact); otherwise a single
/// 8-node Gauss–Legendre panel (exact for polynomial degree ≤ 15),
/// escalating to adaptive quadrature when the two-panel error estimate
/// exceeds 1e-10.
pub fn cell_mean(signal: &Signal, a: f64, b: f64) -> Result<f64, OperatorError> {
    if !(a < b) {
        return Err(OperatorError::InvalidInterval { a, b });
    }
    if let Some(anti) = &signal.antiderivative {
        return Ok((anti(b) - anti(a)) / (b - a));
    }
    let f = |t: f64| signal.eval(t);
    let coarse = gauss_legendre_8(&f, a, b);
    let mid = 0.5 * (a + b);
    let refined = gauss_legendre_8(&f, a, mid) + gauss_legendre_8(&f, mid, b);
    if abs(coarse - refined) <= 1e-10 {
        return Ok(refined / (b - a));
    }
    let integral = adaptive(&f, a, b, 1e-10).map_err(|e| match e {
        QuadError::NonConvergence { panels, .. } => {
            OperatorError::QuadratureNonConvergence { panels }
        }
    })?;
    Ok(integral / (b - a))
}

/// The sampling Kantorovich operator
/// `(S_w f)(x) = Σ_k χ(wx − k) · [w ∫_{k/w}^{(k+1)/w} f]`.
///
/// Same code path as [`kantorovich_shifted_apply`] with `δ = 0`, so the
/// two agree bitwise there.
pub fn kantorovich_apply(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
) -> Result<f64, OperatorError> {
    kantorovich_shifted_apply(kernel, signal, w, x, &ShiftedGrid::default())
}

/// The shifted-grid sampling Kantorovich operator
/// `(S^π_w f)(x) = Σ_k [w ∫_{t_k/w}^{t_{k+1}/w} f] · χ(wx − t_k)` over the
/// unit-spaced grid `t_k = k + δ`.
pub fn kantorovich_shifted_apply(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
    grid: &ShiftedGrid,
) -> Result<f64, OperatorError> {
    kantorovich_shifted_with_budget(kernel, signal, w, x, grid, DEFAULT_TAIL_BUDGET)
}

/// As [`kantorovich_shifted_apply`] with an explicit truncation budget.
pub fn kantorovich_shifted_with_budget(
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
    grid: &ShiftedGrid,
    tail_budget: f64,
) -> Result<f64, OperatorError> {
    let sup = signal_sup_estimate(kernel, signal, w, x, grid.offset, tail_budget)?;
    let window = EvalWindow::new(kernel, w, x, grid.offset, tail_budget, sup)?;
    let mut acc = CompensatedSum::new();
    for k in window.k_lo..=window.k_hi {
        let t_k = grid.point(k);
        let chi = kernel.evaluate(w * x - t_k);
        if chi != 0.0 {
            let mean = cell_mean(signal, t_k / w, (t_k + 1.0) / w)?;
            acc.add(chi * mean);
        }
    }
    Ok(acc.value())
}

/// Result of [`representation_decompose`]: `main_sum` is the weighted sum
/// of generalized operators of the derivatives, `remainder` is recovered
/// by subtraction (`remainder = kantorovich − main_sum`, exactly, by
/// construction), and `kantorovich` is `(S_w f)(x)` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub main_sum: f64,
    pub remainder: f64,
    pub kantorovich: f64,
}

/// Splits `(S_w f)(x)` according to the representation
/// `S_w f = Σ_{j=0}^{r-1} w^{-j}/(j+1)! · G_w f^{(j)} + R_r^w`.
///
/// Requires derivative closures up to order `r` on the signal (the r-th
/// is what the remainder bound `‖f^{(r)}‖ M_0(χ)/(r+1)! · w^{-r}` refers
/// to). The remainder is the difference of the two computed sides; the
/// inner mean-value points of its defining series are never evaluated.
pub fn representation_decompose(
    kernel: &Kernel,
    signal: &Signal,
    r: u32,
    w: f64,
    x: f64,
) -> Result<Decomposition, OperatorError> {
    if r < 1 {
        return Err(OperatorError::MissingDerivatives { needed: 1, got: 0 });
    }
    if signal.derivative_count() < r as usize {
        return Err(OperatorError::MissingDerivatives {
            needed: r,
            got: signal.derivative_count(),
        });
    }
    let mut main = CompensatedSum::new();
    for j in 0..r {
        let dj = signal
            .derivative_signal(j)
            .expect("derivative count checked above");
        let gw = generalized_apply(kernel, &dj, w, x)?;
        let factor = powi(w, -(j as i32)) / factorial(j + 1);
        main.add(factor * gw);
    }
    let main_sum = main.value();
    let kantorovich = kantorovich_apply(kernel, signal, w, x)?;
    Ok(Decomposition {
        main_sum,
        remainder: kantorovich - main_sum,
        kantorovich,
    })
}

/// Operator selector used by the analysis harness and the batch API.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    /// `G_w` (point samples).
    Generalized,
    /// `S_w` (cell means).
    Kantorovich,
    /// `S^π_w` over `t_k = k + offset`.
    KantorovichShifted { offset: f64 },
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Generalized => write!(f, "G"),
            Op::Kantorovich => write!(f, "S"),
            Op::KantorovichShifted { .. } => write!(f, "S^pi"),
        }
    }
}

/// Applies the selected operator at one point.
pub fn apply(
    op: Op,
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    x: f64,
) -> Result<f64, OperatorError> {
    match op {
        Op::Generalized => generalized_apply(kernel, signal, w, x),
        Op::Kantorovich => kantorovich_apply(kernel, signal, w, x),
        Op::KantorovichShifted { offset } => {
            kantorovich_shifted_apply(kernel, signal, w, x, &ShiftedGrid::new(offset))
        }
    }
}

/// Applies the selected operator over a batch of points. Points are
/// independent; within each point the `k`-sum order is fixed.
pub fn apply_batch(
    op: Op,
    kernel: &Kernel,
    signal: &Signal,
    w: f64,
    xs: &[f64],
) -> Result<Vec<f64>, OperatorError> {
    xs.iter().map(|&x| apply(op, kernel, signal, w, x)).collect()
}
