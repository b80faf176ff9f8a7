//! Kernels for the sampling series: the `Kernel` abstraction, central
//! B-splines, the classical band-limited kernels, spline combinations,
//! discrete moment computations, and certification of the assumptions a
//! kernel must satisfy (partition of unity, finite absolute moments, and
//! the vanishing-moment condition that controls the approximation order).
//!
//! A kernel `χ` must be integrable and locally bounded at the origin,
//! sum to one over the integer translates (`Σ_k χ(u−k) = 1` for every
//! `u`), and have a finite discrete absolute moment of some positive
//! order. The discrete moments are
//!
//! * `m_β(χ, u) = Σ_k χ(u−k)(u−k)^β` (signed, pointwise in `u`), and
//! * `M_β(χ) = sup_u Σ_k |χ(u−k)|·|u−k|^β` (absolute).
//!
//! A kernel is *certified at order `r`* when `m_j(χ, ·) ≡ 0` for
//! `j = 1, …, r−1`; that is the hypothesis under which the generalized
//! sampling operator reproduces polynomials of degree `r−1` and converges
//! at rate `w^{-r}`. The equivalent Fourier-side criterion (vanishing of
//! `χ̂^{(j)}` at the points `2πk`) is implemented as an independent check.

mod bspline;
mod classical;
mod spline_combination;

pub use bspline::{eval_bspline, CentralBSpline, MAX_BSPLINE_ORDER};
pub use classical::{compute_jackson_norm, ClassicalKernel, ClassicalKind};
pub use spline_combination::SplineCombinationKernel;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::math::{abs, ceil, floor, hypot, powf, powi};
use crate::quad::{adaptive_segmented, QuadError};
use crate::sum::CompensatedSum;

/// Tail target for truncating moment series of decaying kernels.
const MOMENT_TAIL: f64 = 1e-12;

/// Grid size for the sup in [`absolute_moment`] (augmented with the
/// kernel's knot fractions, where the piecewise-polynomial sup can sit).
const ABS_MOMENT_GRID: usize = 1001;

/// Support metadata of a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `evaluate(u) = 0` for `u` outside `[lo, hi]`.
    Compact { lo: f64, hi: f64 },
    /// `|evaluate(u)| ≤ constant · |u|^{-order}` for `|u| ≥ 1`.
    Decay { order: f64, constant: f64 },
}

impl Support {
    pub fn is_compact(&self) -> bool {
        matches!(self, Support::Compact { .. })
    }
}

/// Errors from kernel construction and moment computations.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    /// B-spline order outside `1..=max`.
    InvalidOrder { order: u32, max: u32 },
    /// A constructor precondition was violated.
    InvalidParameter { what: &'static str },
    /// The requested moment series does not converge absolutely: the
    /// kernel decays like `|u|^{-p}` with `p ≤ β + 1`.
    DivergentMoment { beta: f64, decay_order: f64 },
    /// Adaptive quadrature failed to reach its tolerance.
    QuadratureNonConvergence { what: &'static str, panels: usize },
    /// The operation needs a compactly supported kernel (the Fourier
    /// criterion integrates over the support).
    NonCompactSupport { what: &'static str },
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::InvalidOrder { order, max } => {
                write!(f, "invalid B-spline order {order}: must be in 1..={max}")
            }
            KernelError::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            KernelError::DivergentMoment { beta, decay_order } => write!(
                f,
                "moment of order {beta} diverges for decay order {decay_order} (needs p > β+1)"
            ),
            KernelError::QuadratureNonConvergence { what, panels } => {
                write!(f, "quadrature for {what} did not converge ({panels} panels)")
            }
            KernelError::NonCompactSupport { what } => {
                write!(f, "{what} requires a compactly supported kernel")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KernelError {}

#[derive(Debug, Clone, PartialEq)]
enum KernelKind {
    BSpline(CentralBSpline),
    Classical(ClassicalKernel),
    SplineCombination(SplineCombinationKernel),
}

/// An evaluable kernel with support metadata and an optional record of the
/// highest vanishing-moment order verified so far.
///
/// Kernels are immutable after construction; `evaluate` and every moment
/// operation are pure, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    kind: KernelKind,
    name: String,
    moment_order_certified: Option<u32>,
}

impl Kernel {
    /// Central B-spline kernel `M_n`.
    pub fn bspline(order: u32) -> Result<Self, KernelError> {
        let s = CentralBSpline::new(order)?;
        Ok(Self {
            kind: KernelKind::BSpline(s),
            name: format!("bspline{order}"),
            moment_order_certified: None,
        })
    }

    /// One of the classical band-limited kernels.
    pub fn classical(kind: ClassicalKind) -> Result<Self, KernelError> {
        let name = match kind {
            ClassicalKind::Fejer => String::from("fejer"),
            ClassicalKind::ValleePoussin => String::from("vallee_poussin"),
            ClassicalKind::SincProduct => String::from("sinc_product"),
            ClassicalKind::Jackson { k, alpha } => format!("jackson_k{k}_a{alpha}"),
        };
        Ok(Self {
            kind: KernelKind::Classical(ClassicalKernel::new(kind)?),
            name,
            moment_order_certified: None,
        })
    }

    /// Wraps a spline combination (default name `chi{r}`).
    pub fn from_spline_combination(k: SplineCombinationKernel) -> Self {
        let name = format!("chi{}", k.spline_order());
        Self {
            kind: KernelKind::SplineCombination(k),
            name,
            moment_order_certified: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = String::from(name);
        self
    }

    /// Records a verified vanishing-moment order (used by the builder and
    /// by callers that ran [`check_moment_condition`] themselves).
    pub fn with_moment_certification(mut self, r: u32) -> Self {
        self.moment_order_certified = Some(r);
        self
    }

    /// Highest `r` for which the vanishing-moment condition has been
    /// verified, if any.
    pub fn moment_order_certified(&self) -> Option<u32> {
        self.moment_order_certified
    }

    #[inline]
    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.kind {
            KernelKind::BSpline(k) => k.evaluate(x),
            KernelKind::Classical(k) => k.evaluate(x),
            KernelKind::SplineCombination(k) => k.evaluate(x),
        }
    }

    pub fn support(&self) -> Support {
        match &self.kind {
            KernelKind::BSpline(k) => k.support(),
            KernelKind::Classical(k) => k.support(),
            KernelKind::SplineCombination(k) => k.support(),
        }
    }

    /// Knot locations for piecewise-polynomial kernels, `None` otherwise.
    pub fn knots(&self) -> Option<Vec<f64>> {
        match &self.kind {
            KernelKind::BSpline(k) => Some(k.knots()),
            KernelKind::SplineCombination(k) => Some(k.knots()),
            KernelKind::Classical(_) => None,
        }
    }

    /// The underlying spline combination, when the kernel is one.
    pub fn as_spline_combination(&self) -> Option<&SplineCombinationKernel> {
        match &self.kind {
            KernelKind::SplineCombination(k) => Some(k),
            _ => None,
        }
    }

    /// The underlying B-spline, when the kernel is one.
    pub fn as_bspline(&self) -> Option<&CentralBSpline> {
        match &self.kind {
            KernelKind::BSpline(k) => Some(k),
            _ => None,
        }
    }

    /// The underlying classical kernel, when the kernel is one.
    pub fn as_classical(&self) -> Option<&ClassicalKernel> {
        match &self.kind {
            KernelKind::Classical(k) => Some(k),
            _ => None,
        }
    }
}

/// Builds one of the classical kernels, resolving the Jackson
/// normalization by quadrature.
pub fn make_classical_kernel(kind: ClassicalKind) -> Result<Kernel, KernelError> {
    Kernel::classical(kind)
}

/// Summation window `k ∈ [k_lo, k_hi]` for a series centered at `u`:
/// exact for compact support, tail-bounded for decaying kernels.
fn moment_window(support: Support, u: f64, beta: f64, tail: f64) -> Result<(i64, i64), KernelError> {
    match support {
        Support::Compact { lo, hi } => {
            Ok((ceil(u - hi) as i64, floor(u - lo) as i64))
        }
        Support::Decay { order: p, constant: c } => {
            if p <= beta + 1.0 {
                return Err(KernelError::DivergentMoment {
                    beta,
                    decay_order: p,
                });
            }
            // Σ_{|m|>R} C·m^{β-p} ≤ 2C (R-1)^{β-p+1}/(p-β-1) ≤ tail.
            let expo = p - beta - 1.0;
            let radius = 1.0 + powf(2.0 * c / (tail * expo), 1.0 / expo);
            Ok((ceil(u - radius) as i64, floor(u + radius) as i64))
        }
    }
}

/// Discrete moment `m_j(χ, u) = Σ_k χ(u−k)(u−k)^j`.
///
/// Exact (finite sum) for compact support; truncated with tail ≤ 1e-12
/// for decaying kernels. Fails with `DivergentMoment` when the decay
/// order does not exceed `j + 1`.
pub fn discrete_moment(kernel: &Kernel, j: u32, u: f64) -> Result<f64, KernelError> {
    let (k_lo, k_hi) = moment_window(kernel.support(), u, j as f64, MOMENT_TAIL)?;
    let mut acc = CompensatedSum::new();
    for k in k_lo..=k_hi {
        let t = u - k as f64;
        let chi = kernel.evaluate(t);
        if chi != 0.0 {
            acc.add(chi * powi(t, j as i32));
        }
    }
    Ok(acc.value())
}

/// Discrete absolute moment `M_β(χ) = sup_u Σ_k |χ(u−k)|·|u−k|^β`.
///
/// The inner sum is 1-periodic in `u`, so the sup is taken over a dense
/// grid of `[0, 1)` augmented with the fractional parts of the kernel's
/// knots (for piecewise-polynomial kernels the sup sits at critical
/// points; knots plus a 1001-point grid bound it adequately).
pub fn absolute_moment(kernel: &Kernel, beta: f64) -> Result<f64, KernelError> {
    if !(beta >= 0.0) {
        return Err(KernelError::InvalidParameter {
            what: "beta must be nonnegative",
        });
    }
    let support = kernel.support();
    let mut grid: Vec<f64> = (0..ABS_MOMENT_GRID)
        .map(|i| i as f64 / ABS_MOMENT_GRID as f64)
        .collect();
    if let Some(knots) = kernel.knots() {
        for k in knots {
            let frac = k - floor(k);
            grid.push(frac);
        }
    }
    let integer_beta = beta == floor(beta) && beta <= i32::MAX as f64;
    let mut sup: f64 = 0.0;
    for &u in &grid {
        let (k_lo, k_hi) = moment_window(support, u, beta, MOMENT_TAIL)?;
        let mut acc = CompensatedSum::new();
        for k in k_lo..=k_hi {
            let t = u - k as f64;
            let chi = abs(kernel.evaluate(t));
            if chi != 0.0 {
                let weight = if integer_beta {
                    abs(powi(t, beta as i32))
                } else {
                    powf(abs(t), beta)
                };
                acc.add(chi * weight);
            }
        }
        sup = sup.max(acc.value());
    }
    Ok(sup)
}

/// Per-order moment data produced by [`check_moment_condition`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    /// Moment order `j`.
    pub beta: f64,
    /// The `u` values the moment was evaluated at.
    pub grid: Vec<f64>,
    /// `m_β(χ, u)` per grid point.
    pub values: Vec<f64>,
    /// `max_u |m_β(χ, u)|`.
    pub max_abs_deviation: f64,
}

/// Outcome of the vanishing-moment certification.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCondition {
    /// True iff every moment of order `1..r` is zero (within tolerance)
    /// across the grid *and* none of those moment series diverges.
    pub passed: bool,
    /// Reports for each computable order `j = 1..=r`. The order-`r`
    /// report is informational: the certification only requires the
    /// orders below `r` to vanish, but `m_r` is surfaced for inspection.
    pub reports: Vec<MomentReport>,
    /// Orders whose moment series is not absolutely convergent for this
    /// kernel's decay; any such order `< r` fails the certification.
    pub divergent_orders: Vec<u32>,
}

/// Checks the vanishing-moment condition of order `r`:
/// `m_j(χ, u) = 0` for `j = 1, …, r−1` and every `u`, evaluated on
/// `u_grid` with tolerance `tol`.
///
/// Orders whose series diverges absolutely are recorded in
/// `divergent_orders` and count as failures (such a kernel cannot be
/// certified). The order-`r` moments are computed for inspection when
/// convergent but do not affect the verdict.
pub fn check_moment_condition(
    kernel: &Kernel,
    r: u32,
    u_grid: &[f64],
    tol: f64,
) -> Result<MomentCondition, KernelError> {
    if r < 1 {
        return Err(KernelError::InvalidParameter {
            what: "moment condition order r must be >= 1",
        });
    }
    if u_grid.is_empty() {
        return Err(KernelError::InvalidParameter {
            what: "u_grid must be nonempty",
        });
    }
    let mut reports = Vec::new();
    let mut divergent = Vec::new();
    let mut passed = true;
    for j in 1..=r {
        // Probe convergence once; the window only depends on j.
        match moment_window(kernel.support(), 0.0, j as f64, MOMENT_TAIL) {
            Err(KernelError::DivergentMoment { .. }) => {
                divergent.push(j);
                if j < r {
                    passed = false;
                }
                continue;
            }
            Err(e) => return Err(e),
            Ok(_) => {}
        }
        let mut values = Vec::with_capacity(u_grid.len());
        let mut max_dev: f64 = 0.0;
        for &u in u_grid {
            let m = discrete_moment(kernel, j, u)?;
            max_dev = max_dev.max(abs(m));
            values.push(m);
        }
        if j < r && max_dev > tol {
            passed = false;
        }
        reports.push(MomentReport {
            beta: j as f64,
            grid: u_grid.to_vec(),
            values,
            max_abs_deviation: max_dev,
        });
    }
    Ok(MomentCondition {
        passed,
        reports,
        divergent_orders: divergent,
    })
}

/// Outcome of the Fourier-side moment criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCheck {
    pub passed: bool,
    /// Largest deviation from the expected pattern over all tested
    /// `(j, k)` pairs.
    pub max_deviation: f64,
}

/// Fourier-transform criterion equivalent to the vanishing-moment
/// condition: with `χ̂(v) = ∫ χ(u) e^{-iuv} du`, requires
/// `χ̂(0) = 1`, `χ̂(2πk) = 0` for `k ≠ 0`, and `χ̂^{(j)}(2πk) = 0` for
/// `j = 1, …, r−1` and all `|k| ≤ k_range`.
///
/// The derivatives are computed as `χ̂^{(j)}(v) = ∫ χ(u)(-iu)^j e^{-iuv} du`
/// by adaptive quadrature split at the kernel's knots. Only compactly
/// supported kernels are accepted: for the algebraically decaying kernels
/// the truncated oscillatory integrals cannot honestly reach the
/// tolerance.
pub fn fourier_moment_check(
    kernel: &Kernel,
    r: u32,
    k_range: u32,
    tol: f64,
) -> Result<FourierCheck, KernelError> {
    if r < 1 || k_range < 1 {
        return Err(KernelError::InvalidParameter {
            what: "fourier check needs r >= 1 and k_range >= 1",
        });
    }
    let (lo, hi) = match kernel.support() {
        Support::Compact { lo, hi } => (lo, hi),
        Support::Decay { .. } => {
            return Err(KernelError::NonCompactSupport {
                what: "fourier moment check",
            })
        }
    };
    let segments = match kernel.knots() {
        Some(mut k) => {
            if k.first().copied() != Some(lo) {
                k.insert(0, lo);
            }
            if k.last().copied() != Some(hi) {
                k.push(hi);
            }
            k
        }
        None => alloc::vec![lo, hi],
    };
    let quad_tol = (tol / 100.0).min(1e-10);
    let mut max_dev: f64 = 0.0;
    for j in 0..r {
        for kk in -(k_range as i64)..=(k_range as i64) {
            let v = 2.0 * PI * kk as f64;
            let re = integrate_moment_transform(kernel, &segments, j, v, false, quad_tol)?;
            let im = integrate_moment_transform(kernel, &segments, j, v, true, quad_tol)?;
            // |χ̂^{(j)}(v)| = |(-i)^j (re - i·im)| = hypot(re, im).
            let dev = if j == 0 && kk == 0 {
                hypot(re - 1.0, im)
            } else {
                hypot(re, im)
            };
            max_dev = max_dev.max(dev);
        }
    }
    Ok(FourierCheck {
        passed: max_dev <= tol,
        max_deviation: max_dev,
    })
}

fn integrate_moment_transform(
    kernel: &Kernel,
    segments: &[f64],
    j: u32,
    v: f64,
    imaginary: bool,
    quad_tol: f64,
) -> Result<f64, KernelError> {
    let f = |u: f64| {
        let base = kernel.evaluate(u) * powi(u, j as i32);
        if imaginary {
            base * crate::math::sin(u * v)
        } else {
            base * crate::math::cos(u * v)
        }
    };
    adaptive_segmented(&f, segments, quad_tol).map_err(|e| match e {
        QuadError::NonConvergence { panels, .. } => KernelError::QuadratureNonConvergence {
            what: "fourier moment check",
            panels,
        },
    })
}

/// Max over a grid of `u ∈ [0, 1)` of `|Σ_k χ(u−k) − 1|` — the partition
/// of unity. Exact windows for compact kernels; for decaying kernels the
/// series is truncated with tail ≤ `tail_budget`.
pub fn partition_of_unity_deviation(
    kernel: &Kernel,
    grid_points: usize,
    tail_budget: f64,
) -> Result<f64, KernelError> {
    let support = kernel.support();
    let mut worst: f64 = 0.0;
    for i in 0..grid_points {
        let u = i as f64 / grid_points as f64;
        let (k_lo, k_hi) = moment_window(support, u, 0.0, tail_budget)?;
        let mut acc = CompensatedSum::new();
        for k in k_lo..=k_hi {
            acc.add(kernel.evaluate(u - k as f64));
        }
        worst = worst.max(abs(acc.value() - 1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chi2_kernel() -> Kernel {
        Kernel::from_spline_combination(
            SplineCombinationKernel::new(2, vec![2.0, 3.0], vec![3.0, -2.0]).unwrap(),
        )
    }

    fn unit_grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64 / n as f64).collect()
    }

    #[test]
    fn discrete_moment_examples() {
        let m2 = Kernel::bspline(2).unwrap();
        assert!((discrete_moment(&m2, 0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!(discrete_moment(&m2, 1, 0.3).unwrap().abs() < 1e-15);
        let chi2 = chi2_kernel();
        assert!(discrete_moment(&chi2, 1, 0.5).unwrap().abs() < 1e-13);
        // Brute-force cross-check of the chi2 sum at u = 0.5: the four
        // nonzero terms are at u - k ∈ {1.5, 2.5, 3.5} ∪ boundary zeros.
        let mut brute = 0.0;
        for k in -10..=10 {
            let t = 0.5 - k as f64;
            brute += chi2.evaluate(t) * t;
        }
        assert!(brute.abs() < 1e-13);
    }

    #[test]
    fn absolute_moment_examples() {
        let m2 = Kernel::bspline(2).unwrap();
        assert!((absolute_moment(&m2, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let m1 = Kernel::bspline(1).unwrap();
        assert!((absolute_moment(&m1, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let chi2 = chi2_kernel();
        let m0 = absolute_moment(&chi2, 0.0).unwrap();
        // |3| + |−2| = 5 upper-bounds it; the sup is attained at u = 0
        // (a knot fraction, so it is in the grid) and equals 5 exactly.
        assert!((m0 - 5.0).abs() < 1e-12, "M0(chi2) = {m0}");
        assert!(m0 > 1.0 && m0 <= 5.0);
        // M_2(M_2): sup of u(1-u) over the grid, approaching 1/4.
        let m2b2 = absolute_moment(&m2, 2.0).unwrap();
        assert!((m2b2 - 0.25).abs() < 1e-5, "M_2(M2) = {m2b2}");
        // M_1(chi2) = 12 and M_2(chi2) = 30, attained at u = 0.
        assert!((absolute_moment(&chi2, 1.0).unwrap() - 12.0).abs() < 1e-12);
        assert!((absolute_moment(&chi2, 2.0).unwrap() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn moment_condition_spline_kernels_pass() {
        let grid = unit_grid(101);
        for kernel in [Kernel::bspline(2).unwrap(), Kernel::bspline(3).unwrap(), chi2_kernel()] {
            let res = check_moment_condition(&kernel, 2, &grid, 1e-10).unwrap();
            assert!(res.passed, "{} should pass r=2", kernel.name());
            assert!(res.divergent_orders.is_empty());
            // m_r is surfaced for inspection (r = 2 here) and is *not*
            // identically 1: for M_2 it equals u(1-u).
            let mr = res.reports.last().unwrap();
            assert_eq!(mr.beta, 2.0);
            assert_eq!(mr.values.len(), grid.len());
        }
        // m_2(M_2, 0.5) = 0.25.
        let m2 = Kernel::bspline(2).unwrap();
        assert!((discrete_moment(&m2, 2, 0.5).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn moment_condition_divergent_for_slow_decay() {
        // All four classical kernels with decay order 2 cannot satisfy the
        // r = 2 condition: their first-moment series is not absolutely
        // convergent, which counts as a certification failure.
        let grid = unit_grid(11);
        for kind in [
            ClassicalKind::Fejer,
            ClassicalKind::ValleePoussin,
            ClassicalKind::SincProduct,
            ClassicalKind::Jackson { k: 1, alpha: 1.0 },
        ] {
            let kernel = Kernel::classical(kind).unwrap();
            let res = check_moment_condition(&kernel, 2, &grid, 1e-6).unwrap();
            assert!(!res.passed, "{} must fail r=2", kernel.name());
            assert_eq!(res.divergent_orders, vec![1, 2]);
        }
        // Direct moment computation reports the divergence explicitly.
        let fejer = Kernel::classical(ClassicalKind::Fejer).unwrap();
        assert!(matches!(
            discrete_moment(&fejer, 1, 0.3),
            Err(KernelError::DivergentMoment { .. })
        ));
    }

    #[test]
    fn jackson_k2_first_moment_vanishes() {
        // Decay order 4 makes m_1 absolutely convergent, and the smooth
        // compactly-supported Fourier transform of the k = 2 Jackson
        // kernel makes it vanish identically.
        let j2 = Kernel::classical(ClassicalKind::Jackson { k: 2, alpha: 1.0 }).unwrap();
        let m1 = discrete_moment(&j2, 1, 0.3).unwrap();
        assert!(m1.abs() < 1e-9, "m1 = {m1}");
        let m0 = discrete_moment(&j2, 0, 0.3).unwrap();
        assert!((m0 - 1.0).abs() < 1e-9, "m0 = {m0}");
    }

    #[test]
    fn fourier_check_examples() {
        let m2 = Kernel::bspline(2).unwrap();
        let res = fourier_moment_check(&m2, 2, 3, 1e-8).unwrap();
        assert!(res.passed, "max_dev = {}", res.max_deviation);

        let m1 = Kernel::bspline(1).unwrap();
        let res = fourier_moment_check(&m1, 1, 2, 1e-8).unwrap();
        assert!(res.passed);
        // But M_1 does not satisfy the r = 2 pattern: χ̂' at 2π is ~0.159.
        let res = fourier_moment_check(&m1, 2, 2, 1e-6).unwrap();
        assert!(!res.passed);
        assert!((res.max_deviation - 0.159).abs() < 0.01);

        let res = fourier_moment_check(&chi2_kernel(), 2, 2, 1e-7).unwrap();
        assert!(res.passed);

        let fejer = Kernel::classical(ClassicalKind::Fejer).unwrap();
        assert!(matches!(
            fourier_moment_check(&fejer, 2, 2, 1e-6),
            Err(KernelError::NonCompactSupport { .. })
        ));
    }

    #[test]
    fn partition_of_unity_compact() {
        for kernel in [
            Kernel::bspline(1).unwrap(),
            Kernel::bspline(2).unwrap(),
            Kernel::bspline(3).unwrap(),
            Kernel::bspline(5).unwrap(),
            chi2_kernel(),
        ] {
            let dev = partition_of_unity_deviation(&kernel, 101, 0.0).unwrap();
            assert!(dev <= 1e-9, "{}: dev = {dev}", kernel.name());
        }
    }

    #[test]
    fn absolute_moment_periodicity() {
        // Compact kernels: the inner sum at u and u+1 re-indexes exactly.
        let chi2 = chi2_kernel();
        let (lo, hi) = match chi2.support() {
            Support::Compact { lo, hi } => (lo, hi),
            _ => unreachable!(),
        };
        for &u in &[0.1, 0.37, 0.9] {
            let sum_at = |u: f64| {
                let (k_lo, k_hi) = ((u - hi).ceil() as i64, (u - lo).floor() as i64);
                let mut acc = 0.0;
                for k in k_lo..=k_hi {
                    let t = u - k as f64;
                    acc += chi2.evaluate(t).abs() * t.abs();
                }
                acc
            };
            assert!((sum_at(u) - sum_at(u + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn signed_moment_bounded_by_absolute() {
        let kernels = [Kernel::bspline(2).unwrap(), Kernel::bspline(3).unwrap(), chi2_kernel()];
        for kernel in &kernels {
            for beta in 0..3u32 {
                let cap = absolute_moment(kernel, beta as f64).unwrap();
                for &u in &[0.0, 0.21, 0.5, 0.84] {
                    let m = discrete_moment(kernel, beta, u).unwrap();
                    assert!(
                        m.abs() <= cap + 1e-12,
                        "{}: |m_{beta}({u})| = {} > {cap}",
                        kernel.name(),
                        m.abs()
                    );
                }
            }
        }
    }

    #[test]
    fn moment_report_shape() {
        let grid = unit_grid(13);
        let res = check_moment_condition(&Kernel::bspline(2).unwrap(), 2, &grid, 1e-9).unwrap();
        for rep in &res.reports {
            assert_eq!(rep.grid.len(), rep.values.len());
        }
        assert_eq!(res.reports.len(), 2);
    }
}
