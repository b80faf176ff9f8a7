//! Gauss–Legendre quadrature: fixed 8- and 16-node rules plus an adaptive
//! bisection driver with an absolute-error target.
//!
//! The adaptive driver uses the 16-node rule per panel and estimates the
//! panel error as the difference against the embedded 8-node rule; panels
//! are split until every local estimate fits its proportional share of the
//! requested tolerance.

use alloc::vec::Vec;
use core::fmt;

use crate::math::abs;
use crate::sum::CompensatedSum;

/// Nodes of the 8-point Gauss–Legendre rule on [-1, 1].
const GL8_NODES: [f64; 8] = [
    -0.9602898564975362,
    -0.7966664774136267,
    -0.525532409916329,
    -0.18343464249564978,
    0.18343464249564978,
    0.525532409916329,
    0.7966664774136267,
    0.9602898564975362,
];

const GL8_WEIGHTS: [f64; 8] = [
    0.10122853629037669,
    0.22238103445337434,
    0.31370664587788705,
    0.36268378337836177,
    0.36268378337836177,
    0.31370664587788705,
    0.22238103445337434,
    0.10122853629037669,
];

/// Nodes of the 16-point Gauss–Legendre rule on [-1, 1].
const GL16_NODES: [f64; 16] = [
    -0.9894009349916499,
    -0.9445750230732326,
    -0.8656312023878318,
    -0.755404408355003,
    -0.6178762444026438,
    -0.45801677765722737,
    -0.2816035507792589,
    -0.09501250983763745,
    0.09501250983763745,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];

const GL16_WEIGHTS: [f64; 16] = [
    0.027152459411754037,
    0.062253523938647706,
    0.09515851168249259,
    0.12462897125553403,
    0.14959598881657676,
    0.16915651939500262,
    0.1826034150449236,
    0.18945061045506859,
    0.18945061045506859,
    0.1826034150449236,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.062253523938647706,
    0.027152459411754037,
];

/// Errors from the adaptive driver.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// The panel budget was exhausted before the error estimates met the
    /// tolerance.
    NonConvergence { panels: usize, tol: f64 },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NonConvergence { panels, tol } => write!(
                f,
                "adaptive quadrature did not reach tolerance {tol:e} within {panels} panels"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QuadError {}

/// Fixed 8-node rule on [a, b]; exact for polynomials of degree ≤ 15.
pub fn gauss_legendre_8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    fixed_rule(f, a, b, &GL8_NODES, &GL8_WEIGHTS)
}

/// Fixed 16-node rule on [a, b]; exact for polynomials of degree ≤ 31.
pub fn gauss_legendre_16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    fixed_rule(f, a, b, &GL16_NODES, &GL16_WEIGHTS)
}

fn fixed_rule<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for (x, w) in nodes.iter().zip(weights) {
        acc.add(w * f(mid + half * x));
    }
    half * acc.value()
}

const MAX_PANELS: usize = 400_000;

/// Adaptive integration of `f` over [a, b] to absolute tolerance `abs_tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64, QuadError> {
    adaptive_segmented(f, &[a, b], abs_tol)
}

/// Adaptive integration over consecutive segments given by `breakpoints`
/// (ascending). Seeding the panels at known kink locations keeps the
/// per-panel integrand smooth.
pub fn adaptive_segmented<F: Fn(f64) -> f64>(
    f: &F,
    breakpoints: &[f64],
    abs_tol: f64,
) -> Result<f64, QuadError> {
    debug_assert!(breakpoints.len() >= 2);
    let span: f64 = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    if span == 0.0 {
        return Ok(0.0);
    }

    let mut stack: Vec<(f64, f64)> = breakpoints
        .windows(2)
        .rev()
        .map(|p| (p[0], p[1]))
        .filter(|(a, b)| b > a)
        .collect();
    let mut total = CompensatedSum::new();
    let mut panels = 0usize;
    // Error estimates of panels accepted at minimum width (e.g. around a
    // jump of the integrand); must stay within the overall tolerance.
    let mut forced_error = 0.0;
    let min_len = span * 1e-13;

    while let Some((a, b)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(QuadError::NonConvergence {
                panels,
                tol: abs_tol,
            });
        }
        let coarse = gauss_legendre_8(f, a, b);
        let fine = gauss_legendre_16(f, a, b);
        let err = abs(fine - coarse);
        let share = abs_tol * ((b - a) / span);
        // The floating-point floor keeps well-resolved panels from being
        // split forever once the estimate is dominated by roundoff.
        let floor = 64.0 * f64::EPSILON * abs(fine) + 1e-306;
        let mid = 0.5 * (a + b);
        if err <= share.max(floor) {
            total.add(fine);
        } else if b - a <= min_len || mid <= a || mid >= b {
            total.add(fine);
            forced_error += err;
            if forced_error > abs_tol {
                return Err(QuadError::NonConvergence {
                    panels,
                    tol: abs_tol,
                });
            }
        } else {
            stack.push((mid, b));
            stack.push((a, mid));
        }
    }
    Ok(total.value())
}
