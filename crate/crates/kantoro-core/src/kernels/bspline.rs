//! Central B-splines `M_n`: compactly supported piecewise polynomials of
//! degree `n − 1`, evaluated through the alternating-sum closed form
//!
//! `M_n(x) = 1/(n-1)! · Σ_{i=0}^n (-1)^i C(n,i) (n/2 + x − i)_+^{n-1}`.

use alloc::vec::Vec;

use super::{KernelError, Support};
use crate::math::{binomial, factorial, powi};

/// Highest order evaluated through the closed form. Beyond this the
/// alternating sum cancels catastrophically (the terms grow like
/// `C(n, n/2) (n/2)^{n-1} / (n-1)!` while the result stays O(1)).
pub const MAX_BSPLINE_ORDER: u32 = 12;

/// Evaluates the central B-spline `M_n(x)`.
///
/// Returns 0 exactly outside the support `[-n/2, n/2]`. For `n = 1` the
/// boundary values at `±1/2` use the midpoint convention `M_1(±1/2) = 1/2`,
/// a measure-zero choice that no integral or discrete sum here depends on.
pub fn eval_bspline(n: u32, x: f64) -> Result<f64, KernelError> {
    if n < 1 || n > MAX_BSPLINE_ORDER {
        return Err(KernelError::InvalidOrder {
            order: n,
            max: MAX_BSPLINE_ORDER,
        });
    }
    Ok(eval_bspline_unchecked(n, x))
}

pub(crate) fn eval_bspline_unchecked(n: u32, x: f64) -> f64 {
    let half = n as f64 / 2.0;
    if !(x >= -half && x <= half) {
        return 0.0;
    }
    if n == 1 {
        return if x == -half || x == half { 0.5 } else { 1.0 };
    }
    let mut acc = 0.0;
    for i in 0..=n {
        let t = half + x - i as f64;
        if t > 0.0 {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(n, i) * powi(t, n as i32 - 1);
        }
    }
    acc / factorial(n - 1)
}

/// A central B-spline kernel of a given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralBSpline {
    order: u32,
}

impl CentralBSpline {
    pub fn new(order: u32) -> Result<Self, KernelError> {
        if order < 1 || order > MAX_BSPLINE_ORDER {
            return Err(KernelError::InvalidOrder {
                order,
                max: MAX_BSPLINE_ORDER,
            });
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        eval_bspline_unchecked(self.order, x)
    }

    pub fn support(&self) -> Support {
        let half = self.order as f64 / 2.0;
        Support::Compact {
            lo: -half,
            hi: half,
        }
    }

    /// Knots: the integers `0, ±1, …, ±n/2` for even order, the
    /// half-integers `±1/2, …, ±n/2` for odd order.
    pub fn knots(&self) -> Vec<f64> {
        let n = self.order;
        let mut out = Vec::with_capacity(n as usize + 1);
        let start = -(n as f64) / 2.0;
        for i in 0..=n {
            out.push(start + i as f64);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_segmented;

    #[test]
    fn frozen_point_values() {
        assert_eq!(eval_bspline(2, 0.0).unwrap(), 1.0);
        assert_eq!(eval_bspline(2, 0.5).unwrap(), 0.5);
        assert_eq!(eval_bspline(3, 0.0).unwrap(), 0.75);
        assert_eq!(eval_bspline(4, 5.0).unwrap(), 0.0);
        // Additional values pinned against an independent evaluation of
        // the closed form: M_3(0.5) = 0.5, M_4(0) = 2/3, M_6(0) = 0.55.
        assert!((eval_bspline(3, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((eval_bspline(4, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((eval_bspline(6, 0.0).unwrap() - 0.55).abs() < 1e-15);
    }

    #[test]
    fn order_bounds_rejected() {
        assert!(matches!(
            eval_bspline(0, 0.0),
            Err(KernelError::InvalidOrder { .. })
        ));
        assert!(matches!(
            eval_bspline(13, 0.0),
            Err(KernelError::InvalidOrder { .. })
        ));
        assert!(eval_bspline(12, 0.3).is_ok());
    }

    #[test]
    fn indicator_midpoint_convention() {
        assert_eq!(eval_bspline(1, 0.5).unwrap(), 0.5);
        assert_eq!(eval_bspline(1, -0.5).unwrap(), 0.5);
        assert_eq!(eval_bspline(1, 0.499).unwrap(), 1.0);
        assert_eq!(eval_bspline(1, 0.501).unwrap(), 0.0);
    }

    #[test]
    fn nonnegative_and_unit_mass() {
        for n in 1..=8u32 {
            let s = CentralBSpline::new(n).unwrap();
            let half = n as f64 / 2.0;
            let mut x = -half;
            while x <= half {
                assert!(s.evaluate(x) >= 0.0, "M_{n}({x}) < 0");
                x += half / 64.0;
            }
            let mass = adaptive_segmented(&|u| s.evaluate(u), &s.knots(), 1e-12).unwrap();
            assert!((mass - 1.0).abs() < 1e-11, "∫M_{n} = {mass}");
        }
    }

    #[test]
    fn two_scale_convolution_identity() {
        // M_n = M_{n-1} * M_1, i.e. M_n(x) = ∫_{x-1/2}^{x+1/2} M_{n-1}.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand_unit = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in 2..=5u32 {
            let half = n as f64 / 2.0;
            let inner = CentralBSpline::new(n - 1).unwrap();
            for _ in 0..20 {
                let x = (rand_unit() * 2.0 - 1.0) * (half + 0.25);
                let direct = eval_bspline_unchecked(n, x);
                // Split the window at the knots of M_{n-1} so every
                // segment is polynomial (M_1 is a step function).
                let mut pts = alloc::vec![x - 0.5];
                pts.extend(inner.knots().iter().copied().filter(|k| *k > x - 0.5 && *k < x + 0.5));
                pts.push(x + 0.5);
                let conv =
                    adaptive_segmented(&|u| eval_bspline_unchecked(n - 1, u), &pts, 1e-12).unwrap();
                assert!(
                    (direct - conv).abs() < 1e-8,
                    "M_{n}({x}): direct {direct} vs convolution {conv}"
                );
            }
        }
    }

    #[test]
    fn piecewise_polynomial_on_knot_intervals() {
        // On each knot interval M_n restricted is a polynomial of degree
        // n-1: check that the n-th divided difference over points inside
        // one interval vanishes.
        for n in [2u32, 3, 4, 5] {
            let s = CentralBSpline::new(n).unwrap();
            let knots = s.knots();
            for win in knots.windows(2) {
                let (a, b) = (win[0], win[1]);
                let deg = n as usize - 1;
                let m = deg + 2; // one more point than the degree bound needs
                let xs: Vec<f64> = (0..m)
                    .map(|i| a + (b - a) * (i as f64 + 0.5) / m as f64)
                    .collect();
                let mut dd: Vec<f64> = xs.iter().map(|&x| s.evaluate(x)).collect();
                for level in 1..m {
                    for i in 0..(m - level) {
                        dd[i] = (dd[i + 1] - dd[i]) / (xs[i + level] - xs[i]);
                    }
                }
                // dd[0] is now the (m-1)-th divided difference = deg+1-th.
                assert!(
                    dd[0].abs() < 1e-6,
                    "M_{n} not degree-{deg} on [{a},{b}]: dd = {}",
                    dd[0]
                );
            }
        }
    }

    #[test]
    fn support_is_exact() {
        for n in 1..=12u32 {
            let s = CentralBSpline::new(n).unwrap();
            let half = n as f64 / 2.0;
            assert_eq!(s.evaluate(half + 1e-12), 0.0);
            assert_eq!(s.evaluate(-half - 1e-12), 0.0);
            assert_eq!(s.evaluate(half + 10.0), 0.0);
        }
    }
}
