//! Finite linear combinations of shifted central B-splines,
//! `χ_r(x) = Σ_μ a_μ M_r(x − ε_μ)` — the output type of the kernel
//! builder in [`crate::builder`].

use alloc::vec::Vec;

use super::bspline::{eval_bspline_unchecked, CentralBSpline, MAX_BSPLINE_ORDER};
use super::{KernelError, Support};

#[derive(Debug, Clone, PartialEq)]
pub struct SplineCombinationKernel {
    spline_order: u32,
    shifts: Vec<f64>,
    coefficients: Vec<f64>,
}

impl SplineCombinationKernel {
    /// Builds the combination `Σ a_μ M_r(x − ε_μ)`.
    ///
    /// Requires `1 ≤ r ≤ 12`, equally many shifts and coefficients, and
    /// strictly increasing shifts.
    pub fn new(
        spline_order: u32,
        shifts: Vec<f64>,
        coefficients: Vec<f64>,
    ) -> Result<Self, KernelError> {
        if spline_order < 1 || spline_order > MAX_BSPLINE_ORDER {
            return Err(KernelError::InvalidOrder {
                order: spline_order,
                max: MAX_BSPLINE_ORDER,
            });
        }
        if shifts.is_empty() || shifts.len() != coefficients.len() {
            return Err(KernelError::InvalidParameter {
                what: "shifts and coefficients must be nonempty and of equal length",
            });
        }
        if shifts.windows(2).any(|p| !(p[0] < p[1])) {
            return Err(KernelError::InvalidParameter {
                what: "shifts must be strictly increasing",
            });
        }
        if shifts.iter().chain(&coefficients).any(|v| !v.is_finite()) {
            return Err(KernelError::InvalidParameter {
                what: "shifts and coefficients must be finite",
            });
        }
        Ok(Self {
            spline_order,
            shifts,
            coefficients,
        })
    }

    pub fn spline_order(&self) -> u32 {
        self.spline_order
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (a, e) in self.coefficients.iter().zip(&self.shifts) {
            acc += a * eval_bspline_unchecked(self.spline_order, x - e);
        }
        acc
    }

    /// Support `[ε_0 − r/2, ε_{r-1} + r/2]`.
    pub fn support(&self) -> Support {
        let half = self.spline_order as f64 / 2.0;
        Support::Compact {
            lo: self.shifts[0] - half,
            hi: self.shifts[self.shifts.len() - 1] + half,
        }
    }

    /// Union of the translated B-spline knots, sorted and deduplicated.
    pub fn knots(&self) -> Vec<f64> {
        let base = CentralBSpline::new(self.spline_order)
            .expect("order validated in constructor")
            .knots();
        let mut out: Vec<f64> = Vec::with_capacity(base.len() * self.shifts.len());
        for e in &self.shifts {
            for k in &base {
                out.push(e + k);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite knots"));
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chi2() -> SplineCombinationKernel {
        SplineCombinationKernel::new(2, vec![2.0, 3.0], vec![3.0, -2.0]).unwrap()
    }

    #[test]
    fn evaluates_the_combination() {
        let k = chi2();
        assert_eq!(k.evaluate(2.0), 3.0);
        assert_eq!(k.evaluate(3.0), -2.0);
        assert_eq!(k.evaluate(2.5), 0.5); // 3·0.5 − 2·0.5
        assert_eq!(k.evaluate(0.9), 0.0);
        assert_eq!(k.evaluate(4.1), 0.0);
    }

    #[test]
    fn support_bounds() {
        match chi2().support() {
            Support::Compact { lo, hi } => {
                assert_eq!(lo, 1.0);
                assert_eq!(hi, 4.0);
            }
            _ => panic!("expected compact support"),
        }
    }

    #[test]
    fn knots_are_merged() {
        assert_eq!(chi2().knots(), vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SplineCombinationKernel::new(2, vec![1.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(SplineCombinationKernel::new(2, vec![2.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(SplineCombinationKernel::new(2, vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(SplineCombinationKernel::new(0, vec![1.0], vec![1.0]).is_err());
    }
}
