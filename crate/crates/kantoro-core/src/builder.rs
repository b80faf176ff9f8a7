//! Constructs spline-combination kernels with vanishing moments up to a
//! requested order: given `r ≥ 2` and `r` distinct shifts `ε_0 < … < ε_{r-1}`,
//! solves for coefficients `a_μ` such that
//! `χ_r(x) = Σ_μ a_μ M_r(x − ε_μ)` satisfies `m_j(χ_r, ·) ≡ 0` for
//! `j = 1, …, r−1` (and so is certified at order `r`).
//!
//! The defining linear system is `Σ_μ a_μ (−i·ε_μ)^j = c_j` with
//! `c_j = (1/M̂_r)^{(j)}(0)`. Because `1/M̂_r(v) = sinc(v/2)^{-r}` is even,
//! every odd `c_j` vanishes and every even `c_j` is real, so dividing row
//! `j` by `(−i)^j` leaves the equivalent *real* Vandermonde system
//! `Σ_μ a_μ ε_μ^j = i^j · c_j` (right-hand side `0, ±c_j`); see
//! `docs/derivations.md` for the full reduction. It is solved with partial
//! pivoting, which is ample for `r ≤ 8` and unit-scale shifts.

use alloc::vec::Vec;
use core::fmt;

use crate::kernels::{check_moment_condition, Kernel, SplineCombinationKernel};
use crate::linalg::solve_dense;
use crate::math::powi;
use crate::series::reciprocal_fourier_derivatives;

/// Shift pairs closer than this are rejected as ill-conditioned.
const MIN_SHIFT_GAP: f64 = 1e-8;

/// Largest supported combination order.
pub const MAX_BUILD_ORDER: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum BuildError {
    /// `r` outside `2..=8`. Order 1 is rejected: the construction is
    /// defined only from order 2 upward (a single translated spline has
    /// nothing to solve for).
    InvalidOrder { order: u32 },
    /// Number of shifts must equal `r`.
    WrongShiftCount { expected: u32, got: usize },
    /// Shifts closer than 1e-8 (or equal) make the Vandermonde system
    /// numerically singular.
    IllConditionedShifts { gap: f64 },
    /// Shifts must be finite.
    NonFiniteShift,
    /// The pivoted solve failed; cannot happen for distinct shifts.
    SingularSystem,
    /// Post-construction certification failed (defensive; indicates a
    /// numerical breakdown rather than bad input).
    CertificationFailed { max_deviation: f64 },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::InvalidOrder { order } => {
                write!(f, "combination order {order} outside supported range 2..=8")
            }
            BuildError::WrongShiftCount { expected, got } => {
                write!(f, "expected {expected} shifts, got {got}")
            }
            BuildError::IllConditionedShifts { gap } => {
                write!(f, "shifts too close (gap {gap:e} < 1e-8)")
            }
            BuildError::NonFiniteShift => write!(f, "shifts must be finite"),
            BuildError::SingularSystem => write!(f, "linear system singular"),
            BuildError::CertificationFailed { max_deviation } => write!(
                f,
                "built kernel failed moment certification (max deviation {max_deviation:e})"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BuildError {}

/// Builds the order-`r` spline combination for the given shifts and
/// certifies it: the returned kernel carries
/// `moment_order_certified = Some(r)` after an explicit
/// [`check_moment_condition`] pass on a 201-point grid at 1e-9.
pub fn build_matched_kernel(r: u32, shifts: &[f64]) -> Result<Kernel, BuildError> {
    if r < 2 || r > MAX_BUILD_ORDER {
        return Err(BuildError::InvalidOrder { order: r });
    }
    if shifts.len() != r as usize {
        return Err(BuildError::WrongShiftCount {
            expected: r,
            got: shifts.len(),
        });
    }
    if shifts.iter().any(|e| !e.is_finite()) {
        return Err(BuildError::NonFiniteShift);
    }
    let mut eps: Vec<f64> = shifts.to_vec();
    eps.sort_by(|a, b| a.partial_cmp(b).expect("finite shifts"));
    for pair in eps.windows(2) {
        let gap = pair[1] - pair[0];
        if gap < MIN_SHIFT_GAP {
            return Err(BuildError::IllConditionedShifts { gap });
        }
    }

    let n = r as usize;
    let c = reciprocal_fourier_derivatives(r, n);
    // Row j of the real system: Σ_μ a_μ ε_μ^j = i^j c_j.
    let mut matrix = alloc::vec![0.0; n * n];
    let mut rhs = alloc::vec![0.0; n];
    for j in 0..n {
        for (mu, &e) in eps.iter().enumerate() {
            matrix[j * n + mu] = powi(e, j as i32);
        }
        rhs[j] = match j % 4 {
            0 => c.values[j],
            2 => -c.values[j],
            _ => 0.0, // odd c_j are exactly zero
        };
    }
    let coefficients = solve_dense(&matrix, &rhs, n).map_err(|_| BuildError::SingularSystem)?;

    let combo = SplineCombinationKernel::new(r, eps, coefficients)
        .expect("validated shifts produce a valid combination");
    let kernel = Kernel::from_spline_combination(combo);

    let grid: Vec<f64> = (0..201).map(|i| i as f64 / 201.0).collect();
    let check = check_moment_condition(&kernel, r, &grid, 1e-9)
        .expect("compact support: moments always converge");
    if !check.passed {
        let worst = check
            .reports
            .iter()
            .take(n - 1)
            .map(|rep| rep.max_abs_deviation)
            .fold(0.0, f64::max);
        return Err(BuildError::CertificationFailed {
            max_deviation: worst,
        });
    }
    Ok(kernel.with_moment_certification(r))
}

/// The canonical order-2 example kernel `3·M_2(x−2) − 2·M_2(x−3)`.
pub fn chi2_kernel() -> Kernel {
    build_matched_kernel(2, &[2.0, 3.0])
        .expect("the canonical shifts are valid")
        .with_name("chi2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Support;

    #[test]
    fn canonical_chi2_coefficients() {
        let kernel = build_matched_kernel(2, &[2.0, 3.0]).unwrap();
        let combo = kernel.as_spline_combination().unwrap();
        assert!((combo.coefficients()[0] - 3.0).abs() < 1e-12);
        assert!((combo.coefficients()[1] + 2.0).abs() < 1e-12);
        assert_eq!(kernel.moment_order_certified(), Some(2));
        match kernel.support() {
            Support::Compact { lo, hi } => {
                assert_eq!((lo, hi), (1.0, 4.0));
            }
            _ => panic!("expected compact support"),
        }
    }

    #[test]
    fn symmetric_shifts() {
        // a_0 + a_1 = 1, −a_0 + a_1 = 0  =>  (1/2, 1/2).
        let kernel = build_matched_kernel(2, &[-1.0, 1.0]).unwrap();
        let combo = kernel.as_spline_combination().unwrap();
        assert!((combo.coefficients()[0] - 0.5).abs() < 1e-13);
        assert!((combo.coefficients()[1] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn order_three_frozen_coefficients() {
        // Solved independently (exact rational elimination):
        // (7/8, 1/4, -1/8) for shifts (0, 1, 2).
        let kernel = build_matched_kernel(3, &[0.0, 1.0, 2.0]).unwrap();
        let combo = kernel.as_spline_combination().unwrap();
        let expect = [0.875, 0.25, -0.125];
        for (a, e) in combo.coefficients().iter().zip(expect) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
        let sum: f64 = combo.coefficients().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn order_four_frozen_coefficients() {
        // Independently solved: (2/3, 5/6, -2/3, 1/6) for shifts 0..3.
        let kernel = build_matched_kernel(4, &[0.0, 1.0, 2.0, 3.0]).unwrap();
        let combo = kernel.as_spline_combination().unwrap();
        let expect = [2.0 / 3.0, 5.0 / 6.0, -2.0 / 3.0, 1.0 / 6.0];
        for (a, e) in combo.coefficients().iter().zip(expect) {
            assert!((a - e).abs() < 1e-11, "{a} vs {e}");
        }
    }

    #[test]
    fn coefficients_sum_to_one() {
        // Row j = 0 of the system forces Σ a_μ = c_0 = 1.
        for (r, shifts) in [
            (2u32, alloc::vec![0.5, 2.25]),
            (3, alloc::vec![-1.0, 0.25, 2.0]),
            (5, alloc::vec![0.0, 1.0, 2.0, 3.0, 4.0]),
            (8, alloc::vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]),
        ] {
            let kernel = build_matched_kernel(r, &shifts).unwrap();
            let sum: f64 = kernel
                .as_spline_combination()
                .unwrap()
                .coefficients()
                .iter()
                .sum();
            assert!((sum - 1.0).abs() < 1e-10, "r={r}: Σa = {sum}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            build_matched_kernel(1, &[0.0]),
            Err(BuildError::InvalidOrder { .. })
        ));
        assert!(matches!(
            build_matched_kernel(9, &[0.0; 9]),
            Err(BuildError::InvalidOrder { .. })
        ));
        assert!(matches!(
            build_matched_kernel(2, &[0.0, 1.0, 2.0]),
            Err(BuildError::WrongShiftCount { .. })
        ));
        assert!(matches!(
            build_matched_kernel(2, &[1.0, 1.0 + 1e-9]),
            Err(BuildError::IllConditionedShifts { .. })
        ));
        assert!(matches!(
            build_matched_kernel(2, &[f64::NAN, 1.0]),
            Err(BuildError::NonFiniteShift)
        ));
    }

    #[test]
    fn unsorted_shifts_are_sorted() {
        let a = build_matched_kernel(2, &[3.0, 2.0]).unwrap();
        let b = build_matched_kernel(2, &[2.0, 3.0]).unwrap();
        assert_eq!(
            a.as_spline_combination().unwrap().coefficients(),
            b.as_spline_combination().unwrap().coefficients()
        );
    }

    #[test]
    fn translated_shifts_still_certify() {
        // Translating the shifts changes the Vandermonde rows (the c_j
        // are shift-independent), so the coefficient vector changes, but
        // the resulting kernel must still pass the certification.
        for s in [-2.0, 1.0, 5.0] {
            let kernel = build_matched_kernel(3, &[s, s + 1.0, s + 2.0]).unwrap();
            assert_eq!(kernel.moment_order_certified(), Some(3));
        }
    }
}
