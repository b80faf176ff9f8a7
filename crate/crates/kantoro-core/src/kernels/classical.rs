//! The classical band-limited kernels: Fejér, de la Vallée Poussin, a
//! sinc-product kernel, and the Jackson-type family.
//!
//! All of them satisfy the partition of unity but decay only algebraically,
//! so they carry [`Support::Decay`] metadata with an explicit constant
//! `C` such that `|χ(u)| ≤ C·|u|^{-p}` for `|u| ≥ 1`.
//!
//! Sinc conventions: the Jackson kernels use the *normalized*
//! `sinc(t) = sin(πt)/(πt)` (standard for this family), whereas the
//! B-spline Fourier transform elsewhere in the crate uses the
//! *unnormalized* `sin(t)/t`. Both are named explicitly where they occur.

use core::f64::consts::PI;

use super::{KernelError, Support};
use crate::math::{binomial, cos, powi, sin};
use crate::quad::adaptive_segmented;

/// Which classical kernel to instantiate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalKind {
    /// `F(x) = 1/2 · (sin(πx/2)/(πx/2))²`, decay `x^{-2}`.
    Fejer,
    /// `V(x) = 3/(2π) · sin(x/2)·sin(3x/2)/(3x²/4)`, decay `x^{-2}`.
    ValleePoussin,
    /// `χ(x) = sin(πx/2)·sin(πx)/(π²x²/2)`, decay `x^{-2}`.
    SincProduct,
    /// `J_k(x) = c_k · sinc^{2k}(x/(2kπα))` with normalized sinc,
    /// decay `x^{-2k}`.
    Jackson { k: u32, alpha: f64 },
}

/// A classical kernel with its normalization resolved at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalKernel {
    kind: ClassicalKind,
    /// `c_k` for Jackson; 1.0 for the others.
    norm: f64,
}

impl ClassicalKernel {
    pub fn new(kind: ClassicalKind) -> Result<Self, KernelError> {
        let norm = match kind {
            ClassicalKind::Jackson { k, alpha } => {
                if k < 1 {
                    return Err(KernelError::InvalidParameter {
                        what: "jackson k must be >= 1",
                    });
                }
                if !(alpha >= 1.0) {
                    return Err(KernelError::InvalidParameter {
                        what: "jackson alpha must be >= 1",
                    });
                }
                compute_jackson_norm(k, alpha)?
            }
            _ => 1.0,
        };
        Ok(Self { kind, norm })
    }

    pub fn kind(&self) -> ClassicalKind {
        self.kind
    }

    /// The resolved Jackson normalization `c_k` (1.0 for non-Jackson kinds).
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self.kind {
            ClassicalKind::Fejer => {
                if x == 0.0 {
                    return 0.5;
                }
                let t = PI * x / 2.0;
                let s = sin(t) / t;
                0.5 * s * s
            }
            ClassicalKind::ValleePoussin => {
                if x == 0.0 {
                    return 3.0 / (2.0 * PI);
                }
                (3.0 / (2.0 * PI)) * sin(x / 2.0) * sin(3.0 * x / 2.0) / (3.0 * x * x / 4.0)
            }
            ClassicalKind::SincProduct => {
                if x == 0.0 {
                    return 1.0;
                }
                sin(PI * x / 2.0) * sin(PI * x) / (PI * PI * x * x / 2.0)
            }
            ClassicalKind::Jackson { k, alpha } => {
                let t = x / (2.0 * k as f64 * PI * alpha);
                self.norm * powi(normalized_sinc(t), 2 * k as i32)
            }
        }
    }

    pub fn support(&self) -> Support {
        match self.kind {
            // |sin| ≤ 1 gives C = 2/π² for Fejér and the sinc product;
            // |cos x − cos 2x| ≤ 2 gives C = 2/π for de la Vallée Poussin
            // (tight: approached near odd multiples of π).
            ClassicalKind::Fejer => Support::Decay {
                order: 2.0,
                constant: 2.0 / (PI * PI),
            },
            ClassicalKind::ValleePoussin => Support::Decay {
                order: 2.0,
                constant: 2.0 / PI,
            },
            ClassicalKind::SincProduct => Support::Decay {
                order: 2.0,
                constant: 2.0 / (PI * PI),
            },
            // |sinc(t)| ≤ 1/(π|t|) gives C = c_k (2kα)^{2k}.
            ClassicalKind::Jackson { k, alpha } => Support::Decay {
                order: 2.0 * k as f64,
                constant: self.norm * powi(2.0 * k as f64 * alpha, 2 * k as i32),
            },
        }
    }
}

/// Normalized sinc `sin(πt)/(πt)`.
#[inline]
pub(crate) fn normalized_sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        sin(PI * t) / (PI * t)
    }
}

/// Truncation point for the Jackson normalization integral. Beyond it the
/// tail is added analytically with a remainder below 1e-12.
const JACKSON_TAIL_CUT: f64 = 5000.0;

/// Computes the Jackson normalization
/// `c_k = [ ∫_ℝ sinc^{2k}(u/(2kπα)) du ]^{-1}` (normalized sinc).
///
/// The substitution `t = u/(2kπα)` reduces it to `1/(2kπα · Q_k)` with
/// `Q_k = ∫_ℝ sinc^{2k}(t) dt`. `Q_k` is evaluated by adaptive quadrature
/// on `[-T, T]` plus an analytic tail: writing
/// `sin^{2k}θ = 4^{-k}[ C(2k,k) + 2 Σ_m (-1)^m C(2k,k-m) cos(2mθ) ]`,
/// the non-oscillatory tail integrates exactly and the oscillatory part is
/// integrated by parts twice, leaving a remainder below `2k/(4π²T^{2k+1})`.
pub fn compute_jackson_norm(k: u32, alpha: f64) -> Result<f64, KernelError> {
    if k < 1 {
        return Err(KernelError::InvalidParameter {
            what: "jackson k must be >= 1",
        });
    }
    if !(alpha >= 1.0) {
        return Err(KernelError::InvalidParameter {
            what: "jackson alpha must be >= 1",
        });
    }
    let q = sinc_power_integral(2 * k)?;
    Ok(1.0 / (2.0 * k as f64 * PI * alpha * q))
}

/// `∫_ℝ sinc^{2k}(t) dt` for normalized sinc, `pow = 2k`.
fn sinc_power_integral(pow: u32) -> Result<f64, KernelError> {
    let t_cut = JACKSON_TAIL_CUT;
    // Integrate [0, T] with panels seeded one per oscillation period.
    let n_seed = t_cut as usize;
    let mut pts = alloc::vec::Vec::with_capacity(n_seed + 1);
    for i in 0..=n_seed {
        pts.push(i as f64);
    }
    let body = adaptive_segmented(
        &|t: f64| powi(normalized_sinc(t), pow as i32),
        &pts,
        1e-11,
    )
    .map_err(|e| KernelError::QuadratureNonConvergence {
        what: "jackson normalization",
        panels: match e {
            crate::quad::QuadError::NonConvergence { panels, .. } => panels,
        },
    })?;
    Ok(2.0 * (body + sinc_power_tail(pow, t_cut)))
}

/// Analytic tail `∫_T^∞ sinc^{pow}(t) dt` for even `pow`.
fn sinc_power_tail(pow: u32, t: f64) -> f64 {
    let k = pow / 2;
    let n = pow as i32;
    // Non-oscillatory component.
    let mut s = binomial(pow, k) * powi(t, 1 - n) / (pow as f64 - 1.0);
    // Oscillatory components, two integrations by parts each.
    for m in 1..=k {
        let a = 2.0 * m as f64 * PI;
        let i_m = -sin(a * t) / (a * powi(t, n)) + pow as f64 * cos(a * t) / (a * a * powi(t, n + 1));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        s += 2.0 * sign * binomial(pow, k - m) * i_m;
    }
    s / (powi(4.0, k as i32) * powi(PI, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::abs;

    #[test]
    fn point_values() {
        let f = ClassicalKernel::new(ClassicalKind::Fejer).unwrap();
        assert_eq!(f.evaluate(0.0), 0.5);
        // sin(π·2/2)² = sin(π)² = 0 up to roundoff of sin near π.
        assert!(abs(f.evaluate(2.0)) < 1e-30);
        assert!(abs(f.evaluate(1e-6) - 0.5) < 1e-10);

        let sp = ClassicalKernel::new(ClassicalKind::SincProduct).unwrap();
        // Limit at the origin: sin(πx/2)sin(πx) ~ (πx/2)(πx) = π²x²/2.
        assert_eq!(sp.evaluate(0.0), 1.0);
        assert!(abs(sp.evaluate(1e-6) - 1.0) < 1e-9);

        let v = ClassicalKernel::new(ClassicalKind::ValleePoussin).unwrap();
        assert!(abs(v.evaluate(0.0) - 3.0 / (2.0 * PI)) < 1e-15);
        assert!(abs(v.evaluate(1e-7) - 3.0 / (2.0 * PI)) < 1e-10);
    }

    #[test]
    fn jackson_normalization_frozen() {
        // Q_1 = 1, so c_1 = 1/(2π); Q_2 = 2/3, so c_2(α=1) = 3/(8π).
        // Cross-checked against the closed form Q_k = M_{2k}(0).
        let c11 = compute_jackson_norm(1, 1.0).unwrap();
        assert!(abs(c11 - 1.0 / (2.0 * PI)) < 1e-10, "c_1 = {c11}");
        let c21 = compute_jackson_norm(2, 1.0).unwrap();
        assert!(abs(c21 - 3.0 / (8.0 * PI)) < 1e-10, "c_2 = {c21}");
        // Scaling substitution: c_k ∝ 1/α.
        let c12 = compute_jackson_norm(1, 2.0).unwrap();
        assert!(abs(c12 - 0.5 * c11) < 1e-12);
    }

    #[test]
    fn jackson_norm_matches_bspline_closed_form() {
        // ∫ sinc^{2k} = M_{2k}(0): the 2k-fold autocorrelation of the unit
        // rectangle evaluated at the origin.
        use crate::kernels::bspline::eval_bspline_unchecked;
        for k in 1..=4u32 {
            let q = sinc_power_integral(2 * k).unwrap();
            let m = eval_bspline_unchecked(2 * k, 0.0);
            assert!(abs(q - m) < 1e-10, "k={k}: {q} vs {m}");
        }
    }

    #[test]
    fn jackson_value_at_origin_is_norm() {
        let j = ClassicalKernel::new(ClassicalKind::Jackson { k: 1, alpha: 1.0 }).unwrap();
        assert_eq!(j.evaluate(0.0), j.normalization());
        assert!(abs(j.evaluate(0.0) - 1.0 / (2.0 * PI)) < 1e-10);
    }

    #[test]
    fn invalid_jackson_parameters() {
        assert!(matches!(
            ClassicalKernel::new(ClassicalKind::Jackson { k: 0, alpha: 1.0 }),
            Err(KernelError::InvalidParameter { .. })
        ));
        assert!(matches!(
            ClassicalKernel::new(ClassicalKind::Jackson { k: 1, alpha: 0.5 }),
            Err(KernelError::InvalidParameter { .. })
        ));
    }

    #[test]
    fn decay_bounds_hold_on_grid() {
        let kernels = [
            ClassicalKernel::new(ClassicalKind::Fejer).unwrap(),
            ClassicalKernel::new(ClassicalKind::ValleePoussin).unwrap(),
            ClassicalKernel::new(ClassicalKind::SincProduct).unwrap(),
            ClassicalKernel::new(ClassicalKind::Jackson { k: 1, alpha: 1.0 }).unwrap(),
            ClassicalKernel::new(ClassicalKind::Jackson { k: 2, alpha: 1.5 }).unwrap(),
        ];
        for ker in kernels {
            let (p, c) = match ker.support() {
                Support::Decay { order, constant } => (order, constant),
                _ => unreachable!(),
            };
            let mut u = 1.0;
            while u < 500.0 {
                let bound = c * crate::math::powf(u, -p) * (1.0 + 1e-12);
                assert!(
                    abs(ker.evaluate(u)) <= bound && abs(ker.evaluate(-u)) <= bound,
                    "{:?} at u={u}",
                    ker.kind()
                );
                u += 0.137;
            }
        }
    }
}
