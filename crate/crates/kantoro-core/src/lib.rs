//! Sampling Kantorovich and generalized sampling operators with
//! moment-certified kernels.
//!
//! The crate evaluates the two classical families of quasi-interpolation
//! series built from a kernel `χ` and a scale `w > 0`:
//!
//! * the generalized sampling operator
//!   `(G_w f)(x) = Σ_k χ(wx − k) · f(k/w)`, driven by point samples, and
//! * the sampling Kantorovich operator
//!   `(S_w f)(x) = Σ_k χ(wx − k) · [w ∫_{k/w}^{(k+1)/w} f]`, driven by
//!   cell means (so it also applies to merely locally integrable signals).
//!
//! On top of the operators it provides:
//!
//! * central B-splines `M_n` and the classical band-limited kernels
//!   (Fejér, de la Vallée Poussin, a sinc product, Jackson-type), see
//!   [`kernels`];
//! * discrete moment computations and certification of the vanishing-moment
//!   condition that governs the approximation order, both in the time
//!   domain and through the equivalent Fourier-transform criterion;
//! * a constructor for spline-combination kernels
//!   `χ_r = Σ_μ a_μ M_r(x − ε_μ)` with moments vanishing up to order
//!   `r − 1`, see [`builder`];
//! * the representation decomposition
//!   `S_w f = Σ_{j<r} w^{−j}/(j+1)! · G_w f^{(j)} + R_r^w` and a measurement
//!   harness ([`analysis`]) for convergence rates, the order-one saturation
//!   of `S_w`, and polynomial images.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm`
//! feature instead of `std` for embedded-style builds. File formats, CSV
//! output and the command-line front end live in the companion crate
//! `kantoro-cli`.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub(crate) mod math;

pub mod analysis;
pub mod builder;
pub mod kernels;
pub mod linalg;
pub mod operators;
pub mod quad;
pub mod series;
pub mod signals;
pub mod sum;

pub use builder::{build_matched_kernel, chi2_kernel, BuildError};
pub use kernels::{
    absolute_moment, check_moment_condition, discrete_moment, eval_bspline, fourier_moment_check,
    make_classical_kernel, CentralBSpline, ClassicalKind, Kernel, KernelError, MomentCondition,
    MomentReport, SplineCombinationKernel, Support,
};
pub use operators::{
    cell_mean, generalized_apply, kantorovich_apply, kantorovich_shifted_apply,
    representation_decompose, Op, OperatorError, ShiftedGrid, Signal,
};
pub use analysis::{
    gw_bound_check, polynomial_image_check, rate_fit, saturation_probe, sup_error, AnalysisError,
    GridSpec, RateReport, SaturationReport,
};
