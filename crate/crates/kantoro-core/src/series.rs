//! Dense power-series arithmetic around `v = 0`, used to obtain the
//! Maclaurin derivatives of `1 / M̂_r(v) = sinc(v/2)^{-r}` that drive the
//! kernel builder. `sinc` here is the unnormalized `sin(t)/t`, the
//! convention forced by `∫ M_1 = 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::factorial;

/// Maclaurin derivatives `c_j = g^{(j)}(0)` of `g(v) = sinc(v/2)^{-r}`.
///
/// `c_0 = 1` and every odd-order value is exactly zero, because the series
/// of `sinc(v/2)` has even terms only and products/reciprocals preserve
/// that sparsity coefficient-by-coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    pub values: Vec<f64>,
}

/// Truncated product of two series.
pub(crate) fn series_mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Reciprocal of a series with nonzero constant term, by the standard
/// recurrence `b_0 = 1/a_0`, `b_n = -(1/a_0) Σ_{k=1}^n a_k b_{n-k}`.
pub(crate) fn series_reciprocal(a: &[f64], len: usize) -> Vec<f64> {
    debug_assert!(a[0] != 0.0);
    let inv = 1.0 / a[0];
    let mut out = vec![0.0; len];
    out[0] = inv;
    for n in 1..len {
        let mut acc = 0.0;
        for k in 1..=n {
            let ak = if k < a.len() { a[k] } else { 0.0 };
            acc += ak * out[n - k];
        }
        out[n] = -inv * acc;
    }
    out
}

/// Coefficients of `sinc(v/2) = Σ_m (-1)^m v^{2m} / (4^m (2m+1)!)`.
pub(crate) fn sinc_half_series(len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    let mut m = 0u32;
    while (2 * m as usize) < len {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        out[2 * m as usize] = sign / (crate::math::powi(4.0, m as i32) * factorial(2 * m + 1));
        m += 1;
    }
    out
}

/// Computes `c_j = (1/M̂_r)^{(j)}(0)` for `j = 0..count` by series
/// arithmetic: build the series of `sinc(v/2)`, raise it to the power `r`,
/// take the reciprocal, and rescale coefficients by `j!`.
///
/// Requires `r ≥ 1` and `count ≤ 16`; the series is analytic at 0 with a
/// nonzero constant term, so no runtime failure is possible.
pub fn reciprocal_fourier_derivatives(r: u32, count: usize) -> TaylorCoefficients {
    assert!(r >= 1, "spline order must be at least 1");
    assert!(count >= 1 && count <= 16, "count must be in 1..=16");
    // A few guard terms keep the truncated reciprocal exact through
    // the requested order.
    let len = count + 2;
    let base = sinc_half_series(len);
    let mut power = vec![0.0; len];
    power[0] = 1.0;
    for _ in 0..r {
        power = series_mul(&power, &base, len);
    }
    let recip = series_reciprocal(&power, len);
    let values = (0..count).map(|j| factorial(j as u32) * recip[j]).collect();
    TaylorCoefficients { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sinc_half(v: f64) -> f64 {
        if v == 0.0 {
            1.0
        } else {
            (v / 2.0).sin() / (v / 2.0)
        }
    }

    #[test]
    fn constant_term_is_one() {
        for r in 1..=8 {
            let c = reciprocal_fourier_derivatives(r, 1);
            assert_eq!(c.values[0], 1.0, "r={r}");
        }
    }

    #[test]
    fn odd_derivatives_vanish_exactly() {
        for r in 1..=8 {
            let c = reciprocal_fourier_derivatives(r, 10);
            for j in (1..10).step_by(2) {
                assert_eq!(c.values[j], 0.0, "r={r} j={j}");
            }
        }
    }

    #[test]
    fn known_second_derivatives() {
        // 1/sinc(v/2)^2 = 1 + v^2/12 + ..., so c_2 = 2!/12 = 1/6.
        let c = reciprocal_fourier_derivatives(2, 3);
        assert!((c.values[2] - 1.0 / 6.0).abs() < 1e-15);
        // r = 1: reciprocal of 1 - v^2/24 + ... gives c_2 = 2!/24 = 1/12.
        let c = reciprocal_fourier_derivatives(1, 3);
        assert!((c.values[2] - 1.0 / 12.0).abs() < 1e-15);
        // r = 3: c_2 = 1/4, r = 4: c_2 = 1/3.
        assert!((reciprocal_fourier_derivatives(3, 3).values[2] - 0.25).abs() < 1e-15);
        assert!((reciprocal_fourier_derivatives(4, 3).values[2] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn matches_central_finite_differences() {
        // Independent oracle: central second difference of sinc(v/2)^{-r}
        // at 0 with step 1e-3.
        for r in [1u32, 2, 3, 5] {
            let g = |v: f64| sinc_half(v).powi(-(r as i32));
            let h = 1e-3;
            let fd2 = (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
            let c = reciprocal_fourier_derivatives(r, 3);
            assert!(
                (c.values[2] - fd2).abs() < 1e-5,
                "r={r}: series {} vs fd {}",
                c.values[2],
                fd2
            );
        }
    }

    #[test]
    fn fourth_derivative_against_series_of_known_r2() {
        // 1/sinc(v/2)^2 = 1 + v^2/12 + v^4/240 + O(v^6)  =>  c_4 = 4!/240 = 1/10.
        let c = reciprocal_fourier_derivatives(2, 5);
        assert!((c.values[4] - 0.1).abs() < 1e-14);
    }
}
