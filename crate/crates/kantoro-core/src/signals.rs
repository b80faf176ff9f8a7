//! Built-in signal catalog. Every entry fixes derivative closures, an
//! antiderivative where one exists in closed form, and sup-norm bounds,
//! so the experiments are free of quadrature noise wherever possible.
//! The Gaussian deliberately has no antiderivative entry: it exercises
//! the quadrature path of the cell means.

use alloc::vec::Vec;

use crate::math::{abs, atan, cos, exp, factorial, powi, sin};
use crate::operators::Signal;

/// Looks up a catalog signal: `const`, `affine`, `sin`, `cos`,
/// `gaussian`, `runge`.
pub fn by_name(name: &str) -> Option<Signal> {
    match name {
        "const" => Some(constant()),
        "affine" => Some(affine()),
        "sin" => Some(sine()),
        "cos" => Some(cosine()),
        "gaussian" => Some(gaussian()),
        "runge" => Some(runge()),
        _ => None,
    }
}

/// Names accepted by [`by_name`].
pub const CATALOG: [&str; 6] = ["const", "affine", "sin", "cos", "gaussian", "runge"];

/// `f ≡ 1`.
pub fn constant() -> Signal {
    Signal::new("const", |_| 1.0)
        .with_derivative(|_| 0.0)
        .with_derivative(|_| 0.0)
        .with_derivative(|_| 0.0)
        .with_antiderivative(|x| x)
        .with_sup_bounds(alloc::vec![1.0, 0.0, 0.0, 0.0])
}

/// `f(x) = 2x + 1` (unbounded itself, bounded derivatives).
pub fn affine() -> Signal {
    Signal::new("affine", |x| 2.0 * x + 1.0)
        .with_derivative(|_| 2.0)
        .with_derivative(|_| 0.0)
        .with_derivative(|_| 0.0)
        .with_antiderivative(|x| x * x + x)
        .with_sup_bounds(alloc::vec![f64::INFINITY, 2.0, 0.0, 0.0])
}

/// `f(x) = sin x`.
pub fn sine() -> Signal {
    Signal::new("sin", sin)
        .with_derivative(cos)
        .with_derivative(|x| -sin(x))
        .with_derivative(|x| -cos(x))
        .with_antiderivative(|x| -cos(x))
        .with_sup_bounds(alloc::vec![1.0, 1.0, 1.0, 1.0])
}

/// `f(x) = cos x`.
pub fn cosine() -> Signal {
    Signal::new("cos", cos)
        .with_derivative(|x| -sin(x))
        .with_derivative(|x| -cos(x))
        .with_derivative(sin)
        .with_antiderivative(sin)
        .with_sup_bounds(alloc::vec![1.0, 1.0, 1.0, 1.0])
}

/// `f(x) = exp(−x²/2)`. No elementary antiderivative, so cell means go
/// through quadrature.
pub fn gaussian() -> Signal {
    let g = |x: f64| exp(-0.5 * x * x);
    Signal::new("gaussian", g)
        .with_derivative(move |x| -x * g(x))
        .with_derivative(move |x| (x * x - 1.0) * g(x))
        .with_derivative(move |x| (3.0 * x - x * x * x) * g(x))
        .with_sup_bounds(alloc::vec![
            1.0,
            0.6065306597126334,  // e^{-1/2}, at x = ±1
            1.0,                 // at x = 0
            1.3801190461212205,  // max of |(3x−x³)e^{−x²/2}|
        ])
}

/// `f(x) = 1/(1 + x²)`.
pub fn runge() -> Signal {
    let g = |x: f64| 1.0 / (1.0 + x * x);
    Signal::new("runge", g)
        .with_derivative(move |x| -2.0 * x * powi(g(x), 2))
        .with_derivative(move |x| (6.0 * x * x - 2.0) * powi(g(x), 3))
        .with_derivative(move |x| 24.0 * x * (1.0 - x * x) * powi(g(x), 4))
        .with_antiderivative(atan)
        .with_sup_bounds(alloc::vec![
            1.0,
            0.6495190528383290, // 3√3/8, at x = ±1/√3
            2.0,                // at x = 0
            4.6685592841519,    // max of |f'''|
        ])
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients of the derivative polynomial.
pub fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

/// Coefficients of the antiderivative polynomial (zero constant term).
pub fn poly_antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    for (i, &c) in coeffs.iter().enumerate() {
        out.push(c / (i + 1) as f64);
    }
    out
}

/// A polynomial signal with exact derivative closures (up to order 8),
/// exact antiderivative, and the sup bounds that exist: unbounded below
/// the leading order, `|c_d|·d!` at the degree, zero above it.
pub fn poly_signal(name: &str, coeffs: &[f64]) -> Signal {
    let trimmed = trim_poly(coeffs);
    let degree = trimmed.len().saturating_sub(1);
    let base: Vec<f64> = trimmed.to_vec();
    let mut signal = Signal::new(name, {
        let c = base.clone();
        move |x| poly_eval(&c, x)
    });
    let mut current = base.clone();
    for _ in 0..8 {
        current = poly_derivative(&current);
        let c = current.clone();
        signal = signal.with_derivative(move |x| poly_eval(&c, x));
    }
    let anti = poly_antiderivative(&base);
    signal = signal.with_antiderivative(move |x| poly_eval(&anti, x));
    let mut bounds = Vec::with_capacity(9);
    for j in 0..=8usize {
        if j < degree {
            bounds.push(f64::INFINITY);
        } else if j == degree {
            bounds.push(abs(base.last().copied().unwrap_or(0.0)) * factorial(degree as u32));
        } else {
            bounds.push(0.0);
        }
    }
    signal.with_sup_bounds(bounds)
}

fn trim_poly(coeffs: &[f64]) -> &[f64] {
    let mut end = coeffs.len();
    while end > 1 && coeffs[end - 1] == 0.0 {
        end -= 1;
    }
    &coeffs[..end.max(1)]
}
