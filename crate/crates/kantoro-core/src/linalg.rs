//! Minimal dense linear solve (LU with partial pivoting) for the small
//! Vandermonde systems of the kernel builder (n ≤ 8).

use alloc::vec::Vec;
use core::fmt;

use crate::math::abs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularMatrix;

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "linear system is singular to working precision")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SingularMatrix {}

/// Solves `A x = b` for row-major `a` of shape `n × n`, returning `x`.
pub fn solve_dense(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>, SingularMatrix> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut m: Vec<f64> = a.to_vec();
    let mut x: Vec<f64> = b.to_vec();

    for col in 0..n {
        // Partial pivot: largest magnitude in the remaining column.
        let mut pivot_row = col;
        let mut pivot_val = abs(m[col * n + col]);
        for row in (col + 1)..n {
            let v = abs(m[row * n + col]);
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 || !pivot_val.is_finite() {
            return Err(SingularMatrix);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            x.swap(col, pivot_row);
        }
        let inv = 1.0 / m[col * n + col];
        for row in (col + 1)..n {
            let factor = m[row * n + col] * inv;
            if factor == 0.0 {
                continue;
            }
            m[row * n + col] = 0.0;
            for k in (col + 1)..n {
                m[row * n + k] -= factor * m[col * n + k];
            }
            x[row] -= factor * x[col];
        }
    }

    for col in (0..n).rev() {
        let mut acc = x[col];
        for k in (col + 1)..n {
            acc -= m[col * n + k] * x[k];
        }
        x[col] = acc / m[col * n + col];
    }
    Ok(x)
}
