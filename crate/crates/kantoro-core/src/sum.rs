//! Compensated (error-free transform) accumulation.
//!
//! All series in this crate are summed in a fixed order with Neumaier's
//! variant of Kahan summation, so results are deterministic and the
//! shifted-grid comparisons in [`crate::operators`] are meaningful.

use crate::math::abs;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if abs(self.sum) >= abs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sums an iterator in its own order.
    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        // Naive summation loses the 1.0 here; Neumaier keeps it.
        let v = [1e100, 1.0, -1e100];
        assert_eq!(CompensatedSum::sum_iter(v.iter().copied()), 1.0);
    }

    #[test]
    fn matches_exact_for_small_series() {
        let xs: Vec<f64> = (0..1000).map(|i| 0.1 + i as f64).collect();
        let exact = 0.1 * 1000.0 + (999.0 * 1000.0) / 2.0;
        assert!((CompensatedSum::sum_iter(xs.iter().copied()) - exact).abs() < 1e-9);
    }
}
