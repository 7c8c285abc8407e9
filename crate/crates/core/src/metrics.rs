//! R² score and the per-block standard deviation used for termination.

use crate::error::{Error, Result};

/// Coefficient of determination `1 - RSS / TSS`.
pub fn r2(truth: &[f64], prediction: &[f64]) -> Result<f64> {
    if truth.len() != prediction.len() {
        return Err(Error::LengthMismatch(truth.len(), prediction.len()));
    }
    let Some(&first) = truth.first() else {
        return Err(Error::EmptySignal);
    };
    if truth.iter().all(|&y| y == first) {
        return Err(Error::ZeroVariance);
    }
    let mean = truth.iter().sum::<f64>() / truth.len() as f64;
    let (rss, tss) = truth.iter().zip(prediction).fold((0.0, 0.0), |(rss, tss), (&y, &p)| {
        (rss + (y - p) * (y - p), tss + (y - mean) * (y - mean))
    });
    Ok(1.0 - rss / tss)
}

/// The R² values of one bandwidth block.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricWindow {
    values: Vec<f64>,
    m: usize,
}

impl MetricWindow {
    pub fn new(m: usize) -> Self {
        Self { values: Vec::with_capacity(m), m }
    }

    /// Builds a window from explicit values; `values.len()` must not exceed `m`.
    pub fn from_values(values: Vec<f64>, m: usize) -> Result<Self> {
        if values.len() > m {
            return Err(Error::LengthMismatch(values.len(), m));
        }
        Ok(Self { values, m })
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == self.m
    }

    /// Appends a value, starting a fresh block if the current one is full.
    pub fn push(&mut self, v: f64) {
        if self.is_complete() {
            self.values.clear();
        }
        self.values.push(v);
    }

    pub fn clear(&mut self) {
        self.values.clear();
    }
}

/// Population standard deviation of a complete window.
pub fn window_std(window: &MetricWindow) -> Result<f64> {
    if !window.is_complete() || window.m == 0 {
        return Err(Error::IncompleteWindow { have: window.values.len(), need: window.m });
    }
    let n = window.m as f64;
    let mean = window.values.iter().sum::<f64>() / n;
    let var = window.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_prediction_scores_one() {
        assert_eq!(r2(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), Ok(1.0));
    }

    #[test]
    fn mean_predictor_scores_zero() {
        assert_eq!(r2(&[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0]), Ok(0.0));
    }

    #[test]
    fn hand_computed_score() {
        // RSS = 1 + 0 + 0 + 1 = 2, TSS = 2.25 + 0.25 + 0.25 + 2.25 = 5
        let v = r2(&[1.0, 2.0, 3.0, 4.0], &[2.0, 2.0, 3.0, 3.0]).unwrap();
        assert!((v - 0.6).abs() < 1e-15);
    }

    #[test]
    fn r2_errors() {
        assert_eq!(r2(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::ZeroVariance));
        assert_eq!(r2(&[1.0, 2.0], &[1.0]), Err(Error::LengthMismatch(2, 1)));
        assert_eq!(r2(&[], &[]), Err(Error::EmptySignal));
    }

    #[test]
    fn std_examples() {
        let w = MetricWindow::from_values(vec![0.5; 5], 5).unwrap();
        assert_eq!(window_std(&w), Ok(0.0));
        let w = MetricWindow::from_values(vec![0.0, 1.0], 2).unwrap();
        assert_eq!(window_std(&w), Ok(0.5));
        // deviations (-1e-4, 1e-4, 0, 0, 0): sqrt(2e-8 / 5)
        let w = MetricWindow::from_values(vec![0.9599, 0.9601, 0.96, 0.96, 0.96], 5).unwrap();
        let s = window_std(&w).unwrap();
        assert!((s - (2e-8f64 / 5.0).sqrt()).abs() < 1e-12, "{s}");
        assert!(s < 1e-4);
    }

    #[test]
    fn incomplete_window_is_an_error() {
        let w = MetricWindow::from_values(vec![0.1, 0.2], 5).unwrap();
        assert_eq!(window_std(&w), Err(Error::IncompleteWindow { have: 2, need: 5 }));
        assert!(MetricWindow::from_values(vec![0.0; 3], 2).is_err());
    }

    #[test]
    fn push_starts_a_new_block_when_full() {
        let mut w = MetricWindow::new(2);
        w.push(1.0);
        w.push(2.0);
        assert!(w.is_complete());
        w.push(3.0);
        assert_eq!(w.values(), &[3.0]);
    }
}
