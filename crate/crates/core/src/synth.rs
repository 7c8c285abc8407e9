//! Seeded generator for the chirped two-tone benchmark:
//!
//! `u(x) = (cos(0.1 x²) + sin(8x) - sin(1 + 0.1 x²) - cos(1 + 8x)) exp(-0.01 x²)`
//!
//! plus Gaussian noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::domain::{Dataset, Sample};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub n_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub noise_mean: f64,
    pub noise_std: f64,
    pub seed: u64,
}

impl SynthSpec {
    /// 512 points on [-25, 25] with N(0, 0.1²) noise.
    pub fn paper_benchmark(seed: u64) -> Self {
        Self { n_points: 512, x_min: -25.0, x_max: 25.0, noise_mean: 0.0, noise_std: 0.1, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, reason: String| Err(Error::Config { field, reason });
        if self.n_points < 2 {
            return bad("n_points", format!("{} < 2", self.n_points));
        }
        if !self.x_min.is_finite() || !self.x_max.is_finite() || self.x_min >= self.x_max {
            return bad("x_min", format!("need finite x_min < x_max, got [{}, {}]", self.x_min, self.x_max));
        }
        if !self.noise_std.is_finite() || self.noise_std < 0.0 {
            return bad("noise_std", format!("{} is not a non-negative number", self.noise_std));
        }
        if !self.noise_mean.is_finite() {
            return bad("noise_mean", format!("{} is not finite", self.noise_mean));
        }
        Ok(())
    }
}

/// Noise-free benchmark response.
pub fn benchmark_function(x: f64) -> f64 {
    let chirp = 0.1 * x * x;
    let tone = 8.0 * x;
    (chirp.cos() + tone.sin() - (1.0 + chirp).sin() - (1.0 + tone).cos()) * (-0.01 * x * x).exp()
}

/// `n_points` equidistant samples over `[x_min, x_max]` (both endpoints
/// included) with responses `benchmark_function(x) + noise`. Noise is drawn
/// in x order from `rand_distr::Normal` driven by a ChaCha8 stream seeded
/// with `spec.seed`. Roles are left unassigned.
pub fn generate(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(spec.noise_mean, spec.noise_std)
        .map_err(|e| Error::Config { field: "noise_std", reason: e.to_string() })?;
    let last = (spec.n_points - 1) as f64;
    let width = spec.x_max - spec.x_min;

    let samples = (0..spec.n_points)
        .map(|i| {
            let x = if i + 1 == spec.n_points {
                spec.x_max
            } else {
                spec.x_min + width * i as f64 / last
            };
            let eps = if spec.noise_std == 0.0 { spec.noise_mean } else { noise.sample(&mut rng) };
            Sample::new(x, benchmark_function(x) + eps)
        })
        .collect();
    Dataset::new(samples)
}
