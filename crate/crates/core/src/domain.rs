//! Core data types shared by the pipeline, trainer and front ends.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trainer::CALIBRATED_DELTA_BINS;

/// Which subset a sample (or grid node) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleRole {
    Train,
    #[serde(rename = "val")]
    Validation,
    Test,
    /// Node inserted to make the sampling uniform. Never has a true response.
    Augmented,
}

impl SampleRole {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleRole::Train => "train",
            SampleRole::Validation => "val",
            SampleRole::Test => "test",
            SampleRole::Augmented => "augmented",
        }
    }
}

impl fmt::Display for SampleRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SampleRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "train" => Ok(SampleRole::Train),
            "val" | "validation" => Ok(SampleRole::Validation),
            "test" => Ok(SampleRole::Test),
            "augmented" => Ok(SampleRole::Augmented),
            other => Err(format!("unknown role `{other}` (expected train, val or test)")),
        }
    }
}

/// One observation. `role` is `None` until a split assigns it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub y: Option<f64>,
    pub role: Option<SampleRole>,
}

impl Sample {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y: Some(y), role: None }
    }

    pub fn with_role(x: f64, y: f64, role: SampleRole) -> Self {
        Self { x, y: Some(y), role: Some(role) }
    }

    pub fn augmented(x: f64) -> Self {
        Self { x, y: None, role: Some(SampleRole::Augmented) }
    }
}

/// A validated, x-sorted collection of samples.
///
/// Either every sample that carries a response has a role, or none does.
/// In the first case at least one of them is a training sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Sample>,
}

impl Dataset {
    pub fn new(mut samples: Vec<Sample>) -> Result<Self> {
        for s in &samples {
            if !s.x.is_finite() {
                return Err(Error::Dataset(format!("non-finite predictor value {}", s.x)));
            }
            match (s.y, s.role) {
                (Some(y), _) if !y.is_finite() => {
                    return Err(Error::Dataset(format!("non-finite response {y} at x = {}", s.x)));
                }
                (Some(_), Some(SampleRole::Augmented)) => {
                    return Err(Error::Dataset(format!(
                        "augmented sample at x = {} carries a response",
                        s.x
                    )));
                }
                (None, role) if role != Some(SampleRole::Augmented) => {
                    return Err(Error::Dataset(format!("missing response at x = {}", s.x)));
                }
                _ => {}
            }
        }

        samples.sort_by(|a, b| a.x.total_cmp(&b.x));
        if let Some(w) = samples.windows(2).find(|w| w[0].x == w[1].x) {
            return Err(Error::DuplicateX(w[0].x));
        }

        let observed: Vec<&Sample> = samples.iter().filter(|s| s.y.is_some()).collect();
        if observed.is_empty() {
            return Err(Error::Dataset("no samples with a response".into()));
        }
        let assigned = observed.iter().filter(|s| s.role.is_some()).count();
        if assigned != 0 && assigned != observed.len() {
            return Err(Error::Dataset(format!(
                "{assigned} of {} samples have a role; assign all or none",
                observed.len()
            )));
        }
        if assigned != 0 && !observed.iter().any(|s| s.role == Some(SampleRole::Train)) {
            return Err(Error::NoTrainingSamples(observed.len()));
        }

        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Number of samples that carry a true response.
    pub fn observed_len(&self) -> usize {
        self.samples.iter().filter(|s| s.y.is_some()).count()
    }

    /// True when every observed sample already has a train/val/test role.
    pub fn has_roles(&self) -> bool {
        self.samples.iter().filter(|s| s.y.is_some()).all(|s| s.role.is_some())
    }

    /// Assigns `roles` to the observed samples in x order; augmented samples
    /// are skipped.
    pub fn with_roles(&self, roles: &[SampleRole]) -> Result<Self> {
        let observed = self.observed_len();
        if roles.len() != observed {
            return Err(Error::LengthMismatch(roles.len(), observed));
        }
        let mut roles = roles.iter();
        let samples = self
            .samples
            .iter()
            .map(|s| {
                if s.y.is_some() {
                    Sample { role: roles.next().copied(), ..*s }
                } else {
                    *s
                }
            })
            .collect();
        Self::new(samples)
    }
}

/// Uniformly spaced working signal: current estimates plus, per node, the
/// role and (if known) the true response.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    origin: f64,
    dx: f64,
    values: Vec<f64>,
    roles: Vec<SampleRole>,
    truths: Vec<Option<f64>>,
}

impl GridSignal {
    pub fn new(
        origin: f64,
        dx: f64,
        values: Vec<f64>,
        roles: Vec<SampleRole>,
        truths: Vec<Option<f64>>,
    ) -> Result<Self> {
        if values.len() != roles.len() {
            return Err(Error::LengthMismatch(values.len(), roles.len()));
        }
        if values.len() != truths.len() {
            return Err(Error::LengthMismatch(values.len(), truths.len()));
        }
        if !values.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(values.len()));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::Config { field: "dx", reason: format!("grid spacing {dx} must be positive") });
        }
        for (i, (role, truth)) in roles.iter().zip(&truths).enumerate() {
            if (*role == SampleRole::Augmented) == truth.is_some() {
                return Err(Error::Dataset(format!(
                    "node {i}: role {role} inconsistent with truth {truth:?}"
                )));
            }
        }
        Ok(Self { origin, dx, values, roles, truths })
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Spatial window width `L = M * dx`.
    pub fn window_width(&self) -> f64 {
        self.values.len() as f64 * self.dx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn roles(&self) -> &[SampleRole] {
        &self.roles
    }

    pub fn truths(&self) -> &[Option<f64>] {
        &self.truths
    }

    pub fn x_at(&self, node: usize) -> f64 {
        self.origin + node as f64 * self.dx
    }

    /// Nearest node to `x`, if it lies on the grid.
    pub fn node_of(&self, x: f64) -> Option<usize> {
        let idx = ((x - self.origin) / self.dx).round();
        (idx >= 0.0 && (idx as usize) < self.len()).then_some(idx as usize)
    }

    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch(values.len(), self.len()));
        }
        Ok(Self { values, ..self.clone() })
    }

    pub(crate) fn from_parts_unchecked(
        origin: f64,
        dx: f64,
        values: Vec<f64>,
        roles: Vec<SampleRole>,
        truths: Vec<Option<f64>>,
    ) -> Self {
        debug_assert!(values.len() == roles.len() && roles.len() == truths.len());
        Self { origin, dx, values, roles, truths }
    }
}

/// Complex DFT coefficients with their bin spacing `1 / L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub coefficients: Vec<Complex64>,
    pub bin_spacing: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Frequency of bin `j` (negative for the upper half).
    pub fn frequency(&self, j: usize) -> f64 {
        let m = self.len();
        let signed = if j <= m / 2 { j as f64 } else { j as f64 - m as f64 };
        signed * self.bin_spacing
    }

    /// Largest deviation from `c[j] == conj(c[M - j])`, relative to the
    /// largest coefficient magnitude.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let m = self.len();
        let scale = self.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let worst = (1..m)
            .map(|j| (self.coefficients[j] - self.coefficients[m - j].conj()).norm())
            .fold(self.coefficients[0].im.abs(), f64::max);
        worst / scale
    }
}

/// Every knob of the learner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub train_frac: f64,
    pub val_frac: f64,
    pub test_frac: f64,
    /// Iterations per bandwidth block.
    pub m: usize,
    /// Convergence threshold on the per-block standard deviation of R².
    pub sigma_min: f64,
    pub max_iter: usize,
    /// Passband half-width, in bins, of the first block.
    pub h0: usize,
    /// Passband growth per block, in bins.
    pub delta_bins: usize,
    pub seed: u64,
    /// Uniform grid size before mirroring. `None` picks the smallest power
    /// of two holding every sample.
    pub grid_size: Option<usize>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            train_frac: 0.7,
            val_frac: 0.15,
            test_frac: 0.15,
            m: 5,
            sigma_min: 1e-4,
            max_iter: 100,
            h0: 0,
            delta_bins: 1,
            seed: 0,
            grid_size: None,
        }
    }
}

impl FitConfig {
    /// Defaults with the calibrated bandwidth step.
    pub fn paper_benchmark() -> Self {
        Self { delta_bins: CALIBRATED_DELTA_BINS, ..Self::default() }
    }

    pub fn validate(self) -> Result<Self> {
        let fracs = [
            ("train_frac", self.train_frac),
            ("val_frac", self.val_frac),
            ("test_frac", self.test_frac),
        ];
        for (field, v) in fracs {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config { field, reason: format!("{v} is outside [0, 1]") });
            }
        }
        let sum = self.train_frac + self.val_frac + self.test_frac;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config {
                field: "train_frac + val_frac + test_frac",
                reason: format!("fractions sum to {sum}, expected 1"),
            });
        }
        if self.m < 2 {
            return Err(Error::Config { field: "m", reason: format!("{} < 2", self.m) });
        }
        if self.sigma_min.is_nan() || self.sigma_min < 0.0 {
            return Err(Error::Config {
                field: "sigma_min",
                reason: format!("{} is not a non-negative number", self.sigma_min),
            });
        }
        if self.max_iter == 0 {
            return Err(Error::Config { field: "max_iter", reason: "must be positive".into() });
        }
        if self.delta_bins == 0 {
            return Err(Error::Config { field: "delta_bins", reason: "must be positive".into() });
        }
        if let Some(g) = self.grid_size {
            if !g.is_power_of_two() {
                return Err(Error::Config {
                    field: "grid_size",
                    reason: format!("{g} is not a power of two"),
                });
            }
        }
        Ok(self)
    }
}

/// One row of the fit trace. Scores are `None` for roles with no samples (or
/// zero-variance truth).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub n: usize,
    pub h_bins: usize,
    pub r2_train: Option<f64>,
    pub r2_val: Option<f64>,
    pub r2_test: Option<f64>,
    /// Standard deviation of the monitored R² over the block; set only on the
    /// last iteration of a block.
    pub sigma_window: Option<f64>,
}

impl IterationRecord {
    pub fn r2(&self, role: SampleRole) -> Option<f64> {
        match role {
            SampleRole::Train => self.r2_train,
            SampleRole::Validation => self.r2_val,
            SampleRole::Test => self.r2_test,
            SampleRole::Augmented => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Termination {
    Converged,
    MaxIterReached,
    BandwidthExhausted,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Converged => "CONVERGED",
            Termination::MaxIterReached => "MAX_ITER_REACHED",
            Termination::BandwidthExhausted => "BANDWIDTH_EXHAUSTED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub x: f64,
    pub y_true: Option<f64>,
    pub y_pred: f64,
    pub role: SampleRole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// One entry per non-augmented input sample, in x order.
    pub predictions: Vec<Prediction>,
    pub trace: Vec<IterationRecord>,
    pub termination: Termination,
    /// The configuration actually used, with `grid_size` resolved.
    pub config: FitConfig,
}

impl FitResult {
    pub fn final_record(&self) -> Option<&IterationRecord> {
        self.trace.last()
    }
}
