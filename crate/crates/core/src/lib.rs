//! Supervised regression by iterative Fourier-domain low-pass filtering.
//!
//! The learner places every sample (training, validation, test) on one
//! uniform grid, mirrors it so the implied periodic extension is
//! continuous, and then alternates two operations:
//!
//! 1. low-pass filter the whole signal with an FFT, keeping `h` bins on each
//!    side of DC;
//! 2. reset every training node to its true response.
//!
//! The passband grows by `delta_bins` every `m` iterations. Held-out nodes
//! start at zero and are filled in by the filter; fitting stops when the
//! validation R² is flat across a whole block of `m` iterations.
//!
//! ```
//! use fourierfit_core::{fit, synth, FitConfig, SynthSpec};
//!
//! let data = synth::generate(&SynthSpec::paper_benchmark(3)).unwrap();
//! let result = fit(&data, &FitConfig::paper_benchmark()).unwrap();
//! assert!(result.final_record().unwrap().r2_test.unwrap() > 0.8);
//! ```

pub mod domain;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod spectral;
pub mod synth;
pub mod trainer;

pub use domain::{
    Dataset, FitConfig, FitResult, GridSignal, IterationRecord, Prediction, Sample, SampleRole,
    Spectrum, Termination,
};
pub use error::{Error, Result};
pub use metrics::{r2, window_std, MetricWindow};
pub use spectral::{dft, dirichlet_smooth, idft, lowpass};
pub use synth::SynthSpec;
pub use trainer::{fit, h_bins_at, should_stop, step, TrainerState, CALIBRATED_DELTA_BINS};
