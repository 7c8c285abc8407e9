use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::Args;
use fourierfit_core::{fit, synth, FitConfig, FitResult, SampleRole, SynthSpec, CALIBRATED_DELTA_BINS};

use crate::error::CliError;
use crate::formats;

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Number of equidistant points
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    #[arg(long, default_value_t = -25.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 25.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub noise_mean: f64,
    #[arg(long, default_value_t = 0.1)]
    pub noise_std: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path
    #[arg(long, default_value = "data.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone)]
pub struct SynthReport {
    pub path: PathBuf,
    pub samples: usize,
}

pub fn cmd_synth(args: &SynthArgs) -> Result<SynthReport, CliError> {
    let spec = SynthSpec {
        n_points: args.n,
        x_min: args.x_min,
        x_max: args.x_max,
        noise_mean: args.noise_mean,
        noise_std: args.noise_std,
        seed: args.seed,
    };
    let dataset = synth::generate(&spec)?;
    let file = create(&args.out)?;
    formats::write_dataset_to(file, &dataset).map_err(|e| write_err(&args.out, e.into()))?;
    Ok(SynthReport { path: args.out.clone(), samples: dataset.len() })
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Input CSV with header `x,y` (optionally `role`)
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.7)]
    pub train_frac: f64,
    #[arg(long, default_value_t = 0.15)]
    pub val_frac: f64,
    #[arg(long, default_value_t = 0.15)]
    pub test_frac: f64,
    /// Iterations per bandwidth block
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    /// Stop when the block standard deviation of validation R² drops below this
    #[arg(long, default_value_t = 1e-4)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    /// Initial passband half-width in bins (0 = DC only)
    #[arg(long, default_value_t = 0)]
    pub h0: usize,
    /// Passband growth per block in bins
    #[arg(long, default_value_t = CALIBRATED_DELTA_BINS)]
    pub delta_bins: usize,
    /// Seed for the random split
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Uniform grid size (power of two); defaults to the next power of two
    /// at or above the sample count
    #[arg(long)]
    pub grid_size: Option<usize>,
    #[arg(long, default_value = "pred.csv")]
    pub out_pred: PathBuf,
    #[arg(long, default_value = "trace.json")]
    pub out_trace: PathBuf,
}

impl FitArgs {
    pub fn config(&self) -> FitConfig {
        FitConfig {
            train_frac: self.train_frac,
            val_frac: self.val_frac,
            test_frac: self.test_frac,
            m: self.m,
            sigma_min: self.sigma_min,
            max_iter: self.max_iter,
            h0: self.h0,
            delta_bins: self.delta_bins,
            seed: self.seed,
            grid_size: self.grid_size,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FitReport {
    pub result: FitResult,
}

impl std::fmt::Display for FitReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "termination: {}", self.result.termination)?;
        if let Some(last) = self.result.final_record() {
            writeln!(f, "final iteration: {}", last.n)?;
            writeln!(f, "h_bins: {}", last.h_bins)?;
            for role in [SampleRole::Train, SampleRole::Validation, SampleRole::Test] {
                if let Some(r2) = last.r2(role) {
                    writeln!(f, "r2_{role}: {r2:.6}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn cmd_fit(args: &FitArgs) -> Result<FitReport, CliError> {
    let config = args.config().validate()?;
    let dataset = formats::read_dataset(&args.input)?;
    let result = fit(&dataset, &config)?;

    let pred = create(&args.out_pred)?;
    formats::write_predictions_to(pred, &result).map_err(|e| write_err(&args.out_pred, e.into()))?;
    let trace = create(&args.out_trace)?;
    formats::write_trace_to(trace, &result).map_err(|e| write_err(&args.out_trace, e))?;
    Ok(FitReport { result })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| write_err(path, e))
}

fn write_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Write { path: path.to_path_buf(), source }
}
