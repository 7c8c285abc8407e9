use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fourierfit_cli::{cmd_fit, cmd_synth, FitArgs, SynthArgs};

#[derive(Parser, Debug)]
#[command(name = "fourierfit", version, about = "Regression by iterative Fourier low-pass filtering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the noisy chirp benchmark to a CSV file
    Synth(SynthArgs),
    /// Fit a dataset and write predictions and the iteration trace
    Fit(FitArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Synth(args) => cmd_synth(args).map(|r| {
            println!("wrote {} samples to {}", r.samples, r.path.display());
        }),
        Command::Fit(args) => cmd_fit(args).map(|r| {
            print!("{r}");
            println!("predictions: {}", args.out_pred.display());
            println!("trace: {}", args.out_trace.display());
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
