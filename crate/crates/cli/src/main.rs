mod commands;
mod markdown;
mod report;

use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncg_core::actions::Template;
use ncg_core::fluctuations::Adjointness;

use crate::commands::CliError;
use crate::report::Report;

/// Exact checks of real and twisted spectral triples.
#[derive(Debug, Parser)]
#[command(name = "ncg", version)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Product {
    Standard,
    Rho,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TemplateArg {
    Weyl,
    WeylRight,
    Dirac,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the model catalog and each model's expected statuses.
    ListModels,
    /// Validate a model and run the order-zero and first-order checks.
    Check {
        model: String,
        /// `grading`, or a JSON file with the rows of a twisting operator.
        #[arg(long)]
        twist: Option<String>,
        /// Part of the Dirac operator to check.
        #[arg(long, default_value = "all")]
        part: String,
        #[arg(long, env = "NCG_GENERATIONS", default_value_t = 1)]
        generations: usize,
    },
    /// Compute the selfadjoint fluctuation family of a model.
    Fluctuate {
        model: String,
        /// Adjoint used for selfadjointness.
        #[arg(long, value_enum, default_value_t = Product::Standard)]
        product: Product,
        #[arg(long, default_value = "all")]
        part: String,
        #[arg(long, env = "NCG_GENERATIONS", default_value_t = 1)]
        generations: usize,
    },
    /// Compare the fermionic action kernel with a Lorentzian template.
    Action {
        model: String,
        /// Energy replacing the time derivative (`∂0 → i·f0`).
        #[arg(long, default_value = "f0")]
        planewave: String,
        #[arg(long, value_enum)]
        template: TemplateArg,
    },
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::ListModels => Ok(commands::list_models()),
        Command::Check { model, twist, part, generations } => commands::check(model, twist.as_deref(), part, *generations),
        Command::Fluctuate { model, product, part, generations } => {
            let adj = match product {
                Product::Standard => Adjointness::Standard,
                Product::Rho => Adjointness::Rho,
            };
            commands::fluctuate(model, adj, part, *generations)
        }
        Command::Action { model, planewave, template } => {
            let t = match template {
                TemplateArg::Weyl => Template::Weyl,
                TemplateArg::WeylRight => Template::WeylRight,
                TemplateArg::Dirac => Template::Dirac,
            };
            commands::action(model, t, planewave)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Md => markdown::render(&report),
    };
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if report.expectations_met {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
