//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, RunConfig};
use crate::io::{self, InputError};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "syzkit", version, about = "Exact checks for torus-fibration cohomology and mirror-map models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Master seed for all random draws.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for floating-point residuals.
    #[arg(long = "tol", global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant suite on a CY3 datum file.
    CheckCy3 {
        #[arg(long)]
        input: PathBuf,
    },
    /// chi(O(D)) against -sigma_0.sigma_D and the Mukai pairing.
    Chi {
        #[arg(long)]
        input: PathBuf,
        /// Divisor coordinates, e.g. "1,0,-2".
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Maximally-unipotent conditions for commuting monodromies.
    Weights {
        /// One matrix or an array of matrices.
        #[arg(long)]
        input: PathBuf,
        /// Positive weights, one per matrix.
        #[arg(long)]
        weights: String,
    },
    /// Translation-monodromy suite on a K3 lattice model file.
    CheckK3 {
        #[arg(long)]
        input: PathBuf,
    },
    /// The special Lagrangian fibration of C^n - {1 + z_1...z_n = 0}.
    Slag {
        #[command(subcommand)]
        action: SlagAction,
    },
    /// Poincare-duality and contraction diagram on the n-torus.
    Torus {
        #[arg(long)]
        n: usize,
    },
    /// Leray E_2 table of a threefold and of its mirror.
    LerayTable {
        #[arg(long)]
        h11: u64,
        #[arg(long)]
        h12: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SlagAction {
    /// Residual sweep over seeded random points.
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// A point on the fiber over x and the fiber's type.
    Fiber {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// n-2 free phases.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        phases: String,
    },
    /// Discriminant strata containing x.
    Discriminant {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Monodromy about the discriminant branches.
    Monodromy {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Monodromy-invariant cohomology of a smooth fiber.
    Simplicity {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, InputError> {
        if !(self.tolerance > 0.0) {
            return Err(InputError::Invalid(format!("--tol must be positive, got {}", self.tolerance)));
        }
        Ok(RunConfig { trials: self.trials as usize, seed: self.seed, tolerance: self.tolerance })
    }
}

pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let cfg = cli.global.config()?;
    match &cli.command {
        Command::CheckCy3 { input } => Ok(commands::check_cy3(&io::load_cy3(input)?, &cfg)),
        Command::Chi { input, d } => commands::chi(&io::load_cy3(input)?, &io::parse_rational_list(d)?),
        Command::Weights { input, weights } => {
            commands::weights(&io::load_matrices(input)?, &io::parse_rational_list(weights)?)
        }
        Command::CheckK3 { input } => Ok(commands::check_k3(&io::load_k3(input)?, &cfg)),
        Command::Slag { action } => match action {
            SlagAction::Verify { n, samples } => commands::slag_verify(*n, *samples, &cfg),
            SlagAction::Fiber { n, x, theta, phases } => {
                commands::slag_fiber(*n, &io::parse_float_list(x)?, *theta, &io::parse_float_list(phases)?)
            }
            SlagAction::Discriminant { n, x } => commands::slag_discriminant(*n, &io::parse_float_list(x)?),
            SlagAction::Monodromy { n } => commands::slag_monodromy(*n),
            SlagAction::Simplicity { n } => commands::slag_simplicity(*n),
        },
        Command::Torus { n } => commands::torus(*n),
        Command::LerayTable { h11, h12 } => Ok(commands::leray_table(*h11, *h12)),
    }
}

/// Runs the CLI on `args` (including the program name). Returns the exit
/// code together with stdout and stderr text.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let out = if cli.global.json { report.to_json() } else { report.to_text() };
            (report.exit_code(), out, String::new())
        }
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
