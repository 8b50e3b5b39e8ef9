//! `eisk3`: runs the verification kernels of `eisk3-core` and writes
//! deterministic JSON or CSV reports.
//!
//! Exit codes: 0 when every verdict passes, 1 when a check fails (the
//! report is still written), 2 on usage or domain errors.

mod commands;
mod report;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eisk3_core::quadrature::QuadOptions;

use crate::commands::Ctx;
use crate::report::{emit, render, Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "eisk3", version, about = "Verification suite for Eisenstein K3 surfaces and their higher Chow cycles")]
struct Cli {
    /// Output format; tables default to csv, verdicts to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, visible_alias = "report")]
    output: Option<PathBuf>,

    /// Tolerance override for the command's main check.
    #[arg(long, global = true, env = "EISK3_TOL")]
    tol: Option<f64>,

    /// Finest tanh-sinh level.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(3..=20))]
    level_cap: u32,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240229)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (r, a, n, k) of a catalog family or a branch configuration file.
    Invariants {
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Canonical branch configurations and their position in the (r, a) region.
    Catalog {
        #[arg(long)]
        r: Option<i64>,
    },
    /// Family dimension against the ball quotient dimension 10 - r/2.
    DimensionCheck,
    /// Discriminant group and Hermitian Gram matrix of a lattice file.
    Lattice {
        #[arg(long)]
        input: PathBuf,
    },
    /// Singular points and special fibers of a (3,3) branch curve.
    Tangents {
        /// JSON coefficient map; defaults to the normalized family.
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        direction: u8,
        /// Exact value of the parameter, e.g. 1/2 or 0.5.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Fiber over q12, the functions f1, f2 and their divisors.
    CycleCheck {
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Boundary of the 2-chain combination.
    ChainCheck,
    /// The period P(lambda) by tanh-sinh quadrature.
    Period {
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Uniform sweep lo:hi:n.
        #[arg(long)]
        grid: Option<String>,
    },
    /// The normal function value G(lambda).
    Gvalue {
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        /// Also compare with a seeded Monte Carlo estimate.
        #[arg(long)]
        mc_samples: Option<u64>,
    },
    /// Residual of the Picard-Fuchs operator on the period.
    VerifyPf {
        /// Chebyshev grid lo:hi:n.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 64)]
        degree: usize,
    },
    /// Residual of the inhomogeneous equation on g = G/(1 - zeta).
    VerifyInhomog {
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        /// Tolerance for each sample of g.
        #[arg(long, default_value_t = 1e-8)]
        quad_tol: f64,
        /// Sample the period instead of g; the check is then expected to fail.
        #[arg(long)]
        control: bool,
    },
    /// Potential identity for the consistent and misprinted constants.
    PotentialCheck {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Section identity on the resolved base change.
    ResolutionCheck {
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
    /// Every check above, in one report.
    PaperSuite {
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Invariants { .. } => "invariants",
            Command::Catalog { .. } => "catalog",
            Command::DimensionCheck => "dimension-check",
            Command::Lattice { .. } => "lattice",
            Command::Tangents { .. } => "tangents",
            Command::CycleCheck { .. } => "cycle-check",
            Command::ChainCheck => "chain-check",
            Command::Period { .. } => "period",
            Command::Gvalue { .. } => "gvalue",
            Command::VerifyPf { .. } => "verify-pf",
            Command::VerifyInhomog { .. } => "verify-inhomog",
            Command::PotentialCheck { .. } => "potential-check",
            Command::ResolutionCheck { .. } => "resolution-check",
            Command::PaperSuite { .. } => "paper-suite",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Invariants { .. } | Command::Catalog { .. } | Command::DimensionCheck => Format::Csv,
            Command::Period { grid: Some(_), .. } | Command::Gvalue { grid: Some(_), .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> eisk3_core::Result<Outcome> {
    if let Some(t) = ctx.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(eisk3_core::Error::Domain(format!("--tol must be positive, got {t}")));
        }
    }
    match cmd {
        Command::Invariants { r, config } => commands::invariants_table(*r, config.as_deref()),
        Command::Catalog { r } => commands::catalog_table(*r),
        Command::DimensionCheck => commands::dimension_table(),
        Command::Lattice { input } => commands::lattice_report(input),
        Command::Tangents { poly, direction, lambda } => commands::tangents(poly.as_deref(), *direction, lambda.as_deref()),
        Command::CycleCheck { lambda } => commands::cycle_check(*lambda),
        Command::ChainCheck => commands::chain_check(),
        Command::Period { lambda, grid } => commands::period(ctx, *lambda, grid.as_deref()),
        Command::Gvalue { lambda, grid, mc_samples } => commands::gvalue(ctx, *lambda, grid.as_deref(), *mc_samples),
        Command::VerifyPf { grid, degree } => commands::verify_pf(ctx, grid.as_deref(), *degree),
        Command::VerifyInhomog { grid, degree, quad_tol, control } => {
            commands::verify_inhomog(ctx, grid.as_deref(), *degree, *quad_tol, *control)
        }
        Command::PotentialCheck { n } => commands::potential_check(ctx, *n),
        Command::ResolutionCheck { max_n } => commands::resolution_check(*max_n),
        Command::PaperSuite { mc_samples } => suite::run(ctx, &suite::SuiteOptions { mc_samples: *mc_samples }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { tol: cli.tol, quad: QuadOptions { level_cap: cli.level_cap, ..QuadOptions::default() }, seed: cli.seed };
    let name = cli.command.name();
    let outcome = match dispatch(&cli.command, &ctx) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("eisk3 {name}: {e}");
            return ExitCode::from(2);
        }
    };
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let written = render(name, &outcome, format).and_then(|text| emit(&text, cli.output.as_deref()));
    if let Err(msg) = written {
        eprintln!("eisk3 {name}: {msg}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        if cli.output.is_some() {
            eprintln!("eisk3 {name}: verification failed");
        }
        ExitCode::from(1)
    }
}
