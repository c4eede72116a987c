use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qbohr_cli::commands;
use qbohr_cli::report::Status;

/// Exact computations with discrete quantum groups presented as block
/// matrix algebras: axiom checking, Haar functionals, slices, the
/// almost-periodicity test, and compactification Hopf presentations.
#[derive(Parser)]
#[command(name = "qbohr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the six axiom groups of a model on a probe window.
    CheckAxioms {
        /// builtin name (Z, Z^2, C(Z/n), C(S3), dual(S3), dual(Z/n)) or a
        /// model file path
        model: String,
        /// probe window: a lattice radius, or `full` for finite models
        #[arg(long, default_value = "4")]
        window: String,
    },
    /// Test whether an element's coproduct has finite tensor rank.
    ApTest {
        model: String,
        /// element expression, e.g. "char(2) + 3*delta(0)"
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        horizon: u64,
        /// rank cap; defaults to the dimension of the leg search space
        #[arg(long)]
        bound: Option<usize>,
        /// write the decomposition to a file
        #[arg(long)]
        emit: Option<String>,
    },
    /// Search for a separating window or a certified dependency.
    LemmaL {
        model: String,
        /// one expression per family member (repeat the flag)
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
        #[arg(long, default_value_t = 6)]
        horizon: u64,
    },
    /// Slice the coproduct of an element with a reduced functional.
    Slice {
        model: String,
        #[arg(long)]
        expr: String,
        /// `eval@<block>` or `entry@<block>:<row>,<col>`
        #[arg(long)]
        functional: String,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Solve for the invariant (Haar) functional on a window.
    Haar {
        model: String,
        #[arg(long, default_value = "4")]
        window: String,
        #[arg(long, default_value = "left")]
        side: String,
    },
    /// Verify a corepresentation file and certify its coefficients.
    CorepCheck {
        model: String,
        #[arg(long)]
        file: String,
        #[arg(long, default_value = "4")]
        window: String,
    },
    /// Generate the degree-truncated compactification presentation.
    Bohr {
        model: String,
        /// corepresentation files (repeat the flag)
        #[arg(long = "corep", required = true)]
        coreps: Vec<String>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Factor a compact-type Hopf algebra morphism through the almost
    /// periodic subalgebra.
    Factorize {
        model: String,
        /// hopf domain file: {"laurent": true}, {"trivial": true}, or
        /// {"presentation": ...}
        #[arg(long)]
        hopf: String,
        /// JSON object mapping generator labels to element expressions
        #[arg(long)]
        images: String,
        #[arg(long, default_value_t = 6)]
        horizon: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    let outcome = run(&echo, &cli.command);
    match outcome {
        Ok((report, status)) => {
            print!("{report}");
            eprintln!("elapsed: {:?}", started.elapsed());
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Usage as u8)
        }
    }
}

fn run(echo: &str, command: &Command) -> qbohr_core::Result<(String, Status)> {
    match command {
        Command::CheckAxioms { model, window } => {
            commands::check_axioms_cmd(echo, model, window)
        }
        Command::ApTest {
            model,
            expr,
            horizon,
            bound,
            emit,
        } => commands::ap_test_cmd(echo, model, expr, *horizon, *bound, emit.as_deref()),
        Command::LemmaL {
            model,
            exprs,
            horizon,
        } => commands::lemma_l_cmd(echo, model, exprs, *horizon),
        Command::Slice {
            model,
            expr,
            functional,
            side,
        } => commands::slice_cmd(echo, model, expr, functional, side),
        Command::Haar {
            model,
            window,
            side,
        } => commands::haar_cmd(echo, model, window, side),
        Command::CorepCheck {
            model,
            file,
            window,
        } => commands::corep_check_cmd(echo, model, file, window),
        Command::Bohr {
            model,
            coreps,
            degree,
            emit,
        } => commands::bohr_cmd(echo, model, coreps, *degree, emit.as_deref()),
        Command::Factorize {
            model,
            hopf,
            images,
            horizon,
        } => commands::factorize_cmd(echo, model, hopf, images, *horizon),
    }
}
