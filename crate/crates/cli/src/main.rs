//! `tinv`: bases, harmonic decomposition, invariant evaluation, equivalence,
//! reconstruction, rewriting and mesh export for even-degree ternary forms.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 degenerate form,
//! 3 non-invariant rewrite input, 4 no unambiguous reconstruction,
//! 5 numerical verification of a rewrite failed.

mod commands;
mod error;
mod mesh;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "tinv",
    version,
    about = "Rational O(3)-invariants of even-degree ternary forms"
)]
struct Cli {
    /// Relative genericity tolerance for the eigenvalue gap and for comparisons.
    #[arg(long, global = true, default_value_t = ternary_invariants::DEFAULT_TOL)]
    tol: f64,
    /// Seed of every randomized self-check.
    #[arg(long, global = true, default_value_t = ternary_invariants::rewrite::DEFAULT_VERIFY_SEED, value_parser = parse_seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the equivariant spanning family `u` or the slice basis `w`.
    Basis(BasisArgs),
    /// Split a form into harmonic components.
    Decompose(FormArgs),
    /// Evaluate the generating invariants of a form file or of every file in a directory.
    Invariants(FormArgs),
    /// Decide whether two forms lie in one orthogonal orbit.
    Equiv(EquivArgs),
    /// Build a slice form with prescribed invariant values.
    Reconstruct(ReconstructArgs),
    /// Rewrite an invariant expression in the generators.
    Rewrite(RewriteArgs),
    /// Export the surface `{f(u)·u : |u| = 1}` as a Wavefront OBJ mesh.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct BasisArgs {
    /// Degree 2d of the forms (even, at least 4).
    #[arg(long)]
    degree: u32,
    /// Dump the slice basis `w` instead of the spanning family `u`.
    #[arg(long)]
    slice: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Form file (JSON or polynomial text) or, for `invariants`, a directory of them.
    path: PathBuf,
    /// Expected degree; an error if the file holds a form of another degree.
    #[arg(long)]
    degree: Option<u32>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct EquivArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    /// Invariant-vector JSON, as printed by `invariants`.
    path: PathBuf,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct RewriteArgs {
    /// Expression over a1..a3, al[i][j], ainf (and lam[i], r[i], s[i] for quartics).
    expr: String,
    /// Degree 2d of the underlying forms.
    #[arg(long)]
    degree: u32,
    /// Use the 13 auxiliary quartic generators instead of the minimal ones.
    #[arg(long)]
    aux: bool,
    /// Print the compact form that keeps `D2` or `Il0` unexpanded.
    #[arg(long)]
    compact: bool,
    /// Number of random slice points at which the result is checked (0 disables).
    #[arg(long, default_value_t = 10)]
    verify: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Form file (JSON or polynomial text).
    path: PathBuf,
    /// Icosphere subdivision level.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=8))]
    subdiv: u32,
    /// Output OBJ path; a material library is written next to it.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct Format {
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
    .map_err(|e| e.to_string())
}

fn run(cli: Cli, out: &mut String) -> Result<(), CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    match cli.command {
        Command::Basis(a) => commands::basis(a.degree, a.slice, a.format.text, out),
        Command::Decompose(a) => commands::decompose(&a.path, a.degree, a.format.text, out),
        Command::Invariants(a) => {
            commands::invariants(&a.path, a.degree, cli.tol, a.format.text, out)
        }
        Command::Equiv(a) => commands::equiv(&a.first, &a.second, cli.tol, a.json, out),
        Command::Reconstruct(a) => commands::reconstruct(&a.path, a.format.text, out),
        Command::Rewrite(a) => commands::rewrite(
            &commands::RewriteOptions {
                text: &a.expr,
                degree: a.degree,
                aux: a.aux,
                compact: a.compact,
                samples: a.verify,
                seed: cli.seed,
                json: a.json,
            },
            out,
        ),
        Command::Render(a) => commands::render(&a.path, a.subdiv, &a.output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
    {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
