//! Shock-tube benchmark CLI.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eulerlab::bench::{self, builtin_suite, convergence_study, emit_outputs, TestCase};
use eulerlab::engine::Scheme;
use eulerlab::Error;

const OUT_DIR_ENV: &str = "EULERLAB_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "eulerlab",
    about = "1D Euler solver laboratory: shock-tube benchmarks, error norms, convergence studies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one case with one scheme and write solution.csv, report.json,
    /// and plot.svg.
    Run(RunArgs),
    /// Grid-refinement study: L1 density errors and observed orders on a
    /// doubling grid sequence.
    Convergence(ConvergenceArgs),
    /// List the built-in benchmark cases.
    ListCases,
    /// List the available schemes.
    ListSchemes,
}

#[derive(Args)]
struct RunArgs {
    /// Built-in case name or path to a JSON case file.
    #[arg(long)]
    case: String,
    /// Scheme name (see list-schemes).
    #[arg(long, value_parser = parse_scheme)]
    scheme: Scheme,
    /// Number of interior cells.
    #[arg(long)]
    cells: usize,
    /// CFL number in (0, 1] (<= 0.5 for rcm).
    #[arg(long)]
    cfl: f64,
    /// Override the case's final time.
    #[arg(long)]
    t_end: Option<f64>,
    /// Output directory (default: $EULERLAB_OUT_DIR or ./out).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Built-in case name or path to a JSON case file.
    #[arg(long)]
    case: String,
    /// Scheme name (see list-schemes).
    #[arg(long, value_parser = parse_scheme)]
    scheme: Scheme,
    /// Cell count of the coarsest grid.
    #[arg(long)]
    base_cells: usize,
    /// Number of grids (each doubling the previous).
    #[arg(long)]
    levels: usize,
    /// CFL number.
    #[arg(long)]
    cfl: f64,
}

fn parse_scheme(name: &str) -> Result<Scheme, String> {
    Scheme::from_name(name).ok_or_else(|| {
        let names: Vec<_> = Scheme::ALL.iter().map(|s| s.name()).collect();
        format!("unknown scheme {name:?}; available: {}", names.join(", "))
    })
}

fn resolve_case(name_or_path: &str) -> Result<TestCase, Error> {
    if let Some(case) = bench::find_case(name_or_path) {
        return Ok(case);
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        return bench::load_case_file(path);
    }
    let names: Vec<_> = builtin_suite().iter().map(|c| c.name.clone()).collect();
    Err(Error::Config(format!(
        "unknown case {name_or_path:?}: not a built-in ({}) and no such file",
        names.join(", ")
    )))
}

fn out_dir(arg: Option<PathBuf>) -> PathBuf {
    arg.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn cmd_run(args: RunArgs) -> Result<(), Error> {
    let case = resolve_case(&args.case)?;
    let g = case.gas()?;
    let run = bench::run_case(&case, args.scheme, args.cells, args.cfl, args.t_end)?;

    let dir = out_dir(args.out);
    let paths = emit_outputs(&run.report, &run.field, run.reference.as_ref(), g, &dir)?;

    let r = &run.report;
    println!(
        "{} | {} | {} cells | cfl {} | t = {} | {} steps",
        r.case, r.scheme, r.n_cells, r.cfl, r.t_end, r.steps
    );
    println!(
        "conservation drift (rho, mom, E): {:.3e} {:.3e} {:.3e}",
        r.conservation_drift[0], r.conservation_drift[1], r.conservation_drift[2]
    );
    match (&r.norms, &r.reference) {
        (Some(n), Some(label)) => {
            println!("reference: {label}");
            println!(
                "L1(rho) = {:.6e}  L2(rho) = {:.6e}  Linf(rho) = {:.6e}",
                n.rho.l1, n.rho.l2, n.rho.linf
            );
        }
        _ => println!("reference: unavailable (error norms skipped)"),
    }
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_convergence(args: ConvergenceArgs) -> Result<(), Error> {
    let case = resolve_case(&args.case)?;
    let table = convergence_study(&case, args.scheme, args.base_cells, args.levels, args.cfl)?;
    println!("{} | {} | cfl {}", table.case, table.scheme, args.cfl);
    println!("{:>8}  {:>14}  {:>8}", "cells", "L1(rho)", "order");
    for (i, n) in table.cells.iter().enumerate() {
        let order = if i == 0 {
            String::from("-")
        } else {
            format!("{:.3}", table.observed_orders[i - 1])
        };
        println!("{:>8}  {:>14.6e}  {:>8}", n, table.l1_density[i], order);
    }
    Ok(())
}

fn cmd_list_cases() {
    for case in builtin_suite() {
        let desc = match &case.initial {
            bench::InitialData::Diaphragm { left, right, x0 } => format!(
                "diaphragm at x0={}: ({}, {}, {}) | ({}, {}, {})",
                x0, left.rho, left.u, left.p, right.rho, right.u, right.p
            ),
            bench::InitialData::DensityWave { rho_mean, rho_amplitude, velocity, pressure } => {
                format!(
                    "density wave rho = {rho_mean} + {rho_amplitude} sin(2 pi x), u = {velocity}, p = {pressure}"
                )
            }
        };
        println!(
            "{:<14} t_end = {:<6} gamma = {:<4} {}",
            case.name, case.t_end, case.gamma, desc
        );
    }
}

fn cmd_list_schemes() {
    for scheme in Scheme::ALL {
        let note = match scheme {
            Scheme::Flux(m) => match m.name() {
                "godunov-exact" => "first order, exact Riemann solver flux",
                "godunov-linearised" => "first order, linearised (1962) solver flux",
                "hll" => "first order, two-wave HLL flux",
                "lax-friedrichs" => "first order, symmetric grid-speed flux",
                "lax-wendroff" => "second order, non-monotone two-step flux",
                _ => "second order, MUSCL reconstruction + midpoint time term",
            },
            Scheme::RandomChoice => "Glimm's random choice method (cfl <= 0.5, non-conservative)",
        };
        println!("{:<20} {}", scheme.name(), note);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::ListCases => {
            cmd_list_cases();
            Ok(())
        }
        Command::ListSchemes => {
            cmd_list_schemes();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
