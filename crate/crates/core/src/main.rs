//! Command-line front end: scenario runner plus ad-hoc Mittag-Leffler
//! evaluation, classification, and solving.
//!
//! Exit codes: 0 success, 2 input/domain error, 3 numeric non-convergence.

use clap::{Parser, Subcommand};
use nabla_fde::csv::{format_f64, read_input_csv, write_sweep_csv};
use nabla_fde::error::Error;
use nabla_fde::mittag_leffler::DEFAULT_TOL;
use nabla_fde::scenario::{run_scenario, MethodChoice, Scenario};
use nabla_fde::solver::{solve_explicit, solve_recursive, InputSignal, SystemSpec};
use nabla_fde::{classify_zero_input, ml_eval, MlQuery};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nabla-fde",
    version,
    about = "Nabla fractional difference systems: solve, classify, evaluate, reproduce sweeps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a built-in case (case1..case4) or a .scn scenario file
    Run {
        /// case1 | case2 | case3 | case4 | path to a scenario file
        scenario: String,
        /// Output directory for the CSV and SVG
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario horizon
        #[arg(long)]
        horizon: Option<usize>,
        /// auto | explicit | recursive
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Evaluate the discrete Mittag-Leffler function F_{alpha,beta}(lambda, k, a)
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Classify the zero-input response from (alpha, lambda, b)
    Classify {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b2: f64,
        #[arg(long, default_value_t = 1e-9)]
        boundary_tol: f64,
    },
    /// Solve the system and write the trajectory as CSV
    Solve {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        b0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b2: f64,
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long)]
        horizon: usize,
        /// Optional input table u as CSV (header `k,u`, rows a+1..a+K)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// auto | explicit | recursive
        #[arg(long, default_value = "auto")]
        method: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::SeriesNotConvergent(_)) {
                eprintln!("hint: the series only converges for |lambda| < 1; `nabla-fde solve` uses the exact recursion instead");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn build_b(alpha: f64, b0: f64, b1: f64, b2: f64) -> Result<Vec<f64>, Error> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let n = alpha.ceil() as usize;
    let given = [b0, b1, b2];
    for (i, &v) in given.iter().enumerate().skip(n) {
        if v != 0.0 {
            return Err(Error::InvalidArgument(format!(
                "b{i} = {v} given but order {alpha} takes {n} initial condition(s)"
            )));
        }
    }
    if n > 3 {
        return Err(Error::InvalidArgument(format!(
            "orders above 3 are not exposed on the command line (alpha = {alpha})"
        )));
    }
    Ok(given[..n].to_vec())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Run { scenario, out, horizon, method } => {
            let mut sc = match Scenario::builtin(&scenario) {
                Some(sc) => sc,
                None => {
                    let text = std::fs::read_to_string(&scenario).map_err(|e| Error::Io {
                        path: scenario.clone(),
                        msg: format!("{e} (not a built-in case either)"),
                    })?;
                    Scenario::parse(&text)?
                }
            };
            if let Some(h) = horizon {
                sc.horizon = h;
            }
            sc.method = MethodChoice::parse(&method)?;
            let result = run_scenario(&sc, &out)?;
            println!("wrote {}", result.csv_path.display());
            println!("wrote {}", result.svg_path.display());
            let param = if sc.sweeps_alpha() { "alpha" } else { "lambda" };
            println!("{param:>8}  {:>28}  {:>18}  overshoot  method", "classifier", "empirical");
            for s in &result.summary {
                println!(
                    "{:>8}  {:>28}  {:>18}  {:>9}  {}",
                    s.sweep_value,
                    s.verdict.to_string(),
                    s.empirical.verdict.to_string(),
                    if s.empirical.overshoot { "yes" } else { "no" },
                    s.method,
                );
            }
            Ok(())
        }
        Cmd::Ml { alpha, beta, lambda, a, k, tol } => {
            let r = ml_eval(&MlQuery { alpha, beta, lambda, a, k }, tol)?;
            println!("{}", format_f64(r.value));
            println!("terms_used = {}", r.terms_used);
            println!("truncation_bound = {}", format_f64(r.truncation_bound));
            Ok(())
        }
        Cmd::Classify { alpha, lambda, b0, b1, b2, boundary_tol } => {
            let b = build_b(alpha, b0, b1, b2)?;
            let c = classify_zero_input(alpha, lambda, &b, boundary_tol)?;
            println!("verdict = {}", c.verdict);
            match c.pole {
                Some(p) => println!("pole = {} + {}i", format_f64(p.re), format_f64(p.im)),
                None => println!("pole = none (lambda = 0)"),
            }
            println!("pole_region = {}", c.pole_region);
            println!("pole_on_principal_sheet = {}", c.pole_on_sheet);
            Ok(())
        }
        Cmd::Solve { alpha, lambda, b0, b1, b2, a, horizon, input, out, method } => {
            let b = build_b(alpha, b0, b1, b2)?;
            let spec = SystemSpec::new(alpha, lambda, a, b)?;
            let u = match input {
                None => InputSignal::Zero,
                Some(path) => {
                    let (k0, values) = read_input_csv(&path)?;
                    if k0 != a + 1 {
                        return Err(Error::InvalidArgument(format!(
                            "input table must start at k = {} (a + 1), starts at {k0}",
                            a + 1
                        )));
                    }
                    if values.len() != horizon {
                        return Err(Error::InvalidArgument(format!(
                            "input table has {} rows but the horizon is {horizon}",
                            values.len()
                        )));
                    }
                    InputSignal::Table(values)
                }
            };
            let near_integer = (alpha - alpha.round()).abs() <= 1e-12;
            let use_recursive = match MethodChoice::parse(&method)? {
                MethodChoice::Recursive => true,
                MethodChoice::Explicit => false,
                MethodChoice::Auto => lambda.abs() >= 0.95 || near_integer,
            };
            let r = if use_recursive {
                solve_recursive(&spec, &u, horizon)?
            } else {
                solve_explicit(&spec, &u, horizon, DEFAULT_TOL)?
            };
            write_sweep_csv(&out, &[(alpha, &r)])?;
            println!("wrote {} ({} samples)", out.display(), r.len());
            if let Some(k) = r.overflow_at() {
                println!("warning: trajectory left the f64 range at k = {k}; output truncated");
            }
            Ok(())
        }
    }
}
