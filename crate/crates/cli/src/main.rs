//! `isoper`: evaluate profiles and deficit bounds, construct minimizing
//! sets, reduce arbitrary sets with step traces, run verification suites,
//! and tabulate bound scans as CSV.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isoperimetry::bounds::{
    k_bound, l_bound, lower_bound_perimeter, max_asymmetry, optimal_set, OptimalForm,
};
use isoperimetry::interval::{format_f15, format_set, parse_set_literal, IntervalSet};
use isoperimetry::reducer::reduce;
use isoperimetry::verify::run_suites;
use isoperimetry::{check_profile_concavity, Error, MeasureModel, Result};

#[derive(Parser)]
#[command(
    name = "isoper",
    version,
    about = "Sharp quantitative isoperimetry for symmetric log-concave measures on the line"
)]
struct Cli {
    /// JSON measure config; the standard Gaussian when omitted
    #[arg(long, global = true, value_name = "PATH")]
    measure: Option<PathBuf>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Master seed for randomized suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a pointwise quantity of the measure
    Eval {
        #[arg(long, value_enum)]
        quantity: Quantity,
        /// Evaluation point: a real for density/cdf, a probability for
        /// quantile/profile
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
    },
    /// Print the deficit-bound table row for a (mass, asymmetry) pair
    Bounds {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Construct the perimeter minimizer for a (mass, asymmetry) pair
    Optimal {
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Reduce a set to canonical form, emitting the step trace as JSON lines
    Reduce {
        /// Set literal like "(-inf,-1)u(1,inf)"; endpoints may be decimals
        /// or rationals like 1/2
        #[arg(value_name = "SET")]
        set: String,
        /// Interpret endpoints as quantiles in [0,1]; 0 and 1 denote the
        /// infinite ends
        #[arg(long)]
        quantile_coords: bool,
    },
    /// Run verification suites and print one JSON report per line
    Verify {
        /// shifting, theorem-main, reducer, continuity, exp-equivalence,
        /// or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Trials per randomized suite
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Quantile grid points for the enumeration suite
        #[arg(long, default_value_t = 12)]
        grid: usize,
    },
    /// Tabulate bounds and minimizer perimeters over a grid as CSV
    Scan {
        /// Grid points per axis: mass over (0,1), asymmetry scaled to the
        /// feasible range of each mass
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Density,
    Cdf,
    Quantile,
    Profile,
}

const CSV_HEADER: &str = "mu,lambda,domain,J_m,K,L,bound,optimal_perimeter";

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let measure = load_measure(cli.measure.as_ref())?;
    let (text, code) = match &cli.command {
        Cmd::Eval { quantity, at } => (cmd_eval(&measure, *quantity, *at)?, ExitCode::SUCCESS),
        Cmd::Bounds { mu, lambda } => {
            let row = bound_row(&measure, *mu, *lambda)?;
            (format!("{CSV_HEADER}\n{row}\n"), ExitCode::SUCCESS)
        }
        Cmd::Optimal { mu, lambda } => (cmd_optimal(&measure, *mu, *lambda)?, ExitCode::SUCCESS),
        Cmd::Reduce {
            set,
            quantile_coords,
        } => (
            cmd_reduce(&measure, set, *quantile_coords)?,
            ExitCode::SUCCESS,
        ),
        Cmd::Verify {
            suite,
            trials,
            grid,
        } => {
            let (text, all_passed) = cmd_verify(&measure, suite, *trials, *grid, cli.seed)?;
            let code = if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (text, code)
        }
        Cmd::Scan { grid } => (cmd_scan(&measure, *grid)?, ExitCode::SUCCESS),
    };
    emit(cli.out.as_ref(), &text)?;
    Ok(code)
}

/// Loads the measure, defaulting to the standard Gaussian. A profile that
/// fails the concavity probe only warns: the point of running a suite on a
/// non-log-concave measure is to watch the guarantees break.
fn load_measure(path: Option<&PathBuf>) -> Result<MeasureModel> {
    let measure = match path {
        None => MeasureModel::gaussian(),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            MeasureModel::from_json_str(&text)?
        }
    };
    let probe = check_profile_concavity(&measure, 512);
    if !probe.concave {
        eprintln!(
            "warning: profile is not concave (violation {:.3e} at t = ({:.6}, {:.6})); \
             the measure is not log-concave and the bounds are not guaranteed",
            probe.worst_violation, probe.at.0, probe.at.1
        );
    }
    Ok(measure)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    let body = if text.is_empty() || text.ends_with('\n') {
        text.to_owned()
    } else {
        format!("{text}\n")
    };
    match out {
        Some(p) => fs::write(p, body)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cmd_eval(measure: &MeasureModel, quantity: Quantity, at: f64) -> Result<String> {
    let value = match quantity {
        Quantity::Density => measure.density(at),
        Quantity::Cdf => measure.cdf(at),
        Quantity::Quantile => measure.quantile(at)?,
        Quantity::Profile => measure.profile(at),
    };
    Ok(format_f15(value))
}

fn bound_row(measure: &MeasureModel, mu: f64, lambda: f64) -> Result<String> {
    let opt = optimal_set(measure, mu, lambda)?;
    let m = if mu <= 0.5 { mu } else { 1.0 - mu };
    Ok(format!(
        "{},{},{:?},{},{},{},{},{}",
        format_f15(mu),
        format_f15(lambda),
        opt.domain.id,
        format_f15(measure.profile(m)),
        format_f15(k_bound(measure, mu, lambda)?),
        format_f15(l_bound(measure, mu, lambda)?),
        format_f15(lower_bound_perimeter(measure, mu, lambda)?),
        format_f15(opt.perimeter),
    ))
}

fn cmd_optimal(measure: &MeasureModel, mu: f64, lambda: f64) -> Result<String> {
    let opt = optimal_set(measure, mu, lambda)?;
    let form = match opt.form {
        OptimalForm::HalfLine => "half-line",
        OptimalForm::BoundedInterval => "bounded-interval",
        OptimalForm::TwoHalfLines => "two-half-lines",
    };
    Ok(format!(
        "domain: {:?} ({})\nform: {form}\nset: {}\nperimeter: {}\nbound: {}\n",
        opt.domain.id,
        opt.domain.constraints,
        format_set(&opt.set),
        format_f15(opt.perimeter),
        format_f15(lower_bound_perimeter(measure, mu, lambda)?),
    ))
}

fn cmd_reduce(measure: &MeasureModel, literal: &str, quantile_coords: bool) -> Result<String> {
    let parsed = parse_set_literal(literal)?;
    let set = if quantile_coords {
        let mut real = Vec::with_capacity(parsed.num_components());
        for &(t, u) in parsed.components() {
            if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&u) {
                return Err(Error::Config(format!(
                    "quantile endpoints must lie in [0, 1], got ({t}, {u})"
                )));
            }
            let lo = if t <= 0.0 {
                f64::NEG_INFINITY
            } else {
                measure.quantile(t)?
            };
            let hi = if u >= 1.0 {
                f64::INFINITY
            } else {
                measure.quantile(u)?
            };
            real.push((lo, hi));
        }
        IntervalSet::new(&real)?
    } else {
        parsed
    };
    let trace = reduce(measure, &set)?;
    Ok(trace.to_jsonl())
}

fn cmd_verify(
    measure: &MeasureModel,
    suite: &str,
    trials: usize,
    grid: usize,
    seed: u64,
) -> Result<(String, bool)> {
    let reports = run_suites(measure, suite, trials, grid, seed)?;
    let mut text = String::new();
    let mut all_passed = true;
    for report in &reports {
        let line =
            serde_json::to_string(report).map_err(|e| Error::Config(e.to_string()))?;
        text.push_str(&line);
        text.push('\n');
        if report.failures > 0 {
            all_passed = false;
        }
    }
    Ok((text, all_passed))
}

fn cmd_scan(measure: &MeasureModel, grid: usize) -> Result<String> {
    if grid == 0 {
        return Err(Error::Config("--grid must be at least 1".to_owned()));
    }
    let mut text = String::with_capacity(80 * grid * grid);
    text.push_str(CSV_HEADER);
    text.push('\n');
    let mut skipped = 0usize;
    for i in 1..=grid {
        let mu = i as f64 / (grid + 1) as f64;
        let lambda_max = max_asymmetry(mu);
        for j in 1..=grid {
            let lambda = lambda_max * j as f64 / (grid + 1) as f64;
            match bound_row(measure, mu, lambda) {
                Ok(row) => {
                    text.push_str(&row);
                    text.push('\n');
                }
                Err(_) => skipped += 1,
            }
        }
    }
    if skipped > 0 {
        eprintln!("scan: skipped {skipped} infeasible grid cells");
    }
    Ok(text)
}
