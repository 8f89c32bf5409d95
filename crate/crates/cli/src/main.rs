//! Command-line surface: problem ingestion, command dispatch, JSON
//! reporting, and the built-in exact identity suites.
//!
//! Exit codes: 0 success (solved with exact residual / all invertible /
//! elliptic / all identities pass), 1 input or usage errors, 2 singular
//! degree or negative verdict, 3 identity failure, 4 inconclusive
//! ellipticity.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fischer_cauchy::ellipticity;
use fischer_cauchy::solver::{self, SolveError};
use fischer_cauchy_cli::{identities, report, schema};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "fischer-cauchy",
    version,
    about = "Exact series solver for mixed Cauchy problems L(P·q) = f on singular conic divisors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve L(P·q) = f degree by degree and write a report with exact
    /// residual verification.
    Solve {
        /// Problem file (JSON).
        path: PathBuf,
        /// Override the solve degree from the file.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Report destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact per-degree invertibility certificates without solving.
    Wellposed {
        path: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a supplied change of variables and certify positivity of the
    /// transformed divisor on the sphere.
    Ellipticity {
        path: PathBuf,
        /// Override the grid resolution from the file.
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in exact identity suites and print a pass/fail table.
    Identities {
        /// Grid size: small, default, or large.
        #[arg(long, default_value = "default")]
        grid: String,
        /// Seed for the ChaCha8 sampling stream.
        #[arg(long, default_value_t = 0xF15C_4E8)]
        seed: u64,
    },
    /// Empirical lower-bound ratios for a divisor plus the bounded-ratio
    /// diagnostic sequences.
    Survey {
        path: PathBuf,
        #[arg(long, default_value_t = 12)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Seed for the ChaCha8 sampling stream.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn cmd_solve(path: &Path, max_degree: Option<usize>, out: &Option<PathBuf>) -> Result<i32> {
    let bytes = read_input(path)?;
    let digest = report::input_digest(&bytes);
    let file: schema::ProblemFile = schema::decode(&bytes)?;
    let problem = schema::build_problem(&file, max_degree)?;
    match solver::solve_series(&problem) {
        Ok(solution) => {
            let ok = solution.residual_ok;
            let rep = report::SolveReportOut::solved(
                digest,
                problem.n(),
                problem.max_degree(),
                &solution,
            );
            emit(out, &report::to_bytes(&rep))?;
            Ok(if ok { 0 } else { 2 })
        }
        Err(SolveError::SingularDegree { degree }) => {
            let certs = solver::check_wellposed(&problem);
            let rep = report::SolveReportOut::singular(
                digest,
                problem.n(),
                problem.max_degree(),
                degree,
                problem.operator().k_zero_regime(),
                &certs,
            );
            emit(out, &report::to_bytes(&rep))?;
            eprintln!("singular degree {degree}: the mixed Cauchy problem is not well posed");
            Ok(2)
        }
        Err(err @ SolveError::CutoffTooSmall { .. }) => Err(err.into()),
    }
}

fn cmd_wellposed(path: &Path, max_degree: Option<usize>, out: &Option<PathBuf>) -> Result<i32> {
    let bytes = read_input(path)?;
    let digest = report::input_digest(&bytes);
    let file: schema::ProblemFile = schema::decode(&bytes)?;
    let problem = schema::build_problem(&file, max_degree)?;
    let certs = solver::check_wellposed(&problem);
    let rep = report::WellposedReportOut::new(digest, problem.n(), problem.max_degree(), &certs);
    let all_invertible = rep.all_invertible;
    emit(out, &report::to_bytes(&rep))?;
    Ok(if all_invertible { 0 } else { 2 })
}

fn cmd_ellipticity(path: &Path, resolution: Option<usize>, out: &Option<PathBuf>) -> Result<i32> {
    let bytes = read_input(path)?;
    let digest = report::input_digest(&bytes);
    let file: schema::EllipticityFile = schema::decode(&bytes)?;
    let input = schema::build_ellipticity_input(&file, resolution)?;
    let cert = ellipticity::b_elliptic_check(
        &input.polynomial,
        &input.b_matrix,
        &input.a_matrix,
        input.resolution,
    )?;
    let transformed = input
        .polynomial
        .substitute_linear(&input.a_matrix.inverse_transpose());
    let rep = report::EllipticityReportOut::new(digest, file.n, &cert, &transformed);
    emit(out, &report::to_bytes(&rep))?;
    Ok(match cert.verdict {
        ellipticity::Verdict::Elliptic => 0,
        ellipticity::Verdict::NotElliptic => 2,
        ellipticity::Verdict::Inconclusive => 4,
    })
}

fn cmd_identities(grid: &str, seed: u64) -> Result<i32> {
    let Some(grid) = identities::GridSize::parse(grid) else {
        anyhow::bail!("--grid must be one of: small, default, large");
    };
    let results = identities::run_all(grid, seed);
    let mut all_ok = true;
    let mut total = 0usize;
    println!("{:<34} {:>7} {:>7}", "suite", "cases", "failed");
    for suite in &results {
        println!(
            "{:<34} {:>7} {:>7}",
            suite.name,
            suite.cases,
            suite.failures.len()
        );
        total += suite.cases;
        all_ok &= suite.passed();
    }
    if all_ok {
        println!(
            "RESULT: PASS ({} suites, {} exact checks)",
            results.len(),
            total
        );
        Ok(0)
    } else {
        for suite in &results {
            for failure in &suite.failures {
                println!("FAIL {}: {}", suite.name, failure);
            }
        }
        println!("RESULT: FAIL");
        Ok(3)
    }
}

fn cmd_survey(
    path: &Path,
    m_max: usize,
    samples: usize,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let bytes = read_input(path)?;
    let digest = report::input_digest(&bytes);
    let file: schema::SurveyFile = schema::decode(&bytes)?;
    let input = schema::build_survey_input(&file)?;

    let precheck_resolution = if file.n == 3 { 512 } else { 4096 };
    let divisor_elliptic =
        match ellipticity::sphere_min_certified(&input.divisor, precheck_resolution) {
            Ok((_, certified)) => certified > 0.0,
            Err(_) => false,
        };
    if !divisor_elliptic {
        eprintln!("warning: divisor not certified elliptic; lower-bound ratios may reach zero");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows =
        solver::lower_bound_constant_survey(&input.divisor, input.p, m_max, samples, &mut rng);
    let bounded_ratios = solver::eigen_to_radial_norm_ratios(input.p, file.n.max(2), m_max.max(20));
    let one_var_ratios = solver::eigen_to_radial_norm_ratios_one_var(input.p, m_max.max(20));
    let rep = report::SurveyReportOut::new(
        digest,
        file.n,
        input.p,
        m_max,
        samples,
        seed,
        divisor_elliptic,
        &rows,
        &bounded_ratios,
        &one_var_ratios,
    );
    emit(out, &report::to_bytes(&rep))?;
    Ok(0)
}

fn configure_threads() {
    if let Ok(value) = std::env::var("FISCHER_CAUCHY_THREADS") {
        match value.trim().parse::<usize>() {
            Ok(threads) if threads >= 1 => fischer_cauchy::set_grid_thread_cap(threads),
            _ => eprintln!("warning: ignoring invalid FISCHER_CAUCHY_THREADS={value}"),
        }
    }
}

fn run() -> Result<i32> {
    configure_threads();
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve {
            path,
            max_degree,
            out,
        } => cmd_solve(path, *max_degree, out),
        Command::Wellposed {
            path,
            max_degree,
            out,
        } => cmd_wellposed(path, *max_degree, out),
        Command::Ellipticity {
            path,
            resolution,
            out,
        } => cmd_ellipticity(path, *resolution, out),
        Command::Identities { grid, seed } => cmd_identities(grid, *seed),
        Command::Survey {
            path,
            m_max,
            samples,
            seed,
            out,
        } => cmd_survey(path, *m_max, *samples, *seed, out),
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
