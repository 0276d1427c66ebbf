//! `origami`: compute partition-function coefficients and run verification suites.
//!
//! Exit codes: 0 pass, 1 suite failure, 2 usage error, 3 evaluation failure.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use origami_core::kchar::with_fresh_points;
use origami_core::series::{z_closed, z_localized, EvalContext};
use origami_core::suites::{rational_string, run_suite, PointRecord, Suite, SuiteConfig};
use origami_core::vertex::Ranks;
use origami_core::Error;

use report::{render, ComputeReport, ConfigEcho, VerifyReport};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EVAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Exact gauge origami invariants on broken lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Localized and closed-form coefficients at a seeded point.
    Compute(Common),
    /// Run one verification suite.
    Verify {
        /// closed-form, framing, factorization, limits, oracle, cohomological,
        /// no-twist, cy-vanishing, euler-count or smooth-chi-y
        name: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 1)]
    r1: u32,
    #[arg(long, default_value_t = 1)]
    r2: u32,
    /// Truncation order N.
    #[arg(long, default_value_t = 6)]
    order: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    num_points: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Eval(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRanks(..) | Error::Precondition(_) => Failure::Usage(e.to_string()),
            other => Failure::Eval(other),
        }
    }
}

fn echo(c: &Common, suite: Option<Suite>) -> ConfigEcho {
    ConfigEcho {
        r1: c.r1,
        r2: c.r2,
        order: c.order,
        seed: c.seed,
        num_points: c.num_points,
        suite: suite.map(|s| s.name().to_string()),
    }
}

fn suite_config(c: &Common) -> Result<SuiteConfig, Failure> {
    let ranks = Ranks::new(c.r1, c.r2)?;
    if c.num_points == 0 {
        return Err(Failure::Usage("--num-points must be at least 1".into()));
    }
    Ok(SuiteConfig {
        ranks,
        order: c.order,
        seed: c.seed,
        num_points: c.num_points,
    })
}

fn compute(c: &Common) -> Result<(String, bool), Failure> {
    let cfg = suite_config(c)?;
    let (point, (loc, closed)) = with_fresh_points(cfg.seed, &cfg.ranks.torus_vars(), |p| {
        let ctx = EvalContext::new(p.clone(), cfg.seed, cfg.order);
        Ok((z_localized(cfg.ranks, &ctx)?, z_closed(cfg.ranks, &ctx)?))
    })?;
    let report = ComputeReport {
        command: "compute",
        config: echo(c, None),
        point: PointRecord::from_point(&point),
        localized: loc.coeffs().iter().map(rational_string).collect(),
        closed: closed.coeffs().iter().map(rational_string).collect(),
        agree: loc == closed,
    };
    Ok((render(&report), true))
}

fn verify(name: Option<String>, flag: Option<String>, c: &Common) -> Result<(String, bool), Failure> {
    let name = match (name, flag) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::Usage(format!("conflicting suites '{a}' and '{b}'")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Failure::Usage("no suite given".into())),
    };
    let suite: Suite = name.parse()?;
    let cfg = suite_config(c)?;
    let outcome = run_suite(suite, &cfg)?;
    let passed = outcome.passed;
    let report = VerifyReport {
        command: "verify",
        config: echo(c, Some(suite)),
        result: outcome,
    };
    Ok((render(&report), passed))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("ORIGAMI_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("ORIGAMI_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let (text, passed, out) = match cli.command {
        Command::Compute(c) => {
            let (t, p) = compute(&c)?;
            (t, p, c.out)
        }
        Command::Verify { name, suite, common } => {
            let (t, p) = verify(name, suite, &common)?;
            (t, p, common.out)
        }
    };
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(passed)
}

fn exit_code(outcome: &Result<bool, Failure>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Usage(_)) => EXIT_USAGE,
        Err(Failure::Eval(_)) => EXIT_EVAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli);
    match &outcome {
        Err(Failure::Usage(msg)) => eprintln!("error: {msg}"),
        Err(Failure::Eval(e)) => eprintln!("evaluation failed: {e}"),
        Ok(_) => {}
    }
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(exit_code(&outcome))
}
