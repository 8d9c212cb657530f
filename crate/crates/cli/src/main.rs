use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hgf_core::algebra::rational::parse_ratio;
use hgf_core::charvar::degenerate_point;
use hgf_core::partition::{sample_stratum_point, Partition, StratumMatrix};
use hgf_core::report::{charvar_report, h1_report, hr_report, sample_report, schur_report, veronese_report, Report, SCHEMA};
use hgf_core::suite::{run_criterion, suite_json, SuiteConfig, CRITERIA};
use hgf_core::theta::{validate_params, CharacterParams, Mode};
use hgf_core::Error;

#[derive(Parser)]
#[command(name = "hgf", version, about = "Seeded exact checks for general hypergeometric integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Append the report as one JSON line to this file instead of printing it.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a point of the generic stratum.
    Sample(Point),
    /// Veronese image of a sampled 2-row point and its identities.
    Veronese(Point),
    /// Cohomology basis and truncated rank on the line.
    H1(WithAlpha),
    /// Wedge basis pullback checks at a Veronese point, optionally the direct r=2 rank.
    Hr(HrArgs),
    /// Schur basis for given N and r.
    Schur {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Characteristic variety verdict.
    Charvar {
        #[command(flatten)]
        point: Point,
        /// Use a point with a vanishing maximal minor; a validated witness is then required.
        #[arg(long)]
        degenerate: bool,
    },
    /// The acceptance suite, or the instance checks for one partition when --lambda is given.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Clone)]
struct Point {
    /// Partition, e.g. 2,1,1.
    #[arg(long)]
    lambda: String,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Entries are sampled from [-bound, bound].
    #[arg(long, default_value_t = 5)]
    bound: u64,
}

#[derive(Args, Clone)]
struct AlphaArgs {
    /// "auto", or blocks separated by ';' with entries separated by ',' (e.g. "1/2;1/3;-5/6").
    #[arg(long, default_value = "auto")]
    alpha: String,
    /// Normalization of explicit or sampled parameters.
    #[arg(long, value_enum, default_value_t = ModeArg::Cohomology)]
    mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    degree_start: usize,
}

#[derive(Args)]
struct WithAlpha {
    #[command(flatten)]
    point: Point,
    #[command(flatten)]
    alpha: AlphaArgs,
}

#[derive(Args)]
struct HrArgs {
    #[command(flatten)]
    point: Point,
    #[command(flatten)]
    alpha: AlphaArgs,
    /// Also compute the truncated H^2 rank (r = 2 only) at this two-form bound.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    bound: u64,
    #[arg(long, default_value = "auto")]
    alpha: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Cohomology)]
    mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    degree_start: usize,
    /// Run only these criteria (full suite mode).
    #[arg(long = "criterion")]
    criteria: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Integral,
    Cohomology,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Integral => Mode::Integral,
            ModeArg::Cohomology => Mode::Cohomology,
        }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::InvalidParams(_) | Error::Parse(_) | Error::WeightMismatch | Error::UnsupportedR => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn partition(s: &str) -> Run<Partition> {
    Partition::parse(s).map_err(|e| Failure::Usage(format!("--lambda: {e}")))
}

fn sample(p: &Point, r: usize) -> Run<StratumMatrix> {
    Ok(sample_stratum_point(&partition(&p.lambda)?, r, p.seed, p.bound)?)
}

/// Parameters in cohomology normalization, whatever the input mode.
fn params(alpha_arg: &str, mode: ModeArg, lambda: &Partition, r: usize, seed: u64) -> Run<CharacterParams> {
    let mode = Mode::from(mode);
    let p = if alpha_arg == "auto" {
        CharacterParams::sample(lambda, r, mode, seed)?
    } else {
        let mut alpha = Vec::new();
        for block in alpha_arg.split(';') {
            let entries: Result<Vec<_>, _> = block.split(',').map(|s| parse_ratio(s.trim())).collect();
            alpha.push(entries.map_err(|e| Failure::Usage(format!("--alpha: {e}")))?);
        }
        let p = CharacterParams::new(alpha, mode);
        let violations = validate_params(&p, lambda, r);
        if !violations.is_empty() {
            return Err(Failure::Usage(format!("--alpha: {}", violations.join("; "))));
        }
        p
    };
    Ok(p.renormalized(Mode::Cohomology, r))
}

fn run(cli: &Cli) -> Run<(Value, Vec<String>)> {
    let done = |r: Report| (r.body, r.failures);
    match &cli.command {
        Command::Sample(p) => {
            let z = sample(p, p.r)?;
            Ok(done(sample_report(&z, p.seed, p.bound)))
        }
        Command::Veronese(p) => {
            let z = sample(p, 1)?;
            Ok(done(veronese_report(&z, p.r)?))
        }
        Command::H1(a) => {
            let z = sample(&a.point, 1)?;
            let pr = params(&a.alpha.alpha, a.alpha.mode, z.partition(), 1, a.point.seed)?;
            Ok(done(h1_report(&z, &pr, a.alpha.degree_start)?))
        }
        Command::Hr(a) => {
            let z = sample(&a.point, 1)?;
            let pr = params(&a.alpha.alpha, a.alpha.mode, z.partition(), a.point.r, a.point.seed)?;
            if a.rank.is_some() && a.point.r != 2 {
                return Err(Failure::Usage("unsupported r: --rank needs r = 2".into()));
            }
            Ok(done(hr_report(&z, a.point.r, &pr, a.rank)?))
        }
        Command::Schur { n, r } => Ok(done(schur_report(*n, *r)?)),
        Command::Charvar { point, degenerate } => {
            let l = partition(&point.lambda)?;
            let z = if *degenerate {
                degenerate_point(&l, point.r, point.seed, point.bound)?
            } else {
                sample(point, point.r)?
            };
            Ok(done(charvar_report(&z, !degenerate)))
        }
        Command::VerifyAll(v) => match &v.lambda {
            None => verify_suite(v),
            Some(l) => verify_instance(v, l),
        },
    }
}

fn verify_suite(v: &VerifyArgs) -> Run<(Value, Vec<String>)> {
    let cfg = SuiteConfig { seed: v.seed, bound: v.bound, degree_start: v.degree_start };
    let ids: Vec<usize> = if v.criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { v.criteria.clone() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=CRITERIA.len()).contains(&i)) {
        return Err(Failure::Usage(format!("--criterion {bad} does not exist")));
    }
    let reports: Vec<_> = ids.iter().map(|&i| run_criterion(i, &cfg)).collect();
    let failures = reports.iter().filter(|r| !r.passed).map(|r| format!("criterion {} ({})", r.id, r.name)).collect();
    Ok((suite_json(&cfg, &reports), failures))
}

fn verify_instance(v: &VerifyArgs, lambda: &str) -> Run<(Value, Vec<String>)> {
    let l = partition(lambda)?;
    let n = l.total();
    let r = v.r;
    let point = Point { lambda: lambda.to_string(), r, seed: v.seed, bound: v.bound };
    let z = sample(&point, 1)?;
    let pr = params(&v.alpha, v.mode, &l, r, v.seed)?;
    let mut parts = serde_json::Map::new();
    let mut failures = Vec::new();
    let mut add = |name: &str, rep: Report| {
        failures.extend(rep.failures.iter().map(|f| format!("{name}: {f}")));
        parts.insert(name.to_string(), rep.body);
    };
    add("h1", h1_report(&z, &pr, v.degree_start)?);
    if r >= 2 {
        add("veronese", veronese_report(&z, r)?);
    }
    if r >= 2 && r + 2 <= n {
        let rank = (r == 2 && n <= 5).then_some(1);
        add("hr", hr_report(&z, r, &pr, rank)?);
    }
    if r + 2 <= n {
        add("schur", schur_report(n, r)?);
    }
    if r + 1 < n {
        add("charvar", charvar_report(&sample(&point, r)?, true));
    }
    let body = json!({
        "schema": SCHEMA,
        "kind": "verify_instance",
        "config": {"lambda": l.parts(), "r": r, "seed": v.seed, "bound": v.bound, "degree_start": v.degree_start},
        "passed": failures.is_empty(),
        "reports": parts,
    });
    Ok((body, failures))
}

fn emit(cli: &Cli, body: &Value) -> std::io::Result<()> {
    match &cli.output {
        None => {
            println!("{}", serde_json::to_string_pretty(body).expect("reports serialize"));
            Ok(())
        }
        Some(path) => {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{}", serde_json::to_string(body).expect("reports serialize"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((body, failures)) => {
            if let Err(e) = emit(&cli, &body) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            match failures.first() {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!("check failed: {f}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}
