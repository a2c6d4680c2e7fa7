use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecfam::catalog::{self, catalog_json, catalog_list, specialize};
use ecfam::curves::{Curve, Point};
use ecfam::error::Error;
use ecfam::exact_math::{parse_rational, Rational};
use ecfam::heights::{canonical_height, gram_matrix, regulator, DEFAULT_EPS, REGULATOR_EPS};
use ecfam::rank3::{self, MatchSpec, Rank3Kind};
use ecfam::sieve;
use ecfam::torsion::torsion_structure;
use ecfam::verify::{verify_all, verify_entry, VerificationReport, VerifyOptions};

#[derive(Parser)]
#[command(name = "ecfam", version, about = "Elliptic-curve families with torsion Z/8 and Z/2 x Z/6")]
struct Cli {
    /// Machine-readable output with sorted keys and reduced rationals.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the family catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check the claims attached to catalog entries.
    Verify(VerifyArgs),
    /// Evaluate a family at a parameter and lift its points.
    Specialize {
        #[arg(long)]
        family: String,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        param: Rational,
    },
    /// Torsion subgroup of y^2 = x^3 + Ax^2 + Bx.
    Torsion {
        #[arg(long = "A", value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long = "B", value_parser = rational, allow_hyphen_values = true)]
        b: Rational,
    },
    /// Canonical heights, Gram matrix and regulator of points.
    Height {
        #[arg(long = "A", value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long = "B", value_parser = rational, allow_hyphen_values = true)]
        b: Rational,
        /// Points as "x1,y1;x2,y2;..." with rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Score a parameter grid by Mestre-Nagao sums.
    Sieve {
        #[arg(long)]
        family: String,
        /// Numerator range "a..b", inclusive.
        #[arg(long, value_parser = range, allow_hyphen_values = true)]
        num: RangeInclusive<i64>,
        /// Denominator range "c..d", inclusive.
        #[arg(long, value_parser = range, allow_hyphen_values = true)]
        den: RangeInclusive<i64>,
        /// Prime bound N.
        #[arg(long, default_value_t = sieve::DEFAULT_PRIMES)]
        primes: u64,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// CSV destination (default: standard output).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Generate curves of rank at least 3 from the matching construction.
    Rank3 {
        #[arg(long, value_enum)]
        torsion: TorsionArg,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = rank3::DEFAULT_SEARCH_BOUND)]
        search_bound: i64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// One line per entry.
    List,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyArgs {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    family: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorsionArg {
    Z8,
    #[value(name = "z2x6", alias = "z2xz6")]
    Z2x6,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let lo: i64 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: i64 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_points(s: &str) -> Result<Vec<Point>, Error> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected x,y, got {pair:?}")))?;
            Ok(Point::new(parse_rational(x)?, parse_rational(y)?))
        })
        .collect()
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_) | Error::Parse(_) | Error::SingularCurve(_) | Error::PointNotOnCurve => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn print_json(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure::Check(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn report_table(reports: &[VerificationReport]) {
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{:<16} {status}  {} claims  {:>8.2?}", r.entry, r.claims.len(), r.elapsed);
        for c in r.failures() {
            if let Err(e) = &c.outcome {
                println!("    {}: {e}", c.name);
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            if cli.json {
                print_json(&catalog_json())?;
            } else {
                for e in catalog_list() {
                    println!("{:<16} {:<6} {:<2} {}", e.id, e.claimed_torsion.tag(), e.param, e.provenance.description);
                }
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let opts = VerifyOptions { seed: cli.seed, ..VerifyOptions::default() };
            let reports = match args.family {
                Some(id) => vec![verify_entry(catalog::lookup(&id)?, &opts)],
                None => verify_all(&opts),
            };
            let ok = reports.iter().all(VerificationReport::passed);
            if cli.json {
                print_json(&json!({
                    "passed": ok,
                    "seed": cli.seed,
                    "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
                }))?;
            } else {
                report_table(&reports);
            }
            Ok(ok)
        }
        Command::Specialize { family, param } => {
            let entry = catalog::lookup(&family)?;
            let s = specialize(entry, &param)?;
            if cli.json {
                print_json(&json!({
                    "family": entry.id,
                    "param": param.to_string(),
                    "curve": s.curve.to_json(),
                    "points": s.points.iter().map(Point::to_json).collect::<Vec<_>>(),
                    "torsion_point": s.torsion_point.as_ref().map(Point::to_json),
                }))?;
            } else {
                println!("{}", s.curve);
                for p in &s.points {
                    println!("point {p}");
                }
                if let Some(t) = &s.torsion_point {
                    println!("torsion point {t}");
                }
            }
            Ok(true)
        }
        Command::Torsion { a, b } => {
            let e = Curve::ab(a, b)?;
            let t = torsion_structure(&e);
            if cli.json {
                print_json(&json!({ "curve": e.to_json(), "torsion": t.to_json() }))?;
            } else {
                println!("{}", t.group.tag());
                for g in &t.generators {
                    println!("generator {g}");
                }
            }
            Ok(true)
        }
        Command::Height { a, b, points, eps } => {
            let e = Curve::ab(a, b)?;
            let pts = parse_points(&points)?;
            if let Some(p) = pts.iter().find(|p| !e.contains(p)) {
                return Err(Failure::Usage(format!("{p} is not on {e}")));
            }
            let heights = pts.iter().map(|p| canonical_height(&e, p, eps)).collect::<Result<Vec<_>, _>>()?;
            let gram = gram_matrix(&e, &pts, eps)?;
            let reg = regulator(&e, &pts, eps)?;
            if cli.json {
                print_json(&json!({
                    "curve": e.to_json(),
                    "points": pts.iter().map(Point::to_json).collect::<Vec<_>>(),
                    "heights": heights.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
                    "gram": gram.iter().map(|row| row.iter().map(|h| h.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "regulator": reg.to_json(),
                }))?;
            } else {
                for (p, h) in pts.iter().zip(&heights) {
                    println!("h({p}) = {:.12} ± {:.1e}", h.value, h.error_bound);
                }
                println!("gram");
                for row in &gram {
                    let cells: Vec<String> = row.iter().map(|h| format!("{:>20.12}", h.value)).collect();
                    println!("{}", cells.join(" "));
                }
                println!("regulator = {:.12} ± {:.1e}", reg.value, reg.error_bound);
            }
            Ok(true)
        }
        Command::Sieve { family, num, den, primes, top, out } => {
            let entry = catalog::lookup(&family)?;
            if primes < 3 || top == 0 {
                return Err(Failure::Usage("--primes must be at least 3 and --top at least 1".into()));
            }
            let records = sieve::scan(entry, &sieve::grid(num, den), primes, top)?;
            if let Some(path) = &out {
                sieve::write_csv(&records, BufWriter::new(File::create(path)?))?;
            }
            if cli.json {
                print_json(&json!({
                    "family": entry.id,
                    "variant": sieve::VARIANT,
                    "primes": primes,
                    "records": records.iter().map(|r| json!({
                        "param": r.parameter.to_string(),
                        "score": r.score,
                        "torsion_ok": r.torsion_ok,
                        "primes_used": r.primes_used,
                        "notes": r.notes,
                    })).collect::<Vec<_>>(),
                }))?;
            } else if out.is_none() {
                sieve::write_csv(&records, io::stdout().lock())?;
            }
            Ok(true)
        }
        Command::Rank3 { torsion, count, search_bound } => {
            let kind = match torsion {
                TorsionArg::Z8 => Rank3Kind::Z8,
                TorsionArg::Z2x6 => Rank3Kind::Z2xZ6,
            };
            let spec = MatchSpec::new(kind);
            let run = rank3::build_rank3_with(&spec, count, REGULATOR_EPS, search_bound, (4 * count).max(12))?;
            if cli.json {
                print_json(&run.to_json(kind))?;
            } else {
                for c in &run.curves {
                    let k = &c.candidate;
                    println!("r={} s={} w={} regulator={:.6} {}", k.r, k.s, k.w, c.regulator, k.curve);
                }
                for j in &run.rejected {
                    println!("filtered r={} s={}: {}", j.r, j.s, j.reason);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
