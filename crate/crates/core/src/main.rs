//! nullkit — exact grid interpolation, coefficient formulas, Nullstellensatz
//! certificates, δ-permanents and counting checkers over finite commutative
//! rings, with JSON input/output.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nullkit::dispatch::{run_op, Limits};
use nullkit::error::Error;
use nullkit::gridcore::DEFAULT_MAX_GRID_POINTS;
use nullkit::json as nj;
use nullkit::numapps::DEFAULT_SCAN_LIMIT;
use nullkit::ring::Ring;
use nullkit::selftest;

#[derive(Parser)]
#[command(
    name = "nullkit",
    version,
    about = "Exact interpolation, coefficient formulas and Nullstellensatz certificates over finite commutative rings"
)]
struct Cli {
    /// Refuse grids with more points than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GRID_POINTS)]
    max_grid_points: u128,
    /// Lift the exhaustive-scan safety limit.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for the parallel full-grid scans; the output is
    /// identical for every value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// JSON input file; stdin when omitted.
    #[arg(long, value_name = "FILE")]
    r#in: Option<String>,
}

impl InputArg {
    fn read(&self) -> Result<Value, Error> {
        let text = match &self.r#in {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?,
            None => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
                buf
            }
        };
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Grid constants and classification.
    GridInfo(InputArg),
    /// Interpolate a value table on a division grid.
    Interpolate(InputArg),
    /// Reconstruct a polynomial from its values on an integral grid.
    Invert(InputArg),
    /// Coefficient formulas: P_d (--main) or a d-leading P_e (--general).
    Coeff {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, conflicts_with = "general")]
        main: bool,
        #[arg(long)]
        general: bool,
    },
    /// Trim a polynomial against the axis polynomials L_j.
    Trim(InputArg),
    /// Decide P|_X ≡ 0 with a certificate or witness point.
    Certify(InputArg),
    /// δ-permanents and the permanent formula.
    Permanent(InputArg),
    /// Even/odd orientation counts with the incidence-matrix identity.
    AlonTarsi(InputArg),
    /// Check the describing/degree/head conditions of a candidate polynomial.
    SolveCheck(InputArg),
    /// Construct an algebraic solution for a problem and impression.
    SolveConstruct(InputArg),
    /// Theorem checkers with exhaustive verification.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Run the embedded acceptance suite (criteria 1–9).
    Selftest,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// 3-regular subgraph of a 4-regular multigraph plus one edge.
    Subgraph(InputArg),
    /// Cube coverings by affine hyperplanes.
    Cube(InputArg),
    /// Chevalley–Warning zero counts over the full grid F_q^n.
    Cw(InputArg),
    /// Cauchy–Davenport sumset bound.
    Cd {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        p: Option<u64>,
        /// Comma-separated residues of A.
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        /// Comma-separated residues of B.
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<u64>>,
    },
    /// Nonzero counts over ℤ_m^n without degree restriction.
    Zm {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        m: Option<u64>,
        /// Number of variables; must be 1 when --poly is used.
        #[arg(long)]
        n: Option<usize>,
        /// Univariate ASCII polynomial such as "X^3+X+2".
        #[arg(long)]
        poly: Option<String>,
    },
    /// Olson-style counts over p-integral integer grids.
    Olson(InputArg),
    /// Integer coefficient formula on the grid [d].
    Zint(InputArg),
    /// p-adic valuation of Π(y−ŷ).
    Padic {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        y: Option<i64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Search harness for the open {0,1}^n divisibility conjecture.
    Conjecture {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<u64>,
        /// Random trials; exhaustive search when omitted.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let limits = Limits {
        max_grid_points: cli.max_grid_points,
        scan_limit: if cli.force {
            u128::MAX
        } else {
            DEFAULT_SCAN_LIMIT
        },
    };
    let dispatch = |op: &str, input: &InputArg| run_op(op, &input.read()?, limits);
    match &cli.command {
        Command::GridInfo(input) => dispatch("grid-info", input),
        Command::Interpolate(input) => dispatch("interpolate", input),
        Command::Invert(input) => dispatch("invert", input),
        Command::Coeff {
            input,
            main,
            general,
        } => {
            let v = input.read()?;
            if *general {
                run_op("coeff-general", &v, limits)
            } else {
                if !*main && v.get("e").is_some() {
                    return Err(Error::Parse("field \"e\" given without --general".into()));
                }
                run_op("coeff-main", &v, limits)
            }
        }
        Command::Trim(input) => dispatch("trim", input),
        Command::Certify(input) => dispatch("certify", input),
        Command::Permanent(input) => dispatch("permanent", input),
        Command::AlonTarsi(input) => dispatch("alon-tarsi", input),
        Command::SolveCheck(input) => dispatch("solve-check", input),
        Command::SolveConstruct(input) => dispatch("solve-construct", input),
        Command::Check { which } => match which {
            CheckCommand::Subgraph(input) => dispatch("check-subgraph", input),
            CheckCommand::Cube(input) => dispatch("check-cube", input),
            CheckCommand::Cw(input) => dispatch("check-cw", input),
            CheckCommand::Cd { input, p, a, b } => {
                let v = match (p, a, b) {
                    (Some(p), Some(a), Some(b)) => json!({"p": p, "a": a, "b": b}),
                    (None, None, None) => input.read()?,
                    _ => {
                        return Err(Error::Parse(
                            "pass --p, --a and --b together, or JSON input".into(),
                        ))
                    }
                };
                run_op("check-cd", &v, limits)
            }
            CheckCommand::Zm { input, m, n, poly } => {
                let v = match (m, poly) {
                    (Some(m), Some(text)) => {
                        if n.is_some_and(|n| n != 1) {
                            return Err(Error::Parse(
                                "--poly is univariate; pass --n 1 or use JSON input".into(),
                            ));
                        }
                        let ring = Ring::integers_mod(*m)?;
                        json!({"poly": nj::poly_to_json(&nj::parse_univariate(&ring, text)?)})
                    }
                    (None, None) => input.read()?,
                    _ => {
                        return Err(Error::Parse(
                            "pass both --m and --poly, or JSON input with a \"poly\" field".into(),
                        ))
                    }
                };
                run_op("check-zm", &v, limits)
            }
            CheckCommand::Olson(input) => dispatch("check-olson", input),
            CheckCommand::Zint(input) => dispatch("check-zint", input),
            CheckCommand::Padic { input, y, p, k } => {
                let v = match (y, p, k) {
                    (Some(y), Some(p), Some(k)) => json!({"y": y, "p": p, "k": k}),
                    (None, None, None) => input.read()?,
                    _ => {
                        return Err(Error::Parse(
                            "pass --y, --p and --k together, or JSON input".into(),
                        ))
                    }
                };
                run_op("check-padic", &v, limits)
            }
            CheckCommand::Conjecture {
                input,
                n,
                m,
                k,
                trials,
                bound,
                seed,
            } => {
                let v = match (n, m, k) {
                    (Some(n), Some(m), Some(k)) => {
                        let mut v = json!({"n": n, "m": m, "k": k, "bound": bound});
                        if let Some(t) = trials {
                            v["trials"] = json!(t);
                            v["seed"] = json!(seed);
                        }
                        v
                    }
                    (None, None, None) => input.read()?,
                    _ => {
                        return Err(Error::Parse(
                            "pass --n, --m and --k together, or JSON input".into(),
                        ))
                    }
                };
                run_op("check-conjecture", &v, limits)
            }
        },
        Command::Selftest => {
            let start = std::time::Instant::now();
            let reports = selftest::run_all();
            for report in &reports {
                eprintln!("{}", report.line());
            }
            let elapsed = start.elapsed();
            let within_budget = elapsed.as_secs() < selftest::SELFTEST_BUDGET_SECS;
            let all_passed = reports.iter().all(|r| r.passed);
            eprintln!(
                "criterion 10 [{}] selftest wall clock ({} ms): budget {} s",
                if all_passed && within_budget {
                    "pass"
                } else {
                    "FAIL"
                },
                elapsed.as_millis(),
                selftest::SELFTEST_BUDGET_SECS
            );
            let summary = json!({
                "criteria": reports
                    .iter()
                    .map(|r| json!({
                        "id": r.id,
                        "name": r.name,
                        "pass": r.passed,
                        "millis": r.millis as u64,
                        "detail": r.detail,
                    }))
                    .collect::<Vec<_>>(),
                "millis": elapsed.as_millis() as u64,
                "pass": all_passed && within_budget,
            });
            if !(all_passed && within_budget) {
                println!("{}", nj::to_canonical_string(&summary));
                return Err(Error::TheoremViolated("selftest failed".into()));
            }
            Ok(summary)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        // A pool may already exist when tests call main repeatedly; any pool
        // serves the scans.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(output) => {
            println!("{}", nj::to_canonical_string(&output));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::TheoremViolated(_) => ExitCode::from(3),
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
