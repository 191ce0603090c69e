//! Command-line front end: construct catalog algebras, verify the defining
//! axioms, compute invariant profiles, combine algebras, and run the
//! analysis and word-evaluation tools on stable file formats.
//!
//! Exit codes: 0 = success/pass, 1 = checked failure (axiom failure,
//! inconsistent sequence, invariants not distinct, not semisimple),
//! 2 = usage or IO error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rspin::analysis::{is_semisimple, span_membership, MemberVerdict};
use rspin::catalog::{Family, FamilySpec};
use rspin::cyclotomic::{parse_rat, CycQ};
use rspin::evaluator::{evaluate, parse as parse_expr, EvalOutcome};
use rspin::frobenius::{direct_sum, graded_tensor};
use rspin::invariants::profile;
use rspin::FrobAlgebra;

#[derive(Parser)]
#[command(name = "rspin", version, about = "Exact invariants of r-spin surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FamilyArg {
    A,
    B,
    C,
    E,
    F,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a catalog algebra and write it to a file.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long)]
        r: u32,
        /// Nonzero rational p/q; required for family E.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[arg(long)]
        label: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every defining axiom of an algebra file, with witnesses.
    Verify { file: PathBuf },
    /// Print the invariant table (sphere, beta, alpha up to a horizon).
    Invariants {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        horizon: u32,
        #[arg(long)]
        json: bool,
    },
    /// Degreewise direct sum of two algebra files.
    Sum {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Degreewise graded tensor product of two algebra files.
    Tensor {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-index an algebra along degree reduction to a multiple modulus.
    Pullback {
        file: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Trace-form semisimplicity test of the underlying ungraded algebra.
    Semisimple { file: PathBuf },
    /// Minimal-recurrence membership test on alpha sequences.
    #[command(name = "span-check")]
    SpanCheck {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        horizon: u32,
        /// Comma-separated rationals, e.g. "1,2,3/2"; bypasses the file.
        #[arg(long, allow_hyphen_values = true)]
        sequence: Option<String>,
    },
    /// Check that the torus invariants are pairwise distinct.
    Distinct { file: PathBuf },
    /// Evaluate a generator word against an algebra file.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;
const CHECKED_FAIL: ExitCode = ExitCode::FAILURE;

fn load(path: &PathBuf) -> Result<FrobAlgebra, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    FrobAlgebra::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn store(path: &PathBuf, alg: &FrobAlgebra) -> Result<(), String> {
    fs::write(path, alg.to_json()).map_err(|e| format!("{}: {e}", path.display()))
}

fn fmt_key(key: &[(u32, u32)]) -> String {
    let parts: Vec<String> = key.iter().map(|(d, i)| format!("{d}:{i}")).collect();
    format!("({})", parts.join(","))
}

fn fmt_word(word: &rspin::WordSpace) -> String {
    let parts: Vec<String> = word
        .slots()
        .iter()
        .map(|s| {
            let degs: Vec<String> = s.degrees().map(|d| format!("C{d}")).collect();
            if degs.is_empty() { "0".to_string() } else { degs.join("+") }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" (x) ")
    }
}

fn checked_horizon(horizon: u32) -> Result<u32, String> {
    if (1..=32).contains(&horizon) {
        Ok(horizon)
    } else {
        Err(format!("horizon must lie in 1..=32, got {horizon}"))
    }
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Construct { family, r, kappa, label, output } => {
            let family = match family {
                FamilyArg::A => Family::Arf,
                FamilyArg::B => Family::B,
                FamilyArg::C => Family::C,
                FamilyArg::E => Family::E,
                FamilyArg::F => Family::F,
                FamilyArg::D => Family::D,
            };
            let kappa = match kappa {
                Some(text) => Some(parse_rat(&text).map_err(|e| e.to_string())?),
                None => None,
            };
            if matches!(family, Family::E) && kappa.is_none() {
                return Err("family E requires --kappa".into());
            }
            let spec = FamilySpec { family, r, kappa, label };
            let alg = spec.build().map_err(|e| e.to_string())?;
            store(&output, &alg)?;
            println!("wrote {} ({})", output.display(), alg.label());
            Ok(PASS)
        }
        Command::Verify { file } => {
            let alg = load(&file)?;
            let report = alg.verify();
            print!("{report}");
            if report.all_pass() {
                println!("all axioms hold for {}", alg.label());
                Ok(PASS)
            } else {
                println!("axiom failure in {}", alg.label());
                Ok(CHECKED_FAIL)
            }
        }
        Command::Invariants { file, horizon, json } => {
            let horizon = checked_horizon(horizon)?;
            let alg = load(&file)?;
            let p = profile(&alg, horizon).map_err(|e| e.to_string())?;
            if json {
                println!("{}", p.to_json());
            } else {
                println!("invariants of {} (r = {}):", alg.label(), alg.modulus());
                print!("{}", p.render_table());
            }
            Ok(PASS)
        }
        Command::Sum { first, second, output } => {
            let x = load(&first)?;
            let y = load(&second)?;
            let s = direct_sum(&x, &y).map_err(|e| e.to_string())?;
            store(&output, &s)?;
            println!("wrote {} ({})", output.display(), s.label());
            Ok(PASS)
        }
        Command::Tensor { first, second, output } => {
            let x = load(&first)?;
            let y = load(&second)?;
            let t = graded_tensor(&x, &y).map_err(|e| e.to_string())?;
            store(&output, &t)?;
            println!("wrote {} ({})", output.display(), t.label());
            Ok(PASS)
        }
        Command::Pullback { file, r, output } => {
            let alg = load(&file)?;
            let lifted = alg.pullback(r).map_err(|e| e.to_string())?;
            store(&output, &lifted)?;
            println!("wrote {} ({})", output.display(), lifted.label());
            Ok(PASS)
        }
        Command::Semisimple { file } => {
            let alg = load(&file)?;
            let report = is_semisimple(&alg);
            println!(
                "{}: total dim {}, trace form rank {}, radical dim {}",
                alg.label(),
                report.total_dim,
                report.trace_form_rank,
                report.radical_dim
            );
            if report.semisimple {
                println!("semisimple");
                Ok(PASS)
            } else {
                println!("not semisimple");
                Ok(CHECKED_FAIL)
            }
        }
        Command::SpanCheck { file, horizon, sequence } => {
            let horizon = checked_horizon(horizon)?;
            let sequences: Vec<(String, Vec<CycQ>)> = match (&file, &sequence) {
                (None, Some(text)) => {
                    let vals = text
                        .split(',')
                        .map(|s| parse_rat(s.trim()).map(|q| CycQ::from_rat(1, q)))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())?;
                    vec![("sequence".to_string(), vals)]
                }
                (Some(path), None) => {
                    let alg = load(path)?;
                    let p = profile(&alg, horizon).map_err(|e| e.to_string())?;
                    p.alpha_sequences()
                        .into_iter()
                        .map(|(name, seq)| (name.to_string(), seq.to_vec()))
                        .collect()
                }
                _ => return Err("pass exactly one of FILE or --sequence".into()),
            };
            let mut all_consistent = true;
            for (name, seq) in &sequences {
                let report = span_membership(seq).map_err(|e| e.to_string())?;
                match report.member_verdict {
                    MemberVerdict::Consistent => {
                        let coeffs: Vec<String> =
                            report.recurrence_coeffs.iter().map(|c| c.to_string()).collect();
                        println!(
                            "{name}: consistent (order {}, horizon {}); recurrence [{}]",
                            report.order,
                            report.horizon_used,
                            coeffs.join(", ")
                        );
                    }
                    MemberVerdict::Inconsistent => {
                        all_consistent = false;
                        let reason = if report.char_poly_squarefree {
                            "characteristic polynomial has a zero root"
                        } else {
                            "characteristic polynomial not squarefree"
                        };
                        println!(
                            "{name}: inconsistent (order {}): {reason}",
                            report.order
                        );
                    }
                    MemberVerdict::Inconclusive => {
                        all_consistent = false;
                        println!(
                            "{name}: inconclusive at horizon {} (no recurrence of order <= {})",
                            report.horizon_used,
                            report.horizon_used / 2
                        );
                    }
                }
            }
            println!("note: a finite prefix can never prove membership of the full sequence");
            Ok(if all_consistent { PASS } else { CHECKED_FAIL })
        }
        Command::Distinct { file } => {
            let alg = load(&file)?;
            let mut beta = std::collections::BTreeMap::new();
            for d in rspin::cyclotomic::divisors(alg.modulus()) {
                let v = rspin::invariants::beta_via_dimension(&alg, d)
                    .map_err(|e| e.to_string())?;
                println!("beta_{d} = {v}");
                beta.insert(d, v);
            }
            if rspin::analysis::distinctness_check(&beta) {
                println!("torus invariants are pairwise distinct");
                Ok(PASS)
            } else {
                println!("torus invariants collide");
                Ok(CHECKED_FAIL)
            }
        }
        Command::Eval { file, expr } => {
            let alg = load(&file)?;
            let parsed = parse_expr(&expr).map_err(|e| e.to_string())?;
            let outcome = evaluate(&parsed, &alg).map_err(|e| e.to_string())?;
            let render = |v: &CycQ| -> String {
                match v.approx(1) {
                    Ok((re, im)) => format!("{v}  ~ ({re:.12}, {im:.12})"),
                    Err(_) => v.to_string(),
                }
            };
            match &outcome {
                EvalOutcome::Scalar(s) => {
                    println!("scalar: {}", render(s));
                }
                EvalOutcome::Map(m) => {
                    println!(
                        "map: {} -> {} with {} entries",
                        fmt_word(m.domain()),
                        fmt_word(m.codomain()),
                        m.entries().count()
                    );
                    for (out, inp, v) in m.entries() {
                        println!("  {} <- {}: {}", fmt_key(out), fmt_key(inp), render(v));
                    }
                }
            }
            Ok(PASS)
        }
    }
}
