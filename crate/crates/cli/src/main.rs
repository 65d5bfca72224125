use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use obsgame::json::{self, ODetSetJson, OracleJson, ReportJson};
use obsgame::pcf::{self, Program, Type};
use obsgame::play::is_complete;
use obsgame::strategy::{tabulate, traces};
use obsgame::{
    brute_force_leq_ib, check_category_laws, obs, obs_equiv, run_test, Bounds, EquivVerdict, LawCorpus,
    OracleVerdict, Strategy,
};
use serde::Serialize;

const EXIT_INEQUIV: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "obsgame", version, about = "Innocent-strategy semantics and bounded observational equivalence for PCF")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BoundsArgs {
    /// Largest numeral; arithmetic saturates here
    #[arg(long, default_value_t = 3)]
    max_nat: u32,
    /// Longest play explored
    #[arg(long, default_value_t = 8)]
    max_play_len: usize,
    /// Longest O-view in enumerated tests
    #[arg(long, default_value_t = 6)]
    max_view_len: usize,
    /// Number of unfoldings of each fix
    #[arg(long, default_value_t = 4)]
    fix_depth: usize,
}

impl BoundsArgs {
    fn bounds(self) -> obsgame::Result<Bounds> {
        Bounds::new(self.max_nat, self.max_play_len, self.max_view_len, self.fix_depth)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and typecheck a term, printing it back with its type
    Parse { file: PathBuf },
    /// Tabulate the view function of a term's denotation
    Denote {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// List the plays of a term's denotation
    Traces {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Keep only complete plays
        #[arg(long)]
        complete_only: bool,
    },
    /// Compute the observation of a term
    Obs {
        file: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Decide observational equivalence of two terms at the given bounds
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Also run the brute-force test oracle both ways and check agreement
        #[arg(long)]
        oracle: bool,
    },
    /// Run the test induced by an O-view set against a term
    Test {
        file: PathBuf,
        /// JSON document of the O-view set
        #[arg(long = "set")]
        set: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Check identity, associativity and congruence on the built-in corpus
    Laws {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

/// A failure together with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<obsgame::Error>() {
            Some(obsgame::Error::IllegalResponse(_)) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure { code, error }
    }
}

impl From<obsgame::Error> for Failure {
    fn from(e: obsgame::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn internal(msg: String) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        error: anyhow!(msg),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_term(path: &Path, bounds: &Bounds) -> Result<(Program, Type, Strategy), Failure> {
    let src = read(path)?;
    pcf::denote_source(&src, bounds)
        .with_context(|| path.display().to_string())
        .map_err(Failure::from)
}

fn emit<T: Serialize>(value: &T) {
    print!("{}", json::to_pretty(value));
}

#[derive(Serialize)]
struct ParseOut {
    term: String,
    r#type: String,
    plus: &'static str,
}

#[derive(Serialize)]
struct TracesOut {
    arena: json::ArenaRef,
    bounds: Bounds,
    bound_exceeded_count: usize,
    plays: Vec<json::PlayJson>,
}

#[derive(Serialize)]
struct OracleBoth {
    forward: OracleJson,
    backward: OracleJson,
    agreement: &'static str,
}

#[derive(Serialize)]
struct EquivOut {
    #[serde(flatten)]
    report: ReportJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleBoth>,
}

#[derive(Serialize)]
struct LawOut {
    law: &'static str,
    subject: String,
    passed: bool,
    witness: Option<ODetSetJson>,
}

#[derive(Serialize)]
struct LawsOut {
    bounds: Bounds,
    passed: bool,
    checks: Vec<LawOut>,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { file } => {
            let src = read(&file)?;
            let program = pcf::parse(&src).with_context(|| file.display().to_string())?;
            let ty = pcf::typecheck(&program.term, &mut Vec::new())
                .with_context(|| file.display().to_string())?;
            emit(&ParseOut {
                term: program.term.to_string(),
                r#type: ty.to_string(),
                plus: match program.plus_order {
                    obsgame::strategy::builtin::AddOrder::RightToLeft => "right-to-left",
                    _ => "left-to-right",
                },
            });
            Ok(0)
        }
        Command::Denote { file, bounds } => {
            let b = bounds.bounds()?;
            let (_, _, s) = load_term(&file, &b)?;
            emit(&json::tabulation_to_json(s.arena(), &tabulate(&s, &b)?));
            Ok(0)
        }
        Command::Traces {
            file,
            bounds,
            complete_only,
        } => {
            let b = bounds.bounds()?;
            let (_, _, s) = load_term(&file, &b)?;
            let t = traces(&s, &b, false, false)?;
            let arena = s.arena();
            let mut plays: Vec<_> = t
                .plays
                .iter()
                .filter(|p| !complete_only || is_complete(arena, p))
                .collect();
            plays.sort_by_key(|p| (p.len(), *p));
            emit(&TracesOut {
                arena: json::arena_ref(arena),
                bounds: b,
                bound_exceeded_count: t.bound_exceeded,
                plays: plays.into_iter().map(|p| json::play_to_json(arena, p, false)).collect(),
            });
            Ok(0)
        }
        Command::Obs { file, bounds } => {
            let b = bounds.bounds()?;
            let (_, _, s) = load_term(&file, &b)?;
            emit(&json::observation_to_json(&obs(&s, &b)?));
            Ok(0)
        }
        Command::Equiv {
            file1,
            file2,
            bounds,
            oracle,
        } => {
            let b = bounds.bounds()?;
            let (_, t1, s1) = load_term(&file1, &b)?;
            let (_, t2, s2) = load_term(&file2, &b)?;
            if t1 != t2 {
                return Err(anyhow!("terms have different types: {t1} and {t2}").into());
            }
            let report = obs_equiv(&s1, &s2, &b)?;
            let equiv = report.verdict == EquivVerdict::EquivAtBounds;
            let mut code = if equiv { 0 } else { EXIT_INEQUIV };
            let oracle = if oracle {
                let fwd = brute_force_leq_ib(&s1, &s2, &b)?;
                let bwd = brute_force_leq_ib(&s2, &s1, &b)?;
                let holds = fwd.verdict == OracleVerdict::HoldsAtBounds && bwd.verdict == OracleVerdict::HoldsAtBounds;
                let inconclusive = fwd.bound_exceeded_count + bwd.bound_exceeded_count + report.bound_exceeded_count > 0;
                let agreement = if holds == equiv {
                    "AGREE"
                } else if inconclusive {
                    "INCONCLUSIVE"
                } else {
                    code = EXIT_INTERNAL;
                    "DISAGREE"
                };
                Some(OracleBoth {
                    forward: json::oracle_to_json(&fwd),
                    backward: json::oracle_to_json(&bwd),
                    agreement,
                })
            } else {
                None
            };
            emit(&EquivOut {
                report: json::report_to_json(&report),
                oracle,
            });
            if code == EXIT_INTERNAL {
                eprintln!("obsgame: obs comparison and test oracle disagree");
            }
            Ok(code)
        }
        Command::Test { file, set, bounds } => {
            let b = bounds.bounds()?;
            let (_, _, s) = load_term(&file, &b)?;
            let text = read(&set)?;
            let doc: ODetSetJson =
                serde_json::from_str(&text).with_context(|| set.display().to_string())?;
            if doc.arena.is_none() {
                return Err(anyhow!("{}: the set document must name its arena", set.display()).into());
            }
            let (_, odet, added) = json::odet_from_json(&doc, Some(s.arena()))
                .with_context(|| format!("{} does not match the term's arena", set.display()))?;
            if added {
                eprintln!("obsgame: closed the set under prefixes");
            }
            println!("{}", run_test(&s, &odet, &b)?.as_str());
            Ok(0)
        }
        Command::Laws { bounds } => {
            let b = bounds.bounds()?;
            let report = check_category_laws(&LawCorpus::builtin(b.max_nat), &b)?;
            let passed = report.all_passed();
            emit(&LawsOut {
                bounds: b,
                passed,
                checks: report
                    .checks
                    .iter()
                    .map(|c| LawOut {
                        law: c.law,
                        subject: c.subject.clone(),
                        passed: c.passed,
                        witness: c.witness.as_ref().map(|w| json::odet_to_json(&c.arena, w, true)),
                    })
                    .collect(),
            });
            if !passed {
                return Err(internal("category law check failed".into()));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("obsgame: {error:#}");
            ExitCode::from(code)
        }
    }
}
