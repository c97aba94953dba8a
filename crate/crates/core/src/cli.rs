//! Command-line front end.
//!
//! Exit codes: 0 for an affirmative answer, 1 for a negative one, 2 for any
//! error. Errors go to the diagnostic stream.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bisim::{bisimilar_multi, bisimilar_single};
use crate::canonical::{canonical_model, DepsFile};
use crate::dependency::{entails, satisfiable, DEFAULT_GUARD};
use crate::proofcheck::{check_proof, ProofFile};
use crate::semantics::{eval, inspect_update, ModelFile, PointedModel};
use crate::syntax::{parse_formula, translate, ConstId, Formula, Mode};

#[derive(Debug, Parser)]
#[command(name = "pil", version, about = "Public inspection logic toolkit")]
struct Cli {
    /// Formula syntax: `single` (plain `Kv`) or `multi` (`Kv_i`).
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Largest atom count or signature size for the exponential procedures.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at the actual state of a model.
    Check {
        #[arg(short = 'm', long)]
        model: PathBuf,
        #[arg(short = 'f', long)]
        formula: String,
    },
    /// Publicly inspect a constant and write the updated model.
    Update {
        #[arg(short = 'm', long)]
        model: PathBuf,
        #[arg(short = 'c', long = "const")]
        constant: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Print the dependency normal form of a formula.
    Translate {
        #[arg(short = 'f', long)]
        formula: String,
    },
    /// Decide satisfiability and print a canonical model.
    Sat {
        #[arg(short = 'f', long)]
        formula: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the premises entail a goal.
    Entail {
        /// One formula per line; `#` starts a comment.
        #[arg(short = 'p', long)]
        premises: PathBuf,
        #[arg(short = 'f', long)]
        formula: String,
    },
    /// Decide bisimilarity of two pointed models.
    Bisim {
        #[arg(long = "m1")]
        m1: PathBuf,
        #[arg(long = "m2")]
        m2: PathBuf,
    },
    /// Build the canonical model of a dependency file.
    Canonical {
        #[arg(short = 'd', long)]
        deps: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Check a proof file.
    Prove {
        #[arg(short = 'p', long)]
        proof: PathBuf,
    },
}

/// Accept the single-dash spellings `-m1` and `-m2`.
fn normalize_args(args: impl IntoIterator<Item = OsString>) -> Vec<OsString> {
    args.into_iter()
        .map(|a| match a.to_str() {
            Some("-m1") => "--m1".into(),
            Some("-m2") => "--m2".into(),
            Some(s) if s.starts_with("-m1=") || s.starts_with("-m2=") => format!("-{s}").into(),
            _ => a,
        })
        .collect()
}

/// Runs one command; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let cli = match Cli::try_parse_from(normalize_args(args.into_iter().map(Into::into))) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => writeln!(out, "{text}").map_err(|e| e.to_string()),
    }
}

fn load_pointed(path: &Path) -> Result<PointedModel, String> {
    let file = ModelFile::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    file.to_pointed().map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str, mode: Mode) -> Result<Formula, String> {
    parse_formula(text, mode).map_err(|e| e.to_string())
}

fn premises(text: &str, mode: Mode) -> Result<Vec<Formula>, String> {
    text.lines()
        .enumerate()
        .filter_map(|(k, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((k + 1, body))
        })
        .map(|(n, body)| parse_formula(body, mode).map_err(|e| format!("premise line {n}: {e}")))
        .collect()
}

fn answer(out: &mut dyn Write, yes: bool, positive: &str, negative: &str) -> Result<i32, String> {
    writeln!(out, "{}", if yes { positive } else { negative }).map_err(|e| e.to_string())?;
    Ok(if yes { 0 } else { 1 })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let mode = cli.mode.unwrap_or_default();
    match &cli.command {
        Command::Check { model, formula: f } => {
            let pm = load_pointed(model)?;
            let mode = cli.mode.unwrap_or(if pm.model().is_single_agent() {
                Mode::Single
            } else {
                Mode::Multi
            });
            let truth = eval(&pm, &formula(f, mode)?).map_err(|e| e.to_string())?;
            answer(out, truth, "true", "false")
        }
        Command::Update {
            model,
            constant,
            out: path,
        } => {
            let pm = load_pointed(model)?;
            let c = ConstId::new(constant).map_err(|e| e.to_string())?;
            let updated = inspect_update(&pm, &c).map_err(|e| e.to_string())?;
            emit(out, path.as_deref(), &ModelFile::from_pointed(&updated).to_json())?;
            Ok(0)
        }
        Command::Translate { formula: f } => {
            let nf = translate(&formula(f, mode)?);
            writeln!(out, "{nf}").map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Sat { formula: f, out: path } => {
            let nf = translate(&formula(f, mode)?);
            match satisfiable(&nf, cli.guard).map_err(|e| e.to_string())? {
                Some(pm) => {
                    writeln!(out, "sat").map_err(|e| e.to_string())?;
                    emit(out, path.as_deref(), &ModelFile::from_pointed(&pm).to_json())?;
                    Ok(0)
                }
                None => answer(out, false, "sat", "unsat"),
            }
        }
        Command::Entail {
            premises: path,
            formula: goal,
        } => {
            let ps = premises(&read(path)?, mode)?;
            let goal = formula(goal, mode)?;
            let valid = entails(&ps, &goal, cli.guard).map_err(|e| e.to_string())?;
            answer(out, valid, "valid", "invalid")
        }
        Command::Bisim { m1, m2 } => {
            let a = load_pointed(m1)?;
            let b = load_pointed(m2)?;
            if a.model().is_single_agent() && b.model().is_single_agent() {
                let yes = bisimilar_single(&a, &b).map_err(|e| e.to_string())?;
                return answer(out, yes, "bisimilar", "not-bisimilar");
            }
            match bisimilar_multi(&a, &b).map_err(|e| e.to_string())? {
                Some(rel) => {
                    writeln!(out, "bisimilar").map_err(|e| e.to_string())?;
                    for (l, r) in &rel.pairs {
                        writeln!(out, "{l} {r}").map_err(|e| e.to_string())?;
                    }
                    Ok(0)
                }
                None => answer(out, false, "bisimilar", "not-bisimilar"),
            }
        }
        Command::Canonical { deps, out: path } => {
            let spec = DepsFile::parse(&read(deps)?)
                .and_then(|f| f.to_spec())
                .map_err(|e| format!("{}: {e}", deps.display()))?;
            if spec.signature.len() > cli.guard {
                return Err(format!(
                    "signature of {} constants exceeds the guard {}",
                    spec.signature.len(),
                    cli.guard
                ));
            }
            let pm = canonical_model(&spec).map_err(|e| e.to_string())?;
            emit(out, path.as_deref(), &ModelFile::from_pointed(&pm).to_json())?;
            Ok(0)
        }
        Command::Prove { proof } => {
            let p = ProofFile::parse(&read(proof)?)
                .and_then(|f| f.to_proof(mode))
                .map_err(|e| format!("{}: {e}", proof.display()))?;
            let verdict = check_proof(&p);
            writeln!(out, "{verdict}").map_err(|e| e.to_string())?;
            Ok(if verdict.is_accepted() { 0 } else { 1 })
        }
    }
}
