//! Hilbert-style proofs for the single-agent and multi-agent systems.
//!
//! A proof is a list of lines, each justified by an axiom schema, a premise
//! or a rule applied to earlier lines. Lines are numbered from 1.

mod builtin;
mod file;

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{agents_of, AgentId, ConstId, Formula, Mode};

pub use builtin::{builtin_derivations, mutation_corpus, ProofBuilder};
pub use file::{ProofFile, ProofFileError, ProofFileLine};

/// Default bound on the number of atoms in a tautology check.
pub const TAUT_ATOM_LIMIT: usize = 16;

/// Justification of one proof line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Premise,
    Taut,
    Dist,
    Learn,
    Nf,
    Det,
    Comm,
    Ir,
    Rir,
    /// Modus ponens from `φ` on the first line and `φ -> ψ` on the second.
    Mp(usize, usize),
    /// Necessitation `[c]φ` from `φ` on the given line.
    Nec(ConstId, usize),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Premise => "PREMISE",
            Rule::Taut => "TAUT",
            Rule::Dist => "DIST",
            Rule::Learn => "LEARN",
            Rule::Nf => "NF",
            Rule::Det => "DET",
            Rule::Comm => "COMM",
            Rule::Ir => "IR",
            Rule::Rir => "RIR",
            Rule::Mp(..) => "MP",
            Rule::Nec(..) => "NEC",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Mp(i, j) => write!(f, "MP({i},{j})"),
            Rule::Nec(c, i) => write!(f, "NEC({c},{i})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proof {
    pub mode: Mode,
    pub lines: Vec<ProofLine>,
    pub conclusion: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `premises` lists the premise lines the conclusion depends on.
    Accepted { premises: BTreeSet<usize> },
    Rejected { line: usize, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted { .. } => f.write_str("accepted"),
            Verdict::Rejected { line, reason } => write!(f, "rejected line {line}: {reason}"),
        }
    }
}

/// Checks every line in order and reports the first failure.
pub fn check_proof(p: &Proof) -> Verdict {
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(p.lines.len());
    for (k, line) in p.lines.iter().enumerate() {
        let index = k + 1;
        match check_line(p, &deps, index, line) {
            Ok(d) => deps.push(d),
            Err(reason) => return Verdict::Rejected { line: index, reason },
        }
    }
    match p.lines.last() {
        None => Verdict::Rejected {
            line: 0,
            reason: "proof has no lines".into(),
        },
        Some(last) if last.formula != p.conclusion => Verdict::Rejected {
            line: p.lines.len(),
            reason: format!("last line does not match the conclusion {}", p.conclusion),
        },
        Some(_) => Verdict::Accepted {
            premises: deps.pop().unwrap_or_default(),
        },
    }
}

fn check_line(
    p: &Proof,
    deps: &[BTreeSet<usize>],
    index: usize,
    line: &ProofLine,
) -> Result<BTreeSet<usize>, String> {
    check_agents(p.mode, &line.formula)?;
    let f = &line.formula;
    let earlier = |r: usize| -> Result<&ProofLine, String> {
        if r == 0 || r >= index {
            Err(format!("reference to line {r} is not to an earlier line"))
        } else {
            Ok(&p.lines[r - 1])
        }
    };
    let axiom = |ok: bool, schema: &str| -> Result<BTreeSet<usize>, String> {
        if ok {
            Ok(BTreeSet::new())
        } else {
            Err(format!("not an instance of {schema}"))
        }
    };
    match &line.rule {
        Rule::Premise => Ok(BTreeSet::from([index])),
        Rule::Taut => match tautology(f, TAUT_ATOM_LIMIT) {
            Ok(true) => Ok(BTreeSet::new()),
            Ok(false) => Err("not a propositional tautology".into()),
            Err(n) => Err(format!("tautology check over {n} atoms exceeds the limit")),
        },
        Rule::Dist => axiom(is_dist(f), "DIST"),
        Rule::Learn => axiom(is_learn(f), "LEARN"),
        Rule::Nf => axiom(is_nf(f), "NF"),
        Rule::Det => axiom(is_biconditional_instance(f, det_pair), "DET"),
        Rule::Comm => axiom(is_biconditional_instance(f, comm_pair), "COMM"),
        Rule::Ir => {
            if p.mode == Mode::Multi {
                return Err("IR is not sound with several agents; use RIR".into());
            }
            axiom(ir_parts(f).is_some(), "IR")
        }
        Rule::Rir => {
            let (agent, body) = ir_parts(f).ok_or("not an instance of RIR")?;
            let others: Vec<String> = agents_of(body)
                .into_iter()
                .filter(|a| a != agent)
                .map(|a| a.to_string())
                .collect();
            if others.is_empty() {
                Ok(BTreeSet::new())
            } else {
                Err(format!(
                    "RIR side condition fails: formula mentions agents {} besides {agent}",
                    others.join(",")
                ))
            }
        }
        Rule::Mp(i, j) => {
            let minor = earlier(*i)?;
            let major = earlier(*j)?;
            if major.formula != Formula::implies(minor.formula.clone(), f.clone()) {
                return Err(format!("line {j} is not line {i} -> this line"));
            }
            Ok(deps[i - 1].union(&deps[j - 1]).copied().collect())
        }
        Rule::Nec(c, i) => {
            let from = earlier(*i)?;
            if !deps[i - 1].is_empty() {
                return Err(format!("NEC applied to line {i}, which depends on premises"));
            }
            if *f != Formula::inspect(c.clone(), from.formula.clone()) {
                return Err(format!("not [{c}] applied to line {i}"));
            }
            Ok(BTreeSet::new())
        }
    }
}

fn check_agents(mode: Mode, f: &Formula) -> Result<(), String> {
    let agents = agents_of(f);
    match mode {
        Mode::Single if agents.iter().any(|a| !a.is_single()) => {
            Err("agent subscript in a single-agent proof".into())
        }
        Mode::Multi if agents.iter().any(AgentId::is_single) => {
            Err("unsubscripted Kv in a multi-agent proof".into())
        }
        _ => Ok(()),
    }
}

/// `[c](φ -> ψ) -> ([c]φ -> [c]ψ)`.
fn is_dist(f: &Formula) -> bool {
    let Some((lhs, rhs)) = f.as_implication() else {
        return false;
    };
    let Formula::Inspect(c, body) = lhs else {
        return false;
    };
    let Some((phi, psi)) = body.as_implication() else {
        return false;
    };
    *rhs == Formula::implies(
        Formula::inspect(c.clone(), phi.clone()),
        Formula::inspect(c.clone(), psi.clone()),
    )
}

/// `[c]Kv_i(c)`.
fn is_learn(f: &Formula) -> bool {
    matches!(f, Formula::Inspect(c, body) if matches!(body.as_ref(), Formula::Kv(_, d) if d == c))
}

/// `Kv_i(c) -> [d]Kv_i(c)`.
fn is_nf(f: &Formula) -> bool {
    let Some((lhs, rhs)) = f.as_implication() else {
        return false;
    };
    matches!(lhs, Formula::Kv(..))
        && matches!(rhs, Formula::Inspect(_, body) if body.as_ref() == lhs)
}

/// `<c>φ` and `[c]φ`, in either order.
fn det_pair(a: &Formula, b: &Formula) -> bool {
    let one = |x: &Formula, y: &Formula| match (x.as_diamond(), y) {
        (Some((c, phi)), Formula::Inspect(d, psi)) => c == d && phi == psi.as_ref(),
        _ => false,
    };
    one(a, b) || one(b, a)
}

/// `[c][d]φ` and `[d][c]φ`.
fn comm_pair(a: &Formula, b: &Formula) -> bool {
    match (a, b) {
        (Formula::Inspect(c, x), Formula::Inspect(d, y)) => match (x.as_ref(), y.as_ref()) {
            (Formula::Inspect(d2, phi), Formula::Inspect(c2, psi)) => {
                c == c2 && d == d2 && phi == psi
            }
            _ => false,
        },
        _ => false,
    }
}

/// `a -> b`, `b -> a` or `(a -> b) & (b -> a)` for a schema pair.
fn is_biconditional_instance(f: &Formula, pair: fn(&Formula, &Formula) -> bool) -> bool {
    if let Some((a, b)) = f.as_implication() {
        if pair(a, b) {
            return true;
        }
    }
    match f.as_biconditional() {
        Some((a, b)) => pair(a, b),
        None => false,
    }
}

/// Splits `Kv_i(c) -> ([c]φ -> φ)` into `(i, φ)`.
fn ir_parts(f: &Formula) -> Option<(&AgentId, &Formula)> {
    let (lhs, rhs) = f.as_implication()?;
    let Formula::Kv(i, c) = lhs else {
        return None;
    };
    let (inspected, phi) = rhs.as_implication()?;
    match inspected {
        Formula::Inspect(d, body) if d == c && body.as_ref() == phi => Some((i, phi)),
        _ => None,
    }
}

/// Truth-table check treating `Kv` and `[c]` subformulas as atoms. Returns
/// `Err(n)` when the `n` atoms exceed `limit`.
pub fn tautology(f: &Formula, limit: usize) -> Result<bool, usize> {
    fn collect<'a>(f: &'a Formula, atoms: &mut Vec<&'a Formula>) {
        match f {
            Formula::Top => {}
            Formula::Not(g) => collect(g, atoms),
            Formula::And(a, b) => {
                collect(a, atoms);
                collect(b, atoms);
            }
            Formula::Kv(..) | Formula::Inspect(..) => {
                if !atoms.contains(&f) {
                    atoms.push(f);
                }
            }
        }
    }
    fn value(f: &Formula, atoms: &[&Formula], row: u64) -> bool {
        match f {
            Formula::Top => true,
            Formula::Not(g) => !value(g, atoms, row),
            Formula::And(a, b) => value(a, atoms, row) && value(b, atoms, row),
            _ => {
                let k = atoms.iter().position(|a| *a == f).expect("atom collected");
                row & (1 << k) != 0
            }
        }
    }
    let mut atoms = Vec::new();
    collect(f, &mut atoms);
    if atoms.len() > limit.min(63) {
        return Err(atoms.len());
    }
    Ok((0u64..1 << atoms.len()).all(|row| value(f, &atoms, row)))
}
