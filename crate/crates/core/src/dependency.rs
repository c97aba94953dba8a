//! Functional dependencies between constants, literal consistency and
//! decision procedures for satisfiability and finite entailment.
//!
//! A positive atom `Kv_i(C;D)` is read as the dependency `C -> D` for agent
//! `i`. A set of literals is consistent exactly when no negative atom
//! `~Kv_i(C;D)` has `D` inside the closure of `C` under the positive atoms of
//! the same agent.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::canonical::{canonical_model_multi, canonical_model_single, CanonicalModelSpec};
use crate::semantics::PointedModel;
use crate::syntax::{translate, AgentId, ConstId, DepAtom, Formula, Mode, NormalFormula};

/// Default limit on atoms and signature size for the exponential procedures.
pub const DEFAULT_GUARD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DependencyError {
    #[error("constant `{0}` is outside the signature")]
    OutsideSignature(String),
    #[error("formula too large: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

/// A functional dependency `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fd {
    pub lhs: BTreeSet<ConstId>,
    pub rhs: BTreeSet<ConstId>,
}

impl Fd {
    pub fn new(
        lhs: impl IntoIterator<Item = ConstId>,
        rhs: impl IntoIterator<Item = ConstId>,
    ) -> Self {
        Fd {
            lhs: lhs.into_iter().collect(),
            rhs: rhs.into_iter().collect(),
        }
    }

    /// Parses `c,d -> e` with either side possibly empty.
    pub fn parse(text: &str) -> Option<Fd> {
        let (lhs, rhs) = text.split_once("->")?;
        let side = |s: &str| -> Option<BTreeSet<ConstId>> {
            s.split(',')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(|c| ConstId::new(c).ok())
                .collect()
        };
        Some(Fd {
            lhs: side(lhs)?,
            rhs: side(rhs)?,
        })
    }
}

impl fmt::Display for Fd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<ConstId>| {
            s.iter().map(ConstId::as_str).collect::<Vec<_>>().join(",")
        };
        write!(f, "{{{}}} -> {{{}}}", join(&self.lhs), join(&self.rhs))
    }
}

/// The dependencies of one agent over a declared signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FdSet {
    pub agent: AgentId,
    pub deps: BTreeSet<Fd>,
    pub signature: BTreeSet<ConstId>,
}

impl FdSet {
    pub fn new(agent: AgentId, signature: impl IntoIterator<Item = ConstId>) -> Self {
        FdSet {
            agent,
            deps: BTreeSet::new(),
            signature: signature.into_iter().collect(),
        }
    }

    /// Adds a dependency, rejecting constants outside the signature.
    pub fn insert(&mut self, fd: Fd) -> Result<(), DependencyError> {
        self.check(fd.lhs.iter().chain(fd.rhs.iter()))?;
        self.deps.insert(fd);
        Ok(())
    }

    pub fn with(mut self, fd: Fd) -> Result<Self, DependencyError> {
        self.insert(fd)?;
        Ok(self)
    }

    fn check<'a>(&self, cs: impl IntoIterator<Item = &'a ConstId>) -> Result<(), DependencyError> {
        match cs.into_iter().find(|c| !self.signature.contains(*c)) {
            Some(c) => Err(DependencyError::OutsideSignature(c.to_string())),
            None => Ok(()),
        }
    }

    /// Closure without the signature check.
    pub(crate) fn close(&self, start: &BTreeSet<ConstId>) -> BTreeSet<ConstId> {
        let mut closed = start.clone();
        loop {
            let before = closed.len();
            for fd in &self.deps {
                if fd.lhs.is_subset(&closed) {
                    closed.extend(fd.rhs.iter().cloned());
                }
            }
            if closed.len() == before {
                return closed;
            }
        }
    }
}

/// Least superset of `start` closed under every dependency in `fds`.
pub fn attribute_closure(
    fds: &FdSet,
    start: &BTreeSet<ConstId>,
) -> Result<BTreeSet<ConstId>, DependencyError> {
    fds.check(start)?;
    Ok(fds.close(start))
}

/// Whether `q` follows from `fds` by the Armstrong rules.
pub fn fd_implied(fds: &FdSet, q: &Fd) -> Result<bool, DependencyError> {
    fds.check(q.rhs.iter())?;
    Ok(q.rhs.is_subset(&attribute_closure(fds, &q.lhs)?))
}

/// A dependency atom or its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: DepAtom,
}

impl Literal {
    pub fn pos(atom: DepAtom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: DepAtom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn to_normal(&self) -> NormalFormula {
        let atom = NormalFormula::Dep(self.atom.clone());
        if self.positive {
            atom
        } else {
            NormalFormula::not(atom)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

fn literal_signature<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> BTreeSet<ConstId> {
    lits.into_iter()
        .flat_map(|l| l.atom.lhs.iter().chain(l.atom.rhs.iter()).cloned())
        .collect()
}

/// The positive atoms of each agent as dependency sets over `signature`.
pub fn positive_fds<'a>(
    lits: impl IntoIterator<Item = &'a Literal>,
    signature: &BTreeSet<ConstId>,
) -> BTreeMap<AgentId, FdSet> {
    let mut out: BTreeMap<AgentId, FdSet> = BTreeMap::new();
    for lit in lits {
        let set = out
            .entry(lit.atom.agent.clone())
            .or_insert_with(|| FdSet::new(lit.atom.agent.clone(), signature.iter().cloned()));
        if lit.positive {
            set.deps.insert(Fd {
                lhs: lit.atom.lhs.clone(),
                rhs: lit.atom.rhs.clone(),
            });
        }
    }
    out
}

/// Whether some pointed model satisfies every literal.
pub fn literals_consistent(lits: &[Literal]) -> bool {
    let signature = literal_signature(lits);
    let fds = positive_fds(lits, &signature);
    lits.iter().filter(|l| !l.positive).all(|l| {
        let atom = &l.atom;
        if atom.rhs.is_subset(&atom.lhs) {
            return false;
        }
        !atom.rhs.is_subset(&fds[&atom.agent].close(&atom.lhs))
    })
}

/// Walks the disjunctive normal form of `nf` in textual order, handing each
/// disjunct that is still consistent to `found`. Stops once `found` returns
/// true. Disjuncts are pruned as soon as a prefix becomes inconsistent.
fn each_consistent_disjunct(
    nf: &NormalFormula,
    found: &mut dyn FnMut(&[Literal]) -> bool,
) -> bool {
    fn go(
        f: &NormalFormula,
        positive: bool,
        acc: &mut Vec<Literal>,
        k: &mut dyn FnMut(&mut Vec<Literal>) -> bool,
    ) -> bool {
        match (f, positive) {
            (NormalFormula::Top, true) => k(acc),
            (NormalFormula::Top, false) => false,
            (NormalFormula::Not(g), _) => go(g, !positive, acc, k),
            (NormalFormula::And(a, b), true) => go(a, true, acc, &mut |acc| go(b, true, acc, k)),
            (NormalFormula::And(a, b), false) => go(a, false, acc, k) || go(b, false, acc, k),
            (NormalFormula::Dep(atom), _) => {
                acc.push(Literal {
                    positive,
                    atom: atom.clone(),
                });
                let stop = literals_consistent(acc) && k(acc);
                acc.pop();
                stop
            }
        }
    }
    go(nf, true, &mut Vec::new(), &mut |acc| found(acc))
}

fn guard(nf: &NormalFormula, limit: usize) -> Result<(), DependencyError> {
    let atoms = nf.atoms().len();
    if atoms > limit {
        return Err(DependencyError::TooLarge {
            what: "atom count",
            size: atoms,
            limit,
        });
    }
    let consts = nf.signature().len();
    if consts > limit {
        return Err(DependencyError::TooLarge {
            what: "signature size",
            size: consts,
            limit,
        });
    }
    Ok(())
}

/// The first consistent disjunct of `nf` in textual order, if any.
pub fn satisfying_disjunct(
    nf: &NormalFormula,
    limit: usize,
) -> Result<Option<Vec<Literal>>, DependencyError> {
    guard(nf, limit)?;
    let mut out = None;
    each_consistent_disjunct(nf, &mut |lits| {
        out = Some(lits.to_vec());
        true
    });
    Ok(out)
}

/// A canonical pointed model of `nf`, or `None` if `nf` is unsatisfiable.
///
/// The model is built over the signature and agents of the whole formula
/// from the positive atoms of the first consistent disjunct.
pub fn satisfiable(
    nf: &NormalFormula,
    limit: usize,
) -> Result<Option<PointedModel>, DependencyError> {
    let Some(lits) = satisfying_disjunct(nf, limit)? else {
        return Ok(None);
    };
    let signature = nf.signature();
    let agents = nf.agents();
    let mut per_agent = positive_fds(&lits, &signature);
    let single = agents.iter().all(AgentId::is_single);
    let agents = if single {
        BTreeSet::from([AgentId::single()])
    } else {
        agents
    };
    for agent in agents {
        per_agent
            .entry(agent.clone())
            .or_insert_with(|| FdSet::new(agent, signature.iter().cloned()));
    }
    let spec = CanonicalModelSpec {
        signature,
        per_agent,
        mode: if single { Mode::Single } else { Mode::Multi },
    };
    let pm = if single {
        canonical_model_single(&spec)
    } else {
        canonical_model_multi(&spec)
    }
    .expect("spec mode matches the constructor");
    Ok(Some(pm))
}

/// Whether every model of all `premises` satisfies `goal`.
pub fn entails(premises: &[Formula], goal: &Formula, limit: usize) -> Result<bool, DependencyError> {
    let counter = premises
        .iter()
        .cloned()
        .rev()
        .fold(Formula::not(goal.clone()), |acc, p| Formula::and(p, acc));
    Ok(satisfying_disjunct(&translate(&counter), limit)?.is_none())
}
