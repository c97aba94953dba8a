//! Bisimulation and logical equivalence of pointed models.
//!
//! Models over different signatures are compared on the union of their
//! signatures; a constant a model does not declare has one fixed value at
//! all of its states.

use std::collections::{BTreeMap, BTreeSet};

use crate::semantics::{Model, PointedModel};
use crate::syntax::{AgentId, ConstId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BisimError {
    #[error("expected a single-agent model, found {0} agents")]
    NotSingleAgent(usize),
    #[error("models have different agents: {left:?} and {right:?}")]
    AgentMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("signature of {0} constants is too large to compare")]
    SignatureTooLarge(usize),
}

/// For each constant `d`, the maximal agree-sets `agree(s, t)` over states
/// `t` indistinguishable from the actual state `s` with `s` and `t`
/// differing on `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferencePattern {
    pub per_constant: BTreeMap<ConstId, Vec<BTreeSet<ConstId>>>,
}

/// Pairs of state names, first model then second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimRelation {
    pub pairs: BTreeSet<(String, String)>,
}

impl BisimRelation {
    pub fn contains(&self, left: &str, right: &str) -> bool {
        self.pairs.contains(&(left.to_string(), right.to_string()))
    }
}

/// A model over a fixed constant order with agree-sets as bitmasks.
struct View {
    model: Model,
    actual: usize,
}

impl View {
    fn new(pm: &PointedModel, signature: &BTreeSet<ConstId>) -> Self {
        View {
            model: pm.model().extend_signature(signature),
            actual: pm.actual(),
        }
    }

    fn n(&self) -> usize {
        self.model.num_states()
    }

    fn k(&self) -> usize {
        self.model.signature().len()
    }

    fn agree(&self, s: usize, t: usize) -> u64 {
        (0..self.k())
            .filter(|&c| self.model.agrees_on(s, t, c))
            .fold(0, |m, c| m | 1 << c)
    }

    fn related(&self, a: usize, s: usize, t: usize) -> bool {
        self.model.related(a, s, t)
    }

    /// Maximal agree-sets of `s` with states `t ~a s` that differ on `d`.
    fn pattern(&self, a: usize, s: usize, d: usize) -> Vec<u64> {
        let masks: BTreeSet<u64> = (0..self.n())
            .filter(|&t| self.related(a, s, t))
            .map(|t| self.agree(s, t))
            .filter(|m| m & (1 << d) == 0)
            .collect();
        masks
            .iter()
            .copied()
            .filter(|&m| !masks.iter().any(|&o| o != m && o & m == m))
            .collect()
    }
}

fn union_signature(a: &PointedModel, b: &PointedModel) -> Result<BTreeSet<ConstId>, BisimError> {
    let sig: BTreeSet<ConstId> = a
        .model()
        .signature()
        .iter()
        .chain(b.model().signature())
        .cloned()
        .collect();
    if sig.len() > 63 {
        return Err(BisimError::SignatureTooLarge(sig.len()));
    }
    Ok(sig)
}

fn same_agents(a: &PointedModel, b: &PointedModel) -> Result<(), BisimError> {
    if a.model().agents() == b.model().agents() {
        return Ok(());
    }
    let names = |m: &Model| m.agents().iter().map(AgentId::to_string).collect();
    Err(BisimError::AgentMismatch {
        left: names(a.model()),
        right: names(b.model()),
    })
}

fn one_agent(pm: &PointedModel) -> Result<(), BisimError> {
    match pm.model().agents().len() {
        1 => Ok(()),
        n => Err(BisimError::NotSingleAgent(n)),
    }
}

/// The difference pattern of a one-agent pointed model.
pub fn difference_pattern(pm: &PointedModel) -> Result<DifferencePattern, BisimError> {
    one_agent(pm)?;
    let sig: BTreeSet<ConstId> = pm.model().signature().iter().cloned().collect();
    let view = View::new(pm, &sig);
    let names = view.model.signature();
    let to_set = |m: u64| -> BTreeSet<ConstId> {
        (0..names.len())
            .filter(|c| m & (1 << c) != 0)
            .map(|c| names[c].clone())
            .collect()
    };
    let per_constant = (0..view.k())
        .map(|d| {
            let mut sets: Vec<BTreeSet<ConstId>> =
                view.pattern(0, view.actual, d).into_iter().map(to_set).collect();
            sets.sort();
            (names[d].clone(), sets)
        })
        .collect();
    Ok(DifferencePattern { per_constant })
}

fn patterns_match(a: &View, b: &View) -> bool {
    let agents = a.model.agents().len();
    (0..agents).all(|i| (0..a.k()).all(|d| a.pattern(i, a.actual, d) == b.pattern(i, b.actual, d)))
}

/// Bisimilarity of one-agent pointed models: for every `C` and `d`, one side
/// has a state agreeing on `C` and differing on `d` iff the other does.
pub fn bisimilar_single(a: &PointedModel, b: &PointedModel) -> Result<bool, BisimError> {
    one_agent(a)?;
    one_agent(b)?;
    same_agents(a, b)?;
    let sig = union_signature(a, b)?;
    Ok(patterns_match(&View::new(a, &sig), &View::new(b, &sig)))
}

/// Per-agent difference patterns at the actual states coincide.
///
/// Unlike [`bisimilar_multi`], the witnesses are not required to be related
/// to each other; only the classes of the actual states are compared.
pub fn bisimilar_pointwise(a: &PointedModel, b: &PointedModel) -> Result<bool, BisimError> {
    same_agents(a, b)?;
    let sig = union_signature(a, b)?;
    Ok(patterns_match(&View::new(a, &sig), &View::new(b, &sig)))
}

/// `(s, s')` has, for every agent `i`, every `t ~i s` and every `d` with
/// `s` and `t` differing on `d`, a `t' ~i s'` with `t Z t'` that agrees with
/// `s'` on all of `agree(s, t)` and differs from it on `d`.
fn zig(x: &View, y: &View, z: &dyn Fn(usize, usize) -> bool, s: usize, s2: usize) -> bool {
    let agents = x.model.agents().len();
    (0..agents).all(|i| {
        (0..x.n()).filter(|&t| x.related(i, s, t)).all(|t| {
            let agree = x.agree(s, t);
            (0..x.k()).filter(|d| agree & (1 << d) == 0).all(|d| {
                (0..y.n()).any(|t2| {
                    let agree2 = y.agree(s2, t2);
                    z(t, t2) && y.related(i, s2, t2) && agree2 & agree == agree && agree2 & (1 << d) == 0
                })
            })
        })
    })
}

fn refine(x: &View, y: &View, rel: &mut [Vec<bool>]) -> usize {
    let mut dropped = 0;
    loop {
        let snapshot = rel.to_vec();
        let z = |t: usize, t2: usize| snapshot[t][t2];
        let zt = |t2: usize, t: usize| snapshot[t][t2];
        let mut changed = false;
        for s in 0..x.n() {
            for s2 in 0..y.n() {
                if snapshot[s][s2] && !(zig(x, y, &z, s, s2) && zig(y, x, &zt, s2, s)) {
                    rel[s][s2] = false;
                    changed = true;
                    dropped += 1;
                }
            }
        }
        if !changed {
            return dropped;
        }
    }
}

fn views(a: &PointedModel, b: &PointedModel) -> Result<(View, View), BisimError> {
    same_agents(a, b)?;
    let sig = union_signature(a, b)?;
    Ok((View::new(a, &sig), View::new(b, &sig)))
}

/// The largest multi-agent bisimulation between the two models, if it links
/// their actual states.
///
/// Computed as a greatest fixpoint: starting from all pairs, pairs failing
/// the forth or back condition are removed until nothing changes.
pub fn bisimilar_multi(
    a: &PointedModel,
    b: &PointedModel,
) -> Result<Option<BisimRelation>, BisimError> {
    let (x, y) = views(a, b)?;
    let mut rel = vec![vec![true; y.n()]; x.n()];
    refine(&x, &y, &mut rel);
    if !rel[x.actual][y.actual] {
        return Ok(None);
    }
    let mut pairs = BTreeSet::new();
    for (s, row) in rel.iter().enumerate() {
        for (s2, &linked) in row.iter().enumerate() {
            if linked {
                pairs.insert((x.model.states()[s].clone(), y.model.states()[s2].clone()));
            }
        }
    }
    Ok(Some(BisimRelation { pairs }))
}

/// Whether `rel` satisfies the forth and back conditions for every pair.
pub fn is_bisimulation(
    a: &PointedModel,
    b: &PointedModel,
    rel: &BisimRelation,
) -> Result<bool, BisimError> {
    let (x, y) = views(a, b)?;
    let mut matrix = vec![vec![false; y.n()]; x.n()];
    for (l, r) in &rel.pairs {
        match (x.model.state_index(l), y.model.state_index(r)) {
            (Some(s), Some(s2)) => matrix[s][s2] = true,
            _ => return Ok(false),
        }
    }
    Ok(refine(&x, &y, &mut matrix) == 0)
}

/// Whether both pointed models satisfy the same atoms `Kv_i(C;d)` for every
/// agent, every `C` and every `d` over the union signature. Models with
/// different agents are never equivalent.
pub fn logically_equivalent(a: &PointedModel, b: &PointedModel) -> bool {
    let Ok((x, y)) = views(a, b) else {
        return false;
    };
    let profile = |v: &View| -> Vec<bool> {
        let agents = v.model.agents().len();
        let mut out = Vec::new();
        for i in 0..agents {
            let agrees: Vec<u64> = (0..v.n())
                .filter(|&t| v.related(i, v.actual, t))
                .map(|t| v.agree(v.actual, t))
                .collect();
            for c in 0u64..1 << v.k() {
                for d in 0..v.k() {
                    out.push(agrees.iter().all(|&m| m & c != c || m & (1 << d) != 0));
                }
            }
        }
        out
    };
    profile(&x) == profile(&y)
}
