//! Exhaustive enumeration of small models, used as a test oracle.

use crate::syntax::{AgentId, ConstId};

use super::{Model, PointedModel};

/// Size limits for [`enumerate_models`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_states: usize,
    pub max_consts: usize,
    pub max_domain: usize,
    pub max_agents: usize,
}

impl Bounds {
    pub fn new(max_states: usize, max_consts: usize, max_domain: usize, max_agents: usize) -> Self {
        Bounds {
            max_states,
            max_consts,
            max_domain,
            max_agents,
        }
    }
}

/// Standard constant names: `c, d, e, f, g, h`, then `c6, c7, ...`.
pub fn standard_constants(n: usize) -> Vec<ConstId> {
    const NAMES: [&str; 6] = ["c", "d", "e", "f", "g", "h"];
    (0..n)
        .map(|k| match NAMES.get(k) {
            Some(name) => ConstId::new(name).unwrap(),
            None => ConstId::new(&format!("c{k}")).unwrap(),
        })
        .collect()
}

/// Standard agent names `1, 2, ...`.
pub fn standard_agents(n: usize) -> Vec<AgentId> {
    (1..=n).map(|k| AgentId::new(&k.to_string()).unwrap()).collect()
}

/// All set partitions of `{0..n}` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, max: u32, n: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for label in 0..=limit {
            prefix.push(label);
            extend(prefix, max.max(label), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

/// Odometer over every valuation and every combination of partitions for a
/// fixed signature, agent set, state count and domain size.
///
/// States are named `s0, s1, ...` and values `0, 1, ...`; the domain always
/// holds all `domain_size` tokens.
#[derive(Debug, Clone)]
pub struct ModelEnumerator {
    signature: Vec<ConstId>,
    agents: Vec<AgentId>,
    states: Vec<String>,
    domain: Vec<String>,
    partitions: Vec<Vec<u32>>,
    values: Vec<u32>,
    choice: Vec<usize>,
    done: bool,
}

impl ModelEnumerator {
    /// # Panics
    /// If `states` or `domain_size` is zero, or `agents` is empty.
    pub fn new(
        signature: Vec<ConstId>,
        agents: Vec<AgentId>,
        states: usize,
        domain_size: usize,
    ) -> Self {
        assert!(states >= 1 && domain_size >= 1 && !agents.is_empty());
        let mut signature = signature;
        signature.sort();
        signature.dedup();
        let mut agents = agents;
        agents.sort();
        agents.dedup();
        let k = signature.len();
        ModelEnumerator {
            values: vec![0; states * k],
            choice: vec![0; agents.len()],
            partitions: set_partitions(states),
            signature,
            agents,
            states: (0..states).map(|s| format!("s{s}")).collect(),
            domain: (0..domain_size).map(|v| v.to_string()).collect(),
            done: false,
        }
    }

    fn advance(&mut self) {
        let base = self.domain.len() as u32;
        for digit in self.values.iter_mut() {
            *digit += 1;
            if *digit < base {
                return;
            }
            *digit = 0;
        }
        for digit in self.choice.iter_mut() {
            *digit += 1;
            if *digit < self.partitions.len() {
                return;
            }
            *digit = 0;
        }
        self.done = true;
    }
}

impl Iterator for ModelEnumerator {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.done {
            return None;
        }
        let model = Model::from_parts(
            self.signature.clone(),
            self.agents.clone(),
            self.states.clone(),
            self.domain.clone(),
            self.values.clone(),
            self.choice
                .iter()
                .map(|&p| self.partitions[p].clone())
                .collect(),
        );
        self.advance();
        Some(model)
    }
}

/// Every model with exactly `max_states` states, the first `max_consts`
/// standard constants, values drawn from `max_domain` tokens and agents
/// `1..=max_agents`.
pub fn enumerate_models(bounds: Bounds) -> ModelEnumerator {
    ModelEnumerator::new(
        standard_constants(bounds.max_consts),
        standard_agents(bounds.max_agents),
        bounds.max_states,
        bounds.max_domain,
    )
}

/// Every model at or below the bounds: all state counts, constant counts and
/// agent counts from 1 up to the limits, with `max_domain` value tokens.
pub fn enumerate_models_up_to(bounds: Bounds) -> impl Iterator<Item = Model> {
    let mut sizes = Vec::new();
    for agents in 1..=bounds.max_agents {
        for consts in 1..=bounds.max_consts {
            for states in 1..=bounds.max_states {
                sizes.push(Bounds::new(states, consts, bounds.max_domain, agents));
            }
        }
    }
    sizes.into_iter().flat_map(enumerate_models)
}

/// Every choice of actual state.
pub fn pointed(model: Model) -> impl Iterator<Item = PointedModel> {
    let n = model.num_states();
    (0..n).map(move |s| PointedModel::at(model.clone(), s))
}

/// Identity of a pointed model up to renaming of states and values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    signature: Vec<ConstId>,
    agents: Vec<AgentId>,
    shape: Vec<u32>,
}

/// A labeling-independent key for a small pointed model.
///
/// Two pointed models get the same key iff one arises from the other by
/// renaming states (keeping the actual state) and renaming values
/// constant by constant. Such models satisfy the same formulas. The cost is
/// factorial in the number of states.
pub fn canonical_key(pm: &PointedModel) -> CanonicalKey {
    let m = pm.model();
    let n = m.num_states();
    let k = m.signature().len();
    let rest: Vec<usize> = (0..n).filter(|&s| s != pm.actual()).collect();
    let mut best: Option<Vec<u32>> = None;
    permutations(&rest, &mut |perm| {
        let order: Vec<usize> = std::iter::once(pm.actual()).chain(perm.iter().copied()).collect();
        let mut key = Vec::with_capacity(n * (k + m.agents().len()));
        for c in 0..k {
            key.extend(first_occurrence(order.iter().map(|&s| m.value_ix(s, c))));
        }
        for a in 0..m.agents().len() {
            key.extend(first_occurrence(order.iter().map(|&s| m.class_ix(a, s))));
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    let mut shape = vec![n as u32];
    shape.extend(best.unwrap_or_default());
    CanonicalKey {
        signature: m.signature().to_vec(),
        agents: m.agents().to_vec(),
        shape,
    }
}

fn first_occurrence(labels: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut seen: Vec<u32> = Vec::new();
    labels
        .map(|l| match seen.iter().position(|&x| x == l) {
            Some(p) => p as u32,
            None => {
                seen.push(l);
                seen.len() as u32 - 1
            }
        })
        .collect()
}

fn permutations(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    fn go(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    go(&mut items.to_vec(), 0, visit);
}
