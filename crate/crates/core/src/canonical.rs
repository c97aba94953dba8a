//! Canonical models built from dependency sets.
//!
//! States are sets of constants. A constant has value `0` at a state that
//! contains it and `1` otherwise, so two states agree on `c` exactly when
//! both or neither contain `c`. The actual state is the full signature.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dependency::{Fd, FdSet};
use crate::semantics::{Model, PointedModel};
use crate::syntax::{AgentId, ConstId, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("invalid dependency file: {0}")]
    File(String),
    #[error("expected a {expected}-agent specification")]
    ModeMismatch { expected: Mode },
    #[error("single-agent specification must have exactly one agent, found {0}")]
    AgentCount(usize),
    #[error("dependency of agent `{agent}` uses `{constant}` outside the signature")]
    OutsideSignature { agent: String, constant: String },
}

/// Positive dependency content for the canonical constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalModelSpec {
    pub signature: BTreeSet<ConstId>,
    pub per_agent: BTreeMap<AgentId, FdSet>,
    pub mode: Mode,
}

impl CanonicalModelSpec {
    /// Single-agent spec over the signature of `fds`.
    pub fn single(fds: FdSet) -> Self {
        let agent = AgentId::single();
        CanonicalModelSpec {
            signature: fds.signature.clone(),
            per_agent: BTreeMap::from([(agent.clone(), FdSet { agent, ..fds })]),
            mode: Mode::Single,
        }
    }

    pub fn multi(signature: BTreeSet<ConstId>, sets: impl IntoIterator<Item = FdSet>) -> Self {
        CanonicalModelSpec {
            signature,
            per_agent: sets.into_iter().map(|s| (s.agent.clone(), s)).collect(),
            mode: Mode::Multi,
        }
    }

    fn validate(&self, mode: Mode) -> Result<(), CanonicalError> {
        if self.mode != mode {
            return Err(CanonicalError::ModeMismatch { expected: mode });
        }
        if mode == Mode::Single && self.per_agent.len() != 1 {
            return Err(CanonicalError::AgentCount(self.per_agent.len()));
        }
        for (agent, fds) in &self.per_agent {
            let used = fds.deps.iter().flat_map(|fd| fd.lhs.iter().chain(fd.rhs.iter()));
            if let Some(c) = used.into_iter().find(|c| !self.signature.contains(*c)) {
                return Err(CanonicalError::OutsideSignature {
                    agent: agent.to_string(),
                    constant: c.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Dependency file for the canonical constructions.
///
/// ```json
/// {
///   "constants": ["c", "d"],
///   "agents": ["1", "2"],
///   "dependencies": [
///     { "agent": "1", "lhs": ["c"], "rhs": ["d"] },
///     { "agent": "2", "lhs": ["d"], "rhs": ["c"] }
///   ]
/// }
/// ```
///
/// Without `agents` the file is single-agent and entries carry no `agent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepsFile {
    pub constants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<Vec<String>>,
    #[serde(default)]
    pub dependencies: Vec<DepsEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<String>,
    #[serde(default)]
    pub lhs: Vec<String>,
    #[serde(default)]
    pub rhs: Vec<String>,
}

impl DepsFile {
    pub fn parse(text: &str) -> Result<Self, CanonicalError> {
        serde_json::from_str(text).map_err(|e| CanonicalError::File(e.to_string()))
    }

    pub fn to_spec(&self) -> Result<CanonicalModelSpec, CanonicalError> {
        let bad = |m: String| CanonicalError::File(m);
        let consts = |names: &[String]| -> Result<BTreeSet<ConstId>, CanonicalError> {
            names
                .iter()
                .map(|n| ConstId::new(n).map_err(|e| bad(e.to_string())))
                .collect()
        };
        let signature = consts(&self.constants)?;
        let (mode, agents) = match &self.agents {
            None => (Mode::Single, vec![AgentId::single()]),
            Some(names) if names.is_empty() => return Err(bad("agent list is empty".into())),
            Some(names) => (
                Mode::Multi,
                names
                    .iter()
                    .map(|n| AgentId::new(n).map_err(|e| bad(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let mut per_agent: BTreeMap<AgentId, FdSet> = agents
            .into_iter()
            .map(|a| (a.clone(), FdSet::new(a, signature.iter().cloned())))
            .collect();
        for (k, entry) in self.dependencies.iter().enumerate() {
            let agent = match (&entry.agent, mode) {
                (None, Mode::Single) => AgentId::single(),
                (Some(_), Mode::Single) => {
                    return Err(bad(format!("dependency {}: agent given without an agent list", k + 1)))
                }
                (None, Mode::Multi) => {
                    return Err(bad(format!("dependency {}: agent missing", k + 1)))
                }
                (Some(a), Mode::Multi) => AgentId::new(a).map_err(|e| bad(e.to_string()))?,
            };
            let fd = Fd {
                lhs: consts(&entry.lhs)?,
                rhs: consts(&entry.rhs)?,
            };
            per_agent
                .get_mut(&agent)
                .ok_or_else(|| bad(format!("dependency {}: unknown agent `{agent}`", k + 1)))?
                .insert(fd)
                .map_err(|e| bad(format!("dependency {}: {e}", k + 1)))?;
        }
        Ok(CanonicalModelSpec {
            signature,
            per_agent,
            mode,
        })
    }
}

/// The canonical model of whichever mode `spec` declares.
pub fn canonical_model(spec: &CanonicalModelSpec) -> Result<PointedModel, CanonicalError> {
    match spec.mode {
        Mode::Single => canonical_model_single(spec),
        Mode::Multi => canonical_model_multi(spec),
    }
}

/// All subsets of `signature`, by size and then lexicographically.
pub fn all_subsets(signature: &BTreeSet<ConstId>) -> Vec<BTreeSet<ConstId>> {
    let consts: Vec<&ConstId> = signature.iter().collect();
    let mut out: Vec<BTreeSet<ConstId>> = (0u64..1 << consts.len())
        .map(|mask| {
            consts
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, c)| (*c).clone())
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn is_closed(fds: &FdSet, s: &BTreeSet<ConstId>) -> bool {
    fds.deps
        .iter()
        .all(|fd| !fd.lhs.is_subset(s) || fd.rhs.is_subset(s))
}

/// Subsets of the signature closed under every dependency of `fds`.
pub fn closed_sets(fds: &FdSet) -> Vec<BTreeSet<ConstId>> {
    all_subsets(&fds.signature)
        .into_iter()
        .filter(|s| is_closed(fds, s))
        .collect()
}

/// State name such as `{d,e}` or `{}`.
pub fn state_name(s: &BTreeSet<ConstId>) -> String {
    let inner: Vec<&str> = s.iter().map(ConstId::as_str).collect();
    format!("{{{}}}", inner.join(","))
}

fn binary_model(
    signature: &BTreeSet<ConstId>,
    states: &[BTreeSet<ConstId>],
    agents: Option<&[AgentId]>,
    partitions: &[(AgentId, Vec<Vec<String>>)],
) -> PointedModel {
    let mut b = Model::builder()
        .constants(signature.iter().map(ConstId::as_str))
        .domain(["0", "1"]);
    if let Some(agents) = agents {
        b = b.agents(agents.iter().map(AgentId::as_str));
    }
    for s in states {
        let row = signature
            .iter()
            .map(|c| if s.contains(c) { "0" } else { "1" });
        b = b.row(&state_name(s), row);
    }
    for (agent, classes) in partitions {
        b = b.partition(agent.as_str(), classes);
    }
    let model = b.build().expect("canonical models are well formed");
    PointedModel::new(model, &state_name(signature)).expect("the full set is a state")
}

/// The single-agent canonical model: one state per closed set, pointed at
/// the full signature.
pub fn canonical_model_single(spec: &CanonicalModelSpec) -> Result<PointedModel, CanonicalError> {
    spec.validate(Mode::Single)?;
    let fds = spec.per_agent.values().next().expect("validated");
    let fds = FdSet {
        signature: spec.signature.clone(),
        ..fds.clone()
    };
    Ok(binary_model(&spec.signature, &closed_sets(&fds), None, &[]))
}

/// The multi-agent canonical model: every subset is a state, and each agent
/// separates the sets closed under its dependencies from the rest.
pub fn canonical_model_multi(spec: &CanonicalModelSpec) -> Result<PointedModel, CanonicalError> {
    spec.validate(Mode::Multi)?;
    let states = all_subsets(&spec.signature);
    let agents: Vec<AgentId> = spec.per_agent.keys().cloned().collect();
    let partitions: Vec<(AgentId, Vec<Vec<String>>)> = spec
        .per_agent
        .iter()
        .map(|(agent, fds)| {
            let (closed, open): (Vec<_>, Vec<_>) = states.iter().partition(|s| is_closed(fds, s));
            let classes = [closed, open]
                .into_iter()
                .filter(|class| !class.is_empty())
                .map(|class| class.into_iter().map(state_name).collect())
                .collect();
            (agent.clone(), classes)
        })
        .collect();
    Ok(binary_model(&spec.signature, &states, Some(&agents), &partitions))
}
