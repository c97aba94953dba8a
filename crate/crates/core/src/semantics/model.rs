use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{AgentId, ConstId, SyntaxError};

/// Errors raised when building, loading or querying models.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("model has no states")]
    NoStates,
    #[error("model domain is empty")]
    EmptyDomain,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate constant `{0}`")]
    DuplicateConst(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown constant `{0}`")]
    UnknownConst(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("no value for constant `{constant}` at state `{state}`")]
    MissingValue { state: String, constant: String },
    #[error("value `{value}` of `{constant}` at `{state}` is not in the domain")]
    ValueOutsideDomain {
        state: String,
        constant: String,
        value: String,
    },
    #[error("relation of agent `{agent}` is not a partition: {reason}")]
    NotAPartition { agent: String, reason: String },
    #[error("missing relation for agent `{0}`")]
    MissingRelation(String),
    #[error("formula mentions undeclared constant `{0}`")]
    UndeclaredConst(String),
    #[error("formula mentions undeclared agent `{0}`")]
    UndeclaredAgent(String),
    #[error("no actual state given")]
    NoActual,
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("invalid model file: {0}")]
    File(String),
}

/// A finite epistemic value model.
///
/// Constants and agents are kept sorted; states keep their insertion order.
/// Valuations and relations are stored as indices: `values[s * k + c]`
/// indexes into `domain`, and `classes[a][s]` is the class of state `s` in
/// the partition of agent `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    signature: Vec<ConstId>,
    agents: Vec<AgentId>,
    states: Vec<String>,
    domain: Vec<String>,
    values: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

/// The constants on which two states agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreeSet {
    pub base: String,
    pub other: String,
    pub agree: BTreeSet<ConstId>,
}

/// Renumbers class labels in order of first occurrence.
pub(crate) fn normalize_classes(labels: &[u32]) -> Vec<u32> {
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    labels
        .iter()
        .map(|l| {
            let next = seen.len() as u32;
            *seen.entry(*l).or_insert(next)
        })
        .collect()
}

impl Model {
    pub fn builder() -> ModelBuilder {
        ModelBuilder::default()
    }

    /// Assembles a model from already validated parts.
    pub(crate) fn from_parts(
        signature: Vec<ConstId>,
        agents: Vec<AgentId>,
        states: Vec<String>,
        domain: Vec<String>,
        values: Vec<u32>,
        classes: Vec<Vec<u32>>,
    ) -> Model {
        let model = Model {
            signature,
            agents,
            states,
            domain,
            values,
            classes: classes.iter().map(|c| normalize_classes(c)).collect(),
        };
        debug_assert_eq!(model.check_invariants(), Ok(()));
        model
    }

    pub fn signature(&self) -> &[ConstId] {
        &self.signature
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// One agent, the reserved single-language agent.
    pub fn is_single_agent(&self) -> bool {
        self.agents.len() == 1 && self.agents[0].is_single()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn const_index(&self, c: &ConstId) -> Option<usize> {
        self.signature.binary_search(c).ok()
    }

    pub fn agent_index(&self, a: &AgentId) -> Option<usize> {
        self.agents.binary_search(a).ok()
    }

    /// Domain index of the value of constant `c` at state `s`.
    #[inline]
    pub(crate) fn value_ix(&self, s: usize, c: usize) -> u32 {
        self.values[s * self.signature.len() + c]
    }

    #[inline]
    pub(crate) fn class_ix(&self, agent: usize, s: usize) -> u32 {
        self.classes[agent][s]
    }

    pub fn value(&self, s: usize, c: usize) -> &str {
        &self.domain[self.value_ix(s, c) as usize]
    }

    /// Value of `c` at the named state.
    pub fn value_of(&self, state: &str, c: &ConstId) -> Option<&str> {
        let s = self.state_index(state)?;
        let c = self.const_index(c)?;
        Some(self.value(s, c))
    }

    /// Partition of `agent` as lists of state names, classes in order of
    /// their first state.
    pub fn partition(&self, agent: &AgentId) -> Option<Vec<Vec<&str>>> {
        let a = self.agent_index(agent)?;
        let labels = &self.classes[a];
        let count = labels.iter().max().map_or(0, |m| *m as usize + 1);
        let mut out = vec![Vec::new(); count];
        for (s, l) in labels.iter().enumerate() {
            out[*l as usize].push(self.states[s].as_str());
        }
        Some(out)
    }

    pub fn related(&self, agent: usize, s: usize, t: usize) -> bool {
        self.classes[agent][s] == self.classes[agent][t]
    }

    /// `s =_c t`
    pub fn agrees_on(&self, s: usize, t: usize, c: usize) -> bool {
        self.value_ix(s, c) == self.value_ix(t, c)
    }

    pub fn agree_set(&self, base: usize, other: usize) -> AgreeSet {
        AgreeSet {
            base: self.states[base].clone(),
            other: self.states[other].clone(),
            agree: (0..self.signature.len())
                .filter(|&c| self.agrees_on(base, other, c))
                .map(|c| self.signature[c].clone())
                .collect(),
        }
    }

    /// Keeps the listed states, in the given order, restricting valuation and
    /// relations.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Model {
        let k = self.signature.len();
        let mut values = Vec::with_capacity(keep.len() * k);
        for &s in keep {
            values.extend_from_slice(&self.values[s * k..(s + 1) * k]);
        }
        Model::from_parts(
            self.signature.clone(),
            self.agents.clone(),
            keep.iter().map(|&s| self.states[s].clone()).collect(),
            self.domain.clone(),
            values,
            self.classes
                .iter()
                .map(|labels| keep.iter().map(|&s| labels[s]).collect())
                .collect(),
        )
    }

    /// Adds every constant of `extra` missing from the signature, with one
    /// fixed value at every state. Such constants never separate states.
    pub fn extend_signature<'a>(&self, extra: impl IntoIterator<Item = &'a ConstId>) -> Model {
        let mut signature: BTreeSet<ConstId> = self.signature.iter().cloned().collect();
        signature.extend(extra.into_iter().cloned());
        if signature.len() == self.signature.len() {
            return self.clone();
        }
        let signature: Vec<ConstId> = signature.into_iter().collect();
        let mut values = Vec::with_capacity(self.states.len() * signature.len());
        for s in 0..self.states.len() {
            for c in &signature {
                values.push(self.const_index(c).map_or(0, |ci| self.value_ix(s, ci)));
            }
        }
        Model::from_parts(
            signature,
            self.agents.clone(),
            self.states.clone(),
            self.domain.clone(),
            values,
            self.classes.clone(),
        )
    }

    /// Re-checks every structural invariant.
    pub fn check_invariants(&self) -> Result<(), ModelError> {
        if self.states.is_empty() {
            return Err(ModelError::NoStates);
        }
        if self.domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        if self.signature.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::File("signature not strictly sorted".into()));
        }
        if self.agents.is_empty() || self.agents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::File("agents empty or not strictly sorted".into()));
        }
        if self.values.len() != self.states.len() * self.signature.len() {
            return Err(ModelError::File("valuation is not total".into()));
        }
        if let Some(bad) = self.values.iter().find(|v| **v as usize >= self.domain.len()) {
            return Err(ModelError::File(format!("value index {bad} outside domain")));
        }
        if self.classes.len() != self.agents.len() {
            return Err(ModelError::MissingRelation(
                self.agents
                    .get(self.classes.len())
                    .map_or_else(String::new, |a| a.to_string()),
            ));
        }
        for (agent, labels) in self.agents.iter().zip(&self.classes) {
            if labels.len() != self.states.len() || normalize_classes(labels) != *labels {
                return Err(ModelError::NotAPartition {
                    agent: agent.to_string(),
                    reason: "class labels do not cover the states".into(),
                });
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`Model`] from names.
///
/// Leaving out [`ModelBuilder::agents`] makes a single-agent model whose
/// relation is universal unless a partition for `*` is given.
#[derive(Debug, Clone, Default)]
pub struct ModelBuilder {
    constants: Vec<String>,
    agents: Option<Vec<String>>,
    domain: Option<Vec<String>>,
    states: Vec<String>,
    valuation: Vec<(String, String, String)>,
    relations: Vec<(String, Vec<Vec<String>>)>,
}

impl ModelBuilder {
    pub fn constants<S: AsRef<str>>(mut self, cs: impl IntoIterator<Item = S>) -> Self {
        self.constants = cs.into_iter().map(|c| c.as_ref().to_string()).collect();
        self
    }

    pub fn agents<S: AsRef<str>>(mut self, agents: impl IntoIterator<Item = S>) -> Self {
        self.agents = Some(agents.into_iter().map(|a| a.as_ref().to_string()).collect());
        self
    }

    pub fn domain<S: AsRef<str>>(mut self, values: impl IntoIterator<Item = S>) -> Self {
        self.domain = Some(values.into_iter().map(|v| v.as_ref().to_string()).collect());
        self
    }

    /// Declares a state.
    pub fn state(mut self, name: impl Into<String>) -> Self {
        self.states.push(name.into());
        self
    }

    /// Sets the value of one constant at one state.
    pub fn value(
        mut self,
        state: impl Into<String>,
        constant: impl Into<String>,
        value: impl Into<String>,
    ) -> Self {
        self.valuation
            .push((state.into(), constant.into(), value.into()));
        self
    }

    /// Declares a state with values listed in the order of [`Self::constants`].
    pub fn row<S: AsRef<str>>(mut self, name: &str, values: impl IntoIterator<Item = S>) -> Self {
        self.states.push(name.to_string());
        for (c, v) in self.constants.clone().iter().zip(values) {
            self.valuation
                .push((name.to_string(), c.clone(), v.as_ref().to_string()));
        }
        self
    }

    pub fn partition<S: AsRef<str>, C: IntoIterator<Item = S>>(
        mut self,
        agent: &str,
        classes: impl IntoIterator<Item = C>,
    ) -> Self {
        let classes = classes
            .into_iter()
            .map(|class| class.into_iter().map(|s| s.as_ref().to_string()).collect())
            .collect();
        self.relations.push((agent.to_string(), classes));
        self
    }

    pub fn build(self) -> Result<Model, ModelError> {
        if self.states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let mut state_ix = BTreeMap::new();
        for (k, s) in self.states.iter().enumerate() {
            if state_ix.insert(s.as_str(), k).is_some() {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        let mut signature = BTreeSet::new();
        for c in &self.constants {
            if !signature.insert(ConstId::new(c)?) {
                return Err(ModelError::DuplicateConst(c.clone()));
            }
        }
        let signature: Vec<ConstId> = signature.into_iter().collect();

        let single = self.agents.is_none();
        let agents: Vec<AgentId> = match &self.agents {
            None => vec![AgentId::single()],
            Some(names) => {
                let mut set = BTreeSet::new();
                for a in names {
                    if !set.insert(AgentId::new(a)?) {
                        return Err(ModelError::DuplicateAgent(a.clone()));
                    }
                }
                if set.is_empty() {
                    return Err(ModelError::File("agent list is empty".into()));
                }
                set.into_iter().collect()
            }
        };

        // Valuation: every (state, constant) exactly once.
        let k = signature.len();
        let mut raw: Vec<Option<&str>> = vec![None; self.states.len() * k];
        for (s, c, v) in &self.valuation {
            let si = *state_ix
                .get(s.as_str())
                .ok_or_else(|| ModelError::UnknownState(s.clone()))?;
            let ci = ConstId::new(c)
                .ok()
                .and_then(|cid| signature.binary_search(&cid).ok())
                .ok_or_else(|| ModelError::UnknownConst(c.clone()))?;
            raw[si * k + ci] = Some(v.as_str());
        }
        let domain: Vec<String> = match &self.domain {
            Some(d) => d.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect(),
            None => raw
                .iter()
                .flatten()
                .map(|v| v.to_string())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        if domain.is_empty() {
            // A model without constants still needs a value token.
            if k > 0 || self.domain.is_some() {
                return Err(ModelError::EmptyDomain);
            }
        }
        let domain = if domain.is_empty() {
            vec!["0".to_string()]
        } else {
            domain
        };
        let mut values = Vec::with_capacity(raw.len());
        for (pos, v) in raw.iter().enumerate() {
            let (s, c) = (pos / k.max(1), pos % k.max(1));
            let v = v.ok_or_else(|| ModelError::MissingValue {
                state: self.states[s].clone(),
                constant: signature[c].to_string(),
            })?;
            let ix = domain
                .binary_search_by(|d| d.as_str().cmp(v))
                .map_err(|_| ModelError::ValueOutsideDomain {
                    state: self.states[s].clone(),
                    constant: signature[c].to_string(),
                    value: v.to_string(),
                })?;
            values.push(ix as u32);
        }

        let mut classes = Vec::with_capacity(agents.len());
        for agent in &agents {
            let given: Vec<&Vec<Vec<String>>> = self
                .relations
                .iter()
                .filter(|(a, _)| a == agent.as_str())
                .map(|(_, p)| p)
                .collect();
            let labels = match given.as_slice() {
                [] if single => vec![0; self.states.len()],
                [] => return Err(ModelError::MissingRelation(agent.to_string())),
                [partition] => partition_labels(agent, partition, &state_ix)?,
                _ => {
                    return Err(ModelError::NotAPartition {
                        agent: agent.to_string(),
                        reason: "given more than once".into(),
                    })
                }
            };
            classes.push(labels);
        }
        for (a, _) in &self.relations {
            if !agents.iter().any(|ag| ag.as_str() == a) {
                return Err(ModelError::UnknownAgent(a.clone()));
            }
        }

        Ok(Model::from_parts(
            signature,
            agents,
            self.states,
            domain,
            values,
            classes,
        ))
    }
}

fn partition_labels(
    agent: &AgentId,
    partition: &[Vec<String>],
    state_ix: &BTreeMap<&str, usize>,
) -> Result<Vec<u32>, ModelError> {
    let bad = |reason: String| ModelError::NotAPartition {
        agent: agent.to_string(),
        reason,
    };
    let mut labels: Vec<Option<u32>> = vec![None; state_ix.len()];
    for (k, class) in partition.iter().enumerate() {
        if class.is_empty() {
            return Err(bad("empty class".into()));
        }
        for s in class {
            let si = *state_ix
                .get(s.as_str())
                .ok_or_else(|| ModelError::UnknownState(s.clone()))?;
            if labels[si].replace(k as u32).is_some() {
                return Err(bad(format!("state `{s}` occurs twice")));
            }
        }
    }
    labels
        .iter()
        .enumerate()
        .map(|(si, l)| {
            l.ok_or_else(|| {
                let name = state_ix
                    .iter()
                    .find(|(_, v)| **v == si)
                    .map_or("", |(k, _)| k);
                bad(format!("state `{name}` is not covered"))
            })
        })
        .collect()
}

/// A model together with its actual state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedModel {
    model: Model,
    actual: usize,
}

impl PointedModel {
    pub fn new(model: Model, actual: &str) -> Result<Self, ModelError> {
        let actual = model
            .state_index(actual)
            .ok_or_else(|| ModelError::UnknownState(actual.to_string()))?;
        Ok(PointedModel { model, actual })
    }

    /// Points at the state with index `actual`.
    ///
    /// # Panics
    /// If `actual` is out of range.
    pub fn at(model: Model, actual: usize) -> Self {
        assert!(actual < model.num_states(), "actual state out of range");
        PointedModel { model, actual }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn into_model(self) -> Model {
        self.model
    }

    pub fn actual(&self) -> usize {
        self.actual
    }

    pub fn actual_state(&self) -> &str {
        &self.model.states[self.actual]
    }

    /// Same model pointed elsewhere.
    pub fn repoint(&self, actual: usize) -> PointedModel {
        PointedModel::at(self.model.clone(), actual)
    }
}
