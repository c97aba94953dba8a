//! JSON model files.
//!
//! ```json
//! {
//!   "constants": ["c", "d"],
//!   "agents": ["1", "2"],
//!   "domain": ["0", "1"],
//!   "states": ["s", "t"],
//!   "valuation": { "s": { "c": "0", "d": "0" }, "t": { "c": "1", "d": "0" } },
//!   "relations": { "1": [["s", "t"]], "2": [["s"], ["t"]] },
//!   "actual": "s"
//! }
//! ```
//!
//! Without `agents` the model is single-agent and its relation is universal.
//! `domain` defaults to the values used by the valuation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::syntax::AgentId;

use super::{Model, ModelError, PointedModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub constants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<String>>,
    pub states: Vec<String>,
    pub valuation: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::File(e.to_string()))
    }

    pub fn to_model(&self) -> Result<Model, ModelError> {
        let mut builder = Model::builder().constants(&self.constants);
        if let Some(agents) = &self.agents {
            builder = builder.agents(agents);
        }
        if let Some(domain) = &self.domain {
            builder = builder.domain(domain);
        }
        for s in &self.states {
            builder = builder.state(s.clone());
        }
        for (s, row) in &self.valuation {
            if !self.states.contains(s) {
                return Err(ModelError::UnknownState(s.clone()));
            }
            for (c, v) in row {
                builder = builder.value(s.clone(), c.clone(), v.clone());
            }
        }
        for (agent, classes) in self.relations.iter().flatten() {
            builder = builder.partition(agent, classes);
        }
        builder.build()
    }

    /// The model pointed at `actual`, which must be present.
    pub fn to_pointed(&self) -> Result<PointedModel, ModelError> {
        let actual = self.actual.as_deref().ok_or(ModelError::NoActual)?;
        PointedModel::new(self.to_model()?, actual)
    }

    pub fn from_model(model: &Model, actual: Option<&str>) -> Self {
        let single = model.is_single_agent();
        let mut valuation = BTreeMap::new();
        for (s, name) in model.states().iter().enumerate() {
            let row = model
                .signature()
                .iter()
                .enumerate()
                .map(|(c, cid)| (cid.to_string(), model.value(s, c).to_string()))
                .collect();
            valuation.insert(name.clone(), row);
        }
        let mut relations = BTreeMap::new();
        for agent in model.agents() {
            let classes: Vec<Vec<String>> = model
                .partition(agent)
                .unwrap_or_default()
                .into_iter()
                .map(|class| class.into_iter().map(str::to_string).collect())
                .collect();
            if single && classes.len() == 1 {
                continue;
            }
            relations.insert(agent.to_string(), classes);
        }
        ModelFile {
            constants: model.signature().iter().map(|c| c.to_string()).collect(),
            agents: (!single).then(|| model.agents().iter().map(AgentId::to_string).collect()),
            domain: Some(model.domain().to_vec()),
            states: model.states().to_vec(),
            valuation,
            relations: (!relations.is_empty()).then_some(relations),
            actual: actual.map(str::to_string),
        }
    }

    pub fn from_pointed(pm: &PointedModel) -> Self {
        ModelFile::from_model(pm.model(), Some(pm.actual_state()))
    }

    /// Pretty-printed JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("model files serialize");
        serde_json::to_string_pretty(&value).expect("json values print")
    }
}
