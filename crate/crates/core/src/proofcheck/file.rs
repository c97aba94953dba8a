//! JSON proof files.
//!
//! ```json
//! {
//!   "mode": "single",
//!   "conclusion": "<c>T",
//!   "lines": [
//!     { "formula": "T", "rule": "TAUT", "refs": [] },
//!     { "formula": "[c]T", "rule": "NEC", "refs": [1], "const": "c" },
//!     { "formula": "[c]T -> <c>T", "rule": "DET", "refs": [] },
//!     { "formula": "<c>T", "rule": "MP", "refs": [2, 3] }
//!   ]
//! }
//! ```
//!
//! A bare array of lines is also accepted; its mode comes from the caller and
//! its conclusion is the last line.

use serde::{Deserialize, Serialize};

use crate::syntax::{parse_formula, print_formula, ConstId, Formula, Mode, SyntaxError};

use super::{Proof, ProofLine, Rule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofFileError {
    #[error("invalid proof file: {0}")]
    Json(String),
    #[error("line {line}: {source}")]
    Formula { line: usize, source: SyntaxError },
    #[error("conclusion: {0}")]
    Conclusion(SyntaxError),
    #[error("line {line}: {message}")]
    Rule { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofFileLine {
    pub formula: String,
    pub rule: String,
    #[serde(default)]
    pub refs: Vec<usize>,
    #[serde(default, rename = "const", skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    pub lines: Vec<ProofFileLine>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyProofFile {
    Full(ProofFile),
    Lines(Vec<ProofFileLine>),
}

impl ProofFile {
    pub fn parse(text: &str) -> Result<Self, ProofFileError> {
        match serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))? {
            AnyProofFile::Full(f) => Ok(f),
            AnyProofFile::Lines(lines) => Ok(ProofFile {
                mode: None,
                conclusion: None,
                lines,
            }),
        }
    }

    /// Builds the proof; `default_mode` applies when the file names none.
    pub fn to_proof(&self, default_mode: Mode) -> Result<Proof, ProofFileError> {
        let mode = match &self.mode {
            Some(m) => m
                .parse::<Mode>()
                .map_err(|e| ProofFileError::Json(format!("mode: {e}")))?,
            None => default_mode,
        };
        let mut lines = Vec::with_capacity(self.lines.len());
        for (k, raw) in self.lines.iter().enumerate() {
            let line = k + 1;
            let formula = parse_formula(&raw.formula, mode)
                .map_err(|source| ProofFileError::Formula { line, source })?;
            let rule = rule_of(raw).map_err(|message| ProofFileError::Rule { line, message })?;
            lines.push(ProofLine { formula, rule });
        }
        let conclusion = match &self.conclusion {
            Some(text) => parse_formula(text, mode).map_err(ProofFileError::Conclusion)?,
            None => lines.last().map_or(Formula::Top, |l: &ProofLine| l.formula.clone()),
        };
        Ok(Proof {
            mode,
            lines,
            conclusion,
        })
    }

    pub fn from_proof(p: &Proof) -> Self {
        let lines = p
            .lines
            .iter()
            .map(|l| {
                let (refs, constant) = match &l.rule {
                    Rule::Mp(i, j) => (vec![*i, *j], None),
                    Rule::Nec(c, i) => (vec![*i], Some(c.to_string())),
                    _ => (Vec::new(), None),
                };
                ProofFileLine {
                    formula: print_formula(&l.formula),
                    rule: l.rule.name().to_string(),
                    refs,
                    constant,
                }
            })
            .collect();
        ProofFile {
            mode: Some(p.mode.to_string()),
            conclusion: Some(print_formula(&p.conclusion)),
            lines,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("proof files serialize");
        serde_json::to_string_pretty(&value).expect("json values print")
    }
}

fn rule_of(raw: &ProofFileLine) -> Result<Rule, String> {
    let name = raw.rule.to_ascii_uppercase();
    let no_refs = |rule: Rule| {
        if raw.refs.is_empty() && raw.constant.is_none() {
            Ok(rule)
        } else {
            Err(format!("{name} takes no references or constant"))
        }
    };
    match name.as_str() {
        "PREMISE" => no_refs(Rule::Premise),
        "TAUT" => no_refs(Rule::Taut),
        "DIST" => no_refs(Rule::Dist),
        "LEARN" => no_refs(Rule::Learn),
        "NF" => no_refs(Rule::Nf),
        "DET" => no_refs(Rule::Det),
        "COMM" => no_refs(Rule::Comm),
        "IR" => no_refs(Rule::Ir),
        "RIR" => no_refs(Rule::Rir),
        "MP" => match (raw.refs.as_slice(), &raw.constant) {
            ([i, j], None) => Ok(Rule::Mp(*i, *j)),
            _ => Err("MP takes exactly two references and no constant".into()),
        },
        "NEC" => match (raw.refs.as_slice(), &raw.constant) {
            ([i], Some(c)) => {
                let c = ConstId::new(c).map_err(|e| e.to_string())?;
                Ok(Rule::Nec(c, *i))
            }
            _ => Err("NEC takes one reference and a constant".into()),
        },
        _ => Err(format!("unknown rule `{}`", raw.rule)),
    }
}
