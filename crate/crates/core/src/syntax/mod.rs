//! Formulas of public inspection logic.
//!
//! The core language has five constructors: `T`, negation, conjunction,
//! the knowing-value atom `Kv_i(c)` and public inspection `[c]φ`. All other
//! surface forms (disjunction, implication, the diamond `<c>` and the set
//! forms `Kv_i(C)` / `Kv_i(C;D)`) are sugar that the parser expands into the
//! core.

mod normal;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use normal::{translate, DepAtom, NormalFormula};
pub use parse::parse_formula;
pub use print::print_formula;

/// Reserved agent name used for the single-agent language.
const SINGLE_AGENT: &str = "*";

/// Errors raised while building identifiers or parsing formulas.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("invalid constant name `{0}`")]
    InvalidConst(String),
    #[error("invalid agent name `{0}`")]
    InvalidAgent(String),
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Whether formulas carry agent subscripts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mode {
    /// One implicit agent; `Kv(c)` without subscript.
    #[default]
    Single,
    /// Explicit agents; `Kv_i(c)` is required.
    Multi,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Single => f.write_str("single"),
            Mode::Multi => f.write_str("multi"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(Mode::Single),
            "multi" => Ok(Mode::Multi),
            other => Err(format!("unknown mode `{other}` (expected `single` or `multi`)")),
        }
    }
}

/// Name of a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstId(String);

impl ConstId {
    /// Validates `name` against `[A-Za-z][A-Za-z0-9_]*`.
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_const_name(name) {
            Ok(ConstId(name.to_string()))
        } else {
            Err(SyntaxError::InvalidConst(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConstId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for ConstId {
    type Error = SyntaxError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        ConstId::new(value)
    }
}

pub(crate) fn is_const_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_agent_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Name of an agent.
///
/// User-visible agents match `[A-Za-z0-9_]+`. The single-agent language uses
/// one reserved agent, [`AgentId::single`], which cannot collide with any of
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_agent_name(name) {
            Ok(AgentId(name.to_string()))
        } else {
            Err(SyntaxError::InvalidAgent(name.to_string()))
        }
    }

    /// The implicit agent of the single-agent language.
    pub fn single() -> Self {
        AgentId(SINGLE_AGENT.to_string())
    }

    pub fn is_single(&self) -> bool {
        self.0 == SINGLE_AGENT
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for AgentId {
    type Error = SyntaxError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        AgentId::new(value)
    }
}

/// A desugared formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `Kv_i(c)`: agent `i` knows the value of `c`.
    Kv(AgentId, ConstId),
    /// `[c]φ`: after publicly inspecting `c`, `φ` holds.
    Inspect(ConstId, Box<Formula>),
}

impl Formula {
    pub fn top() -> Self {
        Formula::Top
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `a | b := ~(~a & ~b)`
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `a -> b := ~(a & ~b)`
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn kv(agent: AgentId, c: ConstId) -> Self {
        Formula::Kv(agent, c)
    }

    pub fn inspect(c: ConstId, f: Formula) -> Self {
        Formula::Inspect(c, Box::new(f))
    }

    /// `<c>φ := ~[c]~φ`
    pub fn diamond(c: ConstId, f: Formula) -> Self {
        Formula::not(Formula::inspect(c, Formula::not(f)))
    }

    /// `[c1]...[cn]φ`, outermost inspection first.
    pub fn inspect_all<'a>(cs: impl IntoIterator<Item = &'a ConstId>, f: Formula) -> Self {
        let cs: Vec<&ConstId> = cs.into_iter().collect();
        cs.into_iter()
            .rev()
            .fold(f, |acc, c| Formula::inspect(c.clone(), acc))
    }

    /// `Kv_i(C) := Kv_i(c1) & ... & Kv_i(cn)`, left nested; `T` when `C` is empty.
    pub fn kv_all<'a>(agent: &AgentId, cs: impl IntoIterator<Item = &'a ConstId>) -> Self {
        cs.into_iter()
            .map(|c| Formula::kv(agent.clone(), c.clone()))
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// `Kv_i(C;D) := [C]Kv_i(D)` with `C` and `D` enumerated in sorted order.
    pub fn dependency(agent: &AgentId, lhs: &BTreeSet<ConstId>, rhs: &BTreeSet<ConstId>) -> Self {
        Formula::inspect_all(lhs, Formula::kv_all(agent, rhs))
    }

    /// Splits `~(a & ~b)` into `(a, b)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(a, nb) => match nb.as_ref() {
                    Formula::Not(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Splits `~(~a & ~b)` into `(a, b)`.
    pub fn as_disjunction(&self) -> Option<(&Formula, &Formula)> {
        let (na, b) = self.as_implication()?;
        match na {
            Formula::Not(a) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits `~[c]~φ` into `(c, φ)`.
    pub fn as_diamond(&self) -> Option<(&ConstId, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Inspect(c, body) => match body.as_ref() {
                    Formula::Not(f) => Some((c, f)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Splits `(a -> b) & (b -> a)` into `(a, b)`.
    pub fn as_biconditional(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => {
                let (a, b) = l.as_implication()?;
                let (b2, a2) = r.as_implication()?;
                (a == a2 && b == b2).then_some((a, b))
            }
            _ => None,
        }
    }

    /// Nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Kv(..) => 0,
            Formula::Not(f) | Formula::Inspect(_, f) => 1 + f.depth(),
            Formula::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

/// Agents occurring in `Kv` atoms of `f`.
pub fn agents_of(f: &Formula) -> BTreeSet<AgentId> {
    fn walk(f: &Formula, out: &mut BTreeSet<AgentId>) {
        match f {
            Formula::Top => {}
            Formula::Not(g) | Formula::Inspect(_, g) => walk(g, out),
            Formula::And(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Formula::Kv(i, _) => {
                out.insert(i.clone());
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut out);
    out
}

/// Constants occurring in `Kv` or inspection positions of `f`.
pub fn signature_of(f: &Formula) -> BTreeSet<ConstId> {
    fn walk(f: &Formula, out: &mut BTreeSet<ConstId>) {
        match f {
            Formula::Top => {}
            Formula::Not(g) => walk(g, out),
            Formula::Inspect(c, g) => {
                out.insert(c.clone());
                walk(g, out);
            }
            Formula::And(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            Formula::Kv(_, c) => {
                out.insert(c.clone());
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s, Mode::Multi).unwrap()
    }

    #[test]
    fn identifiers_are_validated() {
        assert!(ConstId::new("c").is_ok());
        assert!(ConstId::new("c_1x").is_ok());
        assert!(ConstId::new("1c").is_err());
        assert!(ConstId::new("").is_err());
        assert!(AgentId::new("1").is_ok());
        assert!(AgentId::new("alice_2").is_ok());
        assert!(AgentId::new("*").is_err());
        assert!(AgentId::single().is_single());
    }

    #[test]
    fn agents_read_off_the_ast() {
        let names = |f: &Formula| {
            agents_of(f)
                .into_iter()
                .map(|a| a.as_str().to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(&p("Kv_1(c) & [d]Kv_2(e)")), ["1", "2"]);
        assert!(names(&p("T")).is_empty());
        assert_eq!(names(&p("[c][d]Kv_1(e)")), ["1"]);
    }

    #[test]
    fn signature_read_off_the_ast() {
        let names = |f: &Formula| {
            signature_of(f)
                .into_iter()
                .map(|c| c.as_str().to_string())
                .collect::<Vec<_>>()
        };
        let single = |s: &str| parse_formula(s, Mode::Single).unwrap();
        assert_eq!(names(&single("[c]Kv(d)")), ["c", "d"]);
        assert!(names(&single("T")).is_empty());
        assert_eq!(names(&single("Kv({c,e};{f})")), ["c", "e", "f"]);
    }

    #[test]
    fn sugar_views() {
        let f = p("Kv_1(c) -> Kv_1(d)");
        let (a, b) = f.as_implication().unwrap();
        assert_eq!(a, &p("Kv_1(c)"));
        assert_eq!(b, &p("Kv_1(d)"));
        assert!(p("<c>T").as_diamond().is_some());
        let iff = Formula::iff(p("Kv_1(c)"), p("T"));
        assert_eq!(iff.as_biconditional(), Some((&p("Kv_1(c)"), &p("T"))));
        assert_eq!(p("[c]~Kv_1(d)").depth(), 2);
    }
}
