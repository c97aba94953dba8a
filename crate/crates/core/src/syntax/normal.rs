use std::collections::BTreeSet;
use std::fmt;

use super::{AgentId, ConstId, Formula};

/// Dependency atom `Kv_i(C;D)`: after inspecting every constant in `lhs`,
/// agent `i` knows the value of every constant in `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DepAtom {
    pub agent: AgentId,
    pub lhs: BTreeSet<ConstId>,
    pub rhs: BTreeSet<ConstId>,
}

impl DepAtom {
    pub fn new(
        agent: AgentId,
        lhs: impl IntoIterator<Item = ConstId>,
        rhs: impl IntoIterator<Item = ConstId>,
    ) -> Self {
        DepAtom {
            agent,
            lhs: lhs.into_iter().collect(),
            rhs: rhs.into_iter().collect(),
        }
    }

    /// `[C]Kv_i(D)`; an empty `rhs` yields `[C]T`.
    pub fn to_formula(&self) -> Formula {
        Formula::dependency(&self.agent, &self.lhs, &self.rhs)
    }
}

fn write_set(set: &BTreeSet<ConstId>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("{")?;
    for (k, c) in set.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        f.write_str(c.as_str())?;
    }
    f.write_str("}")
}

impl fmt::Display for DepAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Kv")?;
        if !self.agent.is_single() {
            write!(f, "_{}", self.agent)?;
        }
        f.write_str("(")?;
        write_set(&self.lhs, f)?;
        f.write_str(";")?;
        write_set(&self.rhs, f)?;
        f.write_str(")")
    }
}

/// Boolean combination of dependency atoms; no inspection occurs outside
/// an atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalFormula {
    Top,
    Not(Box<NormalFormula>),
    And(Box<NormalFormula>, Box<NormalFormula>),
    Dep(DepAtom),
}

impl NormalFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: NormalFormula) -> Self {
        NormalFormula::Not(Box::new(f))
    }

    pub fn and(a: NormalFormula, b: NormalFormula) -> Self {
        NormalFormula::And(Box::new(a), Box::new(b))
    }

    /// Reads the normal form back as an ordinary formula.
    pub fn to_formula(&self) -> Formula {
        match self {
            NormalFormula::Top => Formula::Top,
            NormalFormula::Not(f) => Formula::not(f.to_formula()),
            NormalFormula::And(a, b) => Formula::and(a.to_formula(), b.to_formula()),
            NormalFormula::Dep(atom) => atom.to_formula(),
        }
    }

    /// Atoms in left-to-right textual order, with repetitions.
    pub fn atoms(&self) -> Vec<&DepAtom> {
        fn walk<'a>(f: &'a NormalFormula, out: &mut Vec<&'a DepAtom>) {
            match f {
                NormalFormula::Top => {}
                NormalFormula::Not(g) => walk(g, out),
                NormalFormula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                NormalFormula::Dep(atom) => out.push(atom),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn signature(&self) -> BTreeSet<ConstId> {
        self.atoms()
            .into_iter()
            .flat_map(|a| a.lhs.iter().chain(a.rhs.iter()).cloned())
            .collect()
    }

    pub fn agents(&self) -> BTreeSet<AgentId> {
        self.atoms().into_iter().map(|a| a.agent.clone()).collect()
    }
}

impl fmt::Display for NormalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(nf: &NormalFormula, under_not: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match nf {
                NormalFormula::Top => f.write_str("T"),
                NormalFormula::Dep(atom) => write!(f, "{atom}"),
                NormalFormula::Not(g) => {
                    f.write_str("~")?;
                    go(g, true, f)
                }
                NormalFormula::And(a, b) => {
                    if under_not {
                        f.write_str("(")?;
                    }
                    go(a, false, f)?;
                    f.write_str(" & ")?;
                    // `&` is left-associative, so a right conjunct needs parens.
                    go(b, true, f)?;
                    if under_not {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, false, f)
    }
}

/// Pushes every inspection operator down to the knowing-value atoms.
///
/// `[c]~φ` becomes `~t([c]φ)`, `[c](φ & ψ)` becomes `t([c]φ) & t([c]ψ)`,
/// `[c]T` becomes `T`, and `[c1]...[cn]Kv_i(d)` becomes `Kv_i({c1..cn};{d})`.
pub fn translate(f: &Formula) -> NormalFormula {
    fn push(prefix: &mut Vec<ConstId>, f: &Formula) -> NormalFormula {
        match f {
            Formula::Top => NormalFormula::Top,
            Formula::Not(g) => NormalFormula::not(push(prefix, g)),
            Formula::And(a, b) => NormalFormula::and(push(prefix, a), push(prefix, b)),
            Formula::Kv(i, d) => NormalFormula::Dep(DepAtom {
                agent: i.clone(),
                lhs: prefix.iter().cloned().collect(),
                rhs: BTreeSet::from([d.clone()]),
            }),
            Formula::Inspect(c, g) => {
                prefix.push(c.clone());
                let out = push(prefix, g);
                prefix.pop();
                out
            }
        }
    }
    push(&mut Vec::new(), f)
}
