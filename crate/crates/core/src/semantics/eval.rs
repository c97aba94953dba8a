use crate::syntax::{ConstId, DepAtom, Formula, NormalFormula};

use super::{Model, ModelError, PointedModel};

/// Formula with constants and agents resolved to model indices.
enum Resolved {
    Top,
    Not(Box<Resolved>),
    And(Box<Resolved>, Box<Resolved>),
    Kv(usize, usize),
    Inspect(usize, Box<Resolved>),
}

fn const_ix(model: &Model, c: &ConstId) -> Result<usize, ModelError> {
    model
        .const_index(c)
        .ok_or_else(|| ModelError::UndeclaredConst(c.to_string()))
}

fn resolve(model: &Model, f: &Formula) -> Result<Resolved, ModelError> {
    Ok(match f {
        Formula::Top => Resolved::Top,
        Formula::Not(g) => Resolved::Not(Box::new(resolve(model, g)?)),
        Formula::And(a, b) => {
            Resolved::And(Box::new(resolve(model, a)?), Box::new(resolve(model, b)?))
        }
        Formula::Kv(i, c) => {
            let a = model
                .agent_index(i)
                .ok_or_else(|| ModelError::UndeclaredAgent(i.to_string()))?;
            Resolved::Kv(a, const_ix(model, c)?)
        }
        Formula::Inspect(c, g) => Resolved::Inspect(const_ix(model, c)?, Box::new(resolve(model, g)?)),
    })
}

/// Truth at `s` in the submodel of states listed in `alive`.
fn holds(model: &Model, alive: &[usize], s: usize, f: &Resolved) -> bool {
    match f {
        Resolved::Top => true,
        Resolved::Not(g) => !holds(model, alive, s, g),
        Resolved::And(a, b) => holds(model, alive, s, a) && holds(model, alive, s, b),
        Resolved::Kv(a, c) => alive
            .iter()
            .all(|&t| !model.related(*a, s, t) || model.agrees_on(s, t, *c)),
        Resolved::Inspect(c, g) => {
            let kept: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&t| model.agrees_on(s, t, *c))
                .collect();
            holds(model, &kept, s, g)
        }
    }
}

/// Truth of `f` at the actual state.
///
/// `[c]φ` is evaluated on the submodel of states that agree with the actual
/// state on `c`; states are never copied, only filtered.
pub fn eval(pm: &PointedModel, f: &Formula) -> Result<bool, ModelError> {
    let model = pm.model();
    let resolved = resolve(model, f)?;
    let all: Vec<usize> = (0..model.num_states()).collect();
    Ok(holds(model, &all, pm.actual(), &resolved))
}

/// Truth of `f` at every state of `m`.
pub fn globally_true(m: &Model, f: &Formula) -> Result<bool, ModelError> {
    let resolved = resolve(m, f)?;
    let all: Vec<usize> = (0..m.num_states()).collect();
    Ok((0..m.num_states()).all(|s| holds(m, &all, s, &resolved)))
}

/// The public inspection of `c` at the actual state: keeps the states that
/// agree with the actual state on `c`.
pub fn inspect_update(pm: &PointedModel, c: &ConstId) -> Result<PointedModel, ModelError> {
    let model = pm.model();
    let ci = const_ix(model, c)?;
    let s = pm.actual();
    let keep: Vec<usize> = (0..model.num_states())
        .filter(|&t| model.agrees_on(s, t, ci))
        .collect();
    let actual = keep.iter().position(|&t| t == s).expect("actual agrees with itself");
    Ok(PointedModel::at(model.restrict(&keep), actual))
}

/// Direct truth condition of a dependency atom: for every `t` with
/// `s ~i t` and `s =_C t`, also `s =_D t`.
pub fn satisfies_dep(pm: &PointedModel, atom: &DepAtom) -> Result<bool, ModelError> {
    let model = pm.model();
    let a = model
        .agent_index(&atom.agent)
        .ok_or_else(|| ModelError::UndeclaredAgent(atom.agent.to_string()))?;
    let lhs = atom
        .lhs
        .iter()
        .map(|c| const_ix(model, c))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs = atom
        .rhs
        .iter()
        .map(|c| const_ix(model, c))
        .collect::<Result<Vec<_>, _>>()?;
    let s = pm.actual();
    Ok((0..model.num_states()).all(|t| {
        !model.related(a, s, t)
            || !lhs.iter().all(|&c| model.agrees_on(s, t, c))
            || rhs.iter().all(|&d| model.agrees_on(s, t, d))
    }))
}

/// Truth of a normal form at the actual state, atoms checked directly.
pub fn eval_normal(pm: &PointedModel, nf: &NormalFormula) -> Result<bool, ModelError> {
    Ok(match nf {
        NormalFormula::Top => true,
        NormalFormula::Not(g) => !eval_normal(pm, g)?,
        NormalFormula::And(a, b) => eval_normal(pm, a)? && eval_normal(pm, b)?,
        NormalFormula::Dep(atom) => satisfies_dep(pm, atom)?,
    })
}
