//! Evaluate formulas on a four-state model and apply a public inspection.

use pil::semantics::{eval, globally_true, inspect_update, Model, PointedModel};
use pil::syntax::{parse_formula, ConstId, Mode};

fn main() -> Result<(), pil::Error> {
    let model = Model::builder()
        .constants(["c", "d", "e"])
        .row("r1", ["1", "1", "3"])
        .row("r2", ["1", "1", "2"])
        .row("r3", ["2", "2", "1"])
        .row("r4", ["2", "3", "1"])
        .build()?;
    let pm = PointedModel::new(model.clone(), "r1")?;

    for text in ["[c]Kv(d)", "[c]Kv(e)", "[c](Kv(d) | Kv(e))", "<c>T"] {
        let f = parse_formula(text, Mode::Single)?;
        println!(
            "{text:<20} at r1: {:<5}  everywhere: {}",
            eval(&pm, &f)?,
            globally_true(&model, &f)?
        );
    }

    let after = inspect_update(&pm, &ConstId::new("c")?)?;
    println!("after inspecting c: {:?}", after.model().states());
    Ok(())
}
