//! Compare pointed models by bisimulation and by logical equivalence.

use pil::bisim::{
    bisimilar_multi, bisimilar_pointwise, bisimilar_single, difference_pattern,
    logically_equivalent,
};
use pil::semantics::{Model, PointedModel};

fn main() -> Result<(), pil::Error> {
    let three = Model::builder()
        .constants(["c", "d"])
        .row("s", ["0", "0"])
        .row("t", ["0", "1"])
        .row("u", ["1", "1"])
        .build()?;
    let two = Model::builder()
        .constants(["c", "d"])
        .row("x", ["5", "5"])
        .row("y", ["5", "6"])
        .row("z", ["6", "6"])
        .row("w", ["6", "6"])
        .build()?;
    let a = PointedModel::new(three, "s")?;
    let b = PointedModel::new(two, "x")?;
    println!("pattern at s: {:?}", difference_pattern(&a)?);
    println!("single-agent bisimilar: {}", bisimilar_single(&a, &b)?);

    let wide = Model::builder()
        .constants(["c"])
        .agents(["1", "2"])
        .row("s", ["0"])
        .row("t", ["1"])
        .row("u", ["0"])
        .partition("1", [vec!["s", "t"], vec!["u"]])
        .partition("2", [vec!["s"], vec!["t", "u"]])
        .build()?;
    let narrow = Model::builder()
        .constants(["c"])
        .agents(["1", "2"])
        .row("s", ["0"])
        .row("t", ["1"])
        .partition("1", [vec!["s", "t"]])
        .partition("2", [vec!["s"], vec!["t"]])
        .build()?;
    let (a, b) = (PointedModel::new(wide, "s")?, PointedModel::new(narrow, "s")?);
    println!("logically equivalent: {}", logically_equivalent(&a, &b));
    println!("relational bisimulation: {:?}", bisimilar_multi(&a, &b)?);
    println!("pointwise bisimilar: {}", bisimilar_pointwise(&a, &b)?);
    Ok(())
}
