//! Rewrite formulas into Boolean combinations of dependency atoms.

use pil::syntax::{parse_formula, print_formula, translate, Mode};

fn main() -> Result<(), pil::Error> {
    let single = [
        "[c]Kv(d)",
        "[c][d]Kv(e)",
        "[c](Kv(d) & ~Kv(e))",
        "[c]~[d]Kv(e)",
        "<c>Kv(d) -> Kv(c;d,e)",
    ];
    for text in single {
        let f = parse_formula(text, Mode::Single)?;
        println!("{text:<28} => {}", translate(&f));
    }
    let f = parse_formula("[c](Kv_1(d) & [e]Kv_2(d))", Mode::Multi)?;
    println!("printed back: {}", print_formula(&f));
    println!("{:<28} => {}", print_formula(&f), translate(&f));
    Ok(())
}
