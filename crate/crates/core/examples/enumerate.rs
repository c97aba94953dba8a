//! Sweep small models: count them and look for a countermodel to IR with
//! two agents.

use std::collections::HashSet;

use pil::semantics::{canonical_key, enumerate_models_up_to, eval, pointed, Bounds, ModelFile};
use pil::syntax::{parse_formula, Mode};

fn main() -> Result<(), pil::Error> {
    let ir = parse_formula("Kv_1(c) -> ([c]Kv_2(d) -> Kv_2(d))", Mode::Multi)?;
    let mut seen = HashSet::new();
    let mut total = 0;
    let mut counter = None;
    for pm in enumerate_models_up_to(Bounds::new(3, 2, 2, 2)).flat_map(pointed) {
        total += 1;
        if !seen.insert(canonical_key(&pm)) {
            continue;
        }
        let m = pm.model();
        if counter.is_none() && m.agents().len() == 2 && m.signature().len() == 2 && !eval(&pm, &ir)? {
            counter = Some(pm);
        }
    }
    println!("{total} pointed models, {} up to isomorphism", seen.len());
    if let Some(pm) = counter {
        println!("IR fails here:\n{}", ModelFile::from_pointed(&pm).to_json());
    }
    Ok(())
}
