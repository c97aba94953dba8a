//! Decide satisfiability and entailment through dependency closure.

use pil::dependency::{attribute_closure, entails, satisfiable, Fd, FdSet, DEFAULT_GUARD};
use pil::semantics::ModelFile;
use pil::syntax::{parse_formula, translate, AgentId, ConstId, Mode};

fn main() -> Result<(), pil::Error> {
    let sig: Vec<ConstId> = ["c", "d", "e"].iter().map(|n| ConstId::new(n)).collect::<Result<_, _>>()?;
    let fds = FdSet::new(AgentId::single(), sig)
        .with(Fd::parse("c -> d").unwrap())?
        .with(Fd::parse("d -> e").unwrap())?;
    let start = [ConstId::new("c")?].into_iter().collect();
    let closure = attribute_closure(&fds, &start)?;
    println!("closure of {{c}}: {}", pil::canonical::state_name(&closure));

    for text in ["Kv(c;d) & Kv(d;e) & ~Kv(c;e)", "Kv(c;d) & ~Kv(c;e)"] {
        let nf = translate(&parse_formula(text, Mode::Single)?);
        match satisfiable(&nf, DEFAULT_GUARD)? {
            None => println!("{text}: unsat"),
            Some(pm) => println!("{text}: sat\n{}", ModelFile::from_pointed(&pm).to_json()),
        }
    }

    let premises = [parse_formula("Kv(c;d)", Mode::Single)?];
    for goal in ["Kv(c,e;d,e)", "Kv(d;c)", "[c]Kv(c)"] {
        let g = parse_formula(goal, Mode::Single)?;
        println!("Kv(c;d) entails {goal}: {}", entails(&premises, &g, DEFAULT_GUARD)?);
    }
    Ok(())
}
