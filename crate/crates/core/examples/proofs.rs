//! Check the shipped derivations and a hand-built proof.

use pil::proofcheck::{builtin_derivations, check_proof, mutation_corpus, ProofBuilder, ProofFile, Rule};
use pil::syntax::{parse_formula, Mode};

fn main() -> Result<(), pil::Error> {
    for (name, proof) in builtin_derivations() {
        println!("{name:<24} {:>3} lines  {}", proof.lines.len(), check_proof(&proof));
    }
    let rejected = mutation_corpus()
        .iter()
        .filter(|(_, p)| !check_proof(p).is_accepted())
        .count();
    println!("mutations rejected: {rejected}/{}", mutation_corpus().len());

    let mut b = ProofBuilder::new(Mode::Single);
    let nf = b.axiom(parse_formula("Kv(c) -> [d]Kv(c)", Mode::Single)?, Rule::Nf);
    let kv = b.premise(parse_formula("Kv(c)", Mode::Single)?);
    b.mp(kv, nf);
    let proof = b.finish();
    println!("{}", check_proof(&proof));
    println!("{}", ProofFile::from_proof(&proof).to_json());
    Ok(())
}
