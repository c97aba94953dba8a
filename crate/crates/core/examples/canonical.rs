//! Build canonical models from dependency sets.

use pil::canonical::{canonical_model, closed_sets, state_name, DepsFile};
use pil::semantics::ModelFile;

const SINGLE: &str = r#"{
  "constants": ["c", "d", "e"],
  "dependencies": [
    {"lhs": ["c"], "rhs": ["d"]},
    {"lhs": ["d"], "rhs": ["e"]},
    {"lhs": [], "rhs": ["e"]}
  ]
}"#;

const MULTI: &str = r#"{
  "constants": ["c", "d"],
  "agents": ["1", "2"],
  "dependencies": [
    {"agent": "1", "lhs": ["c"], "rhs": ["d"]},
    {"agent": "2", "lhs": ["d"], "rhs": ["c"]}
  ]
}"#;

fn main() -> Result<(), pil::Error> {
    let spec = DepsFile::parse(SINGLE)?.to_spec()?;
    let fds = spec.per_agent.values().next().unwrap();
    for s in closed_sets(fds) {
        println!("closed: {}", state_name(&s));
    }
    let pm = canonical_model(&spec)?;
    println!("{}", ModelFile::from_pointed(&pm).to_json());

    let pm = canonical_model(&DepsFile::parse(MULTI)?.to_spec()?)?;
    for a in pm.model().agents() {
        println!("agent {a}: {:?}", pm.model().partition(a).unwrap());
    }
    Ok(())
}
