//! Public inspection logic: formulas about knowing the value of constants,
//! public inspection updates, dependency reasoning, bisimulation and proof
//! checking.
//!
//! ```
//! use pil::semantics::{eval, Model, PointedModel};
//! use pil::syntax::{parse_formula, Mode};
//!
//! let m = Model::builder()
//!     .constants(["c", "d"])
//!     .row("s", ["1", "1"])
//!     .row("t", ["2", "1"])
//!     .row("u", ["2", "3"])
//!     .build()
//!     .unwrap();
//! let pm = PointedModel::new(m, "t").unwrap();
//! let f = parse_formula("~Kv(d) & [c]Kv(d)", Mode::Single).unwrap();
//! assert!(!eval(&pm, &f).unwrap());
//! ```

pub mod bisim;
pub mod canonical;
pub mod cli;
pub mod dependency;
pub mod proofcheck;
pub mod semantics;
pub mod syntax;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] syntax::SyntaxError),
    #[error(transparent)]
    Model(#[from] semantics::ModelError),
    #[error(transparent)]
    Dependency(#[from] dependency::DependencyError),
    #[error(transparent)]
    Canonical(#[from] canonical::CanonicalError),
    #[error(transparent)]
    Bisim(#[from] bisim::BisimError),
    #[error(transparent)]
    ProofFile(#[from] proofcheck::ProofFileError),
}
