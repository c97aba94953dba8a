//! Models, truth and the inspection update.

mod enumerate;
mod eval;
mod file;
mod model;

pub use enumerate::{
    canonical_key, enumerate_models, enumerate_models_up_to, pointed, set_partitions,
    standard_agents, standard_constants, Bounds, CanonicalKey, ModelEnumerator,
};
pub use eval::{eval, eval_normal, globally_true, inspect_update, satisfies_dep};
pub use file::ModelFile;
pub use model::{AgreeSet, Model, ModelBuilder, ModelError, PointedModel};
