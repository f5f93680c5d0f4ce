//! Circle-valued Morse models: reglued chain complexes, induced maps on
//! critical points, and the zeta-function comparison of their torsions.

mod model;
mod models;
mod novikov;
mod verify;

pub use model::{assemble_differential, CircleMorseModel};
pub use models::{
    cat_map_model, circle_model, degenerate_circle_bundle_model, random_paired_model,
    stabilize, suspension_model,
};
pub use novikov::{
    factorization_check, novikov_torsion, novikov_K, FactorizationReport, NovikovComplexData,
};
pub use verify::{verify_main_theorem, MainTheoremReport};
