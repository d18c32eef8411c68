//! Matrix families: the sharpness and failure constructions, the 3x3 Gram
//! family and its scan, and seeded random ensembles.

mod ensemble;
mod gram_family;
mod instances;

pub use ensemble::{
    random_sparse, sample_ensemble, sample_matrix, trial_rng, EnsembleKind, EnsembleSpec,
};
pub use gram_family::{
    family_gram, family_signal, gram_family_point, scan_gram_family, GramFamilyPoint, GramScan,
};
pub use instances::{counterexample_k2, sharp_projection_matrix, Counterexample};
