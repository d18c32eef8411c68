//! Restricted isometry constants by exhaustive subset enumeration, recovery
//! thresholds, and bounds for column normalization.

mod bounds;
mod exact;
mod transfer;

pub use bounds::{bound_table, mols_threshold, BoundTable, MolsThreshold};
pub(crate) use exact::check_unit_columns;
pub use exact::{
    binomial, delta_monotone_check, exact_delta, projection_lower_bound, ProjectionBound,
    RipCertificate, Side,
};
pub use transfer::{normalize_columns, transfer_bound, TransferBound};
