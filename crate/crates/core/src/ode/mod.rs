//! The Painlevé-type profile equation p̈ = ṗ²/p - εA/p + εp³, its first
//! integral ṗ² = εp⁴ + Kp² + εA, and the catalog of twelve closed-form
//! profiles with residual verification and an errata variant scan.

mod painleve;
mod tables;

pub use painleve::{first_integral, integrate_p, profile_csv, OdeRun, PainleveParams, ProfileSample};
pub use tables::{
    all_table_entries, table_profile, table_verify, TableEntry, TableVerdict, VariantOutcome,
};
