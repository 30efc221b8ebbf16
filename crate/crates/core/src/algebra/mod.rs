//! Conjugation structures, homomorphisms, laws and their verdicts.

pub mod axioms;
pub mod extend;
pub mod hom;
pub mod law;
pub mod pair;
pub mod structure;
pub mod verdict;

pub use axioms::{
    cancellation_laws, conjugation_axiom_laws, derived_identity_laws, find_inverse, is_group_table, ternary,
    verify_cancellation, verify_conjugation_axioms, verify_derived_identities, verify_ore,
};
pub use extend::{all_homs, extend_from_forced, generators, ExtendError, Extension, DEFAULT_EXTENSION_BOUND};
pub use hom::{verify_hom, Hom, HomError};
pub use law::{check_all, Law, ReplayError};
pub use pair::{PairCarrier, SubCarrier};
pub use structure::{Carrier, ConjStructure, FiniteTable, InverseLookup, Kind, Parametric, StructureError};
pub use verdict::{Outcome, Verdict, Witness};
