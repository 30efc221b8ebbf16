//! Exact verification of cancellative conjugation semigroups and monoids:
//! law checking over finite tables and exact rational carriers, Schreier
//! split extensions and external actions, crossed semimodules and their
//! internal categories, and admissibility of diagrams over pullbacks.

pub mod admissibility;
pub mod algebra;
pub mod builders;
pub mod carriers;
pub mod catalog;
pub mod internal;
pub mod schreier;

pub use algebra::{ConjStructure, Hom, Kind, Law, Outcome, Verdict, Witness};
pub use carriers::{Elem, EnumerationPlan, PlanError, Rational};
