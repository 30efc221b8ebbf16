//! Exact element domains and enumeration plans. Nothing here uses floating
//! point.

pub mod elem;
pub mod gaussian;
pub mod ke;
pub mod plan;
pub mod quaternion;
pub mod rational;

use std::fmt;

pub use elem::Elem;
pub use gaussian::{unit_circle_point, GaussianRational};
pub use ke::{ke_structure, KeError, KePoint, KeVariant};
pub use plan::{EnumerationPlan, PlanError, DEFAULT_SAMPLE_BOUND};
pub use quaternion::{hurwitz_units, RationalQuaternion};
pub use rational::Rational;

/// Writes `c₀ + c₁u₁ + …` skipping zero coefficients.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&Rational, &str)]) -> fmt::Result {
    let mut wrote = false;
    for (coef, unit) in terms {
        if coef.is_zero() {
            continue;
        }
        let negative = coef.is_negative();
        let magnitude = coef.abs();
        if negative {
            f.write_str("-")?;
        } else if wrote {
            f.write_str("+")?;
        }
        if unit.is_empty() || !magnitude.is_one() {
            write!(f, "{magnitude}")?;
        }
        f.write_str(unit)?;
        wrote = true;
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}
