//! Named extensions and crossed data shared by the tests and the command line.

use crate::algebra::{ConjStructure, Hom, PairCarrier};
use crate::carriers::{Elem, EnumerationPlan, GaussianRational, RationalQuaternion};
use crate::catalog::{
    cyclic, max_chain, naturals, quaternion_group, scaled_unit_gaussians, scaled_unit_quaternions, trivial,
    unit_circle, unit_part, unit_quaternions, NatConj, NatOp,
};
use crate::internal::{CrossedData, InternalError};
use crate::schreier::{find_schreier_retraction, semidirect, ExternalAction, SchreierError, SchreierExtension};

/// `k`, `f`, `r` for `X → X×B ⇄ B` with the product projections.
pub fn direct_legs(x: &ConjStructure, b: &ConjStructure) -> (Hom, Hom, Hom) {
    let a = PairCarrier::direct(x, b).into_structure(format!("{}x{}", x.name(), b.name())).expect("pair carrier");
    let (zb, zx) = (b.zero(), x.zero());
    let k = Hom::new("k", x, &a, move |v| Elem::pair(v.clone(), zb.clone()));
    let f = Hom::new("f", &a, b, |p| p.snd().clone());
    let r = Hom::new("r", b, &a, move |v| Elem::pair(zx.clone(), v.clone()));
    (k, f, r)
}

pub fn direct_extension(
    x: &ConjStructure,
    b: &ConjStructure,
    plan: &EnumerationPlan,
) -> Result<SchreierExtension, SchreierError> {
    let (k, f, r) = direct_legs(x, b);
    find_schreier_retraction(&k, &f, &r, plan)
}

/// `ℤ₂` acting on `ℤ₃` by negation.
pub fn inversion_action() -> ExternalAction {
    ExternalAction::new(&cyclic(2), &cyclic(3), |b, x| {
        if b.as_idx() == Some(1) { Elem::Idx((3 - x.as_idx().expect("Z3 element")) % 3) } else { x.clone() }
    })
}

/// The finite extensions used for the Schreier and round-trip checks:
/// direct products over `ℤ₂`, `ℤ₃` and `Q8`, and `ℤ₃ ⋊ ℤ₂`.
pub fn finite_extensions(plan: &EnumerationPlan) -> Result<Vec<SchreierExtension>, SchreierError> {
    let (z2, z3, q8) = (cyclic(2), cyclic(3), quaternion_group());
    let mut out = vec![
        direct_extension(&z3, &z2, plan)?,
        direct_extension(&z2, &z3, plan)?,
        direct_extension(&z2, &q8, plan)?,
        direct_extension(&q8, &z2, plan)?,
        direct_extension(&z3, &z3, plan)?,
    ];
    out.push(semidirect(&inversion_action(), plan)?);
    Ok(out)
}

/// A split epimorphism of max-monoids that is not Schreier: `f` sends the
/// chain `0 < 1 < 2` onto `0 < 1` with `f(1) = 0` and `r(1) = 2`. Returns
/// `(k, f, r)`.
pub fn max_chain_split() -> (Hom, Hom, Hom) {
    let (a, b) = (max_chain(3), max_chain(2));
    let f = Hom::from_table("f", &a, &b, vec![Elem::Idx(0), Elem::Idx(0), Elem::Idx(1)]).expect("table");
    let r = Hom::from_table("r", &b, &a, vec![Elem::Idx(0), Elem::Idx(2)]).expect("table");
    let x = max_chain(2);
    let k = Hom::from_table("k", &x, &a, vec![Elem::Idx(0), Elem::Idx(1)]).expect("table");
    (k, f, r)
}

/// Unit quaternions acting on the scaled units by `b·x = b x b̄`.
pub fn quaternion_conjugation_action() -> ExternalAction {
    ExternalAction::new(&unit_quaternions(), &scaled_unit_quaternions(), |b, x| {
        let (b, x) = (quat(b), quat(x));
        Elem::Quat(&(b * x) * &b.conj())
    })
}

fn quat(x: &Elem) -> &RationalQuaternion {
    x.as_quat().unwrap_or_else(|| panic!("expected a quaternion, got {x}"))
}

fn gauss(x: &Elem) -> &GaussianRational {
    x.as_gauss().unwrap_or_else(|| panic!("expected a Gaussian rational, got {x}"))
}

/// Scaled unit quaternions over the unit quaternions, with `h(x) = x/‖x‖`:
/// a crossed semimodule whose kernel is not a group.
pub fn quaternion_disk(plan: &EnumerationPlan) -> Result<CrossedData, InternalError> {
    let e = semidirect(&quaternion_conjugation_action(), plan)?;
    let h = Hom::new("x/|x|", &e.x, &e.b, |x| Elem::Quat(unit_part(quat(x)).expect("rational norm")));
    CrossedData::new(e, h)
}

/// The complex version of [`quaternion_disk`]: the punctured rational disk
/// over the rational unit circle with trivial action. Arrows `(x, b)` are
/// arcs of radius `‖x‖` starting at `b`.
pub fn circle_arcs(plan: &EnumerationPlan) -> Result<CrossedData, InternalError> {
    let e = semidirect(&ExternalAction::trivial(&unit_circle(), &scaled_unit_gaussians()), plan)?;
    let h = Hom::new("x/|x|", &e.x, &e.b, |x| Elem::Gauss(unit_part(gauss(x)).expect("rational norm")));
    CrossedData::new(e, h)
}

/// `Q8` over the trivial monoid with `h = 0`.
pub fn q8_over_zero(plan: &EnumerationPlan) -> Result<CrossedData, InternalError> {
    let b = trivial();
    let e = semidirect(&ExternalAction::trivial(&b, &quaternion_group()), plan)?;
    let h = Hom::zero(&e.x, &e.b);
    CrossedData::new(e, h)
}

/// `X = B = ℤₙ`, trivial action, `h = 1`.
pub fn cyclic_identity(n: usize, plan: &EnumerationPlan) -> Result<CrossedData, InternalError> {
    let z = cyclic(n);
    let e = semidirect(&ExternalAction::trivial(&z, &z), plan)?;
    let h = Hom::new("id", &e.x, &e.b, |x| x.clone());
    CrossedData::new(e, h)
}

/// `X = B = ℕ` under addition, trivial action, `h = 1`.
pub fn naturals_identity(plan: &EnumerationPlan) -> Result<CrossedData, InternalError> {
    let n = naturals(NatOp::Add, NatConj::Identity);
    let e = semidirect(&ExternalAction::trivial(&n, &n), plan)?;
    let h = Hom::new("id", &e.x, &e.b, |x| x.clone());
    CrossedData::new(e, h)
}
