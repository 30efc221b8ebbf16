//! Checkers for the conjugation-semigroup identities, cancellation, the Ore
//! condition and the identities derived from the axioms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::law::{check_all, Law};
use super::structure::{ConjStructure, InverseLookup};
use super::verdict::{Outcome, Verdict};
use crate::carriers::{Elem, EnumerationPlan, PlanError};

/// Extra random elements added to the Ore search space in sampled mode.
pub const ORE_SAMPLED_SEARCH: usize = 64;

fn eq_law(
    name: &str,
    s: &ConjStructure,
    vars: &[&str],
    lhs: impl Fn(&ConjStructure, &[Elem]) -> Elem + Send + Sync + 'static,
    rhs: impl Fn(&ConjStructure, &[Elem]) -> Elem + Send + Sync + 'static,
) -> Law {
    let bound: Vec<(&str, &ConjStructure)> = vars.iter().map(|v| (*v, s)).collect();
    let (s1, s2) = (s.clone(), s.clone());
    Law::equation(name, &bound, s, move |e| lhs(&s1, e), move |e| rhs(&s2, e))
}

/// Associativity, `x̄+x = x+x̄`, `x+ȳ+y = y+ȳ+x`, `conj(x+y) = ȳ+x̄`, and
/// for monoids the two identity laws.
pub fn conjugation_axiom_laws(s: &ConjStructure) -> Vec<Law> {
    let mut laws = vec![
        eq_law(
            "associativity",
            s,
            &["x", "y", "z"],
            |s, e| s.op(&s.op(&e[0], &e[1]), &e[2]),
            |s, e| s.op(&e[0], &s.op(&e[1], &e[2])),
        ),
        eq_law(
            "conj-commutes",
            s,
            &["x"],
            |s, e| s.op(&s.conj(&e[0]), &e[0]),
            |s, e| s.op(&e[0], &s.conj(&e[0])),
        ),
        eq_law(
            "conj-norm-central",
            s,
            &["x", "y"],
            |s, e| s.sum(&[&e[0], &s.conj(&e[1]), &e[1]]),
            |s, e| s.sum(&[&e[1], &s.conj(&e[1]), &e[0]]),
        ),
        eq_law(
            "conj-antihom",
            s,
            &["x", "y"],
            |s, e| s.conj(&s.op(&e[0], &e[1])),
            |s, e| s.op(&s.conj(&e[1]), &s.conj(&e[0])),
        ),
    ];
    if s.is_monoid() {
        laws.push(eq_law("left-identity", s, &["x"], |s, e| s.op(&s.zero(), &e[0]), |_, e| e[0].clone()));
        laws.push(eq_law("right-identity", s, &["x"], |s, e| s.op(&e[0], &s.zero()), |_, e| e[0].clone()));
    }
    laws
}

pub fn verify_conjugation_axioms(s: &ConjStructure, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let verdicts = check_all(&conjugation_axiom_laws(s), plan)?;
    Ok(Verdict::all(format!("{}: conjugation axioms", s.name()), &verdicts))
}

fn implication(
    name: &str,
    s: &ConjStructure,
    premise: impl Fn(&ConjStructure, &Elem, &Elem, &Elem) -> (Elem, Elem) + Send + Sync + 'static,
) -> Law {
    let st = s.clone();
    Law::new(name, &[("x", s), ("y", s), ("a", s)], move |e| {
        let (l, r) = premise(&st, &e[0], &e[1], &e[2]);
        if l != r || e[0] == e[1] {
            Ok(())
        } else {
            Err(format!("both sides equal {} but x ≠ y", st.show(&l)))
        }
    })
}

/// Right cancellation, left cancellation and the quasi-identity
/// `x+ā+a = y+ā+a ⇒ x = y`, in that order.
pub fn cancellation_laws(s: &ConjStructure) -> Vec<Law> {
    vec![
        implication("right-cancellation", s, |s, x, y, a| (s.op(x, a), s.op(y, a))),
        implication("left-cancellation", s, |s, x, y, a| (s.op(a, x), s.op(a, y))),
        implication("conj-cancellation", s, |s, x, y, a| {
            let t = s.op(&s.conj(a), a);
            (s.op(x, &t), s.op(y, &t))
        }),
    ]
}

pub fn verify_cancellation(s: &ConjStructure, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let verdicts = check_all(&cancellation_laws(s), plan)?;
    Ok(Verdict::all(format!("{}: cancellation", s.name()), &verdicts))
}

/// Elements searched for Ore witnesses: the plan's enumeration, or in
/// sampled mode the carrier's canonical elements plus seeded draws.
pub fn ore_search_space(s: &ConjStructure, plan: &EnumerationPlan) -> Result<Vec<Elem>, PlanError> {
    match *plan {
        EnumerationPlan::Exhaustive => {
            s.elements().map(|e| e.to_vec()).ok_or_else(|| PlanError::ExhaustiveOnInfinite(s.name().to_string()))
        }
        EnumerationPlan::BoundedWindow { size } => {
            s.window(size).ok_or_else(|| PlanError::NotEnumerable(s.name().to_string()))
        }
        EnumerationPlan::Sampled { seed, .. } => {
            if let Some(els) = s.elements() {
                return Ok(els.to_vec());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72_6500);
            let mut space = s.canonical();
            space.extend((0..ORE_SAMPLED_SEARCH).map(|_| s.sample(&mut rng)));
            Ok(space)
        }
    }
}

/// `∀ a b. ∃ s t. a+s = b+t`, searched first among `s=b̄+b, t=b̄+a`, then
/// `s=b, t=a`, then the whole search space.
pub fn ore_law(s: &ConjStructure, space: Vec<Elem>) -> Law {
    let st = s.clone();
    Law::new("ore", &[("a", s), ("b", s)], move |e| {
        let (a, b) = (&e[0], &e[1]);
        let bb = st.op(&st.conj(b), b);
        let ba = st.op(&st.conj(b), a);
        if st.op(a, &bb) == st.op(b, &ba) || st.op(a, b) == st.op(b, a) {
            return Ok(());
        }
        let right: std::collections::HashSet<Elem> = space.iter().map(|t| st.op(b, t)).collect();
        if space.iter().any(|x| right.contains(&st.op(a, x))) {
            return Ok(());
        }
        Err(format!("no s, t among {} candidates with a+s = b+t", space.len()))
    })
}

/// Ore is existential, so a failed search is reported as inconclusive.
pub fn verify_ore(s: &ConjStructure, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let law = ore_law(s, ore_search_space(s, plan)?);
    let mut v = law.check(plan)?;
    if let Outcome::Fails(w) = v.outcome {
        v.outcome = Outcome::Inconclusive(w);
    }
    Ok(v.renamed(format!("{}: ore", s.name())))
}

/// `conj(x+y)+(x+y) = ȳ+y+x+x̄`, `x+y+ȳ = ȳ+y+x`, and
/// `p(x,y,y) = p(y,y,x)` for `p(x,y,z) = x+ȳ+z`.
pub fn derived_identity_laws(s: &ConjStructure) -> Vec<Law> {
    vec![
        eq_law(
            "conj-sum-norm",
            s,
            &["x", "y"],
            |s, e| {
                let xy = s.op(&e[0], &e[1]);
                s.op(&s.conj(&xy), &xy)
            },
            |s, e| s.sum(&[&s.conj(&e[1]), &e[1], &e[0], &s.conj(&e[0])]),
        ),
        eq_law(
            "norm-commutes",
            s,
            &["x", "y"],
            |s, e| s.sum(&[&e[0], &e[1], &s.conj(&e[1])]),
            |s, e| s.sum(&[&s.conj(&e[1]), &e[1], &e[0]]),
        ),
        eq_law(
            "ternary-symmetry",
            s,
            &["x", "y"],
            |s, e| ternary(s, &e[0], &e[1], &e[1]),
            |s, e| ternary(s, &e[1], &e[1], &e[0]),
        ),
    ]
}

/// `p(x,y,z) = x+ȳ+z`.
pub fn ternary(s: &ConjStructure, x: &Elem, y: &Elem, z: &Elem) -> Elem {
    s.sum(&[x, &s.conj(y), z])
}

pub fn verify_derived_identities(s: &ConjStructure, plan: &EnumerationPlan) -> Result<Verdict, PlanError> {
    let verdicts = check_all(&derived_identity_laws(s), plan)?;
    Ok(Verdict::all(format!("{}: derived identities", s.name()), &verdicts))
}

/// Whether a finite table is a group table: every row and column is a
/// permutation. Finite cancellative semigroups are groups.
pub fn is_group_table(s: &ConjStructure) -> Option<bool> {
    Some(s.tabulate()?.is_latin_square())
}

/// Two-sided inverse of `x`, searching `space` when the carrier cannot
/// answer directly.
pub fn find_inverse(s: &ConjStructure, x: &Elem, space: &[Elem]) -> Option<Elem> {
    match s.inverse(x) {
        InverseLookup::Found(y) => Some(y),
        InverseLookup::Missing => None,
        InverseLookup::Unknown => {
            let zero = s.identity()?;
            space.iter().find(|y| s.op(x, y) == zero && s.op(y, x) == zero).cloned()
        }
    }
}
