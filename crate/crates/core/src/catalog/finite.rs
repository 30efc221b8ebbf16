//! Small finite structures given by Cayley tables.

use crate::algebra::{ConjStructure, FiniteTable, Kind, PairCarrier};
use crate::carriers::{hurwitz_units, Rational, RationalQuaternion};

/// Which conjugation to put on an abelian table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelianConj {
    /// `x̄ = −x`
    Negation,
    /// `x̄ = 0`
    Zero,
    /// `x̄ = x`
    Identity,
}

fn must(t: Result<FiniteTable, crate::algebra::StructureError>) -> FiniteTable {
    t.expect("built-in table is well formed")
}

/// The cyclic group `ℤₙ` with `x̄ = −x`, elements named `0..n-1`.
pub fn cyclic(n: usize) -> ConjStructure {
    cyclic_with(n, AbelianConj::Negation)
}

pub fn cyclic_with(n: usize, conj: AbelianConj) -> ConjStructure {
    assert!(n > 0, "cyclic group of order 0");
    let names = (0..n).map(|i| i.to_string()).collect();
    let table = must(FiniteTable::from_fn(
        names,
        |i, j| (i + j) % n,
        |i| match conj {
            AbelianConj::Negation => (n - i) % n,
            AbelianConj::Zero => 0,
            AbelianConj::Identity => i,
        },
        Some(0),
    ));
    let name = match conj {
        AbelianConj::Negation => format!("Z{n}"),
        AbelianConj::Zero => format!("Z{n}[conj=0]"),
        AbelianConj::Identity => format!("Z{n}[conj=id]"),
    };
    ConjStructure::from_table(name, Kind::Monoid, table).expect("cyclic group")
}

/// The one-element group.
pub fn trivial() -> ConjStructure {
    let table = must(FiniteTable::new(vec!["0".into()], vec![vec![0]], vec![0], Some(0)));
    ConjStructure::from_table("0", Kind::Monoid, table).expect("trivial group")
}

/// Re-presents a finite structure as a plain table, keeping element names.
pub fn as_table(s: &ConjStructure, name: impl Into<String>) -> ConjStructure {
    let table = s.tabulate().expect("finite structure");
    ConjStructure::from_table(name, s.kind(), table).expect("tabulated structure")
}

/// `a × b` with the componentwise structure, as a table.
pub fn direct_product(a: &ConjStructure, b: &ConjStructure) -> ConjStructure {
    let name = format!("{}x{}", a.name(), b.name());
    let pair = PairCarrier::direct(a, b).into_structure(name.clone()).expect("product of structures");
    as_table(&pair, name)
}

/// The Klein four-group `ℤ₂ × ℤ₂`.
pub fn klein() -> ConjStructure {
    direct_product(&cyclic(2), &cyclic(2))
}

/// The symmetric group on three letters with `x̄ = x⁻¹`. Products compose
/// right to left: `(στ)(i) = σ(τ(i))`.
pub fn symmetric3() -> ConjStructure {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
    let pos = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let compose = |i: usize, j: usize| {
        let (s, t) = (perms[i], perms[j]);
        pos([s[t[0]], s[t[1]], s[t[2]]])
    };
    let inverse = |i: usize| {
        let p = perms[i];
        let mut inv = [0; 3];
        for (k, &v) in p.iter().enumerate() {
            inv[v] = k;
        }
        pos(inv)
    };
    let table = must(FiniteTable::from_fn(names.iter().map(|s| s.to_string()).collect(), compose, inverse, Some(0)));
    ConjStructure::from_table("S3", Kind::Monoid, table).expect("S3")
}

/// A finite multiplicative group of rational quaternions, with the
/// quaternion conjugate as conjugation. `units` must start with `1` and be
/// closed under products.
pub fn quaternion_table(name: &str, units: &[RationalQuaternion], names: Vec<String>) -> ConjStructure {
    let pos = |q: &RationalQuaternion| units.iter().position(|u| u == q).expect("closed under product");
    let table = must(FiniteTable::from_fn(
        names,
        |i, j| pos(&(&units[i] * &units[j])),
        |i| pos(&units[i].conj()),
        Some(0),
    ));
    ConjStructure::from_table(name, Kind::Monoid, table).expect("quaternion group")
}

fn q8_units() -> (Vec<RationalQuaternion>, Vec<String>) {
    let units = vec![
        RationalQuaternion::one(),
        RationalQuaternion::from_ints(-1, 0, 0, 0),
        RationalQuaternion::i(),
        -&RationalQuaternion::i(),
        RationalQuaternion::j(),
        -&RationalQuaternion::j(),
        RationalQuaternion::k(),
        -&RationalQuaternion::k(),
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    (units, names)
}

/// The quaternion group `Q8 = {±1, ±i, ±j, ±k}` with `x̄ = x⁻¹`.
pub fn quaternion_group() -> ConjStructure {
    let (units, names) = q8_units();
    quaternion_table("Q8", &units, names)
}

/// `Q8` with the identity map as conjugation, which violates the axioms.
pub fn quaternion_group_identity_conj() -> ConjStructure {
    let (units, names) = q8_units();
    let pos = |q: &RationalQuaternion| units.iter().position(|u| u == q).expect("closed");
    let table = must(FiniteTable::from_fn(names, |i, j| pos(&(&units[i] * &units[j])), |i| i, Some(0)));
    ConjStructure::from_table("Q8[conj=id]", Kind::Monoid, table).expect("Q8 table")
}

/// The 24 Hurwitz units under multiplication with `q̄ = q⁻¹`.
pub fn hurwitz_group() -> ConjStructure {
    let units = hurwitz_units();
    let names = units.iter().map(|u| u.to_string()).collect();
    quaternion_table("Hurwitz", &units, names)
}

/// The chain `{0, …, n−1}` under `max` with `x̄ = x`: a commutative monoid
/// that is not cancellative.
pub fn max_chain(n: usize) -> ConjStructure {
    let names = (0..n).map(|i| i.to_string()).collect();
    let table = must(FiniteTable::from_fn(names, |i, j| i.max(j), |i| i, Some(0)));
    ConjStructure::from_table(format!("Max{n}"), Kind::Monoid, table).expect("max chain")
}

/// A rational quaternion with small integer coordinates over `den`.
pub fn quat(a: i64, b: i64, c: i64, d: i64, den: i64) -> RationalQuaternion {
    RationalQuaternion::from_ints(a, b, c, d).scale(&Rational::new(1, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_conjugation_axioms;
    use crate::carriers::Elem;
    use crate::carriers::EnumerationPlan;

    #[test]
    fn tables_are_groups_of_expected_size() {
        for (s, n) in [(cyclic(4), 4), (klein(), 4), (symmetric3(), 6), (quaternion_group(), 8), (hurwitz_group(), 24)] {
            assert_eq!(s.size(), Some(n), "{}", s.name());
            assert!(s.tabulate().unwrap().is_latin_square(), "{}", s.name());
            assert!(verify_conjugation_axioms(&s, &EnumerationPlan::Exhaustive).unwrap().holds(), "{}", s.name());
        }
    }

    #[test]
    fn q8_multiplication() {
        let q = quaternion_group();
        let (i, j, k, mk) = (q.parse("i").unwrap(), q.parse("j").unwrap(), q.parse("k").unwrap(), q.parse("-k").unwrap());
        assert_eq!(q.op(&i, &j), k);
        assert_eq!(q.op(&j, &i), mk);
    }

    #[test]
    fn s3_is_nonabelian() {
        let s = symmetric3();
        let (a, b) = (s.parse("(12)").unwrap(), s.parse("(23)").unwrap());
        assert_ne!(s.op(&a, &b), s.op(&b, &a));
        assert_eq!(s.op(&a, &a), Elem::Idx(0));
        assert_eq!(s.conj(&s.parse("(123)").unwrap()), s.parse("(132)").unwrap());
    }
}
