//! The scalar-plus-vector construction `K × E` with
//! `(α,u)⊕(β,v) = (αβ − u·v, αv + βu + u×v)` and `conj(α,u) = (α,−u)`,
//! over `K = ℚ` and `E = ℚ^d` for `d ∈ {0, 1, 3}`.

use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::elem::Elem;
use super::plan::{tuple_rng, DEFAULT_SAMPLE_BOUND};
use super::rational::Rational;
use crate::algebra::structure::{ConjStructure, InverseLookup, Kind, Parametric, StructureError};

/// Samples used to spot-check the two bilinear compatibility identities.
pub const KE_COMPATIBILITY_SAMPLES: u64 = 1000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KePoint {
    pub alpha: Rational,
    pub u: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeVariant {
    /// All of `K × E`.
    Semigroup,
    /// Elements of nonzero norm `α² + u·u`, with identity `(1, 0)`.
    Monoid,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeError {
    #[error("unsupported vector dimension {0} (expected 0, 1 or 3)")]
    DimensionError(usize),
    #[error("compatibility identity `{identity}` fails at u={u:?}, v={v:?}, w={w:?}")]
    CompatibilityFailed { identity: &'static str, u: Vec<Rational>, v: Vec<Rational>, w: Vec<Rational> },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl KePoint {
    pub fn new(alpha: Rational, u: Vec<Rational>) -> Self {
        KePoint { alpha, u }
    }

    pub fn scalar(alpha: Rational, dim: usize) -> Self {
        KePoint { alpha, u: vec![Rational::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn conj(&self) -> Self {
        KePoint { alpha: self.alpha.clone(), u: self.u.iter().map(|c| -c).collect() }
    }

    /// `α² + u·u`.
    pub fn norm2(&self) -> Rational {
        self.alpha.square() + dot(&self.u, &self.u)
    }

    pub fn op(&self, other: &KePoint) -> KePoint {
        assert_eq!(self.dim(), other.dim(), "K×E points of different dimension");
        let alpha = &self.alpha * &other.alpha - dot(&self.u, &other.u);
        let cross = cross(&self.u, &other.u);
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .zip(cross)
            .map(|((a, b), c)| &self.alpha * b + &other.alpha * a + c)
            .collect();
        KePoint { alpha, u }
    }

    /// `conj(p) / ‖p‖²`, the two-sided inverse for nonzero norm.
    pub fn recip(&self) -> Option<KePoint> {
        let n = self.norm2().recip()?;
        let c = self.conj();
        Some(KePoint { alpha: &c.alpha * &n, u: c.u.iter().map(|x| x * &n).collect() })
    }
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// The standard cross product in dimension 3; zero in dimensions 0 and 1.
pub fn cross(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    match u.len() {
        3 => vec![
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ],
        n => vec![Rational::zero(); n],
    }
}

fn scale(u: &[Rational], s: &Rational) -> Vec<Rational> {
    u.iter().map(|x| x * s).collect()
}

fn sub(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

fn sample_vec(rng: &mut dyn RngCore, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| Rational::sample(rng, DEFAULT_SAMPLE_BOUND)).collect()
}

/// Spot-checks `u×(v×w) − u(v·w) = (u×v)×w − (u·v)w` and
/// `u·(v×w) = (u×v)·w` on seeded samples.
pub fn check_ke_compatibility(dim: usize, samples: u64) -> Result<(), KeError> {
    for index in 0..samples {
        let mut rng = tuple_rng(0x6b65, index);
        let (u, v, w) = (sample_vec(&mut rng, dim), sample_vec(&mut rng, dim), sample_vec(&mut rng, dim));
        let lhs = sub(&cross(&u, &cross(&v, &w)), &scale(&u, &dot(&v, &w)));
        let rhs = sub(&cross(&cross(&u, &v), &w), &scale(&w, &dot(&u, &v)));
        if lhs != rhs {
            return Err(KeError::CompatibilityFailed { identity: "vector-product-associator", u, v, w });
        }
        if dot(&u, &cross(&v, &w)) != dot(&cross(&u, &v), &w) {
            return Err(KeError::CompatibilityFailed { identity: "mixed-product", u, v, w });
        }
    }
    Ok(())
}

struct KeCarrier {
    dim: usize,
    variant: KeVariant,
}

impl KeCarrier {
    fn point<'a>(&self, x: &'a Elem) -> &'a KePoint {
        x.as_ke().unwrap_or_else(|| panic!("K×E carrier applied to {x}"))
    }

    fn unit(&self, axis: usize) -> KePoint {
        let mut u = vec![Rational::zero(); self.dim];
        u[axis] = Rational::one();
        KePoint::new(Rational::zero(), u)
    }
}

impl Parametric for KeCarrier {
    fn describe(&self) -> String {
        let which = match self.variant {
            KeVariant::Semigroup => "all points",
            KeVariant::Monoid => "nonzero-norm points",
        };
        format!("scalar-vector construction Q x Q^{}, {which}", self.dim)
    }

    fn op(&self, x: &Elem, y: &Elem) -> Elem {
        Elem::Ke(self.point(x).op(self.point(y)))
    }

    fn conj(&self, x: &Elem) -> Elem {
        Elem::Ke(self.point(x).conj())
    }

    fn identity(&self) -> Option<Elem> {
        match self.variant {
            KeVariant::Semigroup => None,
            KeVariant::Monoid => Some(Elem::Ke(KePoint::scalar(Rational::one(), self.dim))),
        }
    }

    fn contains(&self, x: &Elem) -> bool {
        match x.as_ke() {
            Some(p) if p.dim() == self.dim => match self.variant {
                KeVariant::Semigroup => true,
                KeVariant::Monoid => !p.norm2().is_zero(),
            },
            _ => false,
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        loop {
            let p = KePoint::new(Rational::sample(rng, DEFAULT_SAMPLE_BOUND), sample_vec(rng, self.dim));
            if self.variant == KeVariant::Semigroup || !p.norm2().is_zero() {
                return Elem::Ke(p);
            }
        }
    }

    fn canonical(&self) -> Vec<Elem> {
        let mut out = vec![KePoint::scalar(Rational::one(), self.dim), KePoint::scalar(Rational::new(1, 2), self.dim)];
        out.extend((0..self.dim).map(|axis| self.unit(axis)));
        out.into_iter().map(Elem::Ke).collect()
    }

    fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        let inv = self.point(by).recip()?;
        let x = Elem::Ke(self.point(target).op(&inv));
        Some(if self.contains(&x) { vec![x] } else { Vec::new() })
    }

    fn inverse(&self, x: &Elem) -> InverseLookup {
        match self.point(x).recip() {
            Some(p) if self.variant == KeVariant::Monoid => InverseLookup::Found(Elem::Ke(p)),
            Some(_) => InverseLookup::Missing,
            None => InverseLookup::Missing,
        }
    }
}

/// Builds `K × E` over the rationals in dimension 0, 1 or 3.
///
/// The compatibility identities are spot-checked on
/// [`KE_COMPATIBILITY_SAMPLES`] seeded samples before the structure is
/// returned.
pub fn ke_structure(dim: usize, variant: KeVariant) -> Result<ConjStructure, KeError> {
    if !matches!(dim, 0 | 1 | 3) {
        return Err(KeError::DimensionError(dim));
    }
    check_ke_compatibility(dim, KE_COMPATIBILITY_SAMPLES)?;
    let (name, kind) = match variant {
        KeVariant::Semigroup => (format!("KxE[{dim}]"), Kind::Semigroup),
        KeVariant::Monoid => (format!("KxE*[{dim}]"), Kind::Monoid),
    };
    Ok(ConjStructure::parametric(name, kind, KeCarrier { dim, variant })?)
}

impl fmt::Display for KePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.alpha)?;
        for (i, c) in self.u.iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for KePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::RationalQuaternion;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn pt(alpha: i64, u: &[i64]) -> KePoint {
        KePoint::new(r(alpha), u.iter().map(|&c| r(c)).collect())
    }

    #[test]
    fn unsupported_dimension_is_rejected() {
        assert!(matches!(ke_structure(2, KeVariant::Semigroup), Err(KeError::DimensionError(2))));
        assert!(matches!(ke_structure(4, KeVariant::Monoid), Err(KeError::DimensionError(4))));
    }

    #[test]
    fn dimension_zero_is_scalar_product() {
        let s = ke_structure(0, KeVariant::Semigroup).unwrap();
        let x = Elem::Ke(KePoint::new(Rational::new(2, 3), vec![]));
        let y = Elem::Ke(KePoint::new(Rational::new(-3, 5), vec![]));
        assert_eq!(s.op(&x, &y), Elem::Ke(KePoint::new(Rational::new(-2, 5), vec![])));
        assert_eq!(s.conj(&x), x);
    }

    #[test]
    fn dimension_three_reproduces_ij_equals_k() {
        assert_eq!(pt(0, &[1, 0, 0]).op(&pt(0, &[0, 1, 0])), pt(0, &[0, 0, 1]));
    }

    #[test]
    fn dimension_one_is_complex_multiplication() {
        // (a,u)⊕(b,v) = (ab − uv, av + bu)
        assert_eq!(pt(2, &[3]).op(&pt(5, &[7])), pt(2 * 5 - 3 * 7, &[2 * 7 + 5 * 3]));
    }

    #[test]
    fn monoid_variant_has_unit_identity() {
        let s = ke_structure(3, KeVariant::Monoid).unwrap();
        assert_eq!(s.zero(), Elem::Ke(pt(1, &[0, 0, 0])));
        assert!(!s.contains(&Elem::Ke(pt(0, &[0, 0, 0]))));
        assert!(s.contains(&Elem::Ke(pt(0, &[0, 1, 0]))));
    }

    fn arb_point() -> impl Strategy<Value = KePoint> {
        proptest::collection::vec((-20i64..=20, 1i64..=20), 4).prop_map(|cs| {
            let mut it = cs.into_iter().map(|(n, d)| Rational::new(n, d));
            let alpha = it.next().unwrap();
            KePoint::new(alpha, it.collect())
        })
    }

    fn to_quaternion(p: &KePoint) -> RationalQuaternion {
        RationalQuaternion::new(p.alpha.clone(), p.u[0].clone(), p.u[1].clone(), p.u[2].clone())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn dimension_three_is_quaternion_multiplication(p in arb_point(), q in arb_point()) {
            prop_assert_eq!(to_quaternion(&p.op(&q)), &to_quaternion(&p) * &to_quaternion(&q));
        }
    }
}
