//! Quaternions with rational coefficients.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// `a + b·i + c·j + d·k` with `i² = j² = k² = ijk = -1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalQuaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl RationalQuaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        RationalQuaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        RationalQuaternion::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn real(a: Rational) -> Self {
        RationalQuaternion::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        RationalQuaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        RationalQuaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        RationalQuaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        RationalQuaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        RationalQuaternion::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        RationalQuaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    /// `a² + b² + c² + d²`.
    pub fn norm2(&self) -> Rational {
        self.a.square() + self.b.square() + self.c.square() + self.d.square()
    }

    /// `‖q‖` when it is rational.
    pub fn norm_exact(&self) -> Option<Rational> {
        self.norm2().sqrt_exact()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalQuaternion::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// `q̄ / ‖q‖²`.
    pub fn recip(&self) -> Option<Self> {
        let n = self.norm2().recip()?;
        Some(self.conj().scale(&n))
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// The 24 Hurwitz units, computed as the multiplicative closure of
/// `{±1, ±i, ±j, ±k, (±1±i±j±k)/2}`, in discovery order starting at `1`.
pub fn hurwitz_units() -> Vec<RationalQuaternion> {
    let half = Rational::new(1, 2);
    let mut gens = Vec::new();
    for s in [1, -1] {
        gens.push(RationalQuaternion::from_ints(s, 0, 0, 0));
        gens.push(RationalQuaternion::from_ints(0, s, 0, 0));
        gens.push(RationalQuaternion::from_ints(0, 0, s, 0));
        gens.push(RationalQuaternion::from_ints(0, 0, 0, s));
    }
    for mask in 0..16u8 {
        let sign = |bit: u8| if mask & (1 << bit) == 0 { 1 } else { -1 };
        gens.push(
            RationalQuaternion::from_ints(sign(0), sign(1), sign(2), sign(3)).scale(&half),
        );
    }
    let mut seen: HashSet<RationalQuaternion> = HashSet::new();
    let mut out = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for p in &out {
            for q in &out {
                let pq = p * q;
                if !seen.contains(&pq) {
                    seen.insert(pq.clone());
                    fresh.push(pq);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        out.extend(fresh);
    }
    out
}

impl Mul for &RationalQuaternion {
    type Output = RationalQuaternion;
    fn mul(self, o: &RationalQuaternion) -> RationalQuaternion {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        RationalQuaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Add for &RationalQuaternion {
    type Output = RationalQuaternion;
    fn add(self, o: &RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &RationalQuaternion {
    type Output = RationalQuaternion;
    fn sub(self, o: &RationalQuaternion) -> RationalQuaternion {
        RationalQuaternion::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &RationalQuaternion {
    type Output = RationalQuaternion;
    fn neg(self) -> RationalQuaternion {
        RationalQuaternion::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(
            f,
            &[(&self.a, ""), (&self.b, "i"), (&self.c, "j"), (&self.d, "k")],
        )
    }
}

impl fmt::Debug for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
