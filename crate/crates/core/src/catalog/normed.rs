//! Multiplicative structures inside `ℚ`, `ℚ(i)` and the rational
//! quaternions, cut out by a condition on the norm.

use std::marker::PhantomData;
use std::sync::OnceLock;

use rand::{Rng, RngCore};

use crate::algebra::{ConjStructure, InverseLookup, Kind, Parametric};
use crate::carriers::{
    hurwitz_units, unit_circle_point, Elem, GaussianRational, Rational, RationalQuaternion, DEFAULT_SAMPLE_BOUND,
};

/// Coordinate bound for the integer quaternions squared into units.
const UNIT_SEED_BOUND: i64 = 3;

/// A division algebra over `ℚ` with multiplicative squared norm.
pub trait Scalar: Clone + Eq + Send + Sync + 'static {
    const LABEL: &'static str;
    fn one() -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn norm2(&self) -> Rational;
    fn scale(&self, r: &Rational) -> Self;
    fn recip(&self) -> Option<Self>;
    /// Real and strictly positive.
    fn is_positive_real(&self) -> bool;
    fn wrap(self) -> Elem;
    fn peel(e: &Elem) -> Option<&Self>;
    /// A random element of norm exactly 1.
    fn sample_unit(rng: &mut dyn RngCore) -> Self;
    /// A few named units, `1` first.
    fn canonical_units() -> Vec<Self>;
    fn is_zero(&self) -> bool {
        self.norm2().is_zero()
    }
}

impl Scalar for Rational {
    const LABEL: &'static str = "Q";
    fn one() -> Self {
        Rational::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn norm2(&self) -> Rational {
        self.square()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn recip(&self) -> Option<Self> {
        Rational::recip(self)
    }
    fn is_positive_real(&self) -> bool {
        self.is_positive()
    }
    fn wrap(self) -> Elem {
        Elem::Rat(self)
    }
    fn peel(e: &Elem) -> Option<&Self> {
        e.as_rat()
    }
    fn sample_unit(rng: &mut dyn RngCore) -> Self {
        if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() }
    }
    fn canonical_units() -> Vec<Self> {
        vec![Rational::one(), -Rational::one()]
    }
}

impl Scalar for GaussianRational {
    const LABEL: &'static str = "Q(i)";
    fn one() -> Self {
        GaussianRational::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn norm2(&self) -> Rational {
        GaussianRational::norm2(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        GaussianRational::scale(self, r)
    }
    fn recip(&self) -> Option<Self> {
        GaussianRational::recip(self)
    }
    fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
    fn wrap(self) -> Elem {
        Elem::Gauss(self)
    }
    fn peel(e: &Elem) -> Option<&Self> {
        e.as_gauss()
    }
    fn sample_unit(rng: &mut dyn RngCore) -> Self {
        let p = unit_circle_point(&Rational::sample(rng, DEFAULT_SAMPLE_BOUND / 2));
        if rng.gen_bool(0.5) { p } else { -&p }
    }
    fn canonical_units() -> Vec<Self> {
        vec![
            GaussianRational::one(),
            GaussianRational::i(),
            GaussianRational::from_ints(-1, 0),
            unit_circle_point(&Rational::new(1, 2)),
        ]
    }
}

impl Scalar for RationalQuaternion {
    const LABEL: &'static str = "H(Q)";
    fn one() -> Self {
        RationalQuaternion::one()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn conj(&self) -> Self {
        RationalQuaternion::conj(self)
    }
    fn norm2(&self) -> Rational {
        RationalQuaternion::norm2(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        RationalQuaternion::scale(self, r)
    }
    fn recip(&self) -> Option<Self> {
        RationalQuaternion::recip(self)
    }
    fn is_positive_real(&self) -> bool {
        self.is_real() && self.a.is_positive()
    }
    fn wrap(self) -> Elem {
        Elem::Quat(self)
    }
    fn peel(e: &Elem) -> Option<&Self> {
        e.as_quat()
    }
    /// `p²/‖p‖²` for a small integer quaternion `p`, times a Hurwitz unit.
    fn sample_unit(rng: &mut dyn RngCore) -> Self {
        static UNITS: OnceLock<Vec<RationalQuaternion>> = OnceLock::new();
        let units = UNITS.get_or_init(hurwitz_units);
        let h = units[rng.gen_range(0..units.len())].clone();
        if rng.gen_bool(0.25) {
            return h;
        }
        let b = UNIT_SEED_BOUND;
        let p = loop {
            let p = RationalQuaternion::from_ints(
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
                rng.gen_range(-b..=b),
            );
            if !p.is_zero() {
                break p;
            }
        };
        let n = p.norm2().recip().expect("nonzero");
        &(&p * &p).scale(&n) * &h
    }
    fn canonical_units() -> Vec<Self> {
        vec![
            RationalQuaternion::one(),
            RationalQuaternion::i(),
            RationalQuaternion::j(),
            RationalQuaternion::k(),
            RationalQuaternion::from_ints(1, 1, 1, 1).scale(&Rational::new(1, 2)),
        ]
    }
}

/// The subset of nonzero elements a structure keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `0 < ‖x‖ < 1`, a semigroup.
    OpenBall,
    /// `‖x‖ = ρ ∈ ℚ ∩ (0, 1]`: the monoid of scaled units.
    ScaledUnits,
    /// `‖x‖ = 1`, a group.
    UnitSphere,
    /// Positive reals in `(0, 1]`.
    PositiveInterval,
}

struct Normed<S: Scalar> {
    region: Region,
    _scalar: PhantomData<S>,
}

impl<S: Scalar> Normed<S> {
    fn val<'a>(&self, x: &'a Elem) -> &'a S {
        S::peel(x).unwrap_or_else(|| panic!("{} carrier applied to {x}", S::LABEL))
    }

    fn admits(&self, s: &S) -> bool {
        let n = s.norm2();
        let one = Rational::one();
        match self.region {
            Region::OpenBall => n.is_positive() && n < one,
            Region::ScaledUnits => n.is_positive() && n <= one && n.sqrt_exact().is_some(),
            Region::UnitSphere => n.is_one(),
            Region::PositiveInterval => s.is_positive_real() && n <= one,
        }
    }
}

impl<S: Scalar> Parametric for Normed<S> {
    fn describe(&self) -> String {
        let region = match self.region {
            Region::OpenBall => "0 < |x| < 1",
            Region::ScaledUnits => "|x| rational in (0, 1]",
            Region::UnitSphere => "|x| = 1",
            Region::PositiveInterval => "x in (0, 1]",
        };
        format!("{region} in {} under product", S::LABEL)
    }

    fn op(&self, x: &Elem, y: &Elem) -> Elem {
        self.val(x).mul(self.val(y)).wrap()
    }

    fn conj(&self, x: &Elem) -> Elem {
        self.val(x).conj().wrap()
    }

    fn identity(&self) -> Option<Elem> {
        match self.region {
            Region::OpenBall => None,
            _ => Some(S::one().wrap()),
        }
    }

    fn contains(&self, x: &Elem) -> bool {
        S::peel(x).is_some_and(|s| self.admits(s))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem {
        let unit = S::sample_unit(rng);
        match self.region {
            Region::UnitSphere => unit.wrap(),
            Region::ScaledUnits => unit.scale(&Rational::sample_unit_interval(rng, DEFAULT_SAMPLE_BOUND)).wrap(),
            Region::OpenBall => unit.scale(&Rational::sample_open_unit_interval(rng, DEFAULT_SAMPLE_BOUND)).wrap(),
            Region::PositiveInterval => S::one().scale(&Rational::sample_unit_interval(rng, DEFAULT_SAMPLE_BOUND)).wrap(),
        }
    }

    fn canonical(&self) -> Vec<Elem> {
        let half = Rational::new(1, 2);
        let third = Rational::new(1, 3);
        let units = S::canonical_units();
        let out: Vec<S> = match self.region {
            Region::UnitSphere => units,
            Region::ScaledUnits => {
                let mut v = vec![S::one(), S::one().scale(&half)];
                v.extend(units.iter().skip(1).take(2).cloned());
                v.extend(units.iter().skip(2).take(1).map(|u| u.scale(&half)));
                v
            }
            Region::OpenBall => {
                let mut v = vec![S::one().scale(&half)];
                v.extend(units.iter().skip(1).take(2).map(|u| u.scale(&half)));
                v.push(S::one().scale(&third));
                v
            }
            Region::PositiveInterval => vec![S::one(), S::one().scale(&half), S::one().scale(&third)],
        };
        out.into_iter().filter(|s| self.admits(s)).map(S::wrap).collect()
    }

    fn solve_right(&self, target: &Elem, by: &Elem) -> Option<Vec<Elem>> {
        let x = self.val(target).mul(&self.val(by).recip()?);
        Some(if self.admits(&x) { vec![x.wrap()] } else { Vec::new() })
    }

    fn inverse(&self, x: &Elem) -> InverseLookup {
        if self.region == Region::OpenBall {
            return InverseLookup::Missing;
        }
        match self.val(x).recip() {
            Some(y) if self.admits(&y) => InverseLookup::Found(y.wrap()),
            _ => InverseLookup::Missing,
        }
    }
}

/// The structure of `region` inside the scalar domain `S`.
pub fn normed<S: Scalar>(name: impl Into<String>, region: Region) -> ConjStructure {
    let kind = if region == Region::OpenBall { Kind::Semigroup } else { Kind::Monoid };
    ConjStructure::parametric(name, kind, Normed::<S> { region, _scalar: PhantomData }).expect("normed carrier")
}

/// `{u ∈ ℚ : 0 < |u| < 1}` under product with `ū = u`.
pub fn rational_ball() -> ConjStructure {
    normed::<Rational>("Q-ball", Region::OpenBall)
}

/// `{u ∈ ℚ : 0 < u ≤ 1}` under product with `ū = u`.
pub fn rational_interval() -> ConjStructure {
    normed::<Rational>("Q(0,1]", Region::PositiveInterval)
}

/// `{z ∈ ℚ(i) : 0 < ‖z‖ < 1}` under product and complex conjugation.
pub fn gaussian_ball() -> ConjStructure {
    normed::<GaussianRational>("C-ball", Region::OpenBall)
}

/// `{q : 0 < ‖q‖ < 1}` rational quaternions under product and conjugation.
pub fn quaternion_ball() -> ConjStructure {
    normed::<RationalQuaternion>("H-ball", Region::OpenBall)
}

/// Rational unit quaternions, a group with `q̄ = q⁻¹`.
pub fn unit_quaternions() -> ConjStructure {
    normed::<RationalQuaternion>("H1", Region::UnitSphere)
}

/// Rational quaternions of rational norm in `(0, 1]`.
pub fn scaled_unit_quaternions() -> ConjStructure {
    normed::<RationalQuaternion>("Hdisk", Region::ScaledUnits)
}

/// Rational points of the unit circle.
pub fn unit_circle() -> ConjStructure {
    normed::<GaussianRational>("C1", Region::UnitSphere)
}

/// Gaussian rationals of rational modulus in `(0, 1]`.
pub fn scaled_unit_gaussians() -> ConjStructure {
    normed::<GaussianRational>("Cdisk", Region::ScaledUnits)
}

/// `x / ‖x‖` for an element of rational norm.
pub fn unit_part<S: Scalar>(x: &S) -> Option<S> {
    let n = x.norm2().sqrt_exact()?;
    Some(x.scale(&n.recip()?))
}
