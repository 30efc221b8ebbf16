//! Complex numbers with rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(re.into(), im.into())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        GaussianRational::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm2(&self) -> Rational {
        self.re.square() + self.im.square()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GaussianRational::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm2().recip()?;
        Some(self.conj().scale(&n))
    }
}

/// The rational point of the unit circle with parameter `t`:
/// `((1 - t²) + 2t·i) / (1 + t²)`.
pub fn unit_circle_point(t: &Rational) -> GaussianRational {
    let t2 = t.square();
    let denom = Rational::one() + &t2;
    let inv = denom.recip().expect("1 + t^2 is positive");
    GaussianRational::new(
        (Rational::one() - &t2) * &inv,
        (Rational::from_integer(2) * t) * &inv,
    )
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, &[(&self.re, ""), (&self.im, "i")])
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_examples() {
        assert_eq!(unit_circle_point(&Rational::zero()), GaussianRational::one());
        assert_eq!(
            unit_circle_point(&Rational::new(1, 2)),
            GaussianRational::new(Rational::new(3, 5), Rational::new(4, 5))
        );
        assert_eq!(unit_circle_point(&Rational::one()), GaussianRational::i());
    }

    #[test]
    fn unit_circle_points_have_norm_one() {
        for n in -40..=40 {
            for d in 1..=25 {
                let p = unit_circle_point(&Rational::new(n, d));
                assert!(p.norm2().is_one(), "t = {n}/{d} gives {p}");
            }
        }
    }

    #[test]
    fn conjugate_times_self_is_norm() {
        let z = GaussianRational::new(Rational::new(2, 3), Rational::new(-5, 7));
        assert_eq!(&z * &z.conj(), GaussianRational::real(z.norm2()));
        assert_eq!(&z * &z.recip().unwrap(), GaussianRational::one());
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(GaussianRational::i().scale(&Rational::new(1, 2)).to_string(), "1/2i");
        assert_eq!(GaussianRational::from_ints(-1, -2).to_string(), "-1-2i");
        assert_eq!(GaussianRational::zero().to_string(), "0");
    }
}
