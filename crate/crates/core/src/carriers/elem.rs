use std::fmt;

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::ke::KePoint;
use super::quaternion::RationalQuaternion;
use super::rational::Rational;

/// A carrier element. Every structure in the crate, finite or parametric,
/// evaluates over this one type so that the law checkers are written once.
///
/// The derived `Ord` is the canonical order used for witness selection.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    /// Index into a finite operation table.
    Idx(usize),
    Nat(u64),
    Rat(Rational),
    Gauss(GaussianRational),
    Quat(RationalQuaternion),
    Ke(KePoint),
    /// A non-empty word over a finite alphabet.
    Word(String),
    Pair(Box<Elem>, Box<Elem>),
}

impl Elem {
    pub fn pair(left: Elem, right: Elem) -> Elem {
        Elem::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_idx(&self) -> Option<usize> {
        match self {
            Elem::Idx(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Elem::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&Rational> {
        match self {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_gauss(&self) -> Option<&GaussianRational> {
        match self {
            Elem::Gauss(z) => Some(z),
            _ => None,
        }
    }

    pub fn as_quat(&self) -> Option<&RationalQuaternion> {
        match self {
            Elem::Quat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ke(&self) -> Option<&KePoint> {
        match self {
            Elem::Ke(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&str> {
        match self {
            Elem::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Left component of a pair. Panics on non-pairs; callers use it only on
    /// carriers whose elements are pairs by construction.
    pub fn fst(&self) -> &Elem {
        self.as_pair().expect("pair element").0
    }

    pub fn snd(&self) -> &Elem {
        self.as_pair().expect("pair element").1
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Idx(i) => write!(f, "#{i}"),
            Elem::Nat(n) => write!(f, "{n}"),
            Elem::Rat(r) => write!(f, "{r}"),
            Elem::Gauss(z) => write!(f, "{z}"),
            Elem::Quat(q) => write!(f, "{q}"),
            Elem::Ke(p) => write!(f, "{p}"),
            Elem::Word(w) => f.write_str(w),
            Elem::Pair(l, r) => write!(f, "({l}, {r})"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rational> for Elem {
    fn from(r: Rational) -> Self {
        Elem::Rat(r)
    }
}

impl From<GaussianRational> for Elem {
    fn from(z: GaussianRational) -> Self {
        Elem::Gauss(z)
    }
}

impl From<RationalQuaternion> for Elem {
    fn from(q: RationalQuaternion) -> Self {
        Elem::Quat(q)
    }
}

impl From<KePoint> for Elem {
    fn from(p: KePoint) -> Self {
        Elem::Ke(p)
    }
}
