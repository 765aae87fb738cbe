use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::dual::Dual2;
use super::rational::Rational;

/// Scalars the surface maps are written over: exact rationals for evaluation,
/// [`Dual2`] jets for Jacobians.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn constant(q: &Rational) -> Self;
    /// Value part (the point itself, for jets).
    fn value(&self) -> &Rational;
    /// `None` when the value part vanishes.
    fn inv(&self) -> Option<Self>;

    fn int(n: i64) -> Self {
        Self::constant(&Rational::from(n))
    }

    fn is_zero(&self) -> bool {
        self.value().is_zero()
    }

    fn div(&self, den: &Self) -> Option<Self> {
        den.inv().map(|d| self.clone() * d)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * Self::constant(q)
    }

    fn add_q(&self, q: &Rational) -> Self {
        self.clone() + Self::constant(q)
    }

    fn powi(&self, e: i32) -> Option<Self> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let mut acc = Self::int(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        Some(acc)
    }
}

impl Field for Rational {
    fn constant(q: &Rational) -> Self {
        q.clone()
    }

    fn value(&self) -> &Rational {
        self
    }

    fn inv(&self) -> Option<Self> {
        Rational::inv(self)
    }
}

impl Field for Dual2 {
    fn constant(q: &Rational) -> Self {
        Dual2::constant(q.clone())
    }

    fn value(&self) -> &Rational {
        &self.value
    }

    fn inv(&self) -> Option<Self> {
        Dual2::inv(self)
    }
}
