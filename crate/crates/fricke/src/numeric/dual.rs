use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::Error;

/// First-order jet `value + d1·ε₁ + d2·ε₂` with `εᵢεⱼ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dual2 {
    pub value: Rational,
    pub d1: Rational,
    pub d2: Rational,
}

impl Dual2 {
    pub fn new(value: Rational, d1: Rational, d2: Rational) -> Self {
        Dual2 { value, d1, d2 }
    }

    pub fn constant(value: Rational) -> Self {
        Dual2 { value, d1: Rational::zero(), d2: Rational::zero() }
    }

    /// Seed along the first direction.
    pub fn var1(value: Rational) -> Self {
        Dual2 { value, d1: Rational::one(), d2: Rational::zero() }
    }

    /// Seed along the second direction.
    pub fn var2(value: Rational) -> Self {
        Dual2 { value, d1: Rational::zero(), d2: Rational::one() }
    }

    pub fn inv(&self) -> Option<Self> {
        let r = self.value.inv()?;
        let r2 = &r * &r;
        Some(Dual2 { value: r, d1: -(&self.d1 * &r2), d2: -(&self.d2 * &r2) })
    }
}

impl Add for Dual2 {
    type Output = Dual2;
    fn add(self, o: Dual2) -> Dual2 {
        Dual2 { value: self.value + o.value, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Dual2 {
    type Output = Dual2;
    fn sub(self, o: Dual2) -> Dual2 {
        Dual2 { value: self.value - o.value, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Dual2 {
    type Output = Dual2;
    fn mul(self, o: Dual2) -> Dual2 {
        Dual2 {
            d1: &self.value * &o.d1 + &o.value * &self.d1,
            d2: &self.value * &o.d2 + &o.value * &self.d2,
            value: self.value * o.value,
        }
    }
}

impl Neg for Dual2 {
    type Output = Dual2;
    fn neg(self) -> Dual2 {
        Dual2 { value: -self.value, d1: -self.d1, d2: -self.d2 }
    }
}

/// Evaluates `f` at `(a, b)` with both arguments seeded, returning the value and
/// the two partial derivatives.
pub fn jet_eval<F>(f: F, a: &Rational, b: &Rational) -> Result<(Rational, Rational, Rational), Error>
where
    F: Fn(Dual2, Dual2) -> Result<Dual2, Error>,
{
    let out = f(Dual2::var1(a.clone()), Dual2::var2(b.clone()))?;
    Ok((out.value, out.d1, out.d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::field::Field;
    use crate::numeric::{q, qi};

    #[test]
    fn product_rule() {
        let (v, p1, p2) = jet_eval(|x, y| Ok(x * y), &qi(3), &qi(5)).unwrap();
        assert_eq!((v, p1, p2), (qi(15), qi(5), qi(3)));
    }

    #[test]
    fn power_rule() {
        let (_, p1, p2) = jet_eval(|x, _| Ok(x.sq()), &qi(7), &qi(1)).unwrap();
        assert_eq!((p1, p2), (qi(14), qi(0)));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let (_, p1, _) =
            jet_eval(|x, _| x.inv().ok_or(Error::ZeroDenominator("x".into())), &qi(2), &qi(0)).unwrap();
        assert_eq!(p1, q(-1, 4));
        let zero = jet_eval(|x, _| x.inv().ok_or(Error::ZeroDenominator("x".into())), &qi(0), &qi(0));
        assert!(zero.is_err());
    }
}
