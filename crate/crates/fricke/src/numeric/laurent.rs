use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::Error;

/// Sparse Laurent polynomial in two variables `u`, `v`.
///
/// Terms are keyed by `(deg_u, deg_v)`; the map order (lexicographic, `u` first)
/// is the monomial order used by [`exact_divide`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: i64, j: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiLaurent { terms }
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: (i64, i64), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiLaurent { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplication by `u^i v^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    /// `(D, c·D)` with `D` the lcm of the coefficient denominators.
    fn integer_form(&self) -> (BigInt, Vec<((i64, i64), BigInt)>) {
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let terms = self.terms.iter().map(|(k, c)| (*k, c.numer() * (&den / c.denom()))).collect();
        (den, terms)
    }

    fn leading(&self) -> Option<((i64, i64), Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))
    }

    fn min_exponents(&self) -> (i64, i64) {
        let i = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let j = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (i, j)
    }

    /// Largest negative exponents of `u` and `v` present (as positive numbers).
    pub fn denominator_exponents(&self) -> (i64, i64) {
        let (i, j) = self.min_exponents();
        ((-i).max(0), (-j).max(0))
    }

    /// Evaluates at rational `(u, v)`; `None` if a negative power meets a zero.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            if (i < 0 && u.is_zero()) || (j < 0 && v.is_zero()) {
                return None;
            }
            acc = acc + c * u.pow(i as i32) * v.pow(j as i32);
        }
        Some(acc)
    }

    /// Evaluates the univariate polynomial with coefficients `coeffs`
    /// (constant first) at `self`.
    pub fn compose_poly(&self, coeffs: &[Rational]) -> Self {
        let mut acc = BiLaurent::zero();
        for c in coeffs.iter().rev() {
            acc = &acc * self + BiLaurent::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if i != 0 {
                write!(f, "*u^{i}")?;
            }
            if j != 0 {
                write!(f, "*v^{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'b> Add<&'b BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, o: &'b BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'b> Sub<&'b BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, o: &'b BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'b> Mul<&'b BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, o: &'b BiLaurent) -> BiLaurent {
        // Integer products over a common denominator; one normalization per output term.
        let (da, xa) = self.integer_form();
        let (db, xb) = o.integer_form();
        let mut acc: HashMap<(i64, i64), BigInt> = HashMap::with_capacity(xa.len() * xb.len() / 2 + 1);
        for ((a, b), c) in &xa {
            for ((i, j), d) in &xb {
                *acc.entry((a + i, b + j)).or_default() += c * d;
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::from_bigints(c, den.clone())))
            .collect();
        BiLaurent { terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<BiLaurent> for BiLaurent {
            type Output = BiLaurent;
            fn $m(self, o: BiLaurent) -> BiLaurent {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BiLaurent> for BiLaurent {
            type Output = BiLaurent;
            fn $m(self, o: &'a BiLaurent) -> BiLaurent {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<BiLaurent> for &'a BiLaurent {
            type Output = BiLaurent;
            fn $m(self, o: BiLaurent) -> BiLaurent {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        self.scale(&-Rational::one())
    }
}

/// Exact quotient `num / den` in the Laurent ring, or the nonzero remainder.
///
/// Both sides are split into a monomial and a polynomial part coprime to `u`
/// and `v`; since `u`, `v` are units, divisibility reduces to polynomial
/// divisibility of the parts, decided by leading-term elimination.
pub fn exact_divide(num: &BiLaurent, den: &BiLaurent) -> Result<BiLaurent, Error> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator("Laurent divisor is zero".into()));
    }
    if num.is_zero() {
        return Ok(BiLaurent::zero());
    }
    let (na, nb) = num.min_exponents();
    let (da, db) = den.min_exponents();
    let mut rest = num.shift(-na, -nb);
    let divisor = den.shift(-da, -db);
    let (lead_key, lead_c) = divisor.leading().expect("nonzero divisor");
    let mut quot = BiLaurent::zero();
    let mut rem = BiLaurent::zero();
    while let Some((key, c)) = rest.leading() {
        if key.0 >= lead_key.0 && key.1 >= lead_key.1 {
            let (si, sj) = (key.0 - lead_key.0, key.1 - lead_key.1);
            let f = &c / &lead_c;
            for (&(a, b), d) in &divisor.terms {
                rest.add_term((a + si, b + sj), &-(&f * d));
            }
            quot.add_term((si, sj), &f);
        } else {
            rem.add_term(key, &c);
            rest.add_term(key, &-c);
        }
    }
    if rem.is_zero() {
        Ok(quot.shift(na - da, nb - db))
    } else {
        Err(Error::DivisionFailure { remainder: rem.shift(na - da, nb - db).to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::qi;

    fn v_plus(c: i64) -> BiLaurent {
        BiLaurent::v() + BiLaurent::constant(qi(c))
    }

    #[test]
    fn divide_by_one() {
        assert_eq!(exact_divide(&v_plus(2), &BiLaurent::constant(qi(1))).unwrap(), v_plus(2));
    }

    #[test]
    fn divide_square() {
        let sq = v_plus(2) * v_plus(2);
        assert_eq!(exact_divide(&sq, &v_plus(2)).unwrap(), v_plus(2));
    }

    #[test]
    fn inexact_reports_remainder() {
        match exact_divide(&v_plus(3), &v_plus(2)) {
            Err(Error::DivisionFailure { remainder }) => assert_eq!(remainder, "1"),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn monomial_units() {
        let one = BiLaurent::constant(qi(1));
        let inv_u = exact_divide(&one, &BiLaurent::u()).unwrap();
        assert_eq!(inv_u, BiLaurent::monomial(-1, 0, qi(1)));
        // (u + v)/(u^2 v (u + v)) = u^-2 v^-1
        let s = BiLaurent::u() + BiLaurent::v();
        let den = s.shift(2, 1);
        assert_eq!(exact_divide(&s, &den).unwrap(), BiLaurent::monomial(-2, -1, qi(1)));
    }

    #[test]
    fn compose_poly_matches_eval() {
        let x = BiLaurent::u() + BiLaurent::monomial(0, -1, qi(3));
        let p = x.compose_poly(&[qi(1), qi(-2), qi(0), qi(5)]);
        let (u, v) = (qi(2), qi(3));
        let xv = x.eval(&u, &v).unwrap();
        let expect = qi(1) - qi(2) * &xv + qi(5) * xv.pow(3);
        assert_eq!(p.eval(&u, &v).unwrap(), expect);
    }
}
