use std::fmt;

use super::field::Field;
use super::rational::{qi, Rational};
use crate::error::{Error, Result};

/// One-variable rational function `c · x^m · ∏ (1 + ν x)^k`, kept factored so
/// that evaluation, inversion and the value at `0` stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorList {
    pub constant: Rational,
    pub power: i64,
    /// `(ν, k)` pairs, `ν ≠ 0`, `k ≠ 0`, sorted by `ν`.
    pub factors: Vec<(Rational, i64)>,
}

impl FactorList {
    pub fn constant(c: Rational) -> Self {
        FactorList { constant: c, power: 0, factors: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(qi(1))
    }

    pub fn monomial(c: Rational, power: i64) -> Self {
        FactorList { constant: c, power, factors: Vec::new() }
    }

    /// `1 + ν x`.
    pub fn linear(nu: Rational) -> Self {
        FactorList { constant: qi(1), power: 0, factors: vec![(nu, 1)] }.normalized()
    }

    fn normalized(mut self) -> Self {
        let mut merged: Vec<(Rational, i64)> = Vec::new();
        self.factors.sort_by(|a, b| a.0.as_big().cmp(b.0.as_big()));
        for (nu, k) in self.factors.drain(..) {
            if nu.is_zero() || k == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.0 == nu => last.1 += k,
                _ => merged.push((nu, k)),
            }
        }
        merged.retain(|(_, k)| *k != 0);
        self.factors = merged;
        self
    }

    pub fn mul(&self, other: &FactorList) -> FactorList {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FactorList { constant: &self.constant * &other.constant, power: self.power + other.power, factors }.normalized()
    }

    pub fn inv(&self) -> Result<FactorList> {
        let c = self.constant.inv().ok_or_else(|| Error::PoleHit("zero constant factor".into()))?;
        Ok(FactorList { constant: c, power: -self.power, factors: self.factors.iter().map(|(n, k)| (n.clone(), -k)).collect() })
    }

    pub fn powi(&self, e: i64) -> Result<FactorList> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(FactorList {
            constant: base.constant.pow(n as i32),
            power: base.power * n as i64,
            factors: base.factors.iter().map(|(nu, k)| (nu.clone(), k * n as i64)).collect(),
        }
        .normalized())
    }

    /// `x ↦ r(λ x)`.
    pub fn rescale(&self, lambda: &Rational) -> FactorList {
        FactorList {
            constant: &self.constant * lambda.pow(self.power as i32),
            power: self.power,
            factors: self.factors.iter().map(|(nu, k)| (nu * lambda, *k)).collect(),
        }
    }

    /// `r(0)`: `None` at a pole.
    pub fn at_zero(&self) -> Option<Rational> {
        match self.power {
            p if p > 0 => Some(qi(0)),
            p if p < 0 => None,
            _ => Some(self.constant.clone()),
        }
    }

    /// Total degree `m + Σ k`; the limit at infinity is finite and nonzero iff it is 0.
    pub fn degree(&self) -> i64 {
        self.power + self.factors.iter().map(|(_, k)| k).sum::<i64>()
    }

    /// Leading coefficient at infinity: `c · ∏ ν^k`.
    pub fn leading_at_infinity(&self) -> Rational {
        self.factors.iter().fold(self.constant.clone(), |acc, (nu, k)| acc * nu.pow(*k as i32))
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.power == 0 && self.factors.is_empty()
    }

    pub fn eval<S: Field>(&self, x: &S) -> Result<S> {
        let pole = || Error::PoleHit(format!("factor list {self} at {:?}", x.value()));
        let mut acc = S::constant(&self.constant);
        acc = acc * x.powi(self.power as i32).ok_or_else(pole)?;
        for (nu, k) in &self.factors {
            let f = x.scale(nu).add_q(&qi(1));
            acc = acc * f.powi(*k as i32).ok_or_else(pole)?;
        }
        Ok(acc)
    }

    /// Parses `"2 * u^-1 * (1+3u)^2 * (1-u/2)"`; the variable may be any single letter.
    pub fn parse(s: &str) -> Result<FactorList> {
        let err = |m: &str| Error::Parse(format!("factor list {s:?}: {m}"));
        let mut out = FactorList::one();
        let s = s.trim();
        if s.is_empty() {
            return Ok(out);
        }
        for raw in split_top(s, '*') {
            let term = raw.trim();
            let (base, exp) = split_exponent(term).map_err(|m| err(&m))?;
            let piece = if let Some(inner) = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
                let nu = parse_linear(inner).map_err(|m| err(&m))?;
                FactorList::linear(nu)
            } else if base.len() == 1 && base.chars().all(|c| c.is_ascii_alphabetic()) {
                FactorList::monomial(qi(1), 1)
            } else {
                let c: Rational = base.parse().map_err(|_| err("bad constant"))?;
                FactorList::constant(c)
            };
            out = out.mul(&piece.powi(exp)?);
        }
        Ok(out)
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn split_exponent(term: &str) -> std::result::Result<(&str, i64), String> {
    match term.rfind('^') {
        Some(i) if !term[i..].contains(')') => {
            let e = term[i + 1..].trim().parse::<i64>().map_err(|_| "bad exponent".to_string())?;
            Ok((term[..i].trim(), e))
        }
        _ => Ok((term, 1)),
    }
}

/// `"1+3u"`, `"1 - u/2"`, `"1+u"`, `"1-2/3u"` to `ν`.
fn parse_linear(inner: &str) -> std::result::Result<Rational, String> {
    let t: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = t.strip_prefix('1').ok_or("linear factor must start with 1")?;
    let (sign, rest) = match rest.chars().next() {
        Some('+') => (qi(1), &rest[1..]),
        Some('-') => (qi(-1), &rest[1..]),
        _ => return Err("expected + or -".into()),
    };
    let var_pos = rest.find(|c: char| c.is_ascii_alphabetic()).ok_or("missing variable")?;
    let before = &rest[..var_pos];
    let after = &rest[var_pos + 1..];
    let mut nu = if before.is_empty() { qi(1) } else { before.trim_end_matches('*').parse::<Rational>().map_err(|e| e.0)? };
    if let Some(d) = after.strip_prefix('/') {
        let d: Rational = d.parse().map_err(|_| "bad divisor".to_string())?;
        nu = nu.checked_div(&d).ok_or("zero divisor")?;
    } else if !after.is_empty() {
        return Err("trailing characters".into());
    }
    Ok(sign * nu)
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.constant.to_string()];
        if self.power != 0 {
            parts.push(format!("u^{}", self.power));
        }
        for (nu, k) in &self.factors {
            let base = if nu.is_negative() { format!("(1-{}u)", nu.abs()) } else { format!("(1+{nu}u)") };
            parts.push(if *k == 1 { base } else { format!("{base}^{k}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn parse_and_eval() {
        let r = FactorList::parse("u^1 * (1+3u)").unwrap();
        assert_eq!(r.eval(&qi(2)).unwrap(), qi(14));
        let r = FactorList::parse("2 * u^-1 * (1 - u/2)^2").unwrap();
        assert_eq!(r.eval(&qi(4)).unwrap(), q(1, 2));
        assert!(FactorList::parse("(2+u)").is_err());
    }

    #[test]
    fn inverse_and_zero_value() {
        let r = FactorList::parse("3 * (1+u) * (1-2u)^-1").unwrap();
        let p = r.mul(&r.inv().unwrap());
        assert!(p.is_one());
        assert_eq!(r.at_zero(), Some(qi(3)));
        assert_eq!(r.degree(), 0);
        assert_eq!(r.rescale(&qi(2)).eval(&qi(1)).unwrap(), r.eval(&qi(2)).unwrap());
    }

    #[test]
    fn pole_reported() {
        let r = FactorList::parse("(1+u)^-1").unwrap();
        assert!(matches!(r.eval(&qi(-1)), Err(Error::PoleHit(_))));
    }

    #[test]
    fn display_round_trips() {
        let r = FactorList::parse("2 * u^-1 * (1-u/2)^2 * (1+3u)").unwrap();
        assert_eq!(FactorList::parse(&r.to_string()).unwrap(), r);
    }
}
