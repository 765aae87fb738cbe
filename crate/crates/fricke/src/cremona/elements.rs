//! Elements of the plane symplectic Cremona group acting on `(ℂ*)²` with the
//! form `du/u ∧ dv/v`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{qi, Dual2, FactorList, Field, Rational};

/// `t(λ, μ) : (u, v) ↦ (λu, μv)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElem {
    pub lambda: Rational,
    pub mu: Rational,
}

impl TorusElem {
    pub fn new(lambda: Rational, mu: Rational) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::Parse("torus parameters must be nonzero".into()));
        }
        Ok(TorusElem { lambda, mu })
    }

    pub fn mul(&self, o: &TorusElem) -> TorusElem {
        TorusElem { lambda: &self.lambda * &o.lambda, mu: &self.mu * &o.mu }
    }

    pub fn inverse(&self) -> TorusElem {
        TorusElem { lambda: self.lambda.inv().unwrap(), mu: self.mu.inv().unwrap() }
    }
}

/// `(u, v) ↦ (u^a v^b, u^c v^d)` with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialElem {
    pub m: [[i64; 2]; 2],
}

impl MonomialElem {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det != 1 {
            return Err(Error::Parse(format!("exponent matrix {m:?} has determinant {det}, expected 1")));
        }
        Ok(MonomialElem { m })
    }

    pub fn mul(&self, o: &MonomialElem) -> MonomialElem {
        let (a, b) = (self.m, o.m);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        MonomialElem { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn inverse(&self) -> MonomialElem {
        let [[a, b], [c, d]] = self.m;
        MonomialElem { m: [[d, -b], [-c, a]] }
    }

    /// `w ∘ t(λ, μ) ∘ w⁻¹ = t(λ^a μ^b, λ^c μ^d)`.
    pub fn conjugate_torus(&self, t: &TorusElem) -> TorusElem {
        let [[a, b], [c, d]] = self.m;
        let p = |x: &Rational, e: i64| x.pow(e as i32);
        TorusElem {
            lambda: p(&t.lambda, a) * p(&t.mu, b),
            mu: p(&t.lambda, c) * p(&t.mu, d),
        }
    }
}

/// `dj1(λ, r) : (u, v) ↦ (λu, r(u)v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeJonquieresElem {
    pub lambda: Rational,
    pub r: FactorList,
}

impl DeJonquieresElem {
    pub fn new(lambda: Rational, r: FactorList) -> Result<Self> {
        if lambda.is_zero() || r.constant.is_zero() {
            return Err(Error::Parse("dj1 needs λ ≠ 0 and r ≢ 0".into()));
        }
        Ok(DeJonquieresElem { lambda, r })
    }

    /// `self ∘ other = dj1(λλ', r(λ'u) r'(u))`.
    pub fn compose(&self, o: &DeJonquieresElem) -> DeJonquieresElem {
        DeJonquieresElem { lambda: &self.lambda * &o.lambda, r: self.r.rescale(&o.lambda).mul(&o.r) }
    }

    /// `dj1(λ⁻¹, 1/r(u/λ))`.
    pub fn inverse(&self) -> DeJonquieresElem {
        let li = self.lambda.inv().unwrap();
        DeJonquieresElem { r: self.r.rescale(&li).inv().expect("nonzero constant"), lambda: li }
    }

    /// `a b a⁻¹ b⁻¹`, computed in closed form.
    pub fn commutator(a: &DeJonquieresElem, b: &DeJonquieresElem) -> DeJonquieresElem {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    /// Member of the unipotent subgroup: `λ = 1` and `r(0) = 1`.
    pub fn is_unipotent(&self) -> bool {
        self.lambda.is_one() && self.r.at_zero().is_some_and(|c| c.is_one())
    }
}

/// A Cremona element: one of the listed families or a composition of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CremonaElem {
    Torus(TorusElem),
    Monomial(MonomialElem),
    DeJonquieres(DeJonquieresElem),
    /// `p : (u, v) ↦ (v, (1 + v)/u)`, of order five.
    BlancP,
    BlancPInv,
    /// `σ : (u, v) ↦ (1/u, 1/v)`.
    Sigma,
    /// Applied right to left.
    Word(Vec<CremonaElem>),
}

fn pole<S: Field>(what: &str, s: &S) -> Result<S> {
    s.inv().ok_or_else(|| Error::PoleHit(what.to_string()))
}

impl CremonaElem {
    pub fn torus(lambda: Rational, mu: Rational) -> Result<Self> {
        Ok(CremonaElem::Torus(TorusElem::new(lambda, mu)?))
    }

    pub fn monomial(m: [[i64; 2]; 2]) -> Result<Self> {
        Ok(CremonaElem::Monomial(MonomialElem::new(m)?))
    }

    pub fn dj1(lambda: Rational, r: FactorList) -> Result<Self> {
        Ok(CremonaElem::DeJonquieres(DeJonquieresElem::new(lambda, r)?))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CremonaElem) -> CremonaElem {
        let mut w = match self {
            CremonaElem::Word(w) => w.clone(),
            e => vec![e.clone()],
        };
        match other {
            CremonaElem::Word(o) => w.extend(o.iter().cloned()),
            e => w.push(e.clone()),
        }
        CremonaElem::Word(w)
    }

    pub fn pow(&self, n: i64) -> CremonaElem {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        CremonaElem::Word(vec![base; n.unsigned_abs() as usize])
    }

    pub fn inverse(&self) -> CremonaElem {
        match self {
            CremonaElem::Torus(t) => CremonaElem::Torus(t.inverse()),
            CremonaElem::Monomial(m) => CremonaElem::Monomial(m.inverse()),
            CremonaElem::DeJonquieres(d) => CremonaElem::DeJonquieres(d.inverse()),
            CremonaElem::BlancP => CremonaElem::BlancPInv,
            CremonaElem::BlancPInv => CremonaElem::BlancP,
            CremonaElem::Sigma => CremonaElem::Sigma,
            CremonaElem::Word(w) => CremonaElem::Word(w.iter().rev().map(CremonaElem::inverse).collect()),
        }
    }

    pub fn apply<S: Field>(&self, u: &S, v: &S) -> Result<(S, S)> {
        Ok(match self {
            CremonaElem::Torus(t) => (u.scale(&t.lambda), v.scale(&t.mu)),
            CremonaElem::Monomial(m) => {
                let [[a, b], [c, d]] = m.m;
                let pw = |s: &S, e: i64| s.powi(e as i32).ok_or_else(|| Error::PoleHit("monomial at a zero coordinate".into()));
                (pw(u, a)? * pw(v, b)?, pw(u, c)? * pw(v, d)?)
            }
            CremonaElem::DeJonquieres(d) => (u.scale(&d.lambda), d.r.eval(u)? * v.clone()),
            CremonaElem::BlancP => (v.clone(), v.add_q(&qi(1)) * pole("p at u = 0", u)?),
            CremonaElem::BlancPInv => (u.add_q(&qi(1)) * pole("p⁻¹ at v = 0", v)?, u.clone()),
            CremonaElem::Sigma => (pole("σ at u = 0", u)?, pole("σ at v = 0", v)?),
            CremonaElem::Word(w) => {
                let mut cur = (u.clone(), v.clone());
                for e in w.iter().rev() {
                    cur = e.apply(&cur.0, &cur.1)?;
                }
                cur
            }
        })
    }

    /// `(U_u V_v − U_v V_u) · uv / (UV)`, the factor by which the element
    /// rescales `du/u ∧ dv/v` at the point.
    pub fn log_symplectic_ratio(&self, u: &Rational, v: &Rational) -> Result<Rational> {
        if u.is_zero() || v.is_zero() {
            return Err(Error::ChartDegenerate("point on an axis".into()));
        }
        let (big_u, big_v) = self.apply(&Dual2::var1(u.clone()), &Dual2::var2(v.clone()))?;
        if big_u.value.is_zero() || big_v.value.is_zero() {
            return Err(Error::ChartDegenerate("image on an axis".into()));
        }
        let jac = &big_u.d1 * &big_v.d2 - &big_u.d2 * &big_v.d1;
        Ok(jac * u * v / (&big_u.value * &big_v.value))
    }

    /// Parses one element, or a composition `"p . t(2,3) . sigma^2"`.
    pub fn parse(s: &str) -> Result<CremonaElem> {
        let parts = split_top(s.trim(), '.');
        let mut out: Vec<CremonaElem> = Vec::new();
        for raw in parts {
            let t = raw.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("empty factor in {s:?}")));
            }
            let (base, exp) = split_power(t)?;
            let e = parse_atom(base)?;
            out.push(if exp == 1 { e } else { e.pow(exp) });
        }
        Ok(if out.len() == 1 { out.pop().unwrap() } else { CremonaElem::Word(out) })
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
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

/// Strips a trailing `^n` that sits outside all brackets.
fn split_power(t: &str) -> Result<(&str, i64)> {
    let mut depth = 0i32;
    let mut caret = None;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '^' if depth == 0 => caret = Some(i),
            _ => {}
        }
    }
    match caret {
        Some(i) => {
            let n = t[i + 1..].trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
            Ok((t[..i].trim(), n))
        }
        None => Ok((t, 1)),
    }
}

fn rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse(e.0))
}

fn args<'a>(t: &'a str, head: &str) -> Option<&'a str> {
    t.strip_prefix(head)?.trim().strip_prefix('(')?.strip_suffix(')')
}

fn parse_atom(t: &str) -> Result<CremonaElem> {
    let bad = || Error::Parse(format!("unknown Cremona element {t:?}"));
    match t {
        "p" => return Ok(CremonaElem::BlancP),
        "pinv" => return Ok(CremonaElem::BlancPInv),
        "sigma" => return Ok(CremonaElem::Sigma),
        "id" => return Ok(CremonaElem::Word(Vec::new())),
        _ => {}
    }
    if let Some(inner) = args(t, "dj1") {
        let (l, r) = inner.split_once(';').ok_or_else(bad)?;
        return CremonaElem::dj1(rational(l)?, FactorList::parse(r)?);
    }
    if let Some(inner) = args(t, "t") {
        let (l, m) = inner.split_once(',').ok_or_else(bad)?;
        return CremonaElem::torus(rational(l)?, rational(m)?);
    }
    if let Some(rest) = t.strip_prefix('w') {
        let digits: String = rest.chars().filter(|c| !c.is_whitespace() && *c != '[' && *c != ']').collect();
        let n: Vec<i64> = digits
            .split(',')
            .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry {x:?} in {t:?}"))))
            .collect::<Result<_>>()?;
        if n.len() != 4 {
            return Err(Error::Parse(format!("matrix {t:?} needs four entries")));
        }
        return CremonaElem::monomial([[n[0], n[1]], [n[2], n[3]]]);
    }
    Err(bad())
}

impl fmt::Display for CremonaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CremonaElem::Torus(t) => write!(f, "t({},{})", t.lambda, t.mu),
            CremonaElem::Monomial(m) => write!(f, "w[[{},{}],[{},{}]]", m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]),
            CremonaElem::DeJonquieres(d) => write!(f, "dj1({}; {})", d.lambda, d.r),
            CremonaElem::BlancP => f.write_str("p"),
            CremonaElem::BlancPInv => f.write_str("pinv"),
            CremonaElem::Sigma => f.write_str("sigma"),
            CremonaElem::Word(w) if w.is_empty() => f.write_str("id"),
            CremonaElem::Word(w) => {
                let s: Vec<String> = w.iter().map(|e| e.to_string()).collect();
                f.write_str(&s.join(" . "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn at(e: &CremonaElem, u: i64, v: i64) -> (Rational, Rational) {
        e.apply(&qi(u), &qi(v)).unwrap()
    }

    #[test]
    fn blanc_orbit_of_one_one() {
        let p = CremonaElem::BlancP;
        let mut cur = (qi(1), qi(1));
        let mut seen = Vec::new();
        for _ in 0..5 {
            cur = p.apply(&cur.0, &cur.1).unwrap();
            seen.push(cur.clone());
        }
        let want: Vec<_> = [(1, 2), (2, 3), (3, 2), (2, 1), (1, 1)].iter().map(|&(a, b)| (qi(a), qi(b))).collect();
        assert_eq!(seen, want);
    }

    #[test]
    fn quarter_turn_monomial() {
        let w = CremonaElem::parse("w[[0,1],[-1,0]]").unwrap();
        assert_eq!(at(&w, 3, 5), (qi(5), q(1, 3)));
    }

    #[test]
    fn non_sl2_rejected() {
        assert!(CremonaElem::parse("w[[2,0],[0,1]]").is_err());
    }

    #[test]
    fn grammar_examples() {
        for s in ["t(2,3)", "w[[0,1],[-1,1]]", "dj1(2; u^1 * (1+3u))", "p", "sigma", "p^5", "dj1(1; (1+u)) . sigma"] {
            let e = CremonaElem::parse(s).unwrap();
            assert_eq!(CremonaElem::parse(&e.to_string()).unwrap().apply(&q(2, 3), &q(5, 7)).unwrap(), e.apply(&q(2, 3), &q(5, 7)).unwrap(), "{s}");
        }
        let d = CremonaElem::parse("dj1(2; u^1 * (1+3u))").unwrap();
        assert_eq!(at(&d, 1, 1), (qi(2), qi(4)));
    }

    #[test]
    fn ratios() {
        let (u, v) = (q(2, 3), q(5, 7));
        for (s, want) in [("t(3,5)", 1), ("w[[2,1],[1,1]]", 1), ("dj1(2; u^-2 * (1+3u))", 1), ("p", 1), ("sigma", 1), ("dj1(2; (1+u)) . sigma", 1)] {
            assert_eq!(CremonaElem::parse(s).unwrap().log_symplectic_ratio(&u, &v).unwrap(), qi(want), "{s}");
        }
        assert!(matches!(CremonaElem::Sigma.log_symplectic_ratio(&qi(0), &v), Err(Error::ChartDegenerate(_))));
    }

    #[test]
    fn pole_hits() {
        assert!(matches!(CremonaElem::BlancP.apply(&qi(0), &qi(1)), Err(Error::PoleHit(_))));
        let d = CremonaElem::parse("dj1(1; (1+u))").unwrap();
        assert!(matches!(d.apply(&qi(-1), &qi(2)).unwrap(), (_, v) if v.is_zero()));
        let d = CremonaElem::parse("dj1(1; (1+u)^-1)").unwrap();
        assert!(matches!(d.apply(&qi(-1), &qi(2)), Err(Error::PoleHit(_))));
    }

    #[test]
    fn closed_form_composition_matches_pointwise() {
        let a = DeJonquieresElem::new(qi(3), FactorList::parse("(1+u) * u^2").unwrap()).unwrap();
        let b = DeJonquieresElem::new(q(1, 2), FactorList::parse("(1-2u)^-1").unwrap()).unwrap();
        let closed = CremonaElem::DeJonquieres(a.compose(&b));
        let word = CremonaElem::DeJonquieres(a.clone()).compose(&CremonaElem::DeJonquieres(b.clone()));
        assert_eq!(closed.apply(&q(1, 5), &qi(3)).unwrap(), word.apply(&q(1, 5), &qi(3)).unwrap());
        let id = CremonaElem::DeJonquieres(a.compose(&a.inverse()));
        assert_eq!(id.apply(&q(1, 5), &qi(3)).unwrap(), (q(1, 5), qi(3)));
    }

    #[test]
    fn unipotent_commutators() {
        let d = |l: i64, r: &str| DeJonquieresElem::new(qi(l), FactorList::parse(r).unwrap()).unwrap();
        let c = DeJonquieresElem::commutator(&d(1, "(1+u)"), &d(1, "(1+2u)"));
        assert!(c.lambda.is_one() && c.r.is_one());
        let c = DeJonquieresElem::commutator(&d(3, "(1+u)"), &d(5, "(1+u)"));
        assert!(c.lambda.is_one());
        assert_eq!(c.r.at_zero(), Some(qi(1)));
        assert_eq!(c.r.degree(), 0);
        assert!(!c.r.is_one());
    }

    #[test]
    fn normalizer_formula() {
        let w = MonomialElem::new([[2, 1], [1, 1]]).unwrap();
        let t = TorusElem::new(qi(2), qi(3)).unwrap();
        let lhs = CremonaElem::Word(vec![
            CremonaElem::Monomial(w),
            CremonaElem::Torus(t.clone()),
            CremonaElem::Monomial(w.inverse()),
        ]);
        let rhs = CremonaElem::Torus(w.conjugate_torus(&t));
        assert_eq!(lhs.apply(&q(3, 4), &q(5, 2)).unwrap(), rhs.apply(&q(3, 4), &q(5, 2)).unwrap());
        assert_eq!(w.conjugate_torus(&t), TorusElem::new(qi(12), qi(6)).unwrap());
    }
}
