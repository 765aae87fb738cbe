use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{FactorList, Field, Rational};
use crate::representations::BraidIndex;
use crate::surfaces::{symplectic_ratio_with, Family, Params, ParamsV, SurfacePoint};

use super::canonical::{
    formal_monodromy, formal_monodromy_inv, formal_monodromy_sqrt, functional_torus, g13, g31, g32, stokes_s,
    stokes_s_inv, torus_t,
};
use super::maps::{
    braid_h, braid_h_inv, g23, half_braid_b34, half_braid_b34_inv, k, phi_kappa, phi_kappa_inv, sigma1, sigma2,
    tame_g, tame_g_inv,
};

/// One named map with its exact parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Identity,
    Sigma1,
    Sigma2,
    G,
    GInv,
    HalfBraid,
    HalfBraidInv,
    H(BraidIndex),
    HInv(BraidIndex),
    /// Confluence with parameter κ.
    Phi(Rational),
    /// Inverse confluence with κ and, when the target parameters do not carry
    /// rational eigenvalues, an explicit `e0`.
    PhiInv(Rational, Option<Rational>),
    G23(Rational),
    G32(Rational),
    G31(Rational),
    G13(Rational),
    Stokes(i64),
    StokesInv(i64),
    Torus(i64, Rational),
    FunctionalTorus(i64, FactorList),
    FormalMonodromy,
    FormalMonodromyInv,
    FormalMonodromySqrt,
    FormalMonodromySqrtInv,
    /// Adds a constant to `x1`; used to plant faults in the harness.
    Shift(Rational),
}

fn pv(params: &Params) -> Result<&ParamsV> {
    params.as_v()
}

impl Generator {
    pub fn source(&self) -> Family {
        match self {
            Generator::H(_) | Generator::HInv(_) | Generator::PhiInv(..) => Family::VI,
            _ => Family::V,
        }
    }

    /// Declared sign of the pulled-back area form.
    pub fn declared_sign(&self) -> i32 {
        match self {
            Generator::Sigma1 | Generator::Sigma2 | Generator::HalfBraid | Generator::HalfBraidInv => -1,
            _ => 1,
        }
    }

    pub fn polar_description(&self) -> &'static str {
        match self {
            Generator::PhiInv(..) => "x3 = kappa^2/e0 + e0/kappa^2",
            Generator::G23(_) => "x2 = 0 or X1 X2 = e0",
            Generator::G32(_) | Generator::G13(_) | Generator::G31(_) => "chart coordinate y = 0 or z = 0",
            Generator::Stokes(_) | Generator::StokesInv(_) => "z_k = 0, y_k = 0 or z_k = -e0 along the chart walk",
            Generator::Torus(..) | Generator::FunctionalTorus(..) => "chart walk hits y = 0 or z = 0",
            Generator::FormalMonodromy
            | Generator::FormalMonodromyInv
            | Generator::FormalMonodromySqrt
            | Generator::FormalMonodromySqrtInv => "y2 = 0 or z2 = 0",
            _ => "none (polynomial)",
        }
    }

    pub fn inverse(&self) -> Result<Generator> {
        Ok(match self {
            Generator::Identity => Generator::Identity,
            Generator::Sigma1 => Generator::Sigma1,
            Generator::Sigma2 => Generator::Sigma2,
            Generator::G => Generator::GInv,
            Generator::GInv => Generator::G,
            Generator::HalfBraid => Generator::HalfBraidInv,
            Generator::HalfBraidInv => Generator::HalfBraid,
            Generator::H(b) => Generator::HInv(*b),
            Generator::HInv(b) => Generator::H(*b),
            Generator::Phi(kp) => Generator::PhiInv(kp.clone(), None),
            Generator::PhiInv(kp, _) => Generator::Phi(kp.clone()),
            Generator::G23(kp) => Generator::G32(kp.clone()),
            Generator::G32(kp) => Generator::G23(kp.clone()),
            Generator::G31(kp) => Generator::G13(kp.clone()),
            Generator::G13(kp) => Generator::G31(kp.clone()),
            Generator::Stokes(m) => Generator::StokesInv(*m),
            Generator::StokesInv(m) => Generator::Stokes(*m),
            Generator::Torus(m, l) => {
                Generator::Torus(*m, l.inv().ok_or_else(|| Error::Parse("torus parameter 0".into()))?)
            }
            Generator::FunctionalTorus(m, r) => Generator::FunctionalTorus(*m, r.inv()?),
            Generator::FormalMonodromy => Generator::FormalMonodromyInv,
            Generator::FormalMonodromyInv => Generator::FormalMonodromy,
            Generator::FormalMonodromySqrt => Generator::FormalMonodromySqrtInv,
            Generator::FormalMonodromySqrtInv => Generator::FormalMonodromySqrt,
            Generator::Shift(c) => Generator::Shift(-c.clone()),
        })
    }

    /// Applies the map to coordinates over any [`Field`], returning the image
    /// and its parameters.
    pub fn apply<S: Field>(&self, x: &[S; 3], params: &Params) -> Result<([S; 3], Params)> {
        let any_family = matches!(self, Generator::Identity | Generator::Shift(_));
        if !any_family && params.family() != self.source() {
            return Err(Error::FamilyMismatch(format!("{self} expects {} parameters", self.source())));
        }
        let same = |y: [S; 3]| Ok((y, params.clone()));
        match self {
            Generator::Identity => same(x.clone()),
            Generator::Sigma1 => same(sigma1(x, &params.theta())),
            Generator::Sigma2 => same(sigma2(x, &params.theta())),
            Generator::G => same(tame_g(x, &params.theta())),
            Generator::GInv => same(tame_g_inv(x, &params.theta())),
            Generator::HalfBraid => {
                let (y, p) = half_braid_b34(x, pv(params)?);
                Ok((y, Params::V(p)))
            }
            Generator::HalfBraidInv => {
                let (y, p) = half_braid_b34_inv(x, pv(params)?);
                Ok((y, Params::V(p)))
            }
            Generator::H(b) => same(braid_h(*b, x, &params.theta())),
            Generator::HInv(b) => same(braid_h_inv(*b, x, &params.theta())),
            Generator::Phi(kp) => {
                let (y, p) = phi_kappa(x, pv(params)?, kp);
                Ok((y, Params::VI(p)))
            }
            Generator::PhiInv(kp, e0) => {
                let vi = params.as_vi()?;
                let e0 = match e0 {
                    Some(e) => e.clone(),
                    None => {
                        let e = vi.eigenvalues()?;
                        &e[0] * &e[1]
                    }
                };
                let target = match &vi.e {
                    Some(e) => ParamsV::from_eigenvalues(e0, e[2].clone(), e[3].clone())?,
                    None => ParamsV::from_traces(e0, vi.a[2].clone(), vi.a[3].clone())?,
                };
                let y = phi_kappa_inv(x, &target, kp)?;
                Ok((y, Params::V(target)))
            }
            Generator::G23(kp) => same(g23(x, pv(params)?, kp)?),
            Generator::G32(kp) => same(g32(x, pv(params)?, kp)?),
            Generator::G31(kp) => same(g31(x, pv(params)?, kp)?),
            Generator::G13(kp) => same(g13(x, pv(params)?, kp)?),
            Generator::Stokes(m) => same(stokes_s(*m, x, pv(params)?)?),
            Generator::StokesInv(m) => same(stokes_s_inv(*m, x, pv(params)?)?),
            Generator::Torus(m, l) => same(torus_t(*m, l, x, pv(params)?)?),
            Generator::FunctionalTorus(m, r) => same(functional_torus(*m, r, x, pv(params)?)?),
            Generator::FormalMonodromy => same(formal_monodromy(x, pv(params)?)?),
            Generator::FormalMonodromyInv => same(formal_monodromy_inv(x, pv(params)?)?),
            Generator::FormalMonodromySqrt => same(formal_monodromy_sqrt(x, pv(params)?)?),
            Generator::FormalMonodromySqrtInv => {
                // (y2, z2) ↦ (y2, e0 z2 / y2²) undoes the square root.
                let p = pv(params)?;
                let (y, z) = super::cluster::cluster_pair(x, p, 2)?;
                let yi2 = y.inv().ok_or_else(|| Error::polar("formal_monodromy_sqrt_inv", "y2 = 0"))?.sq();
                same(super::cluster::from_pair(2, &y, &(z * yi2).scale(&p.e0), p)?)
            }
            Generator::Shift(c) => {
                let mut y = x.clone();
                y[0] = y[0].clone() + k(c);
                same(y)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |b: &BraidIndex| match b {
            BraidIndex::B12 => "12",
            BraidIndex::B23 => "23",
            BraidIndex::B31 => "31",
        };
        match self {
            Generator::Identity => write!(f, "id"),
            Generator::Sigma1 => write!(f, "sigma1"),
            Generator::Sigma2 => write!(f, "sigma2"),
            Generator::G => write!(f, "g"),
            Generator::GInv => write!(f, "g^-1"),
            Generator::HalfBraid => write!(f, "b34"),
            Generator::HalfBraidInv => write!(f, "b34^-1"),
            Generator::H(i) => write!(f, "h{}", b(i)),
            Generator::HInv(i) => write!(f, "h{}^-1", b(i)),
            Generator::Phi(kp) => write!(f, "phi({kp})"),
            Generator::PhiInv(kp, None) => write!(f, "phiinv({kp})"),
            Generator::PhiInv(kp, Some(e0)) => write!(f, "phiinv({kp},{e0})"),
            Generator::G23(kp) => write!(f, "g23({kp})"),
            Generator::G32(kp) => write!(f, "g32({kp})"),
            Generator::G31(kp) => write!(f, "g31({kp})"),
            Generator::G13(kp) => write!(f, "g13({kp})"),
            Generator::Stokes(m) => write!(f, "s({m})"),
            Generator::StokesInv(m) => write!(f, "s({m})^-1"),
            Generator::Torus(m, l) => write!(f, "t({m},{l})"),
            Generator::FunctionalTorus(m, r) => write!(f, "ft({m};{r})"),
            Generator::FormalMonodromy => write!(f, "m"),
            Generator::FormalMonodromyInv => write!(f, "m^-1"),
            Generator::FormalMonodromySqrt => write!(f, "mhalf"),
            Generator::FormalMonodromySqrtInv => write!(f, "mhalf^-1"),
            Generator::Shift(c) => write!(f, "shift({c})"),
        }
    }
}

/// A composite map `f1 ∘ f2 ∘ … ∘ fn`; `fn` acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceMap {
    pub name: String,
    pub word: Vec<Generator>,
}

impl SurfaceMap {
    pub fn new(name: &str, word: Vec<Generator>) -> Self {
        SurfaceMap { name: name.to_string(), word }
    }

    pub fn single(g: Generator) -> Self {
        SurfaceMap { name: g.to_string(), word: vec![g] }
    }

    pub fn identity() -> Self {
        Self::single(Generator::Identity)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SurfaceMap) -> SurfaceMap {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        SurfaceMap { name: format!("{} . {}", self.name, other.name), word }
    }

    pub fn inverse(&self) -> Result<SurfaceMap> {
        let word = self.word.iter().rev().map(Generator::inverse).collect::<Result<Vec<_>>>()?;
        Ok(SurfaceMap { name: format!("({})^-1", self.name), word })
    }

    pub fn pow(&self, n: i64) -> Result<SurfaceMap> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut word = Vec::new();
        for _ in 0..n.unsigned_abs() {
            word.extend(base.word.iter().cloned());
        }
        if word.is_empty() {
            word.push(Generator::Identity);
        }
        Ok(SurfaceMap { name: format!("({})^{n}", self.name), word })
    }

    pub fn source(&self) -> Family {
        self.word.last().map(Generator::source).unwrap_or(Family::V)
    }

    pub fn declared_sign(&self) -> i32 {
        self.word.iter().map(Generator::declared_sign).product()
    }

    pub fn apply<S: Field>(&self, x: &[S; 3], params: &Params) -> Result<([S; 3], Params)> {
        let mut cur = (x.clone(), params.clone());
        for g in self.word.iter().rev() {
            cur = g.apply(&cur.0, &cur.1)?;
        }
        Ok(cur)
    }

    pub fn eval(&self, p: &SurfacePoint) -> Result<SurfacePoint> {
        let (x, params) = self.apply(&p.x, &p.params)?;
        Ok(SurfacePoint::unchecked(params, x))
    }

    /// Jacobian-based ratio of area forms at `p`; see [`symplectic_ratio_with`].
    pub fn symplectic_ratio(&self, p: &SurfacePoint) -> Result<Rational> {
        symplectic_ratio_with(|jet, params| self.apply(jet, params), p)
    }

    /// Parses `"g23(1/2) . s1 . g^-1"`.
    pub fn parse(s: &str) -> Result<SurfaceMap> {
        let mut word = Vec::new();
        for tok in split_word(s) {
            word.extend(parse_token(tok.trim())?.word);
        }
        if word.is_empty() {
            return Err(Error::Parse(format!("empty word {s:?}")));
        }
        Ok(SurfaceMap { name: s.trim().to_string(), word })
    }
}

impl fmt::Display for SurfaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" . "))
    }
}

fn split_word(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '.' | '∘' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_q(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("bad rational {s:?}: {}", e.0)))
}

fn parse_i(s: &str) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_token(tok: &str) -> Result<SurfaceMap> {
    let err = || Error::Parse(format!("unknown generator {tok:?}"));
    let (body, power) = match tok.rfind('^') {
        Some(i) if !tok[i..].contains(')') => (tok[..i].trim(), parse_i(&tok[i + 1..])?),
        _ => (tok, 1),
    };
    let (name, args) = match body.find('(') {
        Some(i) => {
            let inner = body[i + 1..].strip_suffix(')').ok_or_else(err)?;
            (body[..i].trim(), Some(inner))
        }
        None => (body, None),
    };
    let one_q = || args.map(parse_q).ok_or_else(err)?;
    let gen = match (name, args) {
        ("id", None) => Generator::Identity,
        ("sigma1" | "σ1", None) => Generator::Sigma1,
        ("sigma2" | "σ2", None) => Generator::Sigma2,
        ("g" | "g12", None) => Generator::G,
        ("b34", None) => Generator::HalfBraid,
        ("h12", None) => Generator::H(BraidIndex::B12),
        ("h23", None) => Generator::H(BraidIndex::B23),
        ("h31", None) => Generator::H(BraidIndex::B31),
        ("phi", Some(_)) => Generator::Phi(one_q()?),
        ("phiinv", Some(a)) => {
            let parts: Vec<&str> = a.split(',').collect();
            match parts.as_slice() {
                [kp] => Generator::PhiInv(parse_q(kp)?, None),
                [kp, e0] => Generator::PhiInv(parse_q(kp)?, Some(parse_q(e0)?)),
                _ => return Err(err()),
            }
        }
        ("g23", Some(_)) => Generator::G23(one_q()?),
        ("g32", Some(_)) => Generator::G32(one_q()?),
        ("g31", Some(_)) => Generator::G31(one_q()?),
        ("g13", Some(_)) => Generator::G13(one_q()?),
        ("s", Some(a)) => Generator::Stokes(parse_i(a)?),
        ("m" | "mhat", None) => Generator::FormalMonodromy,
        ("mhalf", None) => Generator::FormalMonodromySqrt,
        ("t", Some(a)) => {
            let (m, l) = a.split_once(',').ok_or_else(err)?;
            Generator::Torus(parse_i(m)?, parse_q(l)?)
        }
        ("ft", Some(a)) => {
            let (m, r) = a.split_once(';').ok_or_else(err)?;
            Generator::FunctionalTorus(parse_i(m)?, FactorList::parse(r)?)
        }
        ("shift", Some(_)) => Generator::Shift(one_q()?),
        (n, None) if n.starts_with('s') && n.len() > 1 => Generator::Stokes(parse_i(&n[1..])?),
        (n, Some(a)) if n.starts_with('t') && n.len() > 1 => Generator::Torus(parse_i(&n[1..])?, parse_q(a)?),
        (n, Some(a)) if n.starts_with("ft") && n.len() > 2 => {
            Generator::FunctionalTorus(parse_i(&n[2..])?, FactorList::parse(a)?)
        }
        _ => return Err(err()),
    };
    SurfaceMap::single(gen).pow(power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{q, qi};

    fn std_point() -> SurfacePoint {
        let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
        SurfacePoint::v(&p, [qi(1), qi(1), qi(13)]).unwrap()
    }

    #[test]
    fn parse_grammar() {
        let m = SurfaceMap::parse("g23(1/2) . s1 . g^-1").unwrap();
        assert_eq!(m.word, vec![Generator::G23(q(1, 2)), Generator::Stokes(1), Generator::GInv]);
        let t = SurfaceMap::parse("t2(3) . ft2(u^2) . s(-1)^2").unwrap();
        assert_eq!(t.word.len(), 4);
        assert!(SurfaceMap::parse("nonsense").is_err());
        assert!(SurfaceMap::parse("g23(x)").is_err());
    }

    #[test]
    fn composition_order() {
        // s2 ∘ m ∘ s1 applies s1 first.
        let m = SurfaceMap::parse("s2 . m . s1").unwrap();
        assert_eq!(m.eval(&std_point()).unwrap().x, [qi(51), qi(-3), qi(13)]);
    }

    #[test]
    fn inverse_word() {
        let m = SurfaceMap::parse("g23(2) . s1 . b34").unwrap();
        let id = m.inverse().unwrap().compose(&m);
        assert_eq!(id.eval(&std_point()).unwrap().x, std_point().x);
    }

    #[test]
    fn signs() {
        assert_eq!(SurfaceMap::parse("sigma1").unwrap().symplectic_ratio(&std_point()).unwrap(), qi(-1));
        assert_eq!(SurfaceMap::parse("g").unwrap().symplectic_ratio(&std_point()).unwrap(), qi(1));
        assert_eq!(SurfaceMap::parse("id").unwrap().symplectic_ratio(&std_point()).unwrap(), qi(1));
    }
}
