use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{qi, Rational};

/// Which cubic family a point or parameter set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    V,
    VI,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::V => write!(f, "V"),
            Family::VI => write!(f, "VI"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" | "v" => Ok(Family::V),
            "VI" | "vi" => Ok(Family::VI),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// `c_{α,β} = α/β + β/α`.
pub fn c_value(alpha: &Rational, beta: &Rational) -> Rational {
    alpha / beta + beta / alpha
}

/// `e + 1/e`.
pub fn trace_of(e: &Rational) -> Rational {
    e + e.inv().expect("nonzero eigenvalue")
}

/// A rational root of `t² − a·t + 1`, if one exists (the larger in absolute value).
pub fn eigen_from_trace(a: &Rational) -> Option<Rational> {
    let disc = a * a - qi(4);
    let s = disc.sqrt()?;
    let e = (a + &s) / qi(2);
    if e.is_zero() {
        None
    } else {
        Some(e)
    }
}

/// Parameters of the Painlevé V cubic, stored as `(e0, a3, a4)` with optional
/// rational eigenvalues `e3`, `e4` (`a = e + 1/e`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamsV {
    pub e0: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub e3: Option<Rational>,
    pub e4: Option<Rational>,
    generic: bool,
}

impl ParamsV {
    /// Trace form; eigenvalues are recovered when they are rational.
    pub fn from_traces(e0: Rational, a3: Rational, a4: Rational) -> Result<Self> {
        if e0.is_zero() {
            return Err(Error::NonGenericParams("e0 = 0".into()));
        }
        let e3 = eigen_from_trace(&a3);
        let e4 = eigen_from_trace(&a4);
        let generic = Self::generic_condition(&e0, &a3, &a4);
        Ok(ParamsV { e0, a3, a4, e3, e4, generic })
    }

    pub fn from_eigenvalues(e0: Rational, e3: Rational, e4: Rational) -> Result<Self> {
        if e0.is_zero() || e3.is_zero() || e4.is_zero() {
            return Err(Error::NonGenericParams("zero eigenvalue".into()));
        }
        let a3 = trace_of(&e3);
        let a4 = trace_of(&e4);
        let generic = Self::generic_condition(&e0, &a3, &a4);
        Ok(ParamsV { e0, a3, a4, e3: Some(e3), e4: Some(e4), generic })
    }

    /// Trace form that rejects non-generic parameters.
    pub fn generic(e0: Rational, a3: Rational, a4: Rational) -> Result<Self> {
        let p = Self::from_traces(e0, a3, a4)?;
        p.require_generic()?;
        Ok(p)
    }

    /// `e0 ≠ ±1`, `e3, e4 ≠ ±1` and `e0·e3^{±1}·e4^{±1} ≠ 1`, written in traces.
    /// The last condition is the product over the four sign choices:
    /// `A² + A·a4² + 1 + A(a3² − 2) − e0·a3·a4(A + 1)` with `A = e0²`.
    fn generic_condition(e0: &Rational, a3: &Rational, a4: &Rational) -> bool {
        let two = qi(2);
        if e0 == &qi(1) || e0 == &qi(-1) {
            return false;
        }
        if a3 == &two || a3 == &-&two || a4 == &two || a4 == &-&two {
            return false;
        }
        let a = e0 * e0;
        let prod = &a * &a + &a * a4 * a4 + qi(1) + &a * (a3 * a3 - &two) - e0 * a3 * a4 * (&a + qi(1));
        !prod.is_zero()
    }

    pub fn is_generic(&self) -> bool {
        self.generic
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.generic {
            Ok(())
        } else {
            Err(Error::NonGenericParams(format!("e0={}, a3={}, a4={}", self.e0, self.a3, self.a4)))
        }
    }

    /// `(θ1, θ2, θ3, θ4)` for the `+` sheet.
    pub fn theta(&self) -> [Rational; 4] {
        let e0 = &self.e0;
        [
            &self.a3 + e0 * &self.a4,
            &self.a4 + e0 * &self.a3,
            e0.clone(),
            e0 * e0 + e0 * &self.a3 * &self.a4 + qi(1),
        ]
    }

    /// The `−` sheet: same traces with `e0 ↦ 1/e0`.
    pub fn minus(&self) -> ParamsV {
        ParamsV {
            e0: self.e0.inv().expect("nonzero e0"),
            a3: self.a3.clone(),
            a4: self.a4.clone(),
            e3: self.e3.clone(),
            e4: self.e4.clone(),
            generic: self.generic,
        }
    }

    /// `e0 + 1/e0`.
    pub fn a0(&self) -> Rational {
        trace_of(&self.e0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "e0": self.e0.to_string(),
            "a3": self.a3.to_string(),
            "a4": self.a4.to_string(),
        })
    }
}

/// Parameters of the Painlevé VI cubic: traces `a1..a4` and, when known,
/// rational eigenvalues `e1..e4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamsVI {
    pub a: [Rational; 4],
    pub e: Option<[Rational; 4]>,
    generic: bool,
}

impl ParamsVI {
    pub fn from_traces(a: [Rational; 4]) -> Self {
        let e = {
            let es: Vec<Option<Rational>> = a.iter().map(eigen_from_trace).collect();
            if es.iter().all(Option::is_some) {
                let v: Vec<Rational> = es.into_iter().map(Option::unwrap).collect();
                Some([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
            } else {
                None
            }
        };
        let mut p = ParamsVI { a, e: None, generic: false };
        p.e = e;
        p.generic = p.generic_condition();
        p
    }

    pub fn from_eigenvalues(e: [Rational; 4]) -> Result<Self> {
        if e.iter().any(Rational::is_zero) {
            return Err(Error::NonGenericParams("zero eigenvalue".into()));
        }
        let a = [trace_of(&e[0]), trace_of(&e[1]), trace_of(&e[2]), trace_of(&e[3])];
        let mut p = ParamsVI { a, e: Some(e), generic: false };
        p.generic = p.generic_condition();
        Ok(p)
    }

    /// Eigenvalues `≠ ±1` and no signed product `e1^±e2^±e3^±e4^± = 1`.
    /// Without rational eigenvalues only the trace conditions `a_i ≠ ±2` are checked.
    fn generic_condition(&self) -> bool {
        let two = qi(2);
        if self.a.iter().any(|a| a == &two || a == &-&two) {
            return false;
        }
        if let Some(e) = &self.e {
            for mask in 0..16u32 {
                let prod: Rational = (0..4)
                    .map(|i| if mask & (1 << i) != 0 { e[i].inv().unwrap() } else { e[i].clone() })
                    .product();
                if prod.is_one() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_generic(&self) -> bool {
        self.generic
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.generic {
            Ok(())
        } else {
            Err(Error::NonGenericParams(format!("a = {:?}", self.a)))
        }
    }

    pub fn eigenvalues(&self) -> Result<&[Rational; 4]> {
        self.e.as_ref().ok_or_else(|| Error::IrrationalSplitting("eigenvalues are not rational".into()))
    }

    pub fn theta(&self) -> [Rational; 4] {
        theta_vi(&self.a)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a1": self.a[0].to_string(),
            "a2": self.a[1].to_string(),
            "a3": self.a[2].to_string(),
            "a4": self.a[3].to_string(),
        })
    }
}

/// `θ_i = a_i a_4 + a_j a_k`, `θ_4 = a1a2a3a4 + Σa_i² − 4`.
pub fn theta_vi(a: &[Rational; 4]) -> [Rational; 4] {
    let [a1, a2, a3, a4] = a;
    [
        a1 * a4 + a2 * a3,
        a2 * a4 + a3 * a1,
        a3 * a4 + a1 * a2,
        a1 * a2 * a3 * a4 + a.iter().map(|x| x * x).sum::<Rational>() - qi(4),
    ]
}

/// Parameters of either family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Params {
    V(ParamsV),
    VI(ParamsVI),
}

impl Params {
    pub fn family(&self) -> Family {
        match self {
            Params::V(_) => Family::V,
            Params::VI(_) => Family::VI,
        }
    }

    pub fn theta(&self) -> [Rational; 4] {
        match self {
            Params::V(p) => p.theta(),
            Params::VI(p) => p.theta(),
        }
    }

    pub fn as_v(&self) -> Result<&ParamsV> {
        match self {
            Params::V(p) => Ok(p),
            Params::VI(_) => Err(Error::FamilyMismatch("expected V parameters".into())),
        }
    }

    pub fn as_vi(&self) -> Result<&ParamsVI> {
        match self {
            Params::VI(p) => Ok(p),
            Params::V(_) => Err(Error::FamilyMismatch("expected VI parameters".into())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Params::V(p) => p.to_json(),
            Params::VI(p) => p.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn standard_theta() {
        let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
        assert_eq!(p.theta(), [qi(13), qi(11), qi(2), qi(35)]);
        assert!(p.is_generic());
        assert_eq!(p.minus().theta()[2], q(1, 2));
    }

    #[test]
    fn genericity_matches_eigenvalue_products() {
        // e0 e3 e4 = 1 with e0 = 1/6, e3 = 2, e4 = 3
        let p = ParamsV::from_eigenvalues(q(1, 6), qi(2), qi(3)).unwrap();
        assert!(!p.is_generic());
        let p = ParamsV::from_eigenvalues(qi(3), qi(2), q(3, 2)).unwrap();
        // e0 e3^-1 e4^-1 = 3 · 1/2 · 2/3 = 1
        assert!(!p.is_generic());
        assert!(ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap().is_generic());
        assert!(ParamsV::generic(qi(1), qi(3), qi(5)).is_err());
    }

    #[test]
    fn eigenvalues_recovered_from_traces() {
        let p = ParamsV::from_traces(qi(4), q(10, 3), q(5, 2)).unwrap();
        assert_eq!(p.e3, Some(qi(3)));
        assert_eq!(p.e4, Some(qi(2)));
        assert_eq!(ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap().e3, None);
    }

    #[test]
    fn vi_theta_identity_rep() {
        let p = ParamsVI::from_traces([qi(2), qi(2), qi(2), qi(2)]);
        assert_eq!(p.theta(), [qi(8), qi(8), qi(8), qi(28)]);
        assert!(!p.is_generic());
    }

    #[test]
    fn c_symmetries() {
        let (a, b) = (qi(2), qi(3));
        assert_eq!(c_value(&a, &b), q(13, 6));
        assert_eq!(c_value(&a, &b), c_value(&b, &a));
        assert_eq!(c_value(&a, &b), c_value(&a.inv().unwrap(), &b.inv().unwrap()));
    }
}
