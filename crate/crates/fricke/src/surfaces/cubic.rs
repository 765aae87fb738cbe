use crate::error::{Error, Result};
use crate::numeric::{Field, Rational, SeededSampler};

use super::params::{Family, Params, ParamsV, ParamsVI};

fn c<S: Field>(q: &Rational) -> S {
    S::constant(q)
}

/// `F_VI(x, θ) = x1x2x3 + x1² + x2² + x3² − θ1x1 − θ2x2 − θ3x3 + θ4`.
pub fn f_vi<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> S {
    let [x1, x2, x3] = x;
    x1.clone() * x2.clone() * x3.clone() + x1.sq() + x2.sq() + x3.sq() - x1.scale(&th[0]) - x2.scale(&th[1])
        - x3.scale(&th[2])
        + c(&th[3])
}

/// `F_V(x, θ) = x1x2x3 + x1² + x2² − θ1x1 − θ2x2 − θ3x3 + θ4` with `θ3 = e0`.
pub fn f_v<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> S {
    let [x1, x2, x3] = x;
    x1.clone() * x2.clone() * x3.clone() + x1.sq() + x2.sq() - x1.scale(&th[0]) - x2.scale(&th[1]) - x3.scale(&th[2])
        + c(&th[3])
}

pub fn f_family<S: Field>(family: Family, x: &[S; 3], th: &[Rational; 4]) -> S {
    match family {
        Family::V => f_v(x, th),
        Family::VI => f_vi(x, th),
    }
}

/// Gradient of `F` in `x`, exact.
pub fn gradient(family: Family, x: &[Rational; 3], th: &[Rational; 4]) -> [Rational; 3] {
    let [x1, x2, x3] = x;
    let two = Rational::from(2);
    match family {
        Family::VI => [
            x2 * x3 + &two * x1 - &th[0],
            x3 * x1 + &two * x2 - &th[1],
            x1 * x2 + &two * x3 - &th[2],
        ],
        Family::V => [x2 * x3 + &two * x1 - &th[0], x3 * x1 + &two * x2 - &th[1], x1 * x2 - &th[2]],
    }
}

/// Public entry point: `F` of the given family at `x` for `params`.
pub fn eval_f(family: Family, x: &[Rational; 3], params: &Params) -> Result<Rational> {
    if params.family() != family {
        return Err(Error::FamilyMismatch(format!("{family} point with {} parameters", params.family())));
    }
    Ok(f_family(family, x, &params.theta()))
}

/// Solves `F_V = 0` for `x3`; polar on `x1x2 = e0`.
pub fn lift_x3_v<S: Field>(x1: &S, x2: &S, th: &[Rational; 4]) -> Result<S> {
    let den = x1.clone() * x2.clone() - c(&th[2]);
    let num = x1.sq() + x2.sq() - x1.scale(&th[0]) - x2.scale(&th[1]) + c(&th[3]);
    (-num).div(&den).ok_or_else(|| Error::polar("lift", "x1*x2 = e0"))
}

/// An exact point of `C_V(θ)` or `C_VI(θ)` together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    pub params: Params,
    pub x: [Rational; 3],
}

impl SurfacePoint {
    /// Checks `F = 0`.
    pub fn new(params: Params, x: [Rational; 3]) -> Result<Self> {
        let f = f_family(params.family(), &x, &params.theta());
        if !f.is_zero() {
            return Err(Error::NotOnSurface(format!("F({:?}) = {f}", x)));
        }
        Ok(SurfacePoint { params, x })
    }

    pub(crate) fn unchecked(params: Params, x: [Rational; 3]) -> Self {
        SurfacePoint { params, x }
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn v(params: &ParamsV, x: [Rational; 3]) -> Result<Self> {
        Self::new(Params::V(params.clone()), x)
    }

    pub fn vi(params: &ParamsVI, x: [Rational; 3]) -> Result<Self> {
        Self::new(Params::VI(params.clone()), x)
    }

    pub fn residual(&self) -> Rational {
        f_family(self.family(), &self.x, &self.params.theta())
    }

    /// Canonical key for exact revisit detection.
    pub fn key(&self) -> String {
        format!("{}|{}|{}|{}", self.x[0], self.x[1], self.x[2], self.params.to_json())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family().to_string(),
            "x": self.x.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "params": self.params.to_json(),
        })
    }
}

/// `(x1, x2) ↦ (x1, x2, x3)` on `C_V(θ⁺)`.
pub fn lift_to_cv(x1: &Rational, x2: &Rational, params: &ParamsV) -> Result<SurfacePoint> {
    let x3 = lift_x3_v(x1, x2, &params.theta())?;
    Ok(SurfacePoint::unchecked(Params::V(params.clone()), [x1.clone(), x2.clone(), x3]))
}

const SAMPLE_RETRIES: usize = 64;

/// Random point of `C_V` off `x1x2 = e0` and off the coordinate axes.
pub fn sample_v(params: &ParamsV, sampler: &mut SeededSampler) -> Result<SurfacePoint> {
    for _ in 0..SAMPLE_RETRIES {
        let x1 = sampler.nonzero();
        let x2 = sampler.nonzero();
        if let Ok(p) = lift_to_cv(&x1, &x2, params) {
            return Ok(p);
        }
    }
    Err(Error::SamplerExhausted(SAMPLE_RETRIES))
}

/// A sampled `C_VI` point together with the auxiliary confluence data used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledVI {
    pub point: SurfacePoint,
    pub source: SurfacePoint,
    pub kappa: Rational,
}

/// Random point of `C_VI`, obtained as the confluence image of a random `C_V`
/// point with `κ = e1` and `e0 = e1e2`.
pub fn sample_vi(params: &ParamsVI, sampler: &mut SeededSampler) -> Result<SampledVI> {
    let e = params.eigenvalues()?;
    let kappa = e[0].clone();
    let e0 = &e[0] * &e[1];
    let pv = ParamsV::from_traces(e0, params.a[2].clone(), params.a[3].clone())?;
    let source = sample_v(&pv, sampler)?;
    let image = crate::dynamics::maps::phi_kappa_point(&source, &kappa)?;
    debug_assert_eq!(image.params.theta(), params.theta());
    let point = SurfacePoint::unchecked(Params::VI(params.clone()), image.x);
    Ok(SampledVI { point, source, kappa })
}

/// Samples a point of the family the parameters belong to.
pub fn sample_surface(params: &Params, sampler: &mut SeededSampler) -> Result<SurfacePoint> {
    match params {
        Params::V(p) => {
            p.require_generic()?;
            sample_v(p, sampler)
        }
        Params::VI(p) => {
            p.require_generic()?;
            Ok(sample_vi(p, sampler)?.point)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{jet_eval, q, qi, Dual2};

    fn std_params() -> ParamsV {
        ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap()
    }

    #[test]
    fn identity_rep_point_vi() {
        let p = Params::VI(ParamsVI::from_traces([qi(2), qi(2), qi(2), qi(2)]));
        assert_eq!(eval_f(Family::VI, &[qi(2), qi(2), qi(2)], &p).unwrap(), qi(0));
    }

    #[test]
    fn standard_points_v() {
        let p = Params::V(std_params());
        assert_eq!(eval_f(Family::V, &[qi(1), qi(1), qi(13)], &p).unwrap(), qi(0));
        assert_eq!(eval_f(Family::V, &[qi(51), qi(-3), qi(13)], &p).unwrap(), qi(0));
        assert!(eval_f(Family::VI, &[qi(1), qi(1), qi(13)], &p).is_err());
    }

    #[test]
    fn lifts() {
        let p = std_params();
        assert_eq!(lift_to_cv(&qi(1), &qi(1), &p).unwrap().x[2], qi(13));
        assert_eq!(lift_to_cv(&q(1, 2), &qi(2), &p).unwrap().x[2], q(43, 4));
        assert!(matches!(lift_to_cv(&qi(1), &qi(2), &p), Err(Error::PolarLocus { .. })));
    }

    #[test]
    fn partial_in_x3_by_jets() {
        // F_V with x1, x2 frozen and x3 seeded.
        let th = std_params().theta();
        let (v, d, _) = jet_eval(
            |x3, _| Ok(f_v(&[Dual2::constant(qi(1)), Dual2::constant(qi(1)), x3], &th)),
            &qi(13),
            &qi(0),
        )
        .unwrap();
        assert_eq!(v, qi(0));
        assert_eq!(d, qi(-1));
    }

    #[test]
    fn sampling_is_deterministic_and_on_surface() {
        let p = Params::V(std_params());
        let a = sample_surface(&p, &mut SeededSampler::new(1)).unwrap();
        let b = sample_surface(&p, &mut SeededSampler::new(1)).unwrap();
        assert_eq!(a, b);
        assert!(a.residual().is_zero());
    }

    #[test]
    fn json_record() {
        let p = SurfacePoint::v(&std_params(), [qi(1), qi(1), qi(13)]).unwrap();
        assert_eq!(
            p.to_json().to_string(),
            r#"{"family":"V","x":["1","1","13"],"params":{"e0":"2","a3":"3","a4":"5"}}"#
        );
    }
}
