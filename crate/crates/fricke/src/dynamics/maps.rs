//! Coordinate formulas of the surface maps, written once over [`Field`] so the
//! same code evaluates points and Jacobians.

use crate::error::{Error, Result};
use crate::numeric::{qi, Field, Rational};
use crate::representations::BraidIndex;
use crate::surfaces::{c_value, lift_x3_v, trace_of, Params, ParamsV, ParamsVI, SurfacePoint};

pub(crate) fn k<S: Field>(q: &Rational) -> S {
    S::constant(q)
}

pub(crate) fn divide<S: Field>(num: S, den: &S, map: &str, detail: &str) -> Result<S> {
    num.div(den).ok_or_else(|| Error::polar(map, detail))
}

/// `σ1(x) = (−x1 − x2x3 + θ1, x2, x3)`.
pub fn sigma1<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    let [x1, x2, x3] = x;
    [-x1.clone() - x2.clone() * x3.clone() + k(&th[0]), x2.clone(), x3.clone()]
}

/// `σ2(x) = (x1, −x2 − x1x3 + θ2, x3)`.
pub fn sigma2<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    let [x1, x2, x3] = x;
    [x1.clone(), -x2.clone() - x1.clone() * x3.clone() + k(&th[1]), x3.clone()]
}

pub fn sigma<S: Field>(i: usize, x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    if i == 1 {
        sigma1(x, th)
    } else {
        sigma2(x, th)
    }
}

/// `g = σ1 ∘ σ2`.
pub fn tame_g<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    sigma1(&sigma2(x, th), th)
}

/// `g⁻¹ = σ2 ∘ σ1`.
pub fn tame_g_inv<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    sigma2(&sigma1(x, th), th)
}

/// The pure braid display `x1' = x1x3² + x2x3 − x1 − θ2x3 + θ1`,
/// `x2' = −x1x3 − x2 + θ2`.
pub fn pure_braid_display<S: Field>(x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    let [x1, x2, x3] = x;
    [
        x1.clone() * x3.sq() + x2.clone() * x3.clone() - x1.clone() - x3.scale(&th[1]) + k(&th[0]),
        -x1.clone() * x3.clone() - x2.clone() + k(&th[1]),
        x3.clone(),
    ]
}

/// `h_{i,j}`: `x_i ↦ −x_i + x_jx_k + x_ix_k² − θ_jx_k + θ_i`,
/// `x_j ↦ −x_j − x_ix_k + θ_j`, `x_k` fixed.
pub fn braid_h<S: Field>(which: BraidIndex, x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    let (i, j) = which.pair();
    let kk = 3 - i - j;
    let (xi, xj, xk) = (&x[i], &x[j], &x[kk]);
    let mut out = x.clone();
    out[i] = -xi.clone() + xj.clone() * xk.clone() + xi.clone() * xk.sq() - xk.scale(&th[j]) + k(&th[i]);
    out[j] = -xj.clone() - xi.clone() * xk.clone() + k(&th[j]);
    out
}

/// Inverse of [`braid_h`]: `x_i = −x_i' − x_j'x_k + θ_i`,
/// `x_j = −x_j' − x_ix_k + θ_j`.
pub fn braid_h_inv<S: Field>(which: BraidIndex, x: &[S; 3], th: &[Rational; 4]) -> [S; 3] {
    let (i, j) = which.pair();
    let kk = 3 - i - j;
    let xk = x[kk].clone();
    let xi = -x[i].clone() - x[j].clone() * xk.clone() + k(&th[i]);
    let xj = -x[j].clone() - xi.clone() * xk + k(&th[j]);
    let mut out = x.clone();
    out[i] = xi;
    out[j] = xj;
    out
}

/// Half braid from `C_V(θ(e0))` to `C_V(θ(1/e0))`.
pub fn half_braid_b34<S: Field>(x: &[S; 3], p: &ParamsV) -> ([S; 3], ParamsV) {
    let th = p.theta();
    let ei = p.e0.inv().expect("nonzero e0");
    let [x1, x2, x3] = x;
    let y1 = (-x2.clone() - x1.clone() * x3.clone() + k(&th[1])).scale(&ei);
    let y2 = x1.scale(&ei);
    ([y1, y2, x3.clone()], p.minus())
}

/// Inverse of [`half_braid_b34`], taking the image parameters.
pub fn half_braid_b34_inv<S: Field>(x: &[S; 3], p_image: &ParamsV) -> ([S; 3], ParamsV) {
    let src = p_image.minus();
    let th = src.theta();
    let e0 = &src.e0;
    let [y1, y2, x3] = x;
    let x1 = y2.scale(e0);
    let x2 = k::<S>(&th[1]) - x1.clone() * x3.clone() - y1.scale(e0);
    ([x1, x2, x3.clone()], src)
}

/// `a_κ = (κ + 1/κ, e0/κ + κ/e0, a3, a4)`.
pub fn a_kappa(p: &ParamsV, kappa: &Rational) -> [Rational; 4] {
    [trace_of(kappa), trace_of(&(&p.e0 / kappa)), p.a3.clone(), p.a4.clone()]
}

pub fn params_kappa(p: &ParamsV, kappa: &Rational) -> ParamsVI {
    let a = a_kappa(p, kappa);
    match (&p.e3, &p.e4) {
        (Some(e3), Some(e4)) => ParamsVI::from_eigenvalues([kappa.clone(), &p.e0 / kappa, e3.clone(), e4.clone()])
            .unwrap_or_else(|_| ParamsVI::from_traces(a)),
        _ => ParamsVI::from_traces(a),
    }
}

/// Confluence morphism `C_V(θ⁺) → C_VI(θ_κ)`.
pub fn phi_kappa<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> ([S; 3], ParamsVI) {
    let ei = p.e0.inv().expect("nonzero e0");
    let ki = kappa.inv().expect("nonzero kappa");
    let ke = kappa * &ei;
    let [x1, x2, x3] = x;
    let y1 = x1.scale(&ke) + x2.scale(&ki);
    let y2 = -(x1.clone() * x3.clone()).scale(&ke) + x1.scale(&ki) - x2.scale(&ke)
        + k(&(&p.a3 * kappa + &p.a4 * &ke));
    ([y1, y2, x3.clone()], params_kappa(p, kappa))
}

/// `c_{e1,e2} = κ²/e0 + e0/κ²`: the plane where the confluence is not invertible.
pub fn phi_kappa_polar_value(p: &ParamsV, kappa: &Rational) -> Rational {
    c_value(kappa, &(&p.e0 / kappa))
}

/// Inverse of [`phi_kappa`]; `p` are the source `C_V` parameters.
pub fn phi_kappa_inv<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    let e0 = &p.e0;
    let ki = kappa.inv().expect("nonzero kappa");
    let k2 = kappa * kappa;
    let [y1, y2, y3] = x;
    let den = y3.add_q(&-phi_kappa_polar_value(p, kappa));
    let n1 = -y1.scale(kappa) - y2.scale(&(e0 * &ki)) + k(&(&p.a3 * e0 + &p.a4));
    let n2 = (y1.clone() * y3.clone()).scale(kappa) - y1.scale(&(e0 * &ki)) + y2.scale(kappa)
        - k(&(&p.a3 * &k2 + &p.a4 * &k2 / e0));
    let detail = "x3 = kappa^2/e0 + e0/kappa^2";
    Ok([divide(n1, &den, "phi_kappa_inv", detail)?, divide(n2, &den, "phi_kappa_inv", detail)?, y3.clone()])
}

/// Point-level confluence.
pub fn phi_kappa_point(p: &SurfacePoint, kappa: &Rational) -> Result<SurfacePoint> {
    let pv = p.params.as_v()?;
    let (x, pvi) = phi_kappa(&p.x, pv, kappa);
    Ok(SurfacePoint::unchecked(Params::VI(pvi), x))
}

/// Point-level inverse confluence back to `C_V` with parameters `pv`.
pub fn phi_kappa_inv_point(p: &SurfacePoint, pv: &ParamsV, kappa: &Rational) -> Result<SurfacePoint> {
    let x = phi_kappa_inv(&p.x, pv, kappa)?;
    Ok(SurfacePoint::unchecked(Params::V(pv.clone()), x))
}

/// `g_{2,3}(κ)`: `X1 = e0/x2`, `X2 = x2 − κ²/x2 + κ²x1/e0`, `X3` from the cubic.
pub fn g23<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    let k2 = kappa * kappa;
    let [x1, x2, _] = x;
    let xi = divide(S::int(1), x2, "g23", "x2 = 0")?;
    let big1 = xi.scale(&p.e0);
    let big2 = x2.clone() - xi.scale(&k2) + x1.scale(&(&k2 / &p.e0));
    let big3 = lift_x3_v(&big1, &big2, &p.theta()).map_err(|_| Error::polar("g23", "X1 X2 = e0"))?;
    Ok([big1, big2, big3])
}

/// The expanded third component printed alongside the `g_{2,3}(κ)` formulas;
/// kept only to document that it disagrees with the cubic lift.
pub fn g23_printed_x3(x: &[Rational; 3], p: &ParamsV, kappa: &Rational) -> Rational {
    let th = p.theta();
    let e0 = &p.e0;
    let k2 = kappa * kappa;
    let ki2 = k2.inv().unwrap();
    let [x1, x2, x3] = x;
    &ki2 * x2 * x2 * x3 - (&k2 / (e0 * e0) - &ki2) * x1 * x2 - qi(2) * x2 * x2 / e0
        + (&th[1] / e0 + &ki2 * &th[0]) * x2
        + (&k2 / e0 + e0 * &ki2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;
    use crate::surfaces::{f_v, f_vi};

    fn std() -> ParamsV {
        ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap()
    }

    fn pt() -> [Rational; 3] {
        [qi(1), qi(1), qi(13)]
    }

    #[test]
    fn tame_chain() {
        let th = std().theta();
        assert_eq!(sigma2(&pt(), &th), [qi(1), qi(-3), qi(13)]);
        assert_eq!(sigma1(&[qi(1), qi(-3), qi(13)], &th), [qi(51), qi(-3), qi(13)]);
        assert_eq!(tame_g(&pt(), &th), pure_braid_display(&pt(), &th));
        assert_eq!(tame_g_inv(&tame_g(&pt(), &th), &th), pt());
    }

    #[test]
    fn braid_identity_point() {
        let th = theta_of_twos();
        let x = [qi(2), qi(2), qi(2)];
        for b in BraidIndex::all() {
            assert_eq!(braid_h(b, &x, &th), x);
        }
    }

    fn theta_of_twos() -> [Rational; 4] {
        crate::surfaces::theta_vi(&[qi(2), qi(2), qi(2), qi(2)])
    }

    #[test]
    fn braid_inverse_and_cycle() {
        let th = [q(1, 2), qi(3), q(-2, 7), qi(5)];
        let x = [q(3, 4), qi(-2), q(5, 3)];
        for b in BraidIndex::all() {
            assert_eq!(braid_h_inv(b, &braid_h(b, &x, &th), &th), x);
            assert_eq!(f_vi(&braid_h(b, &x, &th), &th), f_vi(&x, &th));
        }
        let y = braid_h(BraidIndex::B12, &braid_h(BraidIndex::B23, &braid_h(BraidIndex::B31, &x, &th), &th), &th);
        assert_eq!(y, x);
    }

    #[test]
    fn half_braid_example() {
        let (y, p1) = half_braid_b34(&pt(), &std());
        assert_eq!(y, [q(-3, 2), q(1, 2), qi(13)]);
        assert_eq!(p1.e0, q(1, 2));
        assert_eq!(&p1.theta()[..2], &[q(11, 2), q(13, 2)]);
        assert!(f_v(&y, &p1.theta()).is_zero());
        let (z, p2) = half_braid_b34(&y, &p1);
        assert_eq!(z, [qi(51), qi(-3), qi(13)]);
        assert_eq!(p2.theta(), std().theta());
        assert_eq!(half_braid_b34_inv(&y, &p1).0, pt());
    }

    #[test]
    fn confluence_example() {
        let (y, pvi) = phi_kappa(&pt(), &std(), &qi(1));
        assert_eq!(y, [q(3, 2), q(-1, 2), qi(13)]);
        assert_eq!(pvi.a, [qi(2), q(5, 2), qi(3), qi(5)]);
        assert_eq!(pvi.theta(), [q(35, 2), q(37, 2), qi(20), q(461, 4)]);
        assert!(f_vi(&y, &pvi.theta()).is_zero());
        assert_eq!(phi_kappa_inv(&y, &std(), &qi(1)).unwrap(), pt());
    }

    #[test]
    fn confluence_polar_plane() {
        let p = std();
        let c = phi_kappa_polar_value(&p, &qi(1));
        assert_eq!(c, q(5, 2));
        let r = phi_kappa_inv(&[qi(0), qi(0), c], &p, &qi(1));
        assert!(matches!(r, Err(Error::PolarLocus { .. })));
    }

    #[test]
    fn confluent_braid_example() {
        let p = std();
        assert_eq!(g23(&pt(), &p, &qi(1)).unwrap(), [qi(2), q(1, 2), q(31, 4)]);
        assert_eq!(g23_printed_x3(&pt(), &p, &qi(1)), q(135, 4));
        assert!(matches!(g23(&[qi(1), qi(0), qi(0)], &p, &qi(1)), Err(Error::PolarLocus { .. })));
    }
}
