//! Maps defined by their action on a log-canonical chart: Stokes operators,
//! exponential tori, the formal monodromy and the chart forms of the
//! confluent braids.

use crate::error::{Error, Result};
use crate::numeric::{FactorList, Field, Rational};
use crate::surfaces::ParamsV;

use super::cluster::{cluster_pair, from_pair, left_from_right};
use super::maps::k;

fn nonzero<S: Field>(s: &S, map: &str, detail: &str) -> Result<S> {
    s.inv().ok_or_else(|| Error::polar(map, detail))
}

/// `s_m : (y_m, z_m) ↦ (y_m(1 + z_m/e0), z_m)`.
pub fn stokes_s<S: Field>(m: i64, x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, m)?;
    let f = z.scale(&p.e0.inv().unwrap()).add_q(&Rational::one());
    from_pair(m, &(y * f), &z, p)
}

/// `s_m⁻¹ : (y_m, z_m) ↦ (y_m(1 + z_m/e0)⁻¹, z_m)`.
pub fn stokes_s_inv<S: Field>(m: i64, x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, m)?;
    let f = z.scale(&p.e0.inv().unwrap()).add_q(&Rational::one());
    let fi = nonzero(&f, "stokes_inv", "z = -e0")?;
    from_pair(m, &(y * fi), &z, p)
}

/// Exponential torus of `y_m`: `(y_m, z_m) ↦ (y_m, λ z_m)`.
pub fn torus_t<S: Field>(m: i64, lambda: &Rational, x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, m)?;
    from_pair(m, &y, &z.scale(lambda), p)
}

/// Functional torus in the chart `(z_{m−1}, y_m)`: `z_{m−1} ↦ z_{m−1} · r(y_m)`.
pub fn functional_torus<S: Field>(m: i64, r: &FactorList, x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, _) = cluster_pair(x, p, m)?;
    let (_, z_prev) = cluster_pair(x, p, m - 1)?;
    let z_new = z_prev * r.eval(&y)?;
    let y_prev = left_from_right(&z_new, &y, p)?;
    from_pair(m - 1, &y_prev, &z_new, p)
}

/// `m̂ : (y2, z2) ↦ (y2, e0² z2 y2⁻⁴)`.
pub fn formal_monodromy<S: Field>(x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, 2)?;
    let y4 = nonzero(&y, "formal_monodromy", "y2 = 0")?.powi(4).unwrap();
    from_pair(2, &y, &(z * y4).scale(&(&p.e0 * &p.e0)), p)
}

pub fn formal_monodromy_inv<S: Field>(x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, 2)?;
    let y4 = y.powi(4).unwrap();
    from_pair(2, &y, &(z * y4).scale(&(&p.e0 * &p.e0).inv().unwrap()), p)
}

/// `m̂^{1/2} : (y2, z2) ↦ (y2, y2² z2 / e0)`.
pub fn formal_monodromy_sqrt<S: Field>(x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let (y, z) = cluster_pair(x, p, 2)?;
    from_pair(2, &y, &(z * y.sq()).scale(&p.e0.inv().unwrap()), p)
}

/// Chart form of `g_{2,3}(κ)`: `(z1, y2) ↦ (κ²z1y2⁻², (1 + κ²z1y2⁻²/e0) y2)`.
pub fn g23_chart<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    braid_chart(1, x, p, kappa)
}

/// `g_{3,1}(κ)`: the same action in the chart `(z2, y3)`.
pub fn g31<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    braid_chart(2, x, p, kappa)
}

fn braid_chart<S: Field>(m: i64, x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    let k2 = kappa * kappa;
    let (_, z) = cluster_pair(x, p, m)?;
    let (y_next, _) = cluster_pair(x, p, m + 1)?;
    let yi = nonzero(&y_next, "confluent braid", "y = 0")?;
    let zz = (z * yi.sq()).scale(&k2);
    let yy = zz.scale(&p.e0.inv().unwrap()).add_q(&Rational::one()) * y_next;
    let y_left = left_from_right(&zz, &yy, p)?;
    from_pair(m, &y_left, &zz, p)
}

/// `g_{3,2}(κ) : (y1, z1) ↦ (y1 + e0κ⁻²z1/y1, e0²κ⁻²z1/y1²)`.
pub fn g32<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    inverse_braid_chart(1, x, p, kappa)
}

/// `g_{1,3}(κ)`: the same action in the chart `(y2, z2)`.
pub fn g13<S: Field>(x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    inverse_braid_chart(2, x, p, kappa)
}

fn inverse_braid_chart<S: Field>(m: i64, x: &[S; 3], p: &ParamsV, kappa: &Rational) -> Result<[S; 3]> {
    let ki2 = (kappa * kappa).inv().unwrap();
    let (y, z) = cluster_pair(x, p, m)?;
    let yi = nonzero(&y, "confluent braid inverse", "y = 0")?;
    let yy = y + (z.clone() * yi.clone()).scale(&(&p.e0 * &ki2));
    let zz = (z * yi.sq()).scale(&(&p.e0 * &p.e0 * &ki2));
    from_pair(m, &yy, &zz, p)
}

/// `s1` in the coordinates `(y1, z1, x3)`, with `X3` written as a polynomial in
/// `x3`; unlike [`stokes_s`] it stays defined on `z1 = 0`.
pub fn stokes_s1_lifted<S: Field>(x: &[S; 3], p: &ParamsV) -> Result<[S; 3]> {
    let th = p.theta();
    let e0 = &p.e0;
    let ei = e0.inv().unwrap();
    let (y, z) = (x[0].clone(), x[0].clone() * x[1].clone() - k(e0));
    let yi = nonzero(&y, "stokes_lifted", "y1 = 0")?;
    let y2 = y.sq();
    let yi2 = yi.sq();
    let big1 = y.clone() * z.scale(&ei).add_q(&Rational::one());
    let big2 = nonzero(&big1, "stokes_lifted", "y1 (1 + z1/e0) = 0")? * z.add_q(e0);
    let big3 = -(y2.clone() * z.clone()).scale(&(&ei * &ei)) - y2.scale(&(Rational::from(2) * &ei))
        + y.scale(&(&th[0] * &ei))
        + x[2].clone()
        + yi2.clone() * z
        + yi2.scale(&(Rational::from(2) * e0))
        - yi.scale(&th[1]);
    Ok([big1, big2, big3])
}

/// Shift of `x3` under `s1` along a line `z1 = 0, x1 = y1`:
/// `θ1y1/e0 − θ2/y1 − 2y1²/e0 + 2e0/y1²`, the value of [`stokes_s1_lifted`] at `z1 = 0`.
pub fn stokes_line_translation(y1: &Rational, p: &ParamsV) -> Rational {
    let two = Rational::from(2);
    stokes_line_translation_short(y1, p) - &two * y1 * y1 / &p.e0 + &two * &p.e0 / (y1 * y1)
}

/// `θ1y1/e0 − θ2/y1` alone; differs from [`stokes_line_translation`] unless `y1⁴ = e0²`.
pub fn stokes_line_translation_short(y1: &Rational, p: &ParamsV) -> Rational {
    let th = p.theta();
    &th[0] / &p.e0 * y1 - &th[1] / y1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::cluster::cluster_pair;
    use crate::dynamics::maps::{g23, tame_g};
    use crate::numeric::{q, qi};

    fn std() -> ParamsV {
        ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap()
    }

    fn pt() -> [Rational; 3] {
        [qi(1), qi(1), qi(13)]
    }

    #[test]
    fn chain_through_formal_monodromy() {
        let p = std();
        let a = stokes_s(1, &pt(), &p).unwrap();
        assert_eq!(a, [q(1, 2), qi(2), q(43, 4)]);
        assert_eq!(cluster_pair(&a, &p, 2).unwrap(), (qi(2), qi(-20)));
        let b = formal_monodromy(&a, &p).unwrap();
        assert_eq!(cluster_pair(&b, &p, 2).unwrap(), (qi(2), qi(-5)));
        let c = stokes_s(2, &b, &p).unwrap();
        assert_eq!(c, [qi(51), qi(-3), qi(13)]);
        assert_eq!(c, tame_g(&pt(), &p.theta()));
    }

    #[test]
    fn chart_and_display_agree() {
        let p = std();
        for kappa in [qi(1), q(1, 2), qi(3)] {
            assert_eq!(g23_chart(&pt(), &p, &kappa).unwrap(), g23(&pt(), &p, &kappa).unwrap());
        }
    }

    #[test]
    fn inverse_chart_recovers() {
        let p = std();
        let img = g23(&pt(), &p, &qi(1)).unwrap();
        assert_eq!(cluster_pair(&img, &p, 1).unwrap(), (qi(2), qi(-1)));
        assert_eq!(g32(&img, &p, &qi(1)).unwrap(), pt());
    }

    #[test]
    fn translation_on_delta_lines() {
        // x1 = e3 = 3, x2 = e0/x1: a line z1 = 0 with x3 free.
        let p = ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap();
        let y1 = qi(3);
        let x = [y1.clone(), q(4, 3), qi(7)];
        assert!(crate::surfaces::f_v(&x, &p.theta()).is_zero());
        let img = stokes_s1_lifted(&x, &p).unwrap();
        assert_eq!(img[0], x[0]);
        assert_eq!(&img[2] - &x[2], stokes_line_translation(&y1, &p));
        assert_eq!(&img[2] - &x[2], q(10, 9));
        assert_eq!(stokes_line_translation_short(&y1, &p), q(85, 18));
    }

    #[test]
    fn lifted_form_matches_chart() {
        let p = std();
        assert_eq!(stokes_s1_lifted(&pt(), &p).unwrap(), stokes_s(1, &pt(), &p).unwrap());
    }

    #[test]
    fn square_root_squares_to_inverse() {
        let p = std();
        let x = [q(1, 2), qi(2), q(43, 4)];
        let twice = formal_monodromy_sqrt(&formal_monodromy_sqrt(&x, &p).unwrap(), &p).unwrap();
        assert_eq!(twice, formal_monodromy_inv(&x, &p).unwrap());
    }
}
