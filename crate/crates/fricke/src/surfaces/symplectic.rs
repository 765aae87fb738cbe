use crate::error::{Error, Result};
use crate::numeric::{Dual2, Rational};

use super::cubic::{gradient, SurfacePoint};
use super::params::Params;

/// Jet of the point in the `(x1, x2)` chart: `x1`, `x2` are seeded and `x3`
/// carries the implicit derivatives `−F_{x_i}/F_{x3}`.
pub fn chart_jet(p: &SurfacePoint) -> Result<[Dual2; 3]> {
    let g = gradient(p.family(), &p.x, &p.params.theta());
    let fx3 = &g[2];
    if fx3.is_zero() {
        return Err(Error::ChartDegenerate("F_x3 vanishes at the source".into()));
    }
    let d1 = -(&g[0] / fx3);
    let d2 = -(&g[1] / fx3);
    Ok([Dual2::var1(p.x[0].clone()), Dual2::var2(p.x[1].clone()), Dual2::new(p.x[2].clone(), d1, d2)])
}

/// `J · F_{x3}(source) / F_{x3}(target)` where `J` is the Jacobian determinant
/// of the first two target coordinates in the `(x1, x2)` chart. Equals `+1`
/// for maps preserving `dx1∧dx2/F_{x3}` and `−1` for maps reversing it.
pub fn symplectic_ratio_with<F>(map: F, p: &SurfacePoint) -> Result<Rational>
where
    F: Fn(&[Dual2; 3], &Params) -> Result<([Dual2; 3], Params)>,
{
    let jet = chart_jet(p)?;
    let (img, tparams) = map(&jet, &p.params)?;
    let target: [Rational; 3] = [img[0].value.clone(), img[1].value.clone(), img[2].value.clone()];
    let src_fx3 = gradient(p.family(), &p.x, &p.params.theta())[2].clone();
    let tgt_fx3 = gradient(tparams.family(), &target, &tparams.theta())[2].clone();
    if tgt_fx3.is_zero() {
        return Err(Error::ChartDegenerate("F_x3 vanishes at the target".into()));
    }
    let j = &img[0].d1 * &img[1].d2 - &img[0].d2 * &img[1].d1;
    Ok(j * src_fx3 / tgt_fx3)
}
