//! Log-canonical coordinates `(y_k, z_k)` on `C_V` and their exchange relations
//! `y_k y_{k+1} = P(z_k)`, `z_{k−1} z_k = Q(y_k)` with `Q = Q1` for odd and
//! `Q = Q2` for even `k`.

use crate::error::{Error, Result};
use crate::numeric::{exact_divide, BiLaurent, Field, Rational};
use crate::surfaces::{lift_x3_v, Params, ParamsV, SurfacePoint};

use super::maps::k;

/// `Q1(t) = t⁴ − θ1t³ + θ4t² − e0θ2t + e0²`, constant term first.
pub fn q1_coeffs(p: &ParamsV) -> [Rational; 5] {
    let th = p.theta();
    let e0 = &p.e0;
    [e0 * e0, -(e0 * &th[1]), th[3].clone(), -th[0].clone(), Rational::one()]
}

/// `Q2(t) = t⁴ − θ2t³ + θ4t² − e0θ1t + e0²`.
pub fn q2_coeffs(p: &ParamsV) -> [Rational; 5] {
    let th = p.theta();
    let e0 = &p.e0;
    [e0 * e0, -(e0 * &th[0]), th[3].clone(), -th[1].clone(), Rational::one()]
}

/// The quartic attached to `y_m`.
pub fn q_for(m: i64, p: &ParamsV) -> [Rational; 5] {
    if m.rem_euclid(2) == 1 {
        q1_coeffs(p)
    } else {
        q2_coeffs(p)
    }
}

pub fn poly_eval<S: Field>(coeffs: &[Rational], t: &S) -> S {
    coeffs.iter().rev().fold(S::int(0), |acc, c| acc * t.clone() + k(c))
}

fn div_or<S: Field>(num: S, den: &S, what: &str) -> Result<S> {
    num.div(den).ok_or_else(|| Error::ZeroDenominator(what.to_string()))
}

/// `(y1, z1) = (x1, x1x2 − e0)`.
pub fn seed_pair<S: Field>(x: &[S; 3], p: &ParamsV) -> (S, S) {
    (x[0].clone(), x[0].clone() * x[1].clone() - k(&p.e0))
}

/// Moves `(y_m, z_m)` to `(y_{m+1}, z_{m+1})`.
pub fn step_up<S: Field>(m: i64, y: &S, z: &S, p: &ParamsV) -> Result<(S, S)> {
    let y_next = div_or(z.add_q(&p.e0), y, &format!("y_{m} = 0"))?;
    let z_next = div_or(poly_eval(&q_for(m + 1, p), &y_next), z, &format!("z_{m} = 0"))?;
    Ok((y_next, z_next))
}

/// Moves `(y_m, z_m)` to `(y_{m−1}, z_{m−1})`.
pub fn step_down<S: Field>(m: i64, y: &S, z: &S, p: &ParamsV) -> Result<(S, S)> {
    let z_prev = div_or(poly_eval(&q_for(m, p), y), z, &format!("z_{m} = 0"))?;
    let y_prev = div_or(z_prev.add_q(&p.e0), y, &format!("y_{m} = 0"))?;
    Ok((y_prev, z_prev))
}

/// `(y_m, z_m)` at a point.
pub fn cluster_pair<S: Field>(x: &[S; 3], p: &ParamsV, m: i64) -> Result<(S, S)> {
    let (mut y, mut z) = seed_pair(x, p);
    let mut idx = 1;
    while idx < m {
        (y, z) = step_up(idx, &y, &z, p)?;
        idx += 1;
    }
    while idx > m {
        (y, z) = step_down(idx, &y, &z, p)?;
        idx -= 1;
    }
    Ok((y, z))
}

/// Inverse of the seed chart: `x1 = y1`, `x2 = (z1 + e0)/y1`, `x3` from the cubic.
pub fn p1_inverse<S: Field>(y1: &S, z1: &S, p: &ParamsV) -> Result<[S; 3]> {
    if z1.is_zero() {
        return Err(Error::ZeroDenominator("z1 = 0".into()));
    }
    let x2 = div_or(z1.add_q(&p.e0), y1, "y1 = 0")?;
    let x3 = lift_x3_v(y1, &x2, &p.theta()).map_err(|_| Error::ZeroDenominator("z1 = 0".into()))?;
    Ok([y1.clone(), x2, x3])
}

/// Point with `(y_m, z_m) = (y, z)`.
pub fn from_pair<S: Field>(m: i64, y: &S, z: &S, p: &ParamsV) -> Result<[S; 3]> {
    let (mut y, mut z) = (y.clone(), z.clone());
    let mut idx = m;
    while idx > 1 {
        (y, z) = step_down(idx, &y, &z, p)?;
        idx -= 1;
    }
    while idx < 1 {
        (y, z) = step_up(idx, &y, &z, p)?;
        idx += 1;
    }
    p1_inverse(&y, &z, p)
}

/// `(y_{m}, z_m)` from the right chart `(z_m, y_{m+1})`.
pub fn left_from_right<S: Field>(z: &S, y_next: &S, p: &ParamsV) -> Result<S> {
    div_or(z.add_q(&p.e0), y_next, "y_{m+1} = 0")
}

/// Values `(y_m, z_m)` for `m` in `lo..=hi`, computed by walking from the seed.
pub fn cluster_values(point: &SurfacePoint, lo: i64, hi: i64) -> Result<Vec<(i64, Rational, Rational)>> {
    let p = point.params.as_v()?;
    (lo..=hi)
        .map(|m| cluster_pair(&point.x, p, m).map(|(y, z)| (m, y, z)))
        .collect()
}

/// `y_m` (`which = 'y'`) or `z_m` at a point.
pub fn cluster_coord(point: &SurfacePoint, m: i64, which: char) -> Result<Rational> {
    let p = point.params.as_v()?;
    let (y, z) = cluster_pair(&point.x, p, m)?;
    Ok(if which == 'y' { y } else { z })
}

/// Point-level [`p1_inverse`].
pub fn p1_inverse_point(y1: &Rational, z1: &Rational, p: &ParamsV) -> Result<SurfacePoint> {
    let x = p1_inverse(y1, z1, p)?;
    Ok(SurfacePoint::unchecked(Params::V(p.clone()), x))
}

/// The sequence entries as Laurent polynomials in the seed `(u, v) = (y1, z1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterState {
    pub index: i64,
    pub y: BiLaurent,
    pub z: BiLaurent,
}

/// Failure location in the symbolic recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFailure {
    pub index: i64,
    pub error: Error,
}

fn check_relations(states: &[ClusterState], p: &ParamsV) -> std::result::Result<(), LaurentFailure> {
    let e0 = BiLaurent::constant(p.e0.clone());
    for w in states.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if &a.y * &b.y != &a.z + &e0 {
            return Err(LaurentFailure { index: a.index, error: Error::DivisionFailure { remainder: "P relation".into() } });
        }
        if &a.z * &b.z != b.y.compose_poly(&q_for(b.index, p)) {
            return Err(LaurentFailure { index: b.index, error: Error::DivisionFailure { remainder: "Q relation".into() } });
        }
    }
    Ok(())
}

/// Runs the exchange recurrence symbolically for `−big_k ≤ m ≤ big_k`,
/// dividing exactly at each step, then checks every relation as an identity.
pub fn cluster_sequence_laurent(p: &ParamsV, big_k: i64) -> std::result::Result<Vec<ClusterState>, LaurentFailure> {
    let e0 = BiLaurent::constant(p.e0.clone());
    let seed = ClusterState { index: 1, y: BiLaurent::u(), z: BiLaurent::v() };
    let mut up = vec![seed.clone()];
    while up.last().unwrap().index < big_k {
        let s = up.last().unwrap();
        let m = s.index;
        let y = exact_divide(&(&s.z + &e0), &s.y).map_err(|error| LaurentFailure { index: m + 1, error })?;
        let z = exact_divide(&y.compose_poly(&q_for(m + 1, p)), &s.z).map_err(|error| LaurentFailure { index: m + 1, error })?;
        up.push(ClusterState { index: m + 1, y, z });
    }
    let mut down = vec![seed];
    while down.last().unwrap().index > -big_k {
        let s = down.last().unwrap();
        let m = s.index;
        let z = exact_divide(&s.y.compose_poly(&q_for(m, p)), &s.z).map_err(|error| LaurentFailure { index: m - 1, error })?;
        let y = exact_divide(&(&z + &e0), &s.y).map_err(|error| LaurentFailure { index: m - 1, error })?;
        down.push(ClusterState { index: m - 1, y, z });
    }
    down.reverse();
    down.pop();
    down.extend(up);
    check_relations(&down, p)?;
    Ok(down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{q, qi};

    fn std() -> ParamsV {
        ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap()
    }

    #[test]
    fn worked_values() {
        let pt = SurfacePoint::v(&std(), [qi(1), qi(1), qi(13)]).unwrap();
        let v = cluster_values(&pt, 0, 3).unwrap();
        let ys: Vec<_> = v.iter().map(|t| t.1.clone()).collect();
        let zs: Vec<_> = v.iter().map(|t| t.2.clone()).collect();
        assert_eq!(ys, vec![qi(-3), qi(1), qi(1), qi(-1)]);
        assert_eq!(&zs[..3], &[qi(-5), qi(-1), qi(-3)]);
    }

    #[test]
    fn closed_forms_of_neighbours() {
        let p = std();
        let th = p.theta();
        let x = [qi(1), qi(1), qi(13)];
        let z0 = -(&x[0] * &x[0] * &x[2]) - &x[0] * &x[1] + &th[1] * &x[0] - &p.e0;
        let z2 = -(&x[1] * &x[1] * &x[2]) - &x[0] * &x[1] + &th[0] * &x[1] - &p.e0;
        assert_eq!(cluster_pair(&x, &p, 0).unwrap().1, z0);
        assert_eq!(cluster_pair(&x, &p, 2).unwrap().1, z2);
    }

    #[test]
    fn factored_quartics() {
        let p = ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap();
        for r in [qi(3), q(1, 3), qi(8), qi(2)] {
            assert!(poly_eval(&q1_coeffs(&p), &r).is_zero());
        }
        for r in [q(4, 3), qi(12), q(1, 2), qi(2)] {
            assert!(poly_eval(&q2_coeffs(&p), &r).is_zero());
        }
    }

    #[test]
    fn p1_inverse_examples() {
        let p = std();
        assert_eq!(p1_inverse(&qi(1), &qi(-1), &p).unwrap(), [qi(1), qi(1), qi(13)]);
        assert_eq!(p1_inverse(&q(1, 2), &qi(-1), &p).unwrap(), [q(1, 2), qi(2), q(43, 4)]);
        assert!(matches!(p1_inverse(&qi(0), &qi(-1), &p), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn walk_round_trip() {
        let p = std();
        let x = [q(1, 2), qi(2), q(43, 4)];
        for m in -3..=4 {
            let (y, z) = cluster_pair(&x, &p, m).unwrap();
            assert_eq!(from_pair(m, &y, &z, &p).unwrap(), x);
        }
    }

    #[test]
    fn first_laurent_steps() {
        let seq = cluster_sequence_laurent(&std(), 3).unwrap();
        let y2 = &seq.iter().find(|s| s.index == 2).unwrap().y;
        assert_eq!(y2, &(&(&BiLaurent::v() + &BiLaurent::constant(qi(2))) * &BiLaurent::monomial(-1, 0, qi(1))));
    }
}
