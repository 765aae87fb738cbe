//! The compactified Painlevé V field in its three charts, in both copies glued
//! by the Bäcklund map `π`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{qi, Dual2, Field, Rational};

/// `(α1, α2, α3)`; the remaining parameter is `α0 = 1 − α1 − α2 − α3`, the
/// normalization under which `π` carries the field of one copy exactly onto
/// the field of the other with permuted parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaParams {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
}

impl AlphaParams {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Self {
        AlphaParams { a1, a2, a3 }
    }

    pub fn alpha0(&self) -> Rational {
        qi(1) - &self.a1 - &self.a2 - &self.a3
    }

    /// `2α1 + α2 − 1`, the parameter of the formal normal form.
    pub fn normal_form_alpha0(&self) -> Rational {
        qi(2) * &self.a1 + &self.a2 - qi(1)
    }

    /// Parameters of the other copy: `(α̃0, α̃1, α̃2, α̃3) = (α1, α2, α3, α0)`.
    pub fn tilde(&self) -> AlphaParams {
        AlphaParams { a1: self.a2.clone(), a2: self.a3.clone(), a3: self.alpha0() }
    }

    /// `α1 ≠ ±α3` in both copies.
    pub fn require_generic(&self) -> Result<()> {
        let t = self.tilde();
        for (p, copy) in [(self, ""), (&t, "tilde ")] {
            if (&p.a1 + &p.a3).is_zero() || (&p.a1 - &p.a3).is_zero() {
                return Err(Error::NonGenericAlpha(format!("{copy}alpha1 = ±{copy}alpha3")));
            }
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<AlphaParams> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three alphas, got {s:?}")));
        }
        let q = |t: &str| t.parse::<Rational>().map_err(|e| Error::Parse(e.0));
        Ok(AlphaParams::new(q(parts[0])?, q(parts[1])?, q(parts[2])?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    U1,
    U3,
    U4,
    TildeU1,
    TildeU3,
    TildeU4,
}

impl Chart {
    pub fn is_tilde(self) -> bool {
        matches!(self, Chart::TildeU1 | Chart::TildeU3 | Chart::TildeU4)
    }

    /// The chart with the same shape in the other copy.
    pub fn swap_copy(self) -> Chart {
        match self {
            Chart::U1 => Chart::TildeU1,
            Chart::U3 => Chart::TildeU3,
            Chart::U4 => Chart::TildeU4,
            Chart::TildeU1 => Chart::U1,
            Chart::TildeU3 => Chart::U3,
            Chart::TildeU4 => Chart::U4,
        }
    }

    fn shape(self) -> u8 {
        match self {
            Chart::U1 | Chart::TildeU1 => 1,
            Chart::U3 | Chart::TildeU3 => 3,
            Chart::U4 | Chart::TildeU4 => 4,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chart::U1 => "U1",
            Chart::U3 => "U3",
            Chart::U4 => "U4",
            Chart::TildeU1 => "tildeU1",
            Chart::TildeU3 => "tildeU3",
            Chart::TildeU4 => "tildeU4",
        };
        f.write_str(s)
    }
}

impl FromStr for Chart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Chart> {
        Ok(match s {
            "U1" => Chart::U1,
            "U3" => Chart::U3,
            "U4" => Chart::U4,
            "tildeU1" | "~U1" => Chart::TildeU1,
            "tildeU3" | "~U3" => Chart::TildeU3,
            "tildeU4" | "~U4" => Chart::TildeU4,
            other => return Err(Error::UnknownChart(other.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: [Rational; 3],
}

impl ChartPoint {
    pub fn new(chart: Chart, coords: [Rational; 3]) -> Self {
        ChartPoint { chart, coords }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "chart": self.chart.to_string(),
            "coords": self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// `u`-chart field `(u̇1, u̇2, ẋ)`.
pub fn field_u<S: Field>(p: &[S; 3], a: &AlphaParams) -> [S; 3] {
    let [u1, u2, x] = p;
    let k = |q: &Rational| S::constant(q);
    let s = &a.a1 + &a.a3;
    let two = qi(2);
    let du1 = u1.scale(&-&two) + u1.sq().scale(&two) - u1.clone() * u2.clone() + u1.sq() * u2.clone()
        + x.scale(&a.a1)
        - (u1.clone() * x.clone()).scale(&s);
    let du2 = -u2.clone() + (u1.clone() * u2.clone()).scale(&two) - u2.sq() + u2.clone() * x.clone()
        + (u1.clone() * u2.sq()).scale(&two)
        - (u2.clone() * x.clone()).scale(&s)
        + (u2.sq() * x.clone()).scale(&a.a2);
    let inner = k(&qi(-1)) + u1.scale(&two) - u2.clone() + (u1.clone() * u2.clone()).scale(&two) - x.scale(&s)
        + (u2.clone() * x.clone()).scale(&a.a2);
    [du1, du2, x.clone() * inner]
}

/// Boutroux-chart field `(v̇1, v̇2, ẏ)`.
pub fn field_v<S: Field>(p: &[S; 3], a: &AlphaParams) -> [S; 3] {
    let [v1, v2, y] = p;
    let s = &a.a1 + &a.a3;
    let two = qi(2);
    let one = S::int(1);
    let dv1 = v1.clone()
        * (one.clone() + v1.clone() - v2.scale(&two) - (v1.clone() * v2.clone()).scale(&two) + y.scale(&(&s - qi(1))))
        - y.scale(&a.a2);
    let dv2 = v2.clone() * (-one + v2.clone() - v1.scale(&two) + (v1.clone() * v2.clone()).scale(&two) - y.scale(&s))
        + y.scale(&a.a1);
    [dv1, dv2, -y.sq()]
}

/// Initial-chart field multiplied by `z`, with `z` itself as the time:
/// `(zẇ1, zẇ2, z)`.
pub fn field_w<S: Field>(p: &[S; 3], a: &AlphaParams) -> [S; 3] {
    let [w1, w2, z] = p;
    let s = &a.a1 + &a.a3;
    let two = qi(2);
    let dw1 = -(w1.sq() * w2.clone()).scale(&two) + w1.sq() + w1.clone() * z.clone()
        - (w1.clone() * w2.clone() * z.clone()).scale(&two)
        + w1.scale(&s)
        - z.scale(&a.a2);
    let dw2 = (w1.clone() * w2.sq()).scale(&two) - (w1.clone() * w2.clone()).scale(&two) - w2.clone() * z.clone()
        + w2.sq() * z.clone()
        - w2.scale(&s)
        + S::constant(&a.a1);
    [dw1, dw2, z.clone()]
}

/// Field of `chart`; the tilde charts use the permuted parameters.
pub fn vector_field_generic<S: Field>(chart: Chart, p: &[S; 3], a: &AlphaParams) -> [S; 3] {
    let t;
    let a = if chart.is_tilde() {
        t = a.tilde();
        &t
    } else {
        a
    };
    match chart.shape() {
        1 => field_u(p, a),
        3 => field_v(p, a),
        _ => field_w(p, a),
    }
}

pub fn vector_field(point: &ChartPoint, a: &AlphaParams) -> [Rational; 3] {
    vector_field_generic(point.chart, &point.coords, a)
}

pub fn vector_field_named(chart: &str, coords: &[Rational; 3], a: &AlphaParams) -> Result<[Rational; 3]> {
    let chart: Chart = chart.parse()?;
    Ok(vector_field_generic(chart, coords, a))
}

fn inv<S: Field>(s: &S, what: &str) -> Result<S> {
    s.inv().ok_or_else(|| Error::ChartDegenerate(what.to_string()))
}

/// Coordinate change between two charts of the same copy.
pub fn transition_generic<S: Field>(from: Chart, to: Chart, p: &[S; 3]) -> Result<[S; 3]> {
    if from.is_tilde() != to.is_tilde() {
        return Err(Error::UnknownChart(format!("{from} and {to} lie in different copies")));
    }
    let [a, b, c] = p.clone();
    Ok(match (from.shape(), to.shape()) {
        (f, t) if f == t => [a, b, c],
        // (1 : u1 : u2 : x) = (1/u2 : u1 : 1 : x/u2)
        (1, 3) => {
            let i = inv(&b, "u2 = 0")?;
            [i.clone(), a, c * i]
        }
        (3, 1) => {
            let i = inv(&a, "v1 = 0")?;
            [b, i.clone(), c * i]
        }
        (1, 4) => {
            let i = inv(&c, "x = 0")?;
            [i.clone(), a, b * i]
        }
        (4, 1) => {
            let i = inv(&a, "w1 = 0")?;
            [b, c * i.clone(), i]
        }
        (3, 4) => {
            let i = inv(&c, "y = 0")?;
            [a * i.clone(), b, i]
        }
        _ => {
            // (4, 3)
            let i = inv(&c, "z = 0")?;
            [a * i.clone(), b, i]
        }
    })
}

pub fn transition(p: &ChartPoint, to: Chart) -> Result<ChartPoint> {
    Ok(ChartPoint::new(to, transition_generic(p.chart, to, &p.coords)?))
}

/// `π` in the chart of `p`, landing in the same-shaped chart of the other
/// copy, with the parameters of the target copy.
pub fn backlund_pi_generic<S: Field>(chart: Chart, p: &[S; 3]) -> Result<[S; 3]> {
    let [a, b, c] = p.clone();
    let one = S::int(1);
    Ok(match chart.shape() {
        4 => {
            let zi = inv(&c, "z = 0")?;
            [c.clone() * (b - one), -(a * zi), c]
        }
        3 => [b - one, -a, c],
        _ => {
            let u2i = inv(&b, "u2 = 0")?;
            let d = inv(&(a - one), "u1 = 1")?;
            [-u2i.clone(), d.clone(), d * u2i * c]
        }
    })
}

pub fn backlund_pi(p: &ChartPoint, a: &AlphaParams) -> Result<(ChartPoint, AlphaParams)> {
    let coords = backlund_pi_generic(p.chart, &p.coords)?;
    Ok((ChartPoint::new(p.chart.swap_copy(), coords), a.tilde()))
}

/// Jacobian of the field of `chart` at `p`, row `i` = gradient of component `i`.
pub fn jacobian(chart: Chart, p: &[Rational; 3], a: &AlphaParams) -> [[Rational; 3]; 3] {
    let mut jac: [[Rational; 3]; 3] = Default::default();
    for j in 0..3 {
        let seeded: [Dual2; 3] = std::array::from_fn(|i| {
            Dual2::new(p[i].clone(), if i == j { qi(1) } else { qi(0) }, qi(0))
        });
        let out = vector_field_generic(chart, &seeded, a);
        for i in 0..3 {
            jac[i][j] = out[i].d1.clone();
        }
    }
    jac
}

/// Coefficients `[c0, c1, c2, 1]` of `det(λI − J)`.
pub fn char_poly(j: &[[Rational; 3]; 3]) -> [Rational; 4] {
    let tr = &j[0][0] + &j[1][1] + &j[2][2];
    let minor = |a: usize, b: usize| &j[a][a] * &j[b][b] - &j[a][b] * &j[b][a];
    let m2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = &j[0][0] * (&j[1][1] * &j[2][2] - &j[1][2] * &j[2][1]) - &j[0][1] * (&j[1][0] * &j[2][2] - &j[1][2] * &j[2][0])
        + &j[0][2] * (&j[1][0] * &j[2][1] - &j[1][1] * &j[2][0]);
    [-det, m2, -tr, qi(1)]
}

/// Jacobian and characteristic polynomial at a singular point.
pub fn linearization(point: &ChartPoint, a: &AlphaParams) -> Result<([[Rational; 3]; 3], [Rational; 4])> {
    if vector_field(point, a).iter().any(|c| !c.is_zero()) {
        return Err(Error::NotSingular(format!("{} {:?}", point.chart, point.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())));
    }
    let j = jacobian(point.chart, &point.coords, a);
    let cp = char_poly(&j);
    Ok((j, cp))
}

/// The factor `λ` with `T_*(X_from) = λ · X_to` at `p`, where `T` is the chart
/// transition; errors if the pushed field is not proportional to the target.
pub fn coherence_factor(from: Chart, to: Chart, p: &[Rational; 3], a: &AlphaParams) -> Result<Rational> {
    let x = vector_field_generic(from, p, a);
    let mut pushed: [Rational; 3] = Default::default();
    for j in 0..3 {
        let seeded: [Dual2; 3] = std::array::from_fn(|i| Dual2::new(p[i].clone(), if i == j { qi(1) } else { qi(0) }, qi(0)));
        let img = transition_generic(from, to, &seeded)?;
        for i in 0..3 {
            pushed[i] = &pushed[i] + &img[i].d1 * &x[j];
        }
    }
    let q = transition_generic(from, to, p)?;
    let target = vector_field_generic(to, &q, a);
    proportional(&pushed, &target)
}

/// The `π`-pushforward of the field compared with the field of the other copy.
pub fn pi_coherence_factor(chart: Chart, p: &[Rational; 3], a: &AlphaParams) -> Result<Rational> {
    let x = vector_field_generic(chart, p, a);
    let mut pushed: [Rational; 3] = Default::default();
    for j in 0..3 {
        let seeded: [Dual2; 3] = std::array::from_fn(|i| Dual2::new(p[i].clone(), if i == j { qi(1) } else { qi(0) }, qi(0)));
        let img = backlund_pi_generic(chart, &seeded)?;
        for i in 0..3 {
            pushed[i] = &pushed[i] + &img[i].d1 * &x[j];
        }
    }
    let q = backlund_pi_generic(chart, p)?;
    let target = vector_field_generic(chart.swap_copy(), &q, a);
    proportional(&pushed, &target)
}

fn proportional(v: &[Rational; 3], w: &[Rational; 3]) -> Result<Rational> {
    let idx = w.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::ChartDegenerate("target field vanishes".into()))?;
    let lambda = &v[idx] / &w[idx];
    if (0..3).all(|i| v[i] == &lambda * &w[i]) {
        Ok(lambda)
    } else {
        Err(Error::ChartDegenerate("pushed field not proportional to the target field".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{q, SeededSampler};

    fn alpha() -> AlphaParams {
        AlphaParams::new(q(1, 3), q(1, 5), q(1, 7))
    }

    #[test]
    fn displayed_zeros() {
        let a = alpha();
        let z = |c: Chart, p: [Rational; 3]| vector_field(&ChartPoint::new(c, p), &a).iter().all(|v| v.is_zero());
        assert!(z(Chart::U1, [qi(0), qi(0), qi(0)]));
        assert!(z(Chart::U1, [q(1, 2), qi(-2), qi(0)]));
        assert!(z(Chart::U3, [qi(-1), qi(0), qi(0)]));
        let f = field_u(&[q(1, 2), qi(-2), qi(0)], &a);
        assert!(f[0].is_zero());
    }

    #[test]
    fn pi_in_boutroux_chart() {
        let (img, t) = backlund_pi(&ChartPoint::new(Chart::U3, [qi(-1), qi(0), qi(0)]), &alpha()).unwrap();
        assert_eq!(img.coords, [qi(-1), qi(1), qi(0)]);
        assert_eq!(img.chart, Chart::TildeU3);
        assert_eq!(t.tilde().tilde().tilde(), alpha());
        assert!(matches!(
            backlund_pi(&ChartPoint::new(Chart::U1, [qi(2), qi(0), qi(1)]), &alpha()),
            Err(Error::ChartDegenerate(_))
        ));
    }

    #[test]
    fn transitions_invert() {
        let p = [q(2, 3), q(-5, 2), q(7, 4)];
        for (a, b) in [(Chart::U1, Chart::U3), (Chart::U1, Chart::U4), (Chart::U3, Chart::U4)] {
            let there = transition_generic(a, b, &p).unwrap();
            assert_eq!(transition_generic(b, a, &there).unwrap(), p);
        }
    }

    #[test]
    fn charts_cohere_up_to_time_rescaling() {
        let a = alpha();
        let mut s = SeededSampler::new(5);
        for _ in 0..30 {
            let p = [s.nonzero(), s.nonzero(), s.nonzero()];
            for (f, t) in [(Chart::U1, Chart::U4), (Chart::U3, Chart::U4), (Chart::U1, Chart::U3)] {
                coherence_factor(f, t, &p, &a).unwrap();
            }
        }
    }

    #[test]
    fn pi_carries_field_exactly() {
        let a = alpha();
        let mut s = SeededSampler::new(6);
        for _ in 0..20 {
            let p = [s.nonzero(), s.nonzero(), s.nonzero()];
            if (&p[0] - qi(1)).is_zero() {
                continue;
            }
            for c in [Chart::U3, Chart::U4] {
                assert_eq!(pi_coherence_factor(c, &p, &a).unwrap(), qi(1), "{c}");
            }
            // The u-chart field carries its own time; only the direction is matched.
            pi_coherence_factor(Chart::U1, &p, &a).unwrap();
        }
    }

    #[test]
    fn polar_points_linearize() {
        let a = alpha();
        let (_, c1) = linearization(&ChartPoint::new(Chart::U1, [qi(0), qi(0), qi(0)]), &a).unwrap();
        assert_eq!(c1, [qi(2), qi(5), qi(4), qi(1)]);
        let (_, c2) = linearization(&ChartPoint::new(Chart::U1, [qi(1), qi(0), qi(0)]), &a).unwrap();
        assert_eq!(c2, [qi(-2), qi(5), qi(-4), qi(1)]);
        assert!(matches!(
            linearization(&ChartPoint::new(Chart::U1, [qi(2), qi(0), qi(0)]), &a),
            Err(Error::NotSingular(_))
        ));
    }

    #[test]
    fn unknown_chart() {
        assert!(matches!(vector_field_named("U2", &[qi(0), qi(0), qi(0)], &alpha()), Err(Error::UnknownChart(_))));
    }
}
