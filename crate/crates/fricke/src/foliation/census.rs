//! Singular points of the compactified field: regular points over `z = 0`,
//! polar points and saddle-nodes over `z = ∞`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{q, qi, Rational};

use super::field::{backlund_pi, linearization, transition, vector_field, AlphaParams, Chart, ChartPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Regular,
    Polar,
    SaddleNode,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PointKind::Regular => "regular",
            PointKind::Polar => "polar",
            PointKind::SaddleNode => "saddle-node",
        }
    }
}

/// One singular point with its primary chart, linearization there, and the
/// other chart representatives under which it reappears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusPoint {
    pub label: String,
    pub kind: PointKind,
    pub point: ChartPoint,
    pub char_poly: [Rational; 4],
    pub also: Vec<(String, ChartPoint)>,
}

impl CensusPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "kind": self.kind.as_str(),
            "chart": self.point.chart.to_string(),
            "coords": self.point.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "char_poly": self.char_poly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "also": self.also.iter().map(|(l, p)| {
                let mut v = p.to_json();
                v.as_object_mut().unwrap().insert("label".into(), json!(l));
                v
            }).collect::<Vec<_>>(),
        })
    }
}

/// A linear condition `c0·p0 + c1·p1 = rhs` on the two plane coordinates.
type LinearFactor = (Rational, Rational, Rational);

/// Common zeros of two products of linear factors, one factor from each.
pub fn factor_pair_zeros(first: &[LinearFactor], second: &[LinearFactor]) -> Vec<[Rational; 2]> {
    let mut out: Vec<[Rational; 2]> = Vec::new();
    for (a, b, r) in first {
        for (c, d, s) in second {
            let det = a * d - b * c;
            if det.is_zero() {
                continue;
            }
            let p0 = (r * d - b * s) / &det;
            let p1 = (a * s - r * c) / &det;
            let pt = [p0, p1];
            if !out.contains(&pt) {
                out.push(pt);
            }
        }
    }
    out
}

/// Zeros of `u1(u1−1)(u2+2)`, `u2(2u1−1)(u2+1)` in the plane `x = 0`.
pub fn u_plane_zeros() -> Vec<[Rational; 2]> {
    let f1 = [(qi(1), qi(0), qi(0)), (qi(1), qi(0), qi(1)), (qi(0), qi(1), qi(-2))];
    let f2 = [(qi(0), qi(1), qi(0)), (qi(2), qi(0), qi(1)), (qi(0), qi(1), qi(-1))];
    factor_pair_zeros(&f1, &f2)
}

/// Zeros of `v1(v1+1)(1−2v2)`, `v2(v2−1)(2v1+1)` in the plane `y = 0`.
pub fn v_plane_zeros() -> Vec<[Rational; 2]> {
    let f1 = [(qi(1), qi(0), qi(0)), (qi(1), qi(0), qi(-1)), (qi(0), qi(2), qi(1))];
    let f2 = [(qi(0), qi(1), qi(0)), (qi(0), qi(1), qi(1)), (qi(2), qi(0), qi(-1))];
    factor_pair_zeros(&f1, &f2)
}

/// `r1 = (0, α1/(α1+α3), 0)` and `r2 = (α1−α3, α1/(α1−α3), 0)` for the given
/// parameters, in the initial chart of their copy.
pub fn regular_points(a: &AlphaParams) -> [[Rational; 3]; 2] {
    let s = &a.a1 + &a.a3;
    let d = &a.a1 - &a.a3;
    [[qi(0), &a.a1 / &s, qi(0)], [d.clone(), &a.a1 / &d, qi(0)]]
}

/// The tilde-chart points as printed, `(α̃1−α̃3+1, α̃1/(α̃1−α̃3+1), 0)` and
/// `(0, −α̃1/(α̃0+α̃2), 0)`; kept to document that they are not zeros.
pub fn printed_tilde_regular_points(a: &AlphaParams) -> [[Rational; 3]; 2] {
    let t = a.tilde();
    let d = &t.a1 - &t.a3 + qi(1);
    let t0 = a.a1.clone();
    [[d.clone(), &t.a1 / &d, qi(0)], [qi(0), -(&t.a1 / (&t0 + &t.a2)), qi(0)]]
}

fn is_zero_of(p: &ChartPoint, a: &AlphaParams) -> bool {
    vector_field(p, a).iter().all(Rational::is_zero)
}

fn entry(label: &str, kind: PointKind, point: ChartPoint, a: &AlphaParams) -> Result<CensusPoint> {
    let (_, cp) = linearization(&point, a)?;
    Ok(CensusPoint { label: label.into(), kind, point, char_poly: cp, also: Vec::new() })
}

fn check(p: &ChartPoint, a: &AlphaParams) -> Result<()> {
    if is_zero_of(p, a) {
        Ok(())
    } else {
        Err(Error::NotSingular(format!("{} {:?}", p.chart, p.coords)))
    }
}

/// Twelve labelled singular points: `r1..r3`, `p1..p4`, `s1..s5`. Each
/// representative listed is verified to be an exact zero of its chart field.
pub fn singular_census(a: &AlphaParams) -> Result<Vec<CensusPoint>> {
    a.require_generic()?;
    let mut out = Vec::with_capacity(12);
    let t = a.tilde();

    let [r1, r2] = regular_points(a);
    let [r3, r4] = {
        let [r4, r3] = regular_points(&t);
        [r3, r4]
    };
    let mut e1 = entry("r1", PointKind::Regular, ChartPoint::new(Chart::U4, r1), a)?;
    let r4 = ChartPoint::new(Chart::TildeU4, r4);
    check(&r4, a)?;
    e1.also.push(("r4".into(), r4));
    out.push(e1);
    out.push(entry("r2", PointKind::Regular, ChartPoint::new(Chart::U4, r2), a)?);
    out.push(entry("r3", PointKind::Regular, ChartPoint::new(Chart::TildeU4, r3), a)?);

    // Polar points: x = 0 zeros of the u-chart off the saddle-node set.
    let origin = [qi(0), qi(0), qi(0)];
    let unit = [qi(1), qi(0), qi(0)];
    out.push(entry("p1", PointKind::Polar, ChartPoint::new(Chart::U1, origin.clone()), a)?);
    out.push(entry("p2", PointKind::Polar, ChartPoint::new(Chart::U1, unit.clone()), a)?);
    out.push(entry("p3", PointKind::Polar, ChartPoint::new(Chart::TildeU1, origin), a)?);
    out.push(entry("p4", PointKind::Polar, ChartPoint::new(Chart::TildeU1, unit), a)?);

    // Saddle-nodes: Boutroux-chart zeros, ordered as s1..s5.
    let order = [[qi(-1), qi(0)], [q(-1, 2), q(1, 2)], [qi(-1), qi(1)], [qi(0), qi(0)], [qi(0), qi(1)]];
    let found = v_plane_zeros();
    for (i, v) in order.iter().enumerate() {
        if !found.contains(v) {
            return Err(Error::NotSingular(format!("s{} missing from the factor enumeration", i + 1)));
        }
        let p = ChartPoint::new(Chart::U3, [v[0].clone(), v[1].clone(), qi(0)]);
        let mut e = entry(&format!("s{}", i + 1), PointKind::SaddleNode, p.clone(), a)?;
        if let Ok(u) = transition(&p, Chart::U1) {
            check(&u, a)?;
            e.also.push((e.label.clone(), u));
        }
        let (tv, _) = backlund_pi(&p, a)?;
        check(&tv, a)?;
        if let Ok(tu) = transition(&tv, Chart::TildeU1) {
            check(&tu, a)?;
            e.also.push((e.label.clone(), tu));
        }
        e.also.push((e.label.clone(), tv));
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> AlphaParams {
        AlphaParams::new(q(1, 3), q(1, 5), q(1, 7))
    }

    #[test]
    fn plane_enumerations() {
        let u = u_plane_zeros();
        assert_eq!(u.len(), 5);
        for p in [[qi(0), qi(0)], [qi(1), qi(0)], [qi(0), qi(-1)], [q(1, 2), qi(-2)], [qi(1), qi(-1)]] {
            assert!(u.contains(&p));
        }
        assert_eq!(v_plane_zeros().len(), 5);
    }

    #[test]
    fn twelve_points() {
        let c = singular_census(&alpha()).unwrap();
        assert_eq!(c.len(), 12);
        let labels: Vec<&str> = c.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, ["r1", "r2", "r3", "p1", "p2", "p3", "p4", "s1", "s2", "s3", "s4", "s5"]);
        for p in &c {
            assert!(is_zero_of(&p.point, &alpha()), "{}", p.label);
            if p.kind == PointKind::SaddleNode {
                assert!(p.char_poly[0].is_zero(), "{}", p.label);
            }
        }
        assert_eq!(c[3].char_poly, [qi(2), qi(5), qi(4), qi(1)]);
        assert_eq!(c[4].char_poly, [qi(-2), qi(5), qi(-4), qi(1)]);
        assert_eq!(c[5].char_poly, c[3].char_poly);
        assert_eq!(c[6].char_poly, c[4].char_poly);
    }

    #[test]
    fn tilde_u_chart_saddle_nodes() {
        // The second copy sees s1, s2, s4 at (1,−1,0), (1/2,−2,0), (0,−1,0).
        let c = singular_census(&alpha()).unwrap();
        let in_tilde_u = |label: &str| {
            c.iter().find(|p| p.label == label).unwrap().also.iter().find(|(_, p)| p.chart == Chart::TildeU1).map(|(_, p)| p.coords.clone())
        };
        assert_eq!(in_tilde_u("s1"), Some([qi(1), qi(-1), qi(0)]));
        assert_eq!(in_tilde_u("s2"), Some([q(1, 2), qi(-2), qi(0)]));
        assert_eq!(in_tilde_u("s4"), Some([qi(0), qi(-1), qi(0)]));
        assert_eq!(in_tilde_u("s3"), None);
    }

    #[test]
    fn saddle_nodes_singular_in_every_chart() {
        let a = alpha();
        for p in singular_census(&a).unwrap().iter().filter(|p| p.kind == PointKind::SaddleNode) {
            for (_, rep) in &p.also {
                let (_, cp) = linearization(rep, &a).unwrap();
                assert!(cp[0].is_zero(), "{} in {}", p.label, rep.chart);
            }
        }
    }

    #[test]
    fn printed_tilde_points_are_not_zeros() {
        let a = alpha();
        for p in printed_tilde_regular_points(&a) {
            assert!(!is_zero_of(&ChartPoint::new(Chart::TildeU4, p), &a));
        }
    }

    #[test]
    fn non_generic_alpha() {
        let a = AlphaParams::new(q(1, 3), q(1, 5), q(1, 3));
        assert!(matches!(singular_census(&a), Err(Error::NonGenericAlpha(_))));
    }
}
