//! Fixed worked values across modules.

use fricke::dynamics::{cluster_values, phi_kappa, SurfaceMap};
use fricke::foliation::{singular_census, AlphaParams};
use fricke::numeric::{q, qi, Rational};
use fricke::surfaces::{f_vi, lines_cv, ParamsV, SurfacePoint};

fn std_point() -> SurfacePoint {
    let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
    SurfacePoint::v(&p, [qi(1), qi(1), qi(13)]).unwrap()
}

fn image(word: &str) -> [Rational; 3] {
    SurfaceMap::parse(word).unwrap().eval(&std_point()).unwrap().x
}

#[test]
fn standard_theta() {
    assert_eq!(std_point().params.theta(), [qi(13), qi(11), qi(2), qi(35)]);
}

#[test]
fn tame_and_half_braid() {
    assert_eq!(image("g"), [qi(51), qi(-3), qi(13)]);
    assert_eq!(image("sigma1 . sigma2"), [qi(51), qi(-3), qi(13)]);
    assert_eq!(image("b34 . b34"), [qi(51), qi(-3), qi(13)]);
}

#[test]
fn canonical_chain() {
    assert_eq!(image("s1"), [q(1, 2), qi(2), q(43, 4)]);
    assert_eq!(image("s2 . m . s1"), [qi(51), qi(-3), qi(13)]);
    assert_eq!(image("g23(1)"), [qi(2), q(1, 2), q(31, 4)]);
}

#[test]
fn confluence_value() {
    let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
    let (y, pvi) = phi_kappa(&[qi(1), qi(1), qi(13)], &p, &qi(1));
    assert_eq!(y, [q(3, 2), q(-1, 2), qi(13)]);
    assert_eq!(pvi.theta(), [q(35, 2), q(37, 2), qi(20), q(461, 4)]);
    assert!(f_vi(&y, &pvi.theta()).is_zero());
}

#[test]
fn cluster_values_at_standard_point() {
    let v = cluster_values(&std_point(), 0, 3).unwrap();
    let ys: Vec<Rational> = v.iter().map(|t| t.1.clone()).collect();
    let zs: Vec<Rational> = v.iter().map(|t| t.2.clone()).collect();
    assert_eq!(ys, [qi(-3), qi(1), qi(1), qi(-1)]);
    assert_eq!(zs[..3], [qi(-5), qi(-1), qi(-3)]);
}

#[test]
fn eighteen_lines() {
    let p = ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap();
    let lines = lines_cv(&p).unwrap();
    assert_eq!(lines.len(), 18);
    assert!(lines.iter().all(|l| l.as_line().is_some_and(|l| l.verify(&p.theta()))));
}

#[test]
fn census_polynomials() {
    let c = singular_census(&AlphaParams::new(q(1, 3), q(1, 5), q(1, 7))).unwrap();
    assert_eq!(c.len(), 12);
    // (λ+2)(λ+1)² and (λ−2)(λ−1)², constant term first.
    assert_eq!(c[3].char_poly, [qi(2), qi(5), qi(4), qi(1)]);
    assert_eq!(c[4].char_poly, [qi(-2), qi(5), qi(-4), qi(1)]);
}
