use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{qi, Rational};

use super::cubic::f_family;
use super::params::{c_value, Family, ParamsV, ParamsVI};

/// `Σ coeffs[i]·x_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub coeffs: [Rational; 3],
    pub constant: Rational,
}

impl LinearForm {
    pub fn eval(&self, x: &[Rational; 3]) -> Rational {
        (0..3).map(|i| &self.coeffs[i] * &x[i]).sum::<Rational>() + &self.constant
    }

    /// Proportionality of the restrictions to the plane `x_k = c`.
    pub fn proportional_on_plane(&self, other: &LinearForm, k: usize, c: &Rational) -> bool {
        let restrict = |f: &LinearForm| {
            let mut v: Vec<Rational> = (0..3).filter(|&i| i != k).map(|i| f.coeffs[i].clone()).collect();
            v.push(&f.constant + &f.coeffs[k] * c);
            v
        };
        let (a, b) = (restrict(self), restrict(other));
        (0..3).all(|i| (i + 1..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

/// Plane `x_k = c`, with `k` zero-based internally and one-based in records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub k: usize,
    pub c: Rational,
}

/// An affine line on a cubic surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub family: Family,
    pub label: String,
    pub plane: Plane,
    pub form: LinearForm,
    pub point: [Rational; 3],
    pub dir: [Rational; 3],
}

impl Line {
    pub fn at(&self, t: &Rational) -> [Rational; 3] {
        [&self.point[0] + t * &self.dir[0], &self.point[1] + t * &self.dir[1], &self.point[2] + t * &self.dir[2]]
    }

    /// Three parametrized points satisfy the plane, the form and `F = 0`.
    pub fn verify(&self, th: &[Rational; 4]) -> bool {
        [qi(0), qi(1), qi(-3)].iter().all(|t| {
            let x = self.at(t);
            x[self.plane.k] == self.plane.c && self.form.eval(&x).is_zero() && f_family(self.family, &x, th).is_zero()
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "plane": {"k": self.plane.k + 1, "c": self.plane.c.to_string()},
            "point": self.point.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "dir": self.dir.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// A plane section that does not split over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicRecord {
    pub family: Family,
    pub label: String,
    pub plane: Plane,
    /// `A s² + B st + C t² + D s + E t + F` in the two remaining coordinates.
    pub conic: [Rational; 6],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineRecord {
    Line(Line),
    Conic(ConicRecord),
}

impl LineRecord {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            LineRecord::Line(l) => l.to_json(),
            LineRecord::Conic(c) => serde_json::json!({
                "label": c.label,
                "plane": {"k": c.plane.k + 1, "c": c.plane.c.to_string()},
                "conic": c.conic.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn as_line(&self) -> Option<&Line> {
        match self {
            LineRecord::Line(l) => Some(l),
            LineRecord::Conic(_) => None,
        }
    }
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Coefficients of `F` restricted to `x_k = c`, in the remaining coordinates
/// `(s, t) = (x_i, x_j)` with `i < j`.
pub fn restricted_conic(family: Family, k: usize, c: &Rational, th: &[Rational; 4]) -> [Rational; 6] {
    let sq = |i: usize| if family == Family::V && i == 2 { qi(0) } else { qi(1) };
    let (i, j) = others(k);
    [sq(i), c.clone(), sq(j), -&th[i], -&th[j], sq(k) * c * c - &th[k] * c + &th[3]]
}

/// Splits `A s² + B st + C t² + D s + E t + F` into two rational linear factors
/// `(a, b, c)` meaning `a s + b t + c`, with product equal to the input.
pub fn factor_quadratic(q: &[Rational; 6]) -> Result<[[Rational; 3]; 2]> {
    let [a, b, c, d, e, f] = q;
    if a.is_zero() && c.is_zero() {
        if b.is_zero() {
            return Err(Error::Irreducible);
        }
        // B s t + D s + E t + F = (B s + E)(t + D/B) + F − D E / B
        if !(f - d * e / b).is_zero() {
            return Err(Error::Irreducible);
        }
        return Ok([[b.clone(), qi(0), e.clone()], [qi(0), qi(1), d / b]]);
    }
    if a.is_zero() {
        let swapped = [c.clone(), b.clone(), a.clone(), e.clone(), d.clone(), f.clone()];
        let [g, h] = factor_quadratic(&swapped)?;
        return Ok([[g[1].clone(), g[0].clone(), g[2].clone()], [h[1].clone(), h[0].clone(), h[2].clone()]]);
    }
    // Roots in s of A s² + (B t + D) s + (C t² + E t + F); discriminant must be
    // the square of a linear polynomial p t + r.
    let two = qi(2);
    let four = qi(4);
    let lead = b * b - &four * a * c;
    let mid = &two * b * d - &four * a * e;
    let cst = d * d - &four * a * f;
    let (p, r) = if lead.is_zero() {
        if !mid.is_zero() {
            return Err(Error::Irreducible);
        }
        (qi(0), cst.sqrt().ok_or(Error::Irreducible)?)
    } else {
        if !(&mid * &mid - &four * &lead * &cst).is_zero() {
            return Err(Error::Irreducible);
        }
        let p = lead.sqrt().ok_or(Error::Irreducible)?;
        let r = &mid / (&two * &p);
        (p, r)
    };
    let first = [a.clone(), (b - &p) / &two, (d - &r) / &two];
    let second = [qi(1), (b + &p) / (&two * a), (d + &r) / (&two * a)];
    Ok([first, second])
}

/// Form in the plane coordinates; the coefficient of `x_k` is zero.
fn lift_form(k: usize, f: &[Rational; 3]) -> LinearForm {
    let (i, j) = others(k);
    let mut coeffs = [qi(0), qi(0), qi(0)];
    coeffs[i] = f[0].clone();
    coeffs[j] = f[1].clone();
    LinearForm { coeffs, constant: f[2].clone() }
}

/// Factors the section of the surface by `x_k = c` into two linear forms.
pub fn factor_conic(family: Family, k: usize, c: &Rational, th: &[Rational; 4]) -> Result<[LinearForm; 2]> {
    let conic = restricted_conic(family, k, c, th);
    let [f, g] = factor_quadratic(&conic)?;
    Ok([lift_form(k, &f), lift_form(k, &g)])
}

fn line_from_form(family: Family, label: String, k: usize, c: &Rational, form: LinearForm) -> Result<Line> {
    let (i, j) = others(k);
    let (a, b) = (&form.coeffs[i], &form.coeffs[j]);
    let mut point = [qi(0), qi(0), qi(0)];
    let mut dir = [qi(0), qi(0), qi(0)];
    point[k] = c.clone();
    if !b.is_zero() {
        point[j] = -(&form.constant / b);
        dir[i] = b.clone();
        dir[j] = -a;
    } else if !a.is_zero() {
        point[i] = -(&form.constant / a);
        dir[j] = qi(1);
    } else {
        return Err(Error::DegenerateConfiguration(format!("{label}: constant form")));
    }
    Ok(Line { family, label, plane: Plane { k, c: c.clone() }, form, point, dir })
}

fn same_line(l: &Line, m: &Line) -> bool {
    l.plane == m.plane && l.form.proportional_on_plane(&m.form, l.plane.k, &l.plane.c)
}

fn check_distinct(lines: &[Line]) -> Result<()> {
    for (n, l) in lines.iter().enumerate() {
        for m in &lines[n + 1..] {
            if same_line(l, m) {
                return Err(Error::DegenerateConfiguration(format!("{} coincides with {}", l.label, m.label)));
            }
        }
    }
    Ok(())
}

/// `l_{α,β} = α x_i + β x_j − a_k α β − a_4` on the plane `x_k = c_{α,β}`.
pub fn l_form(i: usize, j: usize, k: usize, alpha: &Rational, beta: &Rational, a: &[Rational; 4]) -> LinearForm {
    let mut coeffs = [qi(0), qi(0), qi(0)];
    coeffs[i] = alpha.clone();
    coeffs[j] = beta.clone();
    LinearForm { coeffs, constant: -(&a[k] * alpha * beta) - &a[3] }
}

fn fmt_e(n: usize, inv: bool) -> String {
    if inv {
        format!("e{}inv", n + 1)
    } else {
        format!("e{}", n + 1)
    }
}

/// The 24 lines of `C_VI`: two per plane, twelve planes `x_k = c` where `c`
/// is the trace value forcing the pair `(M_i, M_j)` or `(M_k, M_4)` to be
/// reducible.
pub fn lines_cvi(params: &ParamsVI) -> Result<Vec<Line>> {
    params.require_generic()?;
    let e = params.eigenvalues()?.clone();
    let a = params.a.clone();
    let th = params.theta();
    let mut lines = Vec::with_capacity(24);
    for k in 0..3 {
        let (i, j) = others(k);
        let inv_j = e[j].inv().unwrap();
        let inv_4 = e[3].inv().unwrap();
        // Planes from the pair (i, j); the displayed l-forms label the factors.
        for (alpha, beta, ai, bj) in [
            (e[i].clone(), e[j].clone(), false, false),
            (e[i].clone(), inv_j.clone(), false, true),
        ] {
            let c = c_value(&alpha, &beta);
            let forms = factor_conic(Family::VI, k, &c, &th).map_err(|_| {
                Error::DegenerateConfiguration(format!("x{} = {c} does not split", k + 1))
            })?;
            let companions = [
                (alpha.clone(), beta.clone(), ai, bj),
                (alpha.inv().unwrap(), beta.inv().unwrap(), !ai, !bj),
            ];
            for form in forms {
                let mut label = None;
                for (al, be, ia, ib) in &companions {
                    if form.proportional_on_plane(&l_form(i, j, k, al, be, &a), k, &c) {
                        label = Some(format!("L_{}_{}", fmt_e(i, *ia), fmt_e(j, *ib)));
                    }
                }
                let label = label.ok_or_else(|| {
                    Error::DegenerateConfiguration(format!("factor of x{} = {c} matches no l-form", k + 1))
                })?;
                lines.push(line_from_form(Family::VI, label, k, &c, form)?);
            }
        }
        // Planes from the pair (k, 4).
        for (beta, inv) in [(e[3].clone(), false), (inv_4.clone(), true)] {
            let c = c_value(&e[k], &beta);
            let forms = factor_conic(Family::VI, k, &c, &th).map_err(|_| {
                Error::DegenerateConfiguration(format!("x{} = {c} does not split", k + 1))
            })?;
            for (n, form) in forms.into_iter().enumerate() {
                let label = format!("L_{}_{}#{}", fmt_e(k, false), fmt_e(3, inv), n + 1);
                lines.push(line_from_form(Family::VI, label, k, &c, form)?);
            }
        }
    }
    check_distinct(&lines)?;
    Ok(lines)
}

fn v_eigen(params: &ParamsV) -> Result<(Rational, Rational)> {
    match (&params.e3, &params.e4) {
        (Some(e3), Some(e4)) => Ok((e3.clone(), e4.clone())),
        _ => Err(Error::IrrationalSplitting("e3 or e4 is not rational".into())),
    }
}

/// Roots of `Q1(t) = t⁴ − θ1t³ + θ4t² − e0θ2t + e0²`: `e3, 1/e3, e0e4, e0/e4`.
pub fn delta_roots(params: &ParamsV) -> Result<Vec<(String, Rational)>> {
    let (e3, e4) = v_eigen(params)?;
    Ok(vec![
        ("e3".into(), e3.clone()),
        ("e3inv".into(), e3.inv().unwrap()),
        ("e0e4".into(), &params.e0 * &e4),
        ("e0e4inv".into(), &params.e0 / &e4),
    ])
}

/// The three special planes `x3 = c` of `C_V` with their labels.
pub fn special_planes_v(params: &ParamsV) -> Result<Vec<(String, Rational)>> {
    let (e3, e4) = v_eigen(params)?;
    Ok(vec![
        ("e3_e4".into(), c_value(&e3, &e4)),
        ("e3_e4inv".into(), c_value(&e3, &e4.inv().unwrap())),
        ("e0_e0inv".into(), params.a0()),
    ])
}

/// The 18 lines of `C_V`: four Δ-lines `x1 = r, x2 = e0/r`, their images under
/// `σ2` and `σ1`, and three pairs in planes `x3 = c`. A pair that does not
/// split over the rationals is returned as a conic record.
pub fn lines_cv(params: &ParamsV) -> Result<Vec<LineRecord>> {
    params.require_generic()?;
    let th = params.theta();
    let e0 = params.e0.clone();
    let mut out = Vec::with_capacity(18);
    let roots = delta_roots(params)?;
    let mut plain = Vec::new();
    for (name, r) in &roots {
        let x2 = &e0 / r;
        let delta = Line {
            family: Family::V,
            label: format!("Delta_{name}"),
            plane: Plane { k: 0, c: r.clone() },
            form: LinearForm { coeffs: [qi(0), r.clone(), qi(0)], constant: -&e0 },
            point: [r.clone(), x2.clone(), qi(0)],
            dir: [qi(0), qi(0), qi(1)],
        };
        // σ2: x2 ↦ −x2 − x1x3 + θ2, same plane x1 = r.
        let dl = Line {
            family: Family::V,
            label: format!("Dl_{name}"),
            plane: Plane { k: 0, c: r.clone() },
            form: LinearForm { coeffs: [qi(0), qi(1), r.clone()], constant: &x2 - &th[1] },
            point: [r.clone(), -&x2 + &th[1], qi(0)],
            dir: [qi(0), -r, qi(1)],
        };
        // σ1: x1 ↦ −x1 − x2x3 + θ1, plane x2 = e0/r.
        let dr = Line {
            family: Family::V,
            label: format!("Dr_{name}"),
            plane: Plane { k: 1, c: x2.clone() },
            form: LinearForm { coeffs: [qi(1), qi(0), x2.clone()], constant: r - &th[0] },
            point: [-r + &th[0], x2.clone(), qi(0)],
            dir: [-&x2, qi(0), qi(1)],
        };
        plain.push(delta);
        plain.push(dl);
        plain.push(dr);
    }
    for (name, c) in special_planes_v(params)? {
        match factor_conic(Family::V, 2, &c, &th) {
            Ok(forms) => {
                for (n, form) in forms.into_iter().enumerate() {
                    plain.push(line_from_form(Family::V, format!("P_{name}#{}", n + 1), 2, &c, form)?);
                }
            }
            Err(Error::Irreducible) => out.push(LineRecord::Conic(ConicRecord {
                family: Family::V,
                label: format!("P_{name}"),
                plane: Plane { k: 2, c: c.clone() },
                conic: restricted_conic(Family::V, 2, &c, &th),
            })),
            Err(e) => return Err(e),
        }
    }
    check_distinct(&plain)?;
    let mut all: Vec<LineRecord> = plain.into_iter().map(LineRecord::Line).collect();
    all.extend(out);
    Ok(all)
}

/// The pair of forms `d_{f0,1/f0}`, `d_{1/f0,f0}` on `x3 = e0 + 1/e0`, when
/// `e0 = f0²` with `f0` rational.
pub fn d_forms(params: &ParamsV) -> Result<[LinearForm; 2]> {
    let f0 = params.e0.sqrt().ok_or_else(|| Error::IrrationalSplitting("e0 is not a rational square".into()))?;
    let g0 = f0.inv().unwrap();
    Ok([
        LinearForm { coeffs: [f0.clone(), g0.clone(), qi(0)], constant: -(&f0 * &params.a3) },
        LinearForm { coeffs: [g0, f0.clone(), qi(0)], constant: -(&f0 * &params.a4) },
    ])
}

/// Singular point of the section `x_k = c` (the crossing of its two lines).
pub fn crossing_point(family: Family, k: usize, c: &Rational, th: &[Rational; 4]) -> Result<[Rational; 3]> {
    let [a, b, cc, d, e, _] = restricted_conic(family, k, c, th);
    // ∂/∂s: 2A s + B t + D = 0, ∂/∂t: B s + 2C t + E = 0.
    let two = qi(2);
    let det = &two * &a * &two * &cc - &b * &b;
    if det.is_zero() {
        return Err(Error::SingularSystem(format!("x{} = {c}", k + 1)));
    }
    let s = (-&d * &two * &cc + &b * &e) / &det;
    let t = (-&two * &a * &e + &b * &d) / &det;
    let (i, j) = others(k);
    let mut x = [qi(0), qi(0), qi(0)];
    x[k] = c.clone();
    x[i] = s;
    x[j] = t;
    if !f_family(family, &x, th).is_zero() {
        return Err(Error::SingularSystem(format!("section x{} = {c} is smooth", k + 1)));
    }
    Ok(x)
}

/// A Kaneko point with the plane it lies in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanekoPoint {
    pub label: String,
    pub plane: Plane,
    pub x: [Rational; 3],
}

/// The 12 Kaneko points of `C_VI`, three per index `k` and pair type.
pub fn kaneko_points_vi(params: &ParamsVI) -> Result<Vec<KanekoPoint>> {
    let e = params.eigenvalues()?.clone();
    let th = params.theta();
    let mut out = Vec::with_capacity(12);
    for k in 0..3 {
        let (i, j) = others(k);
        let cs = [
            (format!("{}_{}", fmt_e(i, false), fmt_e(j, false)), c_value(&e[i], &e[j])),
            (format!("{}_{}", fmt_e(i, false), fmt_e(j, true)), c_value(&e[i], &e[j].inv().unwrap())),
            (format!("{}_{}", fmt_e(k, false), fmt_e(3, false)), c_value(&e[k], &e[3])),
            (format!("{}_{}", fmt_e(k, false), fmt_e(3, true)), c_value(&e[k], &e[3].inv().unwrap())),
        ];
        for (label, c) in cs {
            let x = crossing_point(Family::VI, k, &c, &th)?;
            out.push(KanekoPoint { label: format!("p_{label}"), plane: Plane { k, c }, x });
        }
    }
    Ok(out)
}

/// The 3 Kaneko points of `C_V`, in the planes `x3 = c`.
pub fn kaneko_points_v(params: &ParamsV) -> Result<Vec<KanekoPoint>> {
    let th = params.theta();
    special_planes_v(params)?
        .into_iter()
        .map(|(label, c)| {
            let x = crossing_point(Family::V, 2, &c, &th)?;
            Ok(KanekoPoint { label: format!("p_{label}"), plane: Plane { k: 2, c }, x })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn pv() -> ParamsV {
        ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap()
    }

    #[test]
    fn quadratic_factorization_reproduces_input() {
        // (2s + t − 1)(s − 3t + 4)
        let conic = [qi(2), qi(-5), qi(-3), qi(7), qi(7), qi(-4)];
        let [f, g] = factor_quadratic(&conic).unwrap();
        let prod = [
            &f[0] * &g[0],
            &f[0] * &g[1] + &f[1] * &g[0],
            &f[1] * &g[1],
            &f[0] * &g[2] + &f[2] * &g[0],
            &f[1] * &g[2] + &f[2] * &g[1],
            &f[2] * &g[2],
        ];
        assert_eq!(prod, conic);
        assert_eq!(factor_quadratic(&[qi(1), qi(0), qi(1), qi(0), qi(0), qi(-1)]), Err(Error::Irreducible));
    }

    #[test]
    fn delta_roots_example() {
        let r: Vec<Rational> = delta_roots(&pv()).unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(r, vec![qi(3), q(1, 3), qi(8), qi(2)]);
    }

    #[test]
    fn eighteen_lines_verify() {
        let p = pv();
        let lines = lines_cv(&p).unwrap();
        assert_eq!(lines.len(), 18);
        for rec in &lines {
            let l = rec.as_line().expect("all lines split at e0 = 4");
            assert!(l.verify(&p.theta()), "{}", l.label);
        }
    }

    #[test]
    fn d_forms_match_factors() {
        let p = pv();
        let c = p.a0();
        let forms = factor_conic(Family::V, 2, &c, &p.theta()).unwrap();
        for d in d_forms(&p).unwrap() {
            assert!(forms.iter().any(|f| f.proportional_on_plane(&d, 2, &c)));
        }
    }

    #[test]
    fn non_square_e0_still_splits() {
        // f0 x1 + x2/f0 − f0 a3 is f0⁻¹ (e0 x1 + x2 − e0 a3): rational for any e0.
        let p = ParamsV::from_eigenvalues(qi(3), qi(5), qi(7)).unwrap();
        assert!(d_forms(&p).is_err());
        let recs = lines_cv(&p).unwrap();
        assert_eq!(recs.iter().filter_map(LineRecord::as_line).count(), 18);
    }

    #[test]
    fn generic_plane_is_irreducible() {
        assert_eq!(factor_conic(Family::V, 2, &q(7, 11), &pv().theta()), Err(Error::Irreducible));
    }

    #[test]
    fn twenty_four_lines() {
        let p = ParamsVI::from_eigenvalues([qi(2), qi(3), qi(5), qi(7)]).unwrap();
        let lines = lines_cvi(&p).unwrap();
        assert_eq!(lines.len(), 24);
        assert!(lines.iter().all(|l| l.verify(&p.theta())));
    }

    #[test]
    fn kaneko_points_lie_on_both_lines() {
        let p = pv();
        let lines: Vec<Line> = lines_cv(&p).unwrap().into_iter().filter_map(|r| r.as_line().cloned()).collect();
        for kp in kaneko_points_v(&p).unwrap() {
            let through: Vec<_> = lines.iter().filter(|l| l.plane == kp.plane && l.form.eval(&kp.x).is_zero()).collect();
            assert_eq!(through.len(), 2, "{}", kp.label);
        }
    }
}
