use crate::error::{Error, Result};
use crate::numeric::{qi, Rational, SeededSampler};
use crate::surfaces::{eigen_from_trace, Params, ParamsV, ParamsVI, SurfacePoint};

use super::mat2::{ldu, Mat2};

/// Four `SL₂` matrices with `M1·M2·M3·M4 = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVI {
    pub m: [Mat2; 4],
}

impl RepVI {
    pub fn new(m: [Mat2; 4]) -> Result<Self> {
        for (i, mi) in m.iter().enumerate() {
            if !mi.det().is_one() {
                return Err(Error::InvalidRepresentation(format!("det M{} = {}", i + 1, mi.det())));
            }
        }
        if !(&(&(&m[0] * &m[1]) * &m[2]) * &m[3]).is_identity() {
            return Err(Error::InvalidRepresentation("M1 M2 M3 M4 != I".into()));
        }
        Ok(RepVI { m })
    }

    /// Completes `(M1, M2, M3)` with `M4 = (M1M2M3)⁻¹`.
    pub fn from_three(m1: Mat2, m2: Mat2, m3: Mat2) -> Result<Self> {
        let m4 = (&(&m1 * &m2) * &m3).inv()?;
        RepVI::new([m1, m2, m3, m4])
    }

    pub fn conj(&self, p: &Mat2) -> Result<Self> {
        let m = [self.m[0].conj(p)?, self.m[1].conj(p)?, self.m[2].conj(p)?, self.m[3].conj(p)?];
        Ok(RepVI { m })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "M1": self.m[0].to_json(), "M2": self.m[1].to_json(),
            "M3": self.m[2].to_json(), "M4": self.m[3].to_json(),
        })
    }
}

/// Order of the Stokes factors around the irregular point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sheet {
    /// `U1` lower, `U2` upper.
    Plus,
    /// `U1` upper, `U2` lower.
    Minus,
}

/// Normalized representation `(U1, M0, U2, M3, M4)` with
/// `U1·M0·U2·M3·M4 = I`, `M0 = diag(e0, 1/e0)`, plus the confluence parameter κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepV {
    pub sheet: Sheet,
    pub u1: Rational,
    pub e0: Rational,
    pub u2: Rational,
    pub m3: Mat2,
    pub m4: Mat2,
    pub kappa: Rational,
}

impl RepV {
    /// Builds the tuple with `M4 = (U1·M0·U2·M3)⁻¹`.
    pub fn new(sheet: Sheet, u1: Rational, e0: Rational, u2: Rational, m3: Mat2, kappa: Rational) -> Result<Self> {
        if e0.is_zero() || kappa.is_zero() {
            return Err(Error::InvalidRepresentation("e0 and kappa must be nonzero".into()));
        }
        if !m3.det().is_one() {
            return Err(Error::InvalidRepresentation("det M3 != 1".into()));
        }
        let mut rep = RepV { sheet, u1, e0, u2, m3, m4: Mat2::identity(), kappa };
        rep.m4 = (&rep.stokes_product() * &rep.m3).inv()?;
        Ok(rep)
    }

    pub fn mat_u1(&self) -> Mat2 {
        match self.sheet {
            Sheet::Plus => Mat2::lower(&self.u1),
            Sheet::Minus => Mat2::upper(&self.u1),
        }
    }

    pub fn mat_m0(&self) -> Mat2 {
        Mat2::diag(&self.e0)
    }

    pub fn mat_u2(&self) -> Mat2 {
        match self.sheet {
            Sheet::Plus => Mat2::upper(&self.u2),
            Sheet::Minus => Mat2::lower(&self.u2),
        }
    }

    /// `U1·M0·U2`.
    pub fn stokes_product(&self) -> Mat2 {
        &(&self.mat_u1() * &self.mat_m0()) * &self.mat_u2()
    }

    pub fn check(&self) -> Result<()> {
        let prod = &(&self.stokes_product() * &self.m3) * &self.m4;
        if !prod.is_identity() || !self.m3.det().is_one() || !self.m4.det().is_one() {
            return Err(Error::InvalidRepresentation("U1 M0 U2 M3 M4 != I".into()));
        }
        Ok(())
    }

    /// Conjugation by `diag(m, 1/m)`, the residual gauge.
    pub fn diag_conj(&self, m: &Rational) -> Result<Self> {
        let d = Mat2::diag(m);
        let m2 = m * m;
        let (u1, u2) = match self.sheet {
            // D⁻¹ [[1,0],[l,1]] D = [[1,0],[l m²,1]]
            Sheet::Plus => (&self.u1 * &m2, &self.u2 / &m2),
            Sheet::Minus => (&self.u1 / &m2, &self.u2 * &m2),
        };
        Ok(RepV {
            sheet: self.sheet,
            u1,
            e0: self.e0.clone(),
            u2,
            m3: self.m3.conj(&d)?,
            m4: self.m4.conj(&d)?,
            kappa: self.kappa.clone(),
        })
    }

    /// Quantities invariant under diagonal conjugation.
    pub fn d_invariants(&self) -> [Rational; 6] {
        [
            self.e0.clone(),
            &self.u1 * &self.u2,
            self.m3.a.clone(),
            self.m3.d.clone(),
            self.m4.d.clone(),
            &self.m3.b * &self.m3.c,
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "U1": self.mat_u1().to_json(),
            "M0": self.mat_m0().to_json(),
            "U2": self.mat_u2().to_json(),
            "M3": self.m3.to_json(),
            "M4": self.m4.to_json(),
            "kappa": self.kappa.to_string(),
        })
    }
}

/// Trace coordinates `(a1..a4, x1, x2, x3)` with `x1 = tr(M2M3)`,
/// `x2 = tr(M3M1)`, `x3 = tr(M1M2)`.
pub fn trace_vi(rep: &RepVI) -> ([Rational; 4], [Rational; 3]) {
    let m = &rep.m;
    let a = [m[0].trace(), m[1].trace(), m[2].trace(), m[3].trace()];
    let x = [(&m[1] * &m[2]).trace(), (&m[2] * &m[0]).trace(), (&m[0] * &m[1]).trace()];
    (a, x)
}

/// The trace point on `C_VI(θ(a))`.
pub fn trace_vi_point(rep: &RepVI) -> SurfacePoint {
    let (a, x) = trace_vi(rep);
    SurfacePoint::unchecked(Params::VI(ParamsVI::from_traces(a)), x)
}

/// `(e0, a3, a4, x1, x2, x3)` with `x1 = M3[2,2]`, `x2 = M4[2,2]`,
/// `x3 = tr(U1M0U2)`; lies on `C_V(θ⁺)`.
pub fn trace_v_plus(rep: &RepV) -> Result<([Rational; 3], [Rational; 3])> {
    if rep.sheet != Sheet::Plus {
        return Err(Error::InvalidRepresentation("plus trace map needs U1 lower".into()));
    }
    let a = [rep.e0.clone(), rep.m3.trace(), rep.m4.trace()];
    let x = [rep.m3.d.clone(), rep.m4.d.clone(), rep.stokes_product().trace()];
    Ok((a, x))
}

/// For the upper-first normalization: `(e0⁻¹, a3, a4, x1⁻, x2⁻, x3⁻)` with
/// `x1⁻ = M3[1,1]`, `x2⁻ = M4[1,1]`, `x3⁻ = tr(U1M0U2)`; lies on
/// `C_V(θ⁻)`, the `+` surface at `e0⁻¹`.
pub fn trace_v_minus(rep: &RepV) -> Result<([Rational; 3], [Rational; 3])> {
    if rep.sheet != Sheet::Minus {
        return Err(Error::InvalidRepresentation("minus trace map needs U1 upper".into()));
    }
    let a = [rep.e0.inv().unwrap(), rep.m3.trace(), rep.m4.trace()];
    let x = [rep.m3.a.clone(), rep.m4.a.clone(), rep.stokes_product().trace()];
    Ok((a, x))
}

/// The trace point as a surface point on the matching sheet.
pub fn trace_v_point(rep: &RepV) -> Result<SurfacePoint> {
    let (a, x) = match rep.sheet {
        Sheet::Plus => trace_v_plus(rep)?,
        Sheet::Minus => trace_v_minus(rep)?,
    };
    let [e0, a3, a4] = a;
    let params = ParamsV::from_traces(e0, a3, a4)?;
    Ok(SurfacePoint::unchecked(Params::V(params), x))
}

/// Inverse of the plus trace map in the gauge `u2 = 1`.
pub fn reconstruct_v(point: &SurfacePoint, kappa: &Rational) -> Result<RepV> {
    let params = point.params.as_v()?;
    let [x1, x2, x3] = &point.x;
    let e0 = &params.e0;
    let u1u2 = (x3 - params.a0()) / e0;
    if u1u2.is_zero() {
        return Err(Error::NonGenericPoint("u1 u2 = 0 (x3 = e0 + 1/e0)".into()));
    }
    let gamma3 = x2 / e0 - &params.a3 + x1;
    if gamma3.is_zero() {
        return Err(Error::NonGenericPoint("gamma3 u2 = 0".into()));
    }
    let alpha3 = &params.a3 - x1;
    let beta3 = (&alpha3 * x1 - qi(1)) / &gamma3;
    let m3 = Mat2::new(alpha3, beta3, gamma3, x1.clone());
    let rep = RepV::new(Sheet::Plus, u1u2, e0.clone(), qi(1), m3, kappa.clone())?;
    let (a, x) = trace_v_plus(&rep)?;
    if a[2] != params.a4 || x != point.x {
        return Err(Error::NonGenericPoint("reconstruction does not reproduce the point".into()));
    }
    Ok(rep)
}

/// `(U1·D_κ, D_κ⁻¹·M0·U2, M3, M4)`.
pub fn phi_kappa_rep(rep: &RepV) -> Result<RepVI> {
    if rep.sheet != Sheet::Plus {
        return Err(Error::InvalidRepresentation("confluence map needs the plus normalization".into()));
    }
    let dk = Mat2::diag(&rep.kappa);
    let dki = Mat2::diag(&rep.kappa.inv().unwrap());
    let m1 = &rep.mat_u1() * &dk;
    let m2 = &(&dki * &rep.mat_m0()) * &rep.mat_u2();
    RepVI::new([m1, m2, rep.m3.clone(), rep.m4.clone()])
}

/// Choice of eigenvalue of `M2` for the mixed basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `e2` the root of `t² − a2 t + 1` of larger absolute value; `e0 = κ e2`.
    Plus,
    /// The reciprocal root.
    Minus,
}

/// Inverse of [`phi_kappa_rep`] up to diagonal conjugation.
pub fn phi_kappa_inv_rep(rep: &RepVI, kappa: &Rational, branch: Branch) -> Result<RepV> {
    let a2 = rep.m[1].trace();
    let e2 = eigen_from_trace(&a2).ok_or_else(|| Error::IrrationalEigenvector(format!("tr M2 = {a2}")))?;
    let e2 = if e2.abs() < qi(1) { e2.inv().unwrap() } else { e2 };
    let e2 = match branch {
        Branch::Plus => e2,
        Branch::Minus => e2.inv().unwrap(),
    };
    phi_kappa_inv_rep_e0(rep, kappa, &(kappa * &e2))
}

/// Inverse of [`phi_kappa_rep`] with the target `e0` given explicitly.
///
/// The basis change `Q` has first column an eigenvector of `M2` for `e0/κ`
/// and second column an eigenvector of `M1` for `1/κ`; in that basis `M1` is
/// lower and `M2` upper triangular, and the LDU factors of `Q⁻¹M1M2Q` give
/// `(u1, e0, u2)`.
pub fn phi_kappa_inv_rep_e0(rep: &RepVI, kappa: &Rational, e0: &Rational) -> Result<RepV> {
    let [m1, m2, m3, m4] = &rep.m;
    let kinv = kappa.inv().ok_or_else(|| Error::InvalidRepresentation("kappa = 0".into()))?;
    if m1.trace() != kappa + &kinv {
        return Err(Error::InvalidRepresentation(format!("kappa = {kappa} is not an eigenvalue of M1")));
    }
    let e2 = e0 / kappa;
    if m2.trace() != &e2 + e2.inv().unwrap() {
        return Err(Error::IrrationalEigenvector(format!("{e2} is not an eigenvalue of M2")));
    }
    let v = m2.eigenvector(&e2).ok_or_else(|| Error::IrrationalEigenvector("M2".into()))?;
    let w = m1.eigenvector(&kinv).ok_or_else(|| Error::IrrationalEigenvector("M1".into()))?;
    let q = Mat2::new(v[0].clone(), w[0].clone(), v[1].clone(), w[1].clone());
    if q.det().is_zero() {
        return Err(Error::ReduciblePair);
    }
    // Unit determinant keeps the conjugates in SL2 without changing anything.
    let prod = (m1 * m2).conj(&q)?;
    let (u1, d, u2) = ldu(&prod)?;
    if &d != e0 {
        return Err(Error::InvalidRepresentation(format!("diagonal part {d} differs from e0 = {e0}")));
    }
    let m3c = m3.conj(&q)?;
    let out = RepV::new(Sheet::Plus, u1, e0.clone(), u2, m3c, kappa.clone())?;
    let m4c = m4.conj(&q)?;
    if out.m4 != m4c {
        return Err(Error::InvalidRepresentation("fourth matrix mismatch".into()));
    }
    Ok(out)
}

/// Which pure braid acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidIndex {
    B12,
    B23,
    B31,
}

impl BraidIndex {
    /// Zero-based `(i, j)`.
    pub fn pair(self) -> (usize, usize) {
        match self {
            BraidIndex::B12 => (0, 1),
            BraidIndex::B23 => (1, 2),
            BraidIndex::B31 => (2, 0),
        }
    }

    pub fn all() -> [BraidIndex; 3] {
        [BraidIndex::B12, BraidIndex::B23, BraidIndex::B31]
    }
}

fn braid12(rep: &RepVI, inverse: bool) -> Result<RepVI> {
    let [m1, m2, m3, m4] = &rep.m;
    let p = m1 * m2;
    let p = if inverse { p } else { p.inv()? };
    // conj(p) is p⁻¹·M·p, so passing (M1M2)⁻¹ realizes M ↦ (M1M2)·M·(M1M2)⁻¹.
    RepVI::new([m1.clone(), m2.clone(), m3.conj(&p)?, m4.conj(&p)?])
}

fn braid23(rep: &RepVI, inverse: bool) -> Result<RepVI> {
    let [m1, m2, m3, m4] = &rep.m;
    let p = m2 * m3;
    let p = if inverse { p } else { p.inv()? };
    RepVI::new([m1.conj(&p)?, m2.clone(), m3.clone(), m4.conj(&p)?])
}

/// Matrix-level pure braid; its trace image is the cubic braid map `h_{i,j}`.
pub fn braid_mat(rep: &RepVI, which: BraidIndex) -> Result<RepVI> {
    match which {
        BraidIndex::B12 => braid12(rep, false),
        BraidIndex::B23 => braid23(rep, false),
        // h31 = (h12 ∘ h23)⁻¹ = h23⁻¹ ∘ h12⁻¹.
        BraidIndex::B31 => braid23(&braid12(rep, true)?, true),
    }
}

/// Inverse of [`braid_mat`].
pub fn braid_mat_inv(rep: &RepVI, which: BraidIndex) -> Result<RepVI> {
    match which {
        BraidIndex::B12 => braid12(rep, true),
        BraidIndex::B23 => braid23(rep, true),
        BraidIndex::B31 => braid12(&braid23(rep, false)?, false),
    }
}

/// Matrix-level confluent braid: confluence to four matrices, the conjugation
/// `M1 ↦ (M2M3)⁻¹M1(M2M3)`, and the mixed-basis return keeping `e0`.
pub fn g23_mat(rep: &RepV) -> Result<RepV> {
    let vi = phi_kappa_rep(rep)?;
    let braided = braid23(&vi, true)?;
    match phi_kappa_inv_rep_e0(&braided, &rep.kappa, &rep.e0) {
        Err(Error::ReduciblePair) | Err(Error::ZeroCorner) => Err(Error::polar("g23_mat", "x2 = 0")),
        other => other,
    }
}

/// Random `SL₂(ℚ)` matrix.
pub fn random_sl2(s: &mut SeededSampler) -> Mat2 {
    let a = s.nonzero();
    let b = s.any();
    let c = s.any();
    let d = (qi(1) + &b * &c) / &a;
    Mat2::new(a, b, c, d)
}

pub fn random_rep_vi(s: &mut SeededSampler) -> RepVI {
    loop {
        let m1 = random_sl2(s);
        let m2 = random_sl2(s);
        let m3 = random_sl2(s);
        if let Ok(r) = RepVI::from_three(m1, m2, m3) {
            return r;
        }
    }
}

/// Random normalized tuple with all entries drawn independently.
pub fn random_rep_v(s: &mut SeededSampler, sheet: Sheet) -> RepV {
    loop {
        let e0 = s.sample_rational(&[qi(0), qi(1), qi(-1)]).unwrap();
        let u1 = s.nonzero();
        let u2 = s.nonzero();
        let m3 = random_sl2(s);
        let kappa = s.sample_rational(&[qi(0), qi(1), qi(-1)]).unwrap();
        if let Ok(r) = RepV::new(sheet, u1, e0, u2, m3, kappa) {
            return r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;
    use crate::surfaces::f_v;

    fn example() -> RepV {
        RepV::new(Sheet::Plus, qi(1), qi(2), qi(1), Mat2::from_ints(2, 3, 1, 2), qi(1)).unwrap()
    }

    #[test]
    fn worked_example() {
        let rep = example();
        assert_eq!(rep.m4, Mat2::new(qi(11), qi(-10), q(-13, 2), qi(6)));
        let (a, x) = trace_v_plus(&rep).unwrap();
        assert_eq!(a, [qi(2), qi(4), qi(17)]);
        assert_eq!(x, [qi(2), qi(6), q(9, 2)]);
        let p = ParamsV::from_traces(qi(2), qi(4), qi(17)).unwrap();
        assert_eq!(p.theta(), [qi(38), qi(25), qi(2), qi(141)]);
        assert!(f_v(&x, &p.theta()).is_zero());
        // e0 u1 u2 = x3 − e0 − 1/e0
        assert_eq!(&rep.e0 * &rep.u1 * &rep.u2, &x[2] - p.a0());
    }

    #[test]
    fn identity_tuple_traces() {
        let r = RepVI::new([Mat2::identity(), Mat2::identity(), Mat2::identity(), Mat2::identity()]).unwrap();
        assert_eq!(trace_vi(&r), ([qi(2), qi(2), qi(2), qi(2)], [qi(2), qi(2), qi(2)]));
    }

    #[test]
    fn reconstruction_degenerate() {
        let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
        // x3 = e0 + 1/e0 = 5/2, pick x1 and solve x2 from F = 0 (linear in x3 only,
        // so choose a point on the plane through a line-free route).
        let x3 = p.a0();
        let th = p.theta();
        // F = x1 x2 x3 + x1² + x2² − θ1x1 − θ2x2 − e0x3 + θ4 with x1 = 0:
        // x2² − θ2 x2 + θ4 − e0 x3 = x2² − 11x2 + 30 = (x2 − 5)(x2 − 6)
        let pt = SurfacePoint::v(&p, [qi(0), qi(5), x3]).unwrap();
        assert_eq!(th[1], qi(11));
        assert!(matches!(reconstruct_v(&pt, &qi(1)), Err(Error::NonGenericPoint(_))));
    }

    #[test]
    fn confluence_of_trivial_unipotents() {
        let rep = RepV::new(Sheet::Plus, qi(0), qi(2), qi(0), Mat2::from_ints(2, 3, 1, 2), qi(1)).unwrap();
        let vi = phi_kappa_rep(&rep).unwrap();
        assert!(vi.m[0].is_identity());
        assert_eq!(vi.m[1], Mat2::diag(&qi(2)));
    }

    #[test]
    fn recovered_m0_is_product_of_eigenvalues() {
        let rep = RepV::new(Sheet::Plus, q(1, 3), qi(3), qi(2), Mat2::from_ints(2, 3, 1, 2), qi(5)).unwrap();
        let vi = phi_kappa_rep(&rep).unwrap();
        let back = phi_kappa_inv_rep(&vi, &qi(5), Branch::Minus).unwrap();
        // e1 = κ = 5, e2 = e0/κ = 3/5
        assert_eq!(back.e0, qi(5) * q(3, 5));
        assert_eq!(back.d_invariants(), rep.d_invariants());
    }

    #[test]
    fn common_eigenvector_is_reducible() {
        let m1 = Mat2::new(qi(2), qi(1), qi(0), q(1, 2));
        let m2 = Mat2::new(qi(3), qi(5), qi(0), q(1, 3));
        let m3 = Mat2::from_ints(2, 3, 1, 2);
        let rep = RepVI::from_three(m1, m2, m3).unwrap();
        // (1, 0) is the 1/κ-eigenvector of M1 and the e0/κ-eigenvector of M2.
        assert_eq!(phi_kappa_inv_rep_e0(&rep, &q(1, 2), &q(3, 2)), Err(Error::ReduciblePair));
    }
}
