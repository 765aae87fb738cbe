use std::ops::Mul;

use crate::error::{Error, Result};
use crate::numeric::{qi, Rational};

/// 2×2 matrix `[[a, b], [c, d]]` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(qi(a), qi(b), qi(c), qi(d))
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn diag(e: &Rational) -> Self {
        Mat2::new(e.clone(), qi(0), qi(0), e.inv().expect("nonzero diagonal"))
    }

    /// `[[1, 0], [l, 1]]`.
    pub fn lower(l: &Rational) -> Self {
        Mat2::new(qi(1), qi(0), l.clone(), qi(1))
    }

    /// `[[1, u], [0, 1]]`.
    pub fn upper(u: &Rational) -> Self {
        Mat2::new(qi(1), u.clone(), qi(0), qi(1))
    }

    /// `[[0, 1], [−1, 0]]`.
    pub fn weyl() -> Self {
        Mat2::from_ints(0, 1, -1, 0)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        let r = det.inv().ok_or_else(|| Error::InvalidRepresentation("singular matrix".into()))?;
        Ok(Mat2::new(&self.d * &r, -(&self.b * &r), -(&self.c * &r), &self.a * &r))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn scale(&self, s: &Rational) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// `p⁻¹ · self · p`.
    pub fn conj(&self, p: &Mat2) -> Result<Mat2> {
        Ok(&(&p.inv()? * self) * p)
    }

    pub fn is_identity(&self) -> bool {
        self == &Mat2::identity()
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn apply(&self, v: &[Rational; 2]) -> [Rational; 2] {
        [&self.a * &v[0] + &self.b * &v[1], &self.c * &v[0] + &self.d * &v[1]]
    }

    /// Kernel vector of `self − λ I`, when `λ` is an eigenvalue.
    pub fn eigenvector(&self, lambda: &Rational) -> Option<[Rational; 2]> {
        let m = Mat2::new(&self.a - lambda, self.b.clone(), self.c.clone(), &self.d - lambda);
        if !m.det().is_zero() {
            return None;
        }
        if !m.a.is_zero() || !m.b.is_zero() {
            Some([m.b.clone(), -&m.a])
        } else if !m.c.is_zero() || !m.d.is_zero() {
            Some([m.d.clone(), -&m.c])
        } else {
            // Scalar matrix: every vector is an eigenvector.
            Some([qi(1), qi(0)])
        }
    }

    /// Rational eigenvalues `(λ, 1/λ·det)`, if they exist.
    pub fn rational_eigenvalues(&self) -> Option<(Rational, Rational)> {
        let t = self.trace();
        let disc = &t * &t - qi(4) * self.det();
        let s = disc.sqrt()?;
        Some(((&t + &s) / qi(2), (&t - &s) / qi(2)))
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.entries().iter().map(|r| serde_json::Value::String(r.to_string())).collect())
    }
}

impl<'b> Mul<&'b Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &'b Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

/// Lower-unipotent, diagonal, upper-unipotent factors `(l, e, u)` with
/// `[[1,0],[l,1]]·diag(e, 1/e)·[[1,u],[0,1]] = M`.
pub fn ldu(m: &Mat2) -> Result<(Rational, Rational, Rational)> {
    if !m.det().is_one() {
        return Err(Error::InvalidRepresentation("ldu needs det = 1".into()));
    }
    if m.a.is_zero() {
        return Err(Error::ZeroCorner);
    }
    Ok((&m.c / &m.a, m.a.clone(), &m.b / &m.a))
}

/// Reassembles `L·D·U`.
pub fn ldu_product(l: &Rational, e: &Rational, u: &Rational) -> Mat2 {
    &(&Mat2::lower(l) * &Mat2::diag(e)) * &Mat2::upper(u)
}

/// Whether two `SL₂` matrices share an eigenline: the trace of the product is a
/// root of `t² − (tr M)(tr N)·t + (tr M)² + (tr N)² − 4`.
pub fn is_reducible_pair(m: &Mat2, n: &Mat2) -> bool {
    let (a, b) = (m.trace(), n.trace());
    let t = (m * n).trace();
    (&t * &t - &a * &b * &t + &a * &a + &b * &b - qi(4)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    #[test]
    fn ldu_examples() {
        assert_eq!(ldu(&Mat2::from_ints(2, 3, 1, 2)).unwrap(), (q(1, 2), qi(2), q(3, 2)));
        assert_eq!(ldu(&Mat2::identity()).unwrap(), (qi(0), qi(1), qi(0)));
        assert_eq!(ldu(&Mat2::weyl()), Err(Error::ZeroCorner));
    }

    #[test]
    fn ldu_reassembles() {
        let m = Mat2::from_ints(2, 3, 1, 2);
        let (l, e, u) = ldu(&m).unwrap();
        assert_eq!(ldu_product(&l, &e, &u), m);
    }

    #[test]
    fn triangular_pairs_are_reducible() {
        let m = Mat2::new(qi(3), qi(5), qi(0), q(1, 3));
        let n = Mat2::new(q(2, 7), qi(-1), qi(0), q(7, 2));
        assert!(is_reducible_pair(&m, &n));
        assert!(!is_reducible_pair(&Mat2::from_ints(2, 3, 1, 2), &Mat2::from_ints(1, 1, 0, 1).transpose()));
    }

    #[test]
    fn commuting_pair_is_reducible() {
        let m = Mat2::from_ints(2, 3, 1, 2);
        let n = &m * &m;
        assert!(is_reducible_pair(&m, &n));
    }

    #[test]
    fn eigenvectors() {
        let m = Mat2::from_ints(2, 3, 1, 2);
        let t =Mat2::new(qi(3), qi(5), qi(0), q(1, 3));
        let v = t.eigenvector(&q(1, 3)).unwrap();
        let w = t.apply(&v);
        assert_eq!(&w[0] * &v[1], &w[1] * &v[0]);
        assert!(m.rational_eigenvalues().is_none());
    }
}
