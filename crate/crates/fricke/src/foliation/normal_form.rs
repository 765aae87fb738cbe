//! Closed-form flow of the formal normal form near a saddle-node, with its
//! formal monodromy and exponential tori, over floating complex numbers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used by every floating comparison in this module.
pub const TOLERANCE: f64 = 1e-12;

/// `(c1, c2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalFormState {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl NormalFormState {
    pub fn new(c1: Complex64, c2: Complex64) -> Self {
        NormalFormState { c1, c2 }
    }

    /// The first integral `h = c1 c2`.
    pub fn h(&self) -> Complex64 {
        self.c1 * self.c2
    }

    pub fn close_to(&self, other: &NormalFormState) -> bool {
        close(self.c1, other.c1) && close(self.c2, other.c2)
    }
}

pub fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOLERANCE * a.norm().max(b.norm()).max(1.0)
}

fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::FloatOverflow(what.to_string()))
    }
}

/// `u1 = c1 e^{−1/x} x^{−α0+4c1c2}`, `u2 = c2 e^{1/x} x^{α0−4c1c2}` on the
/// principal branch of `log x`.
pub fn normal_form_flow(x: Complex64, state: &NormalFormState, alpha0: Complex64) -> Result<(Complex64, Complex64)> {
    if x == Complex64::new(0.0, 0.0) {
        return Err(Error::FloatOverflow("x = 0".into()));
    }
    let ex = -alpha0 + 4.0 * state.h();
    let lx = x.ln();
    let u1 = state.c1 * (-x.inv() + ex * lx).exp();
    let u2 = state.c2 * (x.inv() - ex * lx).exp();
    Ok((finite(u1, "u1")?, finite(u2, "u2")?))
}

/// `α(h)` as polynomial coefficients, constant term first.
pub fn eval_series(alpha: &[Complex64], h: Complex64) -> Complex64 {
    alpha.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * h + c)
}

/// `t_α : (c1, c2) ↦ (e^{α(h)} c1, e^{−α(h)} c2)`.
pub fn torus_action(state: &NormalFormState, alpha: &[Complex64]) -> Result<NormalFormState> {
    let e = eval_series(alpha, state.h());
    Ok(NormalFormState::new(finite(e.exp() * state.c1, "c1")?, finite((-e).exp() * state.c2, "c2")?))
}

/// `α(h) = 2πi(−α0 + 4h)`.
pub fn monodromy_series(alpha0: Complex64) -> Vec<Complex64> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    vec![-two_pi_i * alpha0, two_pi_i * 4.0]
}

/// `N̂ : (c1, c2) ↦ (e^{2πi(−α0+4h)} c1, e^{2πi(α0−4h)} c2)`.
pub fn formal_monodromy_n(state: &NormalFormState, alpha0: Complex64) -> Result<NormalFormState> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let e = two_pi_i * (-alpha0 + 4.0 * state.h());
    Ok(NormalFormState::new(finite(e.exp() * state.c1, "c1")?, finite((-e).exp() * state.c2, "c2")?))
}

/// Parses `"re,im"` or `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let f = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad float {t:?}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(f(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(f(re)?, f(im)?)),
        _ => Err(Error::Parse(format!("bad complex {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_state(rng: &mut ChaCha8Rng) -> NormalFormState {
        NormalFormState::new(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn product_is_first_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = random_state(&mut rng);
            let x = c(rng.gen_range(0.2..2.0), rng.gen_range(-1.0..1.0));
            let (u1, u2) = normal_form_flow(x, &s, c(0.3, 0.1)).unwrap();
            assert!(close(u1 * u2, s.h()));
        }
    }

    #[test]
    fn zero_torus_is_identity() {
        let s = NormalFormState::new(c(0.5, 0.2), c(-0.3, 0.7));
        assert!(torus_action(&s, &[]).unwrap().close_to(&s));
        assert!(torus_action(&s, &[c(0.0, 0.0)]).unwrap().close_to(&s));
    }

    #[test]
    fn monodromy_is_a_torus_element() {
        let s = NormalFormState::new(c(0.5, 0.2), c(-0.3, 0.7));
        let a0 = c(0.25, 0.0);
        let n = formal_monodromy_n(&s, a0).unwrap();
        assert!(n.close_to(&torus_action(&s, &monodromy_series(a0)).unwrap()));
        assert!(close(n.h(), s.h()));
        let z = NormalFormState::new(c(0.5, 0.0), c(0.0, 0.0));
        let nz = formal_monodromy_n(&z, a0).unwrap();
        assert!(close(nz.c1, (c(0.0, -2.0 * PI) * a0).exp() * z.c1));
    }

    #[test]
    fn overflow_reported() {
        let s = NormalFormState::new(c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(normal_form_flow(c(1e-3, 0.0), &s, c(0.0, 0.0)), Err(Error::FloatOverflow(_))));
        assert!(parse_complex("1,2,3").is_err());
        assert_eq!(parse_complex("1.5,-2").unwrap(), c(1.5, -2.0));
    }
}
