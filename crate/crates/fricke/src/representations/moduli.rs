use crate::error::{Error, Result};
use crate::numeric::{qi, Rational, SeededSampler};

/// Trace-free residues `A0 = [[a0, b0], [c0, −a0]]`, `A1` likewise, and the
/// irregular part `A∞ = diag(t/2, −t/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliSystem {
    pub a0: Rational,
    pub b0: Rational,
    pub c0: Rational,
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
    pub t: Rational,
}

/// `(α0, α1, α∞, τ, β0, β1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliInvariants {
    pub alpha0: Rational,
    pub alpha1: Rational,
    pub alpha_inf: Rational,
    pub tau: Rational,
    pub beta0: Rational,
    pub beta1: Rational,
}

impl ModuliInvariants {
    pub fn to_vec(&self) -> Vec<Rational> {
        vec![
            self.alpha0.clone(),
            self.alpha1.clone(),
            self.alpha_inf.clone(),
            self.tau.clone(),
            self.beta0.clone(),
            self.beta1.clone(),
        ]
    }
}

impl ModuliSystem {
    pub fn invariants(&self) -> ModuliInvariants {
        ModuliInvariants {
            alpha0: &self.a0 * &self.a0 + &self.b0 * &self.c0,
            alpha1: &self.a1 * &self.a1 + &self.b1 * &self.c1,
            alpha_inf: (&self.a0 + &self.a1).square(),
            tau: &self.a0 * &self.t,
            beta0: &self.b0 * &self.c1 + &self.b1 * &self.c0,
            beta1: &self.t * (&self.b0 * &self.c1 - &self.b1 * &self.c0),
        }
    }

    /// Conjugation by `diag(m, 1/m)`.
    pub fn act_torus(&self, m: &Rational) -> ModuliSystem {
        let m2 = m.square();
        ModuliSystem {
            a0: self.a0.clone(),
            b0: &self.b0 * &m2,
            c0: &self.c0 / &m2,
            a1: self.a1.clone(),
            b1: &self.b1 * &m2,
            c1: &self.c1 / &m2,
            t: self.t.clone(),
        }
    }

    /// `A ↦ −Aᵀ` on all three residues; on `A∞` this flips the sign of `t`.
    pub fn act_p(&self) -> ModuliSystem {
        ModuliSystem {
            a0: -&self.a0,
            b0: -&self.c0,
            c0: -&self.b0,
            a1: -&self.a1,
            b1: -&self.c1,
            c1: -&self.b1,
            t: -&self.t,
        }
    }

    pub fn random(s: &mut SeededSampler) -> ModuliSystem {
        ModuliSystem { a0: s.nonzero(), b0: s.nonzero(), c0: s.nonzero(), a1: s.any(), b1: s.any(), c1: s.any(), t: s.nonzero() }
    }
}

/// Rebuilds a system with the given invariants at the given `t`, in the
/// gauge `b0 = 1`. The elimination runs `a0` from `τ`, `b0c0` from `α0`,
/// `(b1, c1)` from the linear `β` system, then `a1` from `α∞`; the result is
/// checked against all six invariants, since for a wrong `t` the system is
/// inconsistent.
pub fn moduli_reconstruct(inv: &ModuliInvariants, t: &Rational) -> Result<ModuliSystem> {
    if t.is_zero() {
        return Err(Error::NonGenericParams("t = 0".into()));
    }
    let a0 = &inv.tau / t;
    if a0.is_zero() {
        return Err(Error::NonGenericParams("a0 = 0".into()));
    }
    let b0c0 = &inv.alpha0 - a0.square();
    if b0c0.is_zero() {
        return Err(Error::NonGenericParams("b0 c0 = 0".into()));
    }
    let b0 = qi(1);
    let c0 = b0c0.clone();
    // b0 c1 + b1 c0 = β0, b0 c1 − b1 c0 = β1 / t
    let d = &inv.beta1 / t;
    let c1 = (&inv.beta0 + &d) / qi(2);
    let b1 = (&inv.beta0 - &d) / (qi(2) * &c0);
    let b1c1 = &b1 * &c1;
    // (a0 + a1)² = α∞ with a0² = α0 − b0c0, a1² = α1 − b1c1
    let a1 = (&inv.alpha_inf - &inv.alpha0 - &inv.alpha1 + &b0c0 + &b1c1) / (qi(2) * &a0);
    let sys = ModuliSystem { a0, b0, c0, a1, b1, c1, t: t.clone() };
    if &sys.invariants() != inv {
        return Err(Error::NonGenericParams("invariants are not attained at this t".into()));
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn example() -> ModuliSystem {
        ModuliSystem { a0: qi(2), b0: qi(3), c0: qi(-1), a1: q(1, 2), b1: qi(5), c1: qi(4), t: qi(3) }
    }

    #[test]
    fn invariants_by_hand() {
        let i = example().invariants();
        assert_eq!(i.alpha0, qi(1));
        assert_eq!(i.alpha1, q(81, 4));
        assert_eq!(i.alpha_inf, q(25, 4));
        assert_eq!(i.tau, qi(6));
        assert_eq!(i.beta0, qi(7));
        assert_eq!(i.beta1, qi(51));
    }

    #[test]
    fn actions_preserve_invariants() {
        let s = example();
        assert_eq!(s.act_torus(&q(2, 3)).invariants(), s.invariants());
        assert_eq!(s.act_p().invariants(), s.invariants());
    }

    #[test]
    fn round_trip() {
        let s = example();
        let r = moduli_reconstruct(&s.invariants(), &s.t).unwrap();
        assert_eq!(r.invariants(), s.invariants());
        assert!(moduli_reconstruct(&s.invariants(), &qi(0)).is_err());
    }
}
