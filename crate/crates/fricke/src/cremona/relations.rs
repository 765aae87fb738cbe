//! Pointwise checks of the group relations among the Cremona families.

use serde_json::{json, Value};

use crate::error::Result;
use crate::numeric::{qi, FactorList, Rational, SeededSampler};

use super::elements::{CremonaElem, DeJonquieresElem, MonomialElem, TorusElem};

/// Result of one relation over a batch of random instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVerdict {
    pub name: String,
    pub trials: usize,
    pub skipped: usize,
    /// Description of the first failing instance.
    pub failure: Option<String>,
}

impl RelationVerdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.trials > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "verdict": if self.passed() { "Equal" } else if self.failure.is_some() { "Unequal" } else { "Inconclusive" },
            "trials": self.trials,
            "skipped": self.skipped,
            "witness": self.failure,
        })
    }
}

/// `Ok(None)` passes, `Ok(Some(msg))` fails, `Err` (a pole) skips the instance.
fn run<F>(name: &str, sampler: &SeededSampler, trials: usize, check: F) -> RelationVerdict
where
    F: Fn(&mut SeededSampler) -> Result<Option<String>>,
{
    let mut v = RelationVerdict { name: name.into(), trials: 0, skipped: 0, failure: None };
    let mut i = 0u64;
    while v.trials < trials && (i as usize) < trials * 8 {
        let mut s = sampler.fork(i);
        i += 1;
        match check(&mut s) {
            Ok(None) => v.trials += 1,
            Ok(Some(msg)) => {
                v.failure = Some(format!("instance {}: {msg}", i - 1));
                return v;
            }
            Err(_) => v.skipped += 1,
        }
    }
    v
}

fn point(s: &mut SeededSampler) -> (Rational, Rational) {
    (s.nonzero(), s.nonzero())
}

fn agree(a: &CremonaElem, b: &CremonaElem, s: &mut SeededSampler) -> Result<Option<String>> {
    let (u, v) = point(s);
    let (l, r) = (a.apply(&u, &v)?, b.apply(&u, &v)?);
    Ok(if l == r { None } else { Some(format!("at ({u}, {v}): {a} gives ({}, {}), {b} gives ({}, {})", l.0, l.1, r.0, r.1)) })
}

/// Random element of `SL₂(ℤ)` with entries bounded by `height`.
pub fn random_sl2(s: &mut SeededSampler, height: i64) -> MonomialElem {
    loop {
        let mut m = MonomialElem { m: [[1, 0], [0, 1]] };
        let steps = s.int_in(1, 4);
        for _ in 0..steps {
            let k = s.int_in(-2, 2);
            let e = if s.int_in(0, 1) == 0 { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
            m = m.mul(&MonomialElem { m: e });
        }
        if m.m.iter().flatten().all(|x| x.abs() <= height) {
            return m;
        }
    }
}

/// Random factor list with `r(0) = 1`: a product of `(1 + νu)^k`.
pub fn random_unipotent_factor(s: &mut SeededSampler) -> FactorList {
    let n = s.int_in(1, 3);
    (0..n).fold(FactorList::one(), |acc, _| {
        let k = [-2, -1, 1, 2][s.int_in(0, 3) as usize];
        acc.mul(&FactorList::linear(s.nonzero()).powi(k).unwrap())
    })
}

/// Random factor list with a constant and a monomial part as well.
pub fn random_factor(s: &mut SeededSampler) -> FactorList {
    let c = s.nonzero();
    let m = s.int_in(-2, 2);
    FactorList::monomial(c, m).mul(&random_unipotent_factor(s))
}

fn random_torus(s: &mut SeededSampler) -> TorusElem {
    TorusElem::new(s.nonzero(), s.nonzero()).unwrap()
}

fn random_dj(s: &mut SeededSampler, unipotent: bool) -> DeJonquieresElem {
    if unipotent {
        DeJonquieresElem::new(qi(1), random_unipotent_factor(s)).unwrap()
    } else {
        DeJonquieresElem::new(s.nonzero(), random_factor(s)).unwrap()
    }
}

fn strip_monomial(d: DeJonquieresElem) -> DeJonquieresElem {
    DeJonquieresElem { r: FactorList { power: 0, ..d.r }, ..d }
}

/// `[a, b]` fixes `u`, its factor `s` has degree 0 with a nonzero limit at
/// infinity, and `s(0) = λ_b^{m_a} / λ_a^{m_b}` where `m` is the monomial power;
/// in particular `s(0) = 1` when neither factor has a monomial part. The closed
/// form is also checked against the pointwise word.
fn commutator_shape(a: &DeJonquieresElem, b: &DeJonquieresElem, s: &mut SeededSampler) -> Result<Option<String>> {
    let c = DeJonquieresElem::commutator(a, b);
    if !c.lambda.is_one() {
        return Ok(Some(format!("commutator moves u by {}", c.lambda)));
    }
    let want = b.lambda.pow(a.r.power as i32) / a.lambda.pow(b.r.power as i32);
    if c.r.at_zero() != Some(want.clone()) {
        return Ok(Some(format!("commutator factor {} has s(0) ≠ {want}", c.r)));
    }
    if c.r.degree() != 0 || c.r.leading_at_infinity().is_zero() {
        return Ok(Some(format!("commutator factor {} has no finite nonzero limit at infinity", c.r)));
    }
    let (ea, eb) = (CremonaElem::DeJonquieres(a.clone()), CremonaElem::DeJonquieres(b.clone()));
    let word = CremonaElem::Word(vec![ea.clone(), eb.clone(), ea.inverse(), eb.inverse()]);
    agree(&word, &CremonaElem::DeJonquieres(c), s)
}

fn ratio_is(e: &CremonaElem, want: i64, s: &mut SeededSampler) -> Result<Option<String>> {
    let (u, v) = point(s);
    let r = e.log_symplectic_ratio(&u, &v)?;
    Ok(if r == qi(want) { None } else { Some(format!("{e} at ({u}, {v}): ratio {r}")) })
}

/// Checks every relation with `trials` random instances each. Each relation
/// draws from its own fork of `sampler`.
pub fn group_relations_suite(sampler: &SeededSampler, trials: usize) -> Vec<RelationVerdict> {
    let f = |i: u64| sampler.fork(1000 + i);
    let mut out = Vec::new();

    out.push(run("blanc_p_order_five", &f(0), trials, |s| {
        agree(&CremonaElem::BlancP.pow(5), &CremonaElem::Word(vec![]), s)
    }));
    out.push(run("sigma_involution", &f(1), trials, |s| {
        agree(&CremonaElem::Sigma.pow(2), &CremonaElem::Word(vec![]), s)
    }));
    out.push(run("torus_group_law", &f(2), trials, |s| {
        let (a, b) = (random_torus(s), random_torus(s));
        agree(&CremonaElem::Torus(a.clone()).compose(&CremonaElem::Torus(b.clone())), &CremonaElem::Torus(a.mul(&b)), s)
    }));
    out.push(run("monomial_homomorphism", &f(3), trials, |s| {
        let (a, b) = (random_sl2(s, 5), random_sl2(s, 5));
        agree(&CremonaElem::Monomial(a).compose(&CremonaElem::Monomial(b)), &CremonaElem::Monomial(a.mul(&b)), s)
    }));
    out.push(run("torus_normalizer", &f(4), trials, |s| {
        let (w, t) = (random_sl2(s, 5), random_torus(s));
        let lhs = CremonaElem::Word(vec![CremonaElem::Monomial(w), CremonaElem::Torus(t.clone()), CremonaElem::Monomial(w.inverse())]);
        agree(&lhs, &CremonaElem::Torus(w.conjugate_torus(&t)), s)
    }));
    out.push(run("dj1_composition_closed_form", &f(5), trials, |s| {
        let (a, b) = (random_dj(s, false), random_dj(s, false));
        let word = CremonaElem::DeJonquieres(a.clone()).compose(&CremonaElem::DeJonquieres(b.clone()));
        agree(&word, &CremonaElem::DeJonquieres(a.compose(&b)), s)
    }));
    out.push(run("unipotent_abelian", &f(6), trials, |s| {
        let (a, b) = (random_dj(s, true), random_dj(s, true));
        let c = DeJonquieresElem::commutator(&a, &b);
        if !(c.lambda.is_one() && c.r.is_one()) {
            return Ok(Some(format!("commutator dj1({}; {})", c.lambda, c.r)));
        }
        let (ea, eb) = (CremonaElem::DeJonquieres(a), CremonaElem::DeJonquieres(b));
        agree(&ea.compose(&eb), &eb.compose(&ea), s)
    }));
    out.push(run("commutator_in_unipotent", &f(7), trials, |s| {
        let (a, b) = (random_dj(s, false), random_dj(s, false));
        let (a, b) = (strip_monomial(a), strip_monomial(b));
        commutator_shape(&a, &b, s)
    }));
    out.push(run("commutator_with_monomial_part", &f(14), trials, |s| {
        let (a, b) = (random_dj(s, false), random_dj(s, false));
        commutator_shape(&a, &b, s)
    }));
    out.push(run("pseudo_generator_conjugation", &f(8), trials, |s| {
        // t1(λ) ∘ dj1(1, 1+u) ∘ t1(λ)⁻¹ = dj1(1, 1 + u/λ).
        let l = s.nonzero();
        let t = CremonaElem::torus(l.clone(), qi(1))?;
        let lhs = CremonaElem::Word(vec![t.clone(), CremonaElem::dj1(qi(1), FactorList::linear(qi(1)))?, t.inverse()]);
        agree(&lhs, &CremonaElem::dj1(qi(1), FactorList::linear(l.inv().unwrap()))?, s)
    }));
    out.push(run("log_symplectic_torus", &f(9), trials, |s| {
        let t = CremonaElem::Torus(random_torus(s));
        ratio_is(&t, 1, s)
    }));
    out.push(run("log_symplectic_monomial", &f(10), trials, |s| {
        let w = CremonaElem::Monomial(random_sl2(s, 5));
        ratio_is(&w, 1, s)
    }));
    out.push(run("log_symplectic_dj1", &f(11), trials, |s| {
        let d = CremonaElem::DeJonquieres(random_dj(s, false));
        ratio_is(&d, 1, s)
    }));
    out.push(run("log_symplectic_blanc_p", &f(12), trials, |s| ratio_is(&CremonaElem::BlancP, 1, s)));
    // σ preserves du/u ∧ dv/v, so the σ-composed family has ratio +1 as well.
    out.push(run("log_symplectic_dj1_sigma", &f(13), trials, |s| {
        let d = CremonaElem::DeJonquieres(random_dj(s, false)).compose(&CremonaElem::Sigma);
        ratio_is(&d, 1, s)
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_relations_hold() {
        for v in group_relations_suite(&SeededSampler::new(7), 30) {
            assert!(v.passed(), "{v:?}");
            assert_eq!(v.trials, 30, "{}", v.name);
        }
    }

    #[test]
    fn torus_commutator_leaves_constant() {
        // [t1(λ), dj1(1, u)] = t2(1/λ): outside the unipotent subgroup.
        let t = DeJonquieresElem::new(qi(3), FactorList::one()).unwrap();
        let m = DeJonquieresElem::new(qi(1), FactorList::monomial(qi(1), 1)).unwrap();
        let c = DeJonquieresElem::commutator(&t, &m);
        assert_eq!((c.lambda, c.r), (qi(1), FactorList::constant(crate::numeric::q(1, 3))));
    }

    #[test]
    fn sl2_sampler_bounded() {
        let mut s = SeededSampler::new(3);
        for _ in 0..50 {
            let m = random_sl2(&mut s, 5);
            assert_eq!(m.m[0][0] * m.m[1][1] - m.m[0][1] * m.m[1][0], 1);
            assert!(m.m.iter().flatten().all(|x| x.abs() <= 5));
        }
    }

    #[test]
    fn detects_wrong_relation() {
        let v = run("p_order_four", &SeededSampler::new(1), 10, |s| {
            agree(&CremonaElem::BlancP.pow(4), &CremonaElem::Word(vec![]), s)
        });
        assert!(!v.passed());
        assert!(v.failure.is_some());
    }
}
