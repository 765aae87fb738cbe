//! Registry of verification suites shared by the command line and the
//! acceptance run. Map identities are listed declaratively in [`IDENTITIES`];
//! everything else is a property check written against the module APIs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cremona::{group_relations_suite, CremonaElem, RelationVerdict};
use crate::dynamics::{
    check_property, check_sign, cluster_pair, cluster_sequence_laurent, cluster_values, compare_maps, phi_kappa,
    phi_kappa_inv, phi_kappa_polar_value, poly_eval, q_for, stokes_line_translation, stokes_s1_lifted, ParamSource,
    PropertyReport, SurfaceMap, Verdict,
};
use crate::error::{Error, Result};
use crate::foliation::census::u_plane_zeros;
use crate::foliation::field::pi_coherence_factor;
use crate::foliation::normal_form::close;
use crate::foliation::{
    normal_form_flow, singular_census, torus_action, transition, vector_field, AlphaParams, Chart, ChartPoint,
    NormalFormState, PointKind,
};
use crate::numeric::{q, qi, FactorList, Rational, SeededSampler};
use crate::representations::{
    braid_mat, g23_mat, moduli_reconstruct, random_rep_v, random_rep_vi, trace_v_point, trace_vi_point, BraidIndex,
    ModuliSystem, Sheet,
};
use crate::surfaces::{
    f_v, f_vi, kaneko_points_v, kaneko_points_vi, lines_cv, lines_cvi, Params, ParamsV, SurfacePoint,
};

/// How a suite is run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Overrides each suite's default trial count.
    pub trials: Option<usize>,
    /// Plants a constant shift on the left side of every listed identity.
    pub corrupt: bool,
}

impl HarnessConfig {
    pub fn new(seed: u64) -> Self {
        HarnessConfig { seed, trials: None, corrupt: false }
    }
}

/// One identity or property with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// `Equal`, `Unequal`, `Inconclusive` for sampled checks; `Pass`, `Fail` for fixed ones.
    pub verdict: String,
    pub trials: usize,
    pub skipped: usize,
    pub witness: Option<Value>,
}

impl CheckRecord {
    fn fixed(name: &str, ok: bool, detail: impl FnOnce() -> Value) -> Self {
        CheckRecord {
            name: name.into(),
            passed: ok,
            verdict: if ok { "Pass" } else { "Fail" }.into(),
            trials: 1,
            skipped: 0,
            witness: if ok { None } else { Some(detail()) },
        }
    }

    fn from_verdict(name: &str, v: &Verdict) -> Self {
        let (trials, skipped, witness) = match v {
            Verdict::Equal { trials, skipped } => (*trials, *skipped, None),
            Verdict::Unequal(w) => (0, 0, Some(w.to_json())),
            Verdict::Inconclusive { attempts } => (0, *attempts, None),
        };
        CheckRecord { name: name.into(), passed: v.is_equal(), verdict: v.label().into(), trials, skipped, witness }
    }

    fn from_report(name: &str, r: &PropertyReport) -> Self {
        let verdict = match (&r.failure, r.passed) {
            (Some(_), _) => "Unequal",
            (None, 0) => "Inconclusive",
            _ => "Equal",
        };
        CheckRecord {
            name: name.into(),
            passed: r.ok(),
            verdict: verdict.into(),
            trials: r.passed,
            skipped: r.skipped,
            witness: r.failure.as_ref().map(|(p, m)| json!({ "point": p.to_json(), "observed": m })),
        }
    }

    fn from_relation(v: &RelationVerdict) -> Self {
        let j = v.to_json();
        CheckRecord {
            name: v.name.clone(),
            passed: v.passed(),
            verdict: j["verdict"].as_str().unwrap_or("Unequal").into(),
            trials: v.trials,
            skipped: v.skipped,
            witness: v.failure.as_ref().map(|f| json!(f)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "verdict": self.verdict,
            "trials": self.trials,
            "skipped": self.skipped,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "description": self.description,
            "passed": self.passed(),
            "checks": self.checks.iter().map(CheckRecord::to_json).collect::<Vec<_>>(),
        })
    }

    /// `suite,check,verdict,trials,skipped,witness` rows without a header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let w = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                format!("{},{},{},{},{},{}", self.suite, c.name, c.verdict, c.trials, c.skipped, csv_quote(&w))
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "suite,check,verdict,trials,skipped,witness";

pub fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// What a suite sees while running.
pub struct SuiteContext {
    pub sampler: SeededSampler,
    pub trials: usize,
    pub corrupt: bool,
}

impl SuiteContext {
    /// Sampler for the `i`-th check of the suite.
    fn fork(&self, i: u64) -> SeededSampler {
        self.sampler.fork(i)
    }
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub default_trials: usize,
    run: fn(&SuiteContext) -> Vec<CheckRecord>,
}

/// Parameter source of a listed identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Src {
    V,
    VI,
}

/// `lhs = rhs` as surface maps. `{k}` and `{k2}` stand for a random `κ` and `κ²`;
/// such identities are checked for [`KAPPA_DRAWS`] values of `κ`.
pub struct Identity {
    pub suite: &'static str,
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub src: Src,
}

pub const KAPPA_DRAWS: usize = 5;

pub const IDENTITIES: &[Identity] = &[
    Identity { suite: "tame", name: "sigma1_involution", lhs: "sigma1 . sigma1", rhs: "id", src: Src::V },
    Identity { suite: "tame", name: "sigma2_involution", lhs: "sigma2 . sigma2", rhs: "id", src: Src::V },
    Identity { suite: "tame", name: "g_is_sigma1_sigma2", lhs: "g", rhs: "sigma1 . sigma2", src: Src::V },
    Identity { suite: "tame", name: "g_inverse", lhs: "g . g^-1", rhs: "id", src: Src::V },
    Identity { suite: "tame", name: "half_braid_squared", lhs: "b34 . b34", rhs: "g", src: Src::V },
    Identity { suite: "tame", name: "half_braid_inverse", lhs: "b34^-1 . b34", rhs: "id", src: Src::V },
    Identity { suite: "braid", name: "h_cycle", lhs: "h12 . h23 . h31", rhs: "id", src: Src::VI },
    Identity { suite: "braid", name: "h12_inverse", lhs: "h12 . h12^-1", rhs: "id", src: Src::VI },
    Identity { suite: "braid", name: "h23_inverse", lhs: "h23 . h23^-1", rhs: "id", src: Src::VI },
    Identity { suite: "braid", name: "h31_inverse", lhs: "h31 . h31^-1", rhs: "id", src: Src::VI },
    Identity { suite: "confluence", name: "phi_round_trip", lhs: "phiinv({k}) . phi({k})", rhs: "id", src: Src::V },
    Identity { suite: "canonical", name: "chain_s2_m_s1", lhs: "s2 . m . s1", rhs: "g", src: Src::V },
    Identity { suite: "canonical", name: "g_g23_g31", lhs: "g . g23({k}) . g31({k})", rhs: "id", src: Src::V },
    Identity { suite: "canonical", name: "g13_is_g_g23", lhs: "g13({k})", rhs: "g . g23({k})", src: Src::V },
    Identity { suite: "canonical", name: "g23_torus_factor", lhs: "g23({k})", rhs: "g23(1) . ft2({k2})", src: Src::V },
    Identity { suite: "canonical", name: "s1_inverse_factor", lhs: "s1^-1", rhs: "g23(1) . ft2(u^2)", src: Src::V },
    Identity { suite: "canonical", name: "s2_shift", lhs: "s2", rhs: "g . s0 . g^-1", src: Src::V },
    Identity { suite: "canonical", name: "s3_shift", lhs: "s3", rhs: "g . s1 . g^-1", src: Src::V },
    Identity { suite: "canonical", name: "s4_shift", lhs: "s4", rhs: "g . s2 . g^-1", src: Src::V },
    Identity { suite: "canonical", name: "g23_g32_inverse", lhs: "g32({k}) . g23({k})", rhs: "id", src: Src::V },
    Identity { suite: "canonical", name: "m_half_squared", lhs: "mhalf . mhalf", rhs: "m^-1", src: Src::V },
];

/// Planted fault: shifts `x1` after the left side.
pub const FAULT_WORD: &str = "shift(1/7)";

fn instantiate(word: &str, kappa: &Rational) -> String {
    word.replace("{k2}", &(kappa * kappa).to_string()).replace("{k}", &kappa.to_string())
}

fn run_identity(id: &Identity, ctx: &SuiteContext, sampler: &SeededSampler) -> CheckRecord {
    let src = match id.src {
        Src::V => ParamSource::RandomV,
        Src::VI => ParamSource::RandomVI,
    };
    let with_kappa = id.lhs.contains("{k") || id.rhs.contains("{k");
    let kappas: Vec<Rational> = if with_kappa {
        let mut s = sampler.fork(u64::MAX);
        (0..KAPPA_DRAWS).map(|_| s.sample_rational(&[qi(0), qi(1), qi(-1)]).unwrap()).collect()
    } else {
        vec![qi(1)]
    };
    let mut total = CheckRecord { name: id.name.into(), passed: true, verdict: "Equal".into(), trials: 0, skipped: 0, witness: None };
    for (i, kappa) in kappas.iter().enumerate() {
        let mut lhs = instantiate(id.lhs, kappa);
        if ctx.corrupt {
            lhs = format!("{FAULT_WORD} . {lhs}");
        }
        let rhs = instantiate(id.rhs, kappa);
        let (f, h) = match (SurfaceMap::parse(&lhs), SurfaceMap::parse(&rhs)) {
            (Ok(f), Ok(h)) => (f, h),
            (Err(e), _) | (_, Err(e)) => {
                return CheckRecord::fixed(id.name, false, || json!({ "error": e.to_string() }));
            }
        };
        let v = compare_maps(&f, &h, &src, &sampler.fork(i as u64), ctx.trials);
        let r = CheckRecord::from_verdict(id.name, &v);
        total.trials += r.trials;
        total.skipped += r.skipped;
        if !r.passed {
            let mut w = r.witness.unwrap_or(Value::Null);
            if with_kappa {
                w = json!({ "kappa": kappa.to_string(), "lhs": lhs, "rhs": rhs, "witness": w });
            }
            return CheckRecord { witness: Some(w), trials: total.trials, skipped: total.skipped, ..r };
        }
    }
    total
}

fn identities_of(suite: &str, ctx: &SuiteContext) -> Vec<CheckRecord> {
    IDENTITIES
        .iter()
        .enumerate()
        .filter(|(_, id)| id.suite == suite)
        .map(|(i, id)| run_identity(id, ctx, &ctx.fork(10_000 + i as u64)))
        .collect()
}

/// Runs `check` on `trials` random instances; `Ok(None)` passes, `Ok(Some)`
/// fails with a description, `Err` skips the instance.
fn sampled<F>(name: &str, sampler: &SeededSampler, trials: usize, check: F) -> CheckRecord
where
    F: Fn(&mut SeededSampler) -> Result<Option<String>>,
{
    let mut rec = CheckRecord { name: name.into(), passed: false, verdict: "Inconclusive".into(), trials: 0, skipped: 0, witness: None };
    let mut i = 0u64;
    while rec.trials < trials && (i as usize) < trials.max(1) * 8 {
        let mut s = sampler.fork(i);
        match check(&mut s) {
            Ok(None) => rec.trials += 1,
            Ok(Some(msg)) => {
                rec.verdict = "Unequal".into();
                rec.witness = Some(json!({ "instance": i, "observed": msg }));
                return rec;
            }
            Err(_) => rec.skipped += 1,
        }
        i += 1;
    }
    if rec.trials > 0 {
        rec.passed = true;
        rec.verdict = "Equal".into();
    }
    rec
}

fn std_params() -> ParamsV {
    ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap()
}

fn std_point() -> SurfacePoint {
    SurfacePoint::v(&std_params(), [qi(1), qi(1), qi(13)]).unwrap()
}

fn strs(x: &[Rational]) -> Vec<String> {
    x.iter().map(|r| r.to_string()).collect()
}

fn word(s: &str) -> SurfaceMap {
    SurfaceMap::parse(s).expect("registered word parses")
}

fn mismatch(what: &str, got: &[Rational], want: &[Rational]) -> Option<String> {
    if got == want {
        None
    } else {
        Some(format!("{what}: got {:?}, expected {:?}", strs(got), strs(want)))
    }
}

// ---------------------------------------------------------------- suites

fn suite_fricke(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let vi = sampled("rep_vi_traces_on_cubic", &ctx.fork(0), ctx.trials, |s| {
        let p = trace_vi_point(&random_rep_vi(s));
        Ok(if p.residual().is_zero() { None } else { Some(format!("F_VI = {}", p.residual())) })
    });
    let v = |name: &str, sheet: Sheet, i: u64| {
        sampled(name, &ctx.fork(i), ctx.trials, move |s| {
            let p = trace_v_point(&random_rep_v(s, sheet))?;
            Ok(if p.residual().is_zero() { None } else { Some(format!("F_V = {}", p.residual())) })
        })
    };
    vec![vi, v("rep_v_plus_traces_on_cubic", Sheet::Plus, 1), v("rep_v_minus_traces_on_cubic", Sheet::Minus, 2)]
}

fn random_point3(s: &mut SeededSampler) -> [Rational; 3] {
    [s.any(), s.any(), s.any()]
}

fn random_theta(s: &mut SeededSampler) -> [Rational; 4] {
    [s.any(), s.any(), s.any(), s.any()]
}

fn suite_tame(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut out = vec![sampled("ambient_invariance_of_f_v", &ctx.fork(0), ctx.trials, |s| {
        let (x, th) = (random_point3(s), random_theta(s));
        let f = f_v(&x, &th);
        for (name, y) in [
            ("sigma1", crate::dynamics::sigma1(&x, &th)),
            ("sigma2", crate::dynamics::sigma2(&x, &th)),
            ("g", crate::dynamics::tame_g(&x, &th)),
        ] {
            if f_v(&y, &th) != f {
                return Ok(Some(format!("F_V changes under {name} at {:?}", strs(&x))));
            }
        }
        Ok(None)
    })];
    out.extend(identities_of("tame", ctx));
    let g = word("g").eval(&std_point());
    out.push(CheckRecord::fixed("worked_g_1_1_13", g.as_ref().is_ok_and(|p| p.x == [qi(51), qi(-3), qi(13)]), || {
        json!(g.as_ref().map(|p| strs(&p.x)).map_err(|e| e.to_string()))
    }));
    let b = word("b34 . b34").eval(&std_point());
    let ok = b.as_ref().is_ok_and(|p| p.x == [qi(51), qi(-3), qi(13)] && p.params.theta() == std_params().theta());
    out.push(CheckRecord::fixed("worked_half_braid_squared", ok, || json!(b.as_ref().map(|p| p.to_json()).map_err(|e| e.to_string()))));
    let th = std_params().theta();
    out.push(CheckRecord::fixed("worked_theta", th == [qi(13), qi(11), qi(2), qi(35)], || json!(strs(&th))));
    out
}

fn suite_braid(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut out = vec![sampled("ambient_invariance_of_f_vi", &ctx.fork(0), ctx.trials, |s| {
        let (x, th) = (random_point3(s), random_theta(s));
        let f = f_vi(&x, &th);
        for b in BraidIndex::all() {
            if f_vi(&crate::dynamics::braid_h(b, &x, &th), &th) != f {
                return Ok(Some(format!("F_VI changes under {b:?} at {:?}", strs(&x))));
            }
        }
        Ok(None)
    })];
    out.extend(identities_of("braid", ctx));
    out
}

fn suite_confluence(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let (y, pvi) = phi_kappa(&std_point().x, &std_params(), &qi(1));
    let mut out = vec![
        CheckRecord::fixed("worked_phi_point", y == [q(3, 2), q(-1, 2), qi(13)], || json!(strs(&y))),
        CheckRecord::fixed("worked_theta_kappa", pvi.theta() == [q(35, 2), q(37, 2), qi(20), q(461, 4)], || json!(strs(&pvi.theta()))),
        CheckRecord::fixed("worked_image_on_cubic", f_vi(&y, &pvi.theta()).is_zero(), || json!(f_vi(&y, &pvi.theta()).to_string())),
    ];
    out.extend(identities_of("confluence", ctx));
    out.push(sampled("phi_image_on_cubic", &ctx.fork(1), ctx.trials, |s| {
        let p = crate::dynamics::random_params_v(s)?;
        let x = crate::surfaces::sample_v(&p, s)?;
        let kappa = s.sample_rational(&[qi(0)])?;
        let (y, pvi) = phi_kappa(&x.x, &p, &kappa);
        let r = f_vi(&y, &pvi.theta());
        Ok(if r.is_zero() { None } else { Some(format!("F_VI = {r}")) })
    }));
    out.push(sampled("polar_locus_exact", &ctx.fork(2), ctx.trials, |s| {
        let p = crate::dynamics::random_params_v(s)?;
        let kappa = s.sample_rational(&[qi(0)])?;
        let c = phi_kappa_polar_value(&p, &kappa);
        let (y1, y2) = (s.any(), s.any());
        let on = phi_kappa_inv(&[y1.clone(), y2.clone(), c.clone()], &p, &kappa);
        if !matches!(on, Err(Error::PolarLocus { .. })) {
            return Ok(Some(format!("no PolarLocus at x3 = {c}")));
        }
        let off = &c + s.nonzero();
        Ok(match phi_kappa_inv(&[y1, y2, off.clone()], &p, &kappa) {
            Ok(_) => None,
            Err(e) => Some(format!("{} at x3 = {off} off the polar plane {c}", e.name())),
        })
    }));
    out
}

fn suite_dual_path(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let h23 = SurfaceMap::single(crate::dynamics::Generator::H(BraidIndex::B23));
    let a = sampled("trace_commutes_with_h23", &ctx.fork(0), ctx.trials, |s| {
        let rep = random_rep_vi(s);
        let lhs = trace_vi_point(&braid_mat(&rep, BraidIndex::B23)?);
        let rhs = h23.eval(&trace_vi_point(&rep))?;
        Ok(mismatch("trace of braided tuple vs h23 of traces", &lhs.x, &rhs.x).or_else(|| {
            (lhs.params.theta() != rhs.params.theta()).then(|| "parameters differ".to_string())
        }))
    });
    let b = sampled("trace_commutes_with_g23", &ctx.fork(1), ctx.trials, |s| {
        let rep = random_rep_v(s, Sheet::Plus);
        let lhs = trace_v_point(&g23_mat(&rep)?)?;
        let g = SurfaceMap::single(crate::dynamics::Generator::G23(rep.kappa.clone()));
        let rhs = g.eval(&trace_v_point(&rep)?)?;
        Ok(mismatch("trace of transformed tuple vs g23 of traces", &lhs.x, &rhs.x))
    });
    vec![a, b]
}

fn suite_canonical(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let p = std_params();
    let x = std_point().x;
    let mut out = Vec::new();
    let chain = (|| -> Result<Vec<Option<String>>> {
        let a = crate::dynamics::stokes_s(1, &x, &p)?;
        let pair2 = cluster_pair(&a, &p, 2)?;
        let b = crate::dynamics::formal_monodromy(&a, &p)?;
        let pair_b = cluster_pair(&b, &p, 2)?;
        let c = crate::dynamics::stokes_s(2, &b, &p)?;
        Ok(vec![
            mismatch("s1 image", &a, &[q(1, 2), qi(2), q(43, 4)]),
            mismatch("(y2, z2) after s1", &[pair2.0, pair2.1], &[qi(2), qi(-20)]),
            mismatch("(y2, z2) after m", &[pair_b.0, pair_b.1], &[qi(2), qi(-5)]),
            mismatch("s2 image", &c, &[qi(51), qi(-3), qi(13)]),
        ])
    })();
    let msgs: Vec<String> = match chain {
        Ok(v) => v.into_iter().flatten().collect(),
        Err(e) => vec![e.to_string()],
    };
    out.push(CheckRecord::fixed("worked_chain", msgs.is_empty(), || json!(msgs)));
    let g23 = word("g23(1)").eval(&std_point());
    let ok = g23.as_ref().is_ok_and(|p| p.x == [qi(2), q(1, 2), q(31, 4)]);
    out.push(CheckRecord::fixed("worked_g23", ok, || json!(g23.as_ref().map(|p| strs(&p.x)).map_err(|e| e.to_string()))));
    out.extend(identities_of("canonical", ctx));
    out
}

/// `(word, sign)` pairs of the sign suite: the sign each map is declared to
/// pull the area form back with.
pub const SIGN_TABLE: &[(&str, i32)] = &[
    ("sigma1", -1),
    ("sigma2", -1),
    ("b34", -1),
    ("g", 1),
    ("g23(3/2)", 1),
    ("g31(3/2)", 1),
    ("s1", 1),
    ("s2", 1),
    ("t1(5/3)", 1),
    ("t2(5/3)", 1),
    ("m", 1),
    ("phi(3/2)", 1),
];

fn suite_signs(ctx: &SuiteContext) -> Vec<CheckRecord> {
    SIGN_TABLE
        .iter()
        .enumerate()
        .map(|(i, (w, sign))| {
            let r = check_sign(&word(w), *sign, &ParamSource::RandomV, &ctx.fork(i as u64), ctx.trials);
            CheckRecord::from_report(&format!("sign_{w}"), &r)
        })
        .collect()
}

fn exchange_failure(values: &[(i64, Rational, Rational)], p: &ParamsV) -> Option<String> {
    for w in values.windows(2) {
        let ((k, y, z), (k1, y1, z1)) = (&w[0], &w[1]);
        if y * y1 != z + &p.e0 {
            return Some(format!("y{k} y{k1} != z{k} + e0"));
        }
        if z * z1 != poly_eval(&q_for(*k1, p), y1) {
            return Some(format!("z{k} z{k1} != Q(y{k1})"));
        }
    }
    None
}

fn suite_cluster(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let p = std_params();
    let vals = cluster_values(&std_point(), 0, 3);
    let ok = vals.as_ref().is_ok_and(|v| {
        let ys: Vec<Rational> = v.iter().map(|t| t.1.clone()).collect();
        let zs: Vec<Rational> = v.iter().map(|t| t.2.clone()).collect();
        ys == [qi(-3), qi(1), qi(1), qi(-1)] && zs[..3] == [qi(-5), qi(-1), qi(-3)]
    });
    let mut out = vec![CheckRecord::fixed("worked_values", ok, || json!(format!("{vals:?}")))];
    let rel = vals.as_ref().ok().and_then(|v| exchange_failure(v, &p));
    out.push(CheckRecord::fixed("worked_exchange_relations", vals.is_ok() && rel.is_none(), || json!(rel)));
    out.push(sampled("exchange_relations_numeric", &ctx.fork(0), ctx.trials, |s| {
        let pv = crate::dynamics::random_params_v(s)?;
        let x = crate::surfaces::sample_v(&pv, s)?;
        let v = cluster_values(&x, -6, 6)?;
        Ok(exchange_failure(&v, &pv))
    }));
    let sym = cluster_sequence_laurent(&p, 6);
    out.push(CheckRecord::fixed("laurent_standard_k6", sym.is_ok(), || json!(format!("{:?}", sym.as_ref().err()))));
    out.push(sampled("laurent_random_params_k3", &ctx.fork(1), ctx.trials.min(2), |s| {
        let pv = crate::dynamics::random_params_v(s)?;
        Ok(cluster_sequence_laurent(&pv, 3).err().map(|f| format!("{} at index {}", f.error, f.index)))
    }));
    out
}

fn suite_lines(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let p = ParamsV::from_eigenvalues(qi(4), qi(3), qi(2)).unwrap();
    let th = p.theta();
    let mut out = Vec::new();
    let lines = lines_cv(&p);
    let ok = lines.as_ref().is_ok_and(|l| l.len() == 18 && l.iter().all(|r| r.as_line().is_some_and(|x| x.verify(&th))));
    out.push(CheckRecord::fixed("cv_18_lines_verify", ok, || json!(format!("{:?}", lines.as_ref().map(|l| l.len())))));
    let roots = crate::surfaces::lines::delta_roots(&p);
    let want = [qi(3), q(1, 3), qi(8), qi(2)];
    let ok = roots.as_ref().is_ok_and(|r| r.iter().map(|t| t.1.clone()).collect::<Vec<_>>() == want);
    out.push(CheckRecord::fixed("delta_lines_x1", ok, || json!(format!("{roots:?}"))));
    out.push(sampled("stokes_translation_on_delta_lines", &ctx.fork(0), ctx.trials, |s| {
        for r in &want {
            let x = [r.clone(), &p.e0 / r, s.any()];
            if !f_v(&x, &th).is_zero() {
                return Ok(Some(format!("{:?} not on the surface", strs(&x))));
            }
            let img = stokes_s1_lifted(&x, &p)?;
            let shift = &img[2] - &x[2];
            if img[0] != x[0] || img[1] != x[1] || shift != stokes_line_translation(r, &p) {
                return Ok(Some(format!("s1 on x1 = {r}: image {:?}", strs(&img))));
            }
        }
        Ok(None)
    }));
    let g = word("g");
    let kp = kaneko_points_v(&p);
    let ok = kp.as_ref().is_ok_and(|k| {
        k.len() == 3
            && k.iter().all(|pt| {
                let sp = SurfacePoint::v(&p, pt.x.clone());
                sp.and_then(|sp| g.eval(&sp)).is_ok_and(|img| img.x == pt.x)
            })
    });
    out.push(CheckRecord::fixed("cv_kaneko_fixed_by_g", ok, || json!(format!("{:?}", kp.as_ref().map(|k| k.len())))));
    out.push(sampled("cvi_24_lines_and_kaneko", &ctx.fork(1), ctx.trials.min(20), |s| {
        let pvi = crate::dynamics::random_params_vi(s)?;
        let th = pvi.theta();
        let lines = lines_cvi(&pvi)?;
        if lines.len() != 24 || !lines.iter().all(|l| l.verify(&th)) {
            return Ok(Some(format!("{} lines, not all verified", lines.len())));
        }
        for k in kaneko_points_vi(&pvi)? {
            let b = BraidIndex::all().into_iter().find(|b| {
                let (i, j) = b.pair();
                3 - i - j == k.plane.k
            });
            let b = b.expect("each plane index has a braid");
            if crate::dynamics::braid_h(b, &k.x, &th) != k.x {
                return Ok(Some(format!("{b:?} moves {}", k.label)));
            }
        }
        Ok(None)
    }));
    out
}

fn random_alpha(s: &mut SeededSampler) -> Result<AlphaParams> {
    for _ in 0..32 {
        let a = AlphaParams::new(s.any(), s.any(), s.any());
        if a.require_generic().is_ok() {
            return Ok(a);
        }
    }
    Err(Error::SamplerExhausted(32))
}

fn suite_census(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let u_points = sampled("u_chart_points_are_zeros", &ctx.fork(0), ctx.trials, |s| {
        let a = random_alpha(s)?;
        let pts = u_plane_zeros();
        if pts.len() != 5 {
            return Ok(Some(format!("{} plane zeros", pts.len())));
        }
        for [u1, u2] in pts {
            let p = ChartPoint::new(Chart::U1, [u1, u2, qi(0)]);
            if !vector_field(&p, &a).iter().all(Rational::is_zero) {
                return Ok(Some(format!("field nonzero at {:?}", strs(&p.coords))));
            }
        }
        Ok(None)
    });
    let census = sampled("census_exact", &ctx.fork(1), ctx.trials, |s| {
        let a = random_alpha(s)?;
        let c = singular_census(&a)?;
        if c.len() != 12 {
            return Ok(Some(format!("{} points", c.len())));
        }
        for p in &c {
            let reps = std::iter::once(&p.point).chain(p.also.iter().map(|(_, r)| r));
            for r in reps {
                if !vector_field(r, &a).iter().all(Rational::is_zero) {
                    return Ok(Some(format!("{} not a zero in {}", p.label, r.chart)));
                }
            }
            if p.kind == PointKind::SaddleNode && !p.char_poly[0].is_zero() {
                return Ok(Some(format!("{} has nonzero determinant", p.label)));
            }
        }
        let p1 = [qi(2), qi(5), qi(4), qi(1)];
        let p2 = [qi(-2), qi(5), qi(-4), qi(1)];
        Ok(mismatch("p1 characteristic polynomial", &c[3].char_poly, &p1)
            .or_else(|| mismatch("p2 characteristic polynomial", &c[4].char_poly, &p2)))
    });
    vec![u_points, census]
}

fn suite_foliation(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let pi = sampled("pi_carries_field", &ctx.fork(0), ctx.trials, |s| {
        let a = random_alpha(s)?;
        let p = random_point3(s);
        for c in [Chart::U3, Chart::U4] {
            let f = pi_coherence_factor(c, &p, &a)?;
            if !f.is_one() {
                return Ok(Some(format!("factor {f} in {c}")));
            }
        }
        pi_coherence_factor(Chart::U1, &p, &a)?;
        Ok(None)
    });
    let tr = sampled("transitions_invert", &ctx.fork(1), ctx.trials, |s| {
        let p = ChartPoint::new(Chart::U1, [s.nonzero(), s.nonzero(), s.nonzero()]);
        for to in [Chart::U3, Chart::U4] {
            let back = transition(&transition(&p, to)?, Chart::U1)?;
            if back != p {
                return Ok(Some(format!("U1 -> {to} -> U1 gives {:?}", strs(&back.coords))));
            }
        }
        Ok(None)
    });
    let cycle = sampled("parameter_permutation_order_four", &ctx.fork(2), ctx.trials, |s| {
        let a = AlphaParams::new(s.any(), s.any(), s.any());
        Ok((a.tilde().tilde().tilde().tilde() != a).then(|| "fourth power is not the identity".to_string()))
    });
    vec![pi, tr, cycle]
}

/// Canonical maps read in a log-canonical chart `(u, v)` and the Cremona
/// element they are claimed to be there.
fn transport_case(name: &str, s: &mut SeededSampler) -> Result<Option<String>> {
    let p = crate::dynamics::random_params_v(s)?;
    let x = crate::surfaces::sample_v(&p, s)?;
    let m = s.int_in(-2, 3);
    let lambda = s.nonzero();
    let r = crate::cremona::random_factor(s);
    // (map word, chart index of u, chart index of v as (m, 'y'|'z'), element)
    let (map, u_of, v_of, elem) = match name {
        "stokes_in_u1" => (
            format!("s({m})"),
            (m, 'z'),
            (m, 'y'),
            CremonaElem::dj1(qi(1), FactorList::linear(p.e0.inv().unwrap()))?,
        ),
        "torus_in_t1" => (format!("t({m},{lambda})"), (m, 'z'), (m, 'y'), CremonaElem::torus(lambda.clone(), qi(1))?),
        "monodromy_in_b1" => (
            "m".to_string(),
            (2, 'y'),
            (2, 'z'),
            CremonaElem::dj1(qi(1), FactorList::monomial(&p.e0 * &p.e0, -4))?,
        ),
        "functional_torus_in_b1" => (format!("ft({m};{r})"), (m, 'y'), (m - 1, 'z'), CremonaElem::dj1(qi(1), r.clone())?),
        _ => unreachable!(),
    };
    let map = SurfaceMap::parse(&map)?;
    let coord = |pt: &SurfacePoint, (k, w): (i64, char)| -> Result<Rational> {
        let (y, z) = cluster_pair(&pt.x, pt.params.as_v()?, k)?;
        Ok(if w == 'y' { y } else { z })
    };
    let (u, v) = (coord(&x, u_of)?, coord(&x, v_of)?);
    let img = map.eval(&x)?;
    let (uu, vv) = (coord(&img, u_of)?, coord(&img, v_of)?);
    let want = elem.apply(&u, &v)?;
    Ok(if (uu.clone(), vv.clone()) == want {
        None
    } else {
        Some(format!("{map} at ({u}, {v}) gives ({uu}, {vv}); {elem} gives ({}, {})", want.0, want.1))
    })
}

fn suite_cremona(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = group_relations_suite(&ctx.fork(0), ctx.trials).iter().map(CheckRecord::from_relation).collect();
    let mut orbit = Vec::new();
    let mut cur = (qi(1), qi(1));
    for _ in 0..5 {
        cur = CremonaElem::BlancP.apply(&cur.0, &cur.1).unwrap();
        orbit.push(cur.clone());
    }
    let want: Vec<_> = [(1, 2), (2, 3), (3, 2), (2, 1), (1, 1)].iter().map(|&(a, b)| (qi(a), qi(b))).collect();
    out.push(CheckRecord::fixed("worked_p_orbit", orbit == want, || json!(format!("{orbit:?}"))));
    for (i, name) in ["stokes_in_u1", "torus_in_t1", "monodromy_in_b1", "functional_torus_in_b1"].iter().enumerate() {
        out.push(sampled(&format!("transport_{name}"), &ctx.fork(1 + i as u64), ctx.trials, |s| transport_case(name, s)));
    }
    out
}

fn suite_moduli(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let act = sampled("invariants_under_actions", &ctx.fork(0), ctx.trials, |s| {
        let sys = ModuliSystem::random(s);
        let inv = sys.invariants();
        let m = s.nonzero();
        if sys.act_torus(&m).invariants() != inv {
            return Ok(Some(format!("torus action by {m} changes invariants")));
        }
        Ok((sys.act_p().invariants() != inv).then(|| "P action changes invariants".to_string()))
    });
    let rt = sampled("reconstruction_round_trip", &ctx.fork(1), ctx.trials, |s| {
        let sys = ModuliSystem::random(s);
        let inv = sys.invariants();
        let back = moduli_reconstruct(&inv, &sys.t)?;
        Ok(if back.invariants() == inv && back.t == sys.t && back.a0 == sys.a0 {
            None
        } else {
            Some("reconstructed system has different invariants".into())
        })
    });
    vec![act, rt]
}

fn complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn suite_normal_form(ctx: &SuiteContext) -> Vec<CheckRecord> {
    let first_integral = sampled("product_is_first_integral", &ctx.fork(0), ctx.trials, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s.next_u64());
        let st = NormalFormState::new(complex(&mut rng, 1.0), complex(&mut rng, 1.0));
        let x = Complex64::new(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0));
        let (u1, u2) = normal_form_flow(x, &st, complex(&mut rng, 1.0))?;
        Ok((!close(u1 * u2, st.h())).then(|| format!("u1u2 = {} vs c1c2 = {}", u1 * u2, st.h())))
    });
    let group = sampled("torus_group_law", &ctx.fork(1), ctx.trials, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s.next_u64());
        let st = NormalFormState::new(complex(&mut rng, 1.0), complex(&mut rng, 1.0));
        let a: Vec<Complex64> = (0..3).map(|_| complex(&mut rng, 0.5)).collect();
        let b: Vec<Complex64> = (0..2).map(|_| complex(&mut rng, 0.5)).collect();
        let sum: Vec<Complex64> = (0..3).map(|i| a[i] + b.get(i).copied().unwrap_or_default()).collect();
        let lhs = torus_action(&torus_action(&st, &b)?, &a)?;
        let rhs = torus_action(&st, &sum)?;
        Ok((!lhs.close_to(&rhs)).then(|| format!("{lhs:?} vs {rhs:?}")))
    });
    vec![first_integral, group]
}

pub fn registry() -> Vec<Suite> {
    vec![
        Suite { name: "fricke", description: "traces of random representations satisfy the cubic", default_trials: 100, run: suite_fricke },
        Suite { name: "tame", description: "tame braid maps, half braid and worked orbit point", default_trials: 100, run: suite_tame },
        Suite { name: "braid", description: "pure braids on the Painleve VI cubic", default_trials: 100, run: suite_braid },
        Suite { name: "confluence", description: "confluence morphism, inverse and polar plane", default_trials: 100, run: suite_confluence },
        Suite { name: "dual-path", description: "matrix-level and cubic-level maps agree through traces", default_trials: 50, run: suite_dual_path },
        Suite { name: "canonical", description: "Stokes operators, tori, formal monodromy and confluent braids", default_trials: 50, run: suite_canonical },
        Suite { name: "signs", description: "declared signs of the pulled-back area form", default_trials: 50, run: suite_signs },
        Suite { name: "cluster", description: "exchange relations and exact Laurent recurrence", default_trials: 50, run: suite_cluster },
        Suite { name: "lines", description: "line configurations, Stokes translations and Kaneko points", default_trials: 50, run: suite_lines },
        Suite { name: "census", description: "exact singular points of the compactified field", default_trials: 20, run: suite_census },
        Suite { name: "foliation", description: "chart transitions and the Backlund gluing", default_trials: 50, run: suite_foliation },
        Suite { name: "cremona", description: "relations among torus, monomial, de Jonquieres and order-five elements", default_trials: 50, run: suite_cremona },
        Suite { name: "moduli", description: "moduli invariants and reconstruction", default_trials: 20, run: suite_moduli },
        Suite { name: "normal-form", description: "floating normal-form flow and torus group law", default_trials: 20, run: suite_normal_form },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

fn stable_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn run(suite: &Suite, cfg: &HarnessConfig) -> SuiteReport {
    let ctx = SuiteContext {
        sampler: SeededSampler::new(cfg.seed).fork(stable_id(suite.name)),
        trials: cfg.trials.unwrap_or(suite.default_trials),
        corrupt: cfg.corrupt,
    };
    SuiteReport { suite: suite.name.into(), description: suite.description.into(), checks: (suite.run)(&ctx) }
}

pub fn run_suite(name: &str, cfg: &HarnessConfig) -> Result<SuiteReport> {
    registry()
        .iter()
        .find(|s| s.name == name)
        .map(|s| run(s, cfg))
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

pub fn run_all(cfg: &HarnessConfig) -> Vec<SuiteReport> {
    registry().iter().map(|s| run(s, cfg)).collect()
}

/// Compares two words at random points of the given family.
pub fn run_custom(lhs: &str, rhs: &str, src: Src, cfg: &HarnessConfig) -> Result<SuiteReport> {
    let f = SurfaceMap::parse(lhs)?;
    let h = SurfaceMap::parse(rhs)?;
    let source = match src {
        Src::V => ParamSource::RandomV,
        Src::VI => ParamSource::RandomVI,
    };
    let v = compare_maps(&f, &h, &source, &SeededSampler::new(cfg.seed), cfg.trials.unwrap_or(50));
    Ok(SuiteReport {
        suite: "custom".into(),
        description: format!("{lhs} = {rhs}"),
        checks: vec![CheckRecord::from_verdict("custom", &v)],
    })
}

/// Fixed point check used by property tests: `F = 0` at the image.
pub fn image_on_surface(map: &SurfaceMap, source: &ParamSource, sampler: &SeededSampler, trials: usize) -> CheckRecord {
    let r = check_property(source, sampler, trials, |pt| {
        let img = map.eval(pt)?;
        Ok((!img.residual().is_zero()).then(|| format!("residual {}", img.residual())))
    });
    CheckRecord::from_report(&format!("{map}_on_surface"), &r)
}

/// Lookup helper for `Params` in suites that need a fixed standard point.
pub fn standard_point() -> SurfacePoint {
    std_point()
}

#[doc(hidden)]
pub fn _std_params_json() -> Value {
    Params::V(std_params()).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str) -> SuiteReport {
        run_suite(name, &HarnessConfig { seed: 7, trials: Some(8), corrupt: false }).unwrap()
    }

    #[test]
    fn registry_is_large_enough() {
        assert!(registry().len() >= 12);
        let names = suite_names();
        let mut dedup = names.clone();
        dedup.dedup();
        assert_eq!(names.len(), dedup.len());
        for id in IDENTITIES {
            assert!(names.contains(&id.suite), "{}", id.suite);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &HarnessConfig::new(1)), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn passing_suites() {
        for name in ["fricke", "tame", "braid", "confluence", "dual-path", "canonical", "cluster", "lines", "census", "foliation", "cremona", "moduli", "normal-form"] {
            let r = quick(name);
            assert!(r.passed(), "{name}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn sign_suite_separates_claims() {
        let r = quick("signs");
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["sign_b34", "sign_phi(3/2)"]);
    }

    #[test]
    fn corruption_detected_with_witness() {
        let r = run_suite("tame", &HarnessConfig { seed: 7, trials: Some(5), corrupt: true }).unwrap();
        let f = r.first_failure().unwrap();
        assert_eq!(f.verdict, "Unequal");
        assert!(f.witness.as_ref().unwrap()["point"].is_object());
    }

    #[test]
    fn deterministic() {
        let a = quick("canonical").to_json().to_string();
        let b = quick("canonical").to_json().to_string();
        assert_eq!(a, b);
    }
}
