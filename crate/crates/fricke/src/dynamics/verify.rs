//! Sampling-based identity checks between surface maps, and orbit iteration.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{qi, Rational, SeededSampler};
use crate::surfaces::{sample_surface, Family, Params, ParamsV, ParamsVI, SurfacePoint};

use super::generator::SurfaceMap;

/// Where each trial takes its parameters from.
#[derive(Clone, Debug)]
pub enum ParamSource {
    Fixed(Params),
    /// Fresh generic `C_V` parameters with rational `e3`, `e4`.
    RandomV,
    /// Fresh generic `C_VI` parameters with rational eigenvalues.
    RandomVI,
}

impl ParamSource {
    pub fn family(&self) -> Family {
        match self {
            ParamSource::Fixed(p) => p.family(),
            ParamSource::RandomV => Family::V,
            ParamSource::RandomVI => Family::VI,
        }
    }

    pub fn draw(&self, s: &mut SeededSampler) -> Result<Params> {
        Ok(match self {
            ParamSource::Fixed(p) => p.clone(),
            ParamSource::RandomV => Params::V(random_params_v(s)?),
            ParamSource::RandomVI => Params::VI(random_params_vi(s)?),
        })
    }
}

const PARAM_RETRIES: usize = 64;

fn eigen(s: &mut SeededSampler) -> Result<Rational> {
    s.sample_rational(&[qi(0), qi(1), qi(-1)])
}

/// Generic `(e0, e3, e4)` drawn from the sampler.
pub fn random_params_v(s: &mut SeededSampler) -> Result<ParamsV> {
    for _ in 0..PARAM_RETRIES {
        let p = ParamsV::from_eigenvalues(eigen(s)?, eigen(s)?, eigen(s)?)?;
        if p.is_generic() {
            return Ok(p);
        }
    }
    Err(Error::SamplerExhausted(PARAM_RETRIES))
}

/// Generic `(e1, …, e4)` drawn from the sampler.
pub fn random_params_vi(s: &mut SeededSampler) -> Result<ParamsVI> {
    for _ in 0..PARAM_RETRIES {
        let p = ParamsVI::from_eigenvalues([eigen(s)?, eigen(s)?, eigen(s)?, eigen(s)?])?;
        if p.is_generic() {
            return Ok(p);
        }
    }
    Err(Error::SamplerExhausted(PARAM_RETRIES))
}

/// A point where two maps disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trial: u64,
    pub point: SurfacePoint,
    pub left: SurfacePoint,
    pub right: SurfacePoint,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "trial": self.trial,
            "point": self.point.to_json(),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All `trials` admissible samples agreed; `skipped` samples hit a polar locus.
    Equal { trials: usize, skipped: usize },
    Unequal(Box<Witness>),
    Inconclusive { attempts: usize },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equal { .. } => "Equal",
            Verdict::Unequal(_) => "Unequal",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Same family, same `θ`, same coordinates.
pub fn same_point(a: &SurfacePoint, b: &SurfacePoint) -> bool {
    a.x == b.x && a.family() == b.family() && a.params.theta() == b.params.theta()
}

enum Outcome<T> {
    Skip,
    Fail(T),
    Pass,
}

/// Runs `check` on fresh samples until `trials` of them are admissible.
/// Attempts are evaluated in parallel batches and merged by trial index, so the
/// result depends only on the sampler seed.
fn run_trials<T, F>(source: &ParamSource, sampler: &SeededSampler, trials: usize, check: F) -> (usize, usize, Option<T>)
where
    T: Send,
    F: Fn(u64, &SurfacePoint) -> Outcome<T> + Sync,
{
    let max_attempts = trials.max(1) * 8;
    let (mut passed, mut skipped, mut next) = (0usize, 0usize, 0usize);
    while passed < trials && next < max_attempts {
        let batch = (trials - passed).min(max_attempts - next).max(1);
        let outcomes: Vec<Outcome<T>> = (next..next + batch)
            .into_par_iter()
            .map(|i| {
                let mut s = sampler.fork(i as u64);
                let point = match source.draw(&mut s).and_then(|p| sample_surface(&p, &mut s)) {
                    Ok(pt) => pt,
                    Err(_) => return Outcome::Skip,
                };
                check(i as u64, &point)
            })
            .collect();
        next += batch;
        for o in outcomes {
            match o {
                Outcome::Fail(w) => return (passed, skipped, Some(w)),
                Outcome::Pass if passed < trials => passed += 1,
                Outcome::Pass => {}
                Outcome::Skip => skipped += 1,
            }
        }
    }
    (passed, skipped, None)
}

/// Evaluates `f` and `h` at random admissible points and compares exactly.
pub fn compare_maps(f: &SurfaceMap, h: &SurfaceMap, source: &ParamSource, sampler: &SeededSampler, trials: usize) -> Verdict {
    let (passed, skipped, fail) = run_trials(source, sampler, trials, |i, pt| match (f.eval(pt), h.eval(pt)) {
        (Ok(a), Ok(b)) if same_point(&a, &b) => Outcome::Pass,
        (Ok(a), Ok(b)) => Outcome::Fail(Witness { trial: i, point: pt.clone(), left: a, right: b }),
        _ => Outcome::Skip,
    });
    match fail {
        Some(w) => Verdict::Unequal(Box::new(w)),
        None if passed == 0 => Verdict::Inconclusive { attempts: skipped },
        None => Verdict::Equal { trials: passed, skipped },
    }
}

/// Outcome of a per-point property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub passed: usize,
    pub skipped: usize,
    /// First failing point with a description of the observed value.
    pub failure: Option<(SurfacePoint, String)>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.passed > 0
    }
}

/// Checks `prop` at random admissible points. `Ok(None)` passes,
/// `Ok(Some(msg))` fails, `Err` skips the point.
pub fn check_property<F>(source: &ParamSource, sampler: &SeededSampler, trials: usize, prop: F) -> PropertyReport
where
    F: Fn(&SurfacePoint) -> Result<Option<String>> + Sync,
{
    let (passed, skipped, fail) = run_trials(source, sampler, trials, |_, pt| match prop(pt) {
        Ok(None) => Outcome::Pass,
        Ok(Some(msg)) => Outcome::Fail((pt.clone(), msg)),
        Err(_) => Outcome::Skip,
    });
    PropertyReport { passed, skipped, failure: fail }
}

/// `symplectic_ratio(map) = declared sign` at random admissible points.
pub fn check_sign(map: &SurfaceMap, expected: i32, source: &ParamSource, sampler: &SeededSampler, trials: usize) -> PropertyReport {
    let want = Rational::from(expected as i64);
    check_property(source, sampler, trials, |pt| {
        let r = map.symplectic_ratio(pt)?;
        Ok(if r == want { None } else { Some(format!("ratio {r}")) })
    })
}

/// `F(image) = 0` at random admissible points.
pub fn check_preserves_surface(map: &SurfaceMap, source: &ParamSource, sampler: &SeededSampler, trials: usize) -> PropertyReport {
    check_property(source, sampler, trials, |pt| {
        let img = map.eval(pt)?;
        let r = img.residual();
        Ok(if r.is_zero() { None } else { Some(format!("residual {r}")) })
    })
}

/// Iterated images of a point under a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Images after steps `1, 2, …`.
    pub points: Vec<SurfacePoint>,
    /// Smallest `n` with `point_k = point_{k−n}` at the first revisit.
    pub period: Option<usize>,
    /// Step at which evaluation failed.
    pub truncated_at: Option<usize>,
    pub error: Option<Error>,
}

impl OrbitReport {
    pub fn summary_json(&self) -> Value {
        json!({
            "period": self.period,
            "truncated_at": self.truncated_at,
            "error": self.error.as_ref().map(|e| e.name()),
        })
    }

    /// JSON lines: one point record per step, then the summary record.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points.iter().enumerate() {
            let mut rec = p.to_json();
            rec.as_object_mut().unwrap().insert("step".into(), json!(i + 1));
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary_json().to_string());
        out.push('\n');
        out
    }
}

/// Iterates `map` from `start` for `steps` steps, recording the first exact
/// revisit and stopping early at a polar locus.
pub fn orbit(map: &SurfaceMap, start: &SurfacePoint, steps: usize) -> OrbitReport {
    let mut seen: HashMap<String, usize> = HashMap::new();
    seen.insert(start.key(), 0);
    let mut report = OrbitReport { points: Vec::new(), period: None, truncated_at: None, error: None };
    let mut cur = start.clone();
    for step in 1..=steps {
        match map.eval(&cur) {
            Ok(next) => {
                let key = next.key();
                if report.period.is_none() {
                    if let Some(prev) = seen.get(&key) {
                        report.period = Some(step - prev);
                    }
                }
                seen.entry(key).or_insert(step);
                report.points.push(next.clone());
                cur = next;
            }
            Err(e) => {
                report.truncated_at = Some(step);
                report.error = Some(e);
                break;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::generator::Generator;
    use crate::numeric::qi;

    fn parse(s: &str) -> SurfaceMap {
        SurfaceMap::parse(s).unwrap()
    }

    #[test]
    fn involution_equal() {
        let v = compare_maps(&parse("sigma1 . sigma1"), &parse("id"), &ParamSource::RandomV, &SeededSampler::new(1), 30);
        assert!(v.is_equal(), "{v:?}");
    }

    #[test]
    fn triple_relation() {
        for kp in ["1", "1/2", "3"] {
            let lhs = parse(&format!("g . g23({kp}) . g31({kp})"));
            let v = compare_maps(&lhs, &parse("id"), &ParamSource::RandomV, &SeededSampler::new(2), 20);
            assert!(v.is_equal(), "{kp}: {v:?}");
        }
    }

    #[test]
    fn distinct_maps_unequal() {
        let v = compare_maps(&parse("s1"), &parse("sigma1"), &ParamSource::RandomV, &SeededSampler::new(3), 10);
        assert!(matches!(v, Verdict::Unequal(_)));
    }

    #[test]
    fn always_polar_inconclusive() {
        // A VI-side map fed C_V points never evaluates.
        let bad = SurfaceMap::single(Generator::PhiInv(qi(1), None));
        let v = compare_maps(&bad, &bad, &ParamSource::RandomV, &SeededSampler::new(4), 5);
        assert!(matches!(v, Verdict::Inconclusive { .. }));
    }

    #[test]
    fn deterministic() {
        let a = compare_maps(&parse("s1"), &parse("sigma1"), &ParamSource::RandomV, &SeededSampler::new(9), 10);
        let b = compare_maps(&parse("s1"), &parse("sigma1"), &ParamSource::RandomV, &SeededSampler::new(9), 10);
        assert_eq!(a, b);
    }

    #[test]
    fn orbits() {
        let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
        let start = SurfacePoint::v(&p, [qi(1), qi(1), qi(13)]).unwrap();
        let o = orbit(&parse("sigma1"), &start, 4);
        assert_eq!(o.period, Some(2));
        let o = orbit(&parse("g"), &start, 3);
        assert_eq!(o.points[0].x, [qi(51), qi(-3), qi(13)]);
        assert!(o.points.iter().all(|q| q.x[2] == qi(13)));
        let lines = o.to_json_lines();
        assert_eq!(lines.lines().count(), 4);
        assert!(lines.lines().last().unwrap().contains("\"period\":null"));
    }

    #[test]
    fn orbit_truncates() {
        let p = ParamsV::from_traces(qi(2), qi(3), qi(5)).unwrap();
        // x2 = 0 is the polar locus of g23.
        let start = crate::surfaces::lift_to_cv(&qi(3), &qi(0), &p).unwrap();
        let o = orbit(&parse("g23(1)"), &start, 3);
        assert_eq!(o.truncated_at, Some(1));
        assert!(matches!(o.error, Some(Error::PolarLocus { .. })));
    }
}
