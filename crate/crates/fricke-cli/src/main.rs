use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fricke::cremona::{group_relations_suite, CremonaElem};
use fricke::dynamics::{orbit, random_params_v, random_params_vi, SurfaceMap};
use fricke::foliation::normal_form::parse_complex;
use fricke::foliation::{normal_form_flow, singular_census, AlphaParams, NormalFormState};
use fricke::harness::{self, csv_quote, HarnessConfig, SuiteReport, Src, CSV_HEADER};
use fricke::numeric::{Rational, SeededSampler};
use fricke::surfaces::{lines_cv, lines_cvi, sample_surface, Family, Params, ParamsV, ParamsVI, SurfacePoint};

#[derive(Parser)]
#[command(name = "fricke", version, about = "Exact dynamics on the Painleve V and VI cubic surfaces")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Trial count; overrides suite defaults.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Surface parameters: e0,a3,a4 or e0,e3,e4 for V; a1..a4 or e1..e4 for VI.
    #[arg(long, global = true)]
    params: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "VI", alias = "vi")]
    VI,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::V => Family::V,
            FamilyArg::VI => Family::VI,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite, `all`, or `custom` with --lhs/--rhs.
    Verify {
        suite: String,
        /// Plant a constant shift in every listed identity.
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: Option<String>,
        #[arg(long, value_enum, default_value_t = FamilyArg::V)]
        family: FamilyArg,
    },
    /// Iterate a word of surface maps.
    Orbit {
        word: String,
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Lines (and non-split conics) in the coordinate plane sections.
    Lines { family: FamilyArg },
    /// Random points on a cubic.
    Sample {
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Singular points of the compactified field.
    Census {
        /// `alpha1,alpha2,alpha3` as rationals.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Plane Cremona elements.
    Cremona {
        #[command(subcommand)]
        op: CremonaOp,
    },
    /// Floating normal-form flow at a point.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        alpha0: String,
    },
}

#[derive(Subcommand)]
enum CremonaOp {
    /// Image of `(u, v)`.
    Apply {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Pull-back ratio of `du∧dv/(uv)` at `(u, v)`.
    Ratio {
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Group relations at random elements.
    Relations,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {}", .0.name(), .0)]
    Domain(fricke::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<fricke::Error> for CliError {
    fn from(e: fricke::Error) -> Self {
        match e {
            fricke::Error::Parse(_) | fricke::Error::UnknownSuite(_) => CliError::Usage(format!("{}: {e}", e.name())),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered output and whether the run verified.
struct Output {
    text: String,
    ok: bool,
}

fn rational(s: &str) -> CliResult<Rational> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("not a rational: {s:?}")))
}

fn rational_list<const N: usize>(s: &str, what: &str) -> CliResult<[Rational; N]> {
    let v = s.split(',').map(rational).collect::<CliResult<Vec<_>>>()?;
    v.try_into().map_err(|_| CliError::Usage(format!("{what} needs {N} comma-separated rationals")))
}

fn assignments(s: &str) -> CliResult<Vec<(String, Rational)>> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("expected key=value, got {kv:?}")))?;
            Ok((k.trim().to_string(), rational(v)?))
        })
        .collect()
}

fn lookup<'a>(a: &'a [(String, Rational)], keys: &[&str]) -> Option<Vec<&'a Rational>> {
    keys.iter().map(|k| a.iter().find(|(n, _)| n == k).map(|(_, v)| v)).collect()
}

fn params_for(family: Family, text: Option<&str>, seed: u64) -> CliResult<Params> {
    let Some(text) = text else {
        let mut s = SeededSampler::new(seed);
        return Ok(match family {
            Family::V => Params::V(random_params_v(&mut s)?),
            Family::VI => Params::VI(random_params_vi(&mut s)?),
        });
    };
    let a = assignments(text)?;
    let known: &[&str] = match family {
        Family::V => &["e0", "a3", "a4", "e3", "e4"],
        Family::VI => &["a1", "a2", "a3", "a4", "e1", "e2", "e3", "e4"],
    };
    if let Some((k, _)) = a.iter().find(|(k, _)| !known.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("unknown parameter {k} for family {family}")));
    }
    let p = match family {
        Family::V => {
            if let Some(v) = lookup(&a, &["e0", "a3", "a4"]) {
                Params::V(ParamsV::from_traces(v[0].clone(), v[1].clone(), v[2].clone())?)
            } else if let Some(v) = lookup(&a, &["e0", "e3", "e4"]) {
                Params::V(ParamsV::from_eigenvalues(v[0].clone(), v[1].clone(), v[2].clone())?)
            } else {
                return Err(CliError::Usage("V parameters need e0,a3,a4 or e0,e3,e4".into()));
            }
        }
        Family::VI => {
            if let Some(v) = lookup(&a, &["a1", "a2", "a3", "a4"]) {
                Params::VI(ParamsVI::from_traces([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]))
            } else if let Some(v) = lookup(&a, &["e1", "e2", "e3", "e4"]) {
                Params::VI(ParamsVI::from_eigenvalues([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])?)
            } else {
                return Err(CliError::Usage("VI parameters need a1..a4 or e1..e4".into()));
            }
        }
    };
    Ok(p)
}

fn json_lines(records: impl IntoIterator<Item = Value>) -> String {
    records.into_iter().map(|r| r.to_string() + "\n").collect()
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r.iter().map(|c| csv_quote(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn strs(x: &[Rational]) -> Vec<String> {
    x.iter().map(Rational::to_string).collect()
}

fn verify_output(reports: &[SuiteReport], format: Format) -> Output {
    let ok = reports.iter().all(SuiteReport::passed);
    let text = match format {
        Format::Json => {
            let v = json!({
                "passed": ok,
                "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in reports {
                for row in r.csv_rows() {
                    out.push_str(&row);
                    out.push('\n');
                }
            }
            out
        }
    };
    Output { text, ok }
}

fn point_row(step: usize, p: &SurfacePoint) -> Vec<String> {
    let mut row = vec![step.to_string()];
    row.extend(strs(&p.x));
    row
}

fn run(cli: &Cli) -> CliResult<Output> {
    let params = cli.params.as_deref();
    let ok = |text: String| Ok(Output { text, ok: true });
    match &cli.cmd {
        Cmd::Verify { suite, corrupt, lhs, rhs, family } => {
            let cfg = HarnessConfig { seed: cli.seed, trials: cli.trials, corrupt: *corrupt };
            let reports = match suite.as_str() {
                "all" => harness::run_all(&cfg),
                "custom" => {
                    let (Some(l), Some(r)) = (lhs, rhs) else {
                        return Err(CliError::Usage("custom needs --lhs and --rhs".into()));
                    };
                    let src = if family.family() == Family::V { Src::V } else { Src::VI };
                    vec![harness::run_custom(l, r, src, &cfg)?]
                }
                name => vec![harness::run_suite(name, &cfg)?],
            };
            Ok(verify_output(&reports, cli.format))
        }
        Cmd::Orbit { word, start, steps } => {
            let map = SurfaceMap::parse(word)?;
            let p = params_for(map.source(), params, cli.seed)?;
            let x = rational_list::<3>(start, "--start")?;
            let start = SurfacePoint::new(p, x)?;
            let rep = orbit(&map, &start, *steps);
            let text = match cli.format {
                Format::Json => rep.to_json_lines(),
                Format::Csv => {
                    let mut out = csv("step,x1,x2,x3", rep.points.iter().enumerate().map(|(i, p)| point_row(i + 1, p)));
                    out.push_str(&format!(
                        "# period={} truncated_at={}\n",
                        rep.period.map_or("none".into(), |n| n.to_string()),
                        rep.truncated_at.map_or("none".into(), |n| n.to_string())
                    ));
                    out
                }
            };
            match &rep.error {
                Some(e) if rep.points.is_empty() => Err(CliError::Domain(e.clone())),
                _ => ok(text),
            }
        }
        Cmd::Lines { family } => {
            let p = params_for(family.family(), params, cli.seed)?;
            let records: Vec<Value> = match &p {
                Params::V(pv) => lines_cv(pv)?.iter().map(|r| r.to_json()).collect(),
                Params::VI(pvi) => lines_cvi(pvi)?.iter().map(|l| l.to_json()).collect(),
            };
            let text = match cli.format {
                Format::Json => json_lines(records),
                Format::Csv => csv(
                    "label,plane_k,plane_c,point,dir,conic",
                    records.iter().map(|r| {
                        let join = |k: &str| {
                            r[k].as_array().map(|a| a.iter().map(|s| s.as_str().unwrap_or("")).collect::<Vec<_>>().join(" ")).unwrap_or_default()
                        };
                        vec![
                            r["label"].as_str().unwrap_or("").into(),
                            r["plane"]["k"].to_string(),
                            r["plane"]["c"].as_str().unwrap_or("").into(),
                            join("point"),
                            join("dir"),
                            join("conic"),
                        ]
                    }),
                ),
            };
            ok(text)
        }
        Cmd::Sample { family, count } => {
            let p = params_for(family.family(), params, cli.seed)?;
            let base = SeededSampler::new(cli.seed).fork(1);
            let pts = (0..*count as u64)
                .map(|i| sample_surface(&p, &mut base.fork(i)))
                .collect::<fricke::Result<Vec<_>>>()?;
            let text = match cli.format {
                Format::Json => json_lines(pts.iter().map(SurfacePoint::to_json)),
                Format::Csv => csv("index,x1,x2,x3", pts.iter().enumerate().map(|(i, p)| point_row(i, p))),
            };
            ok(text)
        }
        Cmd::Census { alpha } => {
            let [a1, a2, a3] = rational_list::<3>(alpha, "--alpha")?;
            let census = singular_census(&AlphaParams::new(a1, a2, a3))?;
            let text = match cli.format {
                Format::Json => json_lines(census.iter().map(|c| c.to_json())),
                Format::Csv => csv(
                    "label,kind,chart,coords,char_poly,also",
                    census.iter().map(|c| {
                        vec![
                            c.label.clone(),
                            c.kind.as_str().into(),
                            c.point.chart.to_string(),
                            strs(&c.point.coords).join(" "),
                            strs(&c.char_poly).join(" "),
                            c.also.iter().map(|(_, p)| format!("{}:{}", p.chart, strs(&p.coords).join(" "))).collect::<Vec<_>>().join(";"),
                        ]
                    }),
                ),
            };
            ok(text)
        }
        Cmd::Cremona { op } => match op {
            CremonaOp::Apply { word, at } => {
                let e = CremonaElem::parse(word)?;
                let [u, v] = rational_list::<2>(at, "--at")?;
                let (a, b) = e.apply(&u, &v)?;
                let text = match cli.format {
                    Format::Json => json!({ "word": e.to_string(), "at": [u.to_string(), v.to_string()], "image": [a.to_string(), b.to_string()] }).to_string() + "\n",
                    Format::Csv => csv("word,u,v,image_u,image_v", [vec![e.to_string(), u.to_string(), v.to_string(), a.to_string(), b.to_string()]]),
                };
                ok(text)
            }
            CremonaOp::Ratio { word, at } => {
                let e = CremonaElem::parse(word)?;
                let [u, v] = rational_list::<2>(at, "--at")?;
                let r = e.log_symplectic_ratio(&u, &v)?;
                let text = match cli.format {
                    Format::Json => json!({ "word": e.to_string(), "at": [u.to_string(), v.to_string()], "ratio": r.to_string() }).to_string() + "\n",
                    Format::Csv => csv("word,u,v,ratio", [vec![e.to_string(), u.to_string(), v.to_string(), r.to_string()]]),
                };
                ok(text)
            }
            CremonaOp::Relations => {
                let verdicts = group_relations_suite(&SeededSampler::new(cli.seed), cli.trials.unwrap_or(50));
                let all = verdicts.iter().all(|v| v.passed());
                let text = match cli.format {
                    Format::Json => json_lines(verdicts.iter().map(|v| v.to_json())),
                    Format::Csv => csv(
                        "relation,verdict,trials,skipped,witness",
                        verdicts.iter().map(|v| {
                            let j = v.to_json();
                            vec![
                                v.name.clone(),
                                j["verdict"].as_str().unwrap_or("").into(),
                                v.trials.to_string(),
                                v.skipped.to_string(),
                                v.failure.clone().unwrap_or_default(),
                            ]
                        }),
                    ),
                };
                Ok(Output { text, ok: all })
            }
        },
        Cmd::NormalForm { c1, c2, x, alpha0 } => {
            let st = NormalFormState::new(parse_complex(c1)?, parse_complex(c2)?);
            let (u1, u2) = normal_form_flow(parse_complex(x)?, &st, parse_complex(alpha0)?)?;
            let h = st.h();
            let text = match cli.format {
                Format::Json => json!({
                    "u1": [u1.re, u1.im],
                    "u2": [u2.re, u2.im],
                    "product": [(u1 * u2).re, (u1 * u2).im],
                    "c1c2": [h.re, h.im],
                })
                .to_string()
                    + "\n",
                Format::Csv => csv(
                    "u1_re,u1_im,u2_re,u2_im",
                    [vec![u1.re.to_string(), u1.im.to_string(), u2.re.to_string(), u2.im.to_string()]],
                ),
            };
            ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => std::io::stdout().lock().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: io: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
