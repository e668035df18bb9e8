//! `cdim`: reports on root data, apartment distances, ball sums and the
//! canonical-dimension bound tables.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
//! 3 a resource limit was hit.

use std::process::ExitCode;

use anyhow::anyhow;
use cdim_core::apartment::Budget;
use cdim_core::distance::{wall_distance, Metric};
use cdim_core::growth::{ball_sum, cind_sandwich, gamma_polynomial, quotient_ball_sum, theorem_table};
use cdim_core::point::fmt_rational;
use cdim_core::verify::{self, Suite, VerifyParams};
use cdim_core::{ApartmentPoint, Error, QPolynomial, RootDatum, RootSystemType, SCHEMA_VERSION};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "cdim", version, about = "Exact apartment combinatorics and canonical-dimension bounds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also evaluate every polynomial at this residue-field size (≥ 2).
    #[arg(long, global = true)]
    q_eval: Option<i64>,
    /// Maximum number of enumeration candidates.
    #[arg(long, global = true, default_value_t = Budget::default().max_candidates)]
    budget: u64,
    /// Seed for sampled verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum summary: c, c', positive roots, Cartan matrix, Weyl degrees.
    Info {
        #[arg(long = "type")]
        ty: String,
    },
    /// Growth exponents and canonical-dimension bounds per type.
    Table {
        /// Largest rank listed for the classical families.
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Ball-cardinality bounds S(r), γ·S(r), or the capped quotient sum with --level.
    Ball {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        level: Option<u32>,
    },
    /// Wall-separation and simplicial distance between two vertices.
    Distance {
        #[arg(long = "type")]
        ty: String,
        /// Coordinates t_i = α_i(x) as fractions, e.g. "1/2,0".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Search limit for the simplicial distance.
        #[arg(long, default_value_t = 64)]
        max_radius: u32,
    },
    /// Run an invariant suite: metric, polytope, table, growth, sandwich,
    /// concavity, distance, g2-gap, parabolic.
    Verify {
        suite: String,
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 12)]
        max_rank: usize,
    },
    /// Lower and upper bounds for a compact induction of depth R at level r.
    Sandwich {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        level: u32,
    },
}

enum Failure {
    Validation(anyhow::Error),
    Resource(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.into())
        } else {
            Failure::Validation(e.into())
        }
    }
}

type Outcome = Result<Output, Failure>;

/// A report plus an optional pre-rendered table for csv/markdown.
struct Output {
    value: Value,
    csv: Option<String>,
    markdown: Option<String>,
    ok: bool,
}

impl Output {
    fn new(value: Value) -> Self {
        Self { value, csv: None, markdown: None, ok: true }
    }
}

fn parse_type(s: &str) -> Result<RootSystemType, Failure> {
    Ok(s.parse::<RootSystemType>()?)
}

fn parse_point(s: &str) -> Result<ApartmentPoint, Failure> {
    Ok(ApartmentPoint::parse(s)?)
}

/// `schema_version` first, then the report's own fields.
fn with_schema(v: impl serde::Serialize) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    match serde_json::to_value(v).expect("reports serialize") {
        Value::Object(m) => {
            for (k, v) in m {
                if k != "schema_version" {
                    out.insert(k, v);
                }
            }
        }
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

fn eval(p: &QPolynomial, q: i64) -> String {
    fmt_rational(&p.evaluate(&BigRational::from_integer(q.into())))
}

fn insert_q(v: &mut Value, q: Option<i64>, entries: Vec<(&str, String)>) {
    if let (Some(q), Value::Object(m)) = (q, v) {
        m.insert("q".into(), json!(q));
        for (k, s) in entries {
            m.insert(k.into(), json!(s));
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(q) = cli.q_eval {
        if q < 2 {
            return Err(Failure::Validation(anyhow!("--q-eval must be at least 2, got {q}")));
        }
    }
    let budget = Budget::with_candidates(cli.budget);
    let q = cli.q_eval;
    match &cli.command {
        Command::Info { ty } => {
            let datum = RootDatum::build(parse_type(ty)?);
            let mut v = with_schema(datum.summary());
            let gamma = gamma_polynomial(&datum);
            if let Value::Object(m) = &mut v {
                m.insert("gamma_poly".into(), serde_json::to_value(&gamma).expect("serializes"));
            }
            insert_q(&mut v, q, vec![("gamma_value", eval(&gamma, q.unwrap_or(2)))]);
            Ok(Output::new(v))
        }
        Command::Table { max_rank } => {
            let table = theorem_table(*max_rank)?;
            let mut out = Output::new(with_schema(&table));
            out.csv = Some(table.to_csv());
            out.markdown = Some(table.to_markdown());
            Ok(out)
        }
        Command::Ball { ty, radius, level } => {
            let datum = RootDatum::build(parse_type(ty)?);
            match level {
                None => {
                    let report = ball_sum(&datum, *radius, &budget)?;
                    let mut v = with_schema(&report);
                    let qv = q.unwrap_or(2);
                    insert_q(
                        &mut v,
                        q,
                        vec![("lower_value", eval(&report.lower_poly, qv)), ("upper_value", eval(&report.upper_poly, qv))],
                    );
                    Ok(Output::new(v))
                }
                Some(level) => {
                    let poly = quotient_ball_sum(&datum, *radius, *level, &budget)?;
                    let mut v = with_schema(json!({
                        "type": datum.root_system_type(),
                        "radius": radius,
                        "level": level,
                        "quotient_poly": poly,
                    }));
                    insert_q(&mut v, q, vec![("quotient_value", eval(&poly, q.unwrap_or(2)))]);
                    Ok(Output::new(v))
                }
            }
        }
        Command::Distance { ty, x, y, max_radius } => {
            let datum = RootDatum::build(parse_type(ty)?);
            let (px, py) = (parse_point(x)?, parse_point(y)?);
            let report = wall_distance(&datum, &px, &py)?;
            let mut metric = Metric::new(cdim_core::apartment::Grid::with_budget(&datum, budget));
            let grid = metric.grid();
            let (gx, gy) = (grid.to_scaled(&px).expect("checked"), grid.to_scaled(&py).expect("checked"));
            let ds = metric.simplicial_distance(&gx, &gy, *max_radius)?;
            Ok(Output::new(with_schema(json!({
                "type": datum.root_system_type(),
                "x": px,
                "y": py,
                "d": report.d,
                "d_simplicial": ds,
                "witness_root": report.witness_root,
                "wall_count": report.wall_count,
            }))))
        }
        Command::Verify { suite, ty, radius, samples, max_rank } => {
            let suite: Suite = suite.parse()?;
            let params = VerifyParams {
                root_type: ty.as_deref().map(parse_type).transpose()?,
                radius: *radius,
                samples: *samples,
                seed: cli.seed,
                max_rank: *max_rank,
                budget,
            };
            let report = verify::run(suite, &params)?;
            let mut out = Output::new(with_schema(&report));
            out.ok = report.pass;
            Ok(out)
        }
        Command::Sandwich { ty, depth, level } => {
            let datum = RootDatum::build(parse_type(ty)?);
            let report = cind_sandwich(&datum, *depth, *level, &budget)?;
            let mut v = with_schema(&report);
            if let Some(qv) = q {
                let lower = report.lower_poly.evaluate(&BigRational::from_integer(qv.into()))
                    / BigRational::from_integer(report.lower_divisor.into());
                insert_q(
                    &mut v,
                    q,
                    vec![
                        ("lower_value", fmt_rational(&lower)),
                        ("upper_value", eval(&report.upper_poly, qv)),
                        ("consistent", report.consistent_at(qv).to_string()),
                    ],
                );
            }
            Ok(Output::new(v))
        }
    }
}

/// `(path, value)` pairs; scalar arrays are space separated, nested arrays
/// stay as compact JSON.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(_) => out.push((prefix.to_string(), v.to_string())),
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render(out: &Output, format: Format) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    flatten("", &out.value, &mut rows);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&out.value)? + "\n",
        Format::Csv => match &out.csv {
            Some(s) => s.clone(),
            None => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["field", "value"])?;
                for (k, v) in &rows {
                    w.write_record([k, v])?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        },
        Format::Markdown => match &out.markdown {
            Some(s) => s.clone(),
            None => {
                let mut s = String::from("| field | value |\n|---|---|\n");
                for (k, v) in &rows {
                    s.push_str(&format!("| {k} | {} |\n", v.replace('|', "\\|")));
                }
                s
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => match render(&out, cli.format) {
            Ok(s) => {
                print!("{s}");
                ExitCode::from(if out.ok { 0 } else { 1 })
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("resource limit: {e}");
            ExitCode::from(3)
        }
    }
}
