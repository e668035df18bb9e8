//! Named invariant suites. Each suite returns a [`VerifyReport`] with a
//! pass flag, the number of individual checks and full witnesses for any
//! violation found.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::apartment::{Budget, Grid};
use crate::cartan::{RootDatum, RootSystemType};
use crate::distance::Metric;
use crate::error::{Error, Result};
use crate::growth::{
    ball_sum, chamber_count_bound, cind_sandwich, closed_form_growth_exponent, growth_exponent, max_two_rho,
    parabolic_shift, quotient_ball_sum, theorem_table,
};
use crate::moyprasad::{
    filtration_contains, is_concave, omega_function, optimize, point_function, pointwise_max, quotient_exponents_scaled,
};
use crate::point::{fmt_rational, ApartmentPoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Metric,
    Polytope,
    Table,
    Growth,
    Sandwich,
    Concavity,
    Distance,
    G2Gap,
    Parabolic,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Metric,
        Suite::Polytope,
        Suite::Table,
        Suite::Growth,
        Suite::Sandwich,
        Suite::Concavity,
        Suite::Distance,
        Suite::G2Gap,
        Suite::Parabolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Polytope => "polytope",
            Suite::Table => "table",
            Suite::Growth => "growth",
            Suite::Sandwich => "sandwich",
            Suite::Concavity => "concavity",
            Suite::Distance => "distance",
            Suite::G2Gap => "g2-gap",
            Suite::Parabolic => "parabolic",
        }
    }

    fn default_type(self) -> &'static str {
        match self {
            Suite::Metric | Suite::G2Gap => "G2",
            Suite::Polytope => "B2",
            _ => "A2",
        }
    }

    fn default_radius(self) -> u32 {
        match self {
            Suite::Sandwich => 8,
            Suite::Metric | Suite::Distance | Suite::G2Gap | Suite::Polytope => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Inputs shared by all suites; `None` picks the suite's default.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub root_type: Option<RootSystemType>,
    pub radius: Option<u32>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub max_rank: usize,
    pub budget: Budget,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self { root_type: None, radius: None, samples: None, seed: 0, max_rank: 12, budget: Budget::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: String,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub root_type: Option<RootSystemType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    pub pass: bool,
    pub checks: u64,
    pub stats: Value,
    pub counterexamples: Vec<Value>,
}

/// Counterexamples beyond this many are counted but not emitted.
const MAX_WITNESSES: usize = 16;

struct Tally {
    checks: u64,
    failures: u64,
    witnesses: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Self { checks: 0, failures: 0, witnesses: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

fn strings(grid: &Grid<'_>, g: &[i64]) -> Vec<String> {
    grid.to_point(g).to_strings()
}

pub fn run(suite: Suite, params: &VerifyParams) -> Result<VerifyReport> {
    let ty = match params.root_type {
        Some(t) => t,
        None => suite.default_type().parse()?,
    };
    let radius = params.radius.unwrap_or_else(|| suite.default_radius());
    let datum = RootDatum::build(ty);
    let (tally, stats, pass_override) = match suite {
        Suite::Metric => metric(&datum, radius, params)?,
        Suite::Polytope => polytope(&datum, radius, &params.budget)?,
        Suite::Table => table(params.max_rank)?,
        Suite::Growth => growth(&datum, radius, &params.budget)?,
        Suite::Sandwich => sandwich(&datum, radius, &params.budget)?,
        Suite::Concavity => concavity(&datum, radius, params)?,
        Suite::Distance => {
            let (t, s) = distance_comparison(&datum, radius, &params.budget)?;
            (t, s, None)
        }
        Suite::G2Gap => g2_gap(&datum, radius, &params.budget)?,
        Suite::Parabolic => parabolic(&datum)?,
    };
    let table_like = suite == Suite::Table;
    Ok(VerifyReport {
        schema_version: crate::SCHEMA_VERSION,
        suite: suite.name().to_string(),
        root_type: (!table_like).then_some(ty),
        radius: (!table_like && suite != Suite::Parabolic).then_some(radius),
        pass: pass_override.unwrap_or(tally.failures == 0),
        checks: tally.checks,
        stats,
        counterexamples: tally.witnesses,
    })
}

type SuiteOutput = (Tally, Value, Option<bool>);

fn ball_vertices<'a>(datum: &'a RootDatum, radius: u32, budget: &Budget) -> Result<(Metric<'a>, Vec<Vec<i64>>)> {
    let metric = Metric::new(Grid::with_budget(datum, *budget));
    let ball = metric.ball(&vec![0; datum.rank()], radius)?;
    Ok((metric, ball))
}

/// Symmetry and definiteness on sampled pairs, triangle inequality on
/// sampled triples, all drawn from `B(o, radius)` in the apartment.
fn metric(datum: &RootDatum, radius: u32, params: &VerifyParams) -> Result<SuiteOutput> {
    let samples = params.samples.unwrap_or(10_000);
    let (metric, ball) = ball_vertices(datum, radius, &params.budget)?;
    let grid = metric.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut t = Tally::new();
    for _ in 0..samples {
        let x = ball.choose(&mut rng).expect("ball contains o");
        let y = ball.choose(&mut rng).expect("ball contains o");
        let z = ball.choose(&mut rng).expect("ball contains o");
        let (dxy, dyx, dyz, dxz) = (metric.distance(x, y), metric.distance(y, x), metric.distance(y, z), metric.distance(x, z));
        t.check(dxy == dyx, || json!({"property": "symmetry", "x": strings(grid, x), "y": strings(grid, y)}));
        t.check((dxy == 0) == (x == y), || json!({"property": "definiteness", "x": strings(grid, x), "y": strings(grid, y)}));
        t.check(dxz <= dxy + dyz, || {
            json!({"property": "triangle", "x": strings(grid, x), "y": strings(grid, y), "z": strings(grid, z),
                   "d_xy": dxy, "d_yz": dyz, "d_xz": dxz})
        });
    }
    Ok((t, json!({"ball_size": ball.len(), "triples_sampled": samples, "seed": params.seed}), None))
}

/// `{x ∈ C⁺ vertex : d(o, x) ≤ r}` from a box scan against `(rC)_0`.
fn polytope(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<SuiteOutput> {
    let grid = Grid::with_budget(datum, *budget);
    let n = grid.den();
    let d = datum.rank();
    let metric = Metric::new(grid.clone());
    let o = vec![0; d];
    let boxed: HashSet<Vec<i64>> = grid
        .box_vertices(&vec![0; d], &vec![i64::from(radius) * n; d])?
        .into_iter()
        .filter(|x| metric.distance(&o, x) <= radius)
        .collect();
    let alcove: HashSet<Vec<i64>> = grid.scaled_alcove_vertices(radius)?.into_iter().collect();
    let mut t = Tally::new();
    let mut missing: Vec<&Vec<i64>> = boxed.difference(&alcove).collect();
    let mut extra: Vec<&Vec<i64>> = alcove.difference(&boxed).collect();
    missing.sort();
    extra.sort();
    for x in boxed.union(&alcove) {
        t.check(boxed.contains(x) == alcove.contains(x), || Value::Null);
    }
    t.witnesses = missing
        .iter()
        .map(|x| json!({"in_ball_not_in_alcove": strings(&grid, x)}))
        .chain(extra.iter().map(|x| json!({"in_alcove_not_in_ball": strings(&grid, x)})))
        .take(MAX_WITNESSES)
        .collect();
    Ok((t, json!({"ball_chamber_vertices": boxed.len(), "alcove_vertices": alcove.len()}), None))
}

/// Exceptional entries of the bounds table: `(type, c, c', D)`.
const EXCEPTIONAL: [(&str, &[i64], &[i64], (i64, i64)); 5] = [
    ("E6", &[1, 2, 2, 3, 2, 1], &[16, 22, 30, 42, 30, 16], (16, 1)),
    ("E7", &[2, 2, 3, 4, 3, 2, 1], &[34, 49, 66, 96, 75, 52, 27], (27, 1)),
    ("E8", &[2, 3, 4, 6, 5, 4, 3, 2], &[92, 136, 182, 270, 220, 168, 114, 58], (46, 1)),
    ("F4", &[2, 3, 4, 2], &[16, 30, 42, 22], (11, 1)),
    ("G2", &[3, 2], &[10, 6], (10, 3)),
];

fn table(max_rank: usize) -> Result<SuiteOutput> {
    let table = theorem_table(max_rank)?;
    let mut t = Tally::new();
    for row in &table.rows {
        let name = row.root_type.to_string();
        let want = closed_form_growth_exponent(row.root_type);
        t.check(want.as_ref() == Some(&row.growth_exponent), || {
            json!({"type": name, "growth_exponent": fmt_rational(&row.growth_exponent),
                   "expected": want.as_ref().map(fmt_rational)})
        });
        let ceil: i64 = row.growth_exponent.ceil().to_integer().try_into().expect("small");
        t.check(row.cdim_lower == ceil, || json!({"type": name, "cdim_lower": row.cdim_lower}));
        t.check(row.cdim_lower as usize <= row.cdim_upper_depth_zero, || {
            json!({"type": name, "cdim_lower": row.cdim_lower, "cdim_upper": row.cdim_upper_depth_zero})
        });
    }
    for (name, c, cp, (num, den)) in EXCEPTIONAL {
        let row = table.row(name).ok_or_else(|| Error::InvalidType(name.into()))?;
        t.check(row.c == c && row.c_prime == cp, || json!({"type": name, "c": row.c, "c_prime": row.c_prime}));
        let want = Rational::new(num.into(), den.into());
        t.check(row.growth_exponent == want, || json!({"type": name, "growth_exponent": fmt_rational(&row.growth_exponent)}));
    }
    let g2 = table.row("G2").expect("exceptional rows are always present");
    t.check(g2.cdim_lower == 4, || json!({"type": "G2", "cdim_lower": g2.cdim_lower}));
    Ok((t, json!({"rows": table.rows.len(), "max_classical_rank": max_rank}), None))
}

/// `D(r) = rD`, per-vertex `e(x) ≤ 2ρ(x)`, the degree window of `S(r)`,
/// the quotient-sum degree and term-count bounds, monotonicity in `r`.
fn growth(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<SuiteOutput> {
    let mut t = Tally::new();
    let dd = growth_exponent(datum);
    let npos = datum.num_positive() as i64;
    let grid = Grid::with_budget(datum, *budget);
    let n = grid.den();
    let two_rho = datum.two_rho_coeffs();
    let qs = [2i64, 3, 5];
    let mut prev: Option<Vec<num_bigint::BigInt>> = None;
    for r in 0..=radius {
        let rr = Rational::from_integer(r.into());
        let dr = max_two_rho(datum, r, budget)?;
        t.check(dr == &rr * &dd, || json!({"r": r, "max_two_rho": fmt_rational(&dr), "rD": fmt_rational(&(&rr * &dd))}));

        for g in grid.scaled_alcove_vertices(r)? {
            let e = quotient_exponents_scaled(&grid, &g, None);
            let rho: i64 = two_rho.iter().zip(&g).map(|(a, b)| a * b).sum();
            t.check(e * n <= rho, || json!({"r": r, "x": strings(&grid, &g), "exponent": e, "two_rho": fmt_rational(&Rational::new(rho.into(), n.into()))}));
        }

        let report = ball_sum(datum, r, budget)?;
        let deg = i64::from(report.lower_poly.degree().finite().unwrap_or(0));
        let degq = Rational::from_integer(deg.into());
        t.check(degq <= &rr * &dd, || json!({"r": r, "degree": deg, "rD": fmt_rational(&(&rr * &dd))}));
        if r >= 1 {
            t.check(degq >= &rr * &dd - Rational::from_integer(npos.into()), || json!({"r": r, "degree": deg}));
        }
        t.check(report.lower_poly.coefficients_nonnegative(), || json!({"r": r, "lower_poly": report.lower_poly.to_string()}));
        for &q0 in &qs {
            t.check(report.lower_poly.evaluate_int(q0) <= report.upper_poly.evaluate_int(q0), || json!({"r": r, "q0": q0}));
        }
        let values: Vec<_> = qs.iter().map(|&q0| report.lower_poly.evaluate_int(q0)).collect();
        if let Some(p) = &prev {
            t.check(p.iter().zip(&values).all(|(a, b)| a <= b), || json!({"r": r, "property": "monotone"}));
        }
        prev = Some(values);

        let bound = chamber_count_bound(datum, r);
        t.check(num_bigint::BigInt::from(report.vertex_count_chamber) <= bound, || {
            json!({"r": r, "vertex_count": report.vertex_count_chamber, "bound": bound.to_string()})
        });
        for rp in 1..=3u32 {
            let qsum = quotient_ball_sum(datum, r, rp, budget)?;
            let qdeg = i64::from(qsum.degree().finite().unwrap_or(0));
            t.check(qdeg <= i64::from(rp - 1) * npos, || json!({"r": r, "r_prime": rp, "degree": qdeg}));
            t.check(qsum.coefficient_sum() == report.vertex_count_chamber.into(), || {
                json!({"r": r, "r_prime": rp, "term_count": qsum.coefficient_sum().to_string()})
            });
            for &q0 in &qs {
                t.check(qsum.evaluate_int(q0) <= report.lower_poly.evaluate_int(q0), || json!({"r": r, "r_prime": rp, "q0": q0}));
            }
        }
    }
    Ok((t, json!({"growth_exponent": fmt_rational(&dd), "positive_roots": npos}), None))
}

/// Radii arithmetic and `lower/(d+1) ≤ upper` for depths 0..=2 and levels
/// up to `max_level`.
fn sandwich(datum: &RootDatum, max_level: u32, budget: &Budget) -> Result<SuiteOutput> {
    let mut t = Tally::new();
    let sum_c: i64 = datum.highest_root_coeffs().iter().sum();
    for depth in 0..=2u32 {
        for r in 0..=max_level {
            let s = cind_sandwich(datum, depth, r, budget)?;
            let lr = i64::from(r) - i64::from(depth) - 2;
            let ur = 2 + (i64::from(r) + 1) * sum_c;
            t.check(s.lower_radius == lr && s.upper_radius as i64 == ur && s.upper_level == r + 1, || {
                json!({"depth": depth, "r": r, "lower_radius": s.lower_radius, "upper_radius": s.upper_radius})
            });
            t.check(s.lower_divisor as usize == datum.rank() + 1, || json!({"depth": depth, "r": r}));
            t.check(s.depth_zero == (depth == 0), || json!({"depth": depth, "r": r}));
            for q0 in [2, 3, 5] {
                t.check(s.consistent_at(q0), || {
                    json!({"depth": depth, "r": r, "q0": q0, "lower_poly": s.lower_poly.to_string(),
                           "upper_poly": s.upper_poly.to_string()})
                });
            }
        }
    }
    Ok((t, json!({"depths": [0, 1, 2], "max_level": max_level}), None))
}

/// The filtration bridge `d(x, y) ≤ r1 − r2 ⟹ P_{x,r1} ⊆ P_{y,r2}` on
/// sampled pairs and levels, and concavity of the constructed functions.
fn concavity(datum: &RootDatum, radius: u32, params: &VerifyParams) -> Result<SuiteOutput> {
    let samples = params.samples.unwrap_or(1_000);
    let (metric, ball) = ball_vertices(datum, radius, &params.budget)?;
    let grid = metric.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut t = Tally::new();
    let mut implications = 0u64;
    for _ in 0..samples {
        let x = ball.choose(&mut rng).expect("nonempty");
        let y = ball.choose(&mut rng).expect("nonempty");
        let d = i64::from(metric.distance(x, y));
        let r2: i64 = rng.gen_range(-3..=3);
        let r1 = if rng.gen_bool(0.5) { r2 + d + rng.gen_range(0..=2) } else { r2 + rng.gen_range(-2..=(2 * radius as i64)) };
        let (px, py) = (grid.to_point(x), grid.to_point(y));
        let contains = filtration_contains(datum, &px, r1, &py, r2)?;
        if d <= r1 - r2 {
            implications += 1;
            t.check(contains, || json!({"x": px.to_strings(), "y": py.to_strings(), "d": d, "r1": r1, "r2": r2}));
        }

        let fx = point_function(datum, &px)?;
        let fy = point_function(datum, &py)?;
        let star = optimize(&fx);
        let omega = omega_function(datum, &[px.clone(), py.clone()])?;
        let mixed = pointwise_max(&star, &fy);
        for (name, f) in [("point", &fx), ("optimize", &star), ("omega", &omega), ("optimize_omega", &optimize(&omega)), ("max", &mixed)] {
            t.check(is_concave(datum, f), || json!({"function": name, "x": px.to_strings(), "y": py.to_strings()}));
        }
    }
    Ok((t, json!({"pairs_sampled": samples, "implications_checked": implications, "seed": params.seed}), None))
}

/// Outcome of comparing `d` and `d'` on all pairs of `B(o, radius)`.
struct Comparison {
    tally: Tally,
    gaps: Vec<Value>,
    gap_count: u64,
    pairs: u64,
    sources: usize,
    ball: usize,
}

/// Both distances are invariant under the finite Weyl group, which fixes
/// `o` and so preserves `B(o, r)`; every pair is therefore conjugate to one
/// whose first point lies in the closed chamber, and only those sources are
/// searched.
fn compare(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<Comparison> {
    let (mut metric, ball) = ball_vertices(datum, radius, budget)?;
    let targets: HashSet<Vec<i64>> = ball.iter().cloned().collect();
    let sources: Vec<&Vec<i64>> = ball.iter().filter(|g| g.iter().all(|&v| v >= 0)).collect();
    let cap = 4 * radius + 8;
    let mut c = Comparison { tally: Tally::new(), gaps: Vec::new(), gap_count: 0, pairs: 0, sources: sources.len(), ball: ball.len() };
    for x in sources {
        let found = metric.bfs(x, &targets, cap);
        for y in &ball {
            c.pairs += 1;
            let d = metric.distance(x, y);
            let ds = found.get(y).copied();
            let grid = metric.grid();
            let witness = || json!({"x": strings(grid, x), "y": strings(grid, y), "d": d, "d_simplicial": ds});
            c.tally.check(ds.is_some_and(|s| s >= d), witness);
            c.tally.check(ds.is_some_and(|s| (s == 1) == (d == 1)), witness);
            if ds.is_some_and(|s| s > d) {
                c.gap_count += 1;
                if c.gaps.len() < MAX_WITNESSES {
                    c.gaps.push(witness());
                }
            }
        }
    }
    Ok(c)
}

/// `d' ≥ d` and `d = 1 ⟺ d' = 1` on all pairs; for classical types also
/// `d' = d`.
fn distance_comparison(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<(Tally, Value)> {
    let mut c = compare(datum, radius, budget)?;
    let classical = datum.root_system_type().family().is_classical();
    if classical {
        c.tally.checks += 1;
        if c.gap_count > 0 {
            c.tally.failures += 1;
            c.tally.witnesses.extend(c.gaps.iter().take(MAX_WITNESSES).cloned());
        }
    }
    let stats = json!({"ball_size": c.ball, "chamber_sources": c.sources, "pairs": c.pairs,
                       "gap_pairs": c.gap_count, "classical": classical, "gap_witnesses": c.gaps});
    Ok((c.tally, stats))
}

/// Searches `B(o, radius)` for a pair with `d' > d`; passes when one is
/// found and `d' ≥ d` holds throughout.
fn g2_gap(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<SuiteOutput> {
    let c = compare(datum, radius, budget)?;
    let found = c.gap_count > 0;
    let pass = found && c.tally.failures == 0;
    let stats = json!({"ball_size": c.ball, "chamber_sources": c.sources, "pairs": c.pairs,
                       "gap_pairs": c.gap_count, "witness": c.gaps.first()});
    Ok((c.tally, stats, Some(pass)))
}

/// `parabolic_shift` over every subset of simple roots against a closure
/// oracle: `Φ_M⁺` generated from the chosen simple roots by adding roots.
fn parabolic(datum: &RootDatum) -> Result<SuiteOutput> {
    let d = datum.rank();
    let mut t = Tally::new();
    for mask in 0u32..(1 << d) {
        let subset: Vec<usize> = (1..=d).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut levi: HashSet<Vec<i64>> =
            subset.iter().map(|&i| crate::cartan::Root::simple(d, i).coeffs().to_vec()).collect();
        loop {
            let mut added = Vec::new();
            for a in &levi {
                for &i in &subset {
                    let mut s = a.clone();
                    s[i - 1] += 1;
                    if datum.root_index(&s).is_some() && !levi.contains(&s) {
                        added.push(s);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            levi.extend(added);
        }
        let want = datum.num_positive() - levi.len();
        let got = parabolic_shift(datum, &subset)?;
        t.check(got == want, || json!({"levi": subset, "got": got, "expected": want}));
    }
    let borel = parabolic_shift(datum, &[])?;
    let full = parabolic_shift(datum, &(1..=d).collect::<Vec<_>>())?;
    t.check(borel == datum.num_positive(), || json!({"levi": [], "got": borel}));
    t.check(full == 0, || json!({"levi": "all", "got": full}));
    Ok((t, json!({"subsets": 1u64 << d}), None))
}

/// A pair `(x, y)` with `d'(x, y) > d(x, y)` in `B(o, radius)`, if any.
pub fn find_gap_pair(datum: &RootDatum, radius: u32, budget: &Budget) -> Result<Option<(ApartmentPoint, ApartmentPoint)>> {
    let c = compare(datum, radius, budget)?;
    Ok(c.gaps.first().map(|w| {
        let parse = |v: &Value| {
            let s: Vec<String> = serde_json::from_value(v.clone()).expect("witness coordinates");
            ApartmentPoint::parse(&s.join(",")).expect("witness coordinates")
        };
        (parse(&w["x"]), parse(&w["y"]))
    }))
}
