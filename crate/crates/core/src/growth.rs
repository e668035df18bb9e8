//! Ball-cardinality bounds and the growth-exponent tables.
//!
//! The number of vertices in the building ball `B(o, r)` is an orbit sum over
//! the chamber vertices `(rC)_0`; each orbit has size between
//! `q^{e(x)}` and `γ q^{e(x)}` with `e(x) = Σ_{α∈Φ⁺} max(⌈α(x)⌉ − 1, 0)`.
//! [`ball_sum`] returns both sides as polynomials in `q`. The true count is
//! never computed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::apartment::{Budget, Grid};
use crate::cartan::{RootDatum, RootSystemType};
use crate::error::{Error, Result};
use crate::moyprasad::quotient_exponents_scaled;
use crate::point::{fmt_rational, serialize_rational, Rational};
use crate::qpoly::QPolynomial;

#[derive(Clone, Debug, Serialize)]
pub struct BallReport {
    #[serde(rename = "type")]
    pub root_type: RootSystemType,
    pub radius: u32,
    /// `|(rC)_0|`
    pub vertex_count_chamber: u64,
    /// `S(r)`, a lower bound for `|B(o, r)|`.
    pub lower_poly: QPolynomial,
    /// `γ · S(r)`, an upper bound for `|B(o, r)|`.
    pub upper_poly: QPolynomial,
    pub gamma_poly: QPolynomial,
    /// `D(r)`: the maximum of `2ρ` over `(rC)_0`.
    #[serde(serialize_with = "serialize_rational")]
    pub max_two_rho: Rational,
    pub per_type_counts: Vec<u64>,
}

fn poly_from_counts(counts: BTreeMap<u32, u64>) -> QPolynomial {
    let mut p = QPolynomial::zero();
    for (e, c) in counts {
        p.add_term(e, BigInt::from(c));
    }
    p
}

struct ChamberScan {
    count: u64,
    exponents: BTreeMap<u32, u64>,
    max_two_rho_scaled: i64,
    per_type_counts: Vec<u64>,
}

fn scan(datum: &RootDatum, r: u32, cap: Option<u32>, with_types: bool, budget: &Budget) -> Result<ChamberScan> {
    let grid = Grid::with_budget(datum, *budget);
    let vertices = grid.scaled_alcove_vertices(r)?;
    let two_rho = datum.two_rho_coeffs();
    let mut out = ChamberScan {
        count: vertices.len() as u64,
        exponents: BTreeMap::new(),
        max_two_rho_scaled: 0,
        per_type_counts: vec![0; datum.rank() + 1],
    };
    for g in &vertices {
        let e = quotient_exponents_scaled(&grid, g, cap) as u32;
        *out.exponents.entry(e).or_default() += 1;
        let rho: i64 = two_rho.iter().zip(g).map(|(a, b)| a * b).sum();
        out.max_two_rho_scaled = out.max_two_rho_scaled.max(rho);
        if with_types {
            out.per_type_counts[grid.vertex_type(g)?] += 1;
        }
    }
    Ok(out)
}

/// `S(r) = Σ_{x ∈ (rC)_0} q^{e(x)}` together with `γ · S(r)` and `D(r)`.
pub fn ball_sum(datum: &RootDatum, r: u32, budget: &Budget) -> Result<BallReport> {
    let s = scan(datum, r, None, true, budget)?;
    let lower_poly = poly_from_counts(s.exponents);
    let gamma_poly = gamma_polynomial(datum);
    Ok(BallReport {
        root_type: datum.root_system_type(),
        radius: r,
        vertex_count_chamber: s.count,
        upper_poly: &gamma_poly * &lower_poly,
        lower_poly,
        gamma_poly,
        max_two_rho: Rational::new(s.max_two_rho_scaled.into(), datum.vertex_denominator().into()),
        per_type_counts: s.per_type_counts,
    })
}

/// Lower bound for `|P_{o,r′} \ B(o, r)|`: the orbit sum with every root
/// term capped at `r′`.
pub fn quotient_ball_sum(datum: &RootDatum, r: u32, r_prime: u32, budget: &Budget) -> Result<QPolynomial> {
    if r_prime == 0 {
        return Err(Error::InvalidBounds("level r' must be positive".into()));
    }
    Ok(poly_from_counts(scan(datum, r, Some(r_prime), false, budget)?.exponents))
}

/// `γ = [P_o : P_{o+}] = q^{|Φ⁺|} Π_i (q^{d_i} − 1)`, the order of the
/// reductive quotient at the hyperspecial origin.
pub fn gamma_polynomial(datum: &RootDatum) -> QPolynomial {
    datum
        .weyl_degrees()
        .into_iter()
        .fold(QPolynomial::q_pow(datum.num_positive() as u32), |acc, d| {
            &acc * &(QPolynomial::q_pow(d) - QPolynomial::one())
        })
}

/// `D = max_i c'_i / c_i`.
pub fn growth_exponent(datum: &RootDatum) -> Rational {
    datum
        .highest_root_coeffs()
        .iter()
        .zip(datum.two_rho_coeffs())
        .map(|(&c, &cp)| Rational::new(cp.into(), c.into()))
        .max()
        .expect("rank is positive")
}

/// `D(r) = max_{x ∈ (rC)_0} 2ρ(x)`.
pub fn max_two_rho(datum: &RootDatum, r: u32, budget: &Budget) -> Result<Rational> {
    let s = scan(datum, r, None, false, budget)?;
    Ok(Rational::new(s.max_two_rho_scaled.into(), datum.vertex_denominator().into()))
}

/// `dim U = |Φ⁺ \ Φ_M|` for the standard Levi `M` spanned by the given
/// simple roots (1-based).
pub fn parabolic_shift(datum: &RootDatum, levi_simples: &[usize]) -> Result<usize> {
    let d = datum.rank();
    let mut in_levi = vec![false; d + 1];
    for &i in levi_simples {
        if i == 0 || i > d {
            return Err(Error::IndexOutOfRange { index: i, rank: d });
        }
        in_levi[i] = true;
    }
    Ok(datum.positive_roots().iter().filter(|r| !r.support().all(|i| in_levi[i])).count())
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsRow {
    #[serde(rename = "type")]
    pub root_type: RootSystemType,
    pub rank: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub growth_exponent: Rational,
    pub cdim_lower: i64,
    pub cdim_upper_depth_zero: usize,
    pub c: Vec<i64>,
    pub c_prime: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsTable {
    pub schema_version: u32,
    pub max_classical_rank: usize,
    pub rows: Vec<BoundsRow>,
}

impl BoundsRow {
    pub fn for_type(t: RootSystemType) -> Self {
        let datum = RootDatum::build(t);
        let d = growth_exponent(&datum);
        BoundsRow {
            root_type: t,
            rank: t.rank(),
            cdim_lower: d.ceil().to_integer().try_into().expect("small"),
            growth_exponent: d,
            cdim_upper_depth_zero: datum.num_positive(),
            c: datum.highest_root_coeffs().to_vec(),
            c_prime: datum.two_rho_coeffs().to_vec(),
        }
    }
}

/// One row per classical type of rank `≤ max_classical_rank` and per
/// exceptional type.
pub fn theorem_table(max_classical_rank: usize) -> Result<BoundsTable> {
    if max_classical_rank < 2 {
        return Err(Error::InvalidBounds("max classical rank must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for t in RootSystemType::all_up_to(max_classical_rank) {
        if t.family().is_classical() {
            rows.push(BoundsRow::for_type(t));
        }
    }
    for t in RootSystemType::exceptional() {
        rows.push(BoundsRow::for_type(t));
    }
    Ok(BoundsTable { schema_version: crate::SCHEMA_VERSION, max_classical_rank, rows })
}

impl BoundsTable {
    pub fn row(&self, name: &str) -> Option<&BoundsRow> {
        self.rows.iter().find(|r| r.root_type.to_string() == name)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["type", "rank", "growth_exponent", "cdim_lower", "cdim_upper_depth_zero", "c", "c_prime"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.root_type.to_string(),
                r.rank.to_string(),
                fmt_rational(&r.growth_exponent),
                r.cdim_lower.to_string(),
                r.cdim_upper_depth_zero.to_string(),
                join(&r.c),
                join(&r.c_prime),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }

    /// Types as columns: one block for the classical families, one for the
    /// exceptional types.
    pub fn to_markdown(&self) -> String {
        let (classical, exceptional): (Vec<&BoundsRow>, Vec<&BoundsRow>) =
            self.rows.iter().partition(|r| r.root_type.family().is_classical());
        let mut out = String::new();
        for block in [classical, exceptional] {
            if block.is_empty() {
                continue;
            }
            let header: Vec<String> = block.iter().map(|r| r.root_type.to_string()).collect();
            out.push_str(&format!("| | {} |\n", header.join(" | ")));
            out.push_str(&format!("|---|{}\n", "---|".repeat(block.len())));
            let line = |label: &str, cells: Vec<String>| format!("| {label} | {} |\n", cells.join(" | "));
            out.push_str(&line("log_q\\|B(o,r)\\| ≥", block.iter().map(|r| fmt_rational(&r.growth_exponent)).collect()));
            out.push_str(&line("cdim ≥", block.iter().map(|r| r.cdim_lower.to_string()).collect()));
            out.push_str(&line(
                "cdim ≤ (depth zero)",
                block.iter().map(|r| r.cdim_upper_depth_zero.to_string()).collect(),
            ));
            out.push('\n');
        }
        out
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

/// Both sides of the compact-induction sandwich at level `r` for an open
/// compact `K` of depth `R`.
#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    #[serde(rename = "type")]
    pub root_type: RootSystemType,
    pub depth: u32,
    pub level: u32,
    /// `r − R − 2`; negative means the lower ball is empty.
    pub lower_radius: i64,
    pub lower_empty: bool,
    /// The lower bound is `lower_poly / lower_divisor`.
    pub lower_divisor: u32,
    pub lower_poly: QPolynomial,
    /// `2 + (r + 1) Σ c_i`
    pub upper_radius: u64,
    /// `r + 1`
    pub upper_level: u32,
    /// `γ ·` (quotient ball sum at `upper_radius`, level `upper_level`).
    pub upper_poly: QPolynomial,
    /// The upper bound only holds for depth-zero inductions from a parahoric.
    pub depth_zero: bool,
}

impl SandwichReport {
    /// `lower(q0) / (d + 1) ≤ upper(q0)`.
    pub fn consistent_at(&self, q0: i64) -> bool {
        let q = Rational::from_integer(q0.into());
        let lower = self.lower_poly.evaluate(&q) / Rational::from_integer(self.lower_divisor.into());
        lower <= self.upper_poly.evaluate(&q)
    }
}

pub fn cind_sandwich(datum: &RootDatum, depth: u32, r: u32, budget: &Budget) -> Result<SandwichReport> {
    let lower_radius = i64::from(r) - i64::from(depth) - 2;
    let lower_poly = if lower_radius >= 0 {
        ball_sum(datum, lower_radius as u32, budget)?.lower_poly
    } else {
        QPolynomial::zero()
    };
    let sum_c: i64 = datum.highest_root_coeffs().iter().sum();
    let upper_radius = 2 + (u64::from(r) + 1) * sum_c as u64;
    let upper_level = r + 1;
    let radius = u32::try_from(upper_radius).map_err(|_| Error::InvalidBounds("radius overflow".into()))?;
    let upper_poly = &gamma_polynomial(datum) * &quotient_ball_sum(datum, radius, upper_level, budget)?;
    Ok(SandwichReport {
        root_type: datum.root_system_type(),
        depth,
        level: r,
        lower_radius,
        lower_empty: lower_radius < 0,
        lower_divisor: datum.rank() as u32 + 1,
        lower_poly,
        upper_radius,
        upper_level,
        upper_poly,
        depth_zero: depth == 0,
    })
}

/// Growth exponents predicted by the closed forms per family.
pub fn closed_form_growth_exponent(t: RootSystemType) -> Option<Rational> {
    use crate::cartan::Family::*;
    let d = t.rank() as i64;
    let q = |n: i64, m: i64| Some(Rational::new(n.into(), m.into()));
    match t.family() {
        A if d % 2 == 0 => {
            let n = d / 2;
            q(n * (n + 1), 1)
        }
        A => {
            let n = (d - 1) / 2;
            q((n + 1) * (n + 1), 1)
        }
        B if d == 2 => q(3, 1),
        B if d == 3 => q(5, 1),
        B if d >= 4 => q(d * d, 2),
        B => None,
        C => q(d * (d + 1), 2),
        D => q(d * (d - 1), 2),
        E => q([16, 27, 46][(d - 6) as usize], 1),
        F => q(11, 1),
        G => q(10, 3),
    }
}

/// `true` when `lower(q0) ≤ upper(q0)` for each listed `q0`.
pub fn lower_below_upper(report: &BallReport, qs: &[i64]) -> bool {
    qs.iter().all(|&q0| {
        let q = Rational::from_integer(q0.into());
        report.lower_poly.evaluate(&q) <= report.upper_poly.evaluate(&q)
    })
}

/// `Π_i (⌊N r / c_i⌋ + 1)`: an explicit constant for the `Γ r^d` bound on
/// `|(rC)_0|`.
pub fn chamber_count_bound(datum: &RootDatum, r: u32) -> BigInt {
    let n = datum.vertex_denominator();
    datum
        .highest_root_coeffs()
        .iter()
        .fold(BigInt::one(), |acc, &c| acc * BigInt::from(n * i64::from(r) / c + 1))
}
