//! The apartment with its affine root hyperplanes.
//!
//! Hot paths work on scaled integer coordinates: a point with simple-root
//! values `t` is stored as `num = t · den` for a common denominator `den`.
//! Every vertex lives in `(1/N)ℤ^d` with `N = lcm(c_i)` (see [`Grid`]), so
//! enumeration and distance code never leave `i64`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cartan::{dot, Root, RootDatum};
use crate::error::{Error, Result};
use crate::point::{ApartmentPoint, Rational};

/// Resource limits for enumeration and folding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: u64,
    pub max_fold_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_candidates: 100_000_000, max_fold_steps: 1_000_000 }
    }
}

impl Budget {
    pub fn with_candidates(max_candidates: u64) -> Self {
        Self { max_candidates, ..Self::default() }
    }

    fn charge(&self, needed: u128) -> Result<()> {
        if needed > u128::from(self.max_candidates) {
            Err(Error::BudgetExceeded { needed, budget: self.max_candidates })
        } else {
            Ok(())
        }
    }
}

/// `α + k` as an affine function on the apartment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: Root,
    pub offset: i64,
}

impl AffineRoot {
    pub fn new(root: Root, offset: i64) -> Self {
        Self { root, offset }
    }
}

pub fn eval_affine(datum: &RootDatum, a: &AffineRoot, x: &ApartmentPoint) -> Result<Rational> {
    Ok(datum.eval_root(&a.root, x)? + Rational::from_integer(a.offset.into()))
}

/// `t_i ≥ 0` for all `i` and `α_0(x) ≤ r`.
pub fn in_scaled_alcove(datum: &RootDatum, r: &Rational, x: &ApartmentPoint) -> bool {
    x.rank() == datum.rank() && x.in_chamber() && &dot(datum.highest_root_coeffs(), x) <= r
}

/// Exact rank of a set of integer vectors by fraction-free elimination.
pub fn integer_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let a = rows[r][col];
            if a == 0 {
                continue;
            }
            let g = num_integer::gcd(a, pivot[col]);
            let (ma, mp) = (pivot[col] / g, a / g);
            let mut row_gcd = 0;
            for c in col..ncols {
                rows[r][c] = rows[r][c] * ma - pivot[c] * mp;
                row_gcd = num_integer::gcd(row_gcd, rows[r][c]);
            }
            if row_gcd > 1 {
                for c in col..ncols {
                    rows[r][c] /= row_gcd;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Definition-level check: the roots taking integer values at `x` span a
/// space of full rank.
pub fn is_vertex(datum: &RootDatum, x: &ApartmentPoint) -> bool {
    if x.rank() != datum.rank() {
        return false;
    }
    let integral: Vec<Vec<i64>> = datum
        .positive_roots()
        .iter()
        .filter(|r| dot(r.coeffs(), x).is_integer())
        .map(|r| r.coeffs().to_vec())
        .collect();
    integral.len() >= datum.rank() && integer_rank(integral) == datum.rank()
}

/// Every root takes an integer value at `x`.
pub fn is_special(datum: &RootDatum, x: &ApartmentPoint) -> bool {
    x.rank() == datum.rank() && datum.positive_roots().iter().all(|r| dot(r.coeffs(), x).is_integer())
}

/// Vertex `v_i` of the fundamental alcove: `v_0 = o`, `v_i = ω_i / c_i`.
pub fn alcove_vertex(datum: &RootDatum, i: usize) -> ApartmentPoint {
    let d = datum.rank();
    if i == 0 {
        return ApartmentPoint::origin(d);
    }
    let mut num = vec![0; d];
    num[i - 1] = 1;
    ApartmentPoint::from_scaled(&num, datum.highest_root_coeffs()[i - 1])
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Common denominator and numerators of a rational point.
fn common_scaling(x: &ApartmentPoint) -> Result<(Vec<i64>, i64)> {
    let den = x
        .coords()
        .iter()
        .try_fold(1i64, |acc, c| {
            let d: i64 = c.denom().try_into().ok()?;
            Some(num_integer::lcm(acc, d))
        })
        .ok_or_else(|| Error::InvalidBounds(format!("{x} has denominators beyond 64 bits")))?;
    let num = x
        .to_scaled(den)
        .ok_or_else(|| Error::InvalidBounds(format!("{x} has numerators beyond 64 bits")))?;
    Ok((num, den))
}

/// Applies violated simple affine reflections, lowest index first (index 0 is
/// the wall `α_0 = 1`), until `num/den` lies in the fundamental alcove.
fn fold_scaled(datum: &RootDatum, num: &mut [i64], den: i64, max_steps: u64) -> Result<()> {
    let d = datum.rank();
    let cartan = datum.cartan_matrix();
    let c = datum.highest_root_coeffs();
    let pair0 = datum.highest_coroot_pairing();
    let mut steps = 0u64;
    loop {
        let a0: i64 = c.iter().zip(num.iter()).map(|(a, b)| a * b).sum();
        if a0 > den {
            let excess = a0 - den;
            for j in 0..d {
                num[j] -= excess * pair0[j];
            }
        } else if let Some(i) = (0..d).find(|&i| num[i] < 0) {
            let ti = num[i];
            for j in 0..d {
                num[j] -= ti * cartan[j][i];
            }
        } else {
            return Ok(());
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::FoldLimit(max_steps));
        }
    }
}

/// The point of the fundamental alcove in the affine Weyl orbit of `x`.
pub fn fold_to_alcove(datum: &RootDatum, x: &ApartmentPoint, budget: &Budget) -> Result<ApartmentPoint> {
    x.expect_rank(datum.rank())?;
    let (mut num, den) = common_scaling(x)?;
    fold_scaled(datum, &mut num, den, budget.max_fold_steps)?;
    Ok(ApartmentPoint::from_scaled(&num, den))
}

/// Index `i` with `fold(x) = v_i`.
pub fn vertex_type(datum: &RootDatum, x: &ApartmentPoint) -> Result<usize> {
    x.expect_rank(datum.rank())?;
    let grid = Grid::new(datum);
    let g = grid.to_scaled(x).filter(|g| grid.is_vertex(g)).ok_or_else(|| Error::NotAVertex(x.to_string()))?;
    grid.vertex_type(&g)
}

/// Exact integer view of the apartment at the vertex denominator
/// `N = lcm(c_1, …, c_d)`; a point `t` is stored as `t · N`.
#[derive(Clone, Debug)]
pub struct Grid<'a> {
    datum: &'a RootDatum,
    den: i64,
    roots: Vec<Vec<i64>>,
    alcove_vertices: Vec<Vec<i64>>,
    budget: Budget,
}

impl<'a> Grid<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        Self::with_budget(datum, Budget::default())
    }

    pub fn with_budget(datum: &'a RootDatum, budget: Budget) -> Self {
        let den = datum.vertex_denominator();
        let d = datum.rank();
        let roots = datum.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect();
        let alcove_vertices = (0..=d)
            .map(|i| {
                let mut v = vec![0; d];
                if i > 0 {
                    v[i - 1] = den / datum.highest_root_coeffs()[i - 1];
                }
                v
            })
            .collect();
        Self { datum, den, roots, alcove_vertices, budget }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn to_scaled(&self, x: &ApartmentPoint) -> Option<Vec<i64>> {
        if x.rank() != self.rank() {
            return None;
        }
        x.to_scaled(self.den)
    }

    pub fn to_point(&self, g: &[i64]) -> ApartmentPoint {
        ApartmentPoint::from_scaled(g, self.den)
    }

    /// `N · α(x)` for every positive root, in the datum's order.
    pub fn root_value(&self, root: usize, g: &[i64]) -> i64 {
        self.roots[root].iter().zip(g).map(|(a, b)| a * b).sum()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_vertex(&self, g: &[i64]) -> bool {
        let d = self.rank();
        let integral: Vec<Vec<i64>> = (0..self.roots.len())
            .filter(|&k| self.root_value(k, g) % self.den == 0)
            .map(|k| self.roots[k].clone())
            .collect();
        integral.len() >= d && integer_rank(integral) == d
    }

    pub fn is_special(&self, g: &[i64]) -> bool {
        (0..self.roots.len()).all(|k| self.root_value(k, g) % self.den == 0)
    }

    pub fn in_scaled_alcove(&self, r: i64, g: &[i64]) -> bool {
        let a0: i64 = self.datum.highest_root_coeffs().iter().zip(g).map(|(a, b)| a * b).sum();
        g.iter().all(|&x| x >= 0) && a0 <= r * self.den
    }

    pub fn fold(&self, g: &[i64]) -> Result<Vec<i64>> {
        let mut out = g.to_vec();
        fold_scaled(self.datum, &mut out, self.den, self.budget.max_fold_steps)?;
        Ok(out)
    }

    /// Type of a vertex given in scaled coordinates.
    pub fn vertex_type(&self, g: &[i64]) -> Result<usize> {
        let folded = self.fold(g)?;
        self.alcove_vertices
            .iter()
            .position(|v| *v == folded)
            .ok_or_else(|| Error::NotAVertex(self.to_point(g).to_string()))
    }

    pub fn alcove_vertex(&self, i: usize) -> &[i64] {
        &self.alcove_vertices[i]
    }

    /// Candidate lattices: for each denominator `c ∈ {1, c_1, …, c_d}` the
    /// step `N / c` between consecutive candidate numerators.
    fn steps(&self) -> Vec<i64> {
        self.datum.denominators().into_iter().map(|c| self.den / c).collect()
    }

    /// Vertices `t` with `lo_i ≤ t_i ≤ hi_i`, bounds given in scaled form.
    pub fn box_vertices(&self, lo: &[i64], hi: &[i64]) -> Result<Vec<Vec<i64>>> {
        let d = self.rank();
        let steps = self.steps();
        let mut needed: u128 = 0;
        let mut ranges = Vec::with_capacity(steps.len());
        for &step in &steps {
            let range: Vec<(i64, i64)> = (0..d).map(|i| (ceil_div(lo[i], step), floor_div(hi[i], step))).collect();
            if range.iter().any(|(a, b)| a > b) {
                ranges.push(None);
                continue;
            }
            needed += range.iter().map(|(a, b)| (b - a + 1) as u128).product::<u128>();
            ranges.push(Some(range));
        }
        self.budget.charge(needed)?;

        let mut found = BTreeSet::new();
        let mut cur = vec![0i64; d];
        for (step, range) in steps.iter().zip(&ranges) {
            let Some(range) = range else { continue };
            self.box_rec(0, *step, range, &mut cur, &mut found);
        }
        Ok(found.into_iter().collect())
    }

    fn box_rec(&self, i: usize, step: i64, range: &[(i64, i64)], cur: &mut Vec<i64>, found: &mut BTreeSet<Vec<i64>>) {
        if i == cur.len() {
            if !found.contains(cur.as_slice()) && self.is_vertex(cur) {
                found.insert(cur.clone());
            }
            return;
        }
        for k in range[i].0..=range[i].1 {
            cur[i] = k * step;
            self.box_rec(i + 1, step, range, cur, found);
        }
    }

    /// Vertices of `rC`: `t ≥ 0`, `Σ c_i t_i ≤ r`. Candidates on each
    /// `(1/c)`-lattice satisfy `Σ c_i k_i ≤ r c` with `k ≥ 0`.
    pub fn scaled_alcove_vertices(&self, r: u32) -> Result<Vec<Vec<i64>>> {
        let d = self.rank();
        let c = self.datum.highest_root_coeffs();
        let mut found = BTreeSet::new();
        let mut visited: u128 = 0;
        let mut cur = vec![0i64; d];
        for den in self.datum.denominators() {
            let step = self.den / den;
            let cap = i64::from(r) * den;
            self.alcove_rec(0, step, cap, c, &mut cur, &mut found, &mut visited)?;
        }
        Ok(found.into_iter().collect())
    }

    #[allow(clippy::too_many_arguments)]
    fn alcove_rec(
        &self,
        i: usize,
        step: i64,
        remaining: i64,
        c: &[i64],
        cur: &mut Vec<i64>,
        found: &mut BTreeSet<Vec<i64>>,
        visited: &mut u128,
    ) -> Result<()> {
        if i == cur.len() {
            *visited += 1;
            if *visited > u128::from(self.budget.max_candidates) {
                self.budget.charge(*visited)?;
            }
            if !found.contains(cur.as_slice()) && self.is_vertex(cur) {
                found.insert(cur.clone());
            }
            return Ok(());
        }
        let mut k = 0;
        while k * c[i] <= remaining {
            cur[i] = k * step;
            self.alcove_rec(i + 1, step, remaining - k * c[i], c, cur, found, visited)?;
            k += 1;
        }
        cur[i] = 0;
        Ok(())
    }

    pub fn vertex_set(&self, scaled: &[Vec<i64>]) -> Result<VertexSet> {
        let mut per_type_counts = vec![0u64; self.rank() + 1];
        let mut types = Vec::with_capacity(scaled.len());
        for g in scaled {
            let t = self.vertex_type(g)?;
            per_type_counts[t] += 1;
            types.push(t);
        }
        Ok(VertexSet { points: scaled.iter().map(|g| self.to_point(g)).collect(), types, per_type_counts })
    }
}

/// A deterministically ordered set of vertices together with their types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    points: Vec<ApartmentPoint>,
    #[serde(skip)]
    types: Vec<usize>,
    per_type_counts: Vec<u64>,
}

impl VertexSet {
    pub fn points(&self) -> &[ApartmentPoint] {
        &self.points
    }

    /// Type of each point, parallel to [`VertexSet::points`].
    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn per_type_counts(&self) -> &[u64] {
        &self.per_type_counts
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &ApartmentPoint) -> bool {
        self.points.binary_search(x).is_ok()
    }
}

/// `(rC)_0`, the vertices of the `r`-fold dilated fundamental alcove.
pub fn enumerate_scaled_alcove_vertices(datum: &RootDatum, r: u32, budget: &Budget) -> Result<VertexSet> {
    let grid = Grid::with_budget(datum, *budget);
    let scaled = grid.scaled_alcove_vertices(r)?;
    grid.vertex_set(&scaled)
}

/// All vertices with `lo_i ≤ t_i ≤ hi_i`.
pub fn enumerate_box_vertices(
    datum: &RootDatum,
    lo: &[Rational],
    hi: &[Rational],
    budget: &Budget,
) -> Result<VertexSet> {
    let d = datum.rank();
    for v in [lo, hi] {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(Error::InvalidBounds("lo must not exceed hi".into()));
    }
    let grid = Grid::with_budget(datum, *budget);
    let n = Rational::from_integer(grid.den().into());
    let to_i64 = |q: Rational| -> Result<i64> {
        q.to_integer().try_into().map_err(|_| Error::InvalidBounds("box too large".into()))
    };
    let lo_s = lo.iter().map(|q| to_i64((q * &n).ceil())).collect::<Result<Vec<_>>>()?;
    let hi_s = hi.iter().map(|q| to_i64((q * &n).floor())).collect::<Result<Vec<_>>>()?;
    let scaled = grid.box_vertices(&lo_s, &hi_s)?;
    grid.vertex_set(&scaled)
}
