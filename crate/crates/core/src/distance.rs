//! Wall-separation distance, simplicial distance and apartment balls.
//!
//! `d(x, y)` is one more than the largest number of mutually parallel walls
//! strictly separating `x` and `y`; `d'(x, y)` is the graph distance in the
//! 1-skeleton. Both are computed inside a single apartment.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::apartment::{Budget, Grid, VertexSet};
use crate::cartan::{dot, Root, RootDatum};
use crate::error::{Error, Result};
use crate::point::{ApartmentPoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub d: u32,
    pub witness_root: Option<Root>,
    pub wall_count: u32,
}

fn strictly_between(a: &Rational, b: &Rational) -> u64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let n = hi.ceil().to_integer() - lo.floor().to_integer() - 1;
    u64::try_from(n).unwrap_or(0)
}

/// Number of walls `∂(α + k)` strictly separating `x` and `y`, i.e. the
/// number of integers strictly between `α(x)` and `α(y)`.
pub fn wall_count(datum: &RootDatum, x: &ApartmentPoint, y: &ApartmentPoint, alpha: &Root) -> Result<u64> {
    let ax = datum.eval_root(alpha, x)?;
    let ay = datum.eval_root(alpha, y)?;
    Ok(strictly_between(&ax, &ay))
}

fn require_vertex(grid: &Grid<'_>, x: &ApartmentPoint) -> Result<Vec<i64>> {
    x.expect_rank(grid.rank())?;
    grid.to_scaled(x).filter(|g| grid.is_vertex(g)).ok_or_else(|| Error::NotAVertex(x.to_string()))
}

pub fn wall_distance(datum: &RootDatum, x: &ApartmentPoint, y: &ApartmentPoint) -> Result<DistanceReport> {
    let grid = Grid::new(datum);
    let gx = require_vertex(&grid, x)?;
    let gy = require_vertex(&grid, y)?;
    Ok(Metric::new(grid).distance_report(&gx, &gy))
}

pub fn adjacent(datum: &RootDatum, x: &ApartmentPoint, y: &ApartmentPoint) -> Result<bool> {
    Ok(wall_distance(datum, x, y)?.d == 1)
}

/// Vertices `y` of the apartment with `d(center, y) ≤ r`.
pub fn apartment_ball(datum: &RootDatum, center: &ApartmentPoint, r: u32, budget: &Budget) -> Result<VertexSet> {
    let grid = Grid::with_budget(datum, *budget);
    let c = require_vertex(&grid, center)?;
    let metric = Metric::new(grid);
    let ball = metric.ball(&c, r)?;
    metric.grid().vertex_set(&ball)
}

/// Breadth-first search over adjacent vertices; `max_radius` bounds the search.
pub fn simplicial_distance(datum: &RootDatum, x: &ApartmentPoint, y: &ApartmentPoint, max_radius: u32) -> Result<u32> {
    let grid = Grid::new(datum);
    let gx = require_vertex(&grid, x)?;
    let gy = require_vertex(&grid, y)?;
    let mut metric = Metric::new(grid);
    metric.simplicial_distance(&gx, &gy, max_radius)
}

/// Distance computations on scaled coordinates (see [`Grid`]).
///
/// Neighbor lists are cached per residue class of `t · N` modulo `N`:
/// translating by an integral `t` moves walls onto walls, so the neighbors of
/// `x` are those of its residue representative shifted back.
pub struct Metric<'a> {
    grid: Grid<'a>,
    neighbor_offsets: HashMap<Vec<i64>, Vec<Vec<i64>>>,
}

impl<'a> Metric<'a> {
    pub fn new(grid: Grid<'a>) -> Self {
        Self { grid, neighbor_offsets: HashMap::new() }
    }

    pub fn grid(&self) -> &Grid<'a> {
        &self.grid
    }

    /// Separating-wall count for one root, from scaled root values.
    fn count_between(&self, a: i64, b: i64) -> u32 {
        let n = self.grid.den();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let c = -(-hi).div_euclid(n) - lo.div_euclid(n) - 1;
        c.max(0) as u32
    }

    /// `(d, witness root index, maximal per-root wall count)`.
    pub fn distance_with_witness(&self, x: &[i64], y: &[i64]) -> (u32, Option<usize>, u32) {
        if x == y {
            return (0, None, 0);
        }
        let mut best = 0;
        let mut witness = 0;
        for k in 0..self.grid.num_roots() {
            let c = self.count_between(self.grid.root_value(k, x), self.grid.root_value(k, y));
            if c > best {
                best = c;
                witness = k;
            }
        }
        (best + 1, Some(witness), best)
    }

    pub fn distance(&self, x: &[i64], y: &[i64]) -> u32 {
        self.distance_with_witness(x, y).0
    }

    pub fn distance_report(&self, x: &[i64], y: &[i64]) -> DistanceReport {
        let (d, witness, wall_count) = self.distance_with_witness(x, y);
        DistanceReport {
            d,
            witness_root: witness.map(|k| self.grid.datum().positive_roots()[k].clone()),
            wall_count,
        }
    }

    /// Coordinate box that contains every `y` with `d(x, y) ≤ r`: at most
    /// `r − 1` integers lie strictly between `t_i(x)` and `t_i(y)`, so
    /// `⌈t_i(x)⌉ − r ≤ t_i(y) ≤ ⌊t_i(x)⌋ + r`.
    fn ball_box(&self, x: &[i64], r: u32) -> (Vec<i64>, Vec<i64>) {
        let n = self.grid.den();
        let r = i64::from(r);
        let lo = x.iter().map(|&v| (-(-v).div_euclid(n) - r) * n).collect();
        let hi = x.iter().map(|&v| (v.div_euclid(n) + r) * n).collect();
        (lo, hi)
    }

    pub fn ball(&self, center: &[i64], r: u32) -> Result<Vec<Vec<i64>>> {
        if r == 0 {
            return Ok(vec![center.to_vec()]);
        }
        let (lo, hi) = self.ball_box(center, r);
        let mut out = self.grid.box_vertices(&lo, &hi)?;
        out.retain(|y| self.distance(center, y) <= r);
        Ok(out)
    }

    pub fn neighbors(&mut self, x: &[i64]) -> Vec<Vec<i64>> {
        let n = self.grid.den();
        let residue: Vec<i64> = x.iter().map(|v| v.rem_euclid(n)).collect();
        if !self.neighbor_offsets.contains_key(&residue) {
            let (lo, hi) = self.ball_box(&residue, 1);
            let offsets = self
                .grid
                .box_vertices(&lo, &hi)
                .expect("unit box stays within any sane budget")
                .into_iter()
                .filter(|y| self.distance(&residue, y) == 1)
                .map(|y| y.iter().zip(&residue).map(|(a, b)| a - b).collect())
                .collect();
            self.neighbor_offsets.insert(residue.clone(), offsets);
        }
        self.neighbor_offsets[&residue]
            .iter()
            .map(|off: &Vec<i64>| off.iter().zip(x).map(|(a, b)| a + b).collect())
            .collect()
    }

    pub fn simplicial_distance(&mut self, x: &[i64], y: &[i64], max_radius: u32) -> Result<u32> {
        if x == y {
            return Ok(0);
        }
        let targets: HashSet<Vec<i64>> = std::iter::once(y.to_vec()).collect();
        let found = self.bfs(x, &targets, max_radius);
        found.get(y).copied().ok_or(Error::SearchExhausted(max_radius))
    }

    /// Graph distances from `source` to each target reached within
    /// `max_radius` steps; stops as soon as every target is reached.
    pub fn bfs(&mut self, source: &[i64], targets: &HashSet<Vec<i64>>, max_radius: u32) -> HashMap<Vec<i64>, u32> {
        let mut found = HashMap::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(source.to_vec());
        queue.push_back((source.to_vec(), 0u32));
        if targets.contains(source) {
            found.insert(source.to_vec(), 0);
        }
        while let Some((v, depth)) = queue.pop_front() {
            if found.len() == targets.len() || depth >= max_radius {
                if found.len() == targets.len() {
                    break;
                }
                continue;
            }
            for w in self.neighbors(&v) {
                if seen.insert(w.clone()) {
                    if targets.contains(&w) {
                        found.insert(w.clone(), depth + 1);
                    }
                    queue.push_back((w, depth + 1));
                }
            }
        }
        found
    }
}

/// Direct rational evaluation of `d`, kept independent of [`Metric`] for
/// cross-checking.
pub fn wall_distance_rational(datum: &RootDatum, x: &ApartmentPoint, y: &ApartmentPoint) -> u64 {
    if x == y {
        return 0;
    }
    1 + datum
        .positive_roots()
        .iter()
        .map(|r| strictly_between(&dot(r.coeffs(), x), &dot(r.coeffs(), y)))
        .max()
        .unwrap_or(0)
}
