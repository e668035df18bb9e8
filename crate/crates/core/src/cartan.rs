//! Irreducible reduced root systems in Bourbaki numbering.
//!
//! Positive roots are generated by root-string closure from the simple roots;
//! nothing is read from tables except the Dynkin diagrams themselves.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{ApartmentPoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Smallest rank admitted for the family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C | Family::G => 2,
            Family::D | Family::F => 4,
            Family::E => 6,
        }
    }
}

/// Family letter plus rank, validated against the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            let hint = if family == Family::D && rank == 3 { " (use A3)" } else { "" };
            Err(Error::InvalidType(format!("{}{}{}", family.letter(), rank, hint)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exceptional() -> Vec<RootSystemType> {
        [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)]
            .into_iter()
            .map(|(f, r)| RootSystemType { family: f, rank: r })
            .collect()
    }

    /// Every type of rank at most `max_rank`, classical families first.
    pub fn all_up_to(max_rank: usize) -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in family.min_rank()..=max_rank {
                if let Ok(t) = RootSystemType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A root written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    /// Fails on the zero vector and on mixed-sign vectors.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let pos = coeffs.iter().all(|&c| c >= 0);
        let neg = coeffs.iter().all(|&c| c <= 0);
        if coeffs.iter().all(|&c| c == 0) || !(pos || neg) {
            return Err(Error::Parse(format!("{coeffs:?} is not a root vector")));
        }
        Ok(Self { coeffs })
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i - 1] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn negate(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Indices (1-based) of the simple roots occurring in this root.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i + 1)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Complete combinatorial data of one irreducible root system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    ty: RootSystemType,
    /// `(α_i, α_j)`, normalized so that short roots have squared length 2.
    gram: Vec<Vec<i64>>,
    /// `A_ij = ⟨α_i, α_j^∨⟩`.
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    /// Positive roots followed by their negatives, in the same order.
    all: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    highest: Vec<i64>,
    two_rho: Vec<i64>,
    /// `⟨α_j, α_0^∨⟩` for the highest root `α_0`.
    highest_coroot_pairing: Vec<i64>,
}

fn gram_matrix(ty: RootSystemType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let mut g = vec![vec![0i64; n]; n];
    let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i - 1][j - 1] = v;
        g[j - 1][i - 1] = v;
    };
    match ty.family {
        Family::A => {
            for i in 1..=n {
                g[i - 1][i - 1] = 2;
            }
            for i in 1..n {
                edge(&mut g, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 1..n {
                g[i - 1][i - 1] = 4;
                edge(&mut g, i, i + 1, -2);
            }
            g[n - 1][n - 1] = 2;
        }
        Family::C => {
            for i in 1..n {
                g[i - 1][i - 1] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 1..n - 1 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, n - 1, n, -2);
        }
        Family::D => {
            for i in 1..=n {
                g[i - 1][i - 1] = 2;
            }
            for i in 1..n - 1 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, n - 2, n, -1);
        }
        Family::E => {
            for i in 1..=n {
                g[i - 1][i - 1] = 2;
            }
            edge(&mut g, 1, 3, -1);
            edge(&mut g, 2, 4, -1);
            for i in 3..n {
                edge(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            edge(&mut g, 1, 2, -2);
            edge(&mut g, 2, 3, -2);
            edge(&mut g, 3, 4, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            edge(&mut g, 1, 2, -3);
        }
    }
    g
}

fn inner(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            s += ai * gram[i][j] * bj;
        }
    }
    s
}

/// Positive roots by closure: `β + α_i` is a root iff the `α_i`-string through
/// `β` extends upward, i.e. `p − ⟨β, α_i^∨⟩ > 0` where `p` counts the downward
/// steps that stay in `Φ⁺`.
fn close_positive_roots(gram: &[Vec<i64>], cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    known.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut down = beta.clone();
                let mut p = 0;
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let is_simple_i = beta.iter().enumerate().all(|(j, &c)| c == i64::from(j == i));
                if !is_simple_i && p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        known.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    known.into_iter().collect()
}

impl RootDatum {
    pub fn build(ty: RootSystemType) -> Self {
        let gram = gram_matrix(ty);
        let n = ty.rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();

        let mut coeffs = close_positive_roots(&gram, &cartan);
        coeffs.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive: Vec<Root> = coeffs.into_iter().map(|coeffs| Root { coeffs }).collect();
        let all: Vec<Root> = positive.iter().cloned().chain(positive.iter().map(Root::negate)).collect();
        let index = all.iter().enumerate().map(|(k, r)| (r.coeffs.clone(), k)).collect();

        let highest = positive.last().expect("nonempty").coeffs.clone();
        let two_rho = (0..n).map(|i| positive.iter().map(|r| r.coeffs[i]).sum()).collect();
        let hh = inner(&gram, &highest, &highest);
        let highest_coroot_pairing = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                2 * inner(&gram, &e, &highest) / hh
            })
            .collect();

        Self { ty, gram, cartan, positive, all, index, highest, two_rho, highest_coroot_pairing }
    }

    pub fn root_system_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Φ⁺ ordered by height, then descending lexicographic order, so that the
    /// first `d` entries are `α_1, …, α_d`.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Φ: the positive roots followed by their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.all
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.index.contains_key(&root.coeffs)
    }

    /// Coefficients `c_i` of the highest root `α_0`.
    pub fn highest_root_coeffs(&self) -> &[i64] {
        &self.highest
    }

    /// Coefficients `c'_i` of `2ρ`.
    pub fn two_rho_coeffs(&self) -> &[i64] {
        &self.two_rho
    }

    /// `⟨α_j, α_0^∨⟩` for `j = 1..d`.
    pub fn highest_coroot_pairing(&self) -> &[i64] {
        &self.highest_coroot_pairing
    }

    /// `N = lcm(c_1, …, c_d)`: every vertex has coordinates in `(1/N)ℤ^d`.
    pub fn vertex_denominator(&self) -> i64 {
        self.highest.iter().fold(1, |acc, &c| num_integer::lcm(acc, c))
    }

    /// Sorted list of the distinct denominators `{1, c_1, …, c_d}`.
    pub fn denominators(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = std::iter::once(1).chain(self.highest.iter().copied()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn eval_root(&self, root: &Root, point: &ApartmentPoint) -> Result<Rational> {
        point.expect_rank(self.rank())?;
        if root.coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: root.coeffs.len() });
        }
        Ok(dot(&root.coeffs, point))
    }

    /// Degrees of the basic invariants of the Weyl group, from the dual
    /// partition of the height distribution of Φ⁺.
    pub fn weyl_degrees(&self) -> Vec<u32> {
        let max_h = self.positive.last().map(Root::height).unwrap_or(0) as usize;
        let mut count = vec![0usize; max_h + 2];
        for r in &self.positive {
            count[r.height() as usize] += 1;
        }
        let mut degrees = Vec::new();
        for h in 1..=max_h {
            for _ in 0..count[h] - count[h + 1] {
                degrees.push(h as u32 + 1);
            }
        }
        degrees.sort_unstable();
        degrees
    }

    pub fn weyl_group_order(&self) -> BigInt {
        self.weyl_degrees().iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }

    pub fn summary(&self) -> DatumSummary {
        DatumSummary {
            schema_version: crate::SCHEMA_VERSION,
            root_type: self.ty.to_string(),
            family: self.ty.family.letter().to_string(),
            rank: self.rank(),
            cartan_matrix: self.cartan.clone(),
            positive_root_count: self.positive.len(),
            positive_roots: self.positive.iter().map(|r| r.coeffs.clone()).collect(),
            c: self.highest.clone(),
            c_prime: self.two_rho.clone(),
            weyl_degrees: self.weyl_degrees(),
            weyl_group_order: self.weyl_group_order().to_string(),
        }
    }
}

/// `Σ m_i t_i`.
pub(crate) fn dot(coeffs: &[i64], point: &ApartmentPoint) -> Rational {
    let mut num = Rational::default();
    for (m, t) in coeffs.iter().zip(point.coords()) {
        if *m != 0 {
            num += t * BigInt::from(*m);
        }
    }
    num
}

/// Canonical JSON view of a [`RootDatum`].
#[derive(Clone, Debug, Serialize)]
pub struct DatumSummary {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub root_type: String,
    pub family: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_root_count: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub c: Vec<i64>,
    pub c_prime: Vec<i64>,
    pub weyl_degrees: Vec<u32>,
    pub weyl_group_order: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{int, rat};

    fn datum(s: &str) -> RootDatum {
        RootDatum::build(s.parse().unwrap())
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
    }

    fn expected_positive_count(t: RootSystemType) -> usize {
        let d = t.rank();
        match (t.family(), d) {
            (Family::A, _) => d * (d + 1) / 2,
            (Family::B | Family::C, _) => d * d,
            (Family::D, _) => d * (d - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, 8) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
            _ => unreachable!(),
        }
    }

    fn expected_weyl_order(t: RootSystemType) -> BigInt {
        let d = t.rank() as u64;
        match (t.family(), d) {
            (Family::A, _) => factorial(d + 1),
            (Family::B | Family::C, _) => BigInt::from(2u64.pow(d as u32)) * factorial(d),
            (Family::D, _) => BigInt::from(2u64.pow(d as u32 - 1)) * factorial(d),
            (Family::E, 6) => BigInt::from(51_840u64),
            (Family::E, 7) => BigInt::from(2_903_040u64),
            (Family::E, 8) => BigInt::from(696_729_600u64),
            (Family::F, _) => BigInt::from(1152),
            (Family::G, _) => BigInt::from(12),
            _ => unreachable!(),
        }
    }

    #[test]
    fn type_validation() {
        assert!("D3".parse::<RootSystemType>().is_err());
        assert!("B1".parse::<RootSystemType>().is_err());
        assert!("C1".parse::<RootSystemType>().is_err());
        assert!("E5".parse::<RootSystemType>().is_err());
        assert!("E9".parse::<RootSystemType>().is_err());
        assert!("F3".parse::<RootSystemType>().is_err());
        assert!("G3".parse::<RootSystemType>().is_err());
        assert!("A0".parse::<RootSystemType>().is_err());
        assert!("X2".parse::<RootSystemType>().is_err());
        assert_eq!("g2".parse::<RootSystemType>().unwrap().to_string(), "G2");
        assert_eq!("D_4".parse::<RootSystemType>().unwrap().to_string(), "D4");
    }

    #[test]
    fn root_rejects_zero_and_mixed_signs() {
        assert!(Root::new(vec![0, 0]).is_err());
        assert!(Root::new(vec![1, -1]).is_err());
        assert!(Root::new(vec![-1, -2]).is_ok());
    }

    #[test]
    fn small_systems() {
        let a1 = datum("A1");
        assert_eq!(a1.positive_roots(), &[Root::simple(1, 1)]);
        assert_eq!(a1.highest_root_coeffs(), &[1]);
        assert_eq!(a1.two_rho_coeffs(), &[1]);

        let a2 = datum("A2");
        let pos: Vec<_> = a2.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect();
        assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.highest_root_coeffs(), &[1, 1]);
        assert_eq!(a2.two_rho_coeffs(), &[2, 2]);

        let g2 = datum("G2");
        assert_eq!(g2.highest_root_coeffs(), &[3, 2]);
        assert_eq!(g2.two_rho_coeffs(), &[10, 6]);
        assert_eq!(g2.cartan_matrix(), &[vec![2, -1], vec![-3, 2]]);

        let e8 = datum("E8");
        assert_eq!(e8.highest_root_coeffs(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(e8.two_rho_coeffs(), &[92, 136, 182, 270, 220, 168, 114, 58]);
    }

    #[test]
    fn bourbaki_long_short_conventions() {
        // B2: α_2 short, highest root α_1 + 2α_2.
        let b2 = datum("B2");
        assert_eq!(b2.highest_root_coeffs(), &[1, 2]);
        assert_eq!(b2.cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        // C3: highest root 2α_1 + 2α_2 + α_3.
        assert_eq!(datum("C3").highest_root_coeffs(), &[2, 2, 1]);
        assert_eq!(datum("D5").highest_root_coeffs(), &[1, 2, 2, 1, 1]);
        assert_eq!(datum("E6").highest_root_coeffs(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(datum("E7").highest_root_coeffs(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(datum("F4").highest_root_coeffs(), &[2, 3, 4, 2]);
    }

    #[test]
    fn counts_and_structural_invariants_up_to_rank_12() {
        for t in RootSystemType::all_up_to(12) {
            let d = RootDatum::build(t);
            assert_eq!(d.num_positive(), expected_positive_count(t), "{t}");
            let n = d.rank();
            for i in 0..n {
                let col: i64 = d.positive_roots().iter().map(|r| r.coeffs()[i]).sum();
                assert_eq!(col, d.two_rho_coeffs()[i], "{t}");
                assert!(d.highest_root_coeffs()[i] >= 1 && d.two_rho_coeffs()[i] >= 1);
            }
            for r in d.positive_roots() {
                assert!(r.coeffs().iter().zip(d.highest_root_coeffs()).all(|(a, b)| a <= b), "{t}");
            }
            // height order
            assert!(d.positive_roots().windows(2).all(|w| w[0].height() <= w[1].height()));
            for i in 1..=n {
                assert_eq!(d.positive_roots()[i - 1], Root::simple(n, i));
            }
            assert_eq!(d.weyl_group_order(), expected_weyl_order(t), "{t}");
            let deg_sum: u32 = d.weyl_degrees().iter().sum();
            assert_eq!(deg_sum as usize, d.num_positive() + n, "{t}");
        }
    }

    #[test]
    fn two_rho_closed_forms() {
        for d in 1..=12i64 {
            let a = datum(&format!("A{d}"));
            let want: Vec<i64> = (1..=d).map(|i| i * (d + 1 - i)).collect();
            assert_eq!(a.two_rho_coeffs(), want.as_slice(), "A{d}");
        }
        for d in 2..=12i64 {
            let b = datum(&format!("B{d}"));
            let want: Vec<i64> = (1..=d).map(|i| i * (2 * d - i)).collect();
            assert_eq!(b.two_rho_coeffs(), want.as_slice(), "B{d}");
            let c = datum(&format!("C{d}"));
            let want: Vec<i64> = (1..=d)
                .map(|i| if i == d { d * (d + 1) / 2 } else { i * (2 * d - i + 1) })
                .collect();
            assert_eq!(c.two_rho_coeffs(), want.as_slice(), "C{d}");
        }
        for d in 4..=12i64 {
            let dd = datum(&format!("D{d}"));
            let want: Vec<i64> = (1..=d)
                .map(|i| {
                    if i == 1 {
                        2 * (d - 1)
                    } else if i >= d - 1 {
                        d * (d - 1) / 2
                    } else {
                        2 * (i * d - i * (i + 1) / 2)
                    }
                })
                .collect();
            assert_eq!(dd.two_rho_coeffs(), want.as_slice(), "D{d}");
        }
        assert_eq!(datum("E6").two_rho_coeffs(), &[16, 22, 30, 42, 30, 16]);
        assert_eq!(datum("E7").two_rho_coeffs(), &[34, 49, 66, 96, 75, 52, 27]);
        assert_eq!(datum("F4").two_rho_coeffs(), &[16, 30, 42, 22]);
    }

    #[test]
    fn weyl_degrees_examples() {
        assert_eq!(datum("A1").weyl_degrees(), vec![2]);
        assert_eq!(datum("A2").weyl_degrees(), vec![2, 3]);
        assert_eq!(datum("G2").weyl_degrees(), vec![2, 6]);
        assert_eq!(datum("E8").weyl_degrees(), vec![2, 8, 12, 14, 18, 20, 24, 30]);
    }

    #[test]
    fn root_evaluation() {
        let a2 = datum("A2");
        let r = Root::new(vec![1, 1]).unwrap();
        assert_eq!(a2.eval_root(&r, &ApartmentPoint::from_ints(&[1, 0])).unwrap(), int(1));
        assert_eq!(a2.eval_root(&r, &ApartmentPoint::origin(2)).unwrap(), int(0));
        let b2 = datum("B2");
        let r = Root::new(vec![1, 2]).unwrap();
        let x = ApartmentPoint::from_scaled(&[1, 1], 2);
        assert_eq!(b2.eval_root(&r, &x).unwrap(), rat(3, 2));
        assert!(b2.eval_root(&r, &ApartmentPoint::origin(3)).is_err());
    }

    #[test]
    fn highest_coroot_pairing_matches_root_strings() {
        // A2: α_0 = α_1 + α_2, ⟨α_j, α_0^∨⟩ = 1.
        assert_eq!(datum("A2").highest_coroot_pairing(), &[1, 1]);
        // G2: α_0 = 3α_1 + 2α_2 is long; only α_2 pairs nontrivially.
        assert_eq!(datum("G2").highest_coroot_pairing(), &[0, 1]);
    }

    #[test]
    fn summary_json_shape() {
        let js = serde_json::to_value(datum("G2").summary()).unwrap();
        assert_eq!(js["c"], serde_json::json!([3, 2]));
        assert_eq!(js["c_prime"], serde_json::json!([10, 6]));
        assert_eq!(js["type"], "G2");
        assert_eq!(js["weyl_group_order"], "12");
    }
}
