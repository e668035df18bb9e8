//! Concave functions on `Φ ∪ {0}` and the `q`-exponents of Moy-Prasad indices.
//!
//! Groups never materialize: an index `[P_f : P_g]` is represented by the
//! exponent `e` with `[P_f : P_g] = q^e`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::apartment::Grid;
use crate::cartan::{dot, Root, RootDatum};
use crate::error::{Error, Result};
use crate::point::{ceil_i64, fmt_rational, serialize_rational, ApartmentPoint, Rational};

/// A total function on `Φ ∪ {0}`. Values are indexed like
/// [`RootDatum::roots`]: positive roots first, then their negatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveFunction {
    pub at_zero: Rational,
    pub values: Vec<Rational>,
}

impl ConcaveFunction {
    pub fn constant(datum: &RootDatum, value: Rational, at_zero: Rational) -> Self {
        Self { at_zero, values: vec![value; datum.roots().len()] }
    }

    pub fn zero(datum: &RootDatum) -> Self {
        Self::constant(datum, Rational::zero(), Rational::zero())
    }

    pub fn value(&self, datum: &RootDatum, root: &Root) -> Option<&Rational> {
        datum.root_index(root.coeffs()).map(|k| &self.values[k])
    }

    pub fn set(&mut self, datum: &RootDatum, root: &Root, value: Rational) -> Result<()> {
        let k = datum
            .root_index(root.coeffs())
            .ok_or_else(|| Error::Parse(format!("{root} is not a root")))?;
        self.values[k] = value;
        Ok(())
    }

    /// `f ≥ g` on every root and at zero.
    pub fn dominates(&self, g: &ConcaveFunction) -> bool {
        self.at_zero >= g.at_zero && self.values.iter().zip(&g.values).all(|(a, b)| a >= b)
    }

    pub fn to_json(&self, datum: &RootDatum) -> ConcaveFunctionJson {
        ConcaveFunctionJson {
            at_zero: self.at_zero.clone(),
            values: datum
                .roots()
                .iter()
                .zip(&self.values)
                .map(|(r, v)| RootValue { root: r.coeffs().to_vec(), value: v.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcaveFunctionJson {
    #[serde(serialize_with = "serialize_rational")]
    pub at_zero: Rational,
    pub values: Vec<RootValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootValue {
    pub root: Vec<i64>,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

/// Index exponent `Σ_α (⌈g(α)⌉ − ⌈f(α)⌉)` with its per-root terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexExponent {
    pub exponent: i64,
    pub per_root_contributions: Vec<(Root, i64)>,
}

/// Checks `f(α) + f(β) ≥ f(α + β)` whenever `α + β ∈ Φ`,
/// `f(α) + f(−α) ≥ f(0)` and `f(0) ≥ 0`.
pub fn is_concave(datum: &RootDatum, f: &ConcaveFunction) -> bool {
    if f.values.len() != datum.roots().len() || f.at_zero.is_negative() {
        return false;
    }
    let roots = datum.roots();
    let d = datum.rank();
    let mut sum = vec![0i64; d];
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate().skip(i) {
            for k in 0..d {
                sum[k] = a.coeffs()[k] + b.coeffs()[k];
            }
            if sum.iter().all(|&c| c == 0) {
                if &f.values[i] + &f.values[j] < f.at_zero {
                    return false;
                }
            } else if let Some(s) = datum.root_index(&sum) {
                if &f.values[i] + &f.values[j] < f.values[s] {
                    return false;
                }
            }
        }
    }
    true
}

/// `f_x(α) = −α(x)`, `f_x(0) = 0`.
pub fn point_function(datum: &RootDatum, x: &ApartmentPoint) -> Result<ConcaveFunction> {
    x.expect_rank(datum.rank())?;
    Ok(ConcaveFunction { at_zero: Rational::zero(), values: datum.roots().iter().map(|r| -dot(r.coeffs(), x)).collect() })
}

/// `f_Ω(α) = max_{x ∈ Ω} −α(x)`, `f_Ω(0) = 0`.
pub fn omega_function(datum: &RootDatum, points: &[ApartmentPoint]) -> Result<ConcaveFunction> {
    let (first, rest) = points.split_first().ok_or(Error::EmptySet)?;
    rest.iter().try_fold(point_function(datum, first)?, |acc, x| Ok(pointwise_max(&acc, &point_function(datum, x)?)))
}

fn optimize_value(v: &Rational) -> Rational {
    if v.is_integer() {
        v + Rational::one()
    } else {
        v.ceil()
    }
}

/// `f*`: `f + 1` where `f` is integral, `⌈f⌉` elsewhere; the same rule is
/// applied at zero.
pub fn optimize(f: &ConcaveFunction) -> ConcaveFunction {
    ConcaveFunction { at_zero: optimize_value(&f.at_zero), values: f.values.iter().map(optimize_value).collect() }
}

pub fn shift(f: &ConcaveFunction, r: &Rational) -> ConcaveFunction {
    ConcaveFunction { at_zero: &f.at_zero + r, values: f.values.iter().map(|v| v + r).collect() }
}

pub fn pointwise_max(f: &ConcaveFunction, g: &ConcaveFunction) -> ConcaveFunction {
    ConcaveFunction {
        at_zero: f.at_zero.clone().max(g.at_zero.clone()),
        values: f.values.iter().zip(&g.values).map(|(a, b)| a.clone().max(b.clone())).collect(),
    }
}

pub fn pointwise_min(f: &ConcaveFunction, g: &ConcaveFunction) -> ConcaveFunction {
    ConcaveFunction {
        at_zero: f.at_zero.clone().min(g.at_zero.clone()),
        values: f.values.iter().zip(&g.values).map(|(a, b)| a.clone().min(b.clone())).collect(),
    }
}

/// Exponent of `[P_f : P_g]` for concave `g ≥ f` with `f(0) = g(0) > 0`.
pub fn index_exponent(datum: &RootDatum, f: &ConcaveFunction, g: &ConcaveFunction) -> Result<IndexExponent> {
    if !is_concave(datum, f) || !is_concave(datum, g) {
        return Err(Error::NotConcave);
    }
    if f.at_zero != g.at_zero || !f.at_zero.is_positive() {
        return Err(Error::ZeroLevelMismatch(fmt_rational(&f.at_zero), fmt_rational(&g.at_zero)));
    }
    let mut per_root_contributions = Vec::with_capacity(f.values.len());
    let mut exponent = 0;
    for ((root, fv), gv) in datum.roots().iter().zip(&f.values).zip(&g.values) {
        if gv < fv {
            return Err(Error::NotDominating(root.to_string()));
        }
        let c = ceil_i64(gv) - ceil_i64(fv);
        exponent += c;
        per_root_contributions.push((root.clone(), c));
    }
    Ok(IndexExponent { exponent, per_root_contributions })
}

fn quotient_term(ceil: i64, cap: Option<u32>) -> i64 {
    let v = match cap {
        Some(r) => ceil.min(i64::from(r)),
        None => ceil,
    };
    (v - 1).max(0)
}

/// `Σ_{α∈Φ⁺} max(⌈α(x)⌉ − 1, 0)`, or with a cap `r′`
/// `Σ_{α∈Φ⁺} max(min(⌈α(x)⌉, r′) − 1, 0)`. Requires `x` in the fundamental
/// chamber; fold first otherwise.
pub fn quotient_exponents(datum: &RootDatum, x: &ApartmentPoint, r_prime: Option<u32>) -> Result<i64> {
    x.expect_rank(datum.rank())?;
    if !x.in_chamber() {
        return Err(Error::OutsideChamber(x.to_string()));
    }
    Ok(datum.positive_roots().iter().map(|r| quotient_term(ceil_i64(&dot(r.coeffs(), x)), r_prime)).sum())
}

/// [`quotient_exponents`] on scaled coordinates (no chamber check).
pub fn quotient_exponents_scaled(grid: &Grid<'_>, g: &[i64], r_prime: Option<u32>) -> i64 {
    let n = grid.den();
    (0..grid.num_roots())
        .map(|k| quotient_term(-(-grid.root_value(k, g)).div_euclid(n), r_prime))
        .sum()
}

/// `P_{x,r1} ⊆ P_{y,r2}` at the level of functions: `f_x + r1 ≥ f_y + r2`
/// on `Φ ∪ {0}`.
pub fn filtration_contains(datum: &RootDatum, x: &ApartmentPoint, r1: i64, y: &ApartmentPoint, r2: i64) -> Result<bool> {
    let fx = shift(&point_function(datum, x)?, &Rational::from_integer(r1.into()));
    let fy = shift(&point_function(datum, y)?, &Rational::from_integer(r2.into()));
    Ok(fx.dominates(&fy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartment::alcove_vertex;
    use crate::point::{int, rat};

    fn datum(s: &str) -> RootDatum {
        RootDatum::build(s.parse().unwrap())
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec()).unwrap()
    }

    #[test]
    fn concavity_examples() {
        let a2 = datum("A2");
        assert!(is_concave(&a2, &ConcaveFunction::zero(&a2)));
        let x = ApartmentPoint::new(vec![rat(1, 2), rat(1, 3)]);
        assert!(is_concave(&a2, &point_function(&a2, &x).unwrap()));

        let a1 = datum("A1");
        let mut f = ConcaveFunction::zero(&a1);
        f.set(&a1, &root(&[-1]), int(-1)).unwrap();
        assert!(!is_concave(&a1, &f));

        let mut neg_zero = ConcaveFunction::zero(&a1);
        neg_zero.at_zero = int(-1);
        assert!(!is_concave(&a1, &neg_zero));

        // condition (i): f(α_1) + f(α_2) < f(α_1 + α_2)
        let mut g = ConcaveFunction::zero(&a2);
        g.set(&a2, &root(&[1, 1]), int(1)).unwrap();
        assert!(!is_concave(&a2, &g));
    }

    #[test]
    fn point_function_examples() {
        let a2 = datum("A2");
        let f = point_function(&a2, &ApartmentPoint::origin(2)).unwrap();
        assert_eq!(f, ConcaveFunction::zero(&a2));
        let f = point_function(&a2, &ApartmentPoint::coweight(2, 1)).unwrap();
        assert_eq!(f.value(&a2, &root(&[1, 0])), Some(&int(-1)));
        assert_eq!(f.value(&a2, &root(&[0, 1])), Some(&int(0)));
        assert_eq!(f.value(&a2, &root(&[1, 1])), Some(&int(-1)));
        assert_eq!(f.value(&a2, &root(&[-1, -1])), Some(&int(1)));
        let b2 = datum("B2");
        let f = point_function(&b2, &alcove_vertex(&b2, 2)).unwrap();
        assert_eq!(f.value(&b2, &root(&[0, 1])), Some(&rat(-1, 2)));
    }

    #[test]
    fn omega_function_examples() {
        let a1 = datum("A1");
        let f = omega_function(&a1, &[ApartmentPoint::origin(1), ApartmentPoint::from_ints(&[1])]).unwrap();
        assert_eq!(f.value(&a1, &root(&[1])), Some(&int(0)));
        assert_eq!(f.value(&a1, &root(&[-1])), Some(&int(1)));
        assert_eq!(omega_function(&a1, &[]), Err(Error::EmptySet));

        let a2 = datum("A2");
        let x = ApartmentPoint::coweight(2, 2);
        assert_eq!(omega_function(&a2, &[x.clone()]).unwrap(), point_function(&a2, &x).unwrap());
        let alcove: Vec<_> = (0..=2).map(|i| alcove_vertex(&a2, i)).collect();
        let f = omega_function(&a2, &alcove).unwrap();
        assert_eq!(f.value(&a2, &root(&[1, 0])), Some(&int(0)));
        assert_eq!(f.value(&a2, &root(&[0, 1])), Some(&int(0)));
        assert_eq!(f.value(&a2, &root(&[-1, -1])), Some(&int(1)));
        assert!(is_concave(&a2, &f));
    }

    #[test]
    fn optimization_examples() {
        let a2 = datum("A2");
        let f = optimize(&ConcaveFunction::zero(&a2));
        assert!(f.values.iter().all(|v| *v == int(1)));
        assert_eq!(f.at_zero, int(1));
        assert_eq!(optimize_value(&rat(1, 2)), int(1));

        let b2 = datum("B2");
        let f = optimize(&point_function(&b2, &alcove_vertex(&b2, 2)).unwrap());
        assert_eq!(f.value(&b2, &root(&[0, 1])), Some(&int(0)));
        assert_eq!(f.value(&b2, &root(&[1, 0])), Some(&int(1)));
        assert!(is_concave(&b2, &f));
    }

    #[test]
    fn shift_and_max_examples() {
        let a2 = datum("A2");
        let fo = point_function(&a2, &ApartmentPoint::origin(2)).unwrap();
        let s = shift(&fo, &int(1));
        assert!(s.values.iter().all(|v| *v == int(1)));
        assert_eq!(s.at_zero, int(1));
        assert_eq!(pointwise_max(&s, &s), s);
        let g = pointwise_max(&optimize(&fo), &point_function(&a2, &ApartmentPoint::coweight(2, 1)).unwrap());
        assert!(is_concave(&a2, &g));
    }

    #[test]
    fn index_exponent_examples() {
        let a2 = datum("A2");
        let fo = point_function(&a2, &ApartmentPoint::origin(2)).unwrap();
        let f1 = shift(&fo, &int(1));
        let f2 = shift(&fo, &int(2));
        assert_eq!(index_exponent(&a2, &f1, &f1).unwrap().exponent, 0);
        // zero levels differ
        assert!(matches!(index_exponent(&a2, &f1, &f2), Err(Error::ZeroLevelMismatch(..))));
        let mut g = f2.clone();
        g.at_zero = int(1);
        let e = index_exponent(&a2, &f1, &g).unwrap();
        assert_eq!(e.exponent, 6);
        assert!(e.per_root_contributions.iter().all(|(_, c)| *c == 1));

        let a1 = datum("A1");
        let f = shift(&point_function(&a1, &ApartmentPoint::origin(1)).unwrap(), &int(1));
        let mut g = f.clone();
        g.set(&a1, &root(&[1]), rat(5, 2)).unwrap();
        assert_eq!(index_exponent(&a1, &f, &g).unwrap().exponent, 2);
        assert!(matches!(index_exponent(&a1, &g, &f), Err(Error::NotDominating(_))));

        let mut bad = f.clone();
        bad.set(&a1, &root(&[-1]), int(-5)).unwrap();
        assert_eq!(index_exponent(&a1, &bad, &f), Err(Error::NotConcave));

        let z = ConcaveFunction::zero(&a1);
        assert!(matches!(index_exponent(&a1, &z, &z), Err(Error::ZeroLevelMismatch(..))));
    }

    #[test]
    fn quotient_exponent_examples() {
        let a2 = datum("A2");
        assert_eq!(quotient_exponents(&a2, &ApartmentPoint::origin(2), None).unwrap(), 0);
        let x = ApartmentPoint::from_ints(&[2, 0]);
        assert_eq!(quotient_exponents(&a2, &x, None).unwrap(), 2);
        assert_eq!(quotient_exponents(&a2, &x, Some(1)).unwrap(), 0);
        let outside = ApartmentPoint::from_ints(&[-1, 0]);
        assert!(matches!(quotient_exponents(&a2, &outside, None), Err(Error::OutsideChamber(_))));
        let grid = Grid::new(&a2);
        assert_eq!(quotient_exponents_scaled(&grid, &[2, 0], None), 2);
        assert_eq!(quotient_exponents_scaled(&grid, &[2, 0], Some(1)), 0);
    }

    #[test]
    fn filtration_examples() {
        let a1 = datum("A1");
        let o = ApartmentPoint::origin(1);
        assert!(filtration_contains(&a1, &o, 3, &o, 1).unwrap());
        assert!(filtration_contains(&a1, &o, 2, &ApartmentPoint::from_ints(&[1]), 1).unwrap());
        assert!(!filtration_contains(&a1, &o, 2, &ApartmentPoint::from_ints(&[3]), 1).unwrap());
    }

    #[test]
    fn optimize_preserves_concavity_of_point_functions() {
        let g2 = datum("G2");
        for num in -6..=6 {
            for den in [1, 2, 3, 6] {
                let x = ApartmentPoint::new(vec![rat(num, den), rat(1 - num, 3)]);
                let f = point_function(&g2, &x).unwrap();
                assert!(is_concave(&g2, &f));
                assert!(is_concave(&g2, &optimize(&f)));
            }
        }
    }
}
