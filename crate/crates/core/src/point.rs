//! Exact rational points of the apartment.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-3/2"` or `" 7 / 4 "`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    match s.split_once('/') {
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| err()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Canonical fraction string: `"3"`, `"-1/2"`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn ceil_i64(q: &Rational) -> i64 {
    q.ceil().to_integer().to_i64().expect("ceiling fits in i64")
}

pub(crate) fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

/// A point `x` of the apartment, stored through its simple-root values
/// `t_i = α_i(x)`. The origin is `t = 0` and the fundamental coweight `ω_i`
/// is the unit vector `e_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ApartmentPoint {
    coords: Vec<Rational>,
}

impl ApartmentPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn origin(rank: usize) -> Self {
        Self { coords: vec![Rational::zero(); rank] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&c| int(c)).collect() }
    }

    /// Point with coordinates `numerators / denominator`.
    pub fn from_scaled(numerators: &[i64], denominator: i64) -> Self {
        Self { coords: numerators.iter().map(|&n| rat(n, denominator)).collect() }
    }

    /// Fundamental coweight `ω_i` (1-based).
    pub fn coweight(rank: usize, i: usize) -> Self {
        let mut p = Self::origin(rank);
        p.coords[i - 1] = Rational::one();
        p
    }

    /// Parses a comma separated list of fractions, e.g. `"1/2,0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .filter(|c| !c.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn in_chamber(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub(crate) fn expect_rank(&self, rank: usize) -> Result<()> {
        if self.coords.len() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: rank, got: self.coords.len() })
        }
    }

    /// Coordinates scaled by `denominator`, if they all become integers.
    pub fn to_scaled(&self, denominator: i64) -> Option<Vec<i64>> {
        let d = BigInt::from(denominator);
        self.coords
            .iter()
            .map(|c| {
                let s = c * &d;
                if s.is_integer() {
                    s.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for ApartmentPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ApartmentPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coords = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_lists() {
        let p = ApartmentPoint::parse("1/2, -3 ,4/6").unwrap();
        assert_eq!(p.coords(), &[rat(1, 2), int(-3), rat(2, 3)]);
        assert_eq!(p.to_strings(), vec!["1/2", "-3", "2/3"]);
        assert!(ApartmentPoint::parse("1/0").is_err());
        assert!(ApartmentPoint::parse("").is_err());
        assert!(ApartmentPoint::parse("a").is_err());
    }

    #[test]
    fn scaled_coordinates() {
        let p = ApartmentPoint::parse("1/2,1/3").unwrap();
        assert_eq!(p.to_scaled(6), Some(vec![3, 2]));
        assert_eq!(p.to_scaled(4), None);
    }

    #[test]
    fn json_uses_fraction_strings() {
        let p = ApartmentPoint::from_scaled(&[3, 0], 2);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"["3/2","0"]"#);
        let back: ApartmentPoint = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
