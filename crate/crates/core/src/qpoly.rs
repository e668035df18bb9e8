//! Sparse polynomials in the formal variable `q` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    /// exponent → nonzero coefficient
    terms: BTreeMap<u32, BigInt>,
}

/// Degree of a polynomial; the zero polynomial has degree `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c.into());
        p
    }

    /// `c · q^e`; negative exponents are rejected.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Result<Self> {
        let e = u32::try_from(e).map_err(|_| Error::NegativeExponent(e))?;
        let mut p = Self::zero();
        p.add_term(e, c.into());
        Ok(p)
    }

    /// `q^e`
    pub fn q_pow(e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, BigInt::one());
        p
    }

    pub fn add_term(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.terms.keys().next_back().map_or(Degree::NegInfinity, |&e| Degree::Finite(e))
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.terms.values().next_back().cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of the coefficients (the value at `q = 1`).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn evaluate(&self, q0: &BigRational) -> BigRational {
        // Horner from the top exponent down.
        let mut acc = BigRational::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= q0.pow((p - e) as i32);
            }
            acc += BigRational::from_integer(c.clone());
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= q0.pow(p as i32);
        }
        acc
    }

    pub fn evaluate_int(&self, q0: i64) -> BigInt {
        self.evaluate(&BigRational::from_integer(q0.into())).to_integer()
    }

    /// `[[exponent, "coefficient"], …]` in increasing exponent order.
    pub fn to_term_list(&self) -> Vec<(u32, String)> {
        self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }
}

impl fmt::Display for QPolynomial {
    /// Highest degree first: `2q^2 + q + 3`, `q^3 - q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

/// `{"terms": [[exponent, "coefficient"], …], "text": "2q^2 + q + 3"}`.
impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QPolynomial", 2)?;
        st.serialize_field("terms", &self.to_term_list())?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}
