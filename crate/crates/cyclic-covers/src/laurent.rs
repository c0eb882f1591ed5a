//! Laurent polynomials over an exact integer type.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::{lift, Scalar};

/// Sparse Laurent polynomial in `t`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial<T = BigInt> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> LaurentPolynomial<T> {
    pub fn zero() -> Self {
        LaurentPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients listed from `t^0` upward.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        Self::from_terms(cs.iter().enumerate().map(|(i, &c)| (i as i64, lift(c))))
    }

    pub fn add_term(&mut self, e: i64, c: T) {
        let v = self.coeffs.remove(&e).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.coeffs.insert(e, v);
        }
    }

    pub fn coefficient(&self, e: i64) -> T {
        self.coeffs.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                p.add_term(a + b, x.clone() * y.clone());
            }
        }
        p
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, -c.clone())))
    }

    /// Representative modulo units `±t^k`: lowest exponent 0 and positive
    /// leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let shifted = Self::from_terms(self.coeffs.iter().map(|(e, c)| (e - lo, c.clone())));
        let lead_negative = shifted
            .coeffs
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        if lead_negative {
            shifted.neg()
        } else {
            shifted
        }
    }

    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Evaluate at an integer; requires no negative exponents.
    pub fn eval(&self, x: &T) -> T {
        assert!(
            self.min_exponent().unwrap_or(0) >= 0,
            "negative exponent in eval"
        );
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, (e, c)| acc + c.clone() * pow(x, *e as u32))
    }

    /// Dense coefficient list of an ordinary polynomial, `t^0` first.
    fn dense(&self) -> Vec<T> {
        let hi = self.max_exponent().unwrap_or(0);
        (0..=hi).map(|e| self.coefficient(e)).collect()
    }
}

fn pow<T: Scalar>(x: &T, e: u32) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * x.clone();
    }
    r
}

/// Resultant of two ordinary polynomials (no negative exponents) via the
/// Sylvester determinant.
pub fn resultant<T: Scalar>(f: &LaurentPolynomial<T>, g: &LaurentPolynomial<T>) -> T {
    assert!(f.min_exponent().unwrap_or(0) >= 0 && g.min_exponent().unwrap_or(0) >= 0);
    if f.is_zero() || g.is_zero() {
        return T::zero();
    }
    let a = f.dense();
    let b = g.dense();
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return T::one();
    }
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[(n + i, i + j)] = c.clone();
        }
    }
    s.determinant()
}

impl<T: Scalar> fmt::Display for LaurentPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if *e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponent: i64,
    #[serde(with = "crate::bigjson")]
    coefficient: BigInt,
}

impl Serialize for LaurentPolynomial<BigInt> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms()
            .map(|(e, c)| Term {
                exponent: e,
                coefficient: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial<BigInt> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<Term> = Vec::deserialize(d)?;
        Ok(Self::from_terms(
            terms.into_iter().map(|t| (t.exponent, t.coefficient)),
        ))
    }
}
