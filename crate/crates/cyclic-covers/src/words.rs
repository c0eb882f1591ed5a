//! Free-group words, finite presentations and cyclic presentations.
//!
//! Words keep the syllables exactly as they were built: raw integer
//! subscripts and no merging. `reduce` performs free reduction, and
//! `letters` expands to single letters for literal comparison.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::scalar::modp;

/// A word `x_{i_1}^{e_1} x_{i_2}^{e_2} ...` with raw integer subscripts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeWord {
    syllables: Vec<(i64, i64)>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    /// Zero exponents are dropped; nothing else is merged.
    pub fn from_letters(syllables: Vec<(i64, i64)>) -> Self {
        FreeWord {
            syllables: syllables.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn generator(i: i64) -> Self {
        FreeWord {
            syllables: vec![(i, 1)],
        }
    }

    pub fn syllables(&self) -> &[(i64, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> usize {
        self.syllables
            .iter()
            .map(|(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    /// Expansion into unit letters `(index, ±1)`.
    pub fn letters(&self) -> Vec<(i64, i64)> {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
            .collect()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut s = self.syllables.clone();
        s.extend_from_slice(&other.syllables);
        FreeWord { syllables: s }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `w^e`, built by repetition (no merging).
    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut s = Vec::with_capacity(base.syllables.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            s.extend_from_slice(&base.syllables);
        }
        FreeWord { syllables: s }
    }

    /// Free reduction: merge equal neighbours and cancel to zero.
    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(self.syllables.len());
        for &(g, e) in &self.syllables {
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        FreeWord { syllables: out }
    }

    /// Apply `f` to every subscript.
    pub fn map_indices(&self, f: impl Fn(i64) -> i64) -> FreeWord {
        FreeWord {
            syllables: self.syllables.iter().map(|&(g, e)| (f(g), e)).collect(),
        }
    }

    /// Exponent sum of each raw subscript.
    pub fn exponent_sums(&self) -> std::collections::BTreeMap<i64, i64> {
        let mut m = std::collections::BTreeMap::new();
        for &(g, e) in &self.syllables {
            *m.entry(g).or_insert(0) += e;
        }
        m.retain(|_, v| *v != 0);
        m
    }

    /// `Σ (exponent sum of x_i) t^{i-1}` over raw subscripts.
    pub fn polynomial(&self) -> LaurentPolynomial<BigInt> {
        LaurentPolynomial::from_terms(
            self.exponent_sums()
                .into_iter()
                .map(|(g, e)| (g - 1, BigInt::from(e))),
        )
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses `x3^-2 x1 x2^1`; a lone `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(FreeWord::empty());
        }
        let mut syl = Vec::new();
        for tok in s.split_whitespace() {
            let body = tok
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("letter {tok:?} must start with x")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let idx: i64 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad subscript in {tok:?}")))?;
            let exp: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in {tok:?}")));
            }
            syl.push((idx, exp));
        }
        Ok(FreeWord { syllables: syl })
    }
}

/// Finite presentation on generators `x_1 .. x_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct Presentation {
    generators: usize,
    relators: Vec<FreeWord>,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: usize,
    relators: Vec<FreeWord>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = Error;
    fn try_from(r: RawPresentation) -> Result<Self> {
        Presentation::new(r.generators, r.relators)
    }
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<FreeWord>) -> Result<Self> {
        if generators == 0 {
            return Err(Error::BadParams("presentation needs a generator".into()));
        }
        for w in &relators {
            if let Some(&(g, _)) = w
                .syllables
                .iter()
                .find(|&&(g, _)| g < 1 || g > generators as i64)
            {
                return Err(Error::BadParams(format!(
                    "subscript {g} outside 1..={generators}"
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Text form: one relator per line in word syntax.
    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\n", self.generators);
        for r in &self.relators {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

/// `G_n(w)`: relators `θ_n^{k-1}(w)`, `k = 1..n`, where `θ_n` adds 1 to every
/// subscript modulo n (representatives `1..n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicPresentation {
    pub n: usize,
    pub w: FreeWord,
}

/// Subscript `i` read modulo `n` with representative in `1..=n`.
pub fn wrap_index(i: i64, n: usize) -> i64 {
    modp(i - 1, n as i64) + 1
}

impl CyclicPresentation {
    pub fn new(n: usize, w: FreeWord) -> Self {
        CyclicPresentation { n, w }
    }

    /// `θ_n^shift(w)` with wrapped subscripts.
    pub fn shifted(&self, shift: i64) -> FreeWord {
        let n = self.n;
        self.w.map_indices(|g| wrap_index(g + shift, n))
    }

    pub fn relators(&self) -> Vec<FreeWord> {
        (0..self.n as i64).map(|k| self.shifted(k)).collect()
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation::new(self.n, self.relators()).expect("wrapped subscripts are in range")
    }
}

/// `f_w(t)` of the defining word, exponents relative to subscript 1 and
/// taken from the raw subscripts, so the result does not depend on n.
pub fn word_polynomial(cp: &CyclicPresentation) -> LaurentPolynomial<BigInt> {
    cp.w.polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = w("x3^-2 x1 x2^1");
        assert_eq!(x.syllables(), &[(3, -2), (1, 1), (2, 1)]);
        assert_eq!(x.to_string(), "x3^-2 x1 x2");
        assert_eq!(w("1"), FreeWord::empty());
        assert!("y1".parse::<FreeWord>().is_err());
        assert!("x1^0".parse::<FreeWord>().is_err());
        assert!("x^2".parse::<FreeWord>().is_err());
        assert_eq!(w("x0^-1").syllables(), &[(0, -1)]);
    }

    #[test]
    fn reduction() {
        assert_eq!(w("x1 x2 x2^-1 x1").reduce(), w("x1^2"));
        assert_eq!(w("x1 x1^-1").reduce(), FreeWord::empty());
        let a = w("x3^-1 x2 x2 x1^-1 x2");
        assert_eq!(a.letters(), w("x3^-1 x2^2 x1^-1 x2").letters());
        assert_ne!(a, w("x3^-1 x2^2 x1^-1 x2"));
    }

    #[test]
    fn cyclic_expansion() {
        let cp = CyclicPresentation::new(3, w("x1 x0^-1 x1 x2^-1 x1"));
        let rels = cp.relators();
        assert_eq!(rels.len(), 3);
        assert_eq!(rels[0], w("x1 x3^-1 x1 x2^-1 x1"));
        assert_eq!(rels[1], w("x2 x1^-1 x2 x3^-1 x2"));
        assert_eq!(
            rels.iter().map(|r| r.length()).sum::<usize>(),
            3 * cp.w.length()
        );
    }

    #[test]
    fn polynomials() {
        let p = |s: &str| word_polynomial(&CyclicPresentation::new(7, w(s)));
        let fig8 = p("x3^-1 x2^2 x1^-1 x2");
        assert!(fig8.equal_up_to_unit(&LaurentPolynomial::from_terms([
            (-1, BigInt::from(-1)),
            (0, BigInt::from(3)),
            (1, BigInt::from(-1))
        ])));
        assert_eq!(
            p("x1 x2^-1 x3"),
            LaurentPolynomial::from_coeffs(&[1, -1, 1])
        );
        assert_eq!(p("x1"), LaurentPolynomial::from_coeffs(&[1]));
    }

    #[test]
    fn presentation_checks() {
        assert!(Presentation::new(2, vec![w("x3")]).is_err());
        assert!(Presentation::new(2, vec![w("x0")]).is_err());
        let p = Presentation::new(2, vec![w("x1 x2^-1")]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Presentation>(&s).unwrap(), p);
    }

    fn word() -> impl Strategy<Value = FreeWord> {
        proptest::collection::vec((0i64..4, -2i64..3), 0..12).prop_map(FreeWord::from_letters)
    }

    proptest! {
        #[test]
        fn reduce_confluent(x in word(), y in word()) {
            let r = x.reduce();
            prop_assert_eq!(r.reduce(), r.clone());
            prop_assert!(x.inverse().concat(&x).reduce().is_empty());
            // reducing parts first gives the same normal form
            prop_assert_eq!(r.concat(&y.reduce()).reduce(), x.concat(&y).reduce());
            let back: FreeWord = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
