//! Parameters of 2-bridge knots and links b(alpha, beta).

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{gcd, mod_inverse, modp, sign_pow, Scalar};

/// b(alpha, beta) with beta stored as its representative in `[1, 2 alpha - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTwoBridge")]
pub struct TwoBridge {
    alpha: i64,
    beta: i64,
}

#[derive(Deserialize)]
struct RawTwoBridge {
    alpha: i64,
    beta: i64,
}

impl TryFrom<RawTwoBridge> for TwoBridge {
    type Error = Error;
    fn try_from(r: RawTwoBridge) -> Result<Self> {
        normalize(r.alpha, r.beta)
    }
}

/// Reduce beta mod 2 alpha and check coprimality.
pub fn normalize(alpha: i64, beta: i64) -> Result<TwoBridge> {
    if alpha <= 1 {
        return Err(Error::BadAlpha(alpha));
    }
    let b = modp(beta, 2 * alpha);
    if gcd(alpha, b) != 1 {
        return Err(Error::NonCoprime(alpha, beta));
    }
    Ok(TwoBridge { alpha, beta: b })
}

impl TwoBridge {
    pub fn new(alpha: i64, beta: i64) -> Result<Self> {
        normalize(alpha, beta)
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn is_knot(&self) -> bool {
        self.alpha % 2 == 1
    }

    pub fn is_link(&self) -> bool {
        !self.is_knot()
    }

    pub fn require_link(&self) -> Result<()> {
        if self.is_link() {
            Ok(())
        } else {
            Err(Error::NotALink(self.alpha, self.beta))
        }
    }

    pub fn require_knot(&self) -> Result<()> {
        if self.is_knot() {
            Ok(())
        } else {
            Err(Error::NotAKnot(self.alpha, self.beta))
        }
    }

    /// Representative of beta in `(0, alpha)`.
    pub fn beta_mod_alpha(&self) -> i64 {
        modp(self.beta, self.alpha)
    }

    /// An odd representative of the same knot or link. For links beta is
    /// already odd; for knots b(alpha, beta) = b(alpha, beta + alpha).
    pub fn with_odd_beta(&self) -> TwoBridge {
        if self.beta % 2 == 1 {
            *self
        } else {
            TwoBridge {
                alpha: self.alpha,
                beta: modp(self.beta + self.alpha, 2 * self.alpha),
            }
        }
    }

    /// `beta ≡ ±1 mod alpha`, i.e. b(alpha, beta) is a torus knot or link.
    pub fn is_toroidal(&self) -> bool {
        let b = self.beta_mod_alpha();
        b == 1 || b == self.alpha - 1
    }

    /// The residues `±beta^{±1}` modulo `m` (m = alpha or 2 alpha).
    pub fn signed_inverse_class(&self, m: i64) -> Vec<i64> {
        let b = modp(self.beta, m);
        let mut out = vec![b, modp(-b, m)];
        if let Some(i) = mod_inverse(b, m) {
            out.push(i);
            out.push(modp(-i, m));
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for TwoBridge {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "b({},{})", self.alpha, self.beta)
    }
}

/// Schubert classification. Unoriented (or knot) equivalence compares
/// beta^{±1} mod alpha, oriented link equivalence mod 2 alpha.
pub fn equivalent(a: &TwoBridge, b: &TwoBridge, oriented: bool) -> bool {
    if a.alpha != b.alpha {
        return false;
    }
    let m = if oriented && a.is_link() {
        2 * a.alpha
    } else {
        a.alpha
    };
    let (x, y) = (modp(a.beta, m), modp(b.beta, m));
    x == y || mod_inverse(x, m) == Some(y)
}

pub fn mirror(t: &TwoBridge) -> TwoBridge {
    TwoBridge {
        alpha: t.alpha,
        beta: modp(-t.beta, 2 * t.alpha),
    }
}

/// Reverse the orientation of one component: b(alpha, beta - alpha).
pub fn reorient_component(t: &TwoBridge) -> Result<TwoBridge> {
    t.require_link()?;
    Ok(TwoBridge {
        alpha: t.alpha,
        beta: modp(t.beta - t.alpha, 2 * t.alpha),
    })
}

/// A finite continued fraction `c_1 + 1/(c_2 + 1/(... + 1/c_m))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction<T = i64> {
    entries: Vec<T>,
}

impl<T: Scalar> ContinuedFraction<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadParams("empty continued fraction".into()));
        }
        let cf = ContinuedFraction { entries };
        cf.evaluate()?;
        Ok(cf)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Exact value of the tower; fails if a partial denominator vanishes.
    pub fn evaluate(&self) -> Result<Ratio<T>> {
        tower(&self.entries)
    }
}

fn tower<T: Scalar>(entries: &[T]) -> Result<Ratio<T>> {
    let (last, rest) = entries.split_last().ok_or(Error::ZeroDenominator)?;
    let (mut p, mut q) = (last.clone(), T::one());
    for c in rest.iter().rev() {
        if p.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let np = c.clone() * p.clone() + q;
        q = p;
        p = np;
    }
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::new(p, q))
}

/// Regular continued fraction of alpha/beta' with beta' in (0, alpha).
pub fn cf_expand(t: &TwoBridge) -> ContinuedFraction {
    let (mut x, mut y) = (t.alpha, t.beta_mod_alpha());
    let mut entries = Vec::new();
    while y != 0 {
        let (q, r) = x.div_mod_floor(&y);
        entries.push(q);
        x = y;
        y = r;
    }
    ContinuedFraction { entries }
}

/// Even continued fraction `[-2q_1, 2s_1, ..., -2q_m, 2s_m]` (knots) or
/// `[..., -2q_m]` (links, `s` one shorter than `q`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenConwayForm {
    pub m: usize,
    pub q: Vec<i64>,
    pub s: Vec<i64>,
    /// The representative beta' actually expanded (alpha/beta').
    pub beta_used: i64,
}

impl EvenConwayForm {
    pub fn from_qs(q: Vec<i64>, s: Vec<i64>) -> Result<Self> {
        if q.is_empty() || !(s.len() == q.len() || s.len() + 1 == q.len()) {
            return Err(Error::BadParams("q and s lengths do not match".into()));
        }
        if q.iter().chain(&s).any(|&x| x == 0) {
            return Err(Error::BadParams("zero entry in even form".into()));
        }
        let mut f = EvenConwayForm {
            m: q.len(),
            q,
            s,
            beta_used: 0,
        };
        let v = f.evaluate()?;
        f.beta_used = *v.denom();
        Ok(f)
    }

    pub fn is_knot_form(&self) -> bool {
        self.s.len() == self.q.len()
    }

    pub fn entries(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.q.len() + self.s.len());
        for j in 0..self.m {
            out.push(-2 * self.q[j]);
            if let Some(s) = self.s.get(j) {
                out.push(2 * s);
            }
        }
        out
    }

    pub fn evaluate(&self) -> Result<Ratio<i64>> {
        tower(&self.entries())
    }
}

/// All-even continued fraction of `x/y` by nearest-even division. Requires
/// `x` and `y` of opposite parity, which guarantees termination.
fn even_expansion(mut x: i64, mut y: i64) -> Vec<i64> {
    debug_assert!((x + y) % 2 != 0);
    let mut out = Vec::new();
    while y != 0 {
        // c = 2 * round(x / 2y); no ties since x/y is never an odd integer
        let (xs, ys) = if y < 0 { (-x, -y) } else { (x, y) };
        let c = 2 * Integer::div_floor(&(xs + ys), &(2 * ys));
        out.push(c);
        let r = x - c * y;
        x = y;
        y = r;
    }
    out
}

/// Even continued fraction expansion, choosing an even representative
/// beta' ≡ beta^{±1} (knots) and preferring positive ones.
pub fn even_cf_expand(t: &TwoBridge) -> Result<EvenConwayForm> {
    let a = t.alpha;
    let beta_used = if t.is_knot() {
        let b = t.beta_mod_alpha();
        let bi = mod_inverse(b, a).expect("beta is a unit mod alpha");
        [b, bi, b - a, bi - a]
            .into_iter()
            .find(|x| x % 2 == 0)
            .ok_or(Error::NoEvenRepresentative(t.alpha, t.beta))?
    } else {
        t.beta_mod_alpha()
    };
    let entries = even_expansion(a, beta_used);
    let q: Vec<i64> = entries.iter().step_by(2).map(|e| -e / 2).collect();
    let s: Vec<i64> = entries.iter().skip(1).step_by(2).map(|e| e / 2).collect();
    let form = EvenConwayForm {
        m: q.len(),
        q,
        s,
        beta_used,
    };
    debug_assert_eq!(form.evaluate().ok(), Some(Ratio::new(a, beta_used)));
    Ok(form)
}

/// Linking number `sum_{h=1}^{alpha/2} (-1)^{floor((2h-1) beta / alpha)}`.
pub fn linking_number(t: &TwoBridge) -> Result<i64> {
    t.require_link()?;
    Ok((1..=t.alpha / 2)
        .map(|h| sign_pow(Integer::div_floor(&((2 * h - 1) * t.beta), &t.alpha)))
        .sum())
}

/// Genus-one criterion: beta/2 divides (alpha ∓ 1)/4 for an even
/// representative beta equivalent to the given one.
pub fn is_genus_one(t: &TwoBridge) -> Result<bool> {
    t.require_knot()?;
    let a = t.alpha;
    let target = if a % 4 == 1 { (a - 1) / 4 } else { (a + 1) / 4 };
    Ok(t.signed_inverse_class(a).into_iter().any(|x| {
        let even = if x % 2 == 0 { x } else { x - a };
        target % (even.abs() / 2) == 0
    }))
}
