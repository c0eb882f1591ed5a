//! Fundamental group presentations of cyclic branched coverings:
//! the Minkus word, the coloured-graph presentation of singly-cyclic
//! coverings of links, and the Takahashi-style recurrence for knots.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::scalar::{gcd, mod_inverse, modp, sign_pow};
use crate::two_bridge::{EvenConwayForm, TwoBridge};
use crate::words::{wrap_index, CyclicPresentation, FreeWord, Presentation};

/// Offsets `s_j = Σ_{i=1}^{j} (-1)^{floor(i β^{-1} / α)}` of the Minkus word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkusShiftData {
    pub beta_inv: i64,
    /// `s_1 .. s_{α-1}`
    pub s: Vec<i64>,
}

pub fn minkus_shifts(t: &TwoBridge) -> Result<MinkusShiftData> {
    let (a, b) = (t.alpha(), t.beta());
    let beta_inv = mod_inverse(b, 2 * a).ok_or(Error::BetaNotInvertible {
        beta: b,
        modulus: 2 * a,
    })?;
    let mut acc = 0;
    let s = (1..a)
        .map(|i| {
            acc += sign_pow(Integer::div_floor(&(i * beta_inv), &a));
            acc
        })
        .collect();
    Ok(MinkusShiftData { beta_inv, s })
}

/// `R = x_1 x_{1+s_1}^{-1} x_{1+s_2} ... x_{1+s_{α-1}}^{±1}` with raw subscripts.
pub fn minkus_word(t: &TwoBridge) -> Result<FreeWord> {
    let data = minkus_shifts(t)?;
    let mut syl = vec![(1, 1)];
    for (j, s) in data.s.iter().enumerate() {
        syl.push((1 + s, sign_pow(j as i64 + 1)));
    }
    Ok(FreeWord::from_letters(syl))
}

/// Minkus presentation. Knots: the cyclic presentation `G_n(R)`. Links:
/// generators `x_1..x_n` and `y = x_{n+1}`, relators `θ^i(R) y^{-1}` and
/// `x_n`.
pub fn minkus_presentation(t: &TwoBridge, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::BadParams("n must be positive".into()));
    }
    let r = minkus_word(t)?;
    let cp = CyclicPresentation::new(n, r);
    if t.is_knot() {
        return Ok(cp.to_presentation());
    }
    let y = FreeWord::generator(n as i64 + 1);
    let mut rels: Vec<FreeWord> = cp
        .relators()
        .into_iter()
        .map(|w| w.concat(&y.inverse()))
        .collect();
    rels.push(FreeWord::generator(n as i64));
    Presentation::new(n + 1, rels)
}

/// Minkus cyclic presentation of a knot covering.
pub fn minkus_cyclic(t: &TwoBridge, n: usize) -> Result<CyclicPresentation> {
    t.require_knot()?;
    Ok(CyclicPresentation::new(n, minkus_word(t)?))
}

/// `μ(x) = +1` iff `x mod 2α ∈ [1, α]`.
pub fn mu(x: i64, alpha: i64) -> i64 {
    let x = modp(x, 2 * alpha);
    if (1..=alpha).contains(&x) {
        1
    } else {
        -1
    }
}

/// Data of the coloured-graph presentation of M_{n,k}(α/β).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mu3Data {
    pub nprime: i64,
    /// `e_0 .. e_{α-1}`
    pub e: Vec<i64>,
    /// `s_0 .. s_{α-1}`
    pub s: Vec<i64>,
}

/// Exponents and offsets of `Q'_i = Π_j x_{i+s_j}^{e_j}`:
/// `e_j = -μ((2j+1)β)` and
/// `s_j = -k Σ_{h=1}^{j} μ(α-β-2hβ) - Σ_{h=1}^{j} μ(α-2hβ)`, plus `k` when `e_j = -1`.
pub fn mu3_data(t: &TwoBridge, n: i64, k: i64) -> Result<Mu3Data> {
    t.require_link()?;
    let k = modp(k, n);
    if k == 0 {
        return Err(Error::BadParams(format!("k ≡ 0 mod {n}")));
    }
    let (a, b) = (t.alpha(), t.beta());
    let mut e = Vec::with_capacity(a as usize);
    let mut s = Vec::with_capacity(a as usize);
    let (mut sum_k, mut sum_1) = (0, 0);
    for j in 0..a {
        if j > 0 {
            sum_k += mu(a - b - 2 * j * b, a);
            sum_1 += mu(a - 2 * j * b, a);
        }
        let ej = -mu((2 * j + 1) * b, a);
        let mut sj = -k * sum_k - sum_1;
        if ej == -1 {
            sj += k;
        }
        e.push(ej);
        s.push(sj);
    }
    Ok(Mu3Data {
        nprime: n / gcd(n, k),
        e,
        s,
    })
}

/// Presentation of the singly-cyclic covering M_{n,k}(α/β) of a 2-bridge
/// link: relators `Q_i = Π_{j<n'} x_{i-jk}` for `1 ≤ i ≤ gcd(n,k)` and
/// `Q'_i` for `1 ≤ i ≤ n`.
pub fn mu3_presentation(t: &TwoBridge, n: usize, k: i64) -> Result<Presentation> {
    let ni = n as i64;
    let data = mu3_data(t, ni, k)?;
    let k = modp(k, ni);
    let mut rels = Vec::new();
    for i in 1..=gcd(ni, k) {
        rels.push(FreeWord::from_letters(
            (0..data.nprime)
                .map(|j| (wrap_index(i - j * k, n), 1))
                .collect(),
        ));
    }
    for i in 1..=ni {
        rels.push(FreeWord::from_letters(
            data.s
                .iter()
                .zip(&data.e)
                .map(|(s, e)| (wrap_index(i + s, n), *e))
                .collect(),
        ));
    }
    Presentation::new(n, rels)
}

/// Words `d_{k,j}`, `b_{k,j}` of the recurrence, memoised by raw subscript.
#[derive(Debug, Clone, Default)]
pub struct TakahashiState {
    q: Vec<i64>,
    s: Vec<i64>,
    pub d_words: HashMap<(i64, usize), FreeWord>,
    pub b_words: HashMap<(i64, usize), FreeWord>,
}

impl TakahashiState {
    pub fn new(form: &EvenConwayForm) -> Result<Self> {
        if !form.is_knot_form() {
            return Err(Error::BadParams(
                "the recurrence needs a knot form with s_m".into(),
            ));
        }
        Ok(TakahashiState {
            q: form.q.clone(),
            s: form.s.clone(),
            ..Default::default()
        })
    }

    /// `d_{k,1} = x_k`, `d_{k,j} = b_{k,j-1}^{-s_{j-1}} d_{k,j-1} b_{k-1,j-1}^{s_{j-1}}`.
    pub fn d(&mut self, k: i64, j: usize) -> FreeWord {
        if let Some(w) = self.d_words.get(&(k, j)) {
            return w.clone();
        }
        let w = if j == 1 {
            FreeWord::generator(k)
        } else {
            let s = self.s[j - 2];
            let left = self.b(k, j - 1).pow(-s);
            let mid = self.d(k, j - 1);
            let right = self.b(k - 1, j - 1).pow(s);
            left.concat(&mid).concat(&right)
        };
        self.d_words.insert((k, j), w.clone());
        w
    }

    /// `b_{k,1} = d_{k,1}^{q_1} d_{k+1,1}^{-q_1}`,
    /// `b_{k,j} = d_{k,j}^{q_j} b_{k,j-1} d_{k+1,j}^{-q_j}`.
    pub fn b(&mut self, k: i64, j: usize) -> FreeWord {
        if let Some(w) = self.b_words.get(&(k, j)) {
            return w.clone();
        }
        let q = self.q[j - 1];
        let w = if j == 1 {
            self.d(k, 1).pow(q).concat(&self.d(k + 1, 1).pow(-q))
        } else {
            let left = self.d(k, j).pow(q);
            let mid = self.b(k, j - 1);
            let right = self.d(k + 1, j).pow(-q);
            left.concat(&mid).concat(&right)
        };
        self.b_words.insert((k, j), w.clone());
        w
    }

    /// `b_{i+1,m}^{-s_m} d_{i+1,m} b_{i,m}^{s_m}`.
    pub fn relator(&mut self, i: i64) -> FreeWord {
        let m = self.q.len();
        let s = self.s[m - 1];
        let left = self.b(i + 1, m).pow(-s);
        let mid = self.d(i + 1, m);
        let right = self.b(i, m).pow(s);
        left.concat(&mid).concat(&right)
    }
}

/// Cyclic presentation from the recurrence, defining word taken at `i = 1`
/// with raw (unreduced) subscripts.
pub fn takahashi_word(form: &EvenConwayForm, n: usize) -> Result<CyclicPresentation> {
    let mut st = TakahashiState::new(form)?;
    Ok(CyclicPresentation::new(n, st.relator(1)))
}

/// Alexander polynomial of a 2-bridge knot as `f_w` of its Minkus word,
/// normalised to lowest exponent 0 and positive leading coefficient.
pub fn alexander_polynomial(t: &TwoBridge) -> Result<LaurentPolynomial<BigInt>> {
    t.require_knot()?;
    Ok(minkus_word(&t.with_odd_beta())?.polynomial().normalized())
}
