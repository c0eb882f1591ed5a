//! Splitting a singly-cyclic covering M_{n,k}(α/β) of a 2-bridge link into
//! a d-fold cyclic covering of the trivial knot followed by an
//! (n/d)-fold meridian-cyclic covering of an intermediate link, d = gcd(n,k).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::{gcd, modp};
use crate::two_bridge::{linking_number, TwoBridge};

/// The intermediate link L(d, α₁/β) with α₁ = α/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkLDescriptor {
    pub d: i64,
    pub alpha1: i64,
    pub beta: i64,
    /// Smallest of `±β^{±1}` modulo α₁, the simplest form of α₁/β.
    pub beta_simplified: i64,
    pub l: i64,
    pub components: i64,
    /// Branching index of every component in the upper covering.
    pub index: i64,
    /// α of the 2-bridge link the descriptor was derived from.
    pub source_alpha: i64,
}

impl LinkLDescriptor {
    pub fn alpha1_over_beta(&self) -> Ratio<i64> {
        Ratio::new(self.alpha1, self.beta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub d: i64,
    pub upper_degree: i64,
    pub lower_degree: i64,
    pub intermediate: LinkLDescriptor,
    pub base_indices: (i64, i64),
    /// The upper covering is the whole covering (d = 1).
    pub degenerate: bool,
    /// The upper covering is meridian-cyclic: its branching indices are all
    /// n/d and the exponent k/d is a unit mod n/d.
    pub upper_meridian_cyclic: bool,
}

fn simplest_residue(beta: i64, m: i64) -> i64 {
    if m <= 1 {
        return 0;
    }
    let b = modp(beta, m);
    let mut c = vec![b, modp(-b, m)];
    if let Some(i) = crate::scalar::mod_inverse(b, m) {
        c.extend([i, modp(-i, m)]);
    }
    c.into_iter().min().unwrap_or(b)
}

pub fn decompose(t: &TwoBridge, n: i64, k: i64) -> Result<DecompositionResult> {
    t.require_link()?;
    let k = modp(k, n);
    let d = gcd(n, k);
    let l = linking_number(t)?;
    let alpha1 = t.alpha() / 2;
    let upper = n / d;
    Ok(DecompositionResult {
        d,
        upper_degree: upper,
        lower_degree: d,
        intermediate: LinkLDescriptor {
            d,
            alpha1,
            beta: t.beta(),
            beta_simplified: simplest_residue(t.beta(), alpha1),
            l,
            components: 1 + gcd(d, l),
            index: upper,
            source_alpha: t.alpha(),
        },
        base_indices: (n, upper),
        degenerate: d == 1,
        upper_meridian_cyclic: gcd(upper, k / d) == 1,
    })
}

/// Images of the two meridians under the monodromy: σ and σ^k where σ is
/// the standard n-cycle `i ↦ i+1` on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyRep {
    pub n: usize,
    pub images: [Vec<usize>; 2],
}

pub fn build_monodromy(n: usize, k: i64) -> MonodromyRep {
    let k = modp(k, n as i64) as usize;
    let power = |e: usize| (0..n).map(|i| (i + e) % n).collect();
    MonodromyRep {
        n,
        images: [power(1 % n.max(1)), power(k)],
    }
}

/// Cycle decomposition of a permutation.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            c.push(v);
            v = perm[v];
        }
        out.push(c);
    }
    out
}

impl MonodromyRep {
    /// Whether the images generate a transitive group.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        if self.n == 0 {
            return true;
        }
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for img in &self.images {
                let w = img[v];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// Preimage components over each component and their branching indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCounts {
    pub components: [usize; 2],
    pub indices: [usize; 2],
}

pub fn component_orbit_counts(rep: &MonodromyRep) -> OrbitCounts {
    let c = rep.images.each_ref().map(|img| cycles(img));
    OrbitCounts {
        components: c.each_ref().map(|x| x.len()),
        indices: c.each_ref().map(|x| x.first().map_or(0, |y| y.len())),
    }
}

/// Riemann–Hurwitz genus of the Heegaard splitting from orbit data:
/// `n + 1 − #preimages(K_1) − #preimages(K_2)`.
pub fn genus_from_orbits(counts: &OrbitCounts, n: usize) -> i64 {
    n as i64 + 1 - counts.components[0] as i64 - counts.components[1] as i64
}
