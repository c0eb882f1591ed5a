//! 4-coloured graphs: Lins–Mandel families, gem and crystallization tests,
//! isomorphism and Heegaard surface genus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covering::CoveringSpec;
use crate::error::{Error, Result};
use crate::scalar::{gcd, mod_inverse, modp, sign_pow};
use crate::two_bridge::{normalize, TwoBridge};
use crate::words::{FreeWord, Presentation};

/// A 4-regular graph given by four fixed-point-free involutions on
/// `0..vertex_count`; edge `{v, ι_c(v)}` carries colour `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct ColouredGraph {
    involutions: [Vec<usize>; 4],
}

#[derive(Deserialize)]
struct RawGraph {
    involutions: [Vec<usize>; 4],
}

impl TryFrom<RawGraph> for ColouredGraph {
    type Error = Error;
    fn try_from(r: RawGraph) -> Result<Self> {
        ColouredGraph::new(r.involutions)
    }
}

/// The three cyclic orders of the colours, up to rotation and reflection.
pub const CYCLIC_ORDERS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]];

impl ColouredGraph {
    pub fn new(involutions: [Vec<usize>; 4]) -> Result<Self> {
        let n = involutions[0].len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} is not positive and even"
            )));
        }
        for (c, inv) in involutions.iter().enumerate() {
            if inv.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "involution {c} has the wrong length"
                )));
            }
            for (v, &w) in inv.iter().enumerate() {
                if w >= n || inv[w] != v {
                    return Err(Error::InvalidGraph(format!(
                        "map {c} is not an involution at {v}"
                    )));
                }
                if w == v {
                    return Err(Error::DegenerateInvolution {
                        colour: c,
                        vertex: v,
                    });
                }
            }
        }
        let g = ColouredGraph { involutions };
        if g.components(&[0, 1, 2, 3]).1 != 1 {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Two vertices joined by four parallel edges.
    pub fn dipole() -> Self {
        ColouredGraph {
            involutions: std::array::from_fn(|_| vec![1, 0]),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.involutions[0].len()
    }

    pub fn involution(&self, c: usize) -> &[usize] {
        &self.involutions[c]
    }

    /// Component label per vertex and number of components of the subgraph
    /// using only `colours`.
    pub fn components(&self, colours: &[usize]) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &c in colours {
                    let w = self.involutions[c][v];
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Vertex sequences of the {a, b}-coloured cycles, each starting with
    /// its smallest vertex and leaving along colour `a`.
    pub fn bicoloured_cycles(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        assert_ne!(a, b, "bicoloured cycles need two distinct colours");
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = s;
            loop {
                let w = self.involutions[a][v];
                cyc.extend([v, w]);
                seen[v] = true;
                seen[w] = true;
                v = self.involutions[b][w];
                if v == s {
                    break;
                }
            }
            out.push(cyc);
        }
        out
    }

    /// 2-colouring of the vertices, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        side[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for inv in &self.involutions {
                let w = inv[v];
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
        Some(side)
    }

    /// One line per colour, the involution in one-line notation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for inv in &self.involutions {
            let line: Vec<String> = inv.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 lines, got {}",
                lines.len()
            )));
        }
        let mut invs: [Vec<usize>; 4] = Default::default();
        for (c, line) in lines.iter().enumerate() {
            invs[c] = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?;
        }
        ColouredGraph::new(invs)
    }
}

impl fmt::Display for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lins–Mandel parameters: vertices Z_n × Z_{2p}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LMParams {
    pub n: i64,
    pub p: i64,
    pub q: i64,
    pub c: i64,
}

/// Generalized Lins–Mandel parameters with the extra shift `c'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GLMParams {
    pub n: i64,
    pub p: i64,
    pub q: i64,
    pub c: i64,
    pub cprime: i64,
}

impl LMParams {
    pub fn new(n: i64, p: i64, q: i64, c: i64) -> Result<Self> {
        GLMParams::new(n, p, q, c, 1).map(|g| LMParams {
            n: g.n,
            p: g.p,
            q: g.q,
            c: g.c,
        })
    }

    pub fn generalized(&self) -> GLMParams {
        GLMParams {
            n: self.n,
            p: self.p,
            q: self.q,
            c: self.c,
            cprime: modp(1, self.n),
        }
    }
}

impl GLMParams {
    pub fn new(n: i64, p: i64, q: i64, c: i64, cprime: i64) -> Result<Self> {
        if n < 1 || p < 1 {
            return Err(Error::BadParams(format!(
                "n = {n} and p = {p} must be positive"
            )));
        }
        let q = modp(q, 2 * p);
        if gcd(p, q) != 1 {
            return Err(Error::NonCoprime(p, q));
        }
        let (c, cprime) = (modp(c, n), modp(cprime, n));
        if gcd(gcd(n, c), cprime) != 1 {
            return Err(Error::BadParams(format!(
                "gcd(n, c, c') != 1 for n={n}, c={c}, c'={cprime}"
            )));
        }
        Ok(GLMParams { n, p, q, c, cprime })
    }

    pub fn vertex(&self, i: i64, j: i64) -> usize {
        (modp(i, self.n) * 2 * self.p + modp(j, 2 * self.p)) as usize
    }
}

/// `η(j) = +1` iff `1 ≤ j ≤ p` for the representative `j ∈ [0, 2p)`.
pub fn eta(j: i64, p: i64) -> i64 {
    let j = modp(j, 2 * p);
    if (1..=p).contains(&j) {
        1
    } else {
        -1
    }
}

pub fn build_generalized(params: &GLMParams) -> Result<ColouredGraph> {
    let GLMParams { n, p, q, c, cprime } = *params;
    let size = (2 * p * n) as usize;
    let mut invs: [Vec<usize>; 4] = std::array::from_fn(|_| vec![0; size]);
    for i in 0..n {
        for j in 0..2 * p {
            let v = params.vertex(i, j);
            invs[0][v] = params.vertex(i + c * eta(j - q, p), 1 - j + 2 * q);
            invs[1][v] = params.vertex(i + cprime * eta(j, p), 1 - j);
            invs[2][v] = params.vertex(i, j + sign_pow(j));
            invs[3][v] = params.vertex(i, j - sign_pow(j));
        }
    }
    ColouredGraph::new(invs)
}

pub fn build_lins_mandel(params: &LMParams) -> Result<ColouredGraph> {
    build_generalized(&params.generalized())
}

/// Residue-sphere test: every 3-residue must be a 2-sphere.
pub fn is_gem(g: &ColouredGraph) -> bool {
    for c in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let (label, count) = g.components(&others);
        let mut verts = vec![0i64; count];
        let mut cycles = vec![0i64; count];
        for &l in &label {
            verts[l] += 1;
        }
        for (a, b) in [
            (others[0], others[1]),
            (others[0], others[2]),
            (others[1], others[2]),
        ] {
            for cyc in g.bicoloured_cycles(a, b) {
                cycles[label[cyc[0]]] += 1;
            }
        }
        if (0..count).any(|r| cycles[r] - verts[r] / 2 != 2) {
            return false;
        }
    }
    true
}

/// Arithmetic gem criterion: p even, or c = 0, or c' = 0, or c = (-1)^q c'.
pub fn gem_closed_form(params: &GLMParams) -> bool {
    let GLMParams { n, p, q, c, cprime } = *params;
    p % 2 == 0 || c == 0 || cprime == 0 || c == modp(sign_pow(q) * cprime, n)
}

pub fn is_crystallization(g: &ColouredGraph) -> Result<bool> {
    if !is_gem(g) {
        return Err(Error::NotAGem);
    }
    Ok((0..4).all(|c| {
        let others: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        g.components(&others).1 == 1
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RepresentedManifold {
    Sphere,
    Covering {
        link: TwoBridge,
        spec: CoveringSpec,
        strictly_cyclic: bool,
    },
}

/// The cyclic covering M_{n,c',-c}(p/q) represented by G̃(n,p,q,c,c').
pub fn represented_covering(params: &GLMParams) -> Result<RepresentedManifold> {
    if !gem_closed_form(params) {
        return Err(Error::NotAManifold);
    }
    let GLMParams { n, p, q, c, cprime } = *params;
    if c == 0 || cprime == 0 || p == 1 || n == 1 {
        return Ok(RepresentedManifold::Sphere);
    }
    let link = normalize(p, q)?;
    let strictly_cyclic = c == modp(sign_pow(q) * cprime, n);
    let spec = if link.is_knot() {
        CoveringSpec::new(n, &[1])?
    } else {
        CoveringSpec::new(n, &[cprime, -c])?
    };
    Ok(RepresentedManifold::Covering {
        link,
        spec,
        strictly_cyclic,
    })
}

const MAX_ISO_VERTICES: usize = 200;

/// Exact isomorphism test by rooted propagation. With
/// `allow_colour_permutation` the colours of `g2` may be relabelled.
pub fn graph_isomorphic(
    g1: &ColouredGraph,
    g2: &ColouredGraph,
    allow_colour_permutation: bool,
) -> Result<bool> {
    for g in [g1, g2] {
        if g.vertex_count() > MAX_ISO_VERTICES {
            return Err(Error::TooLarge(g.vertex_count()));
        }
    }
    if g1.vertex_count() != g2.vertex_count() {
        return Ok(false);
    }
    let perms: Vec<[usize; 4]> = if allow_colour_permutation {
        permutations4()
    } else {
        vec![[0, 1, 2, 3]]
    };
    Ok(perms
        .iter()
        .any(|perm| (0..g2.vertex_count()).any(|root| extend_from_root(g1, g2, perm, root))))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// Connectedness makes the map determined by the image of vertex 0.
fn extend_from_root(
    g1: &ColouredGraph,
    g2: &ColouredGraph,
    perm: &[usize; 4],
    root: usize,
) -> bool {
    let n = g1.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = root;
    used[root] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for (inv, &pc) in g1.involutions.iter().zip(perm.iter()) {
            let a = inv[v];
            let b = g2.involutions[pc][map[v]];
            if map[a] == usize::MAX {
                if used[b] {
                    return false;
                }
                map[a] = b;
                used[b] = true;
                stack.push(a);
            } else if map[a] != b {
                return false;
            }
        }
    }
    true
}

fn pm_inverse_set(x: i64, m: i64) -> Vec<i64> {
    let mut s = vec![modp(x, m), modp(-x, m)];
    if let Some(i) = mod_inverse(x, m) {
        s.extend([i, modp(-i, m)]);
    }
    s
}

/// Isomorphism of Lins–Mandel graphs from the arithmetic criteria, valid
/// for n, p > 2. For odd p only the gems with c = (-1)^q are covered.
pub fn lm_isomorphic_closed_form(a: &LMParams, b: &LMParams) -> Result<bool> {
    for x in [a, b] {
        if x.n <= 2 || x.p <= 2 {
            return Err(Error::OutOfRange(format!(
                "n = {}, p = {} must both exceed 2",
                x.n, x.p
            )));
        }
    }
    let odd_covered = |x: &LMParams| x.c == modp(sign_pow(x.q), x.n);
    if a.p % 2 == 1 && !odd_covered(a) {
        return Err(Error::OutOfRange("odd p requires c = (-1)^q".into()));
    }
    if b.p % 2 == 1 && !odd_covered(b) {
        return Err(Error::OutOfRange("odd p requires c = (-1)^q".into()));
    }
    if a.n != b.n || a.p != b.p {
        return Ok(false);
    }
    let (n, p) = (a.n, a.p);
    if p % 2 == 1 {
        return Ok(pm_inverse_set(a.q, p).contains(&modp(b.q, p)));
    }
    let qs = pm_inverse_set(a.q, 2 * p);
    let same_q = qs.contains(&b.q);
    let shifted_q = qs.contains(&modp(b.q - p, 2 * p));
    let cs: Vec<i64> = if gcd(n, a.c) == 1 {
        let mut v = vec![a.c];
        v.extend(mod_inverse(a.c, n));
        v
    } else {
        vec![a.c]
    };
    Ok((same_q && cs.contains(&b.c)) || (shifted_q && cs.contains(&modp(-b.c, n))))
}

/// Genus of the surface in which `g` embeds regularly for the cyclic colour
/// order `order`: χ = Σ g_{ε_i ε_{i+1}} − |V|.
pub fn heegaard_genus(g: &ColouredGraph, order: [usize; 4]) -> Result<i64> {
    let mut chi = -(g.vertex_count() as i64);
    for i in 0..4 {
        chi += g.bicoloured_cycles(order[i], order[(i + 1) % 4]).len() as i64;
    }
    if chi % 2 != 0 {
        return Err(Error::NonIntegerGenus(chi));
    }
    let genus = 1 - chi / 2;
    debug_assert!(genus >= 0);
    Ok(genus)
}

/// Genus for each of the three cyclic orders, in `CYCLIC_ORDERS` order.
pub fn genus_report(g: &ColouredGraph) -> Result<[i64; 3]> {
    let mut out = [0; 3];
    for (slot, order) in out.iter_mut().zip(CYCLIC_ORDERS) {
        *slot = heegaard_genus(g, order)?;
    }
    Ok(out)
}

/// Presentation read from the Heegaard diagram of a crystallization:
/// generators are the {2,3}-cycles, relators the {0,1}-cycles (letter sign
/// from the bipartition), and one generator is killed.
pub fn heegaard_presentation(g: &ColouredGraph) -> Result<Presentation> {
    if !is_crystallization(g)? {
        return Err(Error::BadParams("not a crystallization".into()));
    }
    let side = g
        .bipartition()
        .ok_or_else(|| Error::InvalidGraph("not bipartite".into()))?;
    let gens = g.bicoloured_cycles(2, 3);
    let mut owner = vec![0usize; g.vertex_count()];
    for (t, cyc) in gens.iter().enumerate() {
        for &v in cyc {
            owner[v] = t;
        }
    }
    let mut relators: Vec<FreeWord> = g
        .bicoloured_cycles(0, 1)
        .iter()
        .map(|cyc| {
            FreeWord::from_letters(
                cyc.iter()
                    .map(|&v| (owner[v] as i64 + 1, if side[v] == 0 { 1 } else { -1 }))
                    .collect(),
            )
        })
        .collect();
    relators.push(FreeWord::from_letters(vec![(gens.len() as i64, 1)]));
    Presentation::new(gens.len(), relators)
}

/// Dunwoody parameters `(a, 0, 1, n, r, s̄)`; s̄ is left unresolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DunwoodyParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub n: i64,
    pub r: i64,
    /// Not determined by the available data.
    pub s: Option<i64>,
    pub knot: TwoBridge,
}

pub fn dunwoody_params(a: i64, r: i64, n: i64) -> Result<DunwoodyParams> {
    if a <= 0 || r <= 0 || n <= 1 {
        return Err(Error::BadParams(format!(
            "need a, r > 0 and n > 1, got a={a}, r={r}, n={n}"
        )));
    }
    Ok(DunwoodyParams {
        a,
        b: 0,
        c: 1,
        n,
        r,
        s: None,
        knot: normalize(2 * a + 1, 2 * r)?,
    })
}
