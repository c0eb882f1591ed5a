//! Face-paired ball schema for M_{n,k}(p/q): the boundary sphere is cut
//! into 2n polygons by n meridians through the poles and n bisecting arcs;
//! each R_i is glued to a partner S_L reversing orientation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{gcd, modp};
use crate::words::{FreeWord, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SphereVertex {
    North,
    South,
    /// Interior vertex at depth `t` (1..p-1) on meridian `i`.
    Meridian(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SphereEdge {
    /// Segment of meridian `i` between depths `t` and `t+1`.
    Meridian(i64, i64),
    /// Bisecting arc of lune `i`.
    Arc(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Face {
    R(i64),
    S(i64),
}

/// Cyclic boundary of a polygon: `edges[t]` joins `vertices[t]` to `vertices[t+1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub face: Face,
    pub vertices: Vec<SphereVertex>,
    pub edges: Vec<SphereEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkusSchema {
    pub n: i64,
    pub k: i64,
    pub p: i64,
    pub q: i64,
    /// `R_0, S_0, R_1, S_1, ...`
    pub regions: Vec<Region>,
    /// `R_i` is glued to `S_{partner[i]}`.
    pub partner: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexCounts {
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub chi: i64,
}

/// Schema for M_{n,k}(p/q), `0 < q < p`. For odd `p` the covering is
/// strictly cyclic, so `k` must be a unit mod n and is normalised to 1.
pub fn build_minkus(n: i64, k: i64, p: i64, q: i64) -> Result<MinkusSchema> {
    if n < 2 || p < 2 || q <= 0 || q >= p || gcd(p, q) != 1 {
        return Err(Error::BadParams(format!(
            "need n ≥ 2 and coprime 0 < q < p, got n={n} p={p} q={q}"
        )));
    }
    let mut k = modp(k, n);
    if k == 0 {
        return Err(Error::BadParams(format!("k ≡ 0 mod {n}")));
    }
    if p % 2 == 1 {
        if gcd(n, k) != 1 {
            return Err(Error::BadParams(format!(
                "knot coverings need k coprime to n, got k={k}"
            )));
        }
        k = 1;
    }
    let v = |i: i64, t: i64| match t {
        0 => SphereVertex::North,
        t if t == p => SphereVertex::South,
        t => SphereVertex::Meridian(modp(i, n), t),
    };
    let em = |i: i64, t: i64| SphereEdge::Meridian(modp(i, n), t);
    let ea = |i: i64| SphereEdge::Arc(modp(i, n));
    let mut regions = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        let mut vs: Vec<_> = (0..=q).map(|t| v(i, q - t)).collect();
        vs.extend((1..=p - q).map(|u| v(i + 1, u)));
        let mut es: Vec<_> = (0..q).map(|t| em(i, q - t - 1)).collect();
        es.extend((1..=p - q).map(|u| em(i + 1, u - 1)));
        es.push(ea(i));
        regions.push(Region {
            face: Face::R(i),
            vertices: vs,
            edges: es,
        });

        let mut vs = vec![v(i, q)];
        vs.extend((0..=q).map(|u| v(i + 1, p - q + u)));
        vs.extend((1..p - q).map(|u| v(i, p - u)));
        let mut es = vec![ea(i)];
        es.extend((0..q).map(|u| em(i + 1, p - q + u)));
        es.extend((1..=p - q).map(|u| em(i, p - u)));
        regions.push(Region {
            face: Face::S(i),
            vertices: vs,
            edges: es,
        });
    }
    let shift = if q % 2 == 1 { k } else { -k };
    let partner = (0..n).map(|i| modp(i - shift, n)).collect();
    Ok(MinkusSchema {
        n,
        k,
        p,
        q,
        regions,
        partner,
    })
}

type Gluing = (
    Vec<(SphereVertex, SphereVertex)>,
    Vec<(SphereEdge, SphereEdge)>,
);

struct UnionFind<T: Ord + Copy> {
    parent: BTreeMap<T, T>,
}

impl<T: Ord + Copy> UnionFind<T> {
    fn new(items: impl IntoIterator<Item = T>) -> Self {
        UnionFind {
            parent: items.into_iter().map(|x| (x, x)).collect(),
        }
    }

    fn find(&mut self, mut x: T) -> T {
        while self.parent[&x] != x {
            let up = self.parent[&self.parent[&x]];
            self.parent.insert(x, up);
            x = up;
        }
        x
    }

    fn union(&mut self, a: T, b: T) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra, rb);
        }
    }

    fn classes(&mut self) -> BTreeMap<T, Vec<T>> {
        let keys: Vec<T> = self.parent.keys().copied().collect();
        let mut out: BTreeMap<T, Vec<T>> = BTreeMap::new();
        for x in keys {
            let r = self.find(x);
            out.entry(r).or_default().push(x);
        }
        out
    }
}

impl MinkusSchema {
    fn region(&self, f: Face) -> &Region {
        let idx = match f {
            Face::R(i) => 2 * i,
            Face::S(i) => 2 * i + 1,
        };
        &self.regions[idx as usize]
    }

    /// Vertex and edge maps of the gluing `R_i → S_{partner[i]}`: vertex `t`
    /// goes to vertex `-t`, edge `t` to edge `-t-1` (indices mod p+1).
    fn gluing(&self, i: i64) -> Gluing {
        let src = self.region(Face::R(i));
        let tgt = self.region(Face::S(self.partner[i as usize]));
        let m = self.p + 1;
        let vs = (0..m)
            .map(|t| (src.vertices[t as usize], tgt.vertices[modp(-t, m) as usize]))
            .collect();
        let es = (0..m)
            .map(|t| (src.edges[t as usize], tgt.edges[modp(-t - 1, m) as usize]))
            .collect();
        (vs, es)
    }

    fn all_vertices(&self) -> BTreeSet<SphereVertex> {
        self.regions
            .iter()
            .flat_map(|r| r.vertices.iter().copied())
            .collect()
    }

    fn all_edges(&self) -> BTreeSet<SphereEdge> {
        self.regions
            .iter()
            .flat_map(|r| r.edges.iter().copied())
            .collect()
    }

    fn vertex_classes(&self) -> BTreeMap<SphereVertex, Vec<SphereVertex>> {
        let mut uf = UnionFind::new(self.all_vertices());
        for i in 0..self.n {
            for (a, b) in self.gluing(i).0 {
                uf.union(a, b);
            }
        }
        uf.classes()
    }

    fn edge_classes(&self) -> BTreeMap<SphereEdge, Vec<SphereEdge>> {
        let mut uf = UnionFind::new(self.all_edges());
        for i in 0..self.n {
            for (a, b) in self.gluing(i).1 {
                uf.union(a, b);
            }
        }
        uf.classes()
    }

    /// Text dump: regions, vertex classes and relators.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "schema n={} k={} p={} q={}\n",
            self.n, self.k, self.p, self.q
        );
        for r in &self.regions {
            let _ = writeln!(s, "{:?}: {:?}", r.face, r.vertices);
        }
        for (i, l) in self.partner.iter().enumerate() {
            let _ = writeln!(s, "R({i}) -> S({l})");
        }
        for (rep, class) in self.vertex_classes() {
            let _ = writeln!(s, "vertex class {rep:?}: {} members", class.len());
        }
        if let Ok(p) = schema_presentation(self) {
            s.push_str(&p.to_text());
        }
        s
    }
}

/// Cells of the quotient: one 3-cell, n 2-cells, and the vertex and edge
/// classes of the gluing.
pub fn quotient_counts(s: &MinkusSchema) -> CellComplexCounts {
    let t0 = s.vertex_classes().len();
    let t1 = s.edge_classes().len();
    let (t2, t3) = (s.n as usize, 1);
    CellComplexCounts {
        t0,
        t1,
        t2,
        t3,
        chi: t0 as i64 - t1 as i64 + t2 as i64 - t3 as i64,
    }
}

/// Poincaré presentation: generator `x_{i+1}` for the pair `(R_i, S_·)`, one
/// relator per edge cycle. Crossing out of `R_i` reads `x_{i+1}`, crossing
/// out of its partner reads the inverse.
pub fn schema_presentation(s: &MinkusSchema) -> Result<Presentation> {
    if quotient_counts(s).chi != 0 {
        return Err(Error::NotAManifold);
    }
    let mut incidence: BTreeMap<SphereEdge, Vec<Face>> = BTreeMap::new();
    for r in &s.regions {
        for e in &r.edges {
            incidence.entry(*e).or_default().push(r.face);
        }
    }
    let maps: Vec<BTreeMap<SphereEdge, SphereEdge>> = (0..s.n)
        .map(|i| s.gluing(i).1.into_iter().collect())
        .collect();
    let back: Vec<BTreeMap<SphereEdge, SphereEdge>> = maps
        .iter()
        .map(|m| m.iter().map(|(a, b)| (*b, *a)).collect())
        .collect();
    let owner: BTreeMap<i64, i64> = s
        .partner
        .iter()
        .enumerate()
        .map(|(i, l)| (*l, i as i64))
        .collect();

    let mut used = BTreeSet::new();
    let mut relators = Vec::new();
    for (&e0, faces) in &incidence {
        for &f0 in faces {
            let (mut e, mut f) = (e0, f0);
            let mut word = Vec::new();
            while used.insert((e, f)) {
                let (e2, image) = match f {
                    Face::R(i) => {
                        word.push((i + 1, 1));
                        (maps[i as usize][&e], Face::S(s.partner[i as usize]))
                    }
                    Face::S(l) => {
                        let i = owner[&l];
                        word.push((i + 1, -1));
                        (back[i as usize][&e], Face::R(i))
                    }
                };
                let pair = &incidence[&e2];
                f = if pair[0] == image { pair[1] } else { pair[0] };
                e = e2;
            }
            if !word.is_empty() {
                relators.push(FreeWord::from_letters(word));
            }
        }
    }
    Presentation::new(s.n as usize, relators)
}
