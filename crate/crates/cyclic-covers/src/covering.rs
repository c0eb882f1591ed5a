//! Cyclic branched coverings M_{n,k_1,...,k_nu} of 2-bridge knots and links:
//! taxonomy, homeomorphism criteria, geometry labels and genus bounds.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{gcd, mod_inverse, modp};
use crate::two_bridge::TwoBridge;

/// Degree `n` and branching exponents `k_j ∈ Z_n \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CoveringSpec {
    n: i64,
    exponents: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSpec {
    n: i64,
    exponents: Vec<i64>,
}

impl TryFrom<RawSpec> for CoveringSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        CoveringSpec::new(r.n, &r.exponents)
    }
}

impl CoveringSpec {
    /// Validate and reduce. A single exponent (knot case) is normalised
    /// to 1, since it must be a unit and all units give the same covering.
    pub fn new(n: i64, exponents: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCovering(format!("degree {n} < 2")));
        }
        if exponents.is_empty() || exponents.len() > 2 {
            return Err(Error::InvalidCovering(format!(
                "expected one or two exponents, got {}",
                exponents.len()
            )));
        }
        let ks: Vec<i64> = exponents.iter().map(|&k| modp(k, n)).collect();
        if ks.contains(&0) {
            return Err(Error::InvalidCovering("exponent ≡ 0 mod n".into()));
        }
        if ks.iter().fold(n, |g, &k| gcd(g, k)) != 1 {
            return Err(Error::InvalidCovering(format!(
                "exponents {ks:?} do not generate Z_{n}"
            )));
        }
        let exponents = if ks.len() == 1 { vec![1] } else { ks };
        Ok(CoveringSpec { n, exponents })
    }

    /// Spec for `t` from the command-line style exponent list: knots take no
    /// exponent or one, links take none (strictly-cyclic), `k` (meaning
    /// `(1, k)`) or `(k_1, k_2)`.
    pub fn for_two_bridge(t: &TwoBridge, n: i64, ks: &[i64]) -> Result<Self> {
        if t.is_knot() {
            match ks {
                [] => Self::new(n, &[1]),
                [k] => Self::new(n, &[*k]),
                _ => Err(Error::InvalidCovering(
                    "a knot takes at most one exponent".into(),
                )),
            }
        } else {
            match ks {
                [] => Self::new(n, &[1, 1]),
                [k] => Self::new(n, &[1, *k]),
                [a, b] => Self::new(n, &[*a, *b]),
                _ => Err(Error::InvalidCovering(
                    "a link takes at most two exponents".into(),
                )),
            }
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn nu(&self) -> usize {
        self.exponents.len()
    }

    pub fn check_matches(&self, t: &TwoBridge) -> Result<()> {
        let want = if t.is_knot() { 1 } else { 2 };
        if self.nu() != want {
            return Err(Error::InvalidCovering(format!(
                "{t} has {want} component(s) but {} exponent(s) were given",
                self.nu()
            )));
        }
        Ok(())
    }

    /// The `k` of the equivalent singly-cyclic form `(1, k)`, scaling by the
    /// inverse of a unit exponent (and swapping components if needed, which
    /// is harmless since the two components of b(alpha, beta) are
    /// interchangeable).
    pub fn singly_k(&self) -> Option<i64> {
        match self.exponents[..] {
            [_] => Some(1),
            [a, b] => {
                if let Some(ai) = mod_inverse(a, self.n) {
                    Some(modp(b * ai, self.n))
                } else {
                    mod_inverse(b, self.n).map(|bi| modp(a * bi, self.n))
                }
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringClass {
    pub strictly: bool,
    pub almost_strictly: bool,
    pub meridian: bool,
    pub singly: bool,
    pub monodromy: bool,
}

pub fn classify(spec: &CoveringSpec) -> CoveringClass {
    let n = spec.n;
    let ks = &spec.exponents;
    let strictly = ks.iter().all(|&k| k == ks[0]);
    let almost_strictly = ks.iter().all(|&k| k == ks[0] || k == modp(-ks[0], n));
    let meridian = ks.iter().all(|&k| gcd(n, k) == 1);
    let singly = ks.iter().any(|&k| gcd(n, k) == 1);
    CoveringClass {
        strictly,
        almost_strictly,
        meridian,
        singly,
        // a valid spec always defines a cyclic covering
        monodromy: true,
    }
}

fn singly_link_k(t: &TwoBridge, s: &CoveringSpec) -> Result<i64> {
    t.require_link()?;
    if s.nu() != 2 || s.exponents[0] != 1 {
        return Err(Error::BadNormalForm(format!(
            "expected exponents (1, k), got {:?}",
            s.exponents
        )));
    }
    Ok(s.exponents[1])
}

/// Sufficient homeomorphism test between M_{n,k}(alpha/beta) and
/// M_{n,k'}(alpha/beta): `true` means some listed move connects them,
/// `false` only that none does.
pub fn covering_equivalent(t: &TwoBridge, s1: &CoveringSpec, s2: &CoveringSpec) -> Result<bool> {
    let k1 = singly_link_k(t, s1)?;
    let k2 = singly_link_k(t, s2)?;
    if s1.n != s2.n {
        return Err(Error::BadNormalForm("different degrees".into()));
    }
    let (n, a) = (s1.n, t.alpha());
    let m = 2 * a;
    let start = (t.beta(), k1);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((b, k)) = queue.pop_front() {
        let mut next = vec![(modp(-b, m), k), (modp(b - a, m), modp(-k, n))];
        if let Some(ki) = mod_inverse(k, n) {
            next.push((b, ki));
        }
        if let Some(bi) = mod_inverse(b, m) {
            next.push((bi, k));
        }
        for s in next {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    Ok(seen.contains(&(t.beta(), k2)))
}

fn square_is_alpha_pm1(t: &TwoBridge) -> bool {
    let (a, b) = (t.alpha(), t.beta());
    let sq = modp(b * b, 2 * a);
    sq == modp(a + 1, 2 * a) || sq == modp(a - 1, 2 * a)
}

/// Exact homeomorphism decision for hyperbolic meridian-cyclic coverings.
pub fn hyperbolic_homeomorphic(t: &TwoBridge, n: i64, k: i64, k2: i64) -> Result<bool> {
    if t.is_toroidal() {
        return Err(Error::NotHyperbolic(t.alpha(), t.beta()));
    }
    for x in [k, k2] {
        if gcd(n, modp(x, n)) != 1 {
            return Err(Error::NotMeridianCyclic { n, k: x });
        }
    }
    let k = modp(k, n);
    let ki = mod_inverse(k, n).expect("checked unit");
    let mut allowed = vec![k, ki];
    if square_is_alpha_pm1(t) {
        allowed.extend([modp(-k, n), modp(-ki, n)]);
    }
    Ok(allowed.contains(&modp(k2, n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryType {
    Hyperbolic,
    Euclidean,
    Spherical,
    Nil,
    Sl2r,
    Undetermined,
}

pub fn geometry(t: &TwoBridge, spec: &CoveringSpec) -> GeometryType {
    let (a, n) = (t.alpha(), spec.n);
    let class = classify(spec);
    if n == 2 {
        return GeometryType::Spherical;
    }
    if t.is_toroidal() {
        if !class.strictly {
            return GeometryType::Undetermined;
        }
        // sign of 1/n + 1/alpha - 1/2, scaled by 2 n alpha
        return match (2 * a + 2 * n - n * a).signum() {
            1 => GeometryType::Spherical,
            0 => GeometryType::Nil,
            _ => GeometryType::Sl2r,
        };
    }
    if !class.meridian {
        return GeometryType::Undetermined;
    }
    if a == 5 && n == 3 {
        // the only non-toroidal alpha = 5 knot is the figure-eight
        return GeometryType::Euclidean;
    }
    if (a == 5 && n >= 4) || (a != 5 && n >= 3) {
        return GeometryType::Hyperbolic;
    }
    GeometryType::Undetermined
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBounds {
    pub general: i64,
    pub braid: Option<i64>,
    pub symmetric: Option<i64>,
}

/// Riemann–Hurwitz bound `n + 1 - gcd(n,k') - gcd(n,k'')`; a knot counts
/// its single exponent twice.
pub fn riemann_hurwitz_bound(spec: &CoveringSpec) -> i64 {
    let n = spec.n;
    match spec.exponents[..] {
        [k] => n + 1 - 2 * gcd(n, k),
        [k1, k2] => n + 1 - gcd(n, k1) - gcd(n, k2),
        _ => unreachable!("validated spec"),
    }
}

pub fn genus_bounds(t: &TwoBridge, spec: &CoveringSpec) -> GenusBounds {
    let n = spec.n;
    let a = t.alpha();
    let strictly = classify(spec).strictly;
    let braid = if strictly {
        let m = if t.is_knot() { a } else { 2 * a };
        let class = t.signed_inverse_class(m);
        if class.contains(&1) {
            Some((a - 1).min(n - 1))
        } else if class.contains(&3) && a % 3 == 2 && (a + 1) / 3 > 1 {
            Some(((a + 1) / 3).min(n - 1))
        } else {
            None
        }
    } else {
        None
    };
    GenusBounds {
        general: riemann_hurwitz_bound(spec),
        braid,
        symmetric: strictly.then_some(n - 1),
    }
}

/// Lens space L(p, q) when the covering is one of the two standard lens
/// space families.
pub fn lens_recognize(t: &TwoBridge, spec: &CoveringSpec) -> Option<(i64, i64)> {
    let n = spec.n;
    if n == 2 && classify(spec).strictly {
        return Some((t.alpha(), t.beta_mod_alpha()));
    }
    if t.alpha() == 2 && spec.nu() == 2 {
        let k = spec.singly_k()?;
        if gcd(n, k) != 1 {
            return None;
        }
        // b(2,3) is the mirror image of b(2,1)
        let k = if t.beta() == 1 { k } else { modp(-k, n) };
        return Some((n, k));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_bridge::normalize;

    fn b(a: i64, be: i64) -> TwoBridge {
        normalize(a, be).unwrap()
    }

    fn spec(n: i64, ks: &[i64]) -> CoveringSpec {
        CoveringSpec::new(n, ks).unwrap()
    }

    #[test]
    fn validation() {
        assert!(CoveringSpec::new(1, &[1]).is_err());
        assert!(CoveringSpec::new(4, &[2, 2]).is_err());
        assert!(CoveringSpec::new(4, &[0, 1]).is_err());
        assert_eq!(spec(7, &[3]).exponents(), &[1]);
        assert_eq!(spec(5, &[6, -3]).exponents(), &[1, 2]);
        assert!(CoveringSpec::for_two_bridge(&b(8, 3), 5, &[1, 2, 3]).is_err());
        assert_eq!(spec(6, &[5, 2]).singly_k(), Some(4));
        assert_eq!(spec(6, &[2, 5]).singly_k(), Some(4));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&spec(5, &[1, 2]));
        assert!(c.meridian && c.singly && c.monodromy);
        assert!(!c.almost_strictly && !c.strictly);
        let c = classify(&spec(4, &[1, 2]));
        assert!(c.singly && !c.meridian);
        let c = classify(&spec(7, &[3]));
        assert!(c.strictly && c.almost_strictly && c.meridian && c.singly && c.monodromy);
        let c = classify(&spec(5, &[1, 4]));
        assert!(c.almost_strictly && !c.strictly);
    }

    #[test]
    fn implication_chain_sweep() {
        for n in 2..=12 {
            for k1 in 1..n {
                for k2 in 1..n {
                    let Ok(s) = CoveringSpec::new(n, &[k1, k2]) else {
                        continue;
                    };
                    let c = classify(&s);
                    assert!(!c.strictly || c.almost_strictly);
                    assert!(!c.almost_strictly || c.meridian);
                    assert!(!c.meridian || c.singly);
                    assert!(!c.singly || c.monodromy);
                    if n == 2 {
                        assert!(c.strictly);
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let t = b(8, 3);
        assert_eq!(
            covering_equivalent(&t, &spec(5, &[1, 2]), &spec(5, &[1, 3])),
            Ok(true)
        );
        assert_eq!(
            covering_equivalent(&t, &spec(5, &[1, 2]), &spec(5, &[1, -2])),
            Ok(true)
        );
        assert_eq!(
            covering_equivalent(&t, &spec(5, &[1, 2]), &spec(5, &[1, 2])),
            Ok(true)
        );
        // b(12,5): 25 is not 12 ± 1, and 4 is not 2^{±1} mod 7
        assert_eq!(
            covering_equivalent(&b(12, 5), &spec(7, &[1, 2]), &spec(7, &[1, 5])),
            Ok(false)
        );
        assert!(covering_equivalent(&t, &spec(5, &[2, 1]), &spec(5, &[1, 2])).is_err());
        assert!(covering_equivalent(&b(5, 3), &spec(5, &[1]), &spec(5, &[1])).is_err());
    }

    #[test]
    fn hyperbolic_examples() {
        let t = b(8, 3);
        assert_eq!(hyperbolic_homeomorphic(&t, 7, 2, 4), Ok(true));
        assert_eq!(hyperbolic_homeomorphic(&t, 7, 2, 5), Ok(true));
        assert_eq!(hyperbolic_homeomorphic(&b(12, 5), 7, 2, 5), Ok(false));
        assert!(hyperbolic_homeomorphic(&b(8, 1), 7, 2, 4).is_err());
        assert!(hyperbolic_homeomorphic(&t, 6, 2, 5).is_err());
    }

    #[test]
    fn hyperbolic_implies_moves() {
        for a in (4..=16).step_by(2) {
            for be in (1..2 * a).step_by(2) {
                let Ok(t) = normalize(a, be) else { continue };
                if t.is_toroidal() {
                    continue;
                }
                for n in 3..=9 {
                    for k in 1..n {
                        for k2 in 1..n {
                            if let Ok(true) = hyperbolic_homeomorphic(&t, n, k, k2) {
                                assert_eq!(
                                    covering_equivalent(&t, &spec(n, &[1, k]), &spec(n, &[1, k2])),
                                    Ok(true)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn covering_equivalent_symmetric() {
        for a in (2..=12).step_by(2) {
            for be in (1..2 * a).step_by(2) {
                let Ok(t) = normalize(a, be) else { continue };
                for n in 2..=8 {
                    for k in 1..n {
                        for k2 in 1..n {
                            let (Ok(s1), Ok(s2)) = (
                                CoveringSpec::new(n, &[1, k]),
                                CoveringSpec::new(n, &[1, k2]),
                            ) else {
                                continue;
                            };
                            assert_eq!(
                                covering_equivalent(&t, &s1, &s2),
                                covering_equivalent(&t, &s2, &s1)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn geometry_examples() {
        assert_eq!(geometry(&b(5, 2), &spec(3, &[1])), GeometryType::Euclidean);
        assert_eq!(geometry(&b(3, 1), &spec(5, &[1])), GeometryType::Spherical);
        assert_eq!(geometry(&b(5, 1), &spec(3, &[1])), GeometryType::Spherical);
        assert_eq!(
            geometry(&b(8, 3), &spec(5, &[1, 2])),
            GeometryType::Hyperbolic
        );
        assert_eq!(geometry(&b(3, 1), &spec(6, &[1])), GeometryType::Nil);
        assert_eq!(geometry(&b(4, 1), &spec(4, &[1, 1])), GeometryType::Nil);
        assert_eq!(geometry(&b(3, 1), &spec(7, &[1])), GeometryType::Sl2r);
        assert_eq!(geometry(&b(7, 3), &spec(2, &[1])), GeometryType::Spherical);
        assert_eq!(
            geometry(&b(8, 3), &spec(4, &[1, 2])),
            GeometryType::Undetermined
        );
        assert_eq!(
            geometry(&b(4, 1), &spec(5, &[1, 2])),
            GeometryType::Undetermined
        );
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_bounds(&b(8, 3), &spec(5, &[1, 2])).general, 4);
        let g = genus_bounds(&b(5, 3), &spec(7, &[1]));
        assert_eq!((g.general, g.braid, g.symmetric), (6, Some(2), Some(6)));
        for a in 2..=9 {
            let t = b(a, 1);
            let g = genus_bounds(&t, &CoveringSpec::for_two_bridge(&t, 3, &[]).unwrap());
            assert_eq!(g.braid, Some((a - 1).min(2)));
        }
        assert_eq!(genus_bounds(&b(8, 3), &spec(7, &[1, 1])).braid, Some(3));
        assert_eq!(genus_bounds(&b(8, 3), &spec(7, &[1, 2])).symmetric, None);
        assert_eq!(
            genus_bounds(&b(8, 3), &spec(6, &[1, 3])).general,
            6 + 1 - 1 - 3
        );
    }

    #[test]
    fn meridian_general_bound() {
        for n in 2..=12 {
            for k in 1..n {
                if gcd(n, k) == 1 {
                    assert_eq!(riemann_hurwitz_bound(&spec(n, &[1, k])), n - 1);
                }
            }
        }
    }

    #[test]
    fn lens_examples() {
        assert_eq!(lens_recognize(&b(7, 3), &spec(2, &[1])), Some((7, 3)));
        assert_eq!(lens_recognize(&b(2, 1), &spec(5, &[1, 2])), Some((5, 2)));
        assert_eq!(lens_recognize(&b(2, 3), &spec(5, &[1, 2])), Some((5, 3)));
        assert_eq!(lens_recognize(&b(8, 3), &spec(5, &[1, 2])), None);
    }
}
