//! First homology: Smith normal form of the abelianised relator matrix,
//! closed forms for the known families, the Alexander resultant order, and
//! a cross-route consistency report.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::covering::{classify, lens_recognize, CoveringSpec};
use crate::error::Result;
use crate::gems::{build_lins_mandel, heegaard_presentation, LMParams};
use crate::laurent::{resultant, LaurentPolynomial};
use crate::matrix::{smith_normal_form, Matrix};
use crate::polyhedral::{build_minkus, schema_presentation};
use crate::presentations::{
    alexander_polynomial, minkus_presentation, mu3_presentation, takahashi_word,
};
use crate::scalar::{gcd, modp, sign_pow};
use crate::two_bridge::{even_cf_expand, is_genus_one, TwoBridge};
use crate::words::Presentation;

pub type IntMatrix = Matrix<BigInt>;

/// `Z^rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_m}` with `d_1 | d_2 | ...` and `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(with = "crate::bigjson::vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: vec![],
        }
    }

    /// Canonical form of `Z^rank ⊕ ⊕ Z_{f}` for arbitrary factors; a zero
    /// factor counts as a free summand and units are dropped.
    pub fn from_factors(rank: usize, factors: &[BigInt]) -> Self {
        let mut diag = IntMatrix::zeros(factors.len(), factors.len());
        for (i, f) in factors.iter().enumerate() {
            diag[(i, i)] = f.clone();
        }
        let snf = smith_normal_form(&diag);
        Self::from_snf(rank + snf.cokernel_rank(), &snf.diagonal)
    }

    /// Convenience constructor from machine-size factors.
    pub fn from_i64(rank: usize, factors: &[i64]) -> Self {
        let f: Vec<BigInt> = factors.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_factors(rank, &f)
    }

    fn from_snf(rank: usize, diagonal: &[BigInt]) -> Self {
        let torsion = diagonal
            .iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of a finite group, `None` when the rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// The order as a string, `"infinite"` for positive rank.
    pub fn order_string(&self) -> String {
        self.order()
            .map_or_else(|| "infinite".to_string(), |o| o.to_string())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.generator_count());
    for (i, r) in p.relators().iter().enumerate() {
        for &(g, e) in r.syllables() {
            m[(i, g as usize - 1)] += e;
        }
    }
    m
}

/// Abelianisation of the presented group.
pub fn h1(p: &Presentation) -> AbelianGroup {
    let m = relator_matrix(p);
    let snf = smith_normal_form(&m);
    AbelianGroup::from_snf(snf.cokernel_rank(), &snf.diagonal)
}

/// Parameters of the even-α formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenAlphaParams {
    pub s: i64,
    pub d: i64,
    pub h: i64,
    pub m: i64,
    pub a: i64,
    pub b: i64,
}

impl EvenAlphaParams {
    /// `s = gcd(n,k)`, `d = gcd(n, α(k+1)/2)`, `h = gcd(n,k+1)`,
    /// `m = gcd(d,s)`, `a = nm/(sd)`, `b = αh/(2d)`.
    pub fn new(alpha: i64, n: i64, k: i64) -> Self {
        let s = gcd(n, k);
        let d = gcd(n, alpha * (k + 1) / 2);
        let h = gcd(n, k + 1);
        let m = gcd(d, s);
        EvenAlphaParams {
            s,
            d,
            h,
            m,
            a: n * m / (s * d),
            b: alpha * h / (2 * d),
        }
    }
}

/// A closed-form value with the formula that produced it and the factors
/// as printed (units included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub formula: String,
    pub rank: usize,
    pub raw_factors: Vec<i64>,
    pub group: AbelianGroup,
}

impl ClosedForm {
    fn new(formula: &str, rank: i64, raw_factors: Vec<i64>) -> Self {
        let rank = rank.max(0) as usize;
        ClosedForm {
            formula: formula.to_string(),
            rank,
            group: AbelianGroup::from_i64(rank, &raw_factors),
            raw_factors,
        }
    }
}

/// H_1(M_n(α/1)), α odd, d = gcd(n,α).
pub fn odd_alpha_formula(alpha: i64, n: i64) -> ClosedForm {
    let d = gcd(n, alpha);
    if n % 2 == 0 {
        ClosedForm::new("odd-alpha", d - 1, vec![alpha / d])
    } else {
        ClosedForm::new("odd-alpha", 0, vec![2; (d - 1) as usize])
    }
}

/// H_1(M_{n,k}(α/1)), α even: three cases split by `h`.
pub fn even_alpha_formula(alpha: i64, n: i64, k: i64) -> ClosedForm {
    let EvenAlphaParams { d, h, m, a, b, .. } = EvenAlphaParams::new(alpha, n, k);
    let rep = |x: i64, c: i64| vec![x; c.max(0) as usize];
    if h == 1 {
        ClosedForm::new("even-alpha", d - m, rep(a, m))
    } else if h < m + 1 {
        let mut f = rep(a, m - h + 1);
        f.extend(rep(a * b, h - 2));
        f.push(h * a * b);
        ClosedForm::new("even-alpha", d - h + 1 - m, f)
    } else {
        let mut f = rep(b, h - 1 - m);
        f.extend(rep(a * b, m - 1));
        f.push(h * a * b);
        ClosedForm::new("even-alpha", d - h + 1 - m, f)
    }
}

/// Meridian-cyclic specialisation of the even-α formula, `gcd(n,k) = 1`.
pub fn even_alpha_meridian(alpha: i64, n: i64, k: i64) -> ClosedForm {
    let d = gcd(n, alpha * (k + 1) / 2);
    let h = gcd(n, k + 1);
    let (a, b) = (n / d, alpha * h / (2 * d));
    if h == 1 {
        ClosedForm::new("even-alpha-meridian", d - 1, vec![a])
    } else {
        let mut f = vec![b; (h - 2).max(0) as usize];
        f.push(h * a * b);
        ClosedForm::new("even-alpha-meridian", d - h, f)
    }
}

/// Strictly-cyclic specialisation of the even-α formula, `k = 1`.
pub fn even_alpha_strictly(alpha: i64, n: i64) -> ClosedForm {
    let d = gcd(n, alpha);
    if n % 2 == 1 {
        ClosedForm::new("even-alpha-strictly", d - 1, vec![n / d])
    } else {
        ClosedForm::new("even-alpha-strictly", d - 2, vec![2 * n * alpha / (d * d)])
    }
}

/// `h` of the genus-one recurrences.
pub fn genus_one_h(alpha: i64) -> i64 {
    if modp(alpha, 4) == 1 {
        (1 - alpha) / 4
    } else {
        (1 + alpha) / 4
    }
}

/// `A'(n)` and `A''(n)` for the given `h`, exact.
pub fn genus_one_sequences(h: i64, n: usize) -> (BigInt, BigInt) {
    let h = BigInt::from(h);
    let step = |first: BigInt, second: BigInt| {
        let (mut x, mut y) = (first, second);
        for _ in 1..n {
            let z = &y - &h * &x;
            x = y;
            y = z;
        }
        x
    };
    let a1 = step(BigInt::one(), BigInt::one());
    let a2 = step(BigInt::one(), BigInt::one() - BigInt::from(2) * &h);
    (a1, a2)
}

/// H_1(M_n(α/β)) for a genus-one knot; depends only on α.
pub fn genus_one_formula(alpha: i64, n: i64) -> AbelianGroup {
    let (a1, a2) = genus_one_sequences(genus_one_h(alpha), n as usize);
    if n % 2 == 0 {
        let a = a1.abs();
        AbelianGroup::from_factors(0, &[BigInt::from(alpha) * &a, a])
    } else {
        let a = a2.abs();
        AbelianGroup::from_factors(0, &[a.clone(), a])
    }
}

/// H_1(M_n((2nβ±1)/β)): Z_α for even n, trivial for odd n.
pub fn minkus_formula(alpha: i64, n: i64) -> ClosedForm {
    if n % 2 == 0 {
        ClosedForm::new("minkus", 0, vec![alpha])
    } else {
        ClosedForm::new("minkus", 0, vec![])
    }
}

/// H_1(M_{n,k}(8/3)) for `n ≥ 3`, `gcd(n,k) = 1`, by `n mod 6`.
pub fn whitehead_formula(n: i64) -> ClosedForm {
    let f = match modp(n, 6) {
        0 => vec![n / 6, n / 2, 12 * n],
        2 | 4 => vec![n / 2, n / 2, 4 * n],
        3 => vec![n / 3, n, 3 * n],
        _ => vec![n, n, n],
    };
    ClosedForm::new("whitehead", 0, f)
}

fn equivalent_to_whitehead(t: &TwoBridge) -> bool {
    t.alpha() == 8 && [3, 5, 11, 13].contains(&t.beta())
}

/// Whether `β ≡ ±1` or `β ≡ α±1` modulo 2α, returning the sign to apply to
/// `k` so that the β = 1 formula holds.
fn beta_one_class(t: &TwoBridge) -> Option<i64> {
    let (a, b) = (t.alpha(), t.beta());
    if t.is_knot() {
        return (modp(b, a) == 1 || modp(b, a) == a - 1).then_some(1);
    }
    if b == 1 || b == 2 * a - 1 {
        Some(1)
    } else if b == a + 1 || b == a - 1 {
        Some(-1)
    } else {
        None
    }
}

/// Whether the knot admits a representative with `α = 2nβ' ± 1`.
fn minkus_family(t: &TwoBridge, n: i64) -> bool {
    let a = t.alpha();
    t.signed_inverse_class(a)
        .into_iter()
        .map(|b| modp(b, a))
        .filter(|&b| b > 0)
        .any(|b| a == 2 * n * b + 1 || a == 2 * n * b - 1)
}

/// Closed form for the covering when one of the known families applies.
pub fn h1_closed_form(t: &TwoBridge, spec: &CoveringSpec) -> Option<ClosedForm> {
    let n = spec.n();
    if spec.check_matches(t).is_err() {
        return None;
    }
    if t.is_knot() {
        if beta_one_class(t).is_some() {
            return Some(odd_alpha_formula(t.alpha(), n));
        }
        if is_genus_one(t).unwrap_or(false) {
            let g = genus_one_formula(t.alpha(), n);
            return Some(ClosedForm {
                formula: "genus-one".into(),
                rank: g.rank,
                raw_factors: vec![],
                group: g,
            });
        }
        if minkus_family(t, n) {
            return Some(minkus_formula(t.alpha(), n));
        }
        return None;
    }
    let k = spec.singly_k()?;
    if let Some(sign) = beta_one_class(t) {
        return Some(even_alpha_formula(t.alpha(), n, modp(sign * k, n)));
    }
    if equivalent_to_whitehead(t) && n >= 3 && gcd(n, k) == 1 {
        return Some(whitehead_formula(n));
    }
    None
}

/// `|H_1|` as an exact integer or infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Finite(#[serde(with = "crate::bigjson")] BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Order::Finite(x) => write!(f, "{x}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// `|Res(Δ(t), t^n - 1)|`; zero means infinite.
pub fn order_via_resultant(delta: &LaurentPolynomial<BigInt>, n: usize) -> Order {
    let delta = delta.normalized();
    let mut tn = LaurentPolynomial::zero();
    tn.add_term(n as i64, BigInt::one());
    tn.add_term(0, -BigInt::one());
    let r = resultant(&delta, &tn).abs();
    if r.is_zero() {
        Order::Infinite
    } else {
        Order::Finite(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Minkus,
    Mu3,
    Takahashi,
    Polyhedral,
    Gem,
    ClosedForm,
    Lens,
    Resultant,
}

impl Route {
    pub const ALL: [Route; 8] = [
        Route::Minkus,
        Route::Mu3,
        Route::Takahashi,
        Route::Polyhedral,
        Route::Gem,
        Route::ClosedForm,
        Route::Lens,
        Route::Resultant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Minkus => "minkus",
            Route::Mu3 => "mu3",
            Route::Takahashi => "takahashi",
            Route::Polyhedral => "polyhedral",
            Route::Gem => "gem",
            Route::ClosedForm => "closed_form",
            Route::Lens => "lens",
            Route::Resultant => "resultant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteResult {
    pub route: Route,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<AbelianGroup>,
    pub order: Order,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub link: TwoBridge,
    pub spec: CoveringSpec,
    pub routes: Vec<RouteResult>,
    pub consistent: bool,
}

impl ConsistencyReport {
    pub fn group(&self) -> Option<&AbelianGroup> {
        self.routes.iter().find_map(|r| r.group.as_ref())
    }

    pub fn route(&self, r: Route) -> Option<&RouteResult> {
        self.routes.iter().find(|x| x.route == r)
    }
}

fn group_result(route: Route, g: AbelianGroup) -> RouteResult {
    let order = g.order().map_or(Order::Infinite, Order::Finite);
    RouteResult {
        route,
        group: Some(g),
        order,
        formula: None,
    }
}

/// H_1 by one route, `Ok(None)` when the route does not apply.
pub fn route_h1(route: Route, t: &TwoBridge, spec: &CoveringSpec) -> Result<Option<RouteResult>> {
    spec.check_matches(t)?;
    let n = spec.n();
    let nu = n as usize;
    let k = spec.singly_k();
    let strictly = classify(spec).strictly;
    let out = match route {
        Route::Minkus => {
            if t.is_knot() || (strictly && k == Some(1)) {
                Some(group_result(
                    route,
                    h1(&minkus_presentation(&t.with_odd_beta(), nu)?),
                ))
            } else {
                None
            }
        }
        Route::Mu3 => match k {
            Some(k) if t.is_link() => Some(group_result(route, h1(&mu3_presentation(t, nu, k)?))),
            _ => None,
        },
        Route::Takahashi => {
            if t.is_knot() {
                let form = even_cf_expand(t)?;
                Some(group_result(
                    route,
                    h1(&takahashi_word(&form, nu)?.to_presentation()),
                ))
            } else {
                None
            }
        }
        Route::Polyhedral => {
            let (p, b) = (t.alpha(), t.beta());
            let (q, kk) = match (t.is_knot(), k) {
                (true, _) => (modp(b, p), 1),
                (false, Some(k)) if b < p => (b, k),
                (false, Some(k)) => (b - p, -k),
                _ => return Ok(None),
            };
            let s = build_minkus(n, kk, p, q)?;
            Some(group_result(route, h1(&schema_presentation(&s)?)))
        }
        Route::Gem => {
            let params = match (t.is_knot(), k) {
                (true, _) => {
                    let b = t.with_odd_beta().beta();
                    LMParams::new(n, t.alpha(), b, sign_pow(b))?
                }
                (false, Some(k)) if gcd(n, k) == 1 => LMParams::new(n, t.alpha(), t.beta(), -k)?,
                _ => return Ok(None),
            };
            let g = build_lins_mandel(&params)?;
            Some(group_result(route, h1(&heegaard_presentation(&g)?)))
        }
        Route::ClosedForm => h1_closed_form(t, spec).map(|cf| {
            let mut r = group_result(route, cf.group);
            r.formula = Some(cf.formula);
            r
        }),
        Route::Lens => lens_recognize(t, spec)
            .map(|(p, _)| group_result(route, AbelianGroup::from_i64(0, &[p]))),
        Route::Resultant => {
            if t.is_knot() {
                let order = order_via_resultant(&alexander_polynomial(t)?, nu);
                Some(RouteResult {
                    route,
                    group: None,
                    order,
                    formula: None,
                })
            } else {
                None
            }
        }
    };
    Ok(out)
}

/// Computes H_1 by every applicable route and checks that groups and orders
/// agree.
pub fn verify_consistency(t: &TwoBridge, spec: &CoveringSpec) -> Result<ConsistencyReport> {
    verify_routes(t, spec, &Route::ALL)
}

pub fn verify_routes(
    t: &TwoBridge,
    spec: &CoveringSpec,
    routes: &[Route],
) -> Result<ConsistencyReport> {
    let mut results = Vec::new();
    for &r in routes {
        if let Some(x) = route_h1(r, t, spec)? {
            results.push(x);
        }
    }
    let first_group = results.iter().find_map(|r| r.group.clone());
    let consistent = results.iter().all(|r| match (&r.group, &first_group) {
        (Some(g), Some(f)) => g == f,
        _ => true,
    }) && results.windows(2).all(|w| w[0].order == w[1].order);
    Ok(ConsistencyReport {
        link: *t,
        spec: spec.clone(),
        routes: results,
        consistent,
    })
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

    fn g(rank: usize, t: &[i64]) -> AbelianGroup {
        AbelianGroup::from_i64(rank, t)
    }

    #[test]
    fn canonical_factors() {
        assert_eq!(g(0, &[2, 3]), g(0, &[6]));
        assert_eq!(
            g(0, &[4, 6]).torsion,
            vec![BigInt::from(2), BigInt::from(12)]
        );
        assert_eq!(
            g(1, &[0, 1]),
            AbelianGroup {
                rank: 2,
                torsion: vec![]
            }
        );
        assert_eq!(g(0, &[-5]).to_string(), "Z_5");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(g(2, &[3]).to_string(), "Z^2 + Z_3");
        let s = serde_json::to_string(&g(0, &[4, 4])).unwrap();
        assert_eq!(s, r#"{"rank":0,"torsion":[4,4]}"#);
        assert_eq!(
            serde_json::from_str::<AbelianGroup>(&s).unwrap(),
            g(0, &[4, 4])
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            h1_closed_form(&b(9, 1), &spec(3, &[1])).unwrap().group,
            g(0, &[2, 2])
        );
        let w = h1_closed_form(&b(8, 3), &spec(6, &[1, 1])).unwrap();
        assert_eq!(w.group, g(0, &[3, 72]));
        assert_eq!(w.raw_factors, vec![1, 3, 72]);
        assert_eq!(
            h1_closed_form(&b(5, 2), &spec(3, &[1])).unwrap().group,
            g(0, &[4, 4])
        );
        assert!(h1_closed_form(&b(13, 5), &spec(3, &[1])).is_none());
        let (_, a2) = genus_one_sequences(-1, 3);
        assert_eq!(a2, BigInt::from(4));
    }

    #[test]
    fn resultant_orders() {
        let fig8 = LaurentPolynomial::from_coeffs(&[1, -3, 1]);
        assert_eq!(
            order_via_resultant(&fig8, 3),
            Order::Finite(BigInt::from(16))
        );
        let tref = LaurentPolynomial::from_coeffs(&[1, -1, 1]);
        assert_eq!(
            order_via_resultant(&tref, 5),
            Order::Finite(BigInt::from(1))
        );
        assert_eq!(order_via_resultant(&tref, 6), Order::Infinite);
        assert_eq!(
            order_via_resultant(&fig8, 1),
            Order::Finite(BigInt::from(1))
        );
    }

    #[test]
    fn consistency_examples() {
        let r = verify_consistency(&b(5, 3), &spec(3, &[1])).unwrap();
        assert!(r.consistent);
        assert_eq!(r.group(), Some(&g(0, &[4, 4])));
        assert_eq!(
            r.route(Route::Resultant).unwrap().order,
            Order::Finite(BigInt::from(16))
        );
        assert!(r.route(Route::Polyhedral).is_some() && r.route(Route::Takahashi).is_some());

        let r = verify_consistency(&b(8, 3), &spec(5, &[1, 2])).unwrap();
        assert!(r.consistent);
        assert_eq!(r.route(Route::Mu3).unwrap().group, Some(g(0, &[5, 5, 5])));
        assert_eq!(
            r.route(Route::ClosedForm).unwrap().group,
            Some(g(0, &[5, 5, 5]))
        );

        let r = verify_consistency(&b(2, 1), &spec(7, &[1, 3])).unwrap();
        assert!(r.consistent);
        assert_eq!(r.route(Route::Lens).unwrap().group, Some(g(0, &[7])));
        assert_eq!(r.route(Route::Mu3).unwrap().group, Some(g(0, &[7])));
    }

    #[test]
    fn poincare_sphere() {
        assert!(h1(&minkus_presentation(&b(3, 1), 5).unwrap()).is_trivial());
        assert!(h1(&minkus_presentation(&b(5, 1), 3).unwrap()).is_trivial());
    }

    #[test]
    fn lens_spaces() {
        for a in 2..=30 {
            for be in (1..2 * a).step_by(2).filter(|&x| gcd(a, x) == 1) {
                let grp = h1(&minkus_presentation(&b(a, be), 2).unwrap());
                assert_eq!(grp, g(0, &[a]), "{a}/{be}");
            }
        }
    }
}
