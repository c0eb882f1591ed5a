//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::time::{Duration, Instant};

use cyclic_covers::covering::{geometry, CoveringSpec, GeometryType};
use cyclic_covers::decomposition::{build_monodromy, component_orbit_counts, cycles, decompose};
use cyclic_covers::gems::{
    build_generalized, build_lins_mandel, gem_closed_form, graph_isomorphic, heegaard_genus,
    is_crystallization, is_gem, lm_isomorphic_closed_form, GLMParams, LMParams, CYCLIC_ORDERS,
};
use cyclic_covers::homology::{
    even_alpha_formula, even_alpha_meridian, even_alpha_strictly, genus_one_formula, h1,
    odd_alpha_formula, order_via_resultant, whitehead_formula, Order,
};
use cyclic_covers::polyhedral::{build_minkus, quotient_counts, schema_presentation};
use cyclic_covers::presentations::{
    alexander_polynomial, minkus_presentation, mu3_presentation, takahashi_word,
};
use cyclic_covers::scalar::gcd;
use cyclic_covers::two_bridge::{even_cf_expand, EvenConwayForm};
use cyclic_covers::{normalize, AbelianGroup, FreeWord, TwoBridge};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn b(a: i64, be: i64) -> TwoBridge {
    normalize(a, be).expect("valid 2-bridge parameters")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit as f64, || {
        format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64())
    })
}

fn hantzsche_wendt() -> Outcome {
    let start = Instant::now();
    let want = AbelianGroup::from_i64(0, &[4, 4]);
    let t = b(5, 3);
    let minkus = h1(&minkus_presentation(&t, 3).map_err(|e| e.to_string())?);
    let form = even_cf_expand(&b(5, 2)).map_err(|e| e.to_string())?;
    let tak = h1(&takahashi_word(&form, 3)
        .map_err(|e| e.to_string())?
        .to_presentation());
    let schema = build_minkus(3, 1, 5, 3).map_err(|e| e.to_string())?;
    let poly = h1(&schema_presentation(&schema).map_err(|e| e.to_string())?);
    let closed = genus_one_formula(5, 3);
    let order = order_via_resultant(&alexander_polynomial(&t).map_err(|e| e.to_string())?, 3);
    for (name, g) in [
        ("minkus", &minkus),
        ("takahashi", &tak),
        ("polyhedral", &poly),
        ("genus-one", &closed),
    ] {
        ensure(*g == want, || format!("{name} route gives {g}"))?;
    }
    ensure(order == Order::Finite(BigInt::from(16)), || {
        format!("resultant order {order}")
    })?;
    within(start.elapsed(), 1)?;
    Ok(format!("four routes give {want}, resultant order 16"))
}

fn lens_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for a in 2..=30 {
        for be in (1..2 * a).step_by(2).filter(|&x| gcd(a, x) == 1) {
            let g = h1(&minkus_presentation(&b(a, be), 2).map_err(|e| e.to_string())?);
            ensure(g == AbelianGroup::from_i64(0, &[a]), || {
                format!("b({a},{be}) gives {g}")
            })?;
            count += 1;
        }
    }
    within(start.elapsed(), 5)?;
    Ok(format!("{count} lens spaces"))
}

fn whitehead_table() -> Outcome {
    let start = Instant::now();
    let mut classes = [false; 6];
    let mut count = 0;
    for n in 3..=24i64 {
        for k in (1..n).filter(|&k| gcd(n, k) == 1) {
            let g = h1(&mu3_presentation(&b(8, 3), n as usize, k).map_err(|e| e.to_string())?);
            let want = whitehead_formula(n).group;
            ensure(g == want, || {
                format!("n={n} k={k}: SNF {g}, formula {want}")
            })?;
            classes[(n % 6) as usize] = true;
            count += 1;
        }
    }
    ensure(classes.iter().all(|&c| c), || {
        "some residue class mod 6 not exercised".into()
    })?;
    within(start.elapsed(), 30)?;
    Ok(format!("{count} coverings, all classes mod 6"))
}

fn brieskorn_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for a in 2..=9i64 {
        for n in 2..=9i64 {
            let nu = n as usize;
            if a % 2 == 1 {
                let g = h1(&minkus_presentation(&b(a, 1), nu).map_err(|e| e.to_string())?);
                let cf = odd_alpha_formula(a, n).group;
                ensure(g == cf, || format!("b({a},1) n={n}: SNF {g}, formula {cf}"))?;
                count += 1;
                continue;
            }
            for k in 1..n {
                let g = h1(&mu3_presentation(&b(a, 1), nu, k).map_err(|e| e.to_string())?);
                let mut forms = vec![even_alpha_formula(a, n, k)];
                if gcd(n, k) == 1 {
                    forms.push(even_alpha_meridian(a, n, k));
                }
                if k == 1 {
                    forms.push(even_alpha_strictly(a, n));
                }
                for f in forms {
                    ensure(g == f.group, || {
                        format!("b({a},1) n={n} k={k}: SNF {g}, {} {}", f.formula, f.group)
                    })?;
                    count += 1;
                }
            }
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!("{count} formula evaluations"))
}

fn resultant_orders() -> Outcome {
    let mut finite = 0;
    let mut infinite = 0;
    for a in (3..=13).step_by(2) {
        for be in (1..a).filter(|&x| gcd(a, x) == 1) {
            let t = b(a, be).with_odd_beta();
            let delta = alexander_polynomial(&t).map_err(|e| e.to_string())?;
            for n in 1..=8usize {
                let g = h1(&minkus_presentation(&t, n).map_err(|e| e.to_string())?);
                let o = order_via_resultant(&delta, n);
                match g.order() {
                    Some(x) => {
                        ensure(o == Order::Finite(x.clone()), || {
                            format!("{t} n={n}: |H_1| = {x}, resultant {o}")
                        })?;
                        finite += 1;
                    }
                    None => {
                        ensure(o == Order::Infinite, || {
                            format!("{t} n={n}: H_1 infinite, resultant {o}")
                        })?;
                        infinite += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{finite} finite, {infinite} infinite"))
}

fn poincare_sphere() -> Outcome {
    for (a, n) in [(3, 5), (5, 3)] {
        let t = b(a, 1);
        let g = h1(&minkus_presentation(&t, n).map_err(|e| e.to_string())?);
        ensure(g.is_trivial(), || format!("M_{n}({a}/1) has H_1 = {g}"))?;
        let spec = CoveringSpec::new(n as i64, &[1]).map_err(|e| e.to_string())?;
        let geo = geometry(&t, &spec);
        ensure(geo == GeometryType::Spherical, || {
            format!("M_{n}({a}/1) labelled {geo:?}")
        })?;
    }
    Ok("both trivial and spherical".into())
}

fn gem_criteria() -> Outcome {
    let start = Instant::now();
    let (mut count, mut gems, mut crys) = (0, 0, 0);
    for n in 1..=6i64 {
        for p in 1..=6i64 {
            for q in (0..2 * p).filter(|&q| gcd(p, q) == 1) {
                for c in 0..n {
                    for cp in (0..n).filter(|&cp| gcd(gcd(n, c), cp) == 1) {
                        let params = GLMParams::new(n, p, q, c, cp).map_err(|e| e.to_string())?;
                        let g = build_generalized(&params).map_err(|e| e.to_string())?;
                        let oracle = is_gem(&g);
                        ensure(oracle == gem_closed_form(&params), || {
                            format!("{params:?}: oracle {oracle}")
                        })?;
                        count += 1;
                        if oracle {
                            gems += 1;
                            let cr = is_crystallization(&g).map_err(|e| e.to_string())?;
                            // G(n,p,q,c) has c' = 1, where this is the gcd(n,c) = 1 criterion
                            let want = gcd(n, c) == 1 && gcd(n, cp) == 1;
                            ensure(cr == want, || format!("{params:?}: crystallization {cr}"))?;
                            crys += cr as usize;
                        }
                    }
                }
            }
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{count} graphs, {gems} gems, {crys} crystallizations"
    ))
}

fn isomorphism_oracle() -> Outcome {
    let (mut pos, mut neg, mut skipped) = (0, 0, 0);
    for n in 3..=5i64 {
        for p in 3..=5i64 {
            let mut params = Vec::new();
            for q in (0..2 * p).filter(|&q| gcd(p, q) == 1) {
                for c in 0..n {
                    params.push(LMParams::new(n, p, q, c).map_err(|e| e.to_string())?);
                }
            }
            let graphs: Vec<_> = params
                .iter()
                .map(build_lins_mandel)
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for i in 0..params.len() {
                for j in i..params.len() {
                    let Ok(cf) = lm_isomorphic_closed_form(&params[i], &params[j]) else {
                        skipped += 1;
                        continue;
                    };
                    let brute = graph_isomorphic(&graphs[i], &graphs[j], true)
                        .map_err(|e| e.to_string())?;
                    ensure(brute == cf, || {
                        format!(
                            "{:?} vs {:?}: brute {brute}, closed form {cf}",
                            params[i], params[j]
                        )
                    })?;
                    if cf {
                        pos += 1;
                    } else {
                        neg += 1;
                    }
                }
            }
        }
    }
    ensure(pos > 0 && neg > 0, || {
        "need positive and negative instances".into()
    })?;
    Ok(format!("{pos} isomorphic and {neg} non-isomorphic pairs agree; {skipped} pairs outside the closed form"))
}

fn verbatim_words() -> Outcome {
    let word = |s: &str| s.parse::<FreeWord>().map_err(|e| e.to_string());
    let fig8 = EvenConwayForm::from_qs(vec![-1], vec![1]).map_err(|e| e.to_string())?;
    let w = takahashi_word(&fig8, 5).map_err(|e| e.to_string())?.w;
    let want = word("x3^-1 x2^2 x1^-1 x2")?;
    ensure(w.letters() == want.letters(), || {
        format!("figure-eight word {w}")
    })?;
    let k812 = EvenConwayForm::from_qs(vec![-1, -1], vec![1, 1]).map_err(|e| e.to_string())?;
    let w = takahashi_word(&k812, 7).map_err(|e| e.to_string())?.w;
    let want = word(
        "x3^-1 x2 x3^-2 x4 x3^-1 x2 x3^-1 x2^2 x1^-1 x2 x3^-1 x2^2 x1^-1 \
         x2 x1^-1 x0 x1^-2 x2 x1^-1 x2 x3^-1 x2^2 x1^-1 x2",
    )?;
    ensure(w.reduce() == want.reduce(), || {
        format!("8_12 word reduces to {}", w.reduce())
    })?;
    Ok("figure-eight letter for letter, 8_12 after free reduction".into())
}

fn polyhedral_manifolds() -> Outcome {
    let (mut count, mut compared) = (0, 0);
    for n in 2..=6i64 {
        for p in 2..=9i64 {
            for q in (1..p).filter(|&q| gcd(p, q) == 1) {
                for k in (1..n).filter(|&k| p % 2 == 0 || gcd(n, k) == 1) {
                    let s = build_minkus(n, k, p, q).map_err(|e| e.to_string())?;
                    let c = quotient_counts(&s);
                    ensure(c.chi == 0, || format!("({n},{k},{p},{q}): chi = {}", c.chi))?;
                    count += 1;
                    if k == 1 {
                        let t = b(p, q);
                        let g = h1(&schema_presentation(&s).map_err(|e| e.to_string())?);
                        let m = h1(&minkus_presentation(&t.with_odd_beta(), n as usize)
                            .map_err(|e| e.to_string())?);
                        ensure(g == m, || {
                            format!("({n},1,{p},{q}): schema {g}, minkus {m}")
                        })?;
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{count} schemata with chi = 0, {compared} compared with the Minkus route"
    ))
}

fn heegaard_genus_check() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut order_0213_exact = true;
    for n in 2..=6i64 {
        for p in 1..=5i64 {
            for q in (0..2 * p).filter(|&q| gcd(p, q) == 1) {
                for c in (1..n).filter(|&c| gcd(n, c) == 1) {
                    let params = LMParams::new(n, p, q, c).map_err(|e| e.to_string())?;
                    let g = build_lins_mandel(&params).map_err(|e| e.to_string())?;
                    if !is_gem(&g) {
                        continue;
                    }
                    count += 1;
                    let genera: Vec<i64> = CYCLIC_ORDERS
                        .iter()
                        .map(|&o| heegaard_genus(&g, o))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    order_0213_exact &= genera[1] == n - 1;
                    if genera.iter().min() != Some(&(n - 1)) {
                        failures.push((n, p, q, c, genera));
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        return Ok(format!("{count} crystallizations"));
    }
    let max_p = failures.iter().map(|f| f.1).max().unwrap_or(0);
    let (n, p, q, c, g) = &failures[0];
    Err(format!(
        "{} of {count} crystallizations have minimum genus below n-1, all with p <= {max_p} \
         (S^3 and lens spaces, which embed in lower genus); first: G({n},{p},{q},{c}) genera {g:?}; \
         order (0,2,1,3) gives exactly n-1 in every case: {order_0213_exact}",
        failures.len()
    ))
}

fn decomposition_check() -> Outcome {
    for d in 1..=10 {
        let r = decompose(&b(8, 3), 2 * d, d).map_err(|e| e.to_string())?;
        ensure(r.intermediate.components == d + 1, || {
            format!("d={d}: {} components", r.intermediate.components)
        })?;
    }
    let mut count = 0;
    for n in 2..=50i64 {
        for k in 1..n {
            let r = decompose(&b(8, 3), n, k).map_err(|e| e.to_string())?;
            ensure(r.upper_degree * r.lower_degree == n, || {
                format!("n={n} k={k}: degrees")
            })?;
            let m = build_monodromy(n as usize, k);
            let counts = component_orbit_counts(&m);
            ensure(counts.components[1] as i64 == gcd(n, k), || {
                format!("n={n} k={k}: orbit count")
            })?;
            ensure(cycles(&m.images[1]).len() as i64 == r.d, || {
                format!("n={n} k={k}: d")
            })?;
            ensure(counts.indices[1] as i64 == r.intermediate.index, || {
                format!("n={n} k={k}: index")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (n, k) pairs"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("Hantzsche-Wendt cross-check", hantzsche_wendt),
        ("lens sweep", lens_sweep),
        ("Whitehead table", whitehead_table),
        ("Brieskorn sweep", brieskorn_sweep),
        ("resultant order", resultant_orders),
        ("Poincare sphere", poincare_sphere),
        ("gem criteria", gem_criteria),
        ("isomorphism oracle", isomorphism_oracle),
        ("verbatim words", verbatim_words),
        ("polyhedral manifoldness", polyhedral_manifolds),
        ("Heegaard genus", heegaard_genus_check),
        ("decomposition", decomposition_check),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
