//! Command-line front end. `run` parses arguments, dispatches a verb and
//! writes text or versioned JSON; it returns the process exit status.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{
    classify, genus_bounds, geometry, lens_recognize, CoveringClass, CoveringSpec, GenusBounds,
    GeometryType,
};
use crate::decomposition::{decompose, DecompositionResult};
use crate::error::{Error, Result};
use crate::gems::{
    build_generalized, gem_closed_form, genus_report, is_crystallization, is_gem,
    represented_covering, GLMParams, RepresentedManifold,
};
use crate::homology::{
    h1, verify_consistency, verify_routes, AbelianGroup, ConsistencyReport, Route,
};
use crate::laurent::LaurentPolynomial;
use crate::polyhedral::{build_minkus, quotient_counts, schema_presentation, CellComplexCounts};
use crate::presentations::{
    alexander_polynomial, minkus_presentation, mu3_presentation, takahashi_word,
};
use crate::scalar::gcd;
use crate::two_bridge::{
    cf_expand, even_cf_expand, is_genus_one, linking_number, normalize, EvenConwayForm, TwoBridge,
};
use crate::words::Presentation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Minkus,
    Mu3,
    Takahashi,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-covers",
    version,
    about = "Cyclic branched coverings of 2-bridge knots and links"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

fn int(s: &str) -> std::result::Result<i64, String> {
    let big: BigInt = s
        .trim()
        .parse()
        .map_err(|_| format!("{s:?} is not an integer"))?;
    big.to_i64().ok_or_else(|| format!("{s} is out of range"))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form, continued fractions and invariants of b(α, β)
    Info {
        #[arg(value_parser = int, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        beta: i64,
    },
    /// Covering type, geometry, genus bounds and lens space recognition
    Classify {
        #[arg(value_parser = int, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        beta: i64,
        #[arg(value_parser = int)]
        n: i64,
        /// Branching exponents, one per component
        #[arg(value_parser = int, allow_negative_numbers = true, num_args = 1..=2, required = true)]
        k: Vec<i64>,
    },
    /// Presentation of π_1 in word syntax
    Present {
        #[arg(value_parser = int, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        beta: i64,
        #[arg(value_parser = int)]
        n: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value = "minkus")]
        method: Method,
    },
    /// H_1 by every applicable route
    Homology {
        #[arg(value_parser = int, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        beta: i64,
        #[arg(value_parser = int)]
        n: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        k: Option<i64>,
        /// `all` or a comma-separated list of route names
        #[arg(long, default_value = "all")]
        routes: String,
    },
    /// Build the Lins–Mandel graph G(n,p,q,c) or G̃(n,p,q,c,c')
    Gem {
        #[arg(value_parser = int)]
        n: i64,
        #[arg(value_parser = int)]
        p: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        q: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        c: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        cprime: Option<i64>,
    },
    /// Face-paired ball schema of M_{n,k}(p/q)
    Polyhedral {
        #[arg(value_parser = int)]
        n: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        k: i64,
        #[arg(value_parser = int)]
        p: i64,
        #[arg(value_parser = int)]
        q: i64,
    },
    /// Decomposition of the singly-cyclic covering M_{n,k}(α/β)
    Decompose {
        #[arg(value_parser = int, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        beta: i64,
        #[arg(value_parser = int)]
        n: i64,
        #[arg(value_parser = int, allow_negative_numbers = true)]
        k: i64,
    },
    /// Cross-check every homology route over a parameter sweep
    Verify {
        #[arg(long, num_args = 2, value_names = ["ALPHA_MAX", "N_MAX"], value_parser = int)]
        sweep: Option<Vec<i64>>,
    },
}

/// JSON envelope carrying the schema version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub record: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoRecord {
    pub link: TwoBridge,
    pub kind: String,
    pub continued_fraction: Vec<i64>,
    pub even_form: EvenConwayForm,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub linking_number: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub genus_one: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alexander: Option<LaurentPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub link: TwoBridge,
    pub spec: CoveringSpec,
    pub class: CoveringClass,
    pub geometry: GeometryType,
    pub genus: GenusBounds,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lens: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentRecord {
    pub link: TwoBridge,
    pub method: Method,
    pub presentation: Presentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemRecord {
    pub params: GLMParams,
    pub vertices: usize,
    pub is_gem: bool,
    pub closed_form: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub crystallization: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub represents: Option<RepresentedManifold>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub genus: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralRecord {
    pub n: i64,
    pub k: i64,
    pub p: i64,
    pub q: i64,
    pub counts: CellComplexCounts,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub presentation: Option<Presentation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub homology: Option<AbelianGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub alpha_max: i64,
    pub n_max: i64,
    pub checked: usize,
    pub mismatches: Vec<ConsistencyReport>,
}

fn emit<T: Serialize>(out: &mut dyn Write, record: T) -> std::io::Result<()> {
    let v = Versioned {
        schema_version: SCHEMA_VERSION,
        record,
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string(&v).expect("records serialise")
    )
}

fn link(alpha: i64, beta: i64) -> Result<TwoBridge> {
    normalize(alpha, beta)
}

fn spec_for(t: &TwoBridge, n: i64, k: Option<i64>) -> Result<CoveringSpec> {
    let ks: Vec<i64> = match (t.is_knot(), k) {
        (true, None) => vec![1],
        (true, Some(k)) => vec![k],
        (false, None) => vec![1, 1],
        (false, Some(k)) => vec![1, k],
    };
    CoveringSpec::for_two_bridge(t, n, &ks)
}

fn parse_routes(s: &str) -> Result<Vec<Route>> {
    if s == "all" {
        return Ok(Route::ALL.to_vec());
    }
    s.split(',')
        .map(|name| {
            Route::ALL
                .into_iter()
                .find(|r| r.name() == name.trim())
                .ok_or_else(|| Error::Parse(format!("unknown route {name:?}")))
        })
        .collect()
}

fn usize_n(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::BadParams(format!("n = {n} must be positive")))
}

/// Every (link, spec) of the default sweep: all α ≤ alpha_max, every
/// canonical β, every n ≤ n_max and, for links, every exponent k.
pub fn sweep_tuples(alpha_max: i64, n_max: i64) -> Vec<(TwoBridge, CoveringSpec)> {
    let mut out = Vec::new();
    for a in 2..=alpha_max {
        for b in (1..2 * a).filter(|&b| gcd(a, b) == 1) {
            let Ok(t) = normalize(a, b) else { continue };
            if t.beta() != b {
                continue;
            }
            for n in 2..=n_max {
                let ks: Vec<Vec<i64>> = if t.is_knot() {
                    vec![vec![1]]
                } else {
                    (1..n).map(|k| vec![1, k]).collect()
                };
                for ks in ks {
                    if let Ok(spec) = CoveringSpec::for_two_bridge(&t, n, &ks) {
                        out.push((t, spec));
                    }
                }
            }
        }
    }
    out
}

/// Runs the consistency check on the sweep; reports in tuple order.
pub fn run_sweep(alpha_max: i64, n_max: i64) -> VerifyRecord {
    let tuples = sweep_tuples(alpha_max, n_max);
    let reports: Vec<std::result::Result<ConsistencyReport, (TwoBridge, CoveringSpec, Error)>> =
        tuples
            .par_iter()
            .map(|(t, s)| verify_consistency(t, s).map_err(|e| (*t, s.clone(), e)))
            .collect();
    let mut mismatches = Vec::new();
    for r in reports {
        match r {
            Ok(rep) if rep.consistent => {}
            Ok(rep) => mismatches.push(rep),
            Err((t, s, _)) => mismatches.push(ConsistencyReport {
                link: t,
                spec: s,
                routes: vec![],
                consistent: false,
            }),
        }
    }
    VerifyRecord {
        alpha_max,
        n_max,
        checked: tuples.len(),
        mismatches,
    }
}

fn dispatch(cmd: Command, format: Format, out: &mut dyn Write) -> Result<i32> {
    let json = format == Format::Json;
    let io = |e: std::io::Error| Error::Output(e.kind());
    match cmd {
        Command::Info { alpha, beta } => {
            let t = link(alpha, beta)?;
            let rec = InfoRecord {
                link: t,
                kind: if t.is_knot() { "knot" } else { "link" }.into(),
                continued_fraction: cf_expand(&t).entries().to_vec(),
                even_form: even_cf_expand(&t)?,
                linking_number: t.is_link().then(|| linking_number(&t)).transpose()?,
                genus_one: t.is_knot().then(|| is_genus_one(&t)).transpose()?,
                alexander: t.is_knot().then(|| alexander_polynomial(&t)).transpose()?,
            };
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                writeln!(out, "{} ({})", rec.link, rec.kind).map_err(io)?;
                writeln!(out, "continued fraction: {:?}", rec.continued_fraction).map_err(io)?;
                writeln!(out, "even form: {:?}", rec.even_form.entries()).map_err(io)?;
                if let Some(l) = rec.linking_number {
                    writeln!(out, "linking number: {l}").map_err(io)?;
                }
                if let Some(g) = rec.genus_one {
                    writeln!(out, "genus one: {g}").map_err(io)?;
                }
                if let Some(p) = &rec.alexander {
                    writeln!(out, "alexander: {p}").map_err(io)?;
                }
            }
        }
        Command::Classify { alpha, beta, n, k } => {
            let t = link(alpha, beta)?;
            let spec = CoveringSpec::for_two_bridge(&t, n, &k)?;
            let rec = ClassifyRecord {
                link: t,
                class: classify(&spec),
                geometry: geometry(&t, &spec),
                genus: genus_bounds(&t, &spec),
                lens: lens_recognize(&t, &spec),
                spec,
            };
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{} n={} exponents={:?}",
                    rec.link,
                    rec.spec.n(),
                    rec.spec.exponents()
                )
                .map_err(io)?;
                writeln!(out, "class: {:?}", rec.class).map_err(io)?;
                writeln!(out, "geometry: {:?}", rec.geometry).map_err(io)?;
                writeln!(out, "genus bounds: {:?}", rec.genus).map_err(io)?;
                if let Some((p, q)) = rec.lens {
                    writeln!(out, "lens space: L({p},{q})").map_err(io)?;
                }
            }
        }
        Command::Present {
            alpha,
            beta,
            n,
            k,
            method,
        } => {
            let t = link(alpha, beta)?;
            let nu = usize_n(n)?;
            spec_for(&t, n, k)?;
            let presentation = match method {
                Method::Minkus => {
                    if t.is_link() && k.is_some_and(|k| k.rem_euclid(n) != 1) {
                        return Err(Error::BadParams(
                            "the Minkus presentation is strictly cyclic (k = 1)".into(),
                        ));
                    }
                    minkus_presentation(&t.with_odd_beta(), nu)?
                }
                Method::Mu3 => mu3_presentation(&t, nu, k.unwrap_or(1))?,
                Method::Takahashi => {
                    t.require_knot()?;
                    takahashi_word(&even_cf_expand(&t)?, nu)?.to_presentation()
                }
            };
            let rec = PresentRecord {
                link: t,
                method,
                presentation,
            };
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                write!(out, "{}", rec.presentation.to_text()).map_err(io)?;
            }
        }
        Command::Homology {
            alpha,
            beta,
            n,
            k,
            routes,
        } => {
            let t = link(alpha, beta)?;
            let spec = spec_for(&t, n, k)?;
            let report = verify_routes(&t, &spec, &parse_routes(&routes)?)?;
            let code = if report.consistent { 0 } else { 1 };
            if json {
                emit(out, report).map_err(io)?;
            } else {
                for r in &report.routes {
                    match &r.group {
                        Some(g) => writeln!(out, "{:<12} {g}", r.route.name()),
                        None => writeln!(out, "{:<12} order {}", r.route.name(), r.order),
                    }
                    .map_err(io)?;
                }
                writeln!(out, "consistent: {}", report.consistent).map_err(io)?;
            }
            return Ok(code);
        }
        Command::Gem { n, p, q, c, cprime } => {
            let params = GLMParams::new(n, p, q, c, cprime.unwrap_or(1))?;
            let g = build_generalized(&params)?;
            let gem = is_gem(&g);
            let mut rec = GemRecord {
                params,
                vertices: g.vertex_count(),
                is_gem: gem,
                closed_form: gem_closed_form(&params),
                crystallization: None,
                represents: None,
                genus: None,
                diagnostic: None,
            };
            if gem {
                rec.crystallization = Some(is_crystallization(&g)?);
                rec.represents = Some(represented_covering(&params)?);
                rec.genus = Some(genus_report(&g)?);
            } else {
                rec.diagnostic = Some("not a manifold: some 3-residue is not a sphere".into());
            }
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                writeln!(out, "vertices: {}", rec.vertices).map_err(io)?;
                writeln!(out, "gem: {}", rec.is_gem).map_err(io)?;
                if let Some(d) = &rec.diagnostic {
                    writeln!(out, "{d}").map_err(io)?;
                }
                if let Some(c) = rec.crystallization {
                    writeln!(out, "crystallization: {c}").map_err(io)?;
                }
                if let Some(m) = &rec.represents {
                    writeln!(
                        out,
                        "represents: {}",
                        serde_json::to_string(m).expect("serialisable")
                    )
                    .map_err(io)?;
                }
                if let Some(gs) = rec.genus {
                    writeln!(out, "genus by colour order: {gs:?}").map_err(io)?;
                }
            }
        }
        Command::Polyhedral { n, k, p, q } => {
            let s = build_minkus(n, k, p, q)?;
            let counts = quotient_counts(&s);
            let presentation = (counts.chi == 0)
                .then(|| schema_presentation(&s))
                .transpose()?;
            let rec = PolyhedralRecord {
                n,
                k: s.k,
                p,
                q,
                counts,
                homology: presentation.as_ref().map(h1),
                presentation,
            };
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                let c = rec.counts;
                writeln!(
                    out,
                    "cells: {} {} {} {}  chi = {}",
                    c.t0, c.t1, c.t2, c.t3, c.chi
                )
                .map_err(io)?;
                if let Some(p) = &rec.presentation {
                    write!(out, "{}", p.to_text()).map_err(io)?;
                }
                if let Some(g) = &rec.homology {
                    writeln!(out, "H_1 = {g}").map_err(io)?;
                }
            }
        }
        Command::Decompose { alpha, beta, n, k } => {
            let t = link(alpha, beta)?;
            if n < 2 {
                return Err(Error::BadParams(format!("n = {n} must be at least 2")));
            }
            let rec: DecompositionResult = decompose(&t, n, k)?;
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                let l = &rec.intermediate;
                writeln!(
                    out,
                    "d = {}, degrees {} x {}",
                    rec.d, rec.upper_degree, rec.lower_degree
                )
                .map_err(io)?;
                writeln!(
                    out,
                    "intermediate L({}, {}/{}) with {} components, index {}",
                    l.d, l.alpha1, l.beta_simplified, l.components, l.index
                )
                .map_err(io)?;
            }
        }
        Command::Verify { sweep } => {
            let (amax, nmax) = match sweep.as_deref() {
                Some([a, n]) => (*a, *n),
                _ => (12, 8),
            };
            let rec = run_sweep(amax, nmax);
            let code = if rec.mismatches.is_empty() { 0 } else { 1 };
            if json {
                emit(out, rec).map_err(io)?;
            } else {
                for m in &rec.mismatches {
                    writeln!(
                        out,
                        "MISMATCH {} n={} exponents={:?}",
                        m.link,
                        m.spec.n(),
                        m.spec.exponents()
                    )
                    .map_err(io)?;
                    for r in &m.routes {
                        writeln!(
                            out,
                            "  {:<12} {}",
                            r.route.name(),
                            r.group
                                .as_ref()
                                .map_or(r.order.to_string(), |g| g.to_string())
                        )
                        .map_err(io)?;
                    }
                }
                writeln!(
                    out,
                    "checked {} coverings, {} mismatches",
                    rec.checked,
                    rec.mismatches.len()
                )
                .map_err(io)?;
            }
            return Ok(code);
        }
    }
    Ok(0)
}

/// Runs the command line `args` (program name first) and returns the exit
/// status: 2 for argument errors, 1 for a verification mismatch, else 0.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, cli.format, out) {
        Ok(code) => code,
        // the reader went away, as with `| head`
        Err(Error::Output(std::io::ErrorKind::BrokenPipe)) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
