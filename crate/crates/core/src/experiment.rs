//! Experiment harnesses: real-rootedness of f-functions under repeated
//! Barycentric refinement, and the frequency of the Dehn-Sommerville
//! symmetry among random and exhaustively enumerated graphs.
//!
//! Both are deterministic functions of their parameters; trials may run in
//! parallel but results are collected in trial order.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::complex::Vertex;
use crate::error::{Error, Result};
use crate::generate::erdos_renyi_stream;
use crate::graph::Graph;
use crate::operator::operator_matrix;
use crate::par;
use crate::poly::{ds_symmetric, FPolynomial};
use crate::rational::serde_bigint_vec;
use crate::roots::{root_pairing_check, roots, Root, DEFAULT_TOLERANCE};

/// Largest `n` for exhaustive enumeration (2^21 labelled graphs at n = 7).
pub const EXHAUSTIVE_MAX_N: usize = 7;
pub const DEFAULT_SEARCH_MAX_N: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementStep {
    pub step: usize,
    #[serde(with = "serde_bigint_vec")]
    pub f_vector: Vec<BigInt>,
    pub roots: Vec<Root>,
    pub all_real: bool,
    pub in_unit_interval: bool,
    pub paired: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootsExperiment {
    pub parameters: BTreeMap<String, String>,
    pub steps: Vec<RefinementStep>,
    /// First step at which every root is real, if any.
    pub first_all_real: Option<usize>,
}

/// Roots of `f_{G_k}` for `k = 0..=refinements`, the f-vectors coming from
/// the refinement operator applied to `f`.
pub fn roots_experiment(f: &[BigInt], refinements: usize, parameters: BTreeMap<String, String>) -> Result<RootsExperiment> {
    if f.is_empty() {
        return Err(Error::invalid("roots experiment needs a non-empty f-vector"));
    }
    let d = f.len() - 1;
    let a = operator_matrix(d)?;
    let mut seq = vec![f.to_vec()];
    for _ in 0..refinements {
        let next = a.apply(seq.last().expect("non-empty"))?;
        seq.push(next);
    }
    let steps = par::map(&seq.iter().enumerate().collect::<Vec<_>>(), |&(k, fv)| {
        let p = FPolynomial::from_big_f_vector(fv);
        let r = roots(&p, DEFAULT_TOLERANCE)?;
        Ok(RefinementStep {
            step: k,
            f_vector: fv.clone(),
            all_real: r.all_real(),
            in_unit_interval: r.all_in_unit_interval(),
            paired: root_pairing_check(&r, d as i64).symmetric,
            residual: r.residual_bound,
            roots: r.roots,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let first_all_real = steps.iter().find(|s| s.all_real).map(|s| s.step);
    Ok(RootsExperiment { parameters, steps, first_all_real })
}

impl RootsExperiment {
    /// One row per root.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,f_vector,root,re,im,real,all_real,in_unit_interval,paired,residual\n");
        for s in &self.steps {
            let fv: Vec<String> = s.f_vector.iter().map(BigInt::to_string).collect();
            for (i, r) in s.roots.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    s.step,
                    fv.join(" "),
                    i,
                    r.re,
                    r.im,
                    r.is_real(),
                    s.all_real,
                    s.in_unit_interval,
                    s.paired,
                    s.residual
                )
                .expect("string write");
            }
        }
        out
    }

    /// Root loci in the complex plane, one colour per refinement step, with
    /// the mirror line `Re = -1/2`.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 480.0;
        const PAD: f64 = 40.0;
        let pts: Vec<(usize, &Root)> = self.steps.iter().flat_map(|s| s.roots.iter().map(move |r| (s.step, r))).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (-1.5f64, 0.5f64, -1.0f64, 1.0f64);
        for (_, r) in &pts {
            x0 = x0.min(r.re);
            x1 = x1.max(r.re);
            y0 = y0.min(r.im);
            y1 = y1.max(r.im);
        }
        // keep the mirror line centred
        let half = (x1 + 0.5).max(-0.5 - x0);
        let (x0, x1) = (-0.5 - half, -0.5 + half);
        let ymax = y1.max(-y0);
        let (y0, y1) = (-ymax, ymax);
        let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
        let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#).unwrap();
        writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#, sx(x0), sy(0.0), sx(x1), sy(0.0)).unwrap();
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#, sx(0.0), sy(y0), sx(0.0), sy(y1)).unwrap();
        writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="red" stroke-dasharray="6,4" stroke-width="1"/>"#,
            sx(-0.5),
            sy(y0),
            sy(y1)
        )
        .unwrap();
        writeln!(out, r#"<text x="{}" y="{}" font-size="12" fill="red">Re = -1/2</text>"#, sx(-0.5) + 4.0, PAD - 8.0).unwrap();
        writeln!(out, r#"<text x="{}" y="{}" font-size="12">-1</text>"#, sx(-1.0) - 6.0, sy(0.0) + 16.0).unwrap();
        let n = self.steps.len().max(1);
        for (step, r) in pts {
            let hue = 240.0 * step as f64 / n as f64;
            writeln!(
                out,
                r#"<circle cx="{:.3}" cy="{:.3}" r="3.5" fill="hsl({hue:.0},70%,45%)"><title>step {step}: {} {:+}i</title></circle>"#,
                sx(r.re),
                sy(r.im),
                r.re,
                r.im
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    pub trial: u64,
    pub f_vector: Vec<u64>,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Index into the record's list of isomorphism classes.
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub mode: String,
    pub seed: Option<u64>,
    pub parameters: BTreeMap<String, String>,
    pub trials: u64,
    pub hits: Vec<SearchHit>,
    /// Canonical edge lists of the distinct hit classes, in order of first
    /// appearance.
    pub classes: Vec<Vec<(Vertex, Vertex)>>,
    pub hit_rate: f64,
}

fn is_ds(g: &Graph) -> Option<Vec<u64>> {
    let f = g.clique_f_vector();
    let p = FPolynomial::from_f_vector(&f);
    ds_symmetric(&p, f.len() as i64 - 1).then_some(f)
}

fn record(mode: &str, seed: Option<u64>, parameters: BTreeMap<String, String>, trials: u64, raw: Vec<(u64, Graph, Vec<u64>)>) -> ExperimentRecord {
    let mut index: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut hits = Vec::new();
    for (trial, g, f) in raw {
        let form = canonical_form(&g);
        let mut key = vec![u64::from(form.canonical), form.vertices as u64];
        key.extend(&form.rows);
        let next = classes.len();
        let class = *index.entry(key).or_insert(next);
        if class == next {
            classes.push(form.graph().edges());
        }
        hits.push(SearchHit { trial, f_vector: f, edges: g.edges(), class });
    }
    let hit_rate = if trials == 0 { 0.0 } else { hits.len() as f64 / trials as f64 };
    ExperimentRecord { mode: mode.into(), seed, parameters, trials, hits, classes, hit_rate }
}

/// `trials` Erdős–Rényi samples `G(n, p)`, trial `i` drawn from stream `i`.
pub fn search_sampling(n: usize, p: f64, trials: u64, seed: u64, max_n: usize) -> Result<ExperimentRecord> {
    if n > max_n {
        return Err(Error::CapExceeded { what: "search vertices", required: n as u128, cap: max_n as u128 });
    }
    let ids: Vec<u64> = (0..trials).collect();
    let raw = par::map(&ids, |&i| {
        let g = erdos_renyi_stream(n, p, seed, i)?;
        Ok(is_ds(&g).map(|f| (i, g, f)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?
    .into_iter()
    .flatten()
    .collect();
    let parameters = BTreeMap::from([("n".into(), n.to_string()), ("p".into(), p.to_string())]);
    Ok(record("sampling", Some(seed), parameters, trials, raw))
}

/// Every labelled graph on `n` vertices; hits are reported with their
/// isomorphism classes.
pub fn search_exhaustive(n: usize) -> Result<ExperimentRecord> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::CapExceeded { what: "exhaustive search vertices", required: n as u128, cap: EXHAUSTIVE_MAX_N as u128 });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex).flat_map(|a| (a + 1..n as Vertex).map(move |b| (a, b))).collect();
    let total = 1u64 << pairs.len();
    let chunks: Vec<u64> = (0..total.div_ceil(4096)).collect();
    let raw: Vec<(u64, Graph, Vec<u64>)> = par::map(&chunks, |&c| {
        let mut out = Vec::new();
        for mask in c * 4096..((c + 1) * 4096).min(total) {
            let g = Graph::from_parts(
                0..n as Vertex,
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            );
            if let Some(f) = is_ds(&g) {
                out.push((mask, g, f));
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();
    let parameters = BTreeMap::from([("n".into(), n.to_string())]);
    Ok(record("exhaustive", None, parameters, total, raw))
}

impl ExperimentRecord {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,class,f_vector,edges\n");
        for h in &self.hits {
            let f: Vec<String> = h.f_vector.iter().map(u64::to_string).collect();
            let e: Vec<String> = h.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(out, "{},{},{},{}", h.trial, h.class, f.join(" "), e.join(" ")).expect("string write");
        }
        out
    }
}
