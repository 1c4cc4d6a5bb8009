//! Browser bindings: a root explorer under Barycentric refinement, an
//! operator inspector and a generator report. Every export takes and
//! returns plain strings (JSON or SVG).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use dsc_core::class_xd::Classifier;
use dsc_core::curvature::curvature_report;
use dsc_core::experiment::roots_experiment;
use dsc_core::generate::Kind;
use dsc_core::io::Input;
use dsc_core::operator::{ds_invariant_functionals, eigen_functionals, operator_matrix, perron_vector};
use dsc_core::report::analyze;

/// Refinements beyond this make the page sluggish without showing more.
pub const MAX_REFINEMENTS: usize = 8;
pub const MAX_DIMENSION: usize = 12;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `f_vector` is comma separated, e.g. `"20,30,12"`.
pub fn explore_roots(f_vector: &str, refinements: usize) -> Result<String, String> {
    if refinements > MAX_REFINEMENTS {
        return Err(format!("at most {MAX_REFINEMENTS} refinements"));
    }
    let f = f_vector
        .split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| format!("not an integer: {x:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if f.len() > MAX_DIMENSION + 1 {
        return Err(format!("dimension at most {MAX_DIMENSION}"));
    }
    let e = roots_experiment(&f, refinements, BTreeMap::new()).map_err(err)?;
    let mut v = serde_json::to_value(&e).map_err(err)?;
    v["svg"] = e.to_svg().into();
    Ok(v.to_string())
}

pub fn inspect_operator(dim: usize) -> Result<String, String> {
    if dim > MAX_DIMENSION {
        return Err(format!("dimension at most {MAX_DIMENSION}"));
    }
    let a = operator_matrix(dim).map_err(err)?;
    let v = json!({
        "matrix": a.matrix.iter().map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "functionals": eigen_functionals(dim).map_err(err)?,
        "invariants": ds_invariant_functionals(dim).map_err(err)?,
        "perron": perron_vector(dim).map_err(err)?.iter().map(BigInt::to_string).collect::<Vec<_>>(),
    });
    Ok(v.to_string())
}

/// `params` is whitespace separated, as on the command line.
pub fn generator_report(kind: &str, params: &str, seed: u64) -> Result<String, String> {
    let params: Vec<String> = params.split_whitespace().map(str::to_string).collect();
    let input: Input = Kind::parse(kind, &params).map_err(err)?.generate(seed).map_err(err)?.into();
    let c = input.complex();
    if c.len() > 20_000 {
        return Err(format!("{} simplices is too large for the page", c.len()));
    }
    let report = analyze(&input, &Classifier::default());
    let mut v: Value = serde_json::to_value(&report).map_err(err)?;
    if let Some(g) = input.whitney_graph() {
        v["curvature"] = curvature_report(&g).to_json();
    }
    v["f_function_text"] = report.f_function.to_string().into();
    Ok(v.to_string())
}

#[wasm_bindgen(js_name = exploreRoots)]
pub fn explore_roots_js(f_vector: &str, refinements: usize) -> Result<String, JsValue> {
    explore_roots(f_vector, refinements).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = inspectOperator)]
pub fn inspect_operator_js(dim: usize) -> Result<String, JsValue> {
    inspect_operator(dim).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = generatorReport)]
pub fn generator_report_js(kind: &str, params: &str, seed: u64) -> Result<String, JsValue> {
    generator_report(kind, params, seed).map_err(|e| JsValue::from_str(&e))
}
