//! One-shot summary of a complex: counts, symmetry, curvature-side
//! verdicts and roots.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::class_xd::{ClassWitness, Classifier};
use crate::curvature::ds_flat;
use crate::io::Input;
use crate::poly::{ds_symmetric, h_vector, reflection_sign, FPolynomial, HVector, ReflectionSign};
use crate::rational::q;
use crate::roots::{root_pairing_check, roots, Pairing, RootSet, DEFAULT_TOLERANCE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub f_vector: Vec<u64>,
    pub f_function: FPolynomial,
    pub h_vector: Option<HVector>,
    pub dimension: i64,
    pub euler_characteristic: i64,
    pub ds_symmetric: bool,
    /// Which sign of `f(-1-t) = ±f(t)` holds, whatever `d` asks for.
    pub reflection: ReflectionSign,
    /// Graph verdicts, present only for Whitney inputs.
    pub whitney: bool,
    pub ds_flat: Option<bool>,
    pub class_xd: Option<ClassWitness>,
    pub roots: Option<RootSet>,
    pub pairing: Option<Pairing>,
    pub notes: Vec<String>,
}

pub fn analyze(input: &Input, classifier: &Classifier) -> AnalysisReport {
    let c = input.complex();
    let f = FPolynomial::f_function(&c);
    let d = c.dimension();
    let mut notes = Vec::new();
    let chi = c.euler_characteristic();
    // f(-1) = 1 - chi
    if q(1) - f.evaluate(&q(-1)) != q(chi) {
        notes.push("inconsistent: chi from f(-1) differs from the alternating sum".into());
    }
    let graph = input.whitney_graph();
    let class_xd = graph.as_ref().and_then(|g| match classifier.in_class_xd(g, d) {
        Ok(w) => Some(w),
        Err(e) => {
            notes.push(format!("class check skipped: {e}"));
            None
        }
    });
    let (root_set, pairing) = if d >= 0 {
        match roots(&f, DEFAULT_TOLERANCE) {
            Ok(r) => {
                let p = root_pairing_check(&r, d);
                (Some(r), Some(p))
            }
            Err(e) => {
                notes.push(format!("roots: {e}"));
                (None, None)
            }
        }
    } else {
        (None, None)
    };
    if graph.is_none() {
        notes.push("not a Whitney complex: graph-based verdicts omitted".into());
    }
    AnalysisReport {
        f_vector: c.f_vector().to_vec(),
        h_vector: h_vector(&f, d).ok(),
        dimension: d,
        euler_characteristic: chi,
        ds_symmetric: ds_symmetric(&f, d),
        reflection: reflection_sign(&f),
        whitney: graph.is_some(),
        ds_flat: graph.as_ref().map(ds_flat),
        class_xd,
        roots: root_set,
        pairing,
        f_function: f,
        notes,
    }
}

impl AnalysisReport {
    /// `key,value` rows.
    pub fn to_csv(&self) -> String {
        let join = |v: &[String]| v.join(" ");
        let opt = |b: Option<bool>| b.map_or(String::new(), |b| b.to_string());
        let mut rows: Vec<(&str, String)> = vec![
            ("f_vector", join(&self.f_vector.iter().map(u64::to_string).collect::<Vec<_>>())),
            ("f_function", self.f_function.to_string()),
            (
                "h_vector",
                self.h_vector
                    .as_ref()
                    .map_or(String::new(), |h| join(&h.entries.iter().map(BigInt::to_string).collect::<Vec<_>>())),
            ),
            ("dimension", self.dimension.to_string()),
            ("euler_characteristic", self.euler_characteristic.to_string()),
            ("ds_symmetric", self.ds_symmetric.to_string()),
            ("reflection", format!("{:?}", self.reflection).to_lowercase()),
            ("whitney", self.whitney.to_string()),
            ("ds_flat", opt(self.ds_flat)),
            ("class_xd", opt(self.class_xd.as_ref().map(|w| w.verdict))),
            ("roots_all_real", opt(self.roots.as_ref().map(RootSet::all_real))),
            ("roots_paired", opt(self.pairing.map(|p| p.symmetric))),
        ];
        if let Some(r) = &self.roots {
            rows.push(("root_residual", r.residual_bound.to_string()));
        }
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{icosahedron, moebius_complex};
    use crate::io::parse_input;

    fn ints(h: &HVector) -> Vec<i64> {
        h.entries.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn published_examples() {
        let c = Classifier::default();
        let r = analyze(&Input::Graph(icosahedron()), &c);
        assert_eq!(ints(r.h_vector.as_ref().unwrap()), vec![1, 9, 9, 1]);
        assert!(r.ds_symmetric && r.class_xd.as_ref().unwrap().verdict);
        assert_eq!(r.ds_flat, Some(true));
        let r = analyze(&Input::Complex(moebius_complex()), &c);
        assert_eq!(ints(r.h_vector.as_ref().unwrap()), vec![-1, 3, 5, 1]);
        assert!(!r.ds_symmetric);
        let r = analyze(&parse_input(r#"{"facets": []}"#).unwrap(), &c);
        assert_eq!((r.dimension, r.euler_characteristic), (-1, 0));
        assert!(r.to_csv().starts_with("key,value\nf_vector,\n"));
    }
}
