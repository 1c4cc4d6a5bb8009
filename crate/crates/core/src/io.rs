//! JSON file formats.
//!
//! Complex: `{"facets": [[0, 1, 2], ...]}`. Graph:
//! `{"vertices": [0, 1, ...], "edges": [[0, 1], ...]}`. Graphs stand for
//! their Whitney complexes wherever a complex is expected.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, Vertex, DEFAULT_SIMPLEX_CAP};
use crate::error::{Error, Result};
use crate::generate::Generated;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub facets: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Complex(SimplicialComplex),
    Graph(Graph),
}

impl Input {
    pub fn complex(&self) -> SimplicialComplex {
        match self {
            Input::Complex(c) => c.clone(),
            Input::Graph(g) => g.whitney(),
        }
    }

    /// The graph when the input is one, or when the complex is the Whitney
    /// complex of its 1-skeleton.
    pub fn whitney_graph(&self) -> Option<Graph> {
        match self {
            Input::Graph(g) => Some(g.clone()),
            Input::Complex(c) => c.is_whitney().then(|| c.skeleton_graph()),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Input::Complex(c) => complex_to_json(c),
            Input::Graph(g) => graph_to_json(g),
        }
    }
}

impl From<Generated> for Input {
    fn from(g: Generated) -> Self {
        match g {
            Generated::Graph(g) => Input::Graph(g),
            Generated::Complex(c) => Input::Complex(c),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::invalid(e.to_string())
}

pub fn parse_input(text: &str) -> Result<Input> {
    parse_input_capped(text, DEFAULT_SIMPLEX_CAP)
}

pub fn parse_input_capped(text: &str, cap: u128) -> Result<Input> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::invalid("expected a JSON object with \"facets\" or \"vertices\"/\"edges\""))?;
    if obj.contains_key("facets") {
        let f: ComplexFile = serde_json::from_value(value).map_err(|e| Error::invalid(format!("complex file: {e}")))?;
        for (i, facet) in f.facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::invalid(format!("facets[{i}] is empty")));
            }
        }
        Ok(Input::Complex(SimplicialComplex::from_facets_capped(f.facets, cap)?))
    } else if obj.contains_key("vertices") || obj.contains_key("edges") {
        let f: GraphFile = serde_json::from_value(value).map_err(|e| Error::invalid(format!("graph file: {e}")))?;
        Ok(Input::Graph(Graph::try_new(f.vertices, f.edges.into_iter().map(|[a, b]| (a, b)))?))
    } else {
        Err(Error::invalid("expected a \"facets\" key (complex) or \"vertices\" and \"edges\" keys (graph)"))
    }
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    let facets = c.facets().into_iter().map(Vec::from).collect();
    serde_json::to_string(&ComplexFile { facets }).expect("serializable")
}

pub fn graph_to_json(g: &Graph) -> String {
    let f = GraphFile {
        vertices: g.vertices().collect(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string(&f).expect("serializable")
}
