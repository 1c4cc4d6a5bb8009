//! Graph and complex generators, including the named fixtures used across
//! the test suites.
//!
//! Randomized generators take an explicit seed and draw from ChaCha8
//! (`rand_chacha`) seeded with `seed_from_u64`, so output is a pure function
//! of the parameters.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Seeded generator for trial `stream` of an experiment with the given seed.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// The d-dimensional cross-polytope: the (d+1)-fold join of two points.
/// Vertices `2i` and `2i+1` are the antipodal pair `i`.
pub fn cross_polytope(d: usize) -> Result<Graph> {
    if d > 30 {
        return Err(Error::invalid("cross-polytope dimension must be at most 30"));
    }
    let n = 2 * (d as Vertex + 1);
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for a in 0..n {
        for b in a + 1..n {
            if a / 2 != b / 2 {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    let n = n as Vertex;
    Ok(Graph::from_edges((0..n).map(|i| (i, (i + 1) % n))))
}

pub fn complete(n: usize) -> Graph {
    let n = n as Vertex;
    let mut g = Graph::from_parts(0..n, []);
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b);
        }
    }
    g
}

/// Star with `n` vertices: center 0 joined to `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("a star needs at least one vertex"));
    }
    Ok(Graph::from_parts([0], (1..n as Vertex).map(|i| (0, i))))
}

/// Wheel with `n` vertices: hub 0 joined to the rim cycle `1..n`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::invalid("a wheel needs at least 4 vertices"));
    }
    let rim = (n - 1) as Vertex;
    let mut g = Graph::from_edges((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    for i in 1..=rim {
        g.add_edge(0, i);
    }
    Ok(g)
}

/// G(n, p): each pair `(i, j)`, `i < j`, visited in lexicographic order, is
/// an edge when the next uniform draw in `[0, 1)` is below `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    erdos_renyi_stream(n, p, seed, 0)
}

pub fn erdos_renyi_stream(n: usize, p: f64, seed: u64, stream: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut r = rng(seed, stream);
    let n = n as Vertex;
    let mut g = Graph::from_parts(0..n, []);
    for a in 0..n {
        for b in a + 1..n {
            if r.gen::<f64>() < p {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// Cross-polytope of dimension `d` after `steps` edge refinements, each at
/// an edge drawn uniformly from the sorted edge list.
pub fn random_sphere(d: usize, steps: usize, seed: u64) -> Result<Graph> {
    random_edge_refinements(&cross_polytope(d)?, steps, seed)
}

/// `steps` edge refinements, each at an edge drawn uniformly from the
/// sorted edge list.
pub fn random_edge_refinements(g: &Graph, steps: usize, seed: u64) -> Result<Graph> {
    let mut g = g.clone();
    let mut r = rng(seed, 0);
    for _ in 0..steps {
        let edges = g.edges();
        if edges.is_empty() {
            return Err(Error::invalid("no edge left to refine"));
        }
        let (a, b) = edges[r.gen_range(0..edges.len())];
        g = g.edge_refine(a, b)?.0;
    }
    Ok(g)
}

/// Closure of `facets` random vertex sets on `0..n`, each of a uniform size
/// in `1..=dim+1`. Not a Whitney complex in general.
pub fn random_complex(n: usize, facets: usize, dim: usize, seed: u64) -> Result<SimplicialComplex> {
    if n == 0 || dim >= n {
        return Err(Error::invalid("random complex needs n >= 1 and dim < n"));
    }
    let mut r = rng(seed, 0);
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    let sets: Vec<Vec<Vertex>> = (0..facets)
        .map(|_| {
            let k = r.gen_range(1..=dim + 1);
            rand::seq::index::sample(&mut r, n, k).into_iter().map(|i| all[i]).collect()
        })
        .collect();
    SimplicialComplex::from_facets(sets)
}

/// The icosahedron as 20 triangles on the labels `1..=12`.
pub const ICOSAHEDRON_TRIANGLES: [[Vertex; 3]; 20] = [
    [1, 2, 5],
    [1, 2, 6],
    [1, 3, 4],
    [1, 3, 5],
    [1, 4, 6],
    [2, 5, 9],
    [2, 6, 10],
    [2, 9, 10],
    [3, 4, 8],
    [3, 5, 11],
    [3, 8, 11],
    [4, 6, 12],
    [4, 8, 12],
    [5, 9, 11],
    [6, 10, 12],
    [7, 8, 11],
    [7, 8, 12],
    [7, 9, 10],
    [7, 9, 11],
    [7, 10, 12],
];

/// Triangulated Moebius strip on the labels `1..=8`.
pub const MOEBIUS_TRIANGLES: [[Vertex; 3]; 8] = [
    [1, 2, 5],
    [1, 5, 8],
    [2, 3, 6],
    [2, 5, 6],
    [3, 4, 7],
    [3, 6, 7],
    [4, 5, 8],
    [4, 7, 8],
];

/// Six-vertex projective plane. Not a Whitney complex: its 1-skeleton is K6.
pub const PROJECTIVE_PLANE_TRIANGLES: [[Vertex; 3]; 10] = [
    [1, 2, 3],
    [1, 3, 4],
    [1, 4, 5],
    [1, 5, 6],
    [1, 2, 6],
    [2, 3, 5],
    [3, 4, 6],
    [2, 4, 5],
    [3, 5, 6],
    [2, 4, 6],
];

pub fn icosahedron_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets(ICOSAHEDRON_TRIANGLES.iter().map(|t| t.to_vec())).expect("fixture")
}

pub fn icosahedron() -> Graph {
    icosahedron_complex().skeleton_graph()
}

pub fn moebius_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets(MOEBIUS_TRIANGLES.iter().map(|t| t.to_vec())).expect("fixture")
}

pub fn moebius() -> Graph {
    moebius_complex().skeleton_graph()
}

pub fn projective_plane_complex() -> SimplicialComplex {
    SimplicialComplex::from_facets(PROJECTIVE_PLANE_TRIANGLES.iter().map(|t| t.to_vec()))
        .expect("fixture")
}

/// Cycle `C_n` with a pendant vertex attached to each of the first `hairs`
/// cycle vertices. Always has as many edges as vertices.
pub fn sun(cycle_len: usize, hairs: usize) -> Result<Graph> {
    if hairs > cycle_len {
        return Err(Error::invalid("more hairs than cycle vertices"));
    }
    let mut g = cycle(cycle_len)?;
    for i in 0..hairs as Vertex {
        g.add_edge(i, cycle_len as Vertex + i);
    }
    Ok(g)
}

/// Sun graph with f-function `1 + 29t + 29t^2`.
pub fn sun29() -> Graph {
    sun(15, 14).expect("fixture")
}

/// Icosahedron with a pendant vertex at each of the vertices `1..=8`.
/// f-function `1 + 20t + 38t^2 + 20t^3`.
pub fn hair_sphere() -> Graph {
    let mut g = icosahedron();
    for v in 1..=8 {
        g.add_edge(v, 12 + v);
    }
    g
}

/// Glues `b` to `a` by identifying vertex `vb` of `b` with vertex `va` of `a`.
pub fn wedge(a: &Graph, va: Vertex, b: &Graph, vb: Vertex) -> Result<Graph> {
    if !a.contains_vertex(va) || !b.contains_vertex(vb) {
        return Err(Error::invalid("wedge point is not a vertex"));
    }
    let offset = a.max_vertex().map_or(0, |m| m + 1);
    let map = |v: Vertex| if v == vb { va } else { v + offset };
    let mut g = a.clone();
    for v in b.vertices() {
        g.add_vertex(map(v));
    }
    for (x, y) in b.edges() {
        g.add_edge(map(x), map(y));
    }
    Ok(g)
}

/// Octahedron and 4-dimensional cross-polytope glued at one vertex (label 0).
pub fn octahedron_wedge_four_sphere() -> Graph {
    wedge(&cross_polytope(2).expect("fixture"), 0, &cross_polytope(4).expect("fixture"), 0)
        .expect("fixture")
}

/// A nine-vertex graph with f-function `1 + 9t + 21t^2 + 14t^3`: it has the
/// Dehn-Sommerville symmetry although several unit spheres do not.
pub fn ds_non_flat() -> Graph {
    Graph::from_edges([
        (0, 6), (0, 7), (1, 2), (1, 6), (1, 7), (1, 8), (2, 3), (2, 5), (2, 6), (2, 8), (3, 4),
        (3, 6), (3, 7), (3, 8), (4, 5), (4, 6), (4, 8), (5, 6), (5, 7), (6, 7), (7, 8),
    ])
}

/// f-vectors of CW spheres that are not simplicial complexes.
pub const CUBE_F_VECTOR: [u64; 3] = [8, 12, 6];
pub const DODECAHEDRON_F_VECTOR: [u64; 3] = [20, 30, 12];

/// What a generator produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Graph(Graph),
    Complex(SimplicialComplex),
}

impl Generated {
    pub fn complex(&self) -> SimplicialComplex {
        match self {
            Generated::Graph(g) => g.whitney(),
            Generated::Complex(c) => c.clone(),
        }
    }
}

/// Generator selection, parsed from a name and positional parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    CrossPolytope(usize),
    Cycle(usize),
    Complete(usize),
    Icosahedron,
    Moebius,
    Star(usize),
    Wheel(usize),
    ErdosRenyi { n: usize, p: f64 },
    RandomSphere { d: usize, steps: usize },
    Sun { cycle: usize, hairs: usize },
    HairSphere,
    ProjectivePlane,
    RandomComplex { n: usize, facets: usize, dim: usize },
}

impl Kind {
    pub fn parse(name: &str, params: &[String]) -> Result<Kind> {
        let int = |i: usize| -> Result<usize> {
            params
                .get(i)
                .ok_or_else(|| Error::invalid(format!("{name}: missing parameter {}", i + 1)))?
                .parse::<usize>()
                .map_err(|e| Error::invalid(format!("{name}: parameter {}: {e}", i + 1)))
        };
        let want = |n: usize| -> Result<()> {
            if params.len() != n {
                return Err(Error::invalid(format!(
                    "{name}: expected {n} parameters, got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        let kind = match name {
            "cross_polytope" => {
                want(1)?;
                Kind::CrossPolytope(int(0)?)
            }
            "cycle" => {
                want(1)?;
                Kind::Cycle(int(0)?)
            }
            "complete" => {
                want(1)?;
                Kind::Complete(int(0)?)
            }
            "icosahedron" => {
                want(0)?;
                Kind::Icosahedron
            }
            "moebius" => {
                want(0)?;
                Kind::Moebius
            }
            "star" => {
                want(1)?;
                Kind::Star(int(0)?)
            }
            "wheel" => {
                want(1)?;
                Kind::Wheel(int(0)?)
            }
            "erdos_renyi" => {
                want(2)?;
                let p = params[1]
                    .parse::<f64>()
                    .map_err(|e| Error::invalid(format!("erdos_renyi: p: {e}")))?;
                Kind::ErdosRenyi { n: int(0)?, p }
            }
            "random_sphere" => {
                want(2)?;
                Kind::RandomSphere { d: int(0)?, steps: int(1)? }
            }
            "sun" => {
                want(2)?;
                Kind::Sun { cycle: int(0)?, hairs: int(1)? }
            }
            "hair_sphere" => {
                want(0)?;
                Kind::HairSphere
            }
            "projective_plane" => {
                want(0)?;
                Kind::ProjectivePlane
            }
            "random_complex" => {
                want(3)?;
                Kind::RandomComplex { n: int(0)?, facets: int(1)?, dim: int(2)? }
            }
            other => return Err(Error::invalid(format!("unknown generator kind {other:?}"))),
        };
        Ok(kind)
    }

    pub fn generate(&self, seed: u64) -> Result<Generated> {
        use Generated::{Complex, Graph as G};
        Ok(match *self {
            Kind::CrossPolytope(d) => G(cross_polytope(d)?),
            Kind::Cycle(n) => G(cycle(n)?),
            Kind::Complete(n) => G(complete(n)),
            Kind::Icosahedron => G(icosahedron()),
            Kind::Moebius => Complex(moebius_complex()),
            Kind::Star(n) => G(star(n)?),
            Kind::Wheel(n) => G(wheel(n)?),
            Kind::ErdosRenyi { n, p } => G(erdos_renyi(n, p, seed)?),
            Kind::RandomSphere { d, steps } => G(random_sphere(d, steps, seed)?),
            Kind::Sun { cycle, hairs } => G(sun(cycle, hairs)?),
            Kind::HairSphere => G(hair_sphere()),
            Kind::ProjectivePlane => Complex(projective_plane_complex()),
            Kind::RandomComplex { n, facets, dim } => Complex(random_complex(n, facets, dim, seed)?),
        })
    }
}

/// Vertex set helper used by tests and the classifiers.
pub fn vertex_set<I: IntoIterator<Item = Vertex>>(it: I) -> BTreeSet<Vertex> {
    it.into_iter().collect()
}
