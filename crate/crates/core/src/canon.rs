//! Canonical forms of small graphs: colour refinement followed by
//! individualize-and-refine backtracking. Two graphs get the same
//! [`CanonicalForm`] only if they are isomorphic.

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::graph::Graph;

/// Graphs up to this size get a true canonical form.
pub const CANONICAL_MAX_VERTICES: usize = 13;
/// Leaves of the search tree explored before giving up.
const LEAF_BUDGET: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertices: usize,
    /// False when the key is only the label-order adjacency (too large or
    /// too symmetric): equal keys still imply isomorphism, but isomorphic
    /// graphs may get different keys.
    pub canonical: bool,
    /// Upper-triangle adjacency rows in the chosen vertex order.
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    /// Rebuilds the graph on `0..n` in canonical order.
    pub fn graph(&self) -> Graph {
        let n = self.vertices;
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v as Vertex);
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.rows[i] >> j & 1 == 1 {
                    g.add_edge(i as Vertex, j as Vertex);
                }
            }
        }
        g
    }
}

struct Dense {
    n: usize,
    adj: Vec<u64>,
}

impl Dense {
    fn new(g: &Graph) -> Option<Self> {
        let labels: Vec<Vertex> = g.vertices().collect();
        if labels.len() > 64 {
            return None;
        }
        let index = |v: Vertex| labels.binary_search(&v).expect("vertex");
        let adj = labels
            .iter()
            .map(|&v| g.neighbors(v).expect("vertex").iter().fold(0u64, |m, &w| m | 1 << index(w)))
            .collect();
        Some(Dense { n: labels.len(), adj })
    }

    fn rows(&self, order: &[usize]) -> Vec<u64> {
        let mut pos = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| {
                (0..self.n)
                    .filter(|&w| self.adj[v] >> w & 1 == 1 && pos[w] > pos[v])
                    .fold(0u64, |m, w| m | 1 << pos[w])
            })
            .collect()
    }

    /// Stable colour refinement; colours are ranks of sorted signatures, so
    /// the result does not depend on the labelling.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> =
                        (0..self.n).filter(|&w| self.adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> =
                sigs.iter().map(|s| distinct.binary_search(s).expect("signature")).collect();
            let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
            if distinct.len() == before {
                return next;
            }
            colors = next;
        }
    }
}

struct Search<'a> {
    g: &'a Dense,
    best: Option<Vec<u64>>,
    leaves: usize,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<usize>) -> bool {
        let colors = self.g.refine(colors);
        let n = self.g.n;
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(cell) = (0..n).find(|&c| sizes[c] > 1) else {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| colors[v]);
            let rows = self.g.rows(&order);
            if self.best.as_ref().is_none_or(|b| rows < *b) {
                self.best = Some(rows);
            }
            self.leaves += 1;
            return self.leaves < LEAF_BUDGET;
        };
        // Swapping two twins (same neighbours apart from each other) is an
        // automorphism fixing every earlier choice, so one branch per twin
        // class suffices.
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
        let adj = &self.g.adj;
        let twins = |a: usize, b: usize| adj[a] & !(1 << b) == adj[b] & !(1 << a);
        let reps = members
            .iter()
            .enumerate()
            .filter(|&(i, &v)| !members[..i].iter().any(|&u| twins(u, v)))
            .map(|(_, &v)| v);
        for v in reps {
            let split = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| 2 * c + usize::from(c == cell && w != v))
                .collect();
            if !self.run(split) {
                return false;
            }
        }
        true
    }
}

fn labeled(d: &Dense) -> CanonicalForm {
    let order: Vec<usize> = (0..d.n).collect();
    CanonicalForm { vertices: d.n, canonical: false, rows: d.rows(&order) }
}

/// Canonical form for graphs with at most [`CANONICAL_MAX_VERTICES`]
/// vertices, label-order key otherwise. Panics above 64 vertices; use
/// [`memo_key`] for arbitrary graphs.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let d = Dense::new(g).expect("at most 64 vertices");
    if d.n > CANONICAL_MAX_VERTICES {
        return labeled(&d);
    }
    let mut s = Search { g: &d, best: None, leaves: 0 };
    if s.run(vec![0; d.n]) {
        CanonicalForm { vertices: d.n, canonical: true, rows: s.best.unwrap_or_default() }
    } else {
        labeled(&d)
    }
}

/// Memo key usable for any graph: canonical when small, otherwise the
/// compacted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MemoKey {
    Form(CanonicalForm),
    Edges(usize, Vec<(Vertex, Vertex)>),
}

pub fn memo_key(g: &Graph) -> MemoKey {
    if g.vertex_count() <= 64 {
        MemoKey::Form(canonical_form(g))
    } else {
        let c = g.compacted();
        MemoKey::Edges(c.vertex_count(), c.edges())
    }
}

pub fn isomorphic(a: &Graph, b: &Graph) -> Option<bool> {
    let (x, y) = (canonical_form(a), canonical_form(b));
    if x.canonical && y.canonical {
        Some(x == y)
    } else if x == y {
        Some(true)
    } else {
        None
    }
}
