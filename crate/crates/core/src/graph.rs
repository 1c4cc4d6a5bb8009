//! Finite simple graphs and their Whitney (clique) complexes.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Undirected simple graph. No loops, no multi-edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Validating constructor: rejects loops and edges whose endpoints are not listed.
    pub fn try_new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if !g.adj.contains_key(&a) || !g.adj.contains_key(&b) {
                return Err(Error::invalid(format!("edge ({a},{b}) has an unknown endpoint")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Endpoints are added as vertices; loops are dropped.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Self
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            if a != b {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn from_edges<E: IntoIterator<Item = (Vertex, Vertex)>>(edges: E) -> Self {
        Self::from_parts(std::iter::empty(), edges)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) {
        assert_ne!(a, b, "loops are not allowed");
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        if let Some(n) = self.adj.get_mut(&a) {
            n.remove(&b);
        }
        if let Some(n) = self.adj.get_mut(&b) {
            n.remove(&a);
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adj
            .iter()
            .flat_map(|(&a, n)| n.range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }

    pub fn neighbors(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    /// Subgraph induced on `keep` (labels outside the graph are ignored).
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = keep
            .iter()
            .filter_map(|v| {
                self.adj
                    .get(v)
                    .map(|n| (*v, n.intersection(keep).copied().collect()))
            })
            .collect();
        Graph { adj }
    }

    /// Induced subgraph on the neighbors of `v`.
    pub fn unit_sphere(&self, v: Vertex) -> Result<Graph> {
        let n = self
            .adj
            .get(&v)
            .ok_or_else(|| Error::invalid(format!("unknown vertex {v}")))?;
        Ok(self.induced(n))
    }

    pub fn without_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        if let Some(n) = g.adj.remove(&v) {
            for w in n {
                g.adj.get_mut(&w).expect("symmetric adjacency").remove(&v);
            }
        }
        g
    }

    /// Copy with every label shifted by `offset`.
    pub fn relabeled(&self, offset: Vertex) -> Graph {
        Graph {
            adj: self
                .adj
                .iter()
                .map(|(&v, n)| (v + offset, n.iter().map(|w| w + offset).collect()))
                .collect(),
        }
    }

    /// Labels replaced by `0..n` in ascending order of the old labels.
    pub fn compacted(&self) -> Graph {
        let index: BTreeMap<Vertex, Vertex> =
            self.adj.keys().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
        Graph {
            adj: self
                .adj
                .iter()
                .map(|(v, n)| (index[v], n.iter().map(|w| index[w]).collect()))
                .collect(),
        }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.max_vertex().map_or(0, |m| m + 1);
        let mut g = self.clone();
        g.adj.extend(other.relabeled(offset).adj);
        g
    }

    /// Join: every vertex of `self` is connected to every vertex of `other`.
    pub fn join(&self, other: &Graph) -> Graph {
        let offset = self.max_vertex().map_or(0, |m| m + 1);
        let other = other.relabeled(offset);
        let mut g = self.clone();
        g.adj.extend(other.adj.clone());
        for a in self.vertices() {
            for b in other.vertices() {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.adj.keys().next().copied() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.adj.len();
        self.adj.values().all(|nb| nb.len() + 1 == n)
    }

    /// Visits every clique (every complete subgraph, not only maximal ones)
    /// exactly once, as an ascending vertex list.
    pub fn for_each_clique(&self, mut visit: impl FnMut(&[Vertex])) {
        let labels: Vec<Vertex> = self.adj.keys().copied().collect();
        let index: BTreeMap<Vertex, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let forward: Vec<Vec<usize>> = labels
            .iter()
            .map(|v| self.adj[v].range(v + 1..).map(|w| index[w]).collect())
            .collect();
        let all: Vec<usize> = (0..labels.len()).collect();
        let mut clique = Vec::new();
        extend_cliques(&labels, &forward, &all, &mut clique, &mut visit);
    }

    /// f-vector of the Whitney complex without materializing it.
    pub fn clique_f_vector(&self) -> Vec<u64> {
        let mut f: Vec<u64> = Vec::new();
        self.for_each_clique(|c| {
            if f.len() < c.len() {
                f.resize(c.len(), 0);
            }
            f[c.len() - 1] += 1;
        });
        f
    }

    /// Whitney complex: the vertex sets of all complete subgraphs.
    pub fn whitney(&self) -> SimplicialComplex {
        let mut simplices = Vec::new();
        self.for_each_clique(|c| simplices.push(Simplex::from_sorted(c.to_vec())));
        SimplicialComplex::from_closed(simplices)
    }

    /// Cuts the edge `(a, b)` with a fresh vertex `c` joined to `a`, `b` and
    /// to every common neighbor of `a` and `b`. Returns the new graph and `c`.
    pub fn edge_refine(&self, a: Vertex, b: Vertex) -> Result<(Graph, Vertex)> {
        if !self.has_edge(a, b) {
            return Err(Error::invalid(format!("({a},{b}) is not an edge")));
        }
        let common: Vec<Vertex> = self.adj[&a].intersection(&self.adj[&b]).copied().collect();
        let c = self.max_vertex().expect("graph has an edge") + 1;
        let mut g = self.clone();
        g.remove_edge(a, b);
        g.add_edge(a, c);
        g.add_edge(c, b);
        for z in common {
            g.add_edge(c, z);
        }
        Ok((g, c))
    }
}

fn extend_cliques(
    labels: &[Vertex],
    forward: &[Vec<usize>],
    candidates: &[usize],
    clique: &mut Vec<Vertex>,
    visit: &mut impl FnMut(&[Vertex]),
) {
    for (pos, &v) in candidates.iter().enumerate() {
        clique.push(labels[v]);
        visit(clique);
        let next = intersect_sorted(&candidates[pos + 1..], &forward[v]);
        if !next.is_empty() {
            extend_cliques(labels, forward, &next, clique, visit);
        }
        clique.pop();
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn complete_graph_cliques() {
        assert_eq!(generate::complete(4).clique_f_vector(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn cycle_has_no_triangles() {
        assert_eq!(generate::cycle(4).unwrap().whitney().f_vector(), &[4, 4]);
    }

    #[test]
    fn empty_graph_gives_empty_complex() {
        assert_eq!(Graph::new().whitney(), SimplicialComplex::empty());
    }

    #[test]
    fn unit_spheres() {
        let ico = generate::icosahedron();
        for v in ico.vertices() {
            let s = ico.unit_sphere(v).unwrap();
            assert_eq!(s.whitney().f_vector(), &[5, 5]);
        }
        let c4 = generate::cycle(4).unwrap();
        let s = c4.unit_sphere(0).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (2, 0));
        let lone = Graph::from_parts([7], []);
        assert!(lone.unit_sphere(7).unwrap().is_empty());
        assert!(matches!(lone.unit_sphere(8), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn edge_refinement_cases() {
        let c4 = generate::cycle(4).unwrap();
        let (g, c) = c4.edge_refine(0, 1).unwrap();
        assert_eq!(c, 4);
        assert_eq!(g.whitney().f_vector(), &[5, 5]);
        assert!(g.vertices().all(|v| g.degree(v) == 2));

        let oct = generate::cross_polytope(2).unwrap();
        let (a, b) = oct.edges()[0];
        let (g, _) = oct.edge_refine(a, b).unwrap();
        assert_eq!(g.whitney().f_vector(), &[7, 15, 10]);

        let k3 = generate::complete(3);
        let (g, _) = k3.edge_refine(0, 1).unwrap();
        assert_eq!(g.whitney().f_vector(), &[4, 5, 2]);

        assert!(matches!(c4.edge_refine(0, 2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn validating_constructor() {
        assert!(Graph::try_new([1, 2], [(1, 1)]).is_err());
        assert!(Graph::try_new([1, 2], [(1, 3)]).is_err());
        let g = Graph::try_new([1, 2, 3], [(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_count(), 3);
    }
}
