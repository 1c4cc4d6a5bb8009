//! Finite abstract simplicial complexes.
//!
//! A complex is stored as the sorted list of its simplices. The order is by
//! dimension first and lexicographic on the vertex labels second, which is
//! also the row order used by the connection matrix.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex label. Any non-negative integer is allowed.
pub type Vertex = u32;

/// A non-empty, strictly increasing set of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from labels in any order. Repeated labels collapse.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("simplex must have at least one vertex"));
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Simplex(vertices))
    }

    /// Caller guarantees `vertices` is non-empty and strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of vertices, `dim + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// All non-empty subsets, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    fn shifted(&self, offset: Vertex) -> Simplex {
        Simplex(self.0.iter().map(|v| v + offset).collect())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

/// Default cap on the number of simplices a constructor may materialize.
pub const DEFAULT_SIMPLEX_CAP: u128 = 1_000_000;

/// A finite set of simplices closed under taking non-empty subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    f: Vec<u64>,
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { simplices: Vec::new(), f: Vec::new() }
    }

    /// Downward closure of `facets`.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<Vertex>>,
    {
        Self::from_facets_capped(facets, DEFAULT_SIMPLEX_CAP)
    }

    pub fn from_facets_capped<I, F>(facets: I, cap: u128) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<Vertex>>,
    {
        let facets: Vec<Simplex> = facets
            .into_iter()
            .map(|f| Simplex::new(f.into()))
            .collect::<Result<_>>()?;
        let bound: u128 = facets
            .iter()
            .map(|f| if f.len() >= 127 { u128::MAX } else { (1u128 << f.len()) - 1 })
            .fold(0u128, u128::saturating_add);
        if bound > cap {
            return Err(Error::CapExceeded { what: "simplices", required: bound, cap });
        }
        let mut set: HashSet<Simplex> = HashSet::new();
        for facet in &facets {
            if set.contains(facet) {
                continue;
            }
            set.extend(facet.faces());
        }
        Ok(Self::from_closed(set.into_iter().collect()))
    }

    /// Caller guarantees the collection is closed under non-empty subsets.
    pub(crate) fn from_closed(mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_unstable();
        simplices.dedup();
        let mut f = Vec::new();
        for s in &simplices {
            if f.len() <= s.dim() {
                f.resize(s.dim() + 1, 0);
            }
            f[s.dim()] += 1;
        }
        SimplicialComplex { simplices, f }
    }

    /// Checks the closure invariant. Constructors already guarantee it.
    pub fn validate(&self) -> Result<()> {
        for s in &self.simplices {
            for face in s.faces() {
                if self.position(face.vertices()).is_none() {
                    return Err(Error::invalid(format!(
                        "face {:?} of simplex {:?} is missing",
                        face.vertices(),
                        s.vertices()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Maximal simplex dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.f.len() as i64 - 1
    }

    /// `(f_0, ..., f_d)`; empty for the empty complex.
    pub fn f_vector(&self) -> &[u64] {
        &self.f
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices
            .iter()
            .take_while(|s| s.len() == 1)
            .map(|s| s.0[0])
            .collect()
    }

    /// Index of the simplex with exactly these (sorted) vertices.
    pub fn position(&self, vertices: &[Vertex]) -> Option<usize> {
        self.simplices
            .binary_search_by(|s| {
                s.0.len().cmp(&vertices.len()).then_with(|| s.0.as_slice().cmp(vertices))
            })
            .ok()
    }

    pub fn contains(&self, vertices: &[Vertex]) -> bool {
        self.position(vertices).is_some()
    }

    /// Simplices not contained in any larger simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&[Vertex]> = HashSet::new();
        let mut out = Vec::new();
        for s in self.simplices.iter().rev() {
            if !covered.contains(s.vertices()) {
                out.push(s.clone());
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let pos = self.position(&drop_index(s.vertices(), i)).expect("closed");
                    covered.insert(self.simplices[pos].vertices());
                }
            }
        }
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn max_label(&self) -> Option<Vertex> {
        self.vertices().last().copied()
    }

    /// Copy with every label shifted by `offset`.
    pub fn relabeled(&self, offset: Vertex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.iter().map(|s| s.shifted(offset)).collect(),
            f: self.f.clone(),
        }
    }

    fn offset_after(&self) -> Vertex {
        self.max_label().map_or(0, |m| m + 1)
    }

    /// Join `self + other`. Labels of `other` are shifted past those of `self`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let other = other.relabeled(self.offset_after());
        let mut simplices = self.simplices.clone();
        simplices.extend(other.simplices.iter().cloned());
        for x in &self.simplices {
            for y in &other.simplices {
                let mut v = x.0.clone();
                v.extend_from_slice(&y.0);
                simplices.push(Simplex::from_sorted(v));
            }
        }
        Self::from_closed(simplices)
    }

    /// Disjoint union. Labels of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let other = other.relabeled(self.offset_after());
        let mut simplices = self.simplices.clone();
        simplices.extend(other.simplices);
        Self::from_closed(simplices)
    }

    /// The 1-skeleton as a graph.
    pub fn skeleton_graph(&self) -> Graph {
        let vertices = self.vertices();
        let edges = self
            .simplices
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| (s.0[0], s.0[1]));
        Graph::from_parts(vertices, edges)
    }

    /// True if this complex equals the Whitney complex of its 1-skeleton.
    pub fn is_whitney(&self) -> bool {
        let g = self.skeleton_graph();
        g.clique_f_vector() == self.f
    }

    /// Complex induced on the given vertex set.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> SimplicialComplex {
        Self::from_closed(
            self.simplices
                .iter()
                .filter(|s| s.0.iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
        )
    }
}

pub(crate) fn drop_index(v: &[Vertex], i: usize) -> Vec<Vertex> {
    v.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &x)| x)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(c: &SimplicialComplex) -> Vec<u64> {
        c.f_vector().to_vec()
    }

    #[test]
    fn triangle_boundary_closure() {
        let c = SimplicialComplex::from_facets(vec![vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap();
        assert_eq!(fv(&c), vec![3, 3]);
        c.validate().unwrap();
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn empty_complex() {
        let c = SimplicialComplex::from_facets(Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(c.dimension(), -1);
        assert!(c.f_vector().is_empty());
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn empty_facet_rejected() {
        let err = SimplicialComplex::from_facets(vec![vec![1, 2], vec![]]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn facet_cap_is_enforced_before_materializing() {
        let big: Vec<Vertex> = (0..40).collect();
        let err = SimplicialComplex::from_facets(vec![big]).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn ordering_is_dimension_then_lex() {
        let c = SimplicialComplex::from_facets(vec![vec![2, 3], vec![1, 3]]).unwrap();
        let order: Vec<Vec<Vertex>> = c.simplices().iter().map(|s| s.vertices().to_vec()).collect();
        assert_eq!(order, vec![vec![1], vec![2], vec![3], vec![1, 3], vec![2, 3]]);
        assert_eq!(c.position(&[2, 3]), Some(4));
        assert_eq!(c.position(&[1, 2]), None);
    }

    #[test]
    fn facets_recovered() {
        let c = SimplicialComplex::from_facets(vec![vec![1, 2, 3], vec![3, 4], vec![5]]).unwrap();
        let facets: Vec<Vec<Vertex>> = c.facets().into_iter().map(Vec::from).collect();
        assert_eq!(facets, vec![vec![1, 2, 3], vec![3, 4], vec![5]]);
    }

    #[test]
    fn join_of_zero_spheres_is_square() {
        let s0 = SimplicialComplex::from_facets(vec![vec![0], vec![1]]).unwrap();
        let c4 = s0.join(&s0);
        assert_eq!(fv(&c4), vec![4, 4]);
        assert!(c4.is_whitney());
        let empty = SimplicialComplex::empty();
        assert_eq!(empty.join(&c4), c4);
        assert_eq!(c4.join(&empty), c4);
    }

    #[test]
    fn union_is_additive() {
        let c4 = SimplicialComplex::from_facets(vec![[0, 1], [1, 2], [2, 3], [3, 0]]).unwrap();
        let u = c4.disjoint_union(&c4);
        assert_eq!(fv(&u), vec![8, 8]);
        assert_eq!(u.euler_characteristic(), 0);
        assert_eq!(c4.disjoint_union(&SimplicialComplex::empty()), c4);
    }

    #[test]
    fn face_relation() {
        let a = Simplex::new(vec![1, 3]).unwrap();
        let b = Simplex::new(vec![1, 2, 3]).unwrap();
        let c = Simplex::new(vec![4]).unwrap();
        assert!(a.is_face_of(&b));
        assert!(!b.is_face_of(&a));
        assert!(!c.is_face_of(&b));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&c));
    }
}
