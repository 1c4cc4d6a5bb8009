//! Barycentric refinement as the order complex of the face poset.

use crate::complex::{Simplex, SimplicialComplex, Vertex, DEFAULT_SIMPLEX_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ordered set partitions of an `n`-set: the number of chains topped by an
/// `(n-1)`-simplex in the face poset. `None` on overflow.
pub fn fubini(n: usize) -> Option<u128> {
    let mut a: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut binom: u128 = 1;
        let mut total: u128 = 0;
        for j in 1..=m {
            binom = binom.checked_mul((m - j + 1) as u128)? / j as u128;
            total = total.checked_add(binom.checked_mul(a[m - j])?)?;
        }
        a.push(total);
    }
    Some(a[n])
}

/// Simplex count of the barycentric refinement, computed from the f-vector.
pub fn barycentric_size(c: &SimplicialComplex) -> u128 {
    c.f_vector()
        .iter()
        .enumerate()
        .map(|(k, &n)| fubini(k + 1).and_then(|b| b.checked_mul(n as u128)).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add)
}

/// Graph on the simplices of `c` (labelled by their index in `c`) with an
/// edge between any two distinct simplices where one contains the other.
pub fn comparability_graph(c: &SimplicialComplex) -> Graph {
    let mut g = Graph::new();
    for (i, s) in c.simplices().iter().enumerate() {
        g.add_vertex(i as Vertex);
        for face in proper_faces(s) {
            let j = c.position(face.vertices()).expect("closed complex");
            g.add_edge(i as Vertex, j as Vertex);
        }
    }
    g
}

pub fn barycentric(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    barycentric_capped(c, DEFAULT_SIMPLEX_CAP)
}

/// Order complex of the face poset: vertices are the simplices of `c`
/// (labelled by index), simplices are chains under inclusion.
pub fn barycentric_capped(c: &SimplicialComplex, cap: u128) -> Result<SimplicialComplex> {
    let required = barycentric_size(c);
    if required > cap {
        return Err(Error::CapExceeded { what: "barycentric simplices", required, cap });
    }
    let mut chains = Vec::with_capacity(required as usize);
    let mut chain = Vec::new();
    for (i, s) in c.simplices().iter().enumerate() {
        chain.push(i as Vertex);
        descend(c, s, &mut chain, &mut chains);
        chain.pop();
    }
    Ok(SimplicialComplex::from_closed(chains))
}

fn descend(c: &SimplicialComplex, bottom: &Simplex, chain: &mut Vec<Vertex>, out: &mut Vec<Simplex>) {
    let mut sorted = chain.clone();
    sorted.reverse();
    out.push(Simplex::from_sorted(sorted));
    for face in proper_faces(bottom) {
        let j = c.position(face.vertices()).expect("closed complex");
        chain.push(j as Vertex);
        descend(c, &face, chain, out);
        chain.pop();
    }
}

fn proper_faces(s: &Simplex) -> impl Iterator<Item = Simplex> + '_ {
    let n = s.len();
    s.faces().filter(move |f| f.len() < n)
}
