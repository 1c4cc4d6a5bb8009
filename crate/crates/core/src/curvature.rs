//! Curvature on graphs: every vertex carries the antiderivative of the
//! f-function of its unit sphere, and these add up to the f-function of the
//! Whitney complex (minus its constant term).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::poly::{ds_symmetric, FPolynomial};
use crate::rational::{self, binomial, format_q, q, qi, Q};

fn sphere_f_vector(g: &Graph, v: Vertex) -> Result<Vec<u64>> {
    Ok(g.unit_sphere(v)?.clique_f_vector())
}

/// `F_{S(v)}(t)`, the antiderivative of the unit sphere's f-function.
pub fn curvature_polynomial(g: &Graph, v: Vertex) -> Result<FPolynomial> {
    Ok(FPolynomial::from_f_vector(&sphere_f_vector(g, v)?).antiderivative())
}

/// `K(v) = -F_{S(v)}(-1) = sum_{k>=-1} (-1)^{k+1} f_k(S(v)) / (k+2)`.
pub fn levitt_curvature(g: &Graph, v: Vertex) -> Result<Q> {
    Ok(-curvature_polynomial(g, v)?.evaluate(&q(-1)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport {
    pub per_vertex: BTreeMap<Vertex, FPolynomial>,
    pub total: FPolynomial,
    pub levitt: BTreeMap<Vertex, Q>,
}

impl CurvatureReport {
    pub fn levitt_total(&self) -> Q {
        self.levitt.values().fold(Q::zero(), |acc, k| acc + k)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let per_vertex: serde_json::Map<String, serde_json::Value> = self
            .per_vertex
            .iter()
            .map(|(v, p)| (v.to_string(), serde_json::to_value(p).expect("polynomial")))
            .collect();
        let levitt: serde_json::Map<String, serde_json::Value> = self
            .levitt
            .iter()
            .map(|(v, k)| (v.to_string(), format_q(k).into()))
            .collect();
        serde_json::json!({
            "per_vertex": per_vertex,
            "total": self.total,
            "levitt": levitt,
            "levitt_total": format_q(&self.levitt_total()),
        })
    }

    /// `vertex,K` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,K\n");
        for (v, k) in &self.levitt {
            out.push_str(&format!("{v},{}\n", format_q(k)));
        }
        out
    }
}

pub fn curvature_report(g: &Graph) -> CurvatureReport {
    let vertices: Vec<Vertex> = g.vertices().collect();
    let polys = par::map(&vertices, |&v| curvature_polynomial(g, v).expect("vertex of g"));
    let total = polys.iter().fold(FPolynomial::zero(), |acc, p| &acc + p);
    let levitt = vertices
        .iter()
        .zip(&polys)
        .map(|(&v, p)| (v, -p.evaluate(&q(-1))))
        .collect();
    CurvatureReport { per_vertex: vertices.into_iter().zip(polys).collect(), total, levitt }
}

/// `f_G(t) = 1 + sum_v F_{S(v)}(t)` for the Whitney complex of `g`.
pub fn gauss_bonnet_check(g: &Graph) -> bool {
    let f = FPolynomial::from_f_vector(&g.clique_f_vector());
    f == &FPolynomial::one() + &curvature_report(g).total
}

/// `chi(G) = sum_v K(v)`.
pub fn levitt_check(g: &Graph) -> bool {
    let chi = g.whitney().euler_characteristic();
    curvature_report(g).levitt_total() == q(chi)
}

/// `f_G'(t) = sum_v f_{S(v)}(t)`.
pub fn derivative_identity_check(g: &Graph) -> bool {
    let vertices: Vec<Vertex> = g.vertices().collect();
    let spheres = par::map(&vertices, |&v| {
        FPolynomial::from_f_vector(&sphere_f_vector(g, v).expect("vertex of g"))
    });
    let sum = spheres.iter().fold(FPolynomial::zero(), |acc, p| &acc + p);
    FPolynomial::from_f_vector(&g.clique_f_vector()).derivative() == sum
}

/// `f_k(G) = sum_v f_{k-1}(S(v)) / (k+1)` for every `k`.
pub fn generalized_handshake_check(g: &Graph) -> bool {
    let f = g.clique_f_vector();
    let vertices: Vec<Vertex> = g.vertices().collect();
    let spheres = par::map(&vertices, |&v| sphere_f_vector(g, v).expect("vertex of g"));
    (0..=f.len()).all(|k| {
        let lhs = f.get(k).copied().unwrap_or(0);
        let sum: u64 = spheres
            .iter()
            .map(|s| if k == 0 { 1 } else { s.get(k - 1).copied().unwrap_or(0) })
            .sum();
        q(sum as i64) / q(k as i64 + 1) == q(lhs as i64)
    })
}

/// Vertices whose unit sphere fails the symmetry for its own dimension.
pub fn non_flat_vertices(g: &Graph) -> Vec<Vertex> {
    let vertices: Vec<Vertex> = g.vertices().collect();
    let flat = par::map(&vertices, |&v| {
        let f = sphere_f_vector(g, v).expect("vertex of g");
        ds_symmetric(&FPolynomial::from_f_vector(&f), f.len() as i64 - 1)
    });
    vertices.into_iter().zip(flat).filter(|(_, ok)| !ok).map(|(v, _)| v).collect()
}

pub fn ds_flat(g: &Graph) -> bool {
    non_flat_vertices(g).is_empty()
}

/// Valuation `X(G) = sum_k X_k f_k(G)`, indexed by simplex dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValuationVector {
    #[serde(with = "rational::serde_q_vec")]
    pub coefficients: Vec<Q>,
}

impl ValuationVector {
    pub fn new(coefficients: Vec<Q>) -> Self {
        ValuationVector { coefficients }
    }

    pub fn from_integers(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    /// `[1, -1, 1, ...]` of length `n`.
    pub fn euler(n: usize) -> Self {
        Self::new((0..n).map(|k| q(if k % 2 == 0 { 1 } else { -1 })).collect())
    }

    /// Counts `k`-simplices.
    pub fn counting(k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = Q::one();
        Self::new(c)
    }

    pub fn get(&self, l: usize) -> Q {
        self.coefficients.get(l).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval_f_vector(&self, f: &[u64]) -> Q {
        self.coefficients
            .iter()
            .zip(f)
            .fold(Q::zero(), |acc, (x, &n)| acc + x * q(n as i64))
    }
}

/// Dehn-Sommerville valuation `X_{k,d}` of length `d`:
/// `X[j] = (-1)^{j+d} C(j+1, k+1)` for `k <= j <= d-1`, plus one at `j = k`.
/// It vanishes on `(d-1)`-dimensional spheres and manifolds.
pub fn ds_valuation_vector(k: usize, d: usize) -> Result<ValuationVector> {
    if k + 1 > d {
        return Err(Error::invalid(format!("X_(k,d) needs 0 <= k <= d-1, got k={k}, d={d}")));
    }
    let c = (0..d)
        .map(|j| {
            let mut x = if j < k {
                BigInt::zero()
            } else {
                let b = binomial(j as u64 + 1, k as u64 + 1);
                if (j + d).is_multiple_of(2) { b } else { -b }
            };
            if j == k {
                x += 1;
            }
            qi(&x)
        })
        .collect();
    Ok(ValuationVector::new(c))
}

pub fn valuation_eval(x: &ValuationVector, c: &SimplicialComplex) -> Q {
    x.eval_f_vector(c.f_vector())
}

/// `sum_l X_l f_{l-1}(S(v)) / (l+1)` with `f_{-1} = 1`.
pub fn valuation_curvature(x: &ValuationVector, g: &Graph, v: Vertex) -> Result<Q> {
    let s = sphere_f_vector(g, v)?;
    Ok(x.coefficients.iter().enumerate().fold(Q::zero(), |acc, (l, xl)| {
        let f = if l == 0 { 1 } else { s.get(l - 1).copied().unwrap_or(0) };
        acc + xl * q(f as i64) / q(l as i64 + 1)
    }))
}

/// `sum_v K_X(v) = X(G)`.
pub fn valuation_gauss_bonnet_check(x: &ValuationVector, g: &Graph) -> bool {
    let total = g
        .vertices()
        .map(|v| valuation_curvature(x, g, v).expect("vertex of g"))
        .fold(Q::zero(), |acc, k| acc + k);
    total == valuation_eval(x, &g.whitney())
}

/// `X_{k+1,d+1}[l+1] / (l+2) = X_{k,d}[l] / (k+2)` for all `l`, so the
/// curvature of `X_{k+1,d+1}` is `X_{k,d}(S(v)) / (k+2)`.
pub fn valuation_identity_check(k: usize, d: usize) -> Result<bool> {
    let lower = ds_valuation_vector(k, d)?;
    let upper = ds_valuation_vector(k + 1, d + 1)?;
    Ok((0..d).all(|l| upper.get(l + 1) / q(l as i64 + 2) == lower.get(l) / q(k as i64 + 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{self, cross_polytope, cycle, icosahedron};
    use crate::rational::frac;

    fn xv(k: usize, d: usize) -> Vec<i64> {
        ds_valuation_vector(k, d)
            .unwrap()
            .coefficients
            .iter()
            .map(|x| i64::try_from(x.numer()).unwrap())
            .collect()
    }

    #[test]
    fn icosahedron_curvature() {
        let g = icosahedron();
        let p = curvature_polynomial(&g, 1).unwrap();
        assert_eq!(p.coeffs(), &[q(0), q(1), frac(5, 2), frac(5, 3)]);
        assert_eq!(levitt_curvature(&g, 1).unwrap(), frac(1, 6));
        assert!(gauss_bonnet_check(&g));
        assert!(levitt_check(&g));
        assert!(derivative_identity_check(&g));
    }

    #[test]
    fn small_curvatures() {
        let point = Graph::from_parts([0], []);
        assert_eq!(curvature_polynomial(&point, 0).unwrap(), FPolynomial::from_integers(&[0, 1]));
        let c4 = cycle(4).unwrap();
        assert_eq!(curvature_polynomial(&c4, 0).unwrap(), FPolynomial::from_integers(&[0, 1, 1]));
        assert!(curvature_polynomial(&c4, 9).is_err());
        for v in cross_polytope(3).unwrap().vertices() {
            assert_eq!(levitt_curvature(&cross_polytope(3).unwrap(), v).unwrap(), q(0));
        }
        assert!(gauss_bonnet_check(&Graph::new()));
    }

    #[test]
    fn printed_valuations() {
        assert_eq!(xv(0, 2), vec![2, -2]);
        assert_eq!(xv(0, 3), vec![0, 2, -3]);
        assert_eq!(xv(1, 3), vec![0, 2, -3]);
        assert_eq!(xv(0, 4), vec![2, -2, 3, -4]);
        assert_eq!(xv(1, 4), vec![0, 0, 3, -6]);
        assert_eq!(xv(2, 4), vec![0, 0, 2, -4]);
        assert!(ds_valuation_vector(3, 3).is_err());
    }

    #[test]
    fn valuations_vanish_on_spheres() {
        for n in 4..9 {
            assert_eq!(valuation_eval(&ds_valuation_vector(0, 2).unwrap(), &cycle(n).unwrap().whitney()), q(0));
        }
        for dim in 1..5 {
            let c = cross_polytope(dim).unwrap().whitney();
            for k in 0..dim {
                let x = ds_valuation_vector(k, dim + 1).unwrap();
                assert_eq!(valuation_eval(&x, &c), q(0), "k={k} dim={dim}");
            }
        }
        let x02 = ds_valuation_vector(0, 2).unwrap();
        assert_eq!(valuation_eval(&x02, &cross_polytope(2).unwrap().whitney()), q(-12));
    }

    #[test]
    fn valuation_identity() {
        for d in 2..=10 {
            for k in 0..=d - 2 {
                assert!(valuation_identity_check(k, d).unwrap(), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn valuation_curvatures() {
        let g = icosahedron();
        let v1 = ValuationVector::counting(1);
        for v in g.vertices() {
            assert_eq!(valuation_curvature(&v1, &g, v).unwrap(), q(g.degree(v) as i64) / q(2));
        }
        assert_eq!(valuation_curvature(&ValuationVector::euler(3), &g, 1).unwrap(), frac(1, 6));
        assert!(valuation_gauss_bonnet_check(&ds_valuation_vector(0, 3).unwrap(), &g));
    }

    #[test]
    fn handshake_and_flatness() {
        assert!(generalized_handshake_check(&cycle(4).unwrap()));
        assert!(generalized_handshake_check(&cross_polytope(2).unwrap()));
        for d in 1..=4 {
            assert!(ds_flat(&cross_polytope(d).unwrap()));
        }
        assert!(!ds_flat(&generate::hair_sphere()));
        // The junction sphere is C4 plus a disjoint 3-sphere; its f-function
        // (1+2t)^2 + (1+2t)^4 - 1 is still reflection-even, so every sphere
        // passes. The wedge itself fails only through chi = 3.
        let w = generate::octahedron_wedge_four_sphere();
        assert!(ds_flat(&w));
        assert_eq!(w.whitney().euler_characteristic(), 3);
        assert!(!ds_symmetric(&FPolynomial::f_function(&w.whitney()), 4));
        assert!(!non_flat_vertices(&generate::ds_non_flat()).is_empty());
    }

    #[test]
    fn report_exports() {
        let r = curvature_report(&cycle(4).unwrap());
        assert_eq!(r.to_csv(), "vertex,K\n0,0/1\n1,0/1\n2,0/1\n3,0/1\n");
        assert_eq!(r.to_json()["levitt_total"], "0/1");
    }
}
