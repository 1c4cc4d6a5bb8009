//! Intersecting pairs of simplices: the f-matrix, the bivariate f-function
//! `f(t, s) = 1 + sum f_kl t^{k+1} s^{l+1}` and the Wu characteristic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, binomial, q, Q};

pub const DEFAULT_PAIR_CAP: u128 = 100_000_000;

/// `f_kl` = number of ordered pairs `(x, y)`, `dim x = k`, `dim y = l`,
/// with `x ∩ y` non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMatrix {
    pub entries: Vec<Vec<u64>>,
}

/// Vertex -> indices of the simplices containing it.
fn incidence(c: &SimplicialComplex) -> std::collections::BTreeMap<Vertex, Vec<usize>> {
    let mut idx: std::collections::BTreeMap<Vertex, Vec<usize>> = Default::default();
    for (i, x) in c.simplices().iter().enumerate() {
        for &v in x.vertices() {
            idx.entry(v).or_default().push(i);
        }
    }
    idx
}

/// Calls `visit(i, j)` once per ordered intersecting pair.
fn for_each_pair(c: &SimplicialComplex, cap: u128, mut visit: impl FnMut(usize, usize)) -> Result<()> {
    let idx = incidence(c);
    let bound: u128 = idx.values().map(|s| (s.len() as u128).pow(2)).sum();
    if bound > cap {
        return Err(Error::CapExceeded { what: "intersecting simplex pairs", required: bound, cap });
    }
    let mut mark = vec![usize::MAX; c.len()];
    for (i, x) in c.simplices().iter().enumerate() {
        for v in x.vertices() {
            for &j in &idx[v] {
                if mark[j] != i {
                    mark[j] = i;
                    visit(i, j);
                }
            }
        }
    }
    Ok(())
}

pub fn f_matrix(c: &SimplicialComplex) -> Result<FMatrix> {
    f_matrix_capped(c, DEFAULT_PAIR_CAP)
}

pub fn f_matrix_capped(c: &SimplicialComplex, cap: u128) -> Result<FMatrix> {
    let n = c.f_vector().len();
    let mut entries = vec![vec![0u64; n]; n];
    let s = c.simplices();
    for_each_pair(c, cap, |i, j| entries[s[i].dim()][s[j].dim()] += 1)?;
    Ok(FMatrix { entries })
}

/// `sum over ordered intersecting pairs of w(x) w(y)`, `w(x) = (-1)^dim x`.
pub fn wu_characteristic(c: &SimplicialComplex) -> Result<i64> {
    let s = c.simplices();
    let mut total = 0i64;
    for_each_pair(c, DEFAULT_PAIR_CAP, |i, j| {
        total += if (s[i].dim() + s[j].dim()).is_multiple_of(2) { 1 } else { -1 };
    })?;
    Ok(total)
}

impl FMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_csv(&self) -> String {
        let n = self.entries.len();
        let mut out = String::from("k");
        for l in 0..n {
            out.push_str(&format!(",l{l}"));
        }
        out.push('\n');
        for (k, row) in self.entries.iter().enumerate() {
            out.push_str(&k.to_string());
            for x in row {
                out.push_str(&format!(",{x}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn bipolynomial(&self) -> BiPolynomial {
        let n = self.entries.len();
        let mut c = vec![vec![Q::zero(); n + 1]; n + 1];
        c[0][0] = Q::one();
        for (k, row) in self.entries.iter().enumerate() {
            for (l, &x) in row.iter().enumerate() {
                c[k + 1][l + 1] = q(x as i64);
            }
        }
        BiPolynomial::new(c)
    }
}

/// Rational coefficient grid, `coeffs[i][j]` multiplies `t^i s^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BiPolynomial {
    #[serde(with = "grid_q")]
    coeffs: Vec<Vec<Q>>,
}

impl BiPolynomial {
    /// Pads to a square grid and trims zero rows and columns at the end.
    pub fn new(mut coeffs: Vec<Vec<Q>>) -> Self {
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(0).max(coeffs.len());
        coeffs.resize(width, Vec::new());
        for row in &mut coeffs {
            row.resize(width, Q::zero());
        }
        while let Some(last) = coeffs.len().checked_sub(1) {
            let row_zero = coeffs[last].iter().all(Zero::is_zero);
            let col_zero = coeffs.iter().all(|r| r[last].is_zero());
            if !(row_zero && col_zero) {
                break;
            }
            coeffs.pop();
            for r in &mut coeffs {
                r.pop();
            }
        }
        BiPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        BiPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![vec![Q::one()]])
    }

    pub fn coeffs(&self) -> &[Vec<Q>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, t: &Q, s: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, row| {
            acc * t + row.iter().rev().fold(Q::zero(), |a, c| a * s + c)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| self.coeff(i, j) + other.coeff(i, j)).collect())
                .collect(),
        )
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|r| r.iter().map(|c| c * x).collect()).collect())
    }

    pub fn swapped(&self) -> Self {
        let n = self.coeffs.len();
        Self::new((0..n).map(|i| (0..n).map(|j| self.coeff(j, i)).collect()).collect())
    }

    /// `p(-1 - t, s)`.
    pub fn reflect_t(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![vec![Q::zero(); n]; n];
        for (i, row) in self.coeffs.iter().enumerate() {
            // (-1-t)^i = (-1)^i sum_m C(i,m) t^m
            for (m, target) in out.iter_mut().enumerate().take(i + 1) {
                let b = Q::from_integer(binomial(i as u64, m as u64));
                let b = if i % 2 == 0 { b } else { -b };
                for (slot, c) in target.iter_mut().zip(row) {
                    *slot += &b * c;
                }
            }
        }
        Self::new(out)
    }

    pub fn reflect_s(&self) -> Self {
        self.swapped().reflect_t().swapped()
    }

    /// `int_0^t p(r, s) dr`.
    pub fn antiderivative_t(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![vec![Q::zero(); n + 1]; n + 1];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out[i + 1][j] = c / q(i as i64 + 1);
            }
        }
        Self::new(out)
    }
}

/// Bivariate f-function of a complex.
pub fn bivariate_f_function(c: &SimplicialComplex) -> Result<BiPolynomial> {
    Ok(f_matrix(c)?.bipolynomial())
}

/// Curvature `K_v(t, s)` with `f_G(t, s) = 1 + sum_v K_v(t, s)`, from the
/// unit sphere alone. Splitting the intersection test over the common
/// clique `z = v ∪ z'` (inclusion-exclusion, weight `1/|z|` per vertex):
///
/// `K_v = sum_{z' in S(v) ∪ {∅}} (-1)^{|z'|} / (|z'|+1) · t St_{z'}(t) · s St_{z'}(s)`
///
/// where `St_{z'}(t) = sum_{x' ⊇ z', x' in S(v) ∪ {∅}} t^{|x'|}`.
pub fn bivariate_curvature(g: &Graph, v: Vertex) -> Result<BiPolynomial> {
    let sphere = g.unit_sphere(v)?;
    let mut cliques: Vec<Vec<Vertex>> = vec![Vec::new()];
    sphere.for_each_clique(|c| cliques.push(c.to_vec()));
    let sets: Vec<BTreeSet<Vertex>> = cliques.iter().map(|c| c.iter().copied().collect()).collect();
    let width = cliques.iter().map(Vec::len).max().unwrap_or(0) + 2;
    let mut out = vec![vec![Q::zero(); width]; width];
    for z in &sets {
        // star counts by size of x' ⊇ z
        let mut star = vec![0i64; width];
        for x in &sets {
            if z.is_subset(x) {
                star[x.len()] += 1;
            }
        }
        let w = Q::new(BigInt::from(if z.len() % 2 == 0 { 1 } else { -1 }), BigInt::from(z.len() + 1));
        for (a, &sa) in star.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (b, &sb) in star.iter().enumerate().filter(|(_, &x)| x != 0) {
                out[a + 1][b + 1] += &w * q(sa * sb);
            }
        }
    }
    Ok(BiPolynomial::new(out))
}

/// The unit sphere's bivariate f-function integrated in the first variable.
pub fn bivariate_antiderivative(g: &Graph, v: Vertex) -> Result<BiPolynomial> {
    Ok(bivariate_f_function(&g.unit_sphere(v)?.whitney())?.antiderivative_t())
}

fn sum_over_vertices(g: &Graph, k: impl Fn(&Graph, Vertex) -> Result<BiPolynomial>) -> Result<BiPolynomial> {
    g.vertices().try_fold(BiPolynomial::one(), |acc, v| Ok(acc.add(&k(g, v)?)))
}

/// `f_G(t, s) = 1 + sum_v K_v(t, s)`, exactly.
pub fn wu_gauss_bonnet_check(g: &Graph) -> Result<bool> {
    Ok(bivariate_f_function(&g.whitney())? == sum_over_vertices(g, bivariate_curvature)?)
}

/// The same identity with `K_v` replaced by `int_0^t f_{S(v)}(r, s) dr`.
pub fn wu_gauss_bonnet_literal_check(g: &Graph) -> Result<bool> {
    Ok(bivariate_f_function(&g.whitney())? == sum_over_vertices(g, bivariate_antiderivative)?)
}

/// `f(t,s) + (-1)^d f(-1-t, s) = 0` and the same in `s`.
pub fn wu_ds_check(c: &SimplicialComplex, d: i64) -> Result<bool> {
    let f = bivariate_f_function(c)?;
    let sign = if d.rem_euclid(2) == 0 { q(1) } else { q(-1) };
    let t_ok = f.add(&f.reflect_t().scale(&sign)).is_zero();
    let s_ok = f.add(&f.reflect_s().scale(&sign)).is_zero();
    Ok(t_ok && s_ok)
}

mod grid_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(rational::format_q).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| r.iter().map(|x| rational::parse_q(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}
