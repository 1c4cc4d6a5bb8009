//! The Barycentric refinement operator on f-vectors and its eigen-data.
//!
//! `A[i][j] = S2(j, i) * i!` (1-based, `S2` the Stirling numbers of the
//! second kind) maps the f-vector of a complex of dimension at most `d` to
//! the f-vector of its Barycentric refinement. The matrix is upper
//! triangular with the distinct eigenvalues `1!, 2!, ..., (d+1)!`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, normalize_integer, IntMatrix};
use crate::poly::{ds_symmetric, FPolynomial};
use crate::rational::{self, factorial, q, qi, Q};

pub const MAX_DIMENSION: usize = 30;

/// Stirling numbers of the second kind `S2(n, k)` for `0 <= n, k <= max`.
pub fn stirling2_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = BigInt::from(k) * &s[n - 1][k] + &s[n - 1][k - 1];
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementOperator {
    pub dimension: usize,
    #[serde(with = "int_matrix_serde")]
    pub matrix: IntMatrix,
}

/// Left eigenvector `v` of `A` (`A^T v = λ v`), read as the functional
/// `f -> v · f` on f-vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    #[serde(with = "rational::serde_bigint_vec")]
    pub coefficients: Vec<BigInt>,
    #[serde(with = "bigint_string")]
    pub eigenvalue: BigInt,
}

impl Functional {
    pub fn apply(&self, f: &[BigInt]) -> BigInt {
        self.coefficients.iter().zip(f).map(|(a, b)| a * b).sum()
    }

    pub fn apply_u64(&self, f: &[u64]) -> BigInt {
        self.coefficients.iter().zip(f).map(|(a, &b)| a * BigInt::from(b)).sum()
    }

    /// Number of non-zero coefficients (the parity bookkeeping label).
    pub fn support(&self) -> usize {
        self.coefficients.iter().filter(|c| !c.is_zero()).count()
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_DIMENSION {
        return Err(Error::invalid(format!("dimension {d} exceeds {MAX_DIMENSION}")));
    }
    Ok(())
}

pub fn operator_matrix(d: usize) -> Result<RefinementOperator> {
    check_dim(d)?;
    let n = d + 1;
    let s2 = stirling2_table(n);
    let matrix = (1..=n)
        .map(|i| (1..=n).map(|j| &s2[j][i] * factorial(i as u64)).collect())
        .collect();
    Ok(RefinementOperator { dimension: d, matrix })
}

impl RefinementOperator {
    pub fn size(&self) -> usize {
        self.dimension + 1
    }

    /// `A f`, with `f` zero-padded to length `d + 1`.
    pub fn apply(&self, f: &[BigInt]) -> Result<Vec<BigInt>> {
        if f.len() > self.size() {
            return Err(Error::invalid(format!(
                "f-vector of length {} does not fit dimension {}",
                f.len(),
                self.dimension
            )));
        }
        let mut padded = f.to_vec();
        padded.resize(self.size(), BigInt::zero());
        Ok(linalg::mat_vec(&self.matrix, &padded))
    }

    pub fn apply_u64(&self, f: &[u64]) -> Result<Vec<BigInt>> {
        self.apply(&f.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn eigenvalues(&self) -> Vec<BigInt> {
        (1..=self.size() as u64).map(factorial).collect()
    }
}

/// The `d + 1` left eigenvectors, ordered by increasing eigenvalue `k!`.
pub fn eigen_functionals(d: usize) -> Result<Vec<Functional>> {
    let op = operator_matrix(d)?;
    let n = op.size();
    let a = &op.matrix;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = a[k][k].clone();
        // (A^T v)_i = sum_{j <= i} A[j][i] v_j; entries below k vanish.
        let mut v = vec![Q::zero(); n];
        v[k] = Q::one();
        for i in k + 1..n {
            let s: Q = (k..i).map(|j| qi(&a[j][i]) * &v[j]).sum();
            v[i] = s / (qi(&lambda) - qi(&a[i][i]));
        }
        out.push(Functional { coefficients: normalize_integer(&v), eigenvalue: lambda });
    }
    Ok(out)
}

/// Right eigenvector of `A` for the top eigenvalue `(d+1)!`, as coprime
/// positive integers.
pub fn perron_vector(d: usize) -> Result<Vec<BigInt>> {
    let op = operator_matrix(d)?;
    let n = op.size();
    let a = &op.matrix;
    let lambda = qi(&a[n - 1][n - 1]);
    let mut w = vec![Q::zero(); n];
    w[n - 1] = Q::one();
    for i in (0..n - 1).rev() {
        let s: Q = (i + 1..n).map(|j| qi(&a[i][j]) * &w[j]).sum();
        w[i] = s / (&lambda - qi(&a[i][i]));
    }
    Ok(normalize_integer(&w))
}

/// Affine set of f-vectors `(f_0..f_d)` whose f-function satisfies the
/// Dehn-Sommerville symmetry for dimension `d`: a particular point and a
/// basis of directions.
pub fn ds_affine_set(d: usize) -> (Vec<Q>, Vec<Vec<Q>>) {
    let n = d + 1;
    // p(t) = 1 + sum_k f_k t^{k+1}; the symmetry is linear in (f_k):
    // sum_k f_k e_k(t) = -(1 + (-1)^d), with e_k = t^{k+1} + (-1)^d (-1-t)^{k+1}.
    let sign = if d.is_multiple_of(2) { q(1) } else { q(-1) };
    let basis_poly = |k: usize| {
        let mono = FPolynomial::new((0..=k + 1).map(|i| if i == k + 1 { q(1) } else { q(0) }).collect());
        &mono + &mono.reflect().scale(&sign)
    };
    let constant = &FPolynomial::one() + &FPolynomial::one().scale(&sign);
    let cols: Vec<FPolynomial> = (0..n).map(basis_poly).collect();
    let rows = n + 1;
    let m: Vec<Vec<Q>> = (0..rows).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    let rhs: Vec<Q> = (0..rows).map(|r| -constant.coeff(r)).collect();
    linalg::solve_affine(&m, &rhs, n).expect("the cross-polytope is a solution")
}

/// Eigen-functionals that vanish on every f-vector with the symmetry.
pub fn ds_invariant_functionals(d: usize) -> Result<Vec<Functional>> {
    let all = eigen_functionals(d)?;
    let (point, dirs) = ds_affine_set(d);
    let vanishes = |phi: &Functional, v: &[Q]| {
        phi.coefficients.iter().zip(v).map(|(a, b)| qi(a) * b).sum::<Q>().is_zero()
    };
    Ok(all
        .into_iter()
        .filter(|phi| vanishes(phi, &point) && dirs.iter().all(|v| vanishes(phi, v)))
        .collect())
}

fn f_vector_poly(f: &[Q]) -> FPolynomial {
    let mut c = vec![Q::one()];
    c.extend(f.iter().cloned());
    FPolynomial::new(c)
}

/// `A` maps the symmetric affine set into itself, and the Perron direction
/// `sum w_k t^{k+1}` satisfies `P(t) + (-1)^d P(-1-t) = 0` (for `d >= 1`).
pub fn symmetry_invariance_check(d: usize) -> Result<bool> {
    let op = operator_matrix(d)?;
    let (point, dirs) = ds_affine_set(d);
    let mut samples = vec![point.clone()];
    samples.extend(dirs.iter().map(|v| point.iter().zip(v).map(|(a, b)| a + b).collect()));
    for s in &samples {
        let image: Vec<Q> = op
            .matrix
            .iter()
            .map(|row| row.iter().zip(s).map(|(a, b)| qi(a) * b).sum())
            .collect();
        if !ds_symmetric(&f_vector_poly(&image), d as i64) {
            return Ok(false);
        }
    }
    let w = perron_vector(d)?;
    if d == 0 {
        // The symmetric set is the single point f = (2), itself on the Perron ray.
        return Ok(point == vec![qi(&w[0]) * q(2)]);
    }
    let mut c = vec![Q::zero()];
    c.extend(w.iter().map(qi));
    let p = FPolynomial::new(c);
    let r = p.reflect();
    let sum = if d.is_multiple_of(2) { &p + &r } else { &p - &r };
    Ok(sum.is_zero())
}

mod int_matrix_serde {
    use super::IntMatrix;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.parse::<BigInt>().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
