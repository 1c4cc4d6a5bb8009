//! Connection matrix `L(x, y) = 1` iff the simplices `x` and `y` intersect,
//! and its integer inverse, the Green function `g = L^{-1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{mat_mul, unimodular_inverse, IntMatrix};
use crate::operator::operator_matrix;
use crate::poly::FPolynomial;
use crate::rational::{self, q, qi, Q};
use crate::refine::comparability_graph;

pub const DEFAULT_CONNECTION_CAP: u128 = 4096;

/// Rows and columns follow the complex's simplex order: by dimension, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionMatrix {
    pub simplices: Vec<Simplex>,
    pub entries: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenFunction {
    pub det: i8,
    #[serde(with = "grid_serde")]
    pub matrix: IntMatrix,
}

pub fn connection_matrix(c: &SimplicialComplex) -> Result<ConnectionMatrix> {
    connection_matrix_capped(c, DEFAULT_CONNECTION_CAP)
}

pub fn connection_matrix_capped(c: &SimplicialComplex, cap: u128) -> Result<ConnectionMatrix> {
    let n = c.len() as u128;
    if n > cap {
        return Err(Error::CapExceeded { what: "connection matrix simplices", required: n, cap });
    }
    let simplices = c.simplices().to_vec();
    let entries = crate::par::map(&simplices, |x| {
        simplices.iter().map(|y| u8::from(x.intersects(y))).collect()
    });
    Ok(ConnectionMatrix { simplices, entries })
}

impl ConnectionMatrix {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn to_int(&self) -> IntMatrix {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Exact inverse. A determinant other than `±1` contradicts
    /// unimodularity and is reported as an inconsistency.
    pub fn green(&self) -> Result<GreenFunction> {
        let (det, matrix) = unimodular_inverse(&self.to_int()).ok_or_else(|| {
            Error::Inconsistent(format!("connection matrix of {} simplices is not unimodular", self.len()))
        })?;
        Ok(GreenFunction { det: if det.is_positive() { 1 } else { -1 }, matrix })
    }

    pub fn to_text(&self) -> String {
        grid_text(self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()))
    }
}

impl GreenFunction {
    pub fn trace(&self) -> BigInt {
        self.matrix.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
    }

    /// Sum of all entries.
    pub fn energy(&self) -> BigInt {
        self.matrix.iter().flatten().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn to_text(&self) -> String {
        grid_text(self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()))
    }
}

fn grid_text(rows: impl Iterator<Item = Vec<String>>) -> String {
    let rows: Vec<Vec<String>> = rows.collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn green(c: &SimplicialComplex) -> Result<GreenFunction> {
    connection_matrix(c)?.green()
}

fn omega(x: &Simplex) -> i64 {
    if x.dim().is_multiple_of(2) { 1 } else { -1 }
}

/// `1 - chi(S(x))` for every simplex `x`, with `S(x)` the unit sphere of `x`
/// in the graph of the Barycentric refinement (comparability of simplices).
pub fn sphere_defects(c: &SimplicialComplex) -> Vec<i64> {
    let gamma = comparability_graph(c);
    let ids: Vec<u32> = (0..c.len() as u32).collect();
    crate::par::map(&ids, |&i| {
        1 - gamma.unit_sphere(i).expect("vertex").whitney().euler_characteristic()
    })
}

/// Every identity of the connection calculus on one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionChecks {
    pub simplices: usize,
    pub det: i8,
    pub inverse: bool,
    pub integral_symmetric: bool,
    pub energy: bool,
    pub green_diagonal: bool,
    pub super_trace: bool,
    pub hydrogen: bool,
}

impl ConnectionChecks {
    pub fn all(&self) -> bool {
        self.inverse && self.integral_symmetric && self.energy && self.green_diagonal && self.super_trace && self.hydrogen
    }
}

pub fn energy_check(c: &SimplicialComplex) -> Result<bool> {
    Ok(green(c)?.energy() == BigInt::from(c.euler_characteristic()))
}

pub fn green_diagonal_check(c: &SimplicialComplex) -> Result<bool> {
    let g = green(c)?;
    Ok(sphere_defects(c).iter().enumerate().all(|(i, &d)| g.matrix[i][i] == BigInt::from(d)))
}

/// `sum_x w(x) L(x,x) = sum_x w(x) g(x,x) = chi` with `w(x) = (-1)^dim x`.
pub fn super_trace_check(c: &SimplicialComplex) -> Result<bool> {
    let g = green(c)?;
    let chi = BigInt::from(c.euler_characteristic());
    let l: i64 = c.simplices().iter().map(omega).sum();
    let gs: BigInt = c.simplices().iter().enumerate().map(|(i, x)| &g.matrix[i][i] * omega(x)).sum();
    Ok(BigInt::from(l) == chi && gs == chi)
}

pub fn check_all(c: &SimplicialComplex) -> Result<ConnectionChecks> {
    let l = connection_matrix(c)?;
    let g = l.green()?;
    let n = l.len();
    let prod = mat_mul(&l.to_int(), &g.matrix);
    let inverse = (0..n).all(|i| (0..n).all(|j| prod[i][j] == if i == j { BigInt::one() } else { BigInt::zero() }));
    let chi = BigInt::from(c.euler_characteristic());
    let defects = sphere_defects(c);
    let green_diagonal = defects.iter().enumerate().all(|(i, &d)| g.matrix[i][i] == BigInt::from(d));
    let super_trace = {
        let l: i64 = c.simplices().iter().map(omega).sum();
        let gs: BigInt = c.simplices().iter().enumerate().map(|(i, x)| &g.matrix[i][i] * omega(x)).sum();
        BigInt::from(l) == chi && gs == chi
    };
    let hydrogen = hydrogen_from(c, &l, &g, &defects)?.identity_holds;
    Ok(ConnectionChecks {
        simplices: n,
        det: g.det,
        inverse,
        integral_symmetric: g.is_symmetric(),
        energy: g.energy() == chi,
        green_diagonal,
        super_trace,
        hydrogen,
    })
}

/// f-function of the Barycentric refinement, from the operator on f-vectors.
pub fn refined_f_function(c: &SimplicialComplex) -> Result<FPolynomial> {
    let f = c.f_vector();
    if f.is_empty() {
        return Ok(FPolynomial::one());
    }
    let a = operator_matrix(f.len() - 1)?;
    Ok(FPolynomial::from_big_f_vector(&a.apply_u64(f)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HydrogenReport {
    #[serde(with = "rational::serde_q")]
    pub trace_green: Q,
    #[serde(with = "rational::serde_q")]
    pub trace_connection: Q,
    /// `f'_{G_1}(-1)`.
    #[serde(with = "rational::serde_q")]
    pub refined_derivative: Q,
    /// `sum_x (1 - chi(S(x)))`.
    #[serde(with = "rational::serde_q")]
    pub sphere_sum: Q,
    /// `tr(L) - tr(g)`, reported without any claim attached.
    #[serde(with = "rational::serde_q")]
    pub trace_difference: Q,
    /// `f'_{G_1}(-1) = tr(g)`.
    pub identity_holds: bool,
}

fn hydrogen_from(c: &SimplicialComplex, l: &ConnectionMatrix, g: &GreenFunction, defects: &[i64]) -> Result<HydrogenReport> {
    let trace_green = qi(&g.trace());
    let trace_connection = q(l.len() as i64);
    let refined_derivative = refined_f_function(c)?.derivative().evaluate(&q(-1));
    let sphere_sum = q(defects.iter().sum());
    Ok(HydrogenReport {
        identity_holds: refined_derivative == trace_green,
        trace_difference: &trace_connection - &trace_green,
        trace_green,
        trace_connection,
        refined_derivative,
        sphere_sum,
    })
}

pub fn hydrogen_report(c: &SimplicialComplex) -> Result<HydrogenReport> {
    let l = connection_matrix(c)?;
    let g = l.green()?;
    hydrogen_from(c, &l, &g, &sphere_defects(c))
}

/// Candidate sides of the log-derivative identity at `t = -1`, each `None`
/// when its denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogDerivativeReport {
    #[serde(with = "opt_q")]
    pub log_derivative: Option<Q>,
    #[serde(with = "opt_q")]
    pub trace_over_energy: Option<Q>,
    #[serde(with = "opt_q")]
    pub trace_over_one_minus_chi: Option<Q>,
    /// `chi = 1`, so `f_{G_1}(-1) = 0`.
    pub chi_is_one: bool,
}

pub fn log_derivative_report(c: &SimplicialComplex) -> Result<LogDerivativeReport> {
    let g = green(c)?;
    let f1 = refined_f_function(c)?;
    let m1 = q(-1);
    let value = f1.evaluate(&m1);
    let div = |a: Q, b: Q| if b.is_zero() { None } else { Some(a / b) };
    let tr = qi(&g.trace());
    let chi = c.euler_characteristic();
    Ok(LogDerivativeReport {
        log_derivative: div(f1.derivative().evaluate(&m1), value),
        trace_over_energy: div(tr.clone(), qi(&g.energy())),
        trace_over_one_minus_chi: div(tr, q(1 - chi)),
        chi_is_one: chi == 1,
    })
}

mod grid_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| r.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

mod opt_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(rational::format_q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| rational::parse_q(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
