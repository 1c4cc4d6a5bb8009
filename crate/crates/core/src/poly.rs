//! Exact univariate polynomials: f-functions, h-vectors and the reflection
//! `t -> -1 - t` behind the Dehn-Sommerville symmetry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rational::{self, binomial, is_integer, q, qi, Q};

/// Polynomial with exact rational coefficients, constant term first.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FPolynomial {
    #[serde(with = "rational::serde_q_vec")]
    coeffs: Vec<Q>,
}

impl FPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        FPolynomial { coeffs }
    }

    pub fn from_integers(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        FPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integers(&[1])
    }

    /// `1 + f_0 t + f_1 t^2 + ... + f_d t^{d+1}`.
    pub fn from_f_vector(f: &[u64]) -> Self {
        let mut c = vec![Q::one()];
        c.extend(f.iter().map(|&x| Q::from_integer(BigInt::from(x))));
        Self::new(c)
    }

    pub fn from_big_f_vector(f: &[BigInt]) -> Self {
        let mut c = vec![Q::one()];
        c.extend(f.iter().map(qi));
        Self::new(c)
    }

    /// Simplex generating function of a complex.
    pub fn f_function(c: &SimplicialComplex) -> Self {
        Self::from_f_vector(c.f_vector())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, t: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut c = vec![Q::zero()];
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, x)| x / q(k as i64 + 1)),
        );
        Self::new(c)
    }

    /// `p(a + b t)`.
    pub fn compose_linear(&self, a: &Q, b: &Q) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Q::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (a + b t)^k = sum_j C(k, j) a^{k-j} b^j t^j
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let term = qi(&binomial(k as u64, j as u64))
                    * pow(a, (k - j) as u32)
                    * pow(b, j as u32);
                *slot += c * term;
            }
        }
        Self::new(out)
    }

    /// `p(-1 - t)`.
    pub fn reflect(&self) -> Self {
        self.compose_linear(&q(-1), &q(-1))
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(Q::one() / l)),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: `self = c * prod_i factor_i^{m_i}` with square-free,
    /// pairwise coprime monic factors of positive degree.
    pub fn squarefree_factors(&self) -> Vec<(FPolynomial, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let d = self.derivative();
        let mut a = self.gcd(&d);
        let mut b = self.div_rem(&a).0;
        let mut c = d.div_rem(&a).0;
        let mut m = 1;
        loop {
            let db = b.derivative();
            let diff = &c - &db;
            if diff.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.monic(), m));
                }
                break;
            }
            a = b.gcd(&diff);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.div_rem(&a).0;
            c = diff.div_rem(&a).0;
            m += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational::to_f64).collect()
    }

    /// `(f_0, ..., f_d)` if this is the f-function of some coefficient vector
    /// with integer entries and constant term 1.
    pub fn f_vector(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.first() != Some(&Q::one()) || !self.coeffs.iter().all(is_integer) {
            return None;
        }
        Some(self.coeffs[1..].iter().map(|c| c.numer().clone()).collect())
    }

    /// Dimension implied by the degree, `deg - 1`.
    pub fn implied_dimension(&self) -> i64 {
        self.degree().map_or(-1, |d| d as i64 - 1)
    }
}

fn pow(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

impl Add for &FPolynomial {
    type Output = FPolynomial;
    fn add(self, rhs: &FPolynomial) -> FPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &FPolynomial {
    type Output = FPolynomial;
    fn sub(self, rhs: &FPolynomial) -> FPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &FPolynomial {
    type Output = FPolynomial;
    fn mul(self, rhs: &FPolynomial) -> FPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return FPolynomial::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FPolynomial::new(out)
    }
}

impl Neg for &FPolynomial {
    type Output = FPolynomial;
    fn neg(self) -> FPolynomial {
        FPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FPolynomial {
            type Output = FPolynomial;
            fn $m(self, rhs: FPolynomial) -> FPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Which reflection sign holds: `p(-1-t) = p(t)`, `p(-1-t) = -p(t)`, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionSign {
    Even,
    Odd,
    Neither,
}

pub fn reflection_sign(p: &FPolynomial) -> ReflectionSign {
    let r = p.reflect();
    if r == *p {
        ReflectionSign::Even
    } else if r == -p {
        ReflectionSign::Odd
    } else {
        ReflectionSign::Neither
    }
}

/// `p(t) + (-1)^d p(-1-t) = 0`, exactly. False when `deg p > d + 1`.
pub fn ds_symmetric(p: &FPolynomial, d: i64) -> bool {
    if p.degree().is_some_and(|k| k as i64 > d + 1) {
        return false;
    }
    let r = p.reflect();
    let sum = if d.rem_euclid(2) == 0 { p + &r } else { p - &r };
    sum.is_zero()
}

/// h-vector `(h_0, ..., h_{d+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector {
    #[serde(with = "rational::serde_bigint_vec")]
    pub entries: Vec<BigInt>,
}

impl HVector {
    pub fn is_palindromic(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

/// Coefficients of `(x - 1)^{d+1} p(1/(x - 1))`.
pub fn h_vector(p: &FPolynomial, d: i64) -> Result<HVector> {
    let n = d + 1;
    if p.degree().map(|k| k as i64) != Some(n) {
        return Err(Error::invalid(format!(
            "h-vector needs degree {n}, polynomial has degree {:?}",
            p.degree()
        )));
    }
    let n = n as usize;
    // sum_k c_k (x - 1)^{n - k}
    let mut h = vec![Q::zero(); n + 1];
    for (k, c) in p.coeffs().iter().enumerate() {
        let e = n - k;
        for (j, slot) in h.iter_mut().enumerate().take(e + 1) {
            let sign = if (e - j).is_multiple_of(2) { q(1) } else { q(-1) };
            *slot += c * qi(&binomial(e as u64, j as u64)) * sign;
        }
    }
    if !h.iter().all(is_integer) {
        return Err(Error::invalid("h-vector of a non-integral polynomial"));
    }
    Ok(HVector { entries: h.into_iter().map(|x| x.numer().clone()).collect() })
}
