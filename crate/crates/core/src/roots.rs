//! Numeric roots of exact polynomials.
//!
//! The exact polynomial is first split into square-free factors (Yun), so
//! repeated roots never reach the floating-point iteration. Linear and
//! quadratic factors are solved in closed form; higher factors go through
//! Aberth-Ehrlich simultaneous iteration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::FPolynomial;

/// Iteration cap for Aberth-Ehrlich.
pub const MAX_ITERATIONS: usize = 200;
/// Default relative residual tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Roots closer than this to their mirror image count as paired.
pub const PAIRING_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
}

impl Root {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `|Im| < 1e-8 (1 + |Re|)`.
    pub fn is_real(&self) -> bool {
        self.im.abs() < 1e-8 * (1.0 + self.re.abs())
    }
}

impl From<Complex64> for Root {
    fn from(z: Complex64) -> Self {
        Root { re: z.re, im: z.im }
    }
}

/// All complex roots with multiplicity, plus the largest relative residual
/// `|p(z)| / sum |c_k| |z|^k` over the set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub residual_bound: f64,
}

impl RootSet {
    pub fn all_real(&self) -> bool {
        self.roots.iter().all(Root::is_real)
    }

    /// All roots real and inside the open interval `(-1, 0)`.
    pub fn all_in_unit_interval(&self) -> bool {
        self.roots.iter().all(|r| r.is_real() && r.re > -1.0 && r.re < 0.0)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Roots of `p` (degree at least 1).
pub fn roots(p: &FPolynomial, tolerance: f64) -> Result<RootSet> {
    let degree = p.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::invalid("root finding needs a polynomial of degree at least 1"));
    }
    let mut found: Vec<Complex64> = Vec::with_capacity(degree);
    for (factor, multiplicity) in p.squarefree_factors() {
        let z = squarefree_roots(&factor.to_f64(), tolerance)?;
        for _ in 0..multiplicity {
            found.extend_from_slice(&z);
        }
    }
    debug_assert_eq!(found.len(), degree);
    found.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let coeffs = p.to_f64();
    let residual_bound = found
        .iter()
        .map(|&z| relative_residual(&coeffs, z))
        .fold(0.0, f64::max);
    Ok(RootSet { roots: found.into_iter().map(Root::from).collect(), residual_bound })
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k)
}

/// `|p(z)| / sum |c_k| |z|^k`, the backward error of `z`.
pub fn relative_residual(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let scale = c.iter().rev().fold(0.0, |acc, k| acc * r + k.abs());
    if scale == 0.0 {
        return 0.0;
    }
    horner(c, z).norm() / scale
}

fn squarefree_roots(c: &[f64], tolerance: f64) -> Result<Vec<Complex64>> {
    match c.len() {
        2 => Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]),
        3 => Ok(quadratic(c[0], c[1], c[2]).to_vec()),
        _ => aberth(c, tolerance),
    }
}

/// Roots of `a + b t + c t^2` without cancellation in the real case.
fn quadratic(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let w = -0.5 * (b + b.signum() * s);
        if w == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(w / c, 0.0), Complex64::new(a / w, 0.0)]
    } else {
        let re = -b / (2.0 * c);
        let im = (-disc).sqrt() / (2.0 * c).abs();
        [Complex64::new(re, -im), Complex64::new(re, im)]
    }
}

fn aberth(c: &[f64], tolerance: f64) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|k| k / lead).collect();
    let deriv: Vec<f64> = monic.iter().enumerate().skip(1).map(|(k, x)| x * k as f64).collect();

    // Circle around the root mean with the geometric-mean root modulus.
    let center = -monic[n - 1] / n as f64;
    let radius = monic[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for k in 0..n {
            let pz = horner(&monic, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / horner(&deriv, z[k]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                if step.norm() > 1e-14 * (1.0 + z[k].norm()) {
                    converged = false;
                }
            } else {
                converged = false;
            }
        }
        let worst = z.iter().map(|&w| relative_residual(c, w)).fold(0.0, f64::max);
        if worst <= tolerance && (converged || worst <= tolerance * 1e-3) {
            return Ok(z);
        }
    }
    let worst = z.iter().map(|&w| relative_residual(c, w)).fold(0.0, f64::max);
    if worst <= tolerance {
        return Ok(z);
    }
    Err(Error::NumericFailure {
        iterations: MAX_ITERATIONS,
        best: z.iter().map(|w| (w.re, w.im)).collect(),
    })
}

/// Outcome of the mirror test `z -> -1 - z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    /// The multiset is invariant under `z -> -1 - z`.
    pub symmetric: bool,
    /// For even `d`: whether some root has real part `-1/2`.
    pub midpoint_root: Option<bool>,
}

pub fn root_pairing_check(r: &RootSet, d: i64) -> Pairing {
    let pts: Vec<Complex64> = r.roots.iter().map(Root::as_complex).collect();
    let mut used = vec![false; pts.len()];
    let mut symmetric = true;
    // Mirror of a root of a real polynomial may be matched by itself (on the
    // line Re = -1/2) or by any unused root within tolerance.
    'outer: for i in 0..pts.len() {
        if used[i] {
            continue;
        }
        let target = Complex64::new(-1.0, 0.0) - pts[i];
        if (target - pts[i]).norm() <= PAIRING_TOLERANCE {
            used[i] = true;
            continue;
        }
        for j in i + 1..pts.len() {
            if !used[j] && (pts[j] - target).norm() <= PAIRING_TOLERANCE {
                used[i] = true;
                used[j] = true;
                continue 'outer;
            }
        }
        symmetric = false;
        break;
    }
    let midpoint_root = (d.rem_euclid(2) == 0)
        .then(|| pts.iter().any(|z| (z.re + 0.5).abs() <= PAIRING_TOLERANCE));
    Pairing { symmetric, midpoint_root }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> FPolynomial {
        FPolynomial::from_integers(c)
    }

    #[test]
    fn perfect_power() {
        let r = roots(&p(&[1, 6, 12, 8]), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r.roots {
            assert_eq!((z.re, z.im), (-0.5, 0.0));
        }
        assert_eq!(r.residual_bound, 0.0);
    }

    #[test]
    fn cube_has_complex_roots() {
        let r = roots(&p(&[1, 8, 12, 6]), DEFAULT_TOLERANCE).unwrap();
        assert!(!r.all_real());
        assert!(r.residual_bound <= 1e-12);
    }

    #[test]
    fn sun_roots_are_closed_form() {
        let r = roots(&p(&[1, 29, 29]), DEFAULT_TOLERANCE).unwrap();
        let s = (25.0f64 / 116.0).sqrt();
        assert!((r.roots[0].re - (-0.5 - s)).abs() < 1e-12);
        assert!((r.roots[1].re - (-0.5 + s)).abs() < 1e-12);
        assert!(r.all_real());
    }

    #[test]
    fn aberth_on_separated_roots() {
        // (t+1)(t+2)(t+3)(t+4)(t+5)
        let r = roots(&p(&[120, 274, 225, 85, 15, 1]), DEFAULT_TOLERANCE).unwrap();
        for (k, z) in r.roots.iter().enumerate() {
            assert!((z.re + 5.0 - k as f64).abs() < 1e-9, "{z:?}");
            assert!(z.is_real());
        }
    }

    #[test]
    fn constant_is_rejected() {
        assert!(roots(&p(&[3]), DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn pairing() {
        let r = roots(&p(&[1, 10, 40, 80, 80, 32]), DEFAULT_TOLERANCE).unwrap();
        let pr = root_pairing_check(&r, 4);
        assert!(pr.symmetric);
        assert_eq!(pr.midpoint_root, Some(true));

        let r = roots(&p(&[1, 8, 16, 8]), DEFAULT_TOLERANCE).unwrap();
        assert!(!root_pairing_check(&r, 2).symmetric);

        let r = roots(&p(&[1, 29, 29]), DEFAULT_TOLERANCE).unwrap();
        let pr = root_pairing_check(&r, 1);
        assert!(pr.symmetric);
        assert_eq!(pr.midpoint_root, None);
    }
}
