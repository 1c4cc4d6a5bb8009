//! Exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Determinant and, when it is non-zero, `det * A^{-1}` (the adjugate),
/// from fraction-free Gauss-Jordan elimination on `[A | I]`. Every division
/// in the elimination is exact.
pub struct Bareiss {
    pub det: BigInt,
    pub adjugate: Option<IntMatrix>,
}

pub fn bareiss(a: &IntMatrix) -> Bareiss {
    let n = a.len();
    if n == 0 {
        return Bareiss { det: BigInt::one(), adjugate: Some(Vec::new()) };
    }
    let mut m: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Bareiss { det: BigInt::zero(), adjugate: None };
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        let pivot = pivot_row[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!(v.is_multiple_of(&prev));
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot;
    }
    // Left block is now prev * I; right block is prev * A^{-1}.
    let det = if negate { -prev } else { prev };
    let sign = if negate { -BigInt::one() } else { BigInt::one() };
    let adjugate = m.into_iter().map(|row| row[n..].iter().map(|x| x * &sign).collect()).collect();
    Bareiss { det, adjugate: Some(adjugate) }
}

/// Exact integer inverse when `det = ±1`; `None` otherwise.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<(BigInt, IntMatrix)> {
    let b = bareiss(a);
    if !b.det.abs().is_one() {
        return None;
    }
    let adj = b.adjugate?;
    let inv = adj.into_iter().map(|row| row.into_iter().map(|x| x * &b.det).collect()).collect();
    Some((b.det, inv))
}

/// Solution set of `M x = rhs` over the rationals: a particular solution and
/// a basis of the null space, or `None` when inconsistent.
pub fn solve_affine(m: &[Vec<Q>], rhs: &[Q], cols: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let rows = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect();
    Some((particular, basis))
}

/// Scales a rational vector to coprime integers with the last non-zero
/// entry positive.
pub fn normalize_integer(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let last_negative = ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if last_negative { -g } else { g };
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Leibniz expansion, used as an independent determinant oracle.
    fn leibniz(a: &IntMatrix) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod: BigInt = (0..n).map(|i| a[i][p[i]].clone()).product();
                if inversions % 2 == 0 { prod } else { -prod }
            })
            .sum()
    }

    #[test]
    fn determinant_matches_leibniz() {
        let cases = [
            m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]),
            m(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]),
            m(&[&[1, 2], &[2, 4]]),
            m(&[&[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 5]]),
            m(&[&[3, -2, 5, 1], &[0, 4, -1, 2], &[7, 1, 1, -3], &[2, 2, 0, 6]]),
        ];
        for a in &cases {
            assert_eq!(bareiss(a).det, leibniz(a), "{a:?}");
        }
    }

    #[test]
    fn adjugate_inverts() {
        let a = m(&[&[3, -2, 5, 1], &[0, 4, -1, 2], &[7, 1, 1, -3], &[2, 2, 0, 6]]);
        let b = bareiss(&a);
        let prod = mat_mul(&a, b.adjugate.as_ref().unwrap());
        let expected: IntMatrix = identity(4)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * &b.det).collect())
            .collect();
        assert_eq!(prod, expected);
    }

    #[test]
    fn unimodular() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let (det, inv) = unimodular_inverse(&a).unwrap();
        assert_eq!(det, BigInt::from(-1));
        assert_eq!(inv, m(&[&[0, -1, 1], &[-1, 0, 1], &[1, 1, -1]]));
        assert!(unimodular_inverse(&m(&[&[2, 0], &[0, 1]])).is_none());
    }

    #[test]
    fn affine_solutions() {
        // x + y = 2, y - z = 0
        let mtx = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(-1)]];
        let (p, basis) = solve_affine(&mtx, &[q(2), q(0)], 3).unwrap();
        assert_eq!(p, vec![q(2), q(0), q(0)]);
        assert_eq!(basis, vec![vec![q(-1), q(1), q(1)]]);
        assert!(solve_affine(&[vec![q(0)]], &[q(1)], 1).is_none());
    }

    #[test]
    fn integer_normalization() {
        let v = normalize_integer(&[q(0), crate::rational::frac(-1, 2), q(1)]);
        assert_eq!(v, vec![BigInt::from(0), BigInt::from(-1), BigInt::from(2)]);
        let v = normalize_integer(&[q(2), q(-4)]);
        assert_eq!(v, vec![BigInt::from(-1), BigInt::from(2)]);
    }
}
