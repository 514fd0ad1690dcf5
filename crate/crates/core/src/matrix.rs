//! Exact dense linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::num::Q;

pub type Matrix<R> = Vec<Vec<R>>;

/// Inertia of a symmetric form: positive, negative and zero counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }
    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }
}

pub fn is_symmetric<R: PartialEq>(m: &Matrix<R>) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Inertia by symmetric Gaussian elimination (Sylvester's law).
pub fn inertia(m: &Matrix<Q>) -> Inertia {
    let mut a = m.clone();
    let mut out = Inertia::default();
    let mut live: Vec<usize> = (0..a.len()).collect();
    while !live.is_empty() {
        let piv = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let off = live.iter().enumerate().find_map(|(k, &i)| {
                    live[k + 1..]
                        .iter()
                        .copied()
                        .find(|&j| !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = off else {
                    out.zero += live.len();
                    break;
                };
                // e_i <- e_i + e_j makes the diagonal 2 a_ij.
                for k in 0..a.len() {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..a.len() {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
        live.retain(|&i| i != p);
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &live {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
    }
    out
}

pub fn determinant(m: &Matrix<Q>) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Basis of the right null space `{v : m v = 0}`.
pub fn nullspace(m: &Matrix<Q>) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Q::one() / &a[r][c];
        for k in 0..cols {
            a[r][k] *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix<Q>, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let i = inertia(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!((i.pos, i.neg, i.zero), (1, 1, 0));
    }

    #[test]
    fn inertia_with_kernel() {
        let i = inertia(&m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -2]]));
        assert_eq!((i.pos, i.neg, i.zero), (1, 1, 1));
    }

    #[test]
    fn determinant_and_nullspace() {
        let a = m(&[&[2, 1], &[4, 2]]);
        assert_eq!(determinant(&a), q(0));
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(Zero::is_zero));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), q(-1));
    }
}
