//! Chevalley basis structure constants.
//!
//! Roots are addressed by signed ids: `k < n` is the positive root `k`,
//! `k >= n` is the negative of root `k - n`. Signs follow the extraspecial
//! pair convention: `N_{a,b} = p + 1` on every extraspecial pair.

use crate::rootcore::RootDatum;

#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    rank: usize,
    /// Dense `2n x 2n` table of `N_{a,b}` (0 when `a + b` is not a root).
    table: Vec<i64>,
    /// Signed id of `a + b`, if a root.
    sums: Vec<Option<usize>>,
    vecs: Vec<Vec<i64>>,
    half_norm: Vec<i64>,
    coroot: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
}

impl StructureConstants {
    pub fn new(datum: &RootDatum) -> Self {
        let n = datum.num_roots();
        let rank = datum.rank;
        let mut vecs: Vec<Vec<i64>> = datum.roots.clone();
        vecs.extend(datum.roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let mut half_norm = datum.half_norm.clone();
        half_norm.extend(datum.half_norm.iter().copied());
        let id_of = |v: &[i64]| -> Option<usize> {
            datum.signed_root_index(v).map(|(b, s)| if s > 0 { b } else { b + n })
        };
        let mut sums = vec![None; 4 * n * n];
        for a in 0..2 * n {
            for b in 0..2 * n {
                let s: Vec<i64> = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x + y).collect();
                sums[a * 2 * n + b] = id_of(&s);
            }
        }
        let mut sc = StructureConstants {
            n,
            rank,
            table: vec![0; 4 * n * n],
            sums,
            vecs,
            half_norm,
            coroot: datum.coroot.clone(),
            cartan: datum.cartan.clone(),
        };
        sc.fill_positive();
        for a in 0..2 * n {
            for b in 0..2 * n {
                if sc.sum(a, b).is_some() && !(a < n && b < n) {
                    let v = sc.derive(a, b);
                    sc.table[a * 2 * n + b] = v;
                }
            }
        }
        sc
    }

    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * 2 * self.n + b]
    }

    fn neg(&self, a: usize) -> usize {
        if a < self.n {
            a + self.n
        } else {
            a - self.n
        }
    }

    /// Largest `p` with `b - p a` a root.
    fn string_down(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = self.sum(self.neg(a), cur) {
            p += 1;
            cur = next;
        }
        p
    }

    fn fill_positive(&mut self) {
        let n = self.n;
        let w = 2 * n;
        // Positive roots are already in height order.
        for xi in 0..n {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if self.sum(a, b) == Some(xi) {
                        pairs.push((a, b));
                    }
                }
            }
            let Some(&(r1, s1)) = pairs.first() else {
                continue;
            };
            let extra = self.string_down(r1, s1) + 1;
            self.table[r1 * w + s1] = extra;
            self.table[s1 * w + r1] = -extra;
            for &(r, s) in &pairs[1..] {
                // Four-root identity for r + s - r1 - s1 = 0.
                let hn_xi = self.half_norm[xi];
                let mut acc_num = 0i64;
                let mut acc_den = 1i64;
                let mut add = |num: i64, den: i64| {
                    acc_num = acc_num * den + num * acc_den;
                    acc_den *= den;
                };
                let mr1 = self.neg(r1);
                let ms1 = self.neg(s1);
                if let Some(d) = self.sum(s, mr1) {
                    add(self.derive(s, mr1) * self.derive(r, ms1), self.half_norm[d]);
                }
                if let Some(d) = self.sum(r, mr1) {
                    add(self.derive(mr1, r) * self.derive(s, ms1), self.half_norm[d]);
                }
                let num = hn_xi * acc_num;
                let den = extra * acc_den;
                assert_eq!(num % den, 0, "non-integral structure constant");
                let v = num / den;
                self.table[r * w + s] = v;
                self.table[s * w + r] = -v;
            }
        }
    }

    /// `N_{a,b}` from the positive-pair table via the standard relations.
    fn derive(&self, a: usize, b: usize) -> i64 {
        let n = self.n;
        let w = 2 * n;
        let Some(d) = self.sum(a, b) else {
            return 0;
        };
        match (a < n, b < n) {
            (true, true) => self.table[a * w + b],
            (false, false) => -self.table[self.neg(a) * w + self.neg(b)],
            (false, true) => -self.derive(b, a),
            (true, false) => {
                let c = self.neg(d);
                if c < n {
                    // N_{a,b}/(c,c) = N_{c,a}/(b,b)
                    let v = self.half_norm[c] * self.table[c * w + a];
                    assert_eq!(v % self.half_norm[b], 0);
                    v / self.half_norm[b]
                } else {
                    // N_{a,b}/(c,c) = N_{b,c}/(a,a), N_{b,c} = -N_{-b,-c}
                    let nbc = -self.table[self.neg(b) * w + self.neg(c)];
                    let v = self.half_norm[c] * nbc;
                    assert_eq!(v % self.half_norm[a], 0);
                    v / self.half_norm[a]
                }
            }
        }
    }

    pub fn num_pos(&self) -> usize {
        self.n
    }

    /// `N_{a,b}` for signed ids.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.table[a * 2 * self.n + b]
    }

    /// Signed id of `a + b`.
    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum(a, b)
    }

    pub fn root_vec(&self, a: usize) -> &[i64] {
        &self.vecs[a]
    }

    pub fn negate(&self, a: usize) -> usize {
        self.neg(a)
    }

    /// `<root a, alpha_i^vee>`.
    pub fn simple_coroot_pairing(&self, a: usize, i: usize) -> i64 {
        self.vecs[a].iter().zip(&self.cartan[i]).map(|(x, k)| x * k).sum()
    }

    /// Coefficients of `H_beta` in the simple coroots.
    pub fn coroot(&self, b: usize) -> &[i64] {
        &self.coroot[b]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Finite-dimensional adjoint model used for identity checks.
///
/// Basis: `E_a` for all signed ids `a`, then `H_1..H_r`.
pub struct Adjoint<'a> {
    pub sc: &'a StructureConstants,
}

impl Adjoint<'_> {
    pub fn dim(&self) -> usize {
        2 * self.sc.n + self.sc.rank
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<i64> {
        let sc = self.sc;
        let n2 = 2 * sc.n;
        let mut out = vec![0i64; self.dim()];
        match (i < n2, j < n2) {
            (true, true) => {
                if sc.negate(i) == j {
                    let (b, s) = if i < sc.n { (i, 1) } else { (j, -1) };
                    for (k, c) in sc.coroot(b).iter().enumerate() {
                        out[n2 + k] += s * c;
                    }
                } else if let Some(c) = sc.root_sum(i, j) {
                    out[c] += sc.get(i, j);
                }
            }
            (false, true) => out[j] += sc.simple_coroot_pairing(j, i - n2),
            (true, false) => out[i] -= sc.simple_coroot_pairing(i, j - n2),
            (false, false) => {}
        }
        out
    }

    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j).into_iter().enumerate() {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let e = |i: usize| {
            let mut v = vec![0i64; d];
            v[i] = 1;
            v
        };
        for i in 0..d {
            for j in i + 1..d {
                let ij = self.bracket_basis(i, j);
                for k in j + 1..d {
                    let a = self.bracket(&ij, &e(k));
                    let b = self.bracket(&self.bracket_basis(j, k), &e(i));
                    let c = self.bracket(&self.bracket_basis(k, i), &e(j));
                    if (0..d).any(|t| a[t] + b[t] + c[t] != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::{build_from_str, CartanType, Marking};

    #[test]
    fn jacobi_and_magnitudes() {
        for t in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA1"] {
            let r = CartanType::parse(t).unwrap().rank();
            let d = build_from_str(t, &vec![Marking::Compact; r]).unwrap();
            let sc = StructureConstants::new(&d);
            let n = d.num_roots();
            for a in 0..2 * n {
                for b in 0..2 * n {
                    if sc.root_sum(a, b).is_some() {
                        assert_eq!(sc.get(a, b), -sc.get(b, a));
                        assert_eq!(sc.get(a, b).abs(), sc.string_down(a, b) + 1, "{t} {a} {b}");
                    }
                }
            }
            assert_eq!(Adjoint { sc: &sc }.jacobi_violation(), None, "{t}");
        }
    }
}
