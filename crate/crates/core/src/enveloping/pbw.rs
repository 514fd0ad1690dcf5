//! PBW monomials in the negative root vectors and the combinatorial action of
//! positive root vectors on the Verma module.
//!
//! A monomial is an exponent vector over the positive roots, read as
//! `Y_{b_0}^{e_0} Y_{b_1}^{e_1} ...` in root order, applied to the highest
//! weight vector. Coefficients produced by `X_gamma` are affine forms in the
//! pairings `x_i = (lambda, alpha_i^vee)`, so the cache is independent of
//! `lambda`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::num::Scalar;
use crate::rootcore::{Grading, RootDatum};

use super::structure::StructureConstants;

pub type Mono = Vec<u16>;

/// `c[0] + sum_i c[i + 1] x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineForm(pub Vec<i64>);

impl AffineForm {
    fn zero(rank: usize) -> Self {
        AffineForm(vec![0; rank + 1])
    }

    fn constant(rank: usize, c: i64) -> Self {
        let mut f = Self::zero(rank);
        f.0[0] = c;
        f
    }

    fn add_scaled(&mut self, other: &AffineForm, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = b
                .checked_mul(k)
                .and_then(|v| a.checked_add(v))
                .expect("affine coefficient overflow");
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn eval<R: Scalar>(&self, x: &[R]) -> R {
        let mut acc = R::from_i64(self.0[0]);
        for (c, xi) in self.0[1..].iter().zip(x) {
            if *c != 0 {
                acc = acc.add(&xi.scale_i64(*c));
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Y,
    X,
}

type MulKey = (Side, usize, Mono);
type ActKey = (usize, Mono);

pub struct PbwAlgebra {
    pub sc: StructureConstants,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    pub grading: Grading,
    mul_cache: RwLock<HashMap<MulKey, Arc<Vec<(Mono, i64)>>>>,
    act_cache: RwLock<HashMap<ActKey, Arc<Vec<(Mono, AffineForm)>>>>,
    basis_cache: RwLock<HashMap<Vec<i64>, Arc<Vec<Mono>>>>,
}

impl std::fmt::Debug for PbwAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PbwAlgebra").field("rank", &self.rank).finish()
    }
}

fn first_root(m: &[u16]) -> Option<usize> {
    m.iter().position(|&e| e > 0)
}

fn accumulate<K: std::hash::Hash + Eq + Clone>(acc: &mut Vec<(K, i64)>, index: &mut HashMap<K, usize>, k: K, c: i64) {
    if c == 0 {
        return;
    }
    match index.get(&k) {
        Some(&i) => acc[i].1 += c,
        None => {
            index.insert(k.clone(), acc.len());
            acc.push((k, c));
        }
    }
}

impl PbwAlgebra {
    pub fn new(datum: &RootDatum) -> Self {
        PbwAlgebra {
            sc: StructureConstants::new(datum),
            rank: datum.rank,
            roots: datum.roots.clone(),
            cartan: datum.cartan.clone(),
            grading: datum.grading.clone(),
            mul_cache: RwLock::new(HashMap::new()),
            act_cache: RwLock::new(HashMap::new()),
            basis_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// `sum_b e_b beta_b`.
    pub fn weight(&self, m: &[u16]) -> Vec<i64> {
        let mut w = vec![0i64; self.rank];
        for (b, &e) in m.iter().enumerate() {
            for (wi, r) in w.iter_mut().zip(&self.roots[b]) {
                *wi += i64::from(e) * r;
            }
        }
        w
    }

    /// `<nu, alpha_i^vee>` for an integer weight.
    pub fn simple_pairing(&self, nu: &[i64], i: usize) -> i64 {
        nu.iter().zip(&self.cartan[i]).map(|(a, b)| a * b).sum()
    }

    /// Monomials of weight `mu`, in descending lexicographic order of exponents.
    pub fn basis(&self, mu: &[i64]) -> Arc<Vec<Mono>> {
        if let Some(b) = self.basis_cache.read().unwrap().get(mu) {
            return b.clone();
        }
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.num_roots()];
        self.enumerate(0, mu.to_vec(), &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        let out = Arc::new(out);
        self.basis_cache.write().unwrap().insert(mu.to_vec(), out.clone());
        out
    }

    fn enumerate(&self, k: usize, rest: Vec<i64>, cur: &mut Mono, out: &mut Vec<Mono>) {
        if rest.iter().any(|&c| c < 0) {
            return;
        }
        if rest.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        if k == self.num_roots() {
            return;
        }
        let mut r = rest;
        let mut e = 0u16;
        while r.iter().all(|&c| c >= 0) {
            cur[k] = e;
            self.enumerate(k + 1, r.clone(), cur, out);
            r.iter_mut().zip(&self.roots[k]).for_each(|(c, d)| *c -= d);
            e += 1;
        }
        cur[k] = 0;
    }

    /// Left multiplication of a normal-ordered monomial by `Y_beta` (or `X_beta`).
    pub fn pmul(&self, side: Side, beta: usize, m: &[u16]) -> Arc<Vec<(Mono, i64)>> {
        let key = (side, beta, m.to_vec());
        if let Some(v) = self.mul_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let mut acc: Vec<(Mono, i64)> = Vec::new();
        let mut idx = HashMap::new();
        match first_root(m) {
            Some(f) if f < beta => {
                let mut rest = m.to_vec();
                rest[f] -= 1;
                for (k, c) in self.pmul(side, beta, &rest).iter() {
                    let mut k = k.clone();
                    k[f] += 1;
                    accumulate(&mut acc, &mut idx, k, *c);
                }
                let n = self.sc.num_pos();
                let (a, b) = match side {
                    Side::Y => (beta + n, f + n),
                    Side::X => (beta, f),
                };
                if let Some(s) = self.sc.root_sum(a, b) {
                    let coeff = self.sc.get(a, b);
                    let target = if s >= n { s - n } else { s };
                    for (k, c) in self.pmul(side, target, &rest).iter() {
                        accumulate(&mut acc, &mut idx, k.clone(), coeff * c);
                    }
                }
            }
            _ => {
                let mut k = m.to_vec();
                k[beta] += 1;
                acc.push((k, 1));
            }
        }
        acc.retain(|(_, c)| *c != 0);
        let acc = Arc::new(acc);
        self.mul_cache.write().unwrap().insert(key, acc.clone());
        acc
    }

    /// `X_gamma (m v)` as a combination of monomials with affine coefficients.
    pub fn xact(&self, gamma: usize, m: &[u16]) -> Arc<Vec<(Mono, AffineForm)>> {
        let key = (gamma, m.to_vec());
        if let Some(v) = self.act_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let rank = self.rank;
        let mut acc: Vec<(Mono, AffineForm)> = Vec::new();
        let mut idx: HashMap<Mono, usize> = HashMap::new();
        let mut push = |acc: &mut Vec<(Mono, AffineForm)>, k: Mono, f: &AffineForm, s: i64| {
            let i = *idx.entry(k.clone()).or_insert_with(|| {
                acc.push((k, AffineForm::zero(rank)));
                acc.len() - 1
            });
            acc[i].1.add_scaled(f, s);
        };
        if let Some(beta) = first_root(m) {
            let mut rest = m.to_vec();
            rest[beta] -= 1;
            // Y_beta (X_gamma rest v)
            for (k, f) in self.xact(gamma, &rest).iter() {
                for (k2, c) in self.pmul(Side::Y, beta, k).iter() {
                    push(&mut acc, k2.clone(), f, *c);
                }
            }
            // [X_gamma, Y_beta] rest v
            let n = self.sc.num_pos();
            if gamma == beta {
                let nu = self.weight(&rest);
                let k = self.sc.coroot(beta);
                let mut f = AffineForm::zero(rank);
                for i in 0..rank {
                    f.0[i + 1] = k[i];
                    f.0[0] -= k[i] * (1 + self.simple_pairing(&nu, i));
                }
                push(&mut acc, rest.clone(), &f, 1);
            } else if let Some(s) = self.sc.root_sum(gamma, beta + n) {
                let coeff = self.sc.get(gamma, beta + n);
                if s < n {
                    for (k, f) in self.xact(s, &rest).iter() {
                        push(&mut acc, k.clone(), f, coeff);
                    }
                } else {
                    for (k, c) in self.pmul(Side::Y, s - n, &rest).iter() {
                        push(&mut acc, k.clone(), &AffineForm::constant(rank, *c), coeff);
                    }
                }
            }
        }
        acc.retain(|(_, f)| !f.is_zero());
        let acc = Arc::new(acc);
        self.act_cache.write().unwrap().insert(key, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::{build_from_str, KostantTable, Marking};

    #[test]
    fn basis_sizes_match_partition_function() {
        let d = build_from_str("C2", &[Marking::Compact; 2]).unwrap();
        let p = PbwAlgebra::new(&d);
        let mut kt = KostantTable::new();
        for a in 0..5 {
            for b in 0..4 {
                assert_eq!(p.basis(&[a, b]).len() as u64, kt.get(&d, &[a, b]));
            }
        }
    }

    #[test]
    fn sl2_action() {
        // X Y^n v = n (x - n) Y^{n-1} v
        let d = build_from_str("A1", &[Marking::Compact]).unwrap();
        let p = PbwAlgebra::new(&d);
        for n in 1..6u16 {
            let r = p.xact(0, &[n]);
            assert_eq!(r.len(), 1);
            assert_eq!(r[0].0, vec![n - 1]);
            let n = i64::from(n);
            assert_eq!(r[0].1, AffineForm(vec![-n * n, n]));
        }
    }
}
