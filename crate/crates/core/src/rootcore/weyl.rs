//! Finite reflection groups generated by a simple system inside a root datum.
//!
//! Elements are indices into an enumerated table. Each element carries its
//! lex-least reduced word, its integral matrix on simple-root coordinates and
//! its length.

use std::collections::HashMap;

use crate::num::Q;

use super::{RootDatum, Weight};

/// Standalone view of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Generator indices (0-based).
    pub reduced_word: Vec<usize>,
    /// Column-convention matrix: `new[i] = sum_j action[i][j] * old[j]`.
    pub action: Vec<Vec<i64>>,
    pub length: usize,
}

#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    /// Datum root indices of the simple reflections.
    pub gens: Vec<usize>,
    /// Datum root indices of the subsystem's positive roots.
    pub pos_roots: Vec<usize>,
    words: Vec<Vec<usize>>,
    mats: Vec<Vec<Vec<i64>>>,
    lengths: Vec<usize>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    rmul: Vec<Vec<usize>>,
    lmul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// `leq[y]` lists the bits of all `x <= y`.
    leq: Vec<Vec<u64>>,
    rank_dim: usize,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn mat_apply(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn reflection_matrix(datum: &RootDatum, b: usize) -> Vec<Vec<i64>> {
    // s_b(e_j) = e_j - (alpha_j, b^vee) beta_b
    let n = datum.rank;
    let mut m = vec![vec![0i64; n]; n];
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let k = datum.pairing_ints(&e, b);
        for i in 0..n {
            m[i][j] = e[i] - k * datum.roots[b][i];
        }
    }
    m
}

impl ReflectionGroup {
    /// Enumerates the group generated by reflections in the given simple roots.
    pub fn new(datum: &RootDatum, gens: Vec<usize>) -> Self {
        let n = datum.rank;
        let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let gmats: Vec<Vec<Vec<i64>>> = gens.iter().map(|&b| reflection_matrix(datum, b)).collect();

        let mut words = vec![Vec::new()];
        let mut mats = vec![id.clone()];
        let mut lengths = vec![0];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut layer = vec![0usize];
        let mut len = 0;
        while !layer.is_empty() {
            len += 1;
            let mut next = Vec::new();
            for &x in &layer {
                for (g, gm) in gmats.iter().enumerate() {
                    let m = mat_mul(&mats[x], gm);
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut w = words[x].clone();
                    w.push(g);
                    let k = words.len();
                    index.insert(m.clone(), k);
                    words.push(w);
                    mats.push(m);
                    lengths.push(len);
                    next.push(k);
                }
            }
            layer = next;
        }

        let size = words.len();
        let lookup = |m: &Vec<Vec<i64>>| index[m];
        let rmul: Vec<Vec<usize>> = (0..size)
            .map(|x| gmats.iter().map(|gm| lookup(&mat_mul(&mats[x], gm))).collect())
            .collect();
        let lmul: Vec<Vec<usize>> = (0..size)
            .map(|x| gmats.iter().map(|gm| lookup(&mat_mul(gm, &mats[x]))).collect())
            .collect();
        let inverse: Vec<usize> = (0..size)
            .map(|x| {
                let mut y = 0;
                for &g in words[x].iter().rev() {
                    y = rmul[y][g];
                }
                y
            })
            .collect();

        let pos_roots = subsystem_positive_roots(datum, &gens, &mats);
        let mut group = ReflectionGroup {
            gens,
            pos_roots,
            words,
            mats,
            lengths,
            index,
            rmul,
            lmul,
            inverse,
            leq: Vec::new(),
            rank_dim: n,
        };
        group.leq = group.bruhat_table(datum);
        group
    }

    /// The full Weyl group of the datum.
    pub fn weyl(datum: &RootDatum) -> Self {
        let gens = (0..datum.rank).map(|i| datum.simple_root(i)).collect();
        Self::new(datum, gens)
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    pub fn matrix(&self, x: usize) -> &[Vec<i64>] {
        &self.mats[x]
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x]
    }

    pub fn element(&self, x: usize) -> WeylElement {
        WeylElement {
            reduced_word: self.words[x].clone(),
            action: self.mats[x].clone(),
            length: self.lengths[x],
        }
    }

    /// Element with the given word (any word, not necessarily reduced).
    pub fn from_word(&self, word: &[usize]) -> Option<usize> {
        let mut x = 0;
        for &g in word {
            if g >= self.num_gens() {
                return None;
            }
            x = self.rmul[x][g];
        }
        Some(x)
    }

    pub fn from_matrix(&self, m: &Vec<Vec<i64>>) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.words[y].iter().fold(x, |acc, &g| self.rmul[acc][g])
    }

    /// `x s_g`.
    pub fn rmul_gen(&self, x: usize, g: usize) -> usize {
        self.rmul[x][g]
    }

    /// `s_g x`.
    pub fn lmul_gen(&self, x: usize, g: usize) -> usize {
        self.lmul[x][g]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn longest(&self) -> usize {
        (0..self.size()).max_by_key(|&x| self.lengths[x]).unwrap()
    }

    pub fn is_right_descent(&self, x: usize, g: usize) -> bool {
        self.lengths[self.rmul[x][g]] < self.lengths[x]
    }

    pub fn is_left_descent(&self, x: usize, g: usize) -> bool {
        self.lengths[self.lmul[x][g]] < self.lengths[x]
    }

    pub fn act_ints(&self, x: usize, v: &[i64]) -> Vec<i64> {
        mat_apply(&self.mats[x], v)
    }

    pub fn act(&self, x: usize, mu: &Weight) -> Weight {
        Weight(
            self.mats[x]
                .iter()
                .map(|row| row.iter().zip(&mu.0).map(|(&a, c)| c * Q::from_integer(a.into())).sum())
                .collect(),
        )
    }

    /// Elements sorted by length, then index.
    pub fn by_length(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.size()).collect();
        v.sort_by_key(|&x| (self.lengths[x], x));
        v
    }

    pub fn bruhat_leq(&self, x: usize, y: usize) -> bool {
        self.leq[y][x / 64] >> (x % 64) & 1 == 1
    }

    fn bruhat_table(&self, _datum: &RootDatum) -> Vec<Vec<u64>> {
        let size = self.size();
        let words = size.div_ceil(64);
        let mut leq = vec![vec![0u64; words]; size];
        for y in self.by_length() {
            if y == 0 {
                leq[0][0] |= 1;
                continue;
            }
            let g = *self.words[y].last().unwrap();
            let ys = self.rmul[y][g];
            let mut row = vec![0u64; words];
            for x in 0..size {
                let xs = self.rmul[x][g];
                let m = if self.lengths[xs] < self.lengths[x] { xs } else { x };
                if leq[ys][m / 64] >> (m % 64) & 1 == 1 {
                    row[x / 64] |= 1 << (x % 64);
                }
            }
            leq[y] = row;
        }
        leq
    }

    /// Number of subsystem positive roots sent negative.
    pub fn inversion_count(&self, datum: &RootDatum, x: usize) -> usize {
        self.pos_roots
            .iter()
            .filter(|&&b| self.act_ints(x, &datum.roots[b]).iter().any(|&c| c < 0))
            .count()
    }

    pub fn rank_dim(&self) -> usize {
        self.rank_dim
    }
}

fn subsystem_positive_roots(datum: &RootDatum, gens: &[usize], mats: &[Vec<Vec<i64>>]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for m in mats {
        for &b in gens {
            let r = mat_apply(m, &datum.roots[b]);
            if let Some((i, _)) = datum.signed_root_index(&r) {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Simple roots of the integral root subsystem `{beta : (lambda, beta^vee) in Z}`.
pub fn integral_weyl_group(datum: &RootDatum, lambda: &Weight) -> Vec<usize> {
    let integral: Vec<usize> = (0..datum.num_roots())
        .filter(|&b| datum.pairing(lambda, b).is_integer())
        .collect();
    integral
        .iter()
        .copied()
        .filter(|&b| {
            let m = reflection_matrix(datum, b);
            integral
                .iter()
                .all(|&c| c == b || mat_apply(&m, &datum.roots[c]).iter().all(|&x| x >= 0))
        })
        .collect()
}
