//! Root data, weights, the compact/noncompact grading, Weyl groups and
//! partition functions.

mod kostant;
mod weyl;

pub use kostant::{kostant_partition, weight_multiplicity, KostantTable};
pub use weyl::{integral_weyl_group, ReflectionGroup, WeylElement};

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{format_q, q, Q};

/// Simple type and rank, e.g. `('A', 2)`.
pub type SimpleType = (char, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<SimpleType>,
}

impl CartanType {
    /// Parses `A2`, `c2`, `A1xA1`, `B2+G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(s.to_string());
        let mut components = Vec::new();
        for part in s.split(['x', 'X', '+', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
            let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
            let ok = match letter {
                'A' => n >= 1,
                'B' | 'C' => n >= 2,
                'D' => n >= 4,
                'E' => (6..=8).contains(&n),
                'F' => n == 4,
                'G' => n == 2,
                _ => false,
            };
            if !ok {
                return Err(unknown());
            }
            components.push((letter, n));
        }
        Ok(CartanType { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(l, n)| format!("{l}{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Cartan matrix `A[i][j] = <alpha_i^vee, alpha_j>` in Bourbaki numbering.
fn simple_cartan(letter: char, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        'F' | 'G' => (0..n - 1).for_each(|i| link(i, i + 1)),
        _ => unreachable!(),
    }
    match letter {
        'B' => a[n - 1][n - 2] = -2,
        'C' => a[n - 2][n - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marking {
    Compact,
    Noncompact,
}

/// Exact rational vector in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight(c.iter().map(|&x| q(x)).collect())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn height(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates if the weight lies in the root lattice.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(crate::num::q_to_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_q).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Parity grading of the root lattice induced by the marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    noncompact: Vec<bool>,
}

impl Grading {
    pub fn eval_ints(&self, mu: &[i64]) -> u8 {
        let s: i64 = mu
            .iter()
            .zip(&self.noncompact)
            .filter(|(_, &nc)| nc)
            .map(|(c, _)| *c)
            .sum();
        s.rem_euclid(2) as u8
    }

    pub fn eval(&self, mu: &Weight) -> Result<u8> {
        let ints = mu
            .to_ints()
            .ok_or_else(|| Error::NotInRootLattice(format!("{mu:?}")))?;
        Ok(self.eval_ints(&ints))
    }

    /// `(-1)^{eps(mu)}`.
    pub fn sign_ints(&self, mu: &[i64]) -> i64 {
        if self.eval_ints(mu) == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (alpha_i, alpha_i) / 2`, integral and minimal per component.
    pub sym: Vec<i64>,
    /// Positive roots in simple-root coordinates, height-then-lex order.
    pub roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    /// `pair[b][j] = (alpha_j, beta_b^vee)`.
    pair: Vec<Vec<i64>>,
    /// `beta_b^vee = sum_i coroot[b][i] alpha_i^vee`.
    pub coroot: Vec<Vec<i64>>,
    /// `(beta_b, beta_b) / 2`.
    pub half_norm: Vec<i64>,
    pub rho: Weight,
    pub marking: Vec<Marking>,
    pub grading: Grading,
}

pub fn build_root_datum(cartan_type: &CartanType, marking: &[Marking]) -> Result<RootDatum> {
    let rank = cartan_type.rank();
    if marking.len() != rank {
        return Err(Error::InconsistentMarking(format!(
            "{} entries for rank {rank}",
            marking.len()
        )));
    }
    let mut cartan = vec![vec![0i64; rank]; rank];
    let mut off = 0;
    for &(l, n) in &cartan_type.components {
        let block = simple_cartan(l, n);
        for i in 0..n {
            for j in 0..n {
                cartan[off + i][off + j] = block[i][j];
            }
        }
        off += n;
    }
    let sym = symmetrizer(&cartan);
    let roots = positive_roots(&cartan);
    let root_index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let bil = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..rank {
            for j in 0..rank {
                s += x[i] * sym[i] * cartan[i][j] * y[j];
            }
        }
        s
    };
    let mut pair = Vec::new();
    let mut coroot = Vec::new();
    let mut half_norm = Vec::new();
    for r in &roots {
        let hn = bil(r, r) / 2;
        let mut e = vec![0i64; rank];
        let row: Vec<i64> = (0..rank)
            .map(|j| {
                e.iter_mut().for_each(|x| *x = 0);
                e[j] = 1;
                let v = bil(&e, r);
                debug_assert_eq!(v % hn, 0);
                v / hn
            })
            .collect();
        pair.push(row);
        coroot.push((0..rank).map(|i| r[i] * sym[i] / hn).collect());
        half_norm.push(hn);
    }
    let mut rho = Weight::zero(rank);
    for r in &roots {
        for i in 0..rank {
            rho.0[i] += Q::new(r[i].into(), 2.into());
        }
    }
    let grading = Grading {
        noncompact: marking.iter().map(|m| *m == Marking::Noncompact).collect(),
    };
    let datum = RootDatum {
        cartan_type: cartan_type.clone(),
        rank,
        cartan,
        sym,
        roots,
        root_index,
        pair,
        coroot,
        half_norm,
        rho,
        marking: marking.to_vec(),
        grading,
    };
    datum.check_marking()?;
    Ok(datum)
}

pub fn build_from_str(cartan_type: &str, marking: &[Marking]) -> Result<RootDatum> {
    build_root_datum(&CartanType::parse(cartan_type)?, marking)
}

fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if a[i][j] != 0 && i != j && d[j].is_none() {
                    // d_i a_ij = d_j a_ji
                    let dj = d[i].clone().unwrap() * q(a[i][j]) / q(a[j][i]);
                    d[j] = Some(dj);
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        let scaled: Vec<Q> = comp.iter().map(|&i| d[i].clone().unwrap() / &min).collect();
        let l = scaled
            .iter()
            .fold(num_bigint::BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
        for (k, &i) in comp.iter().enumerate() {
            out[i] = crate::num::q_to_i64(&(&scaled[k] * Q::from_integer(l.clone()))).unwrap();
        }
    }
    out
}

fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: Vec<Vec<i64>> = simple.clone();
    let mut set: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for r in &layer {
            for i in 0..n {
                // alpha_i string through r: p down, q = p - <r, alpha_i^vee> up.
                let mut p = 0;
                let mut down = r.clone();
                loop {
                    down[i] -= 1;
                    if set.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| a[i][j] * r[j]).sum();
                if p - pairing > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        next.push(up.clone());
                        all.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    all
}

impl RootDatum {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// Signed lookup: `Some((b, +1))` for a positive root, `Some((b, -1))` for its negative.
    pub fn signed_root_index(&self, r: &[i64]) -> Option<(usize, i64)> {
        if let Some(b) = self.root_index(r) {
            return Some((b, 1));
        }
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        self.root_index(&neg).map(|b| (b, -1))
    }

    pub fn simple_root(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        self.root_index(&e).unwrap()
    }

    pub fn root_weight(&self, b: usize) -> Weight {
        Weight::from_ints(&self.roots[b])
    }

    pub fn height(&self, b: usize) -> i64 {
        self.roots[b].iter().sum()
    }

    /// `(mu, beta_b^vee)`.
    pub fn pairing(&self, mu: &Weight, b: usize) -> Q {
        mu.0.iter().zip(&self.pair[b]).map(|(c, &k)| c * q(k)).sum()
    }

    pub fn pairing_ints(&self, mu: &[i64], b: usize) -> i64 {
        mu.iter().zip(&self.pair[b]).map(|(c, k)| c * k).sum()
    }

    /// `(mu, alpha_i^vee)` for simple `i`.
    pub fn simple_pairing(&self, mu: &Weight, i: usize) -> Q {
        mu.0.iter().zip(&self.cartan[i]).map(|(c, &k)| c * q(k)).sum()
    }

    pub fn simple_pairings(&self, mu: &Weight) -> Vec<Q> {
        (0..self.rank).map(|i| self.simple_pairing(mu, i)).collect()
    }

    /// Symmetric bilinear form in simple-root coordinates.
    pub fn inner(&self, x: &Weight, y: &Weight) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &x.0[i] * q(self.sym[i] * self.cartan[i][j]) * &y.0[j];
            }
        }
        s
    }

    /// Weight with prescribed simple-coroot pairings.
    pub fn weight_from_pairings(&self, p: &[Q]) -> Weight {
        let n = self.rank;
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = self.cartan[i].iter().map(|&x| q(x)).collect();
                row.push(p[i].clone());
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !a[r][c].is_zero()).unwrap();
            a.swap(c, piv);
            let inv = Q::one() / &a[c][c];
            for k in c..=n {
                a[c][k] *= &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in c..=n {
                        let v = &f * &a[c][k];
                        a[r][k] -= v;
                    }
                }
            }
        }
        Weight(a.into_iter().map(|row| row[n].clone()).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let p: Vec<Q> = (0..self.rank).map(|j| q(i64::from(i == j))).collect();
        self.weight_from_pairings(&p)
    }

    /// `s_beta(mu) = mu - (mu, beta^vee) beta`.
    pub fn reflect(&self, mu: &Weight, b: usize) -> Weight {
        let k = self.pairing(mu, b);
        let r = self.root_weight(b).scale(&k);
        mu - &r
    }

    pub fn is_noncompact(&self, b: usize) -> bool {
        self.grading.eval_ints(&self.roots[b]) == 1
    }

    /// Index of the highest root of each simple component.
    pub fn highest_roots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut off = 0;
        for &(_, n) in &self.cartan_type.components {
            let best = (0..self.num_roots())
                .filter(|&b| {
                    self.roots[b]
                        .iter()
                        .enumerate()
                        .all(|(i, &c)| (off..off + n).contains(&i) || c == 0)
                })
                .max_by_key(|&b| self.height(b))
                .unwrap();
            out.push(best);
            off += n;
        }
        out
    }

    fn check_marking(&self) -> Result<()> {
        // Compact roots must be closed under addition.
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i..] {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.root_index(&s).is_some()
                    && !self.is_noncompact(self.root_index(a).unwrap())
                    && !self.is_noncompact(self.root_index(b).unwrap())
                    && self.grading.eval_ints(&s) == 1
                {
                    return Err(Error::InconsistentMarking(format!(
                        "{a:?} + {b:?} is noncompact"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Pairings with every positive coroot.
    pub fn all_pairings(&self, mu: &Weight) -> Vec<Q> {
        (0..self.num_roots()).map(|b| self.pairing(mu, b)).collect()
    }

    /// True if `(mu, beta^vee) != 0` for every root.
    pub fn is_regular(&self, mu: &Weight) -> bool {
        (0..self.num_roots()).all(|b| !self.pairing(mu, b).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compact(n: usize) -> Vec<Marking> {
        vec![Marking::Compact; n]
    }

    #[test]
    fn root_counts() {
        for (t, n) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("C2", 4), ("G2", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("F4", 24), ("E6", 36), ("A1xA1", 2)] {
            let d = build_from_str(t, &compact(CartanType::parse(t).unwrap().rank())).unwrap();
            assert_eq!(d.num_roots(), n, "{t}");
        }
    }

    #[test]
    fn c2_roots_and_rho() {
        let d = build_from_str("C2", &compact(2)).unwrap();
        assert_eq!(d.roots, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
        for b in 0..4 {
            assert_eq!(d.pairing(&d.root_weight(b), b), q(2));
        }
        for i in 0..2 {
            assert_eq!(d.simple_pairing(&d.rho, i), q(1));
        }
    }

    #[test]
    fn g2_highest_root() {
        let d = build_from_str("G2", &compact(2)).unwrap();
        assert_eq!(d.roots[d.highest_roots()[0]], vec![3, 2]);
    }

    #[test]
    fn unknown_types() {
        for t in ["Z3", "B1", "G3", "", "A"] {
            assert!(matches!(CartanType::parse(t), Err(Error::UnknownType(_))));
        }
    }

    #[test]
    fn marking_length_checked() {
        assert!(matches!(
            build_from_str("A2", &compact(1)),
            Err(Error::InconsistentMarking(_))
        ));
    }

    #[test]
    fn fundamental_weights_dual() {
        let d = build_from_str("B3", &compact(3)).unwrap();
        for i in 0..3 {
            let w = d.fundamental_weight(i);
            for j in 0..3 {
                assert_eq!(d.simple_pairing(&w, j), q(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn grading_examples() {
        let d = build_from_str("A1", &[Marking::Noncompact]).unwrap();
        assert_eq!(d.grading.eval(&Weight::from_ints(&[1])).unwrap(), 1);
        assert_eq!(d.grading.eval(&Weight::from_ints(&[2])).unwrap(), 0);
        assert!(matches!(
            d.grading.eval(&Weight(vec![Q::new(1.into(), 2.into())])),
            Err(Error::NotInRootLattice(_))
        ));
    }
}
