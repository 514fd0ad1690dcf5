//! Jantzen filtrations of deformed Hermitian forms.
//!
//! A Gram matrix over `Q[t]` is brought to `diag(t^{n_i} u_i(t))` by a
//! congruence with unit determinant in the local ring at `t = 0`. The pairs
//! `(n_i, sign u_i(0))` give the layer dimensions and signatures of the
//! filtration at that weight.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enveloping::{point_deformed, singular_vector, weights_of_height, FormKind, PbwAlgebra, VermaForms};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::num::{floor_q, q, qf, sign_q, PolyQ, Q};
use crate::par::Exec;
use crate::rootcore::{RootDatum, Weight};

type Series = Vec<Q>;

fn order(s: &[Q]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

fn series_inverse(u: &[Q], prec: usize) -> Series {
    let mut inv = vec![Q::zero(); prec];
    inv[0] = Q::one() / &u[0];
    for k in 1..prec {
        let mut acc = Q::zero();
        for i in 1..=k.min(u.len() - 1) {
            acc += &u[i] * &inv[k - i];
        }
        inv[k] = -acc * &inv[0];
    }
    inv
}

fn series_mul(a: &[Q], b: &[Q], prec: usize) -> Series {
    let mut out = vec![Q::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// One attempt at precision `prec`; `None` when the precision ran out.
fn diagonalize_at(g: &Matrix<PolyQ>, prec: usize) -> Option<Vec<(usize, i32)>> {
    let n = g.len();
    let mut a: Vec<Vec<Series>> = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| (0..prec).map(|k| p.coeff(k)).collect())
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !live.is_empty() {
        let mut best_diag: Option<(usize, usize)> = None;
        let mut best_off: Option<(usize, usize, usize)> = None;
        for (k, &i) in live.iter().enumerate() {
            if let Some(o) = order(&a[i][i]) {
                if best_diag.is_none_or(|(_, b)| o < b) {
                    best_diag = Some((i, o));
                }
            }
            for &j in &live[k + 1..] {
                if let Some(o) = order(&a[i][j]) {
                    if best_off.is_none_or(|(_, _, b)| o < b) {
                        best_off = Some((i, j, o));
                    }
                }
            }
        }
        let p = match (best_diag, best_off) {
            (None, None) => return None,
            (Some((i, od)), Some((_, _, oo))) if od <= oo => i,
            (Some((i, _)), None) => i,
            (_, Some((i, j, _))) => {
                // e_i <- e_i + e_j; the new diagonal entry has the minimal order.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k].iter_mut().zip(&v).for_each(|(x, y)| *x += y);
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i].iter_mut().zip(&v).for_each(|(x, y)| *x += y);
                }
                i
            }
        };
        let k = order(&a[p][p]).expect("pivot has finite order");
        let unit: Series = a[p][p][k..].to_vec();
        out.push((k, sign_q(&unit[0])));
        live.retain(|&i| i != p);
        let inv = series_inverse(&unit, prec);
        let shifted: Vec<Series> = live
            .iter()
            .map(|&i| {
                let mut s: Series = a[i][p][k..].to_vec();
                s.resize(prec, Q::zero());
                s
            })
            .collect();
        let scaled: Vec<Series> = shifted.iter().map(|s| series_mul(s, &inv, prec)).collect();
        for (x, &i) in live.iter().enumerate() {
            for (y, &j) in live.iter().enumerate().skip(x) {
                let prod = series_mul(&scaled[x], &shifted[y], prec - k);
                for (d, c) in prod.into_iter().enumerate() {
                    if !c.is_zero() {
                        a[i][j][d + k] -= c;
                    }
                }
                if i != j {
                    a[j][i] = a[i][j].clone();
                }
            }
        }
    }
    out.sort();
    Some(out)
}

/// Orders and unit signs of a congruence diagonalization over `Q[t]_(t)`.
pub fn t_adic_diagonalize(g: &Matrix<PolyQ>) -> Result<Vec<(usize, i32)>> {
    if g.is_empty() {
        return Ok(Vec::new());
    }
    // ord det <= deg det <= sum of row degrees when det != 0.
    let bound: usize = g
        .iter()
        .map(|row| row.iter().filter_map(PolyQ::degree).max().unwrap_or(0))
        .sum::<usize>()
        + 1;
    let mut prec = 4.min(bound).max(1);
    loop {
        if let Some(d) = diagonalize_at(g, prec) {
            return Ok(d);
        }
        if prec >= bound {
            return Err(Error::SingularOverFunctionField);
        }
        prec = (2 * prec).min(bound);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub level: usize,
    pub dim: usize,
    pub pos: usize,
    pub neg: usize,
}

/// Layer data per weight `mu` (the weight `lambda0 - rho - mu`).
#[derive(Debug, Clone, PartialEq)]
pub struct JantzenLayers {
    pub lambda0: Weight,
    pub delta: Weight,
    pub cutoff: i64,
    pub weights: BTreeMap<Vec<i64>, Vec<Layer>>,
}

pub fn layers_from_diagonal(diag: &[(usize, i32)]) -> Vec<Layer> {
    let mut by: BTreeMap<usize, Layer> = BTreeMap::new();
    for &(level, s) in diag {
        let l = by.entry(level).or_insert(Layer { level, dim: 0, pos: 0, neg: 0 });
        l.dim += 1;
        if s > 0 {
            l.pos += 1;
        } else {
            l.neg += 1;
        }
    }
    by.into_values().collect()
}

/// Reducibility hyperplanes `(lambda, beta^vee) = n`, `n > 0`, through `lambda`.
pub fn hyperplanes_through(datum: &RootDatum, lambda: &Weight) -> Vec<(usize, i64)> {
    (0..datum.num_roots())
        .filter_map(|b| {
            let p = datum.pairing(lambda, b);
            (p.is_integer() && p.is_positive()).then(|| (b, crate::num::q_to_i64(&p).unwrap()))
        })
        .collect()
}

pub fn jantzen_layers(
    alg: &PbwAlgebra,
    datum: &RootDatum,
    lambda0: &Weight,
    delta: &Weight,
    cutoff: i64,
    exec: Exec,
) -> Result<JantzenLayers> {
    for (b, n) in hyperplanes_through(datum, lambda0) {
        if datum.pairing(delta, b).is_zero() {
            return Err(Error::DegenerateDirection(format!(
                "{delta:?} is parallel to H({:?}, {n})",
                datum.roots[b]
            )));
        }
    }
    let mut vf = VermaForms::new(alg, point_deformed(datum, lambda0, delta));
    vf.fill(cutoff, exec);
    let mus: Vec<Vec<i64>> = (0..=cutoff)
        .flat_map(|h| weights_of_height(datum.rank, h))
        .collect();
    let grams: Vec<Matrix<PolyQ>> = mus
        .iter()
        .map(|mu| vf.gram(FormKind::Hermitian, mu).entries)
        .collect();
    let diags = exec.map(&grams, t_adic_diagonalize);
    let mut weights = BTreeMap::new();
    for (mu, d) in mus.into_iter().zip(diags) {
        let d = d?;
        if !d.is_empty() {
            weights.insert(mu, layers_from_diagonal(&d));
        }
    }
    Ok(JantzenLayers {
        lambda0: lambda0.clone(),
        delta: delta.clone(),
        cutoff,
        weights,
    })
}

/// `(p, q)` for `t > 0` and `(p', q')` for `t < 0`; odd levels swap on the negative side.
pub fn side_signatures(layers: &[Layer]) -> ((usize, usize), (usize, usize)) {
    let mut plus = (0, 0);
    let mut minus = (0, 0);
    for l in layers {
        plus.0 += l.pos;
        plus.1 += l.neg;
        if l.level % 2 == 0 {
            minus.0 += l.pos;
            minus.1 += l.neg;
        } else {
            minus.0 += l.neg;
            minus.1 += l.pos;
        }
    }
    (plus, minus)
}

impl JantzenLayers {
    pub fn side_signatures(&self) -> BTreeMap<Vec<i64>, ((usize, usize), (usize, usize))> {
        self.weights
            .iter()
            .map(|(mu, l)| (mu.clone(), side_signatures(l)))
            .collect()
    }

    /// Total dimension at level `j` for weight `mu`.
    pub fn level_dim(&self, mu: &[i64], j: usize) -> usize {
        self.weights
            .get(mu)
            .and_then(|ls| ls.iter().find(|l| l.level == j))
            .map_or(0, |l| l.dim)
    }
}

/// Half the distance along `delta` from `lambda0` to the nearest other reducibility hyperplane.
pub fn side_step(datum: &RootDatum, lambda0: &Weight, delta: &Weight) -> Q {
    let mut best: Option<Q> = None;
    for b in 0..datum.num_roots() {
        let a = datum.pairing(lambda0, b);
        let d = datum.pairing(delta, b);
        if d.is_zero() {
            continue;
        }
        let f = floor_q(&a);
        for n in (f - 1)..=(f + 2) {
            if n <= 0 || q(n) == a {
                continue;
            }
            let t = ((q(n) - &a) / &d).abs();
            if best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
    }
    best.map_or_else(|| qf(1, 2), |t| t / q(2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingSign {
    pub gamma: usize,
    pub level: i64,
    /// Point on the hyperplane where the sign was evaluated.
    pub witness: Weight,
    pub value: i32,
}

/// Sign of `<f v, f v>` just on the `H^+` side of `H_{gamma,N}` at `lambda0`.
pub fn epsilon_at(
    alg: &PbwAlgebra,
    datum: &RootDatum,
    gamma: usize,
    level: i64,
    lambda0: &Weight,
) -> Result<CrossingSign> {
    let others: Vec<_> = hyperplanes_through(datum, lambda0)
        .into_iter()
        .filter(|&(b, _)| b != gamma)
        .collect();
    if !others.is_empty() {
        return Err(Error::MultipleHyperplanes(format!("{lambda0:?} also on {others:?}")));
    }
    if !datum.is_regular(lambda0) {
        return Err(Error::NotRegular(format!("{lambda0:?}")));
    }
    let f = singular_vector(alg, datum, lambda0, gamma, level)?;
    let eta = datum.root_weight(gamma);
    let mut vf = VermaForms::new(alg, point_deformed(datum, lambda0, &eta));
    let g = vf.gram(FormKind::Hermitian, &f.weight).entries;
    let c = f.coeffs_q();
    let mut val = PolyQ::default();
    for (i, row) in g.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let k = &c[i] * &c[j];
            if !k.is_zero() {
                val = crate::num::Scalar::add(&val, &crate::num::Scalar::mul(e, &PolyQ::constant(k)));
            }
        }
    }
    let o = val.order().ok_or(Error::SingularOverFunctionField)?;
    Ok(CrossingSign {
        gamma,
        level,
        witness: lambda0.clone(),
        value: sign_q(&val.coeff(o)),
    })
}

/// Deterministic perturbation directions.
pub fn nudge(rank: usize, k: usize) -> Weight {
    const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    Weight(
        (0..rank)
            .map(|i| qf(PRIMES[(i + k) % PRIMES.len()] * if (i + k).is_multiple_of(2) { 1 } else { -1 }, 97 * (k as i64 + 3)))
            .collect(),
    )
}

/// Chamber of a regular point: signs of all positive-coroot pairings.
pub fn chamber_signs(datum: &RootDatum, p: &Weight) -> Vec<i32> {
    datum.all_pairings(p).iter().map(sign_q).collect()
}

/// `epsilon(H_{gamma,N}, z)` for the chamber `z` containing `chamber_point`.
pub fn epsilon_hyperplane(
    alg: &PbwAlgebra,
    datum: &RootDatum,
    gamma: usize,
    level: i64,
    chamber_point: &Weight,
) -> Result<CrossingSign> {
    if !datum.is_regular(chamber_point) {
        return Err(Error::NotRegular(format!("{chamber_point:?}")));
    }
    let signs = chamber_signs(datum, chamber_point);
    if signs[gamma] < 0 {
        return Err(Error::ChamberCrossing(format!(
            "H({:?}, {level}) does not meet the chamber of {chamber_point:?}",
            datum.roots[gamma]
        )));
    }
    for k in 0..64 {
        let d = if k == 0 {
            chamber_point.clone()
        } else {
            let scale = datum.pairing(chamber_point, gamma);
            chamber_point + &nudge(datum.rank, k).scale(&scale)
        };
        if chamber_signs(datum, &d) != signs {
            continue;
        }
        let p = datum.pairing(&d, gamma);
        let lambda0 = d.scale(&(q(level) / p));
        match epsilon_at(alg, datum, gamma, level, &lambda0) {
            Err(Error::MultipleHyperplanes(_)) | Err(Error::NullSpaceDimensionUnexpected(_)) => continue,
            r => return r,
        }
    }
    Err(Error::MultipleHyperplanes(format!(
        "no generic point of H({:?}, {level}) found in the chamber of {chamber_point:?}",
        datum.roots[gamma]
    )))
}

/// Memo of crossing signs keyed by hyperplane and chamber.
#[derive(Debug, Default)]
pub struct EpsilonCache {
    cache: Mutex<HashMap<(usize, i64, Vec<i32>), i32>>,
    /// Negates every returned sign; fault injection only.
    pub corrupt: bool,
}

impl EpsilonCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn corrupted() -> Self {
        EpsilonCache {
            corrupt: true,
            ..Self::default()
        }
    }

    /// `epsilon(H_{gamma,N}, z)` for the chamber `z` of the regular point `p`.
    pub fn get(&self, alg: &PbwAlgebra, datum: &RootDatum, gamma: usize, level: i64, p: &Weight) -> Result<i32> {
        let key = (gamma, level, chamber_signs(datum, p));
        let cached = self.cache.lock().unwrap().get(&key).copied();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = epsilon_hyperplane(alg, datum, gamma, level, p)?.value;
                self.cache.lock().unwrap().insert(key, v);
                v
            }
        };
        Ok(if self.corrupt { -v } else { v })
    }

    pub fn len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
