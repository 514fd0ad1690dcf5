//! Elements of U(g) in normal order `Y-part * H-part * X-part`.
//!
//! This is the slow, general route. It straightens arbitrary products and is
//! used to cross-check the Verma-module Gram recursion.

use std::collections::BTreeMap;

use crate::num::Scalar;

use super::pbw::{Mono, PbwAlgebra, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    Y(usize),
    H(usize),
    X(usize),
}

/// Normal-ordered basis word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub y: Mono,
    pub h: Vec<u16>,
    pub x: Mono,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UElement<R: Scalar> {
    pub terms: BTreeMap<Word, R>,
}

impl Word {
    pub fn one(alg: &PbwAlgebra) -> Self {
        Word {
            y: vec![0; alg.num_roots()],
            h: vec![0; alg.rank],
            x: vec![0; alg.num_roots()],
        }
    }

    /// Generator sequence spelling this word left to right.
    pub fn gens(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for (b, &e) in self.y.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::Y(b), e as usize));
        }
        for (i, &e) in self.h.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::H(i), e as usize));
        }
        for (b, &e) in self.x.iter().enumerate() {
            out.extend(std::iter::repeat_n(Gen::X(b), e as usize));
        }
        out
    }
}

fn binomial(n: u16, k: u16) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn add_term(out: &mut BTreeMap<Word, i64>, w: Word, c: i64) {
    if c == 0 {
        return;
    }
    let e = out.entry(w).or_insert(0);
    *e += c;
}

/// `g * w` as an integer combination of normal words.
pub fn lmul_word(alg: &PbwAlgebra, g: Gen, w: &Word) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    match g {
        Gen::Y(b) => {
            for (y, c) in alg.pmul(Side::Y, b, &w.y).iter() {
                add_term(&mut out, Word { y: y.clone(), h: w.h.clone(), x: w.x.clone() }, *c);
            }
        }
        Gen::H(i) => {
            let nu = alg.weight(&w.y);
            let mut up = w.clone();
            up.h[i] += 1;
            add_term(&mut out, up, 1);
            add_term(&mut out, w.clone(), -alg.simple_pairing(&nu, i));
        }
        Gen::X(gamma) => match w.y.iter().position(|&e| e > 0) {
            None => {
                // X_gamma p(H) = p(H - gamma(H)) X_gamma
                let shift: Vec<i64> = (0..alg.rank)
                    .map(|i| alg.simple_pairing(&alg.roots[gamma], i))
                    .collect();
                let xs = alg.pmul(Side::X, gamma, &w.x);
                let mut hs: Vec<(Vec<u16>, i64)> = vec![(Vec::new(), 1)];
                for i in 0..alg.rank {
                    let hi = w.h[i];
                    let mut next = Vec::new();
                    for (prefix, c) in &hs {
                        for j in 0..=hi {
                            let k = binomial(hi, j) * (-shift[i]).pow(u32::from(hi - j));
                            if k == 0 {
                                continue;
                            }
                            let mut p = prefix.clone();
                            p.push(j);
                            next.push((p, c * k));
                        }
                    }
                    hs = next;
                }
                for (h, ch) in &hs {
                    for (x, cx) in xs.iter() {
                        add_term(&mut out, Word { y: w.y.clone(), h: h.clone(), x: x.clone() }, ch * cx);
                    }
                }
            }
            Some(beta) => {
                let mut rest = w.clone();
                rest.y[beta] -= 1;
                for (w2, c) in lmul_word(alg, Gen::X(gamma), &rest) {
                    for (w3, c3) in lmul_word(alg, Gen::Y(beta), &w2) {
                        add_term(&mut out, w3, c * c3);
                    }
                }
                let n = alg.sc.num_pos();
                if gamma == beta {
                    for (i, &k) in alg.sc.coroot(beta).iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        for (w3, c3) in lmul_word(alg, Gen::H(i), &rest) {
                            add_term(&mut out, w3, k * c3);
                        }
                    }
                } else if let Some(s) = alg.sc.root_sum(gamma, beta + n) {
                    let coeff = alg.sc.get(gamma, beta + n);
                    let g2 = if s < n { Gen::X(s) } else { Gen::Y(s - n) };
                    for (w3, c3) in lmul_word(alg, g2, &rest) {
                        add_term(&mut out, w3, coeff * c3);
                    }
                }
            }
        },
    }
    out.retain(|_, c| *c != 0);
    out
}

impl<R: Scalar> UElement<R> {
    pub fn zero() -> Self {
        UElement { terms: BTreeMap::new() }
    }

    pub fn one(alg: &PbwAlgebra) -> Self {
        Self::from_word(alg, Word::one(alg), R::unit())
    }

    pub fn from_word(_alg: &PbwAlgebra, w: Word, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_nil() {
            terms.insert(w, c);
        }
        UElement { terms }
    }

    /// Product of generators, left to right.
    pub fn from_gens(alg: &PbwAlgebra, gens: &[Gen]) -> Self {
        let mut u = Self::one(alg);
        for &g in gens.iter().rev() {
            u = u.lmul_gen(alg, g);
        }
        u
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(R::nil);
            *e = e.add(c);
        }
        terms.retain(|_, c| !c.is_nil());
        UElement { terms }
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut terms: BTreeMap<Word, R> = self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))).collect();
        terms.retain(|_, c| !c.is_nil());
        UElement { terms }
    }

    pub fn lmul_gen(&self, alg: &PbwAlgebra, g: Gen) -> Self {
        let mut terms: BTreeMap<Word, R> = BTreeMap::new();
        for (w, c) in &self.terms {
            for (w2, k) in lmul_word(alg, g, w) {
                let e = terms.entry(w2).or_insert_with(R::nil);
                *e = e.add(&c.scale_i64(k));
            }
        }
        terms.retain(|_, c| !c.is_nil());
        UElement { terms }
    }

    pub fn mul(&self, alg: &PbwAlgebra, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (w, c) in &self.terms {
            let mut v = other.clone();
            for g in w.gens().into_iter().rev() {
                v = v.lmul_gen(alg, g);
            }
            acc = acc.add(&v.scale(c));
        }
        acc
    }

    fn anti(&self, alg: &PbwAlgebra, signed: bool) -> Self {
        let mut acc = Self::zero();
        for (w, c) in &self.terms {
            let mut sign = 1i64;
            let mut gens = Vec::new();
            for g in w.gens().into_iter().rev() {
                let (b, img) = match g {
                    Gen::Y(b) => (Some(b), Gen::X(b)),
                    Gen::X(b) => (Some(b), Gen::Y(b)),
                    Gen::H(i) => (None, Gen::H(i)),
                };
                if let (Some(b), true) = (b, signed) {
                    sign *= alg.grading.sign_ints(&alg.roots[b]);
                }
                gens.push(img);
            }
            let u = Self::from_gens(alg, &gens).scale(&c.scale_i64(sign));
            acc = acc.add(&u);
        }
        acc
    }

    /// `X_a -> (-1)^{eps(a)} Y_a`, `Y_a -> (-1)^{eps(a)} X_a`, products reversed.
    pub fn star(&self, alg: &PbwAlgebra) -> Self {
        self.anti(alg, true)
    }

    /// `X_a -> Y_a`, `Y_a -> X_a`, products reversed.
    pub fn sigma(&self, alg: &PbwAlgebra) -> Self {
        self.anti(alg, false)
    }

    /// Drops every word with a Y or X factor and evaluates `H_i -> h[i]`.
    pub fn project_h_and_eval(&self, h: &[R]) -> R {
        let mut acc = R::nil();
        for (w, c) in &self.terms {
            if w.y.iter().any(|&e| e > 0) || w.x.iter().any(|&e| e > 0) {
                continue;
            }
            let mut t = c.clone();
            for (i, &e) in w.h.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&h[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
