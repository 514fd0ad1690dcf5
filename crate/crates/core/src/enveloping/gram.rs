//! Gram matrices of the contravariant and Hermitian forms on Verma weight spaces.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{determinant, nullspace, Matrix};
use crate::num::{clear_denominators, q, PolyQ, Scalar, Q};
use crate::par::Exec;
use crate::rootcore::{KostantTable, RootDatum, Weight};

use super::pbw::{Mono, PbwAlgebra};
use super::uelement::{Gen, UElement, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Contravariant,
    Hermitian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<R> {
    pub kind: FormKind,
    pub mu: Vec<i64>,
    pub basis: Arc<Vec<Mono>>,
    pub entries: Matrix<R>,
}

/// Pairings `x_i = (lambda, alpha_i^vee)`.
pub fn point_q(datum: &RootDatum, lambda: &Weight) -> Vec<Q> {
    datum.simple_pairings(lambda)
}

/// Pairings of `lambda + t delta` as linear polynomials in `t`.
pub fn point_deformed(datum: &RootDatum, lambda: &Weight, delta: &Weight) -> Vec<PolyQ> {
    datum
        .simple_pairings(lambda)
        .into_iter()
        .zip(datum.simple_pairings(delta))
        .map(|(a, b)| PolyQ::linear(a, b))
        .collect()
}

/// All nonnegative integer vectors of the given height.
pub fn weights_of_height(rank: usize, h: i64) -> Vec<Vec<i64>> {
    fn go(rank: usize, h: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == rank - 1 {
            cur.push(h);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=h).rev() {
            cur.push(a);
            go(rank, h - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, h, &mut Vec::new(), &mut out);
    out
}

/// Contravariant Gram matrices at a fixed point, memoized by weight.
pub struct VermaForms<'a, R: Scalar> {
    alg: &'a PbwAlgebra,
    point: Vec<R>,
    cache: HashMap<Vec<i64>, Arc<Matrix<R>>>,
}

impl<'a, R: Scalar> VermaForms<'a, R> {
    pub fn new(alg: &'a PbwAlgebra, point: Vec<R>) -> Self {
        let mut cache = HashMap::new();
        cache.insert(vec![0; alg.rank], Arc::new(vec![vec![R::unit()]]));
        VermaForms { alg, point, cache }
    }

    pub fn point(&self) -> &[R] {
        &self.point
    }

    fn compute(&self, mu: &[i64]) -> Matrix<R> {
        let alg = self.alg;
        let basis = alg.basis(mu);
        let dim = basis.len();
        let mut g = vec![vec![R::nil(); dim]; dim];
        for (j, m2) in basis.iter().enumerate() {
            let gamma = m2.iter().position(|&e| e > 0).unwrap();
            let mut rest = m2.clone();
            rest[gamma] -= 1;
            let lower_mu: Vec<i64> = mu.iter().zip(&alg.roots[gamma]).map(|(a, b)| a - b).collect();
            let lower = &self.cache[&lower_mu];
            let lower_basis = alg.basis(&lower_mu);
            let col = lower_basis.iter().position(|m| *m == rest).unwrap();
            for (i, m1) in basis.iter().enumerate() {
                if i < j {
                    g[i][j] = g[j][i].clone();
                    continue;
                }
                let mut acc = R::nil();
                for (k, f) in alg.xact(gamma, m1).iter() {
                    let row = lower_basis.iter().position(|m| m == k).unwrap();
                    let e = &lower[row][col];
                    if !e.is_nil() {
                        acc = acc.add(&f.eval(&self.point).mul(e));
                    }
                }
                g[i][j] = acc;
            }
        }
        g
    }

    /// Ensures every weight of height `<= cutoff` is cached.
    pub fn fill(&mut self, cutoff: i64, exec: Exec) {
        for h in 1..=cutoff {
            let todo: Vec<Vec<i64>> = weights_of_height(self.alg.rank, h)
                .into_iter()
                .filter(|mu| !self.cache.contains_key(mu))
                .collect();
            if todo.is_empty() {
                continue;
            }
            let this = &*self;
            let mats = exec.map(&todo, |mu| this.compute(mu));
            for (mu, m) in todo.into_iter().zip(mats) {
                self.cache.insert(mu, Arc::new(m));
            }
        }
    }

    pub fn contravariant(&mut self, mu: &[i64]) -> Arc<Matrix<R>> {
        if let Some(m) = self.cache.get(mu) {
            return m.clone();
        }
        let h: i64 = mu.iter().sum();
        self.fill(h, Exec::Sequential);
        self.cache[mu].clone()
    }

    pub fn gram(&mut self, kind: FormKind, mu: &[i64]) -> GramMatrix<R> {
        let c = self.contravariant(mu);
        let entries = match kind {
            FormKind::Contravariant => (*c).clone(),
            FormKind::Hermitian => {
                let s = self.alg.grading.sign_ints(mu);
                c.iter().map(|row| row.iter().map(|e| e.scale_i64(s)).collect()).collect()
            }
        };
        GramMatrix {
            kind,
            mu: mu.to_vec(),
            basis: self.alg.basis(mu),
            entries,
        }
    }
}

fn check_cutoff(mu: &[i64], cutoff: i64) -> Result<()> {
    let h: i64 = mu.iter().sum();
    if h > cutoff {
        return Err(Error::CutoffExceeded { height: h, cutoff });
    }
    Ok(())
}

/// One-shot Gram matrix.
pub fn gram<R: Scalar>(
    alg: &PbwAlgebra,
    kind: FormKind,
    point: Vec<R>,
    mu: &[i64],
    cutoff: i64,
) -> Result<GramMatrix<R>> {
    check_cutoff(mu, cutoff)?;
    Ok(VermaForms::new(alg, point).gram(kind, mu))
}

/// Gram matrix by full straightening in U(g); independent of the recursion.
pub fn gram_straightened<R: Scalar>(
    alg: &PbwAlgebra,
    kind: FormKind,
    point: &[R],
    mu: &[i64],
) -> Matrix<R> {
    let basis = alg.basis(mu);
    let h: Vec<R> = point.iter().map(|x| x.sub(&R::unit())).collect();
    let elems: Vec<UElement<R>> = basis.iter().map(|m| y_element(alg, m)).collect();
    let adj: Vec<UElement<R>> = elems
        .iter()
        .map(|u| match kind {
            FormKind::Contravariant => u.sigma(alg),
            FormKind::Hermitian => u.star(alg),
        })
        .collect();
    (0..basis.len())
        .map(|i| {
            (0..basis.len())
                .map(|j| adj[j].mul(alg, &elems[i]).project_h_and_eval(&h))
                .collect()
        })
        .collect()
}

pub fn y_element<R: Scalar>(alg: &PbwAlgebra, m: &[u16]) -> UElement<R> {
    let mut w = Word::one(alg);
    w.y = m.to_vec();
    UElement::from_word(alg, w, R::unit())
}

pub fn shapovalov_determinant(alg: &PbwAlgebra, datum: &RootDatum, lambda: &Weight, mu: &[i64]) -> Q {
    let g = VermaForms::new(alg, point_q(datum, lambda)).gram(FormKind::Contravariant, mu);
    determinant(&g.entries)
}

/// `prod_beta prod_n ((lambda, beta^vee) - n)^{P(mu - n beta)}`.
pub fn det_product_formula(datum: &RootDatum, lambda: &Weight, mu: &[i64]) -> Q {
    let mut kt = KostantTable::new();
    let mut acc = Q::one();
    for b in 0..datum.num_roots() {
        let p = datum.pairing(lambda, b);
        for n in 1.. {
            let rest: Vec<i64> = mu.iter().zip(&datum.roots[b]).map(|(a, r)| a - n * r).collect();
            if rest.iter().any(|&c| c < 0) {
                break;
            }
            let e = kt.get(datum, &rest);
            let f = &p - q(n);
            for _ in 0..e {
                acc *= &f;
            }
        }
    }
    acc
}

/// Primitive integral generator of the radical of the contravariant form at weight `N gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularVector {
    pub gamma: usize,
    pub level: i64,
    pub weight: Vec<i64>,
    pub basis: Arc<Vec<Mono>>,
    pub coeffs: Vec<BigInt>,
}

impl SingularVector {
    pub fn to_uelement(&self, alg: &PbwAlgebra) -> UElement<Q> {
        let mut u = UElement::zero();
        for (m, c) in self.basis.iter().zip(&self.coeffs) {
            u = u.add(&y_element(alg, m).scale(&Q::from_integer(c.clone())));
        }
        u
    }

    pub fn coeffs_q(&self) -> Vec<Q> {
        self.coeffs.iter().map(|c| Q::from_integer(c.clone())).collect()
    }
}

pub fn singular_vector(
    alg: &PbwAlgebra,
    datum: &RootDatum,
    lambda0: &Weight,
    gamma: usize,
    level: i64,
) -> Result<SingularVector> {
    if level < 1 || datum.pairing(lambda0, gamma) != q(level) {
        return Err(Error::NotOnHyperplane {
            root: format!("{:?}", datum.roots[gamma]),
            level,
        });
    }
    let weight: Vec<i64> = datum.roots[gamma].iter().map(|c| c * level).collect();
    let g = VermaForms::new(alg, point_q(datum, lambda0)).gram(FormKind::Contravariant, &weight);
    let ns = nullspace(&g.entries);
    if ns.len() != 1 {
        return Err(Error::NullSpaceDimensionUnexpected(ns.len()));
    }
    let mut coeffs = clear_denominators(&ns[0]);
    if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        coeffs.iter_mut().for_each(|c| *c = -c.clone());
    }
    Ok(SingularVector {
        gamma,
        level,
        weight,
        basis: g.basis,
        coeffs,
    })
}

/// Generators spelling `Y_b^e` products for a monomial.
pub fn mono_gens(m: &[u16]) -> Vec<Gen> {
    let mut out = Vec::new();
    for (b, &e) in m.iter().enumerate() {
        out.extend(std::iter::repeat_n(Gen::Y(b), e as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_symmetric;
    use crate::num::qf;
    use crate::rootcore::{build_from_str, Marking};

    #[test]
    fn sl2_entries() {
        let d = build_from_str("A1", &[Marking::Noncompact]).unwrap();
        let a = PbwAlgebra::new(&d);
        let lam = d.weight_from_pairings(&[qf(1, 3)]);
        let mut vf = VermaForms::new(&a, point_q(&d, &lam));
        assert_eq!(vf.gram(FormKind::Contravariant, &[0]).entries, vec![vec![q(1)]]);
        assert_eq!(vf.gram(FormKind::Contravariant, &[1]).entries, vec![vec![qf(-2, 3)]]);
        assert_eq!(vf.gram(FormKind::Hermitian, &[1]).entries, vec![vec![qf(2, 3)]]);
        let g2 = vf.gram(FormKind::Contravariant, &[2]).entries[0][0].clone();
        assert_eq!(g2, q(2) * (qf(1, 3) - q(1)) * (qf(1, 3) - q(2)));
    }

    #[test]
    fn cutoff_enforced() {
        let d = build_from_str("A1", &[Marking::Compact]).unwrap();
        let a = PbwAlgebra::new(&d);
        let r = gram(&a, FormKind::Hermitian, vec![q(1)], &[5], 4);
        assert!(matches!(r, Err(Error::CutoffExceeded { .. })));
    }

    #[test]
    fn straightened_route_agrees() {
        let d = build_from_str("C2", &[Marking::Compact, Marking::Noncompact]).unwrap();
        let a = PbwAlgebra::new(&d);
        let lam = d.weight_from_pairings(&[qf(2, 7), qf(-5, 3)]);
        let pt = point_q(&d, &lam);
        let mut vf = VermaForms::new(&a, pt.clone());
        for mu in [[1, 1], [2, 1], [1, 2], [2, 2]] {
            for kind in [FormKind::Contravariant, FormKind::Hermitian] {
                let fast = vf.gram(kind, &mu).entries;
                assert!(is_symmetric(&fast));
                assert_eq!(fast, gram_straightened(&a, kind, &pt, &mu), "{mu:?} {kind:?}");
            }
        }
    }

    #[test]
    fn singular_vector_examples() {
        let d = build_from_str("A1", &[Marking::Compact]).unwrap();
        let a = PbwAlgebra::new(&d);
        for n in 1..4 {
            let lam = d.weight_from_pairings(&[q(n)]);
            let f = singular_vector(&a, &d, &lam, 0, n).unwrap();
            assert_eq!(f.coeffs, vec![BigInt::from(1)]);
            assert_eq!(*f.basis, vec![vec![n as u16]]);
        }
        let lam = d.weight_from_pairings(&[q(2)]);
        assert!(matches!(singular_vector(&a, &d, &lam, 0, 1), Err(Error::NotOnHyperplane { .. })));
    }
}
