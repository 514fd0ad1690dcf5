use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::klcore::KlTable;
use crate::rootcore::{RootDatum, Weight};
use crate::signedkl::{SignedContext, SignedKlTable};

use super::alcove::{alcove_along, AlcoveDescriptor, AlcoveEngine};
use super::character::FormalCharacter;

/// `ch M(lambda) = e^{lambda - rho} / prod (1 - e^{-alpha})`.
pub fn ch_verma(datum: &RootDatum, lambda: &Weight, cutoff: i64) -> FormalCharacter {
    let mut c = FormalCharacter::monomial(lambda - &datum.rho, cutoff);
    for r in &datum.roots {
        c = c.div_factor(r, -1);
    }
    c
}

fn gap_height(ctx: &SignedContext, x: usize, y: usize) -> Result<i64> {
    let nu = (&ctx.act(x) - &ctx.act(y))
        .to_ints()
        .ok_or_else(|| Error::NotInRootLattice(format!("{x} - {y}")))?;
    Ok(nu.iter().sum())
}

/// `ch L(x lambda) = sum_{y <= x} (-1)^{l(x) - l(y)} P_{y,x}(1) ch M(y lambda)`.
pub fn ch_irreducible(ctx: &SignedContext, kl: &KlTable, x: usize, cutoff: i64) -> Result<FormalCharacter> {
    let g = &ctx.group;
    let anchor = &ctx.act(x) - &ctx.datum.rho;
    let mut out = FormalCharacter::new(anchor.clone(), cutoff);
    for y in 0..g.size() {
        if !g.bruhat_leq(y, x) {
            continue;
        }
        let p = kl.std(y, x).eval_one();
        if p == 0 {
            continue;
        }
        let sign = if (g.length(x) - g.length(y)).is_multiple_of(2) { 1 } else { -1 };
        let h = gap_height(ctx, x, y)?;
        let m = ch_verma(&ctx.datum, &ctx.act(y), cutoff - h).reanchor(&anchor, cutoff)?;
        out = out.add(&m.scale(sign * p).truncate(cutoff))?;
    }
    Ok(out.truncate(cutoff))
}

impl SignedContext {
    pub fn engine(&self) -> AlcoveEngine<'_> {
        AlcoveEngine::new(&self.datum, &self.alg, &self.eps)
    }

    /// Alcove `A(x lambda, w)` entered from `x lambda` in the direction `delta`.
    pub fn alcove_of_x(&self, x: usize) -> Result<AlcoveDescriptor> {
        alcove_along(&self.datum, &self.act(x), &self.delta)
    }
}

/// Signature characters of `M(x lambda)` and `L(x lambda)` for one signed table.
pub struct SignatureSolver<'a> {
    pub ctx: &'a SignedContext,
    pub table: &'a SignedKlTable,
    engine: AlcoveEngine<'a>,
    memo: Mutex<HashMap<usize, FormalCharacter>>,
}

impl<'a> SignatureSolver<'a> {
    pub fn new(ctx: &'a SignedContext, table: &'a SignedKlTable) -> Self {
        SignatureSolver {
            ctx,
            table,
            engine: ctx.engine(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn engine(&self) -> &AlcoveEngine<'a> {
        &self.engine
    }

    /// `R^{A(x lambda, w)}(x lambda)`.
    pub fn verma(&self, x: usize, cutoff: i64) -> Result<FormalCharacter> {
        let a = self.ctx.alcove_of_x(x)?;
        self.engine.r_in(&a, &self.ctx.act(x), cutoff)
    }

    /// `R^{A(x lambda, w)}(x lambda) - sum_{y < x} P^{lambda,w}(1) ch_s L(y lambda)`.
    pub fn irreducible(&self, x: usize, cutoff: i64) -> Result<FormalCharacter> {
        if let Some(c) = self.memo.lock().unwrap().get(&x) {
            if c.cutoff >= cutoff {
                return Ok(c.truncate(cutoff));
            }
        }
        let g = &self.ctx.group;
        let anchor = &self.ctx.act(x) - &self.ctx.datum.rho;
        let mut out = self.verma(x, cutoff)?;
        for y in 0..g.size() {
            if y == x || !g.bruhat_leq(y, x) {
                continue;
            }
            let c = self.table.signed_kl(x, y).eval_one();
            let h = gap_height(self.ctx, x, y)?;
            if c == 0 || h > cutoff {
                continue;
            }
            let l = self.irreducible(y, cutoff - h)?.reanchor(&anchor, cutoff)?;
            out = out.sub(&l.scale(c))?;
        }
        self.memo.lock().unwrap().insert(x, out.clone());
        Ok(out)
    }

    /// Same character unrolled over chains `x = y_0 > y_1 > ... > y_k`.
    pub fn irreducible_chains(&self, x: usize, cutoff: i64) -> Result<FormalCharacter> {
        let g = &self.ctx.group;
        let anchor = &self.ctx.act(x) - &self.ctx.datum.rho;
        let mut out = FormalCharacter::new(anchor.clone(), cutoff);
        // weight[y] = sum over chains from x down to y of (-1)^k prod P(1)
        let order: Vec<usize> = g.by_length().into_iter().rev().collect();
        let mut weight = vec![0i64; g.size()];
        weight[x] = 1;
        for &z in &order {
            if weight[z] == 0 {
                continue;
            }
            let h = gap_height(self.ctx, x, z)?;
            if h <= cutoff {
                let r = self.verma(z, cutoff - h)?.reanchor(&anchor, cutoff)?;
                out = out.add(&r.scale(weight[z]).truncate(cutoff))?;
            }
            for y in 0..g.size() {
                if y != z && g.bruhat_leq(y, z) {
                    weight[y] -= weight[z] * self.table.signed_kl(z, y).eval_one();
                }
            }
        }
        Ok(out.truncate(cutoff))
    }
}

pub fn ch_s_irreducible(ctx: &SignedContext, table: &SignedKlTable, x: usize, cutoff: i64) -> Result<FormalCharacter> {
    SignatureSolver::new(ctx, table).irreducible(x, cutoff)
}

pub fn ch_s_irreducible_chains(
    ctx: &SignedContext,
    table: &SignedKlTable,
    x: usize,
    cutoff: i64,
) -> Result<FormalCharacter> {
    SignatureSolver::new(ctx, table).irreducible_chains(x, cutoff)
}
