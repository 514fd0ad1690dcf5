//! Signed Kazhdan-Lusztig polynomials `P^{lambda,w}_{w_lambda x, w_lambda y}`.
//!
//! Entries are indexed by `(x, y)` in the integral Weyl group and stored as
//! polynomials in `q`. The table is filled by increasing length of `x`. For
//! each target `x'` and `y < x'` a simple reflection `s` of `W_lambda` is
//! chosen: a right descent of `x'` that is not a right descent of `y` (case a),
//! else a left descent of `x'` that is not a left descent of `y` (case a'),
//! else a common right descent `s` with `y <= x' s` (case b).

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::enveloping::PbwAlgebra;
use crate::error::{Error, Result};
use crate::jantzen::EpsilonCache;
use crate::klcore::LaurentPoly;
use crate::num::{q_to_i64, sign_q};
use crate::par::Exec;
use crate::rootcore::{integral_weyl_group, ReflectionGroup, RootDatum, Weight};

/// Fixed data of a signed table: `lambda` regular antidominant and the chamber `w` of `delta`.
pub struct SignedContext {
    pub datum: RootDatum,
    pub alg: PbwAlgebra,
    pub lambda: Weight,
    /// Integral Weyl group `W_lambda`.
    pub group: ReflectionGroup,
    /// Reduced word of `w` in the simple reflections of the full Weyl group.
    pub chamber: Vec<usize>,
    /// `delta = w(-rho)`.
    pub delta: Weight,
    pub eps: EpsilonCache,
}

impl std::fmt::Debug for SignedContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SignedContext")
            .field("type", &self.datum.cartan_type.to_string())
            .field("lambda", &self.lambda)
            .field("chamber", &self.chamber)
            .finish()
    }
}

/// Checks that `lambda` is regular and antidominant for its integral root system.
pub fn check_antidominant(datum: &RootDatum, lambda: &Weight) -> Result<()> {
    for b in 0..datum.num_roots() {
        let p = datum.pairing(lambda, b);
        if p.is_zero() {
            return Err(Error::NotRegular(format!("{lambda:?} on the wall of {:?}", datum.roots[b])));
        }
        if p.is_integer() && p.is_positive() {
            return Err(Error::NotAntidominant(format!(
                "({lambda:?}, {:?}^vee) = {p}",
                datum.roots[b]
            )));
        }
    }
    Ok(())
}

impl SignedContext {
    pub fn new(datum: RootDatum, lambda: Weight, chamber: Vec<usize>) -> Result<Self> {
        check_antidominant(&datum, &lambda)?;
        let full = ReflectionGroup::weyl(&datum);
        let w = full
            .from_word(&chamber)
            .ok_or_else(|| Error::Parse(format!("bad chamber word {chamber:?}")))?;
        let delta = full.act(w, &-&datum.rho);
        let group = ReflectionGroup::new(&datum, integral_weyl_group(&datum, &lambda));
        let alg = PbwAlgebra::new(&datum);
        Ok(SignedContext {
            datum,
            alg,
            lambda,
            group,
            chamber: full.word(w).to_vec(),
            delta,
            eps: EpsilonCache::new(),
        })
    }

    /// `x lambda` for `x` in `W_lambda`.
    pub fn act(&self, x: usize) -> Weight {
        self.group.act(x, &self.lambda)
    }

    /// Element of `W_lambda` from a word in its simple reflections.
    pub fn element(&self, word: &[usize]) -> Result<usize> {
        self.group
            .from_word(word)
            .ok_or_else(|| Error::IntegralityMismatch(format!("{word:?} is not a word in W_lambda")))
    }

    /// Sign of `(delta, v^vee)` for a root vector `v`.
    pub fn delta_sign(&self, v: &[i64]) -> i64 {
        let (b, s) = self.datum.signed_root_index(v).expect("root vector");
        s * i64::from(sign_q(&self.datum.pairing(&self.delta, b)))
    }

    /// Root vector `x alpha_s` for a generator `s` of `W_lambda`.
    pub fn moved_root(&self, x: usize, s: usize) -> Vec<i64> {
        self.group.act_ints(x, &self.datum.roots[self.group.gens[s]])
    }

    /// `epsilon(H_{gamma,N}, z)` for the chamber containing the regular point `p`.
    pub fn epsilon(&self, gamma: usize, level: i64, p: &Weight) -> Result<i32> {
        self.eps.get(&self.alg, &self.datum, gamma, level, p)
    }

    /// Case a: `SP(xs, y) = c SP(x, y)`.
    fn case_a_sign(&self, x: usize, s: usize) -> Result<i64> {
        let xa = self.moved_root(x, s);
        let (gamma, sg) = self.datum.signed_root_index(&xa).expect("root");
        debug_assert_eq!(sg, 1);
        let n = -q_to_i64(&self.datum.pairing(&self.lambda, self.group.gens[s])).expect("integral");
        let xs = self.group.rmul_gen(x, s);
        let e = self.epsilon(gamma, n, &self.act(xs))?;
        Ok(self.delta_sign(&xa) * i64::from(e))
    }

    /// Case a': `SP(sx, y) = c SP(x, y)`.
    fn case_a_prime_sign(&self, x: usize, s: usize) -> Result<i64> {
        let alpha = self.group.gens[s];
        let sx = self.group.lmul_gen(x, s);
        let p = self.act(sx);
        let n = q_to_i64(&self.datum.pairing(&p, alpha)).expect("integral");
        let e = self.epsilon(alpha, n, &p)?;
        Ok(self.delta_sign(&self.datum.roots[alpha]) * i64::from(e))
    }
}

/// Order in which generators are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    IndexOrder,
    ReverseOrder,
    /// Case b with the first common right descent whenever one exists.
    PreferCaseB,
}

#[derive(Debug, Clone)]
pub struct SignedKlTable {
    /// `sp[x][y]`.
    sp: Vec<Vec<LaurentPoly>>,
    lengths: Vec<usize>,
}

impl SignedKlTable {
    pub fn new(ctx: &SignedContext, exec: Exec) -> Result<Self> {
        Self::with_strategy(ctx, Strategy::default(), exec)
    }

    pub fn with_strategy(ctx: &SignedContext, strategy: Strategy, exec: Exec) -> Result<Self> {
        let g = &ctx.group;
        let size = g.size();
        let mut sp: Vec<Vec<LaurentPoly>> = vec![Vec::new(); size];
        let ys: Vec<usize> = (0..size).collect();
        for xp in g.by_length() {
            let row = {
                let sp = &sp;
                exec.map(&ys, |&y| cell(ctx, sp, strategy, xp, y))
            };
            sp[xp] = row.into_iter().collect::<Result<Vec<_>>>()?;
        }
        Ok(SignedKlTable {
            sp,
            lengths: (0..size).map(|x| g.length(x)).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.sp.len()
    }

    pub fn signed_kl(&self, x: usize, y: usize) -> &LaurentPoly {
        &self.sp[x][y]
    }

    /// `a_j` in `P^{lambda,w}_{w_lambda x, w_lambda y} = sum_j a_j q^{(l(x) - l(y) - j)/2}`.
    pub fn level_coefficient(&self, x: usize, y: usize, j: usize) -> i64 {
        level_of(&self.sp, &self.lengths, x, y, j)
    }

    pub fn levels(&self, x: usize, y: usize) -> BTreeMap<usize, i64> {
        let gap = self.lengths[x] as i64 - self.lengths[y] as i64;
        self.sp[x][y]
            .terms()
            .map(|(e, c)| ((gap - 2 * e) as usize, c))
            .collect()
    }
}

fn level_of(sp: &[Vec<LaurentPoly>], lengths: &[usize], x: usize, y: usize, j: usize) -> i64 {
    let gap = lengths[x] as i64 - lengths[y] as i64 - j as i64;
    if gap < 0 || gap % 2 != 0 {
        return 0;
    }
    sp[x][y].coeff(gap / 2)
}

fn cell(ctx: &SignedContext, sp: &[Vec<LaurentPoly>], strategy: Strategy, xp: usize, y: usize) -> Result<LaurentPoly> {
    let g = &ctx.group;
    if xp == y {
        return Ok(LaurentPoly::one());
    }
    if !g.bruhat_leq(y, xp) {
        return Ok(LaurentPoly::zero());
    }
    let mut gens: Vec<usize> = (0..g.num_gens()).collect();
    if strategy == Strategy::ReverseOrder {
        gens.reverse();
    }
    let common = gens
        .iter()
        .copied()
        .find(|&s| g.is_right_descent(xp, s) && g.is_right_descent(y, s) && g.bruhat_leq(y, g.rmul_gen(xp, s)));
    if strategy == Strategy::PreferCaseB {
        if let Some(s) = common {
            return case_b(ctx, sp, xp, y, s);
        }
    }
    if let Some(s) = gens
        .iter()
        .copied()
        .find(|&s| g.is_right_descent(xp, s) && !g.is_right_descent(y, s))
    {
        let x = g.rmul_gen(xp, s);
        return Ok(sp[x][y].scale(ctx.case_a_sign(x, s)?));
    }
    if let Some(s) = gens
        .iter()
        .copied()
        .find(|&s| g.is_left_descent(xp, s) && !g.is_left_descent(y, s))
    {
        let x = g.lmul_gen(xp, s);
        return Ok(sp[x][y].scale(ctx.case_a_prime_sign(x, s)?));
    }
    match common {
        Some(s) => case_b(ctx, sp, xp, y, s),
        None => Err(Error::ResourceGuard(format!(
            "no recursion applies to ({:?}, {:?})",
            g.word(xp),
            g.word(y)
        ))),
    }
}

/// Solves the case-b identity for `SP(xs, y)` with `x = x' s` and `y < x`.
fn case_b(ctx: &SignedContext, sp: &[Vec<LaurentPoly>], xp: usize, y: usize, s: usize) -> Result<LaurentPoly> {
    let g = &ctx.group;
    let x = g.rmul_gen(xp, s);
    let ys = g.rmul_gen(y, s);
    let lengths: Vec<usize> = (0..g.size()).map(|z| g.length(z)).collect();
    let ly = lengths[y] as i64;
    // sum_{z < zs} sgn(delta, z alpha) a_1(z, y) q^{(l(z)-l(y)+1)/2} SP(x, z)
    let mut rhs = LaurentPoly::zero();
    for z in 0..g.size() {
        if g.is_right_descent(z, s) || sp[x][z].is_zero() {
            continue;
        }
        let a1 = level_of(sp, &lengths, z, y, 1);
        if a1 == 0 {
            continue;
        }
        let e = (lengths[z] as i64 - ly + 1) / 2;
        let sg = ctx.delta_sign(&ctx.moved_root(z, s));
        rhs = rhs.add(&sp[x][z].shift(e).scale(sg * a1));
    }
    rhs = rhs.add(&sp[x][ys].scale(ctx.delta_sign(&ctx.moved_root(ys, s))));
    let xa = ctx.moved_root(x, s);
    rhs = rhs.sub(&sp[x][y].shift(1).scale(ctx.delta_sign(&xa)));
    let n = q_to_i64(&ctx.datum.pairing(&ctx.lambda, g.gens[s])).expect("integral");
    let parity = (n.rem_euclid(2) as u8) * ctx.datum.grading.eval_ints(&xa);
    // -(-1)^{eps} SP(xs, y) = rhs
    let sign = if parity == 0 { -1 } else { 1 };
    Ok(rhs.scale(sign))
}
