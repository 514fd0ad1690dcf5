//! Brute-force signatures from Gram matrices, and cross-checks of every route.

use serde::Serialize;

use crate::enveloping::{point_q, weights_of_height, FormKind, PbwAlgebra, VermaForms};
use crate::error::{Error, Result};
use crate::jantzen::side_step;
use crate::matrix::inertia;
use crate::par::Exec;
use crate::rootcore::{kostant_partition, RootDatum, Weight};
use crate::sigchar::{FormalCharacter, SignatureSolver};
use crate::signedkl::{SignedContext, SignedKlTable, Strategy};

/// Largest total PBW dimension the oracle will diagonalize.
pub const MAX_ORACLE_DIM: u64 = 20_000;

/// Total dimension of `M(lambda)` in heights `0..=cutoff`.
pub fn verma_dimension(datum: &RootDatum, cutoff: i64) -> u64 {
    (0..=cutoff)
        .flat_map(|h| weights_of_height(datum.rank, h))
        .map(|mu| kostant_partition(datum, &Weight::from_ints(&mu)))
        .sum()
}

pub fn guard(datum: &RootDatum, cutoff: i64) -> Result<()> {
    let d = verma_dimension(datum, cutoff);
    if d > MAX_ORACLE_DIM {
        return Err(Error::ResourceGuard(format!(
            "{d} PBW monomials up to height {cutoff} (limit {MAX_ORACLE_DIM})"
        )));
    }
    Ok(())
}

/// Signature character of the form of the given kind on `M(lambda)`, radical dropped.
///
/// At a generic `lambda` this is the signature of the Verma module; at an integral
/// point it is the signature of the irreducible quotient `L(lambda)`.
pub fn direct_signature(
    alg: &PbwAlgebra,
    datum: &RootDatum,
    lambda: &Weight,
    kind: FormKind,
    cutoff: i64,
    exec: Exec,
) -> Result<FormalCharacter> {
    guard(datum, cutoff)?;
    let mut vf = VermaForms::new(alg, point_q(datum, lambda));
    vf.fill(cutoff, exec);
    let mus: Vec<Vec<i64>> = (0..=cutoff)
        .flat_map(|h| weights_of_height(datum.rank, h))
        .collect();
    let grams: Vec<_> = mus.iter().map(|mu| vf.gram(kind, mu).entries).collect();
    let sigs = exec.map(&grams, |g| inertia(g).signature());
    let mut out = FormalCharacter::new(lambda - &datum.rho, cutoff);
    for (mu, s) in mus.iter().zip(sigs) {
        out.add_term(mu, s);
    }
    Ok(out)
}

/// Point `x lambda + s delta` just inside `A(x lambda, w)`.
pub fn side_point(ctx: &SignedContext, x: usize) -> Weight {
    let base = ctx.act(x);
    let s = side_step(&ctx.datum, &base, &ctx.delta);
    &base + &ctx.delta.scale(&s)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub x: Vec<usize>,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OracleReport {
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, name: &str, x: &[usize], a: &FormalCharacter, b: &FormalCharacter) {
        let ok = a.terms == b.terms;
        let detail = if ok {
            String::new()
        } else {
            format!("{a}\n  vs\n{b}")
        };
        self.checks.push(Check {
            name: name.to_string(),
            x: x.to_vec(),
            ok,
            detail,
        });
    }
}

/// Compares, for every `x` in `W_lambda`:
/// the crossing recursion, the closed sum and Gram matrices near `x lambda` for `M`;
/// the recursive and chain formulas and Gram matrices at `x lambda` for `L`;
/// `P^{lambda,w}(1)` against values peeled from Gram matrices;
/// tables built with different generator strategies.
pub fn compare_all(ctx: &SignedContext, cutoff: i64, exec: Exec) -> Result<OracleReport> {
    guard(&ctx.datum, cutoff)?;
    let table = SignedKlTable::new(ctx, exec)?;
    let mut report = OracleReport::default();
    for strategy in [Strategy::ReverseOrder, Strategy::PreferCaseB] {
        let other = SignedKlTable::with_strategy(ctx, strategy, exec)?;
        let same = (0..table.size()).all(|x| (0..table.size()).all(|y| table.signed_kl(x, y) == other.signed_kl(x, y)));
        report.checks.push(Check {
            name: format!("table {strategy:?}"),
            x: Vec::new(),
            ok: same,
            detail: String::new(),
        });
    }
    let peeled = peeled_signed_values(ctx, cutoff, exec)?;
    let solver = SignatureSolver::new(ctx, &table);
    for x in ctx.group.by_length() {
        let word = ctx.group.word(x).to_vec();
        let r = solver.verma(x, cutoff)?;
        let alcove = ctx.alcove_of_x(x)?;
        let closed = solver.engine().r_closed_in(&alcove, &ctx.act(x), cutoff)?;
        report.push("verma closed", &word, &r, &closed);
        let p = side_point(ctx, x);
        let direct = direct_signature(&ctx.alg, &ctx.datum, &p, FormKind::Hermitian, cutoff, exec)?;
        report.push("verma direct", &word, &r, &direct);
        let l = solver.irreducible(x, cutoff)?;
        let chains = solver.irreducible_chains(x, cutoff)?;
        report.push("irreducible chains", &word, &l, &chains);
        let direct = direct_signature(&ctx.alg, &ctx.datum, &ctx.act(x), FormKind::Hermitian, cutoff, exec)?;
        report.push("irreducible direct", &word, &l, &direct);
        let bad: Vec<String> = (0..table.size())
            .filter_map(|y| {
                let mine = table.signed_kl(x, y).eval_one();
                match peeled[x][y] {
                    Some(v) if v != mine => Some(format!("y={:?}: table {mine}, gram {v}", ctx.group.word(y))),
                    _ => None,
                }
            })
            .collect();
        report.checks.push(Check {
            name: "signed values".to_string(),
            x: word,
            ok: bad.is_empty(),
            detail: bad.join("; "),
        });
    }
    Ok(report)
}

/// `P^{lambda,w}(1)` for every pair, read off Gram matrices.
///
/// The signature of `M` at the side point of `x lambda` is peeled from the top weight
/// down by the directly computed signatures of `L(y lambda)`. Entry `[x][y]` is `None`
/// when `y lambda` lies above the cutoff.
pub fn peeled_signed_values(ctx: &SignedContext, cutoff: i64, exec: Exec) -> Result<Vec<Vec<Option<i64>>>> {
    guard(&ctx.datum, cutoff)?;
    let g = &ctx.group;
    let height = |x: usize, y: usize| -> Result<(Vec<i64>, i64)> {
        let mu = (&ctx.act(x) - &ctx.act(y))
            .to_ints()
            .ok_or_else(|| Error::NotInRootLattice(format!("{x} - {y}")))?;
        let h = mu.iter().sum();
        Ok((mu, h))
    };
    let ls = (0..g.size())
        .map(|y| direct_signature(&ctx.alg, &ctx.datum, &ctx.act(y), FormKind::Hermitian, cutoff, exec))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![vec![None; g.size()]; g.size()];
    for x in 0..g.size() {
        let anchor = &ctx.act(x) - &ctx.datum.rho;
        let mut rest = direct_signature(&ctx.alg, &ctx.datum, &side_point(ctx, x), FormKind::Hermitian, cutoff, exec)?;
        rest.anchor = anchor.clone();
        let mut below = Vec::new();
        for y in 0..g.size() {
            if g.bruhat_leq(y, x) {
                below.push((height(x, y)?, y));
            } else {
                out[x][y] = Some(0);
            }
        }
        below.sort_by_key(|((_, h), _)| *h);
        for ((mu, h), y) in below {
            if h > cutoff {
                continue;
            }
            let c = rest.get(&mu);
            let l = ls[y].truncate(cutoff - h).reanchor(&anchor, cutoff)?;
            rest = rest.sub(&l.scale(c))?;
            out[x][y] = Some(c);
        }
    }
    Ok(out)
}
