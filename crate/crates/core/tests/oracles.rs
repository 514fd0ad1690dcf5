mod common;

use common::{a1, q};
use skl_core::jantzen::EpsilonCache;
use skl_core::oracle::{compare_all, direct_signature, peeled_signed_values, verma_dimension, MAX_ORACLE_DIM};
use skl_core::enveloping::FormKind;
use skl_core::par::Exec;
use skl_core::rootcore::{build_from_str, Marking, ReflectionGroup};
use skl_core::signedkl::{SignedContext, SignedKlTable};
use skl_core::Error;

fn markings(n: usize) -> Vec<Vec<Marking>> {
    (0..1usize << n)
        .map(|bits| {
            (0..n)
                .map(|i| if bits >> i & 1 == 1 { Marking::Noncompact } else { Marking::Compact })
                .collect()
        })
        .collect()
}

fn table_matches_gram(ctx: &SignedContext, cutoff: i64) {
    let t = SignedKlTable::new(ctx, Exec::Parallel).unwrap();
    let peeled = peeled_signed_values(ctx, cutoff, Exec::Parallel).unwrap();
    let g = &ctx.group;
    for x in 0..g.size() {
        for y in 0..g.size() {
            if let Some(v) = peeled[x][y] {
                assert_eq!(t.signed_kl(x, y).eval_one(), v, "{ctx:?} x={:?} y={:?}", g.word(x), g.word(y));
            }
        }
    }
}

#[test]
fn a1_full_suite_passes() {
    for m in [Marking::Compact, Marking::Noncompact] {
        for n in 1..=3 {
            for chamber in [vec![], vec![0]] {
                let ctx = a1(m, n, &chamber);
                let r = compare_all(&ctx, 6, Exec::Parallel).unwrap();
                let bad: Vec<_> = r.failures().collect();
                assert!(bad.is_empty(), "{m:?} n={n}: {bad:?}");
            }
        }
    }
}

#[test]
fn corrupted_epsilon_is_reported() {
    let mut ctx = a1(Marking::Noncompact, 2, &[0]);
    ctx.eps = EpsilonCache::corrupted();
    let r = compare_all(&ctx, 6, Exec::Sequential).unwrap();
    assert!(!r.passed());
    assert!(r.failures().any(|c| c.name == "verma direct"));
}

#[test]
fn a2_tables_match_gram_in_every_chamber() {
    for m in markings(2) {
        let d = build_from_str("A2", &m).unwrap();
        let full = ReflectionGroup::weyl(&d);
        for w in 0..full.size() {
            let ctx = SignedContext::new(d.clone(), -&d.rho, full.word(w).to_vec()).unwrap();
            table_matches_gram(&ctx, 4);
        }
    }
}

#[test]
fn a2_deeper_block_matches_gram() {
    let d = build_from_str("A2", &[Marking::Noncompact, Marking::Compact]).unwrap();
    let lam = d.weight_from_pairings(&[q(-1), q(-2)]);
    for chamber in [vec![], vec![0, 1, 0]] {
        let ctx = SignedContext::new(d.clone(), lam.clone(), chamber).unwrap();
        table_matches_gram(&ctx, 5);
    }
}

#[test]
fn b2_identity_chamber_matches_gram() {
    let d = build_from_str("B2", &[Marking::Compact, Marking::Compact]).unwrap();
    let ctx = SignedContext::new(d.clone(), -&d.rho, vec![]).unwrap();
    table_matches_gram(&ctx, 7);
}

#[test]
fn degenerate_form_gives_irreducible_quotient() {
    // A1 at 3 lambda_1: three nonzero terms, all +1
    let d = build_from_str("A1", &[Marking::Compact]).unwrap();
    let alg = skl_core::enveloping::PbwAlgebra::new(&d);
    let lam = d.fundamental_weight(0).scale(&q(3));
    let c = direct_signature(&alg, &d, &lam, FormKind::Hermitian, 8, Exec::Sequential).unwrap();
    assert_eq!(c.terms.len(), 3);
    assert!(c.terms.values().all(|&v| v == 1));
}

#[test]
fn guard_rejects_large_requests() {
    let d = build_from_str("A3", &[Marking::Compact; 3]).unwrap();
    assert!(verma_dimension(&d, 30) > MAX_ORACLE_DIM);
    let alg = skl_core::enveloping::PbwAlgebra::new(&d);
    let r = direct_signature(&alg, &d, &-&d.rho, FormKind::Hermitian, 30, Exec::Sequential);
    assert!(matches!(r, Err(Error::ResourceGuard(_))));
}
