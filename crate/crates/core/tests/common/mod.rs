#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;

use skl_core::rootcore::{build_from_str, Marking, RootDatum, Weight};
use skl_core::signedkl::SignedContext;

pub use skl_core::num::{q, qf, Q};

/// `su(2)` or `sl(2,R)` with `lambda = -n lambda_1`.
pub fn a1(m: Marking, n: i64, chamber: &[usize]) -> SignedContext {
    let d = build_from_str("A1", &[m]).unwrap();
    let lam = d.fundamental_weight(0).scale(&q(-n));
    SignedContext::new(d, lam, chamber.to_vec()).unwrap()
}

/// Rational weight off every reducibility hyperplane whose integral pairings are all negative.
///
/// Each simple pairing is a negative integer with probability 1/3, else `k + a/b` with `k` in `lo..=hi`.
pub fn random_alcove_weight<R: Rng>(d: &RootDatum, rng: &mut R, lo: i64, hi: i64) -> Weight {
    loop {
        let p: Vec<Q> = (0..d.rank)
            .map(|_| {
                if rng.random_range(0..3) == 0 {
                    q(rng.random_range(-2..=-1))
                } else {
                    let b = [2, 3, 5, 7][rng.random_range(0..4)];
                    q(rng.random_range(lo..=hi)) + qf(rng.random_range(1..b), b)
                }
            })
            .collect();
        let lam = d.weight_from_pairings(&p);
        let ok = (0..d.num_roots()).all(|b| {
            let x = d.pairing(&lam, b);
            !x.is_integer() || (x < Q::zero())
        });
        if ok {
            return lam;
        }
    }
}
