use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::num::{q, Q};

use super::{RootDatum, Weight};

/// Memoized Kostant partition function.
#[derive(Debug, Default)]
pub struct KostantTable {
    memo: HashMap<(usize, Vec<i64>), u64>,
}

impl KostantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, datum: &RootDatum, mu: &[i64]) -> u64 {
        self.count(datum, 0, mu)
    }

    /// Ways to write `mu` using roots with index `>= k`.
    fn count(&mut self, datum: &RootDatum, k: usize, mu: &[i64]) -> u64 {
        if mu.iter().any(|&c| c < 0) {
            return 0;
        }
        if mu.iter().all(|&c| c == 0) {
            return 1;
        }
        if k == datum.num_roots() {
            return 0;
        }
        let key = (k, mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let r = &datum.roots[k];
        let mut total = 0;
        let mut rest = mu.to_vec();
        while rest.iter().all(|&c| c >= 0) {
            total += self.count(datum, k + 1, &rest);
            rest.iter_mut().zip(r).for_each(|(c, d)| *c -= d);
        }
        self.memo.insert(key, total);
        total
    }
}

pub fn kostant_partition(datum: &RootDatum, mu: &Weight) -> u64 {
    match mu.to_ints() {
        Some(m) => KostantTable::new().get(datum, &m),
        None => 0,
    }
}

fn dominant_conjugate(datum: &RootDatum, mu: &Weight) -> Weight {
    let mut m = mu.clone();
    loop {
        let Some(i) = (0..datum.rank).find(|&i| datum.simple_pairing(&m, i).is_negative()) else {
            return m;
        };
        m = datum.reflect(&m, datum.simple_root(i));
    }
}

fn in_polytope(datum: &RootDatum, highest: &Weight, mu: &Weight) -> bool {
    let diff = highest - mu;
    if !diff.is_integral() {
        return false;
    }
    let d = highest - &dominant_conjugate(datum, mu);
    d.0.iter().all(|c| !c.is_negative())
}

/// Freudenthal multiplicity of `mu` in the irreducible module of dominant highest weight.
pub fn weight_multiplicity(datum: &RootDatum, highest: &Weight, mu: &Weight) -> u64 {
    let mut memo = HashMap::new();
    freudenthal(datum, highest, mu, &mut memo)
}

fn freudenthal(
    datum: &RootDatum,
    highest: &Weight,
    mu: &Weight,
    memo: &mut HashMap<Weight, u64>,
) -> u64 {
    if !in_polytope(datum, highest, mu) {
        return 0;
    }
    if mu == highest {
        return 1;
    }
    if let Some(&m) = memo.get(mu) {
        return m;
    }
    let hr = highest + &datum.rho;
    let mr = mu + &datum.rho;
    let denom = datum.inner(&hr, &hr) - datum.inner(&mr, &mr);
    let mut num = Q::zero();
    for b in 0..datum.num_roots() {
        let a = datum.root_weight(b);
        let mut nu = mu + &a;
        while in_polytope(datum, highest, &nu) {
            let m = freudenthal(datum, highest, &nu, memo);
            num += datum.inner(&nu, &a) * q(m as i64);
            nu = &nu + &a;
        }
    }
    let v = q(2) * num / denom;
    debug_assert!(v.is_integer());
    let m = crate::num::q_to_i64(&v).unwrap() as u64;
    memo.insert(mu.clone(), m);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::{build_from_str, Marking};

    #[test]
    fn partition_examples() {
        let d = build_from_str("A2", &[Marking::Compact; 2]).unwrap();
        assert_eq!(kostant_partition(&d, &Weight::from_ints(&[0, 0])), 1);
        assert_eq!(kostant_partition(&d, &Weight::from_ints(&[1, 1])), 2);
        assert_eq!(kostant_partition(&d, &Weight::from_ints(&[-1, 0])), 0);
        assert_eq!(kostant_partition(&d, &Weight::from_ints(&[2, 2])), 3);
    }

    #[test]
    fn adjoint_a2_zero_weight() {
        let d = build_from_str("A2", &[Marking::Compact; 2]).unwrap();
        let theta = Weight::from_ints(&[1, 1]);
        assert_eq!(weight_multiplicity(&d, &theta, &Weight::from_ints(&[0, 0])), 2);
        assert_eq!(weight_multiplicity(&d, &theta, &Weight::from_ints(&[-1, -1])), 1);
        assert_eq!(weight_multiplicity(&d, &theta, &Weight::from_ints(&[2, 2])), 0);
    }

    #[test]
    fn g2_seven_dimensional() {
        let d = build_from_str("G2", &[Marking::Compact; 2]).unwrap();
        let w = d.fundamental_weight(0);
        // Short dominant root is the highest weight of the 7-dimensional module.
        assert_eq!(weight_multiplicity(&d, &w, &Weight::zero(2)), 1);
    }
}
