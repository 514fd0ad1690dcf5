use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::num::format_q;
use crate::rootcore::Weight;

/// `sum_mu c_mu e^{anchor - mu}` over `mu` in the positive root cone, truncated at a height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    pub anchor: Weight,
    pub cutoff: i64,
    pub terms: BTreeMap<Vec<i64>, i64>,
}

fn height(mu: &[i64]) -> i64 {
    mu.iter().sum()
}

impl FormalCharacter {
    pub fn new(anchor: Weight, cutoff: i64) -> Self {
        FormalCharacter {
            anchor,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    /// `e^{anchor}`.
    pub fn monomial(anchor: Weight, cutoff: i64) -> Self {
        let mut c = Self::new(anchor, cutoff);
        let zero = vec![0; c.rank()];
        c.add_term(&zero, 1);
        c
    }

    pub fn rank(&self) -> usize {
        self.anchor.0.len()
    }

    pub fn get(&self, mu: &[i64]) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    /// Adds `c e^{anchor - mu}`; terms beyond the cutoff are dropped.
    pub fn add_term(&mut self, mu: &[i64], c: i64) {
        if c == 0 || height(mu) > self.cutoff || mu.iter().any(|&x| x < 0) {
            return;
        }
        let e = self.terms.entry(mu.to_vec()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(mu);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.anchor != other.anchor {
            return Err(Error::AnchorMismatch);
        }
        Ok(())
    }

    /// Sum, truncated at the smaller cutoff.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.truncate(self.cutoff.min(other.cutoff));
        for (mu, c) in &other.terms {
            out.add_term(mu, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::new(self.anchor.clone(), self.cutoff);
        for (mu, c) in &self.terms {
            out.add_term(mu, c * k);
        }
        out
    }

    pub fn truncate(&self, cutoff: i64) -> Self {
        let mut out = Self::new(self.anchor.clone(), cutoff);
        for (mu, c) in &self.terms {
            out.add_term(mu, *c);
        }
        out
    }

    /// Same formal sum written against a higher anchor `new = anchor + nu`.
    pub fn reanchor(&self, new_anchor: &Weight, cutoff: i64) -> Result<Self> {
        let nu = (new_anchor - &self.anchor).to_ints().ok_or(Error::AnchorMismatch)?;
        if nu.iter().any(|&c| c < 0) {
            return Err(Error::AnchorMismatch);
        }
        let mut out = Self::new(new_anchor.clone(), cutoff.min(self.cutoff + height(&nu)));
        for (mu, c) in &self.terms {
            let m: Vec<i64> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
            out.add_term(&m, *c);
        }
        Ok(out)
    }

    /// Multiplication by `1 + sign e^{-alpha}`.
    pub fn mul_factor(&self, alpha: &[i64], sign: i64) -> Self {
        let mut out = self.clone();
        for (mu, c) in &self.terms {
            let m: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a + b).collect();
            out.add_term(&m, sign * c);
        }
        out
    }

    /// Division by `1 + sign e^{-alpha}` as a truncated geometric series.
    pub fn div_factor(&self, alpha: &[i64], sign: i64) -> Self {
        let mut keys: Vec<Vec<i64>> = Vec::new();
        let mut stack: Vec<Vec<i64>> = self.terms.keys().cloned().collect();
        let mut seen = std::collections::HashSet::new();
        while let Some(mu) = stack.pop() {
            if height(&mu) > self.cutoff || !seen.insert(mu.clone()) {
                continue;
            }
            stack.push(mu.iter().zip(alpha).map(|(a, b)| a + b).collect());
            keys.push(mu);
        }
        keys.sort_by_key(|m| height(m));
        let mut out = Self::new(self.anchor.clone(), self.cutoff);
        // c'(mu) = c(mu) - sign c'(mu - alpha)
        for mu in keys {
            let prev: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            let v = self.get(&mu) - sign * out.get(&prev);
            out.add_term(&mu, v);
        }
        out
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.anchor.0.iter().map(format_q).collect();
        write!(f, "e^[{}] * (", a.join(", "))?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (mu, c)) in self.terms.iter().enumerate() {
            let sep = match (i, *c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let m: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
            write!(f, "{sep}{} e^-[{}]", c.abs(), m.join(", "))?;
        }
        write!(f, ") + O(height > {})", self.cutoff)
    }
}
