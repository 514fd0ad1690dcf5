//! Kazhdan-Lusztig polynomials of a finite reflection group.
//!
//! `KlTable` stores the standard polynomials `P_{u,v}` (nonzero iff `u <= v`).
//! The public accessors [`KlTable::kl`] and [`KlTable::mu`] index by
//! `(x, y)` and return `P_{w x, w y}` with `w` the longest element, which is
//! nonzero iff `y <= x`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rootcore::ReflectionGroup;

/// Integer Laurent polynomial `sum_k c_k z^{low + k}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        usize::try_from(e - self.low)
            .ok()
            .and_then(|k| self.coeffs.get(k).copied())
            .unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `(exponent, coefficient)` for the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.low + k as i64, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.max_exp().unwrap().max(o.max_exp().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + o.coeff(e)).collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + o.low, c)
    }

    /// Multiplication by `z^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `z -> z^{-1}`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(h) => Self::from_coeffs(-h, self.coeffs.iter().rev().copied().collect()),
        }
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in self.terms() {
            let mag = c.abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let body = match e {
                0 => mag.to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mag != 1 && e != 0 {
                s.push_str(&format!("{mag}{body}"));
            } else {
                s.push_str(&body);
            }
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("q"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which descent drives the recursion for `P_{u,v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DescentChoice {
    #[default]
    FirstRight,
    LastRight,
    FirstLeft,
}

#[derive(Debug, Clone)]
pub struct KlTable {
    pub group: ReflectionGroup,
    /// `p[v][u] = P_{u,v}`.
    p: Vec<Vec<LaurentPoly>>,
    longest: usize,
}

impl KlTable {
    pub fn new(group: &ReflectionGroup, exec: Exec) -> Self {
        Self::with_choice(group, DescentChoice::default(), exec)
    }

    pub fn with_choice(group: &ReflectionGroup, choice: DescentChoice, exec: Exec) -> Self {
        let size = group.size();
        let mut p: Vec<Vec<LaurentPoly>> = vec![Vec::new(); size];
        let by_len = group.by_length();
        let us: Vec<usize> = (0..size).collect();
        for &v in &by_len {
            if v == group.identity() {
                let mut row = vec![LaurentPoly::zero(); size];
                row[v] = LaurentPoly::one();
                p[v] = row;
                continue;
            }
            let row = {
                let p = &p;
                exec.map(&us, |&u| entry(group, p, choice, u, v))
            };
            p[v] = row;
        }
        KlTable {
            group: group.clone(),
            p,
            longest: group.longest(),
        }
    }

    /// Standard `P_{u,v}`.
    pub fn std(&self, u: usize, v: usize) -> &LaurentPoly {
        &self.p[v][u]
    }

    /// Coefficient of `q^{(l(v) - l(u) - 1)/2}` in `P_{u,v}`.
    pub fn mu_std(&self, u: usize, v: usize) -> i64 {
        mu_of(&self.group, &self.p, u, v)
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    /// `P_{w x, w y}` in the reversed indexing.
    pub fn kl(&self, x: usize, y: usize) -> LaurentPoly {
        let w = self.longest;
        self.std(self.group.mul(w, x), self.group.mul(w, y)).clone()
    }

    /// Multiplicity of `L(y lambda)` in the first Jantzen layer of `M(z lambda)`.
    pub fn mu(&self, z: usize, y: usize) -> i64 {
        let w = self.longest;
        self.mu_std(self.group.mul(w, z), self.group.mul(w, y))
    }

    /// `a_j` in `kl(x, y) = sum_j a_j q^{(l(x) - l(y) - j)/2}`.
    pub fn level_coeff(&self, x: usize, y: usize, j: usize) -> i64 {
        let gap = self.group.length(x) as i64 - self.group.length(y) as i64 - j as i64;
        if gap < 0 || gap % 2 != 0 {
            return 0;
        }
        self.kl(x, y).coeff(gap / 2)
    }

    /// Nonzero level coefficients of `kl(x, y)`.
    pub fn levels(&self, x: usize, y: usize) -> BTreeMap<usize, i64> {
        let gap = self.group.length(x) as i64 - self.group.length(y) as i64;
        self.kl(x, y)
            .terms()
            .map(|(e, c)| ((gap - 2 * e) as usize, c))
            .collect()
    }
}

fn mu_of(group: &ReflectionGroup, p: &[Vec<LaurentPoly>], u: usize, v: usize) -> i64 {
    let d = group.length(v) as i64 - group.length(u) as i64 - 1;
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    p[v][u].coeff(d / 2)
}

fn entry(group: &ReflectionGroup, p: &[Vec<LaurentPoly>], choice: DescentChoice, u: usize, v: usize) -> LaurentPoly {
    if !group.bruhat_leq(u, v) {
        return LaurentPoly::zero();
    }
    if u == v {
        return LaurentPoly::one();
    }
    let gens = 0..group.num_gens();
    let (left, s) = match choice {
        DescentChoice::FirstRight => (false, gens.clone().find(|&g| group.is_right_descent(v, g))),
        DescentChoice::LastRight => (false, gens.clone().rev().find(|&g| group.is_right_descent(v, g))),
        DescentChoice::FirstLeft => (true, gens.clone().find(|&g| group.is_left_descent(v, g))),
    };
    let s = s.expect("non-identity element has a descent");
    let act = |x: usize| if left { group.lmul_gen(x, s) } else { group.rmul_gen(x, s) };
    let vp = act(v);
    let us = act(u);
    let c = i64::from(group.length(us) < group.length(u));
    // P_{u,v} = q^{1-c} P_{us,v'} + q^c P_{u,v'} - sum_z mu(z,v') q^{(l(v)-l(z))/2} P_{u,z}
    let mut acc = p[vp][us].shift(1 - c).add(&p[vp][u].shift(c));
    let lv = group.length(v) as i64;
    for z in 0..group.size() {
        let zs = act(z);
        if group.length(zs) > group.length(z) || z == vp || !group.bruhat_leq(z, vp) {
            continue;
        }
        let m = mu_of(group, p, z, vp);
        if m != 0 && !p[z][u].is_zero() {
            let e = (lv - group.length(z) as i64) / 2;
            acc = acc.sub(&p[z][u].shift(e).scale(m));
        }
    }
    acc
}

/// Canonical basis of the Hecke algebra by triangular correction.
///
/// Normalization: `(H_s + v)(H_s - v^{-1}) = 0`, `C_s = H_s + v`, and
/// `C_w = H_w + sum_{y < w} h_{y,w} H_y` with `h_{y,w} in v Z[v]`; then
/// `P_{y,w}(q)` is read off from `h_{y,w} = v^{l(w)-l(y)} P_{y,w}(v^{-2})`.
pub fn hecke_oracle(group: &ReflectionGroup) -> Result<Vec<Vec<LaurentPoly>>> {
    let size = group.size();
    if size > 120 {
        return Err(Error::GroupTooLarge(size));
    }
    type Elt = BTreeMap<usize, LaurentPoly>;
    let mul_s = |h: &Elt, s: usize| -> Elt {
        let mut out: Elt = BTreeMap::new();
        let mut put = |k: usize, c: LaurentPoly| {
            let e = out.entry(k).or_default();
            *e = e.add(&c);
        };
        for (&x, c) in h {
            let xs = group.rmul_gen(x, s);
            put(xs, c.clone());
            if group.length(xs) < group.length(x) {
                put(x, c.mul(&LaurentPoly::from_coeffs(-1, vec![1, 0, -1])));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut canon: Vec<Elt> = vec![BTreeMap::new(); size];
    canon[group.identity()].insert(group.identity(), LaurentPoly::one());
    for w in group.by_length().into_iter().skip(1) {
        let s = *group.word(w).last().unwrap();
        let wp = group.rmul_gen(w, s);
        // C_{w'} C_s = C_{w'} H_s + v C_{w'}
        let mut c = mul_s(&canon[wp], s);
        for (&k, x) in &canon[wp] {
            let e = c.entry(k).or_default();
            *e = e.add(&x.shift(1));
        }
        c.retain(|_, x| !x.is_zero());
        loop {
            let bad = c
                .iter()
                .filter(|(&y, x)| y != w && x.coeff(0) != 0)
                .max_by_key(|(&y, _)| (group.length(y), y))
                .map(|(&y, x)| (y, x.coeff(0)));
            let Some((y, k)) = bad else { break };
            for (&z, x) in &canon[y] {
                let e = c.entry(z).or_default();
                *e = e.sub(&x.scale(k));
            }
            c.retain(|_, x| !x.is_zero());
        }
        canon[w] = c;
    }
    let mut out = vec![vec![LaurentPoly::zero(); size]; size];
    for w in 0..size {
        for (&y, h) in &canon[w] {
            let d = group.length(w) as i64 - group.length(y) as i64;
            let mut coeffs = BTreeMap::new();
            for (e, c) in h.terms() {
                // v^{d - 2k} -> q^k
                coeffs.insert((d - e) / 2, c);
            }
            let hi = coeffs.keys().max().copied().unwrap_or(0);
            let lo = coeffs.keys().min().copied().unwrap_or(0);
            let v = (lo..=hi).map(|k| coeffs.get(&k).copied().unwrap_or(0)).collect();
            out[w][y] = LaurentPoly::from_coeffs(lo, v);
        }
    }
    Ok(out)
}
