//! Alcoves of the reducibility arrangement, straight-line galleries, and the
//! signature characters `R^A` of Verma modules with parameter in an alcove.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use crate::enveloping::PbwAlgebra;
use crate::error::{Error, Result};
use crate::jantzen::{nudge, EpsilonCache};
use crate::num::{floor_q, q, qf, sign_q, Q};
use crate::rootcore::{RootDatum, Weight};

use super::character::FormalCharacter;

/// A connected component of the complement of all `H_{beta,n}`, `n >= 1`.
///
/// `key[b] = floor((p, beta_b^vee))` when that pairing exceeds 1, else 0.
#[derive(Debug, Clone)]
pub struct AlcoveDescriptor {
    pub sample: Weight,
    pub key: Vec<i64>,
}

impl PartialEq for AlcoveDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for AlcoveDescriptor {}

pub fn alcove_key(datum: &RootDatum, p: &Weight) -> Result<Vec<i64>> {
    datum
        .all_pairings(p)
        .iter()
        .enumerate()
        .map(|(b, x)| {
            if x.is_integer() && !x.is_negative() && !x.is_zero() {
                Err(Error::NotRegular(format!("{p:?} lies on H({:?}, {x})", datum.roots[b])))
            } else if *x < Q::one() {
                Ok(0)
            } else {
                Ok(floor_q(x))
            }
        })
        .collect()
}

/// True if no pairing with a positive coroot reaches 1.
pub fn in_wallach_region(datum: &RootDatum, p: &Weight) -> bool {
    datum.all_pairings(p).iter().all(|x| *x < Q::one())
}

fn is_generic(datum: &RootDatum, p: &Weight) -> bool {
    datum.all_pairings(p).iter().all(|x| !x.is_integer())
}

/// A point of the same alcove with no integral coroot pairing.
pub fn generic_in_alcove(datum: &RootDatum, p: &Weight) -> Result<Weight> {
    let key = alcove_key(datum, p)?;
    if is_generic(datum, p) {
        return Ok(p.clone());
    }
    let mut margin = Q::one();
    for x in datum.all_pairings(p) {
        let f = floor_q(&x);
        for n in [f, f + 1] {
            if n >= 1 && q(n) != x {
                margin = margin.min((q(n) - &x).abs());
            }
        }
    }
    for k in 1..64 {
        let v = nudge(datum.rank, k);
        let spread = datum
            .all_pairings(&v)
            .iter()
            .map(|x| x.abs())
            .fold(Q::zero(), |a, b| a.max(b));
        if spread.is_zero() {
            continue;
        }
        let cand = p + &v.scale(&(&margin / (q(4) * spread)));
        if is_generic(datum, &cand) && alcove_key(datum, &cand).as_ref() == Ok(&key) {
            return Ok(cand);
        }
    }
    Err(Error::UnresolvablePerturbation)
}

pub fn alcove_of(datum: &RootDatum, p: &Weight) -> Result<AlcoveDescriptor> {
    Ok(AlcoveDescriptor {
        sample: generic_in_alcove(datum, p)?,
        key: alcove_key(datum, p)?,
    })
}

/// Alcove containing `x lambda + s delta` for small `s > 0`.
pub fn alcove_along(datum: &RootDatum, base: &Weight, delta: &Weight) -> Result<AlcoveDescriptor> {
    let s = crate::jantzen::side_step(datum, base, delta);
    alcove_of(datum, &(base + &delta.scale(&s)))
}

/// One wall crossed by a straight segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub root: usize,
    pub level: i64,
    /// Segment parameter in `(0, 1)`.
    pub param: Q,
    pub point: Weight,
    /// The segment starts on the side `(p, beta^vee) > level`.
    pub from_plus: bool,
}

/// Crossings of `H_{beta,n}` along `from -> to`, every integer `n` when `fine`, else `n >= 1`.
///
/// `None` if two crossings coincide or a crossing point has another integral pairing.
fn segment_crossings(datum: &RootDatum, from: &Weight, to: &Weight, fine: bool) -> Option<Vec<Crossing>> {
    let dir = to - from;
    let mut out = Vec::new();
    for b in 0..datum.num_roots() {
        let a = datum.pairing(from, b);
        let e = datum.pairing(to, b);
        if a == e {
            continue;
        }
        let (lo, hi) = if a < e { (a.clone(), e.clone()) } else { (e.clone(), a.clone()) };
        let mut n = floor_q(&lo) + 1;
        if !fine {
            n = n.max(1);
        }
        while q(n) < hi {
            let param = (q(n) - &a) / (&e - &a);
            let point = from + &dir.scale(&param);
            out.push(Crossing {
                root: b,
                level: n,
                param,
                point,
                from_plus: a > q(n),
            });
            n += 1;
        }
    }
    out.sort_by(|x, y| x.param.cmp(&y.param));
    if out.windows(2).any(|w| w[0].param == w[1].param) {
        return None;
    }
    for c in &out {
        let others = datum
            .all_pairings(&c.point)
            .iter()
            .enumerate()
            .any(|(b, x)| b != c.root && x.is_integer());
        if others {
            return None;
        }
    }
    Some(out)
}

/// Straight gallery through reducibility hyperplanes; the target is nudged inside its alcove if needed.
pub fn crossing_path(datum: &RootDatum, a: &AlcoveDescriptor, b: &AlcoveDescriptor) -> Result<Vec<Crossing>> {
    if a == b {
        return Ok(Vec::new());
    }
    perturbed_path(datum, &a.sample, &b.sample, false).map(|(p, _)| p)
}

fn perturbed_path(datum: &RootDatum, from: &Weight, to: &Weight, fine: bool) -> Result<(Vec<Crossing>, Weight)> {
    let key = alcove_key(datum, to)?;
    let fine_key = |p: &Weight| -> Vec<i64> { datum.all_pairings(p).iter().map(floor_q).collect() };
    let target_fine = fine_key(to);
    for k in 0..64 {
        let t = if k == 0 {
            to.clone()
        } else {
            to + &nudge(datum.rank, k).scale(&qf(1, 1000 * k as i64))
        };
        if !is_generic(datum, &t) || alcove_key(datum, &t).as_ref() != Ok(&key) {
            continue;
        }
        if fine && fine_key(&t) != target_fine {
            continue;
        }
        if let Some(p) = segment_crossings(datum, from, &t, fine) {
            return Ok((p, t));
        }
    }
    Err(Error::UnresolvablePerturbation)
}

/// Wallach's product formula.
pub fn wallach_character(datum: &RootDatum, lambda: &Weight, cutoff: i64) -> Result<FormalCharacter> {
    if !in_wallach_region(datum, lambda) {
        return Err(Error::NotInWallachRegion(format!("{lambda:?}")));
    }
    Ok(wallach_series(datum, lambda - &datum.rho, cutoff))
}

fn wallach_series(datum: &RootDatum, anchor: Weight, cutoff: i64) -> FormalCharacter {
    let mut c = FormalCharacter::monomial(anchor, cutoff);
    for b in 0..datum.num_roots() {
        let s = if datum.is_noncompact(b) { -1 } else { 1 };
        c = c.div_factor(&datum.roots[b], s);
    }
    c
}

type Terms = BTreeMap<Vec<i64>, i64>;

fn shifted(terms: &Terms, by: &[i64], k: i64, into: &mut FormalCharacter) {
    for (mu, c) in terms {
        let m: Vec<i64> = mu.iter().zip(by).map(|(a, b)| a + b).collect();
        into.add_term(&m, k * c);
    }
}

/// Signature characters `R^A` of Verma modules, memoized per alcove.
pub struct AlcoveEngine<'a> {
    pub datum: &'a RootDatum,
    pub alg: &'a PbwAlgebra,
    pub eps: &'a EpsilonCache,
    target: Weight,
    memo: Mutex<HashMap<Vec<i64>, (i64, Terms)>>,
}

impl<'a> AlcoveEngine<'a> {
    pub fn new(datum: &'a RootDatum, alg: &'a PbwAlgebra, eps: &'a EpsilonCache) -> Self {
        let target = -&datum.rho.scale(&qf(1, 2));
        Self::with_target(datum, alg, eps, target)
    }

    /// Engine whose galleries end at a given point of the Wallach region.
    pub fn with_target(datum: &'a RootDatum, alg: &'a PbwAlgebra, eps: &'a EpsilonCache, target: Weight) -> Self {
        AlcoveEngine {
            datum,
            alg,
            eps,
            target,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn epsilon(&self, gamma: usize, level: i64, p: &Weight) -> Result<i32> {
        self.eps.get(self.alg, self.datum, gamma, level, p)
    }

    /// `R^A(lambda)` for the alcove `A` containing `lambda`, by the crossing recursion.
    pub fn r_alcove(&self, lambda: &Weight, cutoff: i64) -> Result<FormalCharacter> {
        self.r_in(&alcove_of(self.datum, lambda)?, lambda, cutoff)
    }

    /// `R^A(lambda)` for a given alcove `A`, with `lambda` anywhere.
    pub fn r_in(&self, alcove: &AlcoveDescriptor, lambda: &Weight, cutoff: i64) -> Result<FormalCharacter> {
        let terms = self.terms(&alcove.sample, cutoff)?;
        let mut out = FormalCharacter::new(lambda - &self.datum.rho, cutoff);
        for (mu, c) in terms {
            out.add_term(&mu, c);
        }
        Ok(out)
    }

    fn terms(&self, sample: &Weight, cutoff: i64) -> Result<Terms> {
        if cutoff < 0 {
            return Ok(Terms::new());
        }
        let key = alcove_key(self.datum, sample)?;
        if let Some((c, t)) = self.memo.lock().unwrap().get(&key) {
            if *c >= cutoff {
                return Ok(t.iter().filter(|(m, _)| m.iter().sum::<i64>() <= cutoff).map(|(m, v)| (m.clone(), *v)).collect());
            }
        }
        let zero = Weight::zero(self.datum.rank);
        let mut acc = wallach_series(self.datum, zero.clone(), cutoff);
        if !in_wallach_region(self.datum, sample) {
            let (path, _) = perturbed_path(self.datum, sample, &self.target, false)?;
            for c in path {
                let e = i64::from(self.epsilon(c.root, c.level, &c.point)?);
                let sigma = if c.from_plus { 1 } else { -1 };
                let shift: Vec<i64> = self.datum.roots[c.root].iter().map(|x| x * c.level).collect();
                let h: i64 = shift.iter().sum();
                let below = &c.point - &self.datum.root_weight(c.root).scale(&q(c.level));
                let sub = self.terms(&below, cutoff - h)?;
                shifted(&sub, &shift, 2 * sigma * e, &mut acc);
            }
        }
        let t = acc.terms;
        self.memo.lock().unwrap().insert(key, (cutoff, t.clone()));
        Ok(t)
    }

    /// `R^A(lambda)` by the closed subset sum over a gallery to an alcove at the origin.
    pub fn r_alcove_closed(&self, lambda: &Weight, cutoff: i64) -> Result<FormalCharacter> {
        self.r_closed_in(&alcove_of(self.datum, lambda)?, lambda, cutoff)
    }

    pub fn r_closed_in(&self, alcove: &AlcoveDescriptor, lambda: &Weight, cutoff: i64) -> Result<FormalCharacter> {
        let datum = self.datum;
        let start = alcove.sample.clone();
        let m = datum
            .all_pairings(&start)
            .iter()
            .map(|x| x.abs())
            .fold(Q::one(), |a, b| a.max(b));
        let near_origin = start.scale(&(Q::one() / (q(3) * m)));
        let (path, _) = perturbed_path(datum, &start, &near_origin, true)?;
        let dirs: Vec<i32> = path.iter().map(|c| if c.from_plus { 1 } else { -1 }).collect();
        let mut numer = FormalCharacter::new(lambda - &datum.rho, cutoff);
        let frame: Vec<usize> = Vec::new();
        self.subsets(&path, &dirs, 0, &frame, &vec![0; datum.rank], 1, cutoff, &mut numer)?;
        let mut out = numer;
        for b in 0..datum.num_roots() {
            let s = if datum.is_noncompact(b) { -1 } else { 1 };
            out = out.div_factor(&datum.roots[b], s);
        }
        Ok(out)
    }

    fn apply_frame(&self, frame: &[usize], p: &Weight) -> Weight {
        frame.iter().rev().fold(p.clone(), |acc, &b| self.datum.reflect(&acc, b))
    }

    fn apply_frame_ints(&self, frame: &[usize], v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for &b in frame.iter().rev() {
            let k = self.datum.pairing_ints(&out, b);
            for (o, r) in out.iter_mut().zip(&self.datum.roots[b]) {
                *o -= k * r;
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn subsets(
        &self,
        path: &[Crossing],
        dirs: &[i32],
        from: usize,
        frame: &[usize],
        shift: &[i64],
        coeff: i64,
        cutoff: i64,
        out: &mut FormalCharacter,
    ) -> Result<()> {
        out.add_term(shift, coeff);
        for j in from..path.len() {
            let c = &path[j];
            let v = self.apply_frame_ints(frame, &self.datum.roots[c.root]);
            let (b, s) = self.datum.signed_root_index(&v).expect("root");
            let level = s * c.level;
            if level < 1 {
                continue;
            }
            let new_shift: Vec<i64> = shift
                .iter()
                .zip(&self.datum.roots[b])
                .map(|(a, r)| a + level * r)
                .collect();
            if new_shift.iter().sum::<i64>() > cutoff {
                continue;
            }
            let point = self.apply_frame(frame, &c.point);
            let e = self.epsilon(b, level, &point)?;
            let sigma = s * i64::from(dirs[j]);
            let mut f = frame.to_vec();
            f.push(c.root);
            self.subsets(path, dirs, j + 1, &f, &new_shift, coeff * 2 * sigma * i64::from(e), cutoff, out)?;
        }
        Ok(())
    }
}

/// Signs of the coroot pairings of a regular point.
pub fn chamber_of(datum: &RootDatum, p: &Weight) -> Vec<i32> {
    datum.all_pairings(p).iter().map(sign_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::{build_from_str, Marking};

    #[test]
    fn a1_path() {
        let d = build_from_str("A1", &[Marking::Compact]).unwrap();
        let a = alcove_of(&d, &d.weight_from_pairings(&[qf(5, 2)])).unwrap();
        let w = alcove_of(&d, &d.weight_from_pairings(&[qf(-1, 2)])).unwrap();
        let p = crossing_path(&d, &a, &w).unwrap();
        assert_eq!(p.iter().map(|c| c.level).collect::<Vec<_>>(), vec![2, 1]);
        assert!(p.iter().all(|c| c.from_plus));
        assert!(crossing_path(&d, &a, &a).unwrap().is_empty());
    }

    #[test]
    fn a1_wallach() {
        let d = build_from_str("A1", &[Marking::Compact]).unwrap();
        let lam = -&d.fundamental_weight(0);
        let c = wallach_character(&d, &lam, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(c.get(&[k]), if k % 2 == 0 { 1 } else { -1 });
        }
        let d = build_from_str("A1", &[Marking::Noncompact]).unwrap();
        let c = wallach_character(&d, &lam, 5).unwrap();
        assert!((0..=5).all(|k| c.get(&[k]) == 1));
        assert!(wallach_character(&d, &d.rho.scale(&q(2)), 3).is_err());
    }

    #[test]
    fn a1_example_alcoves() {
        for m in [Marking::Compact, Marking::Noncompact] {
            let d = build_from_str("A1", &[m]).unwrap();
            let alg = PbwAlgebra::new(&d);
            let eps = EpsilonCache::new();
            let eng = AlcoveEngine::new(&d, &alg, &eps);
            for n in 0..=4i64 {
                let lam = d.weight_from_pairings(&[q(n) + qf(1, 3)]);
                let r = eng.r_alcove(&lam, 12).unwrap();
                let rc = eng.r_alcove_closed(&lam, 12).unwrap();
                assert_eq!(r, rc, "{m:?} n={n}");
                for k in 0..=12i64 {
                    let expect = match m {
                        Marking::Compact if k < n => 1,
                        Marking::Compact => if (k - n) % 2 == 0 { 1 } else { -1 },
                        Marking::Noncompact if k < n => if k % 2 == 0 { 1 } else { -1 },
                        Marking::Noncompact => if n % 2 == 0 { 1 } else { -1 },
                    };
                    assert_eq!(r.get(&[k]), expect, "{m:?} n={n} k={k}");
                }
            }
        }
    }
}
