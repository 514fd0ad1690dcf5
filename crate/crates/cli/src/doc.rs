//! Structured output documents. Rationals are `"p/q"` strings; no floats anywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use skl_core::jantzen::{JantzenLayers, Layer};
use skl_core::klcore::LaurentPoly;
use skl_core::rootcore::ReflectionGroup;
use skl_core::sigchar::FormalCharacter;

use crate::config::{format_word, weight_strings};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub mu: Vec<i64>,
    pub coeff: i64,
}

/// `sum_mu coeff e^{anchor - mu}` over heights `<= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDoc {
    pub kind: String,
    pub x: Vec<usize>,
    pub anchor: Vec<String>,
    pub cutoff: i64,
    pub terms: Vec<Term>,
}

impl CharacterDoc {
    pub fn new(kind: &str, x: &[usize], c: &FormalCharacter) -> Self {
        CharacterDoc {
            kind: kind.into(),
            x: x.to_vec(),
            anchor: weight_strings(&c.anchor),
            cutoff: c.cutoff,
            terms: c.terms.iter().map(|(mu, &coeff)| Term { mu: mu.clone(), coeff }).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} at x = {}, anchor [{}], cutoff {}\n", self.kind, format_word(&self.x), self.anchor.join(", "), self.cutoff);
        if self.terms.is_empty() {
            s.push_str("  (no terms)\n");
        }
        for t in &self.terms {
            let mu: Vec<String> = t.mu.iter().map(|m| m.to_string()).collect();
            s.push_str(&format!("  e^(anchor - [{}])  {:+}\n", mu.join(", "), t.coeff));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `a_j` in `sum_j a_j q^{(l(x) - l(y) - j)/2}`.
    pub coeffs_by_level: BTreeMap<usize, i64>,
}

impl Pair {
    pub fn poly(&self) -> LaurentPoly {
        let gap = (self.x.len() as i64) - (self.y.len() as i64);
        self.coeffs_by_level
            .iter()
            .fold(LaurentPoly::zero(), |acc, (&j, &c)| acc.add(&LaurentPoly::monomial(c, (gap - j as i64) / 2)))
    }
}

/// Nonzero table cells, rows ordered by length then word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub kind: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub elements: Vec<Vec<usize>>,
    pub pairs: Vec<Pair>,
}

impl PolyDoc {
    pub fn build(
        kind: &str,
        cartan_type: &str,
        group: &ReflectionGroup,
        levels: impl Fn(usize, usize) -> BTreeMap<usize, i64>,
    ) -> Self {
        let order = ordered(group);
        let mut pairs = Vec::new();
        for &x in &order {
            for &y in &order {
                let l = levels(x, y);
                if !l.is_empty() {
                    pairs.push(Pair {
                        x: group.word(x).to_vec(),
                        y: group.word(y).to_vec(),
                        coeffs_by_level: l,
                    });
                }
            }
        }
        PolyDoc {
            kind: kind.into(),
            cartan_type: cartan_type.into(),
            elements: order.iter().map(|&x| group.word(x).to_vec()).collect(),
            pairs,
        }
    }

    pub fn render(&self) -> String {
        let names: Vec<String> = self.elements.iter().map(|w| format_word(w)).collect();
        let cells: BTreeMap<(&[usize], &[usize]), String> = self
            .pairs
            .iter()
            .map(|p| ((p.x.as_slice(), p.y.as_slice()), p.poly().to_string()))
            .collect();
        let grid: Vec<Vec<String>> = self
            .elements
            .iter()
            .map(|x| {
                self.elements
                    .iter()
                    .map(|y| cells.get(&(x.as_slice(), y.as_slice())).cloned().unwrap_or_else(|| ".".into()))
                    .collect()
            })
            .collect();
        let head = names.iter().map(|n| n.len()).max().unwrap_or(1);
        let width: Vec<usize> = (0..names.len())
            .map(|j| grid.iter().map(|r| r[j].len()).chain([names[j].len()]).max().unwrap_or(1))
            .collect();
        let mut s = format!("{} table, {} (rows x, columns y)\n", self.kind, self.cartan_type);
        s.push_str(&format!("{:head$}", ""));
        for (j, n) in names.iter().enumerate() {
            s.push_str(&format!("  {:>w$}", n, w = width[j]));
        }
        s.push('\n');
        for (i, row) in grid.iter().enumerate() {
            s.push_str(&format!("{:head$}", names[i]));
            for (j, c) in row.iter().enumerate() {
                s.push_str(&format!("  {:>w$}", c, w = width[j]));
            }
            s.push('\n');
        }
        s
    }
}

/// Group elements by length, then lexicographically by reduced word.
pub fn ordered(group: &ReflectionGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..group.size()).collect();
    v.sort_by(|&a, &b| (group.length(a), group.word(a)).cmp(&(group.length(b), group.word(b))));
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightLayers {
    pub mu: Vec<i64>,
    pub layers: Vec<Layer>,
    /// `[p, q]` for `t > 0`.
    pub plus: [usize; 2],
    /// `[p, q]` for `t < 0`.
    pub minus: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenDoc {
    pub x: Vec<usize>,
    pub base: Vec<String>,
    pub delta: Vec<String>,
    pub cutoff: i64,
    pub weights: Vec<WeightLayers>,
}

impl JantzenDoc {
    pub fn new(x: &[usize], j: &JantzenLayers) -> Self {
        let sides = j.side_signatures();
        JantzenDoc {
            x: x.to_vec(),
            base: weight_strings(&j.lambda0),
            delta: weight_strings(&j.delta),
            cutoff: j.cutoff,
            weights: j
                .weights
                .iter()
                .map(|(mu, layers)| {
                    let (p, m) = sides[mu];
                    WeightLayers {
                        mu: mu.clone(),
                        layers: layers.clone(),
                        plus: [p.0, p.1],
                        minus: [m.0, m.1],
                    }
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "Jantzen layers at x = {}, base [{}], delta [{}], cutoff {}\n",
            format_word(&self.x),
            self.base.join(", "),
            self.delta.join(", "),
            self.cutoff
        );
        for w in &self.weights {
            let mu: Vec<String> = w.mu.iter().map(|m| m.to_string()).collect();
            let ls: Vec<String> = w.layers.iter().map(|l| format!("j{}: {} ({}+ {}-)", l.level, l.dim, l.pos, l.neg)).collect();
            s.push_str(&format!(
                "  [{}]  {}  | t>0 ({}, {})  t<0 ({}, {})\n",
                mu.join(", "),
                ls.join(", "),
                w.plus[0],
                w.plus[1],
                w.minus[0],
                w.minus[1]
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub context: String,
    pub x: Vec<usize>,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

impl ReportDoc {
    pub fn new(suite: &str, checks: Vec<CheckDoc>) -> Self {
        ReportDoc {
            suite: suite.into(),
            passed: checks.iter().all(|c| c.ok),
            checks,
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.ok { "PASS" } else { "FAIL" };
            let x = if c.x.is_empty() { String::new() } else { format!(" x = {}", format_word(&c.x)) };
            s.push_str(&format!("{tag}  {}  {}{x}\n", c.context, c.name));
            if !c.ok && !c.detail.is_empty() {
                for line in c.detail.lines() {
                    s.push_str(&format!("      {line}\n"));
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.ok).count();
        s.push_str(&format!("{}: {} checks, {} failed\n", self.suite, self.checks.len(), failed));
        s
    }
}
