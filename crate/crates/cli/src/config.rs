use std::path::Path;

use serde::{Deserialize, Serialize};

use skl_core::num::{format_q, parse_q, Q};
use skl_core::rootcore::{build_from_str, Marking, RootDatum, Weight};

use crate::CliError;

/// Context file, TOML or JSON (chosen by extension).
///
/// `lambda` is in the simple-root basis; `pairings` gives `(lambda, alpha_i^vee)` instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(default)]
    pub marking: Option<Vec<Marking>>,
    #[serde(default)]
    pub lambda: Option<Vec<String>>,
    #[serde(default)]
    pub pairings: Option<Vec<String>>,
    #[serde(default)]
    pub chamber: Vec<usize>,
    #[serde(default)]
    pub cutoff: Option<i64>,
    #[serde(default)]
    pub x: Vec<usize>,
}

pub const DEFAULT_CUTOFF: i64 = 6;

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
    }

    pub fn datum(&self) -> Result<RootDatum, CliError> {
        let rank = skl_core::rootcore::CartanType::parse(&self.cartan_type)
            .map_err(CliError::config)?
            .rank();
        let marking = match &self.marking {
            Some(m) => m.clone(),
            None => vec![Marking::Compact; rank],
        };
        build_from_str(&self.cartan_type, &marking).map_err(CliError::config)
    }

    pub fn weight(&self, datum: &RootDatum) -> Result<Weight, CliError> {
        let parse = |v: &[String]| -> Result<Vec<Q>, CliError> {
            if v.len() != datum.rank {
                return Err(CliError::Config(format!("expected {} entries, got {}", datum.rank, v.len())));
            }
            v.iter().map(|s| parse_q(s).map_err(CliError::config)).collect()
        };
        match (&self.lambda, &self.pairings) {
            (Some(l), None) => Ok(Weight(parse(l)?)),
            (None, Some(p)) => Ok(datum.weight_from_pairings(&parse(p)?)),
            (None, None) => Err(CliError::Config("one of `lambda` or `pairings` is required".into())),
            (Some(_), Some(_)) => Err(CliError::Config("`lambda` and `pairings` are exclusive".into())),
        }
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff.unwrap_or(DEFAULT_CUTOFF)
    }
}

/// Parses `"0,1,0"`, `"0 1 0"`, `"s0s1s0"` or `"e"` into generator indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>, CliError> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(|c: char| c == ',' || c == 's' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| CliError::Config(format!("bad word {s:?}"))))
        .collect()
}

pub fn format_word(w: &[usize]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|g| format!("s{g}")).collect::<Vec<_>>().join(" ")
}

pub fn weight_strings(w: &Weight) -> Vec<String> {
    w.0.iter().map(format_q).collect()
}
