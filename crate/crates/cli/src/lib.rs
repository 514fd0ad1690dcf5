//! `skl`: signed Kazhdan-Lusztig tables, signature characters and their Gram-matrix checks.
//!
//! Exit codes: 0 success, 1 configuration error, 2 computation error, 3 verification failure.

pub mod cache;
pub mod config;
pub mod doc;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skl_core::enveloping::PbwAlgebra;
use skl_core::jantzen::{jantzen_layers, EpsilonCache};
use skl_core::klcore::KlTable;
use skl_core::par::Exec;
use skl_core::rootcore::{build_from_str, integral_weyl_group, CartanType, Marking, ReflectionGroup, RootDatum, Weight};
use skl_core::sigchar::{alcove_along, alcove_key, ch_irreducible, ch_s_irreducible, ch_verma, AlcoveEngine};
use skl_core::signedkl::{SignedContext, SignedKlTable};

use cache::Cache;
use config::{parse_word, weight_strings, Config};
use doc::{CharacterDoc, JantzenDoc, PolyDoc, ReportDoc};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Compute(#[from] skl_core::Error),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(e: skl_core::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Compute(_) | CliError::Io(_) => 2,
            CliError::Verify(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "skl", version, about = "Signed Kazhdan-Lusztig polynomials and signature characters")]
pub struct Cli {
    /// Also write the structured document to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Kazhdan-Lusztig table of a Weyl group.
    Kl {
        #[arg(long = "type")]
        cartan_type: String,
    },
    /// Signed Kazhdan-Lusztig table of a context.
    Skl {
        #[arg(long)]
        config: PathBuf,
    },
    /// Character of the Verma module M(x lambda).
    CharM(CharArgs),
    /// Character of the irreducible module L(x lambda).
    CharL(CharArgs),
    /// Signature character of M(x lambda).
    SigM(CharArgs),
    /// Signature character of L(x lambda).
    SigL(CharArgs),
    /// Jantzen layer dimensions and signatures at x lambda.
    Jantzen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        x: Option<String>,
        /// Chamber word w; the direction is w(-rho).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        cutoff: Option<i64>,
    },
    /// Shapovalov determinant against the product formula.
    DetCheck {
        #[arg(long = "type")]
        types: Vec<String>,
        #[arg(long, default_value_t = 4)]
        cutoff: i64,
    },
    /// Cross-check every formula against Gram matrices and the Hecke algebra.
    Oracle {
        #[arg(long, value_enum, default_value_t = SuiteKind::Quick)]
        suite: SuiteKind,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CharArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Reduced word in the simple reflections of the integral Weyl group.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub cutoff: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteKind {
    Quick,
    Full,
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "skl: {e}");
            e.code()
        }
    }
}

fn exec_for(threads: usize) -> Exec {
    if threads <= 1 {
        return Exec::Sequential;
    }
    #[cfg(feature = "parallel")]
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Exec::Parallel
}

fn emit<T: Serialize>(path: Option<&Path>, doc: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
        s.push('\n');
        std::fs::write(p, s)?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let exec = exec_for(cli.threads);
    let json = cli.json.as_deref();
    let cache = Cache::from_env();
    match &cli.cmd {
        Cmd::Kl { cartan_type } => {
            let doc = kl_doc(cartan_type, &cache, exec)?;
            write!(out, "{}", doc.render())?;
            emit(json, &doc)
        }
        Cmd::Skl { config } => {
            let cfg = Config::load(config)?;
            let doc = skl_doc(&cfg, &cache, exec)?;
            write!(out, "{}", doc.render())?;
            emit(json, &doc)
        }
        Cmd::CharM(a) | Cmd::CharL(a) | Cmd::SigM(a) | Cmd::SigL(a) => {
            let doc = character(&cli.cmd, a, exec)?;
            write!(out, "{}", doc.render())?;
            emit(json, &doc)
        }
        Cmd::Jantzen { config, x, delta, cutoff } => {
            let cfg = Config::load(config)?;
            let doc = jantzen_doc(&cfg, x.as_deref(), delta.as_deref(), *cutoff, exec)?;
            write!(out, "{}", doc.render())?;
            emit(json, &doc)
        }
        Cmd::DetCheck { types, cutoff } => {
            let types: Vec<String> = if types.is_empty() {
                ["A1", "A2", "B2", "G2"].map(String::from).to_vec()
            } else {
                types.clone()
            };
            let mut checks = Vec::new();
            for t in &types {
                checks.push(suite::det_check(t, *cutoff).map_err(CliError::config)?);
            }
            report(ReportDoc::new("det-check", checks), json, out)
        }
        Cmd::Oracle { suite } => {
            let doc = match suite {
                SuiteKind::Quick => suite::quick(exec),
                SuiteKind::Full => suite::full(exec),
            };
            report(doc, json, out)
        }
    }
}

fn report(doc: ReportDoc, json: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    write!(out, "{}", doc.render())?;
    emit(json, &doc)?;
    if doc.passed {
        Ok(())
    } else {
        let n = doc.checks.iter().filter(|c| !c.ok).count();
        Err(CliError::Verify(format!("{n} of {} checks failed", doc.checks.len())))
    }
}

#[derive(Serialize)]
struct TableKey<'a> {
    kind: &'a str,
    version: u32,
    cartan_type: String,
    marking: Vec<Marking>,
    lambda: Vec<String>,
    chamber: Vec<usize>,
}

pub fn kl_doc(cartan_type: &str, cache: &Cache, exec: Exec) -> Result<PolyDoc, CliError> {
    let rank = CartanType::parse(cartan_type).map_err(CliError::config)?.rank();
    let datum = build_from_str(cartan_type, &vec![Marking::Compact; rank]).map_err(CliError::config)?;
    let key = TableKey {
        kind: "kl",
        version: 1,
        cartan_type: datum.cartan_type.to_string(),
        marking: Vec::new(),
        lambda: Vec::new(),
        chamber: Vec::new(),
    };
    if let Some(doc) = cache.get(&key) {
        return Ok(doc);
    }
    let group = ReflectionGroup::weyl(&datum);
    let table = KlTable::new(&group, exec);
    let doc = PolyDoc::build("KL", &key.cartan_type, &group, |x, y| table.levels(x, y));
    cache.put(&key, &doc)?;
    Ok(doc)
}

pub fn context(cfg: &Config) -> Result<SignedContext, CliError> {
    let datum = cfg.datum()?;
    let lambda = cfg.weight(&datum)?;
    SignedContext::new(datum, lambda, cfg.chamber.clone()).map_err(CliError::config)
}

pub fn skl_doc(cfg: &Config, cache: &Cache, exec: Exec) -> Result<PolyDoc, CliError> {
    let ctx = context(cfg)?;
    let key = TableKey {
        kind: "skl",
        version: 1,
        cartan_type: ctx.datum.cartan_type.to_string(),
        marking: ctx.datum.marking.clone(),
        lambda: weight_strings(&ctx.lambda),
        chamber: ctx.chamber.clone(),
    };
    if let Some(doc) = cache.get(&key) {
        return Ok(doc);
    }
    let table = SignedKlTable::new(&ctx, exec)?;
    let doc = PolyDoc::build("signed KL", &key.cartan_type, &ctx.group, |x, y| table.levels(x, y));
    cache.put(&key, &doc)?;
    Ok(doc)
}

fn element(group: &ReflectionGroup, word: &[usize]) -> Result<usize, CliError> {
    if word.iter().any(|&g| g >= group.num_gens()) {
        return Err(CliError::Config(format!(
            "word {word:?} uses a generator outside the {} simple reflections of W_lambda",
            group.num_gens()
        )));
    }
    group
        .from_word(word)
        .ok_or_else(|| CliError::Config(format!("bad word {word:?}")))
}

fn chamber_delta(datum: &RootDatum, word: &[usize]) -> Result<Weight, CliError> {
    let full = ReflectionGroup::weyl(datum);
    let w = element(&full, word)?;
    Ok(full.act(w, &-&datum.rho))
}

fn word_arg(cfg: &Config, x: Option<&str>) -> Result<Vec<usize>, CliError> {
    match x {
        Some(s) => parse_word(s),
        None => Ok(cfg.x.clone()),
    }
}

pub fn character(cmd: &Cmd, a: &CharArgs, exec: Exec) -> Result<CharacterDoc, CliError> {
    let cfg = Config::load(&a.config)?;
    let word = word_arg(&cfg, a.x.as_deref())?;
    let cutoff = a.cutoff.unwrap_or(cfg.cutoff());
    if cutoff < 0 {
        return Err(CliError::Config("cutoff must be nonnegative".into()));
    }
    match cmd {
        Cmd::CharL(_) | Cmd::SigL(_) => {
            let ctx = context(&cfg)?;
            let x = element(&ctx.group, &word)?;
            let canon = ctx.group.word(x).to_vec();
            if matches!(cmd, Cmd::CharL(_)) {
                let kl = KlTable::new(&ctx.group, exec);
                let c = ch_irreducible(&ctx, &kl, x, cutoff)?;
                Ok(CharacterDoc::new("ch L", &canon, &c))
            } else {
                let table = SignedKlTable::new(&ctx, exec)?;
                let c = ch_s_irreducible(&ctx, &table, x, cutoff)?;
                Ok(CharacterDoc::new("ch_s L", &canon, &c))
            }
        }
        _ => {
            let datum = cfg.datum()?;
            let lambda = cfg.weight(&datum)?;
            let group = ReflectionGroup::new(&datum, integral_weyl_group(&datum, &lambda));
            let x = element(&group, &word)?;
            let canon = group.word(x).to_vec();
            let p = group.act(x, &lambda);
            if matches!(cmd, Cmd::CharM(_)) {
                return Ok(CharacterDoc::new("ch M", &canon, &ch_verma(&datum, &p, cutoff)));
            }
            let alg = PbwAlgebra::new(&datum);
            let eps = EpsilonCache::new();
            let engine = AlcoveEngine::new(&datum, &alg, &eps);
            let c = if alcove_key(&datum, &p).is_ok() {
                engine.r_alcove(&p, cutoff)?
            } else {
                let delta = chamber_delta(&datum, &cfg.chamber)?;
                engine.r_in(&alcove_along(&datum, &p, &delta)?, &p, cutoff)?
            };
            Ok(CharacterDoc::new("ch_s M", &canon, &c))
        }
    }
}

pub fn jantzen_doc(
    cfg: &Config,
    x: Option<&str>,
    delta: Option<&str>,
    cutoff: Option<i64>,
    exec: Exec,
) -> Result<JantzenDoc, CliError> {
    let datum = cfg.datum()?;
    let lambda = cfg.weight(&datum)?;
    let group = ReflectionGroup::new(&datum, integral_weyl_group(&datum, &lambda));
    let word = word_arg(cfg, x)?;
    let x = element(&group, &word)?;
    let chamber = match delta {
        Some(s) => parse_word(s)?,
        None => cfg.chamber.clone(),
    };
    let dir = chamber_delta(&datum, &chamber)?;
    let cutoff = cutoff.unwrap_or(cfg.cutoff());
    let alg = PbwAlgebra::new(&datum);
    let layers = jantzen_layers(&alg, &datum, &group.act(x, &lambda), &dir, cutoff, exec)?;
    Ok(JantzenDoc::new(group.word(x), &layers))
}
