use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use skl_cli::config::Config;
use skl_cli::doc::{CharacterDoc, PolyDoc, ReportDoc};
use skl_core::klcore::KlTable;
use skl_core::par::Exec;
use skl_core::rootcore::ReflectionGroup;
use skl_core::sigchar::ch_s_irreducible;
use skl_core::signedkl::SignedKlTable;
use tempfile::TempDir;

fn skl(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skl"));
    cmd.args(args);
    match cache {
        Some(d) => cmd.env("SKL_CACHE_DIR", d),
        None => cmd.env_remove("SKL_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn a1_config(dir: &TempDir, marking: &str, n: i64) -> PathBuf {
    let body = format!("type = \"A1\"\nmarking = [\"{marking}\"]\nlambda = [\"-{n}/2\"]\ncutoff = 10\nx = [0]\n");
    write(dir, &format!("a1_{marking}_{n}.toml"), &body)
}

fn json_of<T: serde::de::DeserializeOwned>(path: &Path) -> T {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sig_l_coeffs(marking: &str) -> Vec<(Vec<i64>, i64)> {
    let dir = TempDir::new().unwrap();
    let cfg = a1_config(&dir, marking, 3);
    let out = dir.path().join("out.json");
    let o = skl(&["sig-l", "--config", s(&cfg), "--json", s(&out)], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: CharacterDoc = json_of(&out);
    doc.terms.into_iter().map(|t| (t.mu, t.coeff)).collect()
}

#[test]
fn su2_irreducible_is_three_plus_terms() {
    assert_eq!(sig_l_coeffs("compact"), vec![(vec![0], 1), (vec![1], 1), (vec![2], 1)]);
}

#[test]
fn sl2r_irreducible_alternates() {
    assert_eq!(sig_l_coeffs("noncompact"), vec![(vec![0], 1), (vec![1], -1), (vec![2], 1)]);
}

#[test]
fn quick_oracle_suite_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = skl(&["oracle", "--suite", "quick", "--json", s(&out)], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r: ReportDoc = json_of(&out);
    assert!(r.passed && !r.checks.is_empty());
}

#[test]
fn det_check_passes() {
    let o = skl(&["det-check", "--type", "A2", "--type", "B2", "--cutoff", "3"], None);
    assert_eq!(o.status.code(), Some(0));
}

const A2: &str = r#"{
  "type": "A2",
  "marking": ["compact", "noncompact"],
  "pairings": ["-1", "-1"],
  "chamber": [1],
  "cutoff": 4,
  "x": [1, 0]
}"#;

#[test]
fn signed_table_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "a2.json", A2);
    let out = dir.path().join("skl.json");
    assert!(skl(&["skl", "--config", s(&cfg), "--json", s(&out)], None).status.success());
    let doc: PolyDoc = json_of(&out);
    let ctx = skl_cli::context(&Config::load(&cfg).unwrap()).unwrap();
    let table = SignedKlTable::new(&ctx, Exec::Sequential).unwrap();
    let g = &ctx.group;
    let mut nonzero = 0;
    for x in 0..g.size() {
        for y in 0..g.size() {
            let p = table.signed_kl(x, y);
            let cell = doc.pairs.iter().find(|c| c.x == g.word(x) && c.y == g.word(y));
            match cell {
                Some(c) => {
                    assert_eq!(&c.poly(), p);
                    nonzero += 1;
                }
                None => assert!(p.is_zero()),
            }
        }
    }
    assert_eq!(nonzero, doc.pairs.len());
}

#[test]
fn signature_character_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "a2.json", A2);
    let out = dir.path().join("sig.json");
    assert!(skl(&["sig-l", "--config", s(&cfg), "--json", s(&out)], None).status.success());
    let doc: CharacterDoc = json_of(&out);
    let ctx = skl_cli::context(&Config::load(&cfg).unwrap()).unwrap();
    let table = SignedKlTable::new(&ctx, Exec::Sequential).unwrap();
    let x = ctx.element(&[1, 0]).unwrap();
    let c = ch_s_irreducible(&ctx, &table, x, 4).unwrap();
    assert_eq!(doc, CharacterDoc::new("ch_s L", &[1, 0], &c));
    let anchor: Vec<String> = c.anchor.0.iter().map(skl_core::num::format_q).collect();
    assert_eq!(doc.anchor, anchor);
}

#[test]
fn kl_table_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("kl.json");
    assert!(skl(&["kl", "--type", "B2", "--json", s(&out)], None).status.success());
    let doc: PolyDoc = json_of(&out);
    let d = skl_core::rootcore::build_from_str("B2", &[skl_core::rootcore::Marking::Compact; 2]).unwrap();
    let g = ReflectionGroup::weyl(&d);
    let t = KlTable::new(&g, Exec::Sequential);
    for c in &doc.pairs {
        let x = g.from_word(&c.x).unwrap();
        let y = g.from_word(&c.y).unwrap();
        assert_eq!(c.poly(), t.kl(x, y));
        assert_eq!(c.coeffs_by_level, t.levels(x, y));
    }
    assert_eq!(doc.elements.len(), 8);
}

#[test]
fn output_words_are_canonical() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "a2.json", A2);
    let out = dir.path().join("sig.json");
    // s0 s1 s0 = s1 s0 s1; the lex-least form is printed
    assert!(skl(&["sig-l", "--config", s(&cfg), "--x", "1,0,1", "--json", s(&out)], None).status.success());
    let doc: CharacterDoc = json_of(&out);
    assert_eq!(doc.x, vec![0, 1, 0]);
}

#[test]
fn structured_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "a2.json", A2);
    for cmd in ["skl", "sig-m", "sig-l", "char-l", "jantzen"] {
        let a = dir.path().join(format!("{cmd}-a.json"));
        let b = dir.path().join(format!("{cmd}-b.json"));
        assert!(skl(&[cmd, "--config", s(&cfg), "--json", s(&a)], None).status.success(), "{cmd}");
        assert!(skl(&["--threads", "4", cmd, "--config", s(&cfg), "--json", s(&b)], None).status.success(), "{cmd}");
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{cmd}");
    }
}

#[test]
fn toml_and_json_configs_agree() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "a2.json", A2);
    let t = write(
        &dir,
        "a2.toml",
        "type = \"A2\"\nmarking = [\"compact\", \"noncompact\"]\npairings = [\"-1\", \"-1\"]\nchamber = [1]\ncutoff = 4\nx = [1, 0]\n",
    );
    assert_eq!(Config::load(&j).unwrap(), Config::load(&t).unwrap());
}

#[test]
fn cache_is_content_addressed() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("cache");
    let cfg = write(&dir, "a2.json", A2);
    let a = skl(&["skl", "--config", s(&cfg)], Some(&cache));
    assert!(a.status.success());
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 1);
    let name = files[0].as_ref().unwrap().file_name().into_string().unwrap();
    assert_eq!(name.len(), 64 + ".json".len());
    let b = skl(&["skl", "--config", s(&cfg)], Some(&cache));
    assert_eq!(a.stdout, b.stdout);
    // the same context written as `lambda` hits the same entry
    let alt = write(&dir, "alt.toml", "type = \"A2\"\nmarking = [\"compact\", \"noncompact\"]\nlambda = [\"-1\", \"-1\"]\nchamber = [1]\n");
    assert!(skl(&["skl", "--config", s(&alt)], Some(&cache)).status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.toml");
    assert_eq!(skl(&["skl", "--config", s(&missing)], None).status.code(), Some(1));
    let bad_type = write(&dir, "t.toml", "type = \"Q7\"\nlambda = [\"-1\"]\n");
    assert_eq!(skl(&["skl", "--config", s(&bad_type)], None).status.code(), Some(1));
    let unknown = write(&dir, "u.toml", "type = \"A1\"\nlambda = [\"-1\"]\ncolour = 3\n");
    assert_eq!(skl(&["skl", "--config", s(&unknown)], None).status.code(), Some(1));
    let dominant = write(&dir, "d.toml", "type = \"A1\"\nlambda = [\"1/2\"]\n");
    assert_eq!(skl(&["sig-l", "--config", s(&dominant)], None).status.code(), Some(1));
    let cfg = write(&dir, "a2.json", A2);
    assert_eq!(skl(&["sig-l", "--config", s(&cfg), "--x", "2"], None).status.code(), Some(1));
    assert_eq!(skl(&["no-such-command"], None).status.code(), Some(1));
    // rank 3: a cell no recursion reaches
    let a3 = write(&dir, "a3.toml", "type = \"A3\"\npairings = [\"-1\", \"-1\", \"-1\"]\n");
    assert_eq!(skl(&["skl", "--config", s(&a3)], None).status.code(), Some(2));
    assert_eq!(skl(&["--help"], None).status.code(), Some(0));
}
