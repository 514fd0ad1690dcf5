//! Verification suites behind `skl oracle` and `skl det-check`.

use num_traits::Zero;

use skl_core::enveloping::{det_product_formula, shapovalov_determinant, weights_of_height, PbwAlgebra};
use skl_core::klcore::{hecke_oracle, KlTable};
use skl_core::num::{format_q, qf, Q};
use skl_core::oracle::compare_all;
use skl_core::par::Exec;
use skl_core::rootcore::{build_from_str, CartanType, Marking, ReflectionGroup, Weight};
use skl_core::signedkl::SignedContext;
use skl_core::Result;

use crate::config::weight_strings;
use crate::doc::{CheckDoc, ReportDoc};

const MARKINGS: [[Marking; 2]; 4] = [
    [Marking::Compact, Marking::Compact],
    [Marking::Compact, Marking::Noncompact],
    [Marking::Noncompact, Marking::Compact],
    [Marking::Noncompact, Marking::Noncompact],
];

fn compact(t: &str) -> Result<skl_core::rootcore::RootDatum> {
    let rank = CartanType::parse(t)?.rank();
    build_from_str(t, &vec![Marking::Compact; rank])
}

fn marking_name(m: &[Marking]) -> String {
    m.iter()
        .map(|m| if *m == Marking::Compact { "c" } else { "n" })
        .collect()
}

/// `det(Gram) / product formula` is one constant across three generic weights.
pub fn det_check(t: &str, cutoff: i64) -> Result<CheckDoc> {
    let d = compact(t)?;
    let alg = PbwAlgebra::new(&d);
    let samples = [[qf(1, 3), qf(2, 7)], [qf(-5, 3), qf(3, 11)], [qf(7, 5), qf(-1, 13)]];
    let lams: Vec<Weight> = samples.iter().map(|s| d.weight_from_pairings(&s[..d.rank])).collect();
    let mut bad = Vec::new();
    let mut spaces = 0;
    for h in 0..=cutoff {
        for mu in weights_of_height(d.rank, h) {
            spaces += 1;
            let mut ratio: Option<Q> = None;
            for lam in &lams {
                let det = shapovalov_determinant(&alg, &d, lam, &mu);
                let prod = det_product_formula(&d, lam, &mu);
                if prod.is_zero() {
                    if !det.is_zero() {
                        bad.push(format!("mu={mu:?} lambda={:?}: product vanishes, det {}", weight_strings(lam), format_q(&det)));
                    }
                    continue;
                }
                let r = det / prod;
                match &ratio {
                    None if r.is_zero() => bad.push(format!("mu={mu:?}: zero ratio")),
                    None => ratio = Some(r),
                    Some(r0) if *r0 != r => bad.push(format!(
                        "mu={mu:?} lambda={:?}: ratio {} vs {}",
                        weight_strings(lam),
                        format_q(&r),
                        format_q(r0)
                    )),
                    _ => {}
                }
            }
        }
    }
    Ok(CheckDoc {
        name: "determinant proportional to product formula".into(),
        context: format!("{t} heights<={cutoff} ({spaces} weight spaces)"),
        x: Vec::new(),
        ok: bad.is_empty(),
        detail: bad.join("\n"),
    })
}

/// Recursive KL table equals the Hecke canonical basis cell by cell.
pub fn kl_check(t: &str, exec: Exec) -> Result<CheckDoc> {
    let d = compact(t)?;
    let g = ReflectionGroup::weyl(&d);
    let table = KlTable::new(&g, exec);
    let oracle = hecke_oracle(&g)?;
    let bad: Vec<String> = (0..g.size())
        .flat_map(|w| (0..g.size()).map(move |y| (w, y)))
        .filter(|&(w, y)| *table.std(y, w) != oracle[w][y])
        .map(|(w, y)| format!("P_{{{:?},{:?}}}: {} vs {}", g.word(y), g.word(w), table.std(y, w), oracle[w][y]))
        .collect();
    Ok(CheckDoc {
        name: "KL table equals Hecke canonical basis".into(),
        context: format!("{t} |W|={}", g.size()),
        x: Vec::new(),
        ok: bad.is_empty(),
        detail: bad.join("\n"),
    })
}

/// Every `compare_all` check of one signed context; errors become failed checks.
pub fn context_checks(t: &str, marking: &[Marking], pairings: &[Q], chamber: &[usize], cutoff: i64, exec: Exec) -> Vec<CheckDoc> {
    let run = || -> Result<(String, Vec<CheckDoc>)> {
        let d = build_from_str(t, marking)?;
        let lam = d.weight_from_pairings(pairings);
        let ctx = SignedContext::new(d, lam, chamber.to_vec())?;
        let name = format!(
            "{t}[{}] lambda=[{}] w={:?}",
            marking_name(marking),
            weight_strings(&ctx.lambda).join(","),
            ctx.chamber
        );
        let report = compare_all(&ctx, cutoff, exec)?;
        let checks = report
            .checks
            .into_iter()
            .map(|c| CheckDoc {
                name: c.name,
                context: name.clone(),
                x: c.x,
                ok: c.ok,
                detail: c.detail,
            })
            .collect();
        Ok((name, checks))
    };
    match run() {
        Ok((_, checks)) => checks,
        Err(e) => vec![CheckDoc {
            name: "signed context".into(),
            context: format!("{t}[{}] pairings={:?} w={chamber:?}", marking_name(marking), pairings.iter().map(format_q).collect::<Vec<_>>()),
            x: Vec::new(),
            ok: false,
            detail: e.to_string(),
        }],
    }
}

fn error_check(name: &str, e: skl_core::Error) -> CheckDoc {
    CheckDoc {
        name: name.into(),
        context: String::new(),
        x: Vec::new(),
        ok: false,
        detail: e.to_string(),
    }
}

fn rank_one(exec: Exec) -> Vec<CheckDoc> {
    let mut out = Vec::new();
    for m in [Marking::Compact, Marking::Noncompact] {
        for n in 1..=3 {
            for w in [vec![], vec![0]] {
                out.extend(context_checks("A1", &[m], &[Q::from_integer((-n).into())], &w, 6, exec));
            }
        }
    }
    out
}

fn structural(types: &[&str], det_cutoff: i64, exec: Exec) -> Vec<CheckDoc> {
    let mut out = Vec::new();
    for t in types {
        out.push(kl_check(t, exec).unwrap_or_else(|e| error_check("KL table", e)));
    }
    for t in types.iter().filter(|t| t.ends_with('1') || t.ends_with('2')) {
        out.push(det_check(t, det_cutoff).unwrap_or_else(|e| error_check("determinant", e)));
    }
    out
}

/// A1 in both markings and chambers, A2 at `-rho`, KL and determinant spot checks.
pub fn quick(exec: Exec) -> ReportDoc {
    let mut checks = rank_one(exec);
    let m1 = -Q::from_integer(1.into());
    checks.extend(context_checks("A2", &MARKINGS[0], &[m1.clone(), m1], &[], 4, exec));
    checks.extend(structural(&["A1", "A2", "B2"], 3, exec));
    ReportDoc::new("quick", checks)
}

/// Adds every marking and chamber of A2, B2 and C2 at `-rho`, and KL tables through A3 and G2.
pub fn full(exec: Exec) -> ReportDoc {
    let mut checks = rank_one(exec);
    let m1 = -Q::from_integer(1.into());
    let rho = [m1.clone(), m1];
    for m in &MARKINGS {
        for w in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]] {
            checks.extend(context_checks("A2", m, &rho, &w, 4, exec));
        }
    }
    for t in ["B2", "C2"] {
        for m in &MARKINGS {
            for w in [vec![], vec![0, 1, 0, 1]] {
                checks.extend(context_checks(t, m, &rho, &w, 6, exec));
            }
        }
    }
    checks.extend(structural(&["A1", "A2", "B2", "G2", "A3"], 4, exec));
    ReportDoc::new("full", checks)
}
