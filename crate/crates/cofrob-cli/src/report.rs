//! Named suites and their text and JSON reports.

use std::fmt::Write as _;

use cofrob_core::check::{CheckReport, Verdict};
use cofrob_core::duality::{check_poincare_duality, cyclic_triple_checks};
use cofrob_core::structures::*;
use cofrob_core::tqft::*;
use cofrob_core::Error;
use serde_json::{json, Value};

use crate::document::{flavor_name, Document};

pub const SUITES: &[&str] = &[
    "product-laws",
    "coproduct-laws",
    "unital-infinitesimal",
    "counital-infinitesimal",
    "biunital-infinitesimal",
    "unital-cofrobenius",
    "counital-cofrobenius",
    "biunital-cofrobenius",
    "derived-identities",
    "involutivity",
    "poincare-duality",
    "cyclic",
    "tqft-full",
    "cardy",
];

/// Runs a named suite on a document.
///
/// Suites on single structures read the closed sector, so they also apply to pair files.
pub fn run(doc: &Document, suite: &str) -> Result<Vec<CheckReport>, Error> {
    if !SUITES.contains(&suite) {
        return Err(Error::Input(format!("unknown suite '{}'; known suites: {}", suite, SUITES.join(", "))));
    }
    if matches!(suite, "tqft-full" | "cardy") {
        let t = doc.tqft()?;
        return Ok(match suite {
            "cardy" => vec![check_cardy(&t)],
            _ => {
                let mut out = run_full_tqft_suite(&t);
                out.extend(check_duality_pairing_form(&t));
                out.extend(check_cozipper_coalgebra(&t));
                out.extend(check_module_relations(&t));
                out
            }
        });
    }
    let d = doc.structure()?;
    Ok(match suite {
        "product-laws" => check_product_laws(&d),
        "coproduct-laws" => check_coproduct_laws(&d),
        "unital-infinitesimal" => unital_infinitesimal_suite(&d),
        "counital-infinitesimal" => counital_infinitesimal_suite(&d),
        "biunital-infinitesimal" => biunital_infinitesimal_suite(&d),
        "unital-cofrobenius" => check_cofrobenius(&d, Flavor::Unital),
        "counital-cofrobenius" => check_cofrobenius(&d, Flavor::Counital),
        "biunital-cofrobenius" => check_cofrobenius(&d, Flavor::Biunital),
        "derived-identities" => check_derived_identities(&d, doc.effective_flavor()),
        "involutivity" => check_involutive(&d),
        "cyclic" => cyclic_triple_checks(&d),
        "poincare-duality" => match check_poincare_duality(&d) {
            Ok(r) => r,
            Err(e @ (Error::Relation(_) | Error::NotPerfect(_))) => {
                vec![CheckReport::decided("biunital coFrobenius input with perfect pairing", false, Some(e.to_string()))]
            }
            Err(e) => return Err(e),
        },
        _ => unreachable!("suite list checked above"),
    })
}

pub fn passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::acceptable)
}

fn context(doc: &Document) -> String {
    let mut s = format!("field {}", doc.field);
    if let Some(f) = doc.flavor {
        let _ = write!(s, ", flavor {}", flavor_name(f));
    }
    if let Some(w) = doc.window {
        let _ = write!(s, ", window {} slack {}", w.bound, w.slack);
    }
    s
}

fn tag(r: &CheckReport) -> &'static str {
    match (r.required, r.verdict) {
        (false, _) => "INFO",
        (_, Verdict::Pass) => "PASS",
        (_, Verdict::Fail) => "FAIL",
        (_, Verdict::Inconclusive) => "OPEN",
        (_, Verdict::Skipped) => "SKIP",
    }
}

pub fn text(doc: &Document, suite: &str, reports: &[CheckReport]) -> String {
    let mut out = format!("suite {} ({})\n", suite, context(doc));
    for r in reports {
        let _ = write!(out, "{} {} [{}", tag(r), r.name, r.verdict);
        let _ = write!(out, ", checked {}", r.checked);
        if r.inconclusive > 0 {
            let _ = write!(out, ", inconclusive {}", r.inconclusive);
        }
        out.push_str("]\n");
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "    witness at {}", w.input_label);
            let _ = writeln!(out, "      lhs  = {}", w.lhs);
            let _ = writeln!(out, "      rhs  = {}", w.rhs);
            let _ = writeln!(out, "      diff = {}", w.difference());
        }
        if let Some(n) = &r.note {
            let _ = writeln!(out, "    note: {}", n);
        }
    }
    let failed = reports.iter().filter(|r| !r.acceptable()).count();
    if failed == 0 {
        out.push_str("result: pass\n");
    } else {
        let _ = writeln!(out, "result: fail ({} of {} relations)", failed, reports.len());
    }
    out
}

pub fn json(doc: &Document, suite: &str, reports: &[CheckReport]) -> Value {
    let relations: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "verdict": r.verdict.as_str(),
                "required": r.required,
                "checked": r.checked,
                "inconclusive": r.inconclusive,
                "witness": r.witness.as_ref().map(|w| json!({
                    "input": w.input_label,
                    "lhs": w.lhs.to_string(),
                    "rhs": w.rhs.to_string(),
                    "difference": w.difference().to_string(),
                })),
                "note": r.note,
            })
        })
        .collect();
    json!({
        "suite": suite,
        "field": doc.field.to_string(),
        "flavor": doc.flavor.map(flavor_name),
        "window": doc.window.map(|w| json!({"bound": w.bound, "slack": w.slack})),
        "result": if passed(reports) { "pass" } else { "fail" },
        "relations": relations,
    })
}
