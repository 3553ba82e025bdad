//! Helpers shared by the integration tests: label-level views of maps and
//! small hand-rolled oracles that do not go through the library's tensor calculus.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cofrob_core::check::{CheckReport, Verdict};
use cofrob_core::{Element, GradedMap, Scalar, Shape};
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::Rng;

/// Entries of a map keyed by source and target label tuples.
pub type Table = BTreeMap<(Vec<String>, Vec<String>), Rational64>;

fn labels(shape: &Shape, t: &[u32]) -> Vec<String> {
    t.iter().zip(&shape.factors).map(|(&i, m)| m.label(i).to_string()).collect()
}

pub fn rational(x: &Scalar) -> Rational64 {
    match x {
        Scalar::Q(q) => {
            let n: i64 = q.numer().try_into().expect("small numerator");
            let d: i64 = q.denom().try_into().expect("small denominator");
            Rational64::new(n, d)
        }
        other => Rational64::from_integer(other.to_i64().expect("small residue")),
    }
}

pub fn table(f: &GradedMap) -> Table {
    let mut out = Table::new();
    for (a, col) in f.columns() {
        for (b, c) in col {
            if !c.is_zero() {
                out.insert((labels(&f.src, a), labels(&f.dst, b)), rational(c));
            }
        }
    }
    out
}

/// Coefficients of an element keyed by label tuples.
pub fn element_table(x: &Element) -> BTreeMap<Vec<String>, Rational64> {
    x.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (labels(&x.shape, t), rational(c))).collect()
}

pub fn key(src: &[&str], dst: &[&str]) -> (Vec<String>, Vec<String>) {
    (src.iter().map(|s| s.to_string()).collect(), dst.iter().map(|s| s.to_string()).collect())
}

pub fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// `(-1)^e`
pub fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Inverse of a 2×2 matrix by the adjugate formula.
pub fn inverse_2x2(m: [[Rational64; 2]; 2]) -> [[Rational64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    assert!(det != r(0), "singular pairing matrix");
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

/// Fails with a listing of every required relation that did not pass.
///
/// With `strict`, window-inconclusive verdicts count as failures too.
pub fn require(tag: &str, reports: &[CheckReport], strict: bool) -> Result<usize, String> {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.required)
        .filter(|r| match r.verdict {
            Verdict::Pass => false,
            Verdict::Inconclusive => strict,
            _ => true,
        })
        .map(|r| {
            let w = r
                .witness
                .as_ref()
                .map(|w| format!(" at {}: lhs {} rhs {}", w.input_label, w.lhs, w.rhs))
                .unwrap_or_default();
            format!("{} [{}]{}", r.name, r.verdict, w)
        })
        .collect();
    if bad.is_empty() {
        Ok(reports.len())
    } else {
        Err(format!("{}: {}", tag, bad.join("; ")))
    }
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Copy of `f` with each entry negated independently with probability `p`,
/// forcing at least one flip when `f` is nonzero.
pub fn flip_entries(f: &GradedMap, rng: &mut StdRng, p: f64) -> GradedMap {
    let entries: Vec<(Vec<u32>, Vec<u32>, Scalar)> = f
        .columns()
        .flat_map(|(a, col)| col.iter().map(move |(b, c)| (a.clone(), b.clone(), c.clone())))
        .collect();
    let forced = if entries.is_empty() { usize::MAX } else { rng.gen_range(0..entries.len()) };
    let mut out = GradedMap::zero(f.src.clone(), f.dst.clone(), f.degree);
    for (k, (a, b, c)) in entries.into_iter().enumerate() {
        let flip = k == forced || rng.gen_bool(p);
        out.add_entry(a, b, if flip { -c } else { c }).expect("same shape and degree");
    }
    out
}
