//! Relation checking by expansion on basis tuples, and the resulting reports.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::module::{Element, Terms, Tuple};
use crate::op::Op;

/// Truncation window for Laurent-type models.
///
/// Basis elements carry a weight (the absolute value of their exponent). A
/// coefficient of a relation, read off at output tuple `y` from input tuple `x`,
/// is window-valid when `weight(x) + weight(y) + slack <= bound`: every
/// intermediate exponent along a contributing term then stays inside the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub bound: u32,
    pub slack: u32,
}

impl Window {
    pub fn new(bound: u32) -> Window {
        Window { bound, slack: 3 }
    }

    fn input_valid(&self, w: u32) -> bool {
        w + self.slack <= self.bound
    }

    fn output_valid(&self, wx: u32, wy: u32) -> bool {
        wx + wy + self.slack <= self.bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    /// Every input lies too close to the window boundary to decide.
    Inconclusive,
    /// A structure map the relation needs is absent.
    Skipped,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "window-inconclusive",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A basis input on which two sides of a relation differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub input: Tuple,
    /// Rendered input tuple.
    pub input_label: String,
    /// Indices of the compared sides.
    pub sides: (usize, usize),
    pub lhs: Element,
    pub rhs: Element,
}

impl Witness {
    /// `lhs - rhs`, restricted to the compared coefficients.
    pub fn difference(&self) -> Element {
        self.lhs.add(&self.rhs.signed(1))
    }
}

/// Outcome of one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Whether the relation is part of the axioms being checked (informational otherwise).
    pub required: bool,
    pub witness: Option<Witness>,
    /// Number of basis inputs decided.
    pub checked: usize,
    /// Number of basis inputs left undecided by the window.
    pub inconclusive: usize,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Does not count against the suite (pass, inconclusive, or informational).
    pub fn acceptable(&self) -> bool {
        !self.required || matches!(self.verdict, Verdict::Pass | Verdict::Inconclusive)
    }

    pub fn skipped(name: &str, why: &str) -> CheckReport {
        CheckReport {
            name: String::from(name),
            verdict: Verdict::Skipped,
            required: true,
            witness: None,
            checked: 0,
            inconclusive: 0,
            note: Some(String::from(why)),
        }
    }

    /// A report for a property decided without expansion.
    pub fn decided(name: &str, ok: bool, note: Option<String>) -> CheckReport {
        CheckReport {
            name: String::from(name),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            required: true,
            witness: None,
            checked: 1,
            inconclusive: 0,
            note,
        }
    }

    pub fn informational(mut self) -> CheckReport {
        self.required = false;
        self
    }

    pub fn with_note(mut self, note: String) -> CheckReport {
        self.note = Some(note);
        self
    }

    pub fn renamed(mut self, name: &str) -> CheckReport {
        self.name = String::from(name);
        self
    }
}

/// True when no required relation failed or was skipped.
pub fn all_acceptable(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.acceptable())
}

fn restrict(terms: &Terms, keep: &dyn Fn(&[u32]) -> bool) -> Terms {
    terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect()
}

/// Checks that all `sides` agree, comparing each to the first.
pub fn check_equal(name: &str, sides: &[Op], window: Option<Window>) -> CheckReport {
    let src = sides[0].src().clone();
    let dst = sides[0].dst().clone();
    for s in sides {
        assert!(*s.src() == src && *s.dst() == dst, "sides of '{}' have different shapes", name);
    }
    let mut checked = 0;
    let mut inconclusive = 0;
    for x in src.tuples() {
        let wx = src.tuple_weight(&x);
        if let Some(w) = window {
            if !w.input_valid(wx) {
                inconclusive += 1;
                continue;
            }
        }
        let keep = |y: &[u32]| match window {
            Some(w) => w.output_valid(wx, dst.tuple_weight(y)),
            None => true,
        };
        let first = restrict(&sides[0].eval(&x), &keep);
        for (k, side) in sides.iter().enumerate().skip(1) {
            let other = restrict(&side.eval(&x), &keep);
            if other != first {
                let witness = Witness {
                    input_label: src.render_tuple(&x),
                    input: x,
                    sides: (0, k),
                    lhs: Element { shape: dst.clone(), terms: first },
                    rhs: Element { shape: dst.clone(), terms: other },
                };
                return CheckReport {
                    name: String::from(name),
                    verdict: Verdict::Fail,
                    required: true,
                    witness: Some(witness),
                    checked: checked + 1,
                    inconclusive,
                    note: None,
                };
            }
        }
        checked += 1;
    }
    let verdict = if checked == 0 && inconclusive > 0 { Verdict::Inconclusive } else { Verdict::Pass };
    CheckReport {
        name: String::from(name),
        verdict,
        required: true,
        witness: None,
        checked,
        inconclusive,
        note: None,
    }
}

/// Checks that `op` vanishes.
pub fn check_zero(name: &str, op: &Op, window: Option<Window>) -> CheckReport {
    let zero = Op::map(crate::module::GradedMap::zero(op.src().clone(), op.dst().clone(), op.degree()));
    check_equal(name, &[op.clone(), zero], window)
}

/// Collects the reports whose verdict is a failure of a required relation.
pub fn failures(reports: &[CheckReport]) -> Vec<&CheckReport> {
    reports.iter().filter(|r| !r.acceptable()).collect()
}
