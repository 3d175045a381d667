//! Deterministic check reports.
//!
//! Every verification in the crate produces a [`Report`]: an ordered list of
//! named checks, each carrying the rule it verified, the degree window in
//! which the rule was asserted, a pass/fail status, and on failure a witness
//! naming the first offending degree (or bidegree) and matrix entry.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity this check verified, written as plain operator algebra.
    pub rule: String,
    /// Degrees in which the identity was asserted.
    pub window: String,
    pub status: Status,
    /// First failure location: degree/bidegree, indices, matrix entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Whether a failure counts against the report. Informational checks
    /// (e.g. the cyclic condition on a module that does not claim it) record
    /// their outcome without failing the run.
    pub required: bool,
}

impl Check {
    pub fn pass(name: impl Into<String>, rule: impl Into<String>, window: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            rule: rule.into(),
            window: window.into(),
            status: Status::Pass,
            witness: None,
            required: true,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        rule: impl Into<String>,
        window: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            rule: rule.into(),
            window: window.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            required: true,
        }
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct Report {
    pub title: String,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), notes: Vec::new(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        for note in other.notes {
            self.notes.push(format!("{}: {}", other.title, note));
        }
        for mut check in other.checks {
            check.name = format!("{}: {}", other.title, check.name);
            self.checks.push(check);
        }
    }

    /// True when every required check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.required || c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.required && !c.passed())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.title));
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        for c in &self.checks {
            let status = match (c.status, c.required) {
                (Status::Pass, _) => "PASS",
                (Status::Fail, true) => "FAIL",
                (Status::Fail, false) => "fail (informational)",
            };
            out.push_str(&format!("[{status}] {} | rule: {} | window: {}", c.name, c.rule, c.window));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" | witness: {w}"));
            }
            out.push('\n');
        }
        let verdict = if self.passed() { "all required checks passed" } else { "FAILURES PRESENT" };
        out.push_str(&format!("== {} : {} ==\n", self.title, verdict));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}

/// Compares matrix pairs and produces one check; the first differing pair is
/// reported as the witness. `pairs` yields `(location-label, lhs, rhs)`.
pub fn equality_check(
    name: &str,
    rule: &str,
    window: &str,
    pairs: impl IntoIterator<Item = (String, crate::matrix::Matrix, crate::matrix::Matrix)>,
) -> Check {
    for (label, lhs, rhs) in pairs {
        debug_assert_eq!((lhs.rows(), lhs.cols()), (rhs.rows(), rhs.cols()));
        if lhs != rhs {
            let witness = first_difference(&lhs, &rhs);
            return Check::fail(name, rule, window, format!("{label}, {witness}"));
        }
    }
    Check::pass(name, rule, window)
}

pub fn first_difference(lhs: &crate::matrix::Matrix, rhs: &crate::matrix::Matrix) -> String {
    let diff = lhs.sub(rhs);
    let first = diff.entries().next().map(|(r, c, _)| (r, c));
    match first {
        Some((r, c)) => format!(
            "entry ({r},{c}): lhs={} rhs={}",
            lhs.get(r, c),
            rhs.get(r, c)
        ),
        None => "no difference".to_owned(),
    }
}
