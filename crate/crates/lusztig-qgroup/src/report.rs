//! Machine-readable results for the verification suites.
//!
//! Every identity check produces one [`CheckResult`] with a stable `id`, the
//! name of the `rule` it instantiates, a pass/fail `status`, and an optional
//! `witness` (the rendered difference or computed constant). The JSON shape
//! of a [`Report`] is part of the CLI contract and is kept field-stable.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Stable identifier, e.g. `torus.g8.t2.tp3`.
    pub id: String,
    /// The relation or statement the check instantiates, e.g. `(g8)`.
    pub rule: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>, rule: impl Into<String>) -> Self {
        CheckResult { id: id.into(), rule: rule.into(), status: Status::Pass, witness: None }
    }

    pub fn pass_with(
        id: impl Into<String>,
        rule: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            rule: rule.into(),
            status: Status::Pass,
            witness: Some(witness.into()),
        }
    }

    pub fn fail(
        id: impl Into<String>,
        rule: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            rule: rule.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Pass when `ok`, otherwise fail with the lazily rendered witness.
    pub fn from_bool(
        id: impl Into<String>,
        rule: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(id, rule)
        } else {
            Self::fail(id, rule, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A full suite run: configuration echo plus the individual checks, sorted
/// by id so the output is byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub ell: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
    pub bound: i64,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(
        suite: impl Into<String>,
        ell: i64,
        cartan: Option<String>,
        d: Option<Vec<i64>>,
        bound: i64,
        seed: u64,
        mut checks: Vec<CheckResult>,
    ) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Report { suite: suite.into(), ell, cartan, d, bound, seed, passed, failed, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (l = {}{}) seed {}\n",
            self.suite,
            self.ell,
            self.cartan.as_deref().map(|c| format!(", cartan {}", c)).unwrap_or_default(),
            self.seed
        ));
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            match (&c.witness, c.passed()) {
                (Some(w), false) => {
                    out.push_str(&format!("  [{}] {} ({}): {}\n", status, c.id, c.rule, w))
                }
                (Some(w), true) => {
                    out.push_str(&format!("  [{}] {} ({}) -> {}\n", status, c.id, c.rule, w))
                }
                _ => out.push_str(&format!("  [{}] {} ({})\n", status, c.id, c.rule)),
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}
