//! Structured pass/fail reports shared by all verification routines.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub item: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Details {
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
    pub info: BTreeMap<String, Value>,
}

/// Outcome of one verification routine. `pass` holds exactly when there
/// are no mismatches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub details: Details,
}

impl VerifyReport {
    pub fn mismatches(&self) -> &[Mismatch] {
        &self.details.mismatches
    }

    fn label(&self) -> String {
        if self.params.is_empty() {
            return self.suite.clone();
        }
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.suite, params.join(","))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} checks, {} mismatches)",
            self.label(),
            self.details.checks,
            self.details.mismatches.len()
        )
    }
}

/// Incremental builder for a [`VerifyReport`].
#[derive(Debug)]
pub struct Report {
    suite: String,
    params: BTreeMap<String, Value>,
    details: Details,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            details: Details::default(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn info(&mut self, key: &str, value: impl Serialize) {
        self.details.info.insert(key.to_string(), to_value(value));
    }

    pub fn mismatch(&mut self, item: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.details.mismatches.push(Mismatch {
            item: item.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Records one check; returns whether it held.
    pub fn check(
        &mut self,
        item: impl fmt::Display,
        ok: bool,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> bool {
        self.details.checks += 1;
        if !ok {
            self.mismatch(item, expected, actual);
        }
        ok
    }

    pub fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        item: impl fmt::Display,
        expected: &T,
        actual: &T,
    ) -> bool {
        self.check(item, expected == actual, expected, actual)
    }

    /// Like [`Report::expect_eq`], but builds the item label only on failure.
    pub fn expect_eq_with<T, F>(&mut self, item: F, expected: &T, actual: &T) -> bool
    where
        T: PartialEq + fmt::Display,
        F: FnOnce() -> String,
    {
        self.details.checks += 1;
        let ok = expected == actual;
        if !ok {
            self.mismatch(item(), expected, actual);
        }
        ok
    }

    /// Folds a sub-report in, prefixing its mismatches with its label.
    pub fn absorb(&mut self, sub: &VerifyReport) {
        self.details.checks += sub.details.checks;
        let label = sub.label();
        for m in &sub.details.mismatches {
            self.details.mismatches.push(Mismatch {
                item: format!("{label}: {}", m.item),
                expected: m.expected.clone(),
                actual: m.actual.clone(),
            });
        }
    }

    pub fn is_clean(&self) -> bool {
        self.details.mismatches.is_empty()
    }

    pub fn finish(self) -> VerifyReport {
        VerifyReport {
            pass: self.details.mismatches.is_empty(),
            suite: self.suite,
            params: self.params,
            details: self.details,
        }
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).unwrap_or_else(|e| Value::String(format!("<unserializable: {e}>")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_no_mismatches() {
        let mut r = Report::new("demo").param("n", 3);
        r.expect_eq("a", &1, &1);
        let ok = r.finish();
        assert!(ok.pass);
        assert_eq!(ok.details.checks, 1);

        let mut r = Report::new("demo");
        r.expect_eq("b", &1, &2);
        let bad = r.finish();
        assert!(!bad.pass);
        assert_eq!(bad.mismatches()[0].expected, "1");
    }

    #[test]
    fn absorb_prefixes_items() {
        let mut sub = Report::new("inner").param("n", 5);
        sub.expect_eq("x", &"p", &"q");
        let sub = sub.finish();
        let mut outer = Report::new("outer");
        outer.absorb(&sub);
        let outer = outer.finish();
        assert!(!outer.pass);
        assert_eq!(outer.mismatches()[0].item, "inner(n=5): x");
    }

    #[test]
    fn json_shape() {
        let report = Report::new("s").param("m", 1).finish();
        let json = serde_json::to_value(&report).unwrap();
        for key in ["suite", "params", "pass", "details"] {
            assert!(json.get(key).is_some());
        }
        assert_eq!(report.to_string(), "PASS s(m=1) (0 checks, 0 mismatches)");
    }
}
