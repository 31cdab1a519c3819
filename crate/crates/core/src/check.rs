//! Pass/fail reports for the identity and inequality checks.

use std::fmt;

use serde::Serialize;

/// Default slack for fixed-ε identity and inequality checks.
pub const SLACK: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Preconditions for the assertion did not hold; nothing was asserted.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub items: Vec<CheckItem>,
}

fn scale(a: f64, b: f64) -> f64 {
    1f64.max(a.abs()).max(b.abs())
}

/// `|a - b|` within `slack`, relative to `max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, slack: f64) -> bool {
    (a - b).abs() <= slack * scale(a, b)
}

/// `a <= b` up to the same relative slack.
pub fn approx_le(a: f64, b: f64, slack: f64) -> bool {
    a <= b + slack * scale(a, b)
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn assert_eq(&mut self, label: &str, lhs: f64, rhs: f64, slack: f64) {
        let ok = approx_eq(lhs, rhs, slack);
        self.push(label, pass_if(ok), format!("{lhs:e} == {rhs:e}"));
    }

    pub fn assert_le(&mut self, label: &str, lhs: f64, rhs: f64, slack: f64) {
        let ok = approx_le(lhs, rhs, slack);
        self.push(label, pass_if(ok), format!("{lhs:e} <= {rhs:e}"));
    }

    pub fn extend(&mut self, other: CheckReport) {
        for mut item in other.items {
            item.label = format!("{}/{}", other.name, item.label);
            self.items.push(item);
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }
}

pub(crate) fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "SKIP",
            };
            writeln!(f, "{tag} {}/{}: {}", self.name, i.label, i.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_is_relative() {
        assert!(approx_eq(1e6, 1e6 + 1e-7, 1e-12));
        assert!(!approx_eq(1.0, 1.0 + 1e-9, 1e-12));
        assert!(approx_le(1.0 + 1e-13, 1.0, 1e-12));
        assert!(!approx_le(1.1, 1.0, 1e-12));
    }

    #[test]
    fn report_status() {
        let mut r = CheckReport::new("demo");
        r.assert_eq("eq", 1.0, 1.0, 0.0);
        r.push("skip", Status::Inconclusive, "n/a");
        assert!(r.passed());
        r.assert_le("le", 2.0, 1.0, 0.0);
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
