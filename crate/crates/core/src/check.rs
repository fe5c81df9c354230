//! Pass/fail records produced by the executable checks.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed: false, witness: Some(witness.into()) }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    /// Passes exactly when the wrapped check failed.
    pub fn negative_control(self) -> Self {
        CheckResult { name: format!("{} [negative control]", self.name), passed: !self.passed, ..self }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

pub fn format_vector(labels: &[String], v: &[crate::Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(q, _)| !num_traits::Zero::is_zero(*q))
        .map(|(q, l)| format!("{q}*{l}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
