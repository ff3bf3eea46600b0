use serde::Serialize;
use serde_json::Value;

/// Machine-readable record of one command invocation.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `measured < tolerance`.
    pub fn below(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: measured < tolerance, measured, tolerance }
    }

    /// Passes when `measured > tolerance`.
    pub fn above(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: measured > tolerance, measured, tolerance }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {:.3e} (tolerance {:.1e})",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )
    }
}
