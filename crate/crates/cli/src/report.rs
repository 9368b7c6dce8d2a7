//! JSON report envelope shared by all subcommands.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_NAME: &str = "exparabola";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Tool {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        }
    }
}

/// One row of the invariant table. `pass` is `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Non-finite residuals are stored as `f64::MAX` (JSON has no NaN) and
    /// fail.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let residual = if residual.is_finite() {
            residual
        } else {
            f64::MAX
        };
        Check {
            name: name.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// A yes/no property, reported with residual 0 or 1.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: Tool,
    pub command: String,
    pub seed: u64,
    pub input: Value,
    pub result: Value,
    pub invariants: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(
        command: &str,
        seed: u64,
        input: Value,
        result: Value,
        invariants: Vec<Check>,
    ) -> Self {
        let pass = invariants.iter().all(|c| c.pass);
        Report {
            tool: Tool::default(),
            command: command.into(),
            seed,
            input,
            result,
            invariants,
            pass,
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let mut s = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("report values are finite or null");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        let c = Check::new("x", f64::NAN, 1.0);
        assert!(!c.pass);
        assert_eq!(c.residual, f64::MAX);
        assert!(Check::flag("y", true).pass);
        assert!(!Check::flag("y", false).pass);
    }

    #[test]
    fn round_trip_is_idempotent() {
        let r = Report::new(
            "max",
            3,
            serde_json::json!({"a": 1}),
            serde_json::json!({"roots": [0.1, 1e-300, -2.5e17]}),
            vec![Check::new("r", 1e-17, 1e-9)],
        );
        let s = r.to_json(false);
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_json(false), s);
    }
}
