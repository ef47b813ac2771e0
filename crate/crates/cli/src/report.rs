//! Campaign reports: one JSON document per run, listing every check with
//! its measured value, threshold, and verdict. Reports are byte-identical
//! across runs with the same configuration and seed, so nothing
//! time-dependent is serialized; wall time goes to stderr instead.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub op: String,
    pub pass: bool,
}

impl Check {
    pub fn greater(name: &str, value: f64, threshold: f64) -> Check {
        Check {
            name: name.to_string(),
            value,
            threshold,
            op: ">".into(),
            pass: value > threshold,
        }
    }

    pub fn at_least(name: &str, value: f64, threshold: f64) -> Check {
        Check {
            name: name.to_string(),
            value,
            threshold,
            op: ">=".into(),
            pass: value >= threshold,
        }
    }

    pub fn at_most(name: &str, value: f64, threshold: f64) -> Check {
        Check {
            name: name.to_string(),
            value,
            threshold,
            op: "<=".into(),
            pass: value <= threshold,
        }
    }

    pub fn boolean(name: &str, pass: bool) -> Check {
        Check {
            name: name.to_string(),
            value: if pass { 1.0 } else { 0.0 },
            threshold: 1.0,
            op: "==".into(),
            pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub details: serde_json::Value,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value) -> Report {
        Report {
            tool: "ricci-forge",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            checks: Vec::new(),
            details: serde_json::Value::Null,
            pass: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn finish(&mut self, out: Option<&Path>) -> std::io::Result<i32> {
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        match out {
            Some(path) => fs::write(path, json.as_bytes())?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(json.as_bytes())?;
                stdout.write_all(b"\n")?;
            }
        }
        for c in &self.checks {
            eprintln!(
                "  [{}] {}: {} {} {}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.value,
                c.op,
                c.threshold
            );
        }
        Ok(if self.pass { 0 } else { 1 })
    }
}

/// Write grid rows `t,x,quantity,value` as CSV.
pub fn write_grid_csv(path: &Path, rows: &[(f64, f64, &str, f64)]) -> std::io::Result<()> {
    let mut out = String::from("t,x,quantity,value\n");
    for (t, x, q, v) in rows {
        out.push_str(&format!("{t},{x},{q},{v}\n"));
    }
    fs::write(path, out)
}
