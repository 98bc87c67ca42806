use std::io::{self, Write};
use std::path::Path;

use epsilon_core::gauss::GaussConvention;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: Value,
    pub status: Status,
    /// Exact values only: integers, strings, serialized cyclotomic elements.
    pub witness: Value,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub gauss_convention: Option<GaussConvention>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub header: Header,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(config: RunConfig, gauss_convention: Option<GaussConvention>, results: Vec<CheckResult>) -> Self {
        Report {
            header: Header {
                schema_version: SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                config,
                gauss_convention,
            },
            results,
        }
    }

    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures() == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json().as_bytes())?;
        f.write_all(b"\n")
    }

    pub fn summary(&self, out: &mut impl Write) -> io::Result<()> {
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(out, "{tag} {:<32} {} ({} ms)", r.check_id, r.params, r.elapsed_ms)?;
        }
        let count = |s| self.results.iter().filter(|r| r.status == s).count();
        writeln!(
            out,
            "{} checks: {} passed, {} failed, {} skipped",
            self.results.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        )?;
        if let Some(c) = &self.header.gauss_convention {
            writeln!(out, "gauss convention {c}")?;
        }
        Ok(())
    }
}

/// The report with timing fields removed, for comparing runs.
pub fn without_timing(report: &Value) -> Value {
    let mut v = report.clone();
    if let Some(results) = v.get_mut("results").and_then(Value::as_array_mut) {
        for r in results {
            if let Some(obj) = r.as_object_mut() {
                obj.remove("elapsed_ms");
            }
        }
    }
    v
}
