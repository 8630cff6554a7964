//! Report envelope and atomic file writes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// One asserted invariant: passes when `value` is on the right side of `tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// `"<="` or `">="`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            relation: "<=",
            pass: value <= tolerance,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            relation: ">=",
            pass: value >= tolerance,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        let v = if ok { 1.0 } else { 0.0 };
        Check {
            name: name.into(),
            value: v,
            tolerance: 1.0,
            relation: ">=",
            pass: ok,
        }
    }
}

/// Writes files into the output directory through a temporary name and a rename.
pub struct Output {
    dir: PathBuf,
    written: Vec<String>,
}

impl Output {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Output {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> std::io::Result<()> {
        let tmp = self.dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, contents)?;
        fs::rename(&tmp, self.dir.join(name))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Writes `<command>.json` with the shared envelope and returns whether
    /// every check passed.
    pub fn report(
        &mut self,
        command: &str,
        config: &BTreeMap<String, String>,
        body: Value,
        checks: &[Check],
    ) -> std::io::Result<bool> {
        let pass = checks.iter().all(|c| c.pass);
        let name = format!("{command}.json");
        let mut files = self.written.clone();
        files.push(name.clone());
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": config,
            "files": files,
            "checks": checks,
            "pass": pass,
            "report": body,
        });
        let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
        self.write(&name, &text)?;
        Ok(pass)
    }
}
