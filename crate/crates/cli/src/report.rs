//! Report assembly and rendering.

use std::io::Write;

use anyhow::{Context, Result};
use fpl_core::metrics::{CheckResult, Status};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    pub meataxe_seed: u64,
    pub meataxe_budget: usize,
    pub scott_seed: u64,
    pub scott_trials: usize,
    pub enum_cap: usize,
    pub checks: Vec<String>,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub hypothesis_failed: usize,
    pub expectation_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub settings: RunSettings,
    pub summary: Summary,
    pub results: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn summarize(results: &[CheckResult], mismatches: usize) -> Summary {
    let mut s = Summary {
        total: results.len(),
        expectation_mismatches: mismatches,
        ..Summary::default()
    };
    for r in results {
        match r.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Inconclusive => s.inconclusive += 1,
            Status::HypothesisFailed => s.hypothesis_failed += 1,
        }
    }
    s
}

impl Report {
    pub fn new(command: &str, settings: RunSettings, results: Vec<CheckResult>, mismatches: Vec<String>, timestamp: bool) -> Self {
        let timestamp = timestamp.then(|| {
            time::OffsetDateTime::now_utc()
                .format(&time::format_description::well_known::Rfc3339)
                .expect("UTC timestamps format")
        });
        Report {
            tool: format!("fpl {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            timestamp,
            settings,
            summary: summarize(&results, mismatches.len()),
            results,
            mismatches,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("report file")
    }

    /// 0 all passed, 2 any failure, 3 hypothesis violations only.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.failed > 0 || s.inconclusive > 0 || s.expectation_mismatches > 0 {
            2
        } else if s.hypothesis_failed > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["check_id", "instance", "lhs", "rhs", "margin", "mode", "passed"])?;
                for r in &self.results {
                    let mode = r.mode.to_string();
                    let passed = r.passed.to_string();
                    w.write_record([&r.check_id, &r.instance, &r.lhs, &r.rhs, &r.margin, &mode, &passed])?;
                }
                Ok(w.into_inner()?)
            }
            Format::Text => Ok(self.text().into_bytes()),
        }
    }

    fn text(&self) -> String {
        let st = &self.settings;
        let mut out = String::new();
        out.push_str(&format!("# {} {}\n", self.tool, self.command));
        out.push_str(&format!(
            "# meataxe-seed {:#x}  meataxe-budget {}  scott-seed {:#x}  scott-trials {}  enum-cap {}\n",
            st.meataxe_seed, st.meataxe_budget, st.scott_seed, st.scott_trials, st.enum_cap
        ));
        if let Some(t) = &self.timestamp {
            out.push_str(&format!("# timestamp {t}\n"));
        }
        let width = self.results.iter().map(|r| r.check_id.len()).max().unwrap_or(0);
        for r in &self.results {
            if r.status == Status::HypothesisFailed {
                let why = r.witnesses.get("hypothesis").map_or("", String::as_str);
                out.push_str(&format!("{:<17} {:<width$}  {}  {}\n", r.status.to_string(), r.check_id, r.instance, why));
                continue;
            }
            out.push_str(&format!(
                "{:<17} {:<width$}  {}  {} {} {}  margin {}  [{}]",
                r.status.to_string(),
                r.check_id,
                r.instance,
                r.lhs,
                r.relation,
                r.rhs,
                r.margin,
                r.mode,
            ));
            if let Some(eq) = r.equality {
                out.push_str(&format!("  equality {eq}"));
            }
            out.push('\n');
        }
        for m in &self.mismatches {
            out.push_str(&format!("mismatch: {m}\n"));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "# {} results: {} pass, {} fail, {} inconclusive, {} hypothesis-failed\n",
            s.total, s.passed, s.failed, s.inconclusive, s.hypothesis_failed
        ));
        out
    }
}

pub fn emit(bytes: &[u8], out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(bytes).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}
