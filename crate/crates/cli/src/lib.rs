//! Batch front end for `trialg`: reads a TOML workspace, runs its tasks and
//! writes one JSON report per task plus an index and a plain-text summary.
//!
//! Exit codes: 0 all tasks passed, 1 a check or theorem failed, 2 the config
//! is invalid, 3 a task hit the enumeration bound.

pub mod config;
pub mod tasks;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;
use trialg::{ConditionRegistry, SolveOptions, VerifyOptions};

use crate::config::{LoadedConfig, Workspace};
use crate::tasks::{Outcome, Prepared, Runner, Status};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = concat!("trialg ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("cannot write reports: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Which task types a subcommand runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Solve,
    Decompose,
    Verify,
    All,
}

impl Selection {
    fn includes(self, kind: &str) -> bool {
        match self {
            Selection::Solve => kind == "solve",
            Selection::Decompose => kind == "decompose",
            Selection::Verify => kind.starts_with("verify-") || kind == "diagnostics" || kind == "properties",
            Selection::All => true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub workers: usize,
    pub bound: Option<u64>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            out_dir: PathBuf::from("reports"),
            workers: 1,
            bound: None,
            seed: 0,
        }
    }
}

/// Parses and resolves a config without running anything.
pub fn validate(path: &Path) -> Result<(LoadedConfig, Workspace), CliError> {
    let loaded = config::load(path)?;
    let ws = config::resolve(&loaded.config)?;
    tasks::prepare(&loaded, &ws, &ConditionRegistry::builtin())?;
    Ok((loaded, ws))
}

pub fn describe(loaded: &LoadedConfig, ws: &Workspace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "modulus {} (config {})", ws.modulus, &loaded.hash[..16]);
    for (name, r) in &ws.rings {
        let _ = writeln!(out, "ring {name}: rank {}, order {}", r.rank(), r.order());
    }
    for (name, m) in &ws.bimodules {
        let _ = writeln!(out, "bimodule {name}: rank {}", m.rank());
    }
    for (name, t) in &ws.triangulars {
        let _ = writeln!(out, "triangular {name}: {}, rank {}", t.label(), t.ring().rank());
    }
    let _ = writeln!(out, "{} task(s)", loaded.config.tasks.len());
    out
}

pub struct RunSummary {
    pub exit_code: u8,
    pub text: String,
}

fn file_name(task: &Prepared) -> String {
    let clean: String = task
        .name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("{:02}-{clean}.json", task.index)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Passed => "PASS",
        Status::Failed => "FAIL",
        Status::BoundExceeded => "BOUND",
    }
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Runs the selected tasks of a config and writes the reports.
pub fn run(path: &Path, selection: Selection, opts: &RunOptions) -> Result<RunSummary, CliError> {
    let loaded = config::load(path)?;
    let ws = config::resolve(&loaded.config)?;
    let prepared = tasks::prepare(&loaded, &ws, &ConditionRegistry::builtin())?;
    let verify = VerifyOptions {
        solve: SolveOptions {
            bound: opts.bound.unwrap_or(loaded.config.enumeration_bound),
            workers: opts.workers.max(1),
        },
        sample: loaded.config.diagnostic_sample,
    };

    std::fs::create_dir_all(&opts.out_dir)?;
    let mut runner = Runner::new(&ws, verify, opts.seed);
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut worst = Status::Passed;
    for task in prepared.iter().filter(|t| selection.includes(t.kind)) {
        let Outcome {
            status,
            message,
            result,
        } = runner.run(task);
        worst = worst.max(status);
        let file = file_name(task);
        let mut report = json!({
            "schema": SCHEMA,
            "tool_version": TOOL_VERSION,
            "config_hash": loaded.hash,
            "task": { "index": task.index, "name": task.name, "type": task.kind },
            "status": status,
            "result": result,
        });
        if let Some(msg) = &message {
            report["message"] = json!(msg);
        }
        write_json(&opts.out_dir.join(&file), &report)?;
        let _ = write!(
            text,
            "{} {:02} {} [{}]",
            status_word(status),
            task.index,
            task.name,
            task.kind
        );
        if let Some(msg) = &message {
            let _ = write!(text, ": {msg}");
        }
        text.push('\n');
        entries
            .push(json!({ "index": task.index, "name": task.name, "type": task.kind, "status": status, "file": file }));
    }
    let passed = entries.len() - entries.iter().filter(|e| e["status"] != json!(Status::Passed)).count();
    let _ = writeln!(text, "{passed}/{} task(s) passed", entries.len());

    let index = json!({
        "schema": SCHEMA,
        "tool_version": TOOL_VERSION,
        "config_hash": loaded.hash,
        "all_passed": worst == Status::Passed,
        "tasks": entries,
    });
    write_json(&opts.out_dir.join("index.json"), &index)?;
    std::fs::write(opts.out_dir.join("summary.txt"), &text)?;

    let exit_code = match worst {
        Status::Passed => 0,
        Status::Failed => 1,
        Status::BoundExceeded => 3,
    };
    Ok(RunSummary { exit_code, text })
}
