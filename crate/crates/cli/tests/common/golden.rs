//! Golden-file runs of the `triclub` binary. Reports are compared as JSON
//! values with the wall time zeroed. Set `TRICLUB_BLESS=1` to rewrite the
//! expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "k4_auto",
        args: &["solve", "--input", "k4.txt", "--r", "3", "--ell", "4"],
        exit: 0,
    },
    Case {
        name: "diamond_no",
        args: &["solve", "--input", "diamond.dimacs", "--format", "dimacs", "--r", "3", "--ell", "4"],
        exit: 0,
    },
    Case {
        name: "diamond_kernel",
        args: &["solve", "--input", "diamond.dimacs", "--format", "dimacs", "--r", "3", "--ell", "4", "--algorithm", "kernel-only"],
        exit: 0,
    },
    Case {
        name: "bowtie_treewidth",
        args: &[
            "solve", "--input", "bowtie.gr", "--format", "pace-gr", "--r", "1", "--ell", "5", "--algorithm", "treewidth", "--td",
            "bowtie.td",
        ],
        exit: 0,
    },
    Case {
        name: "c5_oracle",
        args: &["solve", "--input", "c5.txt", "--r", "1", "--ell", "1", "--algorithm", "oracle"],
        exit: 0,
    },
    Case {
        name: "k5_s3",
        args: &["solve", "--input", "k5.txt", "--r", "6", "--s", "3", "--ell", "5"],
        exit: 0,
    },
    Case {
        name: "self_loop",
        args: &["solve", "--input", "loop.txt", "--r", "1", "--ell", "1"],
        exit: 1,
    },
    Case {
        name: "bad_td",
        args: &["solve", "--input", "k5.txt", "--r", "1", "--ell", "1", "--td", "bad.td"],
        exit: 1,
    },
    Case {
        name: "no_apex",
        args: &["solve", "--input", "k5.txt", "--r", "1", "--ell", "3", "--algorithm", "apex"],
        exit: 2,
    },
    Case {
        name: "vc_needs_s2",
        args: &["solve", "--input", "k4.txt", "--r", "1", "--s", "3", "--ell", "3", "--algorithm", "vc"],
        exit: 2,
    },
    Case {
        name: "state_limit",
        args: &["solve", "--input", "k4.txt", "--r", "1", "--ell", "3", "--algorithm", "treewidth", "--max-states", "2"],
        exit: 3,
    },
];

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs one case; `Err` describes the first mismatch.
pub fn check(bin: &str, case: &Case) -> Result<(), String> {
    let out = Command::new(bin)
        .args(case.args)
        .current_dir(dir())
        .output()
        .map_err(|e| format!("{}: cannot run: {e}", case.name))?;
    let code = out.status.code().unwrap_or(-1);
    if code != case.exit {
        return Err(format!(
            "{}: exit {code}, expected {} (stderr: {})",
            case.name,
            case.exit,
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    if case.exit == 1 {
        // Input errors go to stderr only.
        return if stdout.trim().is_empty() && !out.stderr.is_empty() {
            Ok(())
        } else {
            Err(format!("{}: input error should print nothing on stdout", case.name))
        };
    }
    let mut report: Value = serde_json::from_str(&stdout).map_err(|e| format!("{}: bad JSON: {e}", case.name))?;
    check_schema(&report).map_err(|e| format!("{}: {e}", case.name))?;
    report["wall_time_ms"] = Value::from(0.0);
    let path = dir().join(format!("{}.json", case.name));
    if std::env::var_os("TRICLUB_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap() + "\n").unwrap();
    }
    let expected: Value = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e}", path.display()))
        .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))?;
    if report == expected {
        Ok(())
    } else {
        Err(format!("{}: report differs from {}", case.name, path.display()))
    }
}

/// Mandatory fields and types of schema 1.
pub fn check_schema(report: &Value) -> Result<(), String> {
    if report["schema"] != 1 {
        return Err("schema is not 1".into());
    }
    for key in ["n", "m", "r", "s", "ell"] {
        if !report["instance"][key].is_u64() {
            return Err(format!("instance.{key} missing"));
        }
    }
    for key in ["algorithm", "status"] {
        if !report[key].is_string() {
            return Err(format!("{key} missing"));
        }
    }
    if !report["verified"].is_boolean() || !report["witness"].is_array() || !report["wall_time_ms"].is_number() {
        return Err("verified, witness or wall_time_ms missing".into());
    }
    if !(report["best_size"].is_u64() || report["best_size"].is_null()) {
        return Err("best_size has the wrong type".into());
    }
    let positive = report["best_size"].as_u64().unwrap_or(0) > 0;
    if positive && report["verified"] != true {
        return Err("unverified positive answer".into());
    }
    Ok(())
}
