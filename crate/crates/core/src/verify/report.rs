//! The combined verification report and the suite that fills it.

use super::certify::{certify, Status};
use super::chain::proof_chain;
use super::corpus::{corpus, CORPUS_MAX_DEPTH};
use super::global_min::verify_global_min;
use super::lemma3::lemma3_property;
use crate::error::Result;
use crate::manifest::{manifest_check, CorpusManifest, BUNDLED_MANIFEST};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

/// Values of `r` covered by the global-minimum grid check.
pub fn global_min_r_values() -> [f64; 8] {
    [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 8.0, 1.02f64.powi(256)]
}

pub const CHAIN_R_VALUES: [f64; 4] = [1.0, 1.5, 2.0, 4.0];
pub const CHAIN_M: u32 = 64;
pub const LEMMA3_TRIALS: u64 = 100_000;

/// `0.05, 0.10, …, 0.95`.
pub fn chain_x_values() -> Vec<f64> {
    (1..=19).map(|k| k as f64 / 20.0).collect()
}

/// One line of the report. For the proof chain, `worst_margin` is measured
/// after each comparison's rounding and truncation allowance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub status: Status,
    pub worst_margin: Option<f64>,
    pub witness: Option<Value>,
    pub boxes_visited: u64,
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    /// Sorts by id and derives the overall status: any violation wins over
    /// any inconclusive check.
    pub fn new(mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let status = if checks.iter().any(|c| c.status == Status::Violated) {
            Status::Violated
        } else if checks.iter().all(|c| c.status.is_ok()) {
            Status::Passed
        } else {
            Status::Inconclusive
        };
        Self { status, checks }
    }

    /// 0 when everything passed, 1 on any violation, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Certified | Status::Passed => 0,
            Status::Violated => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub grid: usize,
    pub tol: f64,
    pub seed: u64,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            grid: 1024,
            tol: 1e-10,
            seed: 0,
            timings: false,
        }
    }
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn timed<F: FnOnce() -> Result<CheckRecord>>(timings: bool, f: F) -> Result<CheckRecord> {
    let start = Instant::now();
    let mut rec = f()?;
    if timings {
        rec.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(rec)
}

fn record(check_id: String, status: Status) -> CheckRecord {
    CheckRecord {
        check_id,
        status,
        worst_margin: None,
        witness: None,
        boxes_visited: 0,
        wall_time_ms: None,
    }
}

fn corpus_checks(t: bool) -> Result<Vec<CheckRecord>> {
    corpus()
        .into_par_iter()
        .map(|ineq| {
            timed(t, || {
                let out = certify(&ineq, CORPUS_MAX_DEPTH)?;
                Ok(CheckRecord {
                    worst_margin: finite(out.worst_margin),
                    witness: out.witness.map(|w| json!(w)),
                    boxes_visited: out.boxes_visited,
                    ..record(format!("corpus/{}", out.id), out.status)
                })
            })
        })
        .collect()
}

fn global_min_checks(opts: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    global_min_r_values()
        .iter()
        .map(|&r| {
            timed(opts.timings, || {
                let rep = verify_global_min(r, opts.grid, opts.tol)?;
                Ok(CheckRecord {
                    worst_margin: finite(rep.worst_margin),
                    witness: Some(json!(rep.witness)),
                    ..record(format!("global_min/r={r}"), rep.status)
                })
            })
        })
        .collect()
}

fn lemma3_check(opts: &SuiteOptions) -> Result<CheckRecord> {
    timed(opts.timings, || {
        let rep = lemma3_property(LEMMA3_TRIALS, opts.seed)?;
        let witness = rep.first_violation.as_ref().or(rep.tightest.as_ref());
        Ok(CheckRecord {
            worst_margin: finite(rep.tightest_margin),
            witness: witness.map(|w| serde_json::to_value(w).expect("instance serializes")),
            ..record("lemma3".into(), rep.status)
        })
    })
}

fn chain_checks(t: bool) -> Result<Vec<CheckRecord>> {
    CHAIN_R_VALUES
        .iter()
        .map(|&r| {
            timed(t, || {
                let mut status = Status::Passed;
                let mut worst = f64::INFINITY;
                let mut witness = None;
                for x in chain_x_values() {
                    let w = proof_chain(r, x, CHAIN_M)?;
                    let c = w.worst().expect("chain has checks");
                    let slack = c.margin + c.allowance;
                    if slack < worst {
                        worst = slack;
                        witness = Some(json!({ "x": x, "check": c.name }));
                    }
                    if w.status() != Status::Passed {
                        status = Status::Violated;
                    }
                }
                Ok(CheckRecord {
                    worst_margin: finite(worst),
                    witness,
                    ..record(format!("proof_chain/r={r}"), status)
                })
            })
        })
        .collect()
}

fn manifest_record(t: bool) -> Result<CheckRecord> {
    timed(t, || {
        let status = match CorpusManifest::parse(BUNDLED_MANIFEST).and_then(|m| manifest_check(&m)) {
            Ok(rep) if rep.passed() => Status::Passed,
            _ => Status::Violated,
        };
        Ok(record("manifest".into(), status))
    })
}

/// Runs the corpus, the global-minimum grids, the majorization property, the
/// proof chain and the manifest cross-check.
pub fn run_suite(opts: &SuiteOptions) -> Result<VerificationReport> {
    let mut checks = corpus_checks(opts.timings)?;
    checks.extend(global_min_checks(opts)?);
    checks.push(lemma3_check(opts)?);
    checks.extend(chain_checks(opts.timings)?);
    checks.push(manifest_record(opts.timings)?);
    Ok(VerificationReport::new(checks))
}
