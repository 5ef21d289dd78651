//! Batch mode: independent jobs run in parallel, results ordered by id.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::{self, parse_f, ring_for, TorsionMode};
use crate::error::{CliError, CliResult, Exit};

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum JobCommand {
    Hilbert,
    Dims,
    Torsion,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Job {
    pub id: String,
    pub f: String,
    #[serde(default)]
    pub vars: Vec<String>,
    pub command: JobCommand,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ManifestFile {
    Jobs { jobs: Vec<Job> },
    List(Vec<Job>),
}

#[derive(Debug, Serialize)]
pub struct JobResult {
    pub id: String,
    pub command: JobCommand,
    pub exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn load(path: &Path) -> CliResult<Vec<Job>> {
    let body = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let jobs = match serde_json::from_str(&body)
        .map_err(|e| CliError::parse(format!("malformed manifest {}: {e}", path.display())))?
    {
        ManifestFile::Jobs { jobs } | ManifestFile::List(jobs) => jobs,
    };
    let mut ids = BTreeSet::new();
    for job in &jobs {
        if !ids.insert(job.id.as_str()) {
            return Err(CliError::parse(format!("duplicate job id `{}`", job.id)));
        }
    }
    Ok(jobs)
}

fn param_u32(params: &BTreeMap<String, Value>, key: &str) -> CliResult<Option<u32>> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|v| u32::try_from(v).ok())
            .map(Some)
            .ok_or_else(|| CliError::parse(format!("parameter `{key}` must be a non-negative integer"))),
    }
}

fn run_job(job: &Job) -> CliResult<commands::Outcome> {
    let g_text = match job.params.get("g") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(CliError::parse("parameter `g` must be a string")),
    };
    let mut texts = vec![job.f.as_str()];
    texts.extend(g_text.as_deref());
    let ring = ring_for(Some(&job.vars), &texts)?;
    let f = parse_f(&job.f, &ring)?;
    let p = &job.params;
    match job.command {
        JobCommand::Hilbert => commands::hilbert(&f, param_u32(p, "max_deg")?),
        JobCommand::Dims => commands::dims(
            &f,
            param_u32(p, "min_deg")?,
            param_u32(p, "max_deg")?,
            param_u32(p, "kmax")?.unwrap_or(crate::DIMS_KMAX),
        ),
        JobCommand::Torsion => {
            let g = brieskorn::polyring::parse_poly(g_text.as_deref().unwrap_or("1"), &ring)?;
            let mode = match param_u32(p, "k")? {
                Some(k) => TorsionMode::Membership(k),
                None => TorsionMode::Order(
                    param_u32(p, "kmax")?.unwrap_or(brieskorn::brieskorn::DEFAULT_KMAX),
                ),
            };
            commands::torsion(&f, &g, mode, None)
        }
    }
}

/// Runs every job; returns results sorted by id and the worst exit status.
pub fn run(jobs: &[Job]) -> (Vec<JobResult>, Exit) {
    let mut results: Vec<(JobResult, Exit)> = jobs
        .par_iter()
        .map(|job| match run_job(job) {
            Ok(out) => (
                JobResult {
                    id: job.id.clone(),
                    command: job.command,
                    exit: out.exit.code(),
                    result: Some(out.json),
                    error: None,
                },
                out.exit,
            ),
            Err(e) => (
                JobResult {
                    id: job.id.clone(),
                    command: job.command,
                    exit: e.exit.code(),
                    result: None,
                    error: Some(e.message),
                },
                e.exit,
            ),
        })
        .collect();
    results.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    let worst = results.iter().map(|r| r.1).max().unwrap_or(Exit::Ok);
    (results.into_iter().map(|r| r.0).collect(), worst)
}
