use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::{ExperimentOutcome, RunnerError};
use crate::evaluation::LandscapeSnapshot;
use crate::indicators::Statistics;

/// Paths of everything [`write_outputs`] produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub results_csv: PathBuf,
    pub summary_json: PathBuf,
    /// Running-mean offline error and current error series.
    pub series: Option<(PathBuf, PathBuf)>,
    pub frames: Option<PathBuf>,
    pub landscapes: Option<PathBuf>,
    pub grids: Vec<PathBuf>,
}

impl OutputFiles {
    pub fn all(&self) -> Vec<&Path> {
        let mut out = vec![self.results_csv.as_path(), self.summary_json.as_path()];
        if let Some((a, b)) = &self.series {
            out.push(a);
            out.push(b);
        }
        out.extend(self.frames.as_deref());
        out.extend(self.landscapes.as_deref());
        out.extend(self.grids.iter().map(PathBuf::as_path));
        out
    }
}

pub fn utc_timestamp() -> String {
    chrono::Utc::now().format("%Y%m%dT%H%M%SZ").to_string()
}

/// Write the results table, the JSON summary and, when requested, the error
/// series and the education dump into the configured output directory
/// (the working directory when none is set).
pub fn write_outputs(outcome: &ExperimentOutcome) -> Result<OutputFiles, RunnerError> {
    let config = &outcome.config;
    let dir = config
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| RunnerError::io(&dir, e))?;
    let timestamp = config.timestamp.clone().unwrap_or_else(utc_timestamp);
    let stem = format!(
        "{}_{}_{}",
        config.edoa.algorithm,
        config.problem.benchmark.name(),
        timestamp
    );
    let file = |suffix: &str| dir.join(format!("{stem}{suffix}"));

    let series = if config.emit_error_series {
        let s = &outcome.summary;
        let offline = file("_offline_error.csv");
        let current = file("_current_error.csv");
        write(
            &offline,
            &series_csv("offline_error", &s.offline_error_series),
        )?;
        write(
            &current,
            &series_csv("current_error", &s.current_error_series),
        )?;
        Some((offline, current))
    } else {
        None
    };

    let mut frames = None;
    let mut landscapes = None;
    let mut grids = Vec::new();
    if let Some(rec) = &outcome.education {
        let path = file("_frames.jsonl");
        let mut body = String::new();
        for frame in &rec.frames {
            body.push_str(&serde_json::to_string(frame).expect("frames serialize"));
            body.push('\n');
        }
        write(&path, &body)?;
        frames = Some(path);

        for snap in &rec.snapshots {
            let path = file(&format!("_grid_env{:03}.csv", snap.env));
            write(&path, &format_grid(snap))?;
            grids.push(path);
        }
        let meta: Vec<Value> = rec
            .snapshots
            .iter()
            .map(|s| {
                json!({
                    "env": s.env,
                    "visible_centers": s.visible_centers,
                    "optimum_position": s.optimum_position,
                })
            })
            .collect();
        let path = file("_landscapes.json");
        write(&path, &pretty(&Value::Array(meta)))?;
        landscapes = Some(path);
    }

    let results_csv = file(".csv");
    write(&results_csv, &results_table(outcome))?;
    let summary_json = file(".json");
    let name = |p: &Option<PathBuf>| {
        p.as_ref()
            .and_then(|p| p.file_name())
            .map(|n| n.to_string_lossy().into_owned())
    };
    let files = json!({
        "offline_error_series": name(&series.as_ref().map(|s| s.0.clone())),
        "current_error_series": name(&series.as_ref().map(|s| s.1.clone())),
        "frames": name(&frames),
        "landscapes": name(&landscapes),
        "grids": grids.iter().map(|g| name(&Some(g.clone()))).collect::<Vec<_>>(),
    });
    write(&summary_json, &pretty(&summary_value(outcome, files)))?;

    Ok(OutputFiles {
        results_csv,
        summary_json,
        series,
        frames,
        landscapes,
        grids,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), RunnerError> {
    fs::write(path, contents).map_err(|e| RunnerError::io(path, e))
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn results_table(outcome: &ExperimentOutcome) -> String {
    let s = &outcome.summary;
    let mut out = String::from("run,offline_error,e_bbc\n");
    for r in &s.runs {
        let _ = writeln!(out, "{},{},{}", r.run_index, r.offline_error, r.e_bbc);
    }
    let (eo, eb) = (s.offline_error, s.e_bbc);
    let _ = writeln!(out, "mean,{},{}", eo.mean, eb.mean);
    let _ = writeln!(out, "median,{},{}", eo.median, eb.median);
    let _ = writeln!(
        out,
        "standard_error,{},{}",
        eo.standard_error, eb.standard_error
    );
    out.push_str("\nparameter,value\n");
    for (key, value) in config_entries(outcome) {
        let _ = writeln!(out, "{key},{value}");
    }
    out
}

/// The configuration as flat `key,value` pairs, nested fields dotted.
fn config_entries(outcome: &ExperimentOutcome) -> Vec<(String, String)> {
    fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
        match value {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    flatten(&key, v, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    flatten("", &config_value(outcome), &mut out);
    out
}

fn config_value(outcome: &ExperimentOutcome) -> Value {
    let mut value = serde_json::to_value(&outcome.config).expect("config serializes");
    if let Value::Object(map) = &mut value {
        map.insert("benchmark_seed".into(), json!(outcome.benchmark_seed));
        map.insert("runs_executed".into(), json!(outcome.summary.runs.len()));
    }
    value
}

fn stats_value(s: &Statistics) -> Value {
    json!({ "mean": s.mean, "median": s.median, "standard_error": s.standard_error })
}

fn summary_value(outcome: &ExperimentOutcome, files: Value) -> Value {
    let s = &outcome.summary;
    let per_run: Vec<Value> = s
        .runs
        .iter()
        .map(|r| json!({ "run": r.run_index, "offline_error": r.offline_error, "e_bbc": r.e_bbc }))
        .collect();
    let mut map = Map::new();
    map.insert("config".into(), config_value(outcome));
    map.insert(
        "sequence_fingerprint".into(),
        json!(outcome.sequence_fingerprint),
    );
    map.insert("per_run".into(), Value::Array(per_run));
    map.insert(
        "statistics".into(),
        json!({
            "offline_error": stats_value(&s.offline_error),
            "e_bbc": stats_value(&s.e_bbc),
        }),
    );
    map.insert("files".into(), files);
    Value::Object(map)
}

fn series_csv(column: &str, values: &[f64]) -> String {
    let mut out = format!("fe,{column}\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{},{v}", i + 1);
    }
    out
}

/// Grid file layout: a header line naming the metadata fields, the metadata
/// values, then one line per grid row.
pub fn format_grid(snapshot: &LandscapeSnapshot) -> String {
    let mut out = String::from("env,resolution,lo,hi\n");
    let _ = writeln!(
        out,
        "{},{},{},{}",
        snapshot.env, snapshot.resolution, snapshot.lo, snapshot.hi
    );
    for row in snapshot.values.chunks(snapshot.resolution.max(1)) {
        let line: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
