//! Report files. Everything written here is a pure function of the inputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use uavgrid::channel::EnvironmentKind;
use uavgrid::config::ScenarioFile;
use uavgrid::ingest::HourlyTrace;
use uavgrid::sizing::{GssOutcome, Infeasibility, LoadProfile, SolutionRecord, SweepPoint, SweepRow};
use uavgrid::storage::HorizonOutcome;

pub const REPORT_JSON: &str = "report.json";
pub const RANKED_CSV: &str = "ranked.csv";
pub const BATTERY_CSV: &str = "battery.csv";
pub const SWARM_CSV: &str = "swarm.csv";

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Feasible,
    CoverageInfeasible,
    BudgetInfeasible,
}

#[derive(Serialize)]
struct SizeReport<'a> {
    tool: &'static str,
    version: &'static str,
    status: Status,
    scenario: &'a ScenarioFile,
    notices: &'a [String],
    best: Option<&'a SolutionRecord>,
    ranked: &'a [SolutionRecord],
    candidates: Vec<f64>,
    sweep: &'a [SweepPoint],
}

pub fn env_label(file: &ScenarioFile) -> &'static str {
    match file.channel.environment {
        EnvironmentKind::Suburban => "suburban",
        EnvironmentKind::Urban => "urban",
        EnvironmentKind::Custom => "custom",
    }
}

fn write(path: PathBuf, body: String) -> Result<PathBuf> {
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<PathBuf> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    write(path.to_path_buf(), body)
}

pub fn write_size_json(dir: &Path, file: &ScenarioFile, notices: &[String], outcome: &GssOutcome) -> Result<PathBuf> {
    let status = match outcome.diagnostic {
        None => Status::Feasible,
        Some(Infeasibility::Coverage) => Status::CoverageInfeasible,
        Some(Infeasibility::Budget) => Status::BudgetInfeasible,
    };
    let report = SizeReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        status,
        scenario: file,
        notices,
        best: outcome.best(),
        ranked: &outcome.records,
        candidates: outcome.candidates.iter().map(|&i| outcome.sweep[i].d_max).collect(),
        sweep: &outcome.sweep,
    };
    write_json(&dir.join(REPORT_JSON), &report)
}

const RECORD_COLUMNS: &str =
    "d_max_m,objective_m2_per_eur,total_eur,pv_eur,wind_eur,storage_eur,uav_eur,n_pv,n_w500,n_w1000,n_cell,n_uav";

fn record_fields(r: &SolutionRecord) -> String {
    let c = &r.config;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        c.d_max,
        r.objective,
        c.cost.total,
        c.cost.pv,
        c.cost.wind,
        c.cost.storage,
        c.cost.uav,
        c.counts.n_pv,
        c.counts.n_w500,
        c.counts.n_w1000,
        c.counts.n_cell,
        c.counts.n_uav
    )
}

pub fn write_ranked_csv(dir: &Path, records: &[SolutionRecord]) -> Result<PathBuf> {
    let mut body = format!("rank,{RECORD_COLUMNS},eeac_m2_per_wh\n");
    for (i, r) in records.iter().enumerate() {
        let _ = writeln!(body, "{},{},{}", i + 1, record_fields(r), r.diagnostics.eeac);
    }
    write(dir.join(RANKED_CSV), body)
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<PathBuf> {
    let mut body = String::from(
        "d_max_m,eeac_m2_per_wh,annual_energy_wh,n_uav,candidate,feasible,total_eur,objective_m2_per_eur,n_pv,n_w500,n_w1000,n_cell\n",
    );
    for row in rows {
        let p = &row.point;
        let _ = write!(body, "{},{},{},{},{},", p.d_max, p.eeac, p.annual_energy_wh, p.n_uav, row.candidate);
        match &row.record {
            Some(r) => {
                let c = &r.config.counts;
                let _ = writeln!(
                    body,
                    "true,{},{},{},{},{},{}",
                    r.config.cost.total, r.objective, c.n_pv, c.n_w500, c.n_w1000, c.n_cell
                );
            }
            None => body.push_str("false,,,,,,\n"),
        }
    }
    write(path.to_path_buf(), body)
}

/// Hourly battery trajectory and swarm sizes of the chosen configuration.
pub fn write_diagnostics(
    dir: &Path,
    trace: &HourlyTrace,
    load: &LoadProfile,
    gen: &[f64],
    run: &HorizonOutcome,
) -> Result<Vec<PathBuf>> {
    let mut battery = String::from("hour,time,generation_w,load_wh,state_wh\n");
    let mut swarm = String::from("hour,time,k,energy_wh\n");
    for (h, rec) in trace.records().iter().enumerate() {
        let t = rec.time.format("%Y-%m-%dT%H:%M");
        let _ = writeln!(battery, "{h},{t},{},{},{}", gen[h], load.energy_wh[h], run.trajectory[h]);
        let _ = writeln!(swarm, "{h},{t},{},{}", load.swarm_sizes[h], load.energy_wh[h]);
    }
    Ok(vec![write(dir.join(BATTERY_CSV), battery)?, write(dir.join(SWARM_CSV), swarm)?])
}
