use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use uavgrid::config::{ConfigError, Resolved, ScenarioFile};
use uavgrid::harvest::{HarvestError, TurbineCurve, TurbineKind};
use uavgrid::ingest::{self, IngestError};
use uavgrid::sizing::{Infeasibility, SizingError, Sizer};
use uavgrid::storage;
use uavgrid::uav_power::SwarmPlan;
use uavgrid::channel::LinkModel;
use uavgrid::geometry::MAX_SWARM;

use crate::report;
use crate::{exit, Format, RunArgs};

/// Input-side failure: bad scenario, unreadable or malformed data.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

pub fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<InputError>() || cause.is::<ConfigError>() || cause.is::<IngestError>() || cause.is::<HarvestError>() {
            return exit::INPUT;
        }
        if let Some(e) = cause.downcast_ref::<SizingError>() {
            return match e {
                SizingError::CoverageInfeasible { .. } => exit::COVERAGE_INFEASIBLE,
                SizingError::BudgetInfeasible { .. } => exit::BUDGET_INFEASIBLE,
                SizingError::Sweep(_) | SizingError::Radius(_) | SizingError::Traffic(_) => exit::INPUT,
                _ => exit::INTERNAL,
            };
        }
    }
    exit::INTERNAL
}

fn load_file(args: &RunArgs) -> Result<ScenarioFile> {
    let mut file = ScenarioFile::load(&args.scenario)
        .with_context(|| format!("reading scenario {}", args.scenario.display()))?;
    file.apply(&args.overrides());
    Ok(file)
}

fn resolve(args: &RunArgs) -> Result<(ScenarioFile, Resolved)> {
    let file = load_file(args)?;
    let resolved = file.resolve().with_context(|| format!("resolving scenario {}", args.scenario.display()))?;
    for n in &resolved.notices {
        log::warn!("{n}");
    }
    Ok((file, resolved))
}

fn out_dir(args: &RunArgs) -> Result<&Path> {
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    Ok(&args.out)
}

fn status_code(diagnostic: Option<Infeasibility>) -> u8 {
    match diagnostic {
        None => exit::FEASIBLE,
        Some(Infeasibility::Coverage) => exit::COVERAGE_INFEASIBLE,
        Some(Infeasibility::Budget) => exit::BUDGET_INFEASIBLE,
    }
}

fn search_range(file: &ScenarioFile) -> (f64, f64, f64) {
    let s = &file.search;
    (s.d_lb, s.d_ub.unwrap_or(f64::INFINITY), s.step)
}

pub fn size(args: &RunArgs) -> Result<u8> {
    let (file, resolved) = resolve(args)?;
    let sizer = Sizer::new(&resolved.scenario);
    let (d_lb, d_ub, step) = search_range(&file);
    let outcome = sizer.gss_optimize(d_lb, d_ub, step)?;
    let out = out_dir(args)?;
    let written = match args.format.unwrap_or(Format::Json) {
        Format::Json => report::write_size_json(out, &file, &resolved.notices, &outcome)?,
        Format::Csv => report::write_ranked_csv(out, &outcome.records)?,
    };
    let mut files = vec![written];
    match outcome.best() {
        Some(best) => {
            let load = sizer.mel_profile(best.config.d_max)?;
            let c = best.config.counts;
            let gen = sizer.basis().combined(c.n_pv, c.n_w500, c.n_w1000);
            let battery = uavgrid::storage::GroundBattery { cells: c.n_cell, ..resolved.scenario.battery };
            let run = storage::simulate_horizon(&load.energy_wh, &gen, &battery, resolved.scenario.horizon)?;
            files.extend(report::write_diagnostics(out, &resolved.scenario.trace, &load, &gen, &run)?);
            println!(
                "best: D_max = {} m, F = {} EUR, objective = {:.6} m²/EUR ({} PV, {} W500, {} W1000, {} cells, {} UAVs)",
                best.config.d_max,
                best.config.cost.total,
                best.objective,
                c.n_pv,
                c.n_w500,
                c.n_w1000,
                c.n_cell,
                c.n_uav
            );
        }
        None => eprintln!("no feasible configuration: {}", describe(outcome.diagnostic)),
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(status_code(outcome.diagnostic))
}

fn describe(d: Option<Infeasibility>) -> &'static str {
    match d {
        Some(Infeasibility::Coverage) => "no radius in range meets the rate requirement (coverage-infeasible)",
        Some(Infeasibility::Budget) => "no candidate fits the budget (budget-infeasible)",
        None => "feasible",
    }
}

pub fn sweep(args: &RunArgs) -> Result<u8> {
    let (file, resolved) = resolve(args)?;
    let sizer = Sizer::new(&resolved.scenario);
    let (d_lb, d_ub, step) = search_range(&file);
    let rows = sizer.sweep_table(d_lb, d_ub, step)?;
    let out = out_dir(args)?;
    let stem = format!("sweep-{}-aeff{}", report::env_label(&file), file.channel.a_eff);
    let path = match args.format.unwrap_or(Format::Csv) {
        Format::Csv => report::write_sweep_csv(&out.join(format!("{stem}.csv")), &rows)?,
        Format::Json => report::write_json(&out.join(format!("{stem}.json")), &rows)?,
    };
    println!("wrote {}", path.display());
    let diagnostic = if rows.iter().any(|r| r.record.is_some()) {
        None
    } else if rows.is_empty() {
        Some(Infeasibility::Coverage)
    } else {
        Some(Infeasibility::Budget)
    };
    if diagnostic.is_some() {
        eprintln!("no feasible configuration: {}", describe(diagnostic));
    }
    Ok(status_code(diagnostic))
}

/// Always succeeds; problems are printed as findings.
pub fn validate(args: &RunArgs) -> Result<u8> {
    let file = match load_file(args) {
        Ok(f) => f,
        Err(e) => {
            println!("finding: {e:#}");
            return Ok(exit::FEASIBLE);
        }
    };
    println!("# resolved parameters");
    print!("{}", file.to_toml());
    println!();
    let findings = findings(&file);
    if findings.is_empty() {
        println!("ok");
    } else {
        for f in &findings {
            println!("finding: {f}");
        }
    }
    Ok(exit::FEASIBLE)
}

fn check_path(label: &str, path: Option<&PathBuf>, required: bool, out: &mut Vec<String>) -> bool {
    match path {
        None if required => {
            out.push(format!("{label}: not set"));
            false
        }
        None => false,
        Some(p) if !p.exists() => {
            out.push(format!("{label}: file not found: {}", p.display()));
            false
        }
        Some(_) => true,
    }
}

fn findings(file: &ScenarioFile) -> Vec<String> {
    let mut out: Vec<String> = file.check_ranges().iter().map(ToString::to_string).collect();
    let inputs = &file.inputs;
    let mut trace = None;
    if check_path("inputs.weather", inputs.weather.as_ref(), true, &mut out) {
        match ingest::parse_weather_csv_with(inputs.weather.as_ref().expect("checked"), &inputs.columns) {
            Ok(w) => {
                out.extend(w.notices.into_iter().map(|n| format!("inputs.weather: {n}")));
                trace = Some(w.trace);
            }
            Err(e) => out.push(e.to_string()),
        }
    }
    if check_path("inputs.traffic", inputs.traffic.as_ref(), true, &mut out) {
        match ingest::load_traffic_profile(inputs.traffic.as_ref().expect("checked")) {
            Ok(t) => {
                if let Some(level) = file.search.provision_level {
                    let scale = file.traffic.scale.clone().map(|knots| ingest::ScaleModel { knots });
                    if let Err(e) = ingest::provision_quantile(&t, level, scale.as_ref()) {
                        out.push(e.to_string());
                    }
                }
            }
            Err(e) => out.push(e.to_string()),
        }
    }
    for (label, kind, path) in [
        ("inputs.w500_curve", TurbineKind::W500, &inputs.w500_curve),
        ("inputs.w1000_curve", TurbineKind::W1000, &inputs.w1000_curve),
    ] {
        if check_path(label, path.as_ref(), false, &mut out) {
            if let Err(e) = TurbineCurve::load(kind, path.as_ref().expect("checked")) {
                out.push(e.to_string());
            }
        }
    }
    if let (Some(trace), Ok(env)) = (trace, file.environment()) {
        let mut radio = file.radio;
        radio.antenna_efficiency = file.channel.a_eff;
        if let Ok(link) = LinkModel::new(env, radio) {
            out.extend(battery_margin(file, &trace, &link));
        }
    }
    out
}

/// Flags swarm sizes whose worst sortie eats into the on-board battery margin.
fn battery_margin(file: &ScenarioFile, trace: &ingest::HourlyTrace, link: &LinkModel) -> Vec<String> {
    let s = &file.search;
    let d = match s.d_ub {
        Some(ub) if ub > 0.0 => ub,
        _ => s.d_lb.max(s.step),
    };
    let limit = 0.9 * file.charger.battery_wh;
    let mut out = Vec::new();
    for k in 1..=MAX_SWARM {
        let Ok(plan) = SwarmPlan::new(k, d, link, &file.airframe) else { continue };
        let worst = trace
            .records()
            .iter()
            .filter_map(|r| plan.flight_energies(&file.wind.with_speed(r.wind)).ok())
            .flatten()
            .fold(0.0f64, f64::max);
        if worst > limit {
            out.push(format!(
                "charger.battery_wh: k = {k} at D = {d} m needs up to {worst:.1} Wh per sortie, above 90% of {} Wh",
                file.charger.battery_wh
            ));
        }
    }
    out
}
