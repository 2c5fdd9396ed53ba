//! Browser bindings for three small views of the model: hover layouts,
//! edge path loss against elevation, and hover power against wind.
//!
//! Every export returns a JSON string, so the same functions run natively
//! in tests.

use serde::Serialize;
use uavgrid::channel::{optimal_elevation, path_loss_db, Environment, LinkModel, RadioParams};
use uavgrid::geometry::{covering_radius, hover_layout};
use uavgrid::uav_power::{counter_wind_speed, horizontal_power, AirframeParams, WindContext};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct LayoutView {
    k: usize,
    d_max: f64,
    cell_radius: f64,
    covering_radius: f64,
    altitude: f64,
    centers: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct LossCurve {
    theta_deg: Vec<f64>,
    loss_db: Vec<f64>,
    theta_star_deg: f64,
    loss_star_db: f64,
}

#[derive(Serialize)]
struct PowerSeries {
    altitude: f64,
    /// `None` where the counter-wind exceeds the airframe's hover limit.
    power_w: Vec<Option<f64>>,
}

#[derive(Serialize)]
struct PowerCurves {
    wind_10m: Vec<f64>,
    series: Vec<PowerSeries>,
    hover_limit: f64,
}

fn environment(name: &str) -> Result<Environment, String> {
    match name {
        "suburban" => Ok(Environment::suburban()),
        "urban" => Ok(Environment::urban()),
        other => Err(format!("unknown environment `{other}`")),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn layout_json(k: usize, d_max: f64, env: &str, a_eff: f64) -> Result<String, String> {
    let l = hover_layout(k, d_max).map_err(|e| e.to_string())?;
    let radio = RadioParams { antenna_efficiency: a_eff, ..RadioParams::default() };
    let link = LinkModel::new(environment(env)?, radio).map_err(|e| e.to_string())?;
    to_json(&LayoutView {
        k,
        d_max,
        cell_radius: l.cell_radius,
        covering_radius: covering_radius(&l.centers, d_max),
        altitude: link.altitude(l.cell_radius),
        centers: l.centers.iter().map(|p| [p.x, p.y]).collect(),
    })
}

pub fn path_loss_json(env: &str, a_eff: f64, cell_radius: f64, samples: usize) -> Result<String, String> {
    let env = environment(env)?;
    if !(cell_radius > 0.0) {
        return Err("cell radius must be positive".into());
    }
    let radio = RadioParams { antenna_efficiency: a_eff, ..RadioParams::default() };
    let loss = |theta: f64| path_loss_db(cell_radius, cell_radius * theta.to_radians().tan(), &env, &radio);
    let n = samples.clamp(2, 10_000);
    let mut curve = LossCurve { theta_deg: Vec::with_capacity(n), loss_db: Vec::with_capacity(n), theta_star_deg: 0.0, loss_star_db: 0.0 };
    for i in 0..n {
        let theta = 0.5 + 88.5 * i as f64 / (n - 1) as f64;
        curve.theta_deg.push(theta);
        curve.loss_db.push(loss(theta).map_err(|e| e.to_string())?);
    }
    let sol = optimal_elevation(&env, a_eff).map_err(|e| e.to_string())?;
    curve.theta_star_deg = sol.theta_star_deg;
    curve.loss_star_db = loss(sol.theta_star_deg).map_err(|e| e.to_string())?;
    to_json(&curve)
}

pub fn hover_power_json(altitudes: &[f64], max_wind: f64, samples: usize) -> Result<String, String> {
    let af = AirframeParams::default();
    let n = samples.clamp(2, 10_000);
    let wind_10m: Vec<f64> = (0..n).map(|i| max_wind * i as f64 / (n - 1) as f64).collect();
    let mut series = Vec::with_capacity(altitudes.len());
    for &altitude in altitudes {
        let mut power_w = Vec::with_capacity(n);
        for &v in &wind_10m {
            let wind = WindContext { speed: v, ..WindContext::default() };
            let airspeed = counter_wind_speed(&wind, altitude.max(1e-9));
            power_w.push(if airspeed > af.max_hover_speed {
                None
            } else {
                Some(horizontal_power(airspeed, altitude, &af).map_err(|e| e.to_string())?)
            });
        }
        series.push(PowerSeries { altitude, power_w });
    }
    to_json(&PowerCurves { wind_10m, series, hover_limit: af.max_hover_speed })
}

/// Hover centres for a `k`-UAV swarm over radius `d_max`, with the cell
/// altitude for the given propagation setting.
#[wasm_bindgen]
pub fn layout(k: usize, d_max: f64, env: &str, a_eff: f64) -> Result<String, JsError> {
    layout_json(k, d_max, env, a_eff).map_err(|e| JsError::new(&e))
}

/// Edge path loss over elevation angle, with the optimal angle marked.
#[wasm_bindgen]
pub fn path_loss_curve(env: &str, a_eff: f64, cell_radius: f64, samples: usize) -> Result<String, JsError> {
    path_loss_json(env, a_eff, cell_radius, samples).map_err(|e| JsError::new(&e))
}

/// Hover power against 10 m wind speed, one series per altitude.
#[wasm_bindgen]
pub fn hover_power_curves(altitudes: Vec<f64>, max_wind: f64, samples: usize) -> Result<String, JsError> {
    hover_power_json(&altitudes, max_wind, samples).map_err(|e| JsError::new(&e))
}
