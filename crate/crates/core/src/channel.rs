//! Air-to-ground propagation with a downward conical antenna.
//!
//! Angles are in degrees at every public boundary. Path losses are in dB,
//! and the linear conversions happen only when the Shannon rate is formed.

use std::f64::consts::{LN_10, PI};

use serde::{Deserialize, Serialize};

use crate::geometry::{self, GeometryError};

pub const SPEED_OF_LIGHT: f64 = 3e8;

const ROOT_LO_DEG: f64 = 0.1;
const ROOT_HI_DEG: f64 = 89.9;
const ROOT_SCAN_STEP_DEG: f64 = 0.1;
const ROOT_TOL_DEG: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("elevation {0}° outside the valid range")]
    Elevation(f64),
    #[error("path loss undefined at zero horizontal and vertical distance")]
    ZeroDistance,
    #[error("path-loss derivative has no sign change in (0.1°, 89.9°); no interior optimum")]
    NoInteriorOptimum,
    #[error("invalid environment: {0}")]
    Environment(&'static str),
    #[error("invalid radio parameters: {0}")]
    Radio(&'static str),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvironmentKind {
    Suburban,
    Urban,
    Custom,
}

/// S-curve LoS constants and mean excess losses of a propagation setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub a: f64,
    /// Per degree.
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    pub label: EnvironmentKind,
}

impl Environment {
    pub fn suburban() -> Self {
        Self { a: 4.88, b: 0.43, eta_los_db: 0.2, eta_nlos_db: 24.0, label: EnvironmentKind::Suburban }
    }

    pub fn urban() -> Self {
        Self { a: 9.61, b: 0.16, eta_los_db: 1.2, eta_nlos_db: 23.0, label: EnvironmentKind::Urban }
    }

    pub fn of_kind(kind: EnvironmentKind) -> Option<Self> {
        match kind {
            EnvironmentKind::Suburban => Some(Self::suburban()),
            EnvironmentKind::Urban => Some(Self::urban()),
            EnvironmentKind::Custom => None,
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.a > 0.0 && self.b > 0.0) {
            return Err(ChannelError::Environment("a and b must be positive"));
        }
        if !(self.eta_nlos_db >= self.eta_los_db && self.eta_los_db >= 0.0) {
            return Err(ChannelError::Environment("need eta_nlos >= eta_los >= 0"));
        }
        Ok(())
    }
}

/// Link parameters. Units follow the usual datasheet conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RadioParams {
    pub carrier_hz: f64,
    pub bandwidth_hz: f64,
    pub total_bandwidth_hz: f64,
    pub noise_dbm_per_hz: f64,
    pub tx_power_dbm: f64,
    /// How well the antenna fits an ideal conical beam, in (0, 1].
    pub antenna_efficiency: f64,
}

impl Default for RadioParams {
    fn default() -> Self {
        Self {
            carrier_hz: 5.8e9,
            bandwidth_hz: 80e6,
            total_bandwidth_hz: 480e6,
            noise_dbm_per_hz: -174.0,
            tx_power_dbm: 23.0,
            antenna_efficiency: 0.9,
        }
    }
}

impl RadioParams {
    /// `20·log10(4π f_c / c)`.
    pub fn fspl_constant_db(&self) -> f64 {
        20.0 * (4.0 * PI * self.carrier_hz / SPEED_OF_LIGHT).log10()
    }

    /// Three-colour spectrum reuse needs `B_tot >= 3B`.
    pub fn reuse_condition_holds(&self) -> bool {
        self.total_bandwidth_hz >= 3.0 * self.bandwidth_hz
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !(self.carrier_hz > 0.0 && self.bandwidth_hz > 0.0) {
            return Err(ChannelError::Radio("carrier and bandwidth must be positive"));
        }
        if !(self.antenna_efficiency > 0.0 && self.antenna_efficiency <= 1.0) {
            return Err(ChannelError::Radio("antenna efficiency must lie in (0, 1]"));
        }
        if !self.reuse_condition_holds() {
            return Err(ChannelError::Radio("total bandwidth below 3x channel bandwidth"));
        }
        Ok(())
    }
}

/// Optimal cell-edge elevation and the matching altitude/radius ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElevationSolution {
    pub theta_star_deg: f64,
    /// `H / D = tan(θ*)`.
    pub height_ratio: f64,
}

/// LoS probability from the s-curve model; `theta` in degrees.
pub fn los_probability(theta: f64, env: &Environment) -> f64 {
    1.0 / (1.0 + env.a * (-env.b * (theta - env.a)).exp())
}

/// Gain of a conical antenna scaled by its efficiency, in dB.
pub fn antenna_gain_db(theta: f64, a_eff: f64) -> Result<f64, ChannelError> {
    if !(0.0..90.0).contains(&theta) {
        return Err(ChannelError::Elevation(theta));
    }
    Ok(a_eff * 10.0 * (2.0 / (1.0 - (theta * PI / 180.0).sin())).log10())
}

/// Mean path loss in dB between a ground user at horizontal distance `d`
/// and a UAV at altitude `h`.
pub fn path_loss_db(d: f64, h: f64, env: &Environment, radio: &RadioParams) -> Result<f64, ChannelError> {
    if d <= 0.0 && h <= 0.0 {
        return Err(ChannelError::ZeroDistance);
    }
    let theta = h.atan2(d).to_degrees();
    let gain = antenna_gain_db(theta, radio.antenna_efficiency)?;
    let p_los = los_probability(theta, env);
    Ok(p_los * (env.eta_los_db - env.eta_nlos_db)
        + 20.0 * d.hypot(h).log10()
        + radio.fspl_constant_db()
        + env.eta_nlos_db
        - gain)
}

/// Derivative of the cell-edge path loss with respect to the elevation
/// angle (dB per degree) at fixed horizontal distance.
pub fn elevation_residual(theta: f64, env: &Environment, a_eff: f64) -> f64 {
    let rad = theta * PI / 180.0;
    let e = (-env.b * (theta - env.a)).exp();
    let spread = PI * rad.tan() / (9.0 * LN_10);
    let los = env.a * env.b * (env.eta_los_db - env.eta_nlos_db) * e / (env.a * e + 1.0).powi(2);
    let gain = a_eff * PI * rad.cos() / (18.0 * LN_10 * (1.0 - rad.sin()));
    spread + los - gain
}

/// Elevation angle that minimises the cell-edge path loss.
///
/// Scans the residual for sign changes from negative to positive (local
/// minima of the loss) and bisects each; the deepest minimum wins.
pub fn optimal_elevation(env: &Environment, a_eff: f64) -> Result<ElevationSolution, ChannelError> {
    let f = |t: f64| elevation_residual(t, env, a_eff);
    let steps = ((ROOT_HI_DEG - ROOT_LO_DEG) / ROOT_SCAN_STEP_DEG).round() as usize;
    let at = |i: usize| ROOT_LO_DEG + (ROOT_HI_DEG - ROOT_LO_DEG) * i as f64 / steps as f64;

    // Loss relative to its value at D = 1 m, only used to rank minima.
    let edge_loss = |t: f64| {
        let rad = t.to_radians();
        los_probability(t, env) * (env.eta_los_db - env.eta_nlos_db) - 20.0 * rad.cos().log10()
            - a_eff * 10.0 * (2.0 / (1.0 - rad.sin())).log10()
    };

    let mut best: Option<(f64, f64)> = None;
    let mut prev = f(at(0));
    for i in 1..=steps {
        let cur = f(at(i));
        if prev < 0.0 && cur >= 0.0 {
            let theta = bisect(&f, at(i - 1), at(i));
            let loss = edge_loss(theta);
            if best.is_none_or(|(_, l)| loss < l) {
                best = Some((theta, loss));
            }
        }
        prev = cur;
    }
    let (theta, _) = best.ok_or(ChannelError::NoInteriorOptimum)?;
    Ok(ElevationSolution { theta_star_deg: theta, height_ratio: theta.to_radians().tan() })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > ROOT_TOL_DEG {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Return whichever end sits closer to zero.
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// `B·log2(1 + snr)` in bit/s.
pub fn shannon_rate(bandwidth_hz: f64, snr: f64) -> f64 {
    bandwidth_hz * (1.0 + snr).log2()
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Linear SNR at the cell edge for a given path loss.
pub fn edge_snr(path_loss_db: f64, radio: &RadioParams) -> f64 {
    let noise_w = radio.bandwidth_hz * dbm_to_watts(radio.noise_dbm_per_hz);
    let loss = 10f64.powf(path_loss_db / 10.0);
    dbm_to_watts(radio.tx_power_dbm) / (noise_w * loss)
}

/// Rate (bit/s) at the edge of each cell when `k` UAVs cover radius `d_max`.
pub fn edge_rate(k: usize, d_max: f64, env: &Environment, radio: &RadioParams) -> Result<f64, ChannelError> {
    LinkModel::new(*env, *radio)?.edge_rate(k, d_max)
}

/// Environment + radio with the optimal elevation solved once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkModel {
    pub env: Environment,
    pub radio: RadioParams,
    pub elevation: ElevationSolution,
}

impl LinkModel {
    pub fn new(env: Environment, radio: RadioParams) -> Result<Self, ChannelError> {
        let elevation = optimal_elevation(&env, radio.antenna_efficiency)?;
        Ok(Self { env, radio, elevation })
    }

    /// Hover altitude that puts the cell edge at the optimal elevation.
    pub fn altitude(&self, cell_radius: f64) -> f64 {
        cell_radius * self.elevation.height_ratio
    }

    pub fn edge_path_loss_db(&self, cell_radius: f64) -> Result<f64, ChannelError> {
        path_loss_db(cell_radius, self.altitude(cell_radius), &self.env, &self.radio)
    }

    pub fn edge_rate(&self, k: usize, d_max: f64) -> Result<f64, ChannelError> {
        let cell = geometry::packing_radius(k, d_max)?;
        let loss = self.edge_path_loss_db(cell)?;
        Ok(shannon_rate(self.radio.bandwidth_hz, edge_snr(loss, &self.radio)))
    }
}
