//! Rotorcraft power and energy model.
//!
//! Each sortie climbs to the hover altitude, cruises to its hover point,
//! hovers against the wind, and returns. Computation runs in seconds and
//! joules; public energies are in Wh.

use serde::{Deserialize, Serialize};

use crate::channel::LinkModel;
use crate::geometry::{self, GeometryError, SwarmLayout};

/// Sea-level air density, kg/m³.
pub const SEA_LEVEL_DENSITY: f64 = 1.225;

/// Altitude at which the barometric density fit reaches zero.
pub const DENSITY_CEILING_M: f64 = 1.0 / 2.2558e-5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PowerError {
    #[error("altitude {0} m outside [0, {DENSITY_CEILING_M:.0}) m")]
    Altitude(f64),
    #[error("transit of {transit_h:.4} h does not fit in a {flight_h} h sortie")]
    InfeasibleFlight { transit_h: f64, flight_h: f64 },
    #[error("hover airspeed {speed:.2} m/s exceeds the {cap} m/s envelope")]
    HoverSpeed { speed: f64, cap: f64 },
    #[error("swarm must contain at least one UAV")]
    EmptySwarm,
    #[error("UAV index {index} outside swarm of {k}")]
    Index { index: usize, k: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Channel(#[from] crate::channel::ChannelError),
}

/// Whether the barometric fit is scaled by sea-level density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityModel {
    /// `1.225·(1 − 2.2558e-5 H)^4.2577` kg/m³.
    #[default]
    Absolute,
    /// The bare fit, equal to 1 at sea level.
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AirframeParams {
    /// Thrust weight, N.
    pub weight_n: f64,
    pub rotors: u32,
    pub tip_speed: f64,
    pub fuselage_area: f64,
    pub drag_coefficient: f64,
    pub rotor_area: f64,
    pub profile_drag: f64,
    pub solidity: f64,
    pub climb_speed: f64,
    pub cruise_speed: f64,
    pub flight_hours: f64,
    /// Airspeed above which a hover hour is infeasible.
    pub max_hover_speed: f64,
    pub density_model: DensityModel,
}

impl Default for AirframeParams {
    fn default() -> Self {
        Self {
            weight_n: 23.84,
            rotors: 4,
            tip_speed: 102.0,
            fuselage_area: 0.038,
            drag_coefficient: 0.9,
            rotor_area: 0.06,
            profile_drag: 0.002,
            solidity: 0.05,
            climb_speed: 10.0,
            cruise_speed: 10.0,
            flight_hours: 0.5,
            max_hover_speed: 30.0,
            density_model: DensityModel::Absolute,
        }
    }
}

/// Wind measured at a reference height and the terrain's power-law exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WindContext {
    pub speed: f64,
    pub reference_height: f64,
    pub roughness: f64,
}

impl Default for WindContext {
    fn default() -> Self {
        Self { speed: 0.0, reference_height: 10.0, roughness: 0.335 }
    }
}

impl WindContext {
    pub fn with_speed(self, speed: f64) -> Self {
        Self { speed, ..self }
    }
}

pub fn air_density(h: f64) -> Result<f64, PowerError> {
    air_density_with(h, DensityModel::Absolute)
}

pub fn air_density_with(h: f64, model: DensityModel) -> Result<f64, PowerError> {
    if !(0.0..DENSITY_CEILING_M).contains(&h) {
        return Err(PowerError::Altitude(h));
    }
    let rel = (1.0 - 2.2558e-5 * h).powf(4.2577);
    Ok(match model {
        DensityModel::Absolute => SEA_LEVEL_DENSITY * rel,
        DensityModel::Relative => rel,
    })
}

/// Airspeed needed to hold position at altitude `h` (wind power law).
pub fn counter_wind_speed(wind: &WindContext, h: f64) -> f64 {
    if wind.speed == 0.0 {
        return 0.0;
    }
    wind.speed * (h / wind.reference_height).powf(wind.roughness)
}

/// Per-rotor blade profile power `P_b`, W.
fn blade_profile_power(rho: f64, af: &AirframeParams) -> f64 {
    af.profile_drag / 8.0 * rho * af.solidity * af.rotor_area * af.tip_speed.powi(3)
}

/// Term-wise breakdown of forward-flight power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizontalPower {
    pub blade: f64,
    pub fuselage: f64,
    pub induced: f64,
}

impl HorizontalPower {
    pub fn total(&self) -> f64 {
        self.blade + self.fuselage + self.induced
    }
}

fn horizontal_terms(v: f64, rho: f64, af: &AirframeParams) -> HorizontalPower {
    let n = af.rotors as f64;
    let w = af.weight_n;
    let blade = n * blade_profile_power(rho, af) * (1.0 + 3.0 * v * v / (af.tip_speed * af.tip_speed));
    let fuselage = 0.5 * af.drag_coefficient * af.fuselage_area * rho * v.powi(3);
    let hover_term = w * w / (4.0 * n * n * rho * rho * af.rotor_area * af.rotor_area);
    let v2 = v * v;
    let induced = w * ((hover_term + v2 * v2 / 4.0).sqrt() - v2 / 2.0).sqrt();
    HorizontalPower { blade, fuselage, induced }
}

/// Power (W) for level flight at airspeed `v` at altitude `h`.
pub fn horizontal_power(v: f64, h: f64, af: &AirframeParams) -> Result<f64, PowerError> {
    horizontal_power_terms(v, h, af).map(|p| p.total())
}

pub fn horizontal_power_terms(v: f64, h: f64, af: &AirframeParams) -> Result<HorizontalPower, PowerError> {
    let rho = air_density_with(h, af.density_model)?;
    Ok(horizontal_terms(v, rho, af))
}

fn vertical_at(vc: f64, rho: f64, af: &AirframeParams) -> f64 {
    let n = af.rotors as f64;
    let w = af.weight_n;
    w / 2.0 * (vc + (vc * vc + 2.0 * w / (n * rho * af.rotor_area)).sqrt()) + n * blade_profile_power(rho, af)
}

/// Power (W) for axial flight at signed rate `vc` (negative = descent).
pub fn vertical_power(vc: f64, h: f64, af: &AirframeParams) -> Result<f64, PowerError> {
    let rho = air_density_with(h, af.density_model)?;
    Ok(vertical_at(vc, rho, af))
}

/// Powers of one sortie profile at a fixed hover altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
struct FlightProfile {
    altitude: f64,
    rho: f64,
    climb_w: f64,
    descent_w: f64,
    cruise_w: f64,
    climb_s: f64,
    flight_s: f64,
}

impl FlightProfile {
    fn new(h: f64, af: &AirframeParams) -> Result<Self, PowerError> {
        let rho = air_density_with(h, af.density_model)?;
        Ok(Self {
            altitude: h,
            rho,
            climb_w: vertical_at(af.climb_speed, rho, af),
            descent_w: vertical_at(-af.climb_speed, rho, af),
            cruise_w: horizontal_terms(af.cruise_speed, rho, af).total(),
            climb_s: h / af.climb_speed,
            flight_s: af.flight_hours * 3600.0,
        })
    }

    fn hover_power(&self, wind: &WindContext, af: &AirframeParams) -> Result<f64, PowerError> {
        let v = counter_wind_speed(wind, self.altitude);
        if v > af.max_hover_speed {
            return Err(PowerError::HoverSpeed { speed: v, cap: af.max_hover_speed });
        }
        Ok(horizontal_terms(v, self.rho, af).total())
    }

    /// Ascent + descent + hover energy of one sortie, Wh.
    fn energy_wh(&self, distance: f64, hover_w: f64, af: &AirframeParams) -> Result<f64, PowerError> {
        let cruise_s = distance / af.cruise_speed;
        let transit_s = 2.0 * (self.climb_s + cruise_s);
        if transit_s >= self.flight_s {
            return Err(PowerError::InfeasibleFlight {
                transit_h: transit_s / 3600.0,
                flight_h: af.flight_hours,
            });
        }
        let ascent = self.climb_w * self.climb_s + self.cruise_w * cruise_s;
        let descent = self.descent_w * self.climb_s + self.cruise_w * cruise_s;
        let hover = hover_w * (self.flight_s - transit_s);
        Ok((ascent + descent + hover) / 3600.0)
    }
}

/// Energy (Wh) of one sortie of UAV `j` (0-based) in `layout` hovering at `h`.
pub fn flight_energy(
    j: usize,
    layout: &SwarmLayout,
    h: f64,
    wind: &WindContext,
    af: &AirframeParams,
) -> Result<f64, PowerError> {
    let distance = *layout.distances.get(j).ok_or(PowerError::Index { index: j, k: layout.k })?;
    let profile = FlightProfile::new(h, af)?;
    let hover_w = profile.hover_power(wind, af)?;
    profile.energy_wh(distance, hover_w, af)
}

/// A swarm of `k` UAVs over radius `d_max`, with altitude and sortie powers
/// resolved so that each hour only needs the wind.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmPlan {
    pub layout: SwarmLayout,
    pub altitude: f64,
    profile: FlightProfile,
    airframe: AirframeParams,
}

impl SwarmPlan {
    pub fn new(k: usize, d_max: f64, link: &LinkModel, af: &AirframeParams) -> Result<Self, PowerError> {
        if k == 0 {
            return Err(PowerError::EmptySwarm);
        }
        let layout = geometry::hover_layout(k, d_max)?;
        let altitude = link.altitude(layout.cell_radius);
        let profile = FlightProfile::new(altitude, af)?;
        let plan = Self { layout, altitude, profile, airframe: *af };
        // Surface transit infeasibility up front; it does not depend on wind.
        for &d in &plan.layout.distances {
            plan.profile.energy_wh(d, 0.0, af)?;
        }
        Ok(plan)
    }

    pub fn k(&self) -> usize {
        self.layout.k
    }

    /// Per-sortie energies of every UAV for one hour's wind.
    pub fn flight_energies(&self, wind: &WindContext) -> Result<Vec<f64>, PowerError> {
        let af = &self.airframe;
        let hover_w = self.profile.hover_power(wind, af)?;
        self.layout
            .distances
            .iter()
            .map(|&d| self.profile.energy_wh(d, hover_w, af))
            .collect()
    }

    /// Swarm energy for one hour, Wh: the sortie energies summed and
    /// divided by the sortie length in hours.
    pub fn hourly_load(&self, wind: &WindContext) -> Result<f64, PowerError> {
        let af = &self.airframe;
        let hover_w = self.profile.hover_power(wind, af)?;
        let mut sum = 0.0;
        for &d in &self.layout.distances {
            sum += self.profile.energy_wh(d, hover_w, af)?;
        }
        Ok(sum / af.flight_hours)
    }
}

/// Hourly swarm load (Wh) for `k` UAVs covering `d_max` with wind `hour_wind`
/// measured at the reference height of `wind`.
pub fn swarm_hourly_load(
    k: usize,
    d_max: f64,
    hour_wind: f64,
    link: &LinkModel,
    af: &AirframeParams,
    wind: &WindContext,
) -> Result<f64, PowerError> {
    SwarmPlan::new(k, d_max, link, af)?.hourly_load(&wind.with_speed(hour_wind))
}
