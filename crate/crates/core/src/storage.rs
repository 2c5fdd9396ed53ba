//! Battery-swap charger bookkeeping and the hourly ground-battery simulation.

use serde::{Deserialize, Serialize};

use crate::money::Eur;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StorageError {
    #[error("charger power must be positive, got {0} W")]
    ChargerPower(f64),
    #[error("fleet must contain at least one UAV")]
    EmptyFleet,
    #[error("load has {load} hours but generation has {generation}")]
    LengthMismatch { load: usize, generation: usize },
    #[error("infeasible even with {0} cells")]
    InfeasibleAtMax(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargerSpec {
    pub charge_power_w: f64,
    pub battery_wh: f64,
    pub flight_hours: f64,
}

impl Default for ChargerSpec {
    fn default() -> Self {
        Self { charge_power_w: 180.0, battery_wh: 180.0, flight_hours: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargerPlan {
    pub charge_hours: f64,
    /// Hot-swappable batteries the fleet needs.
    pub batteries: u64,
}

pub fn charger_requirements(n_uav: u32, spec: &ChargerSpec) -> Result<ChargerPlan, StorageError> {
    if !(spec.charge_power_w > 0.0) {
        return Err(StorageError::ChargerPower(spec.charge_power_w));
    }
    if n_uav == 0 {
        return Err(StorageError::EmptyFleet);
    }
    let charge_hours = spec.battery_wh / spec.charge_power_w;
    let raw = n_uav as f64 * (charge_hours / spec.flight_hours + 1.0);
    // Products like 3 × 3.0000000000000004 must not round up.
    let batteries = (raw - 1e-9).ceil() as u64;
    Ok(ChargerPlan { charge_hours, batteries })
}

/// Ground battery built from identical cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundBattery {
    pub cells: u64,
    pub cell_wh: f64,
    pub cell_cost: Eur,
    pub eff_conversion: f64,
}

impl GroundBattery {
    pub fn with_cells(cells: u64) -> Self {
        Self { cells, ..Self::default() }
    }

    pub fn capacity_wh(&self) -> f64 {
        self.cells as f64 * self.cell_wh
    }
}

impl Default for GroundBattery {
    fn default() -> Self {
        Self { cells: 0, cell_wh: 12.6, cell_cost: Eur::from_cents(575), eff_conversion: 0.95 }
    }
}

/// One-hour update: charging is derated by the conversion efficiency,
/// discharging inflated by its inverse. Capped at capacity, not floored.
pub fn battery_step(state: f64, net_wh: f64, battery: &GroundBattery) -> f64 {
    let eff = if net_wh >= 0.0 { battery.eff_conversion } else { 1.0 / battery.eff_conversion };
    battery.capacity_wh().min(state + eff * net_wh)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HorizonOptions {
    /// Also require the final state to be at least the initial (full) state.
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HorizonOutcome {
    pub feasible: bool,
    pub min_state: f64,
    pub min_state_hour: usize,
    /// First hour whose end state went negative.
    pub first_violation: Option<usize>,
    /// State at the end of each hour.
    pub trajectory: Vec<f64>,
}

fn check_lengths(load: &[f64], gen: &[f64]) -> Result<(), StorageError> {
    if load.len() != gen.len() {
        return Err(StorageError::LengthMismatch { load: load.len(), generation: gen.len() });
    }
    Ok(())
}

/// Steps the battery through every hour starting full.
/// `load` is Wh per hour, `gen` is average W over each hour.
pub fn simulate_horizon(
    load: &[f64],
    gen: &[f64],
    battery: &GroundBattery,
    opts: HorizonOptions,
) -> Result<HorizonOutcome, StorageError> {
    check_lengths(load, gen)?;
    let start = battery.capacity_wh();
    let mut state = start;
    let mut trajectory = Vec::with_capacity(load.len());
    let mut min_state = f64::INFINITY;
    let mut min_state_hour = 0;
    let mut first_violation = None;
    for (hour, (&l, &g)) in load.iter().zip(gen).enumerate() {
        state = battery_step(state, g - l, battery);
        if state < 0.0 && first_violation.is_none() {
            first_violation = Some(hour);
        }
        if state < min_state {
            min_state = state;
            min_state_hour = hour;
        }
        trajectory.push(state);
    }
    if trajectory.is_empty() {
        min_state = start;
    }
    let feasible = first_violation.is_none() && (!opts.cyclic || state >= start);
    Ok(HorizonOutcome { feasible, min_state, min_state_hour, first_violation, trajectory })
}

/// Same verdict as [`simulate_horizon`] without recording the trajectory;
/// stops at the first negative state.
pub fn horizon_feasible(load: &[f64], gen: &[f64], battery: &GroundBattery, opts: HorizonOptions) -> bool {
    if load.len() != gen.len() {
        return false;
    }
    let start = battery.capacity_wh();
    let mut state = start;
    for (&l, &g) in load.iter().zip(gen) {
        state = battery_step(state, g - l, battery);
        if state < 0.0 {
            return false;
        }
    }
    !opts.cyclic || state >= start
}

/// Fewest cells in `[0, max_cells]` that keep the battery non-negative.
/// Relies on feasibility being monotone in the cell count.
pub fn min_feasible_cells(
    load: &[f64],
    gen: &[f64],
    template: &GroundBattery,
    max_cells: u64,
    opts: HorizonOptions,
) -> Result<u64, StorageError> {
    check_lengths(load, gen)?;
    let ok = |cells: u64| {
        horizon_feasible(load, gen, &GroundBattery { cells, ..*template }, opts)
    };
    if !ok(max_cells) {
        return Err(StorageError::InfeasibleAtMax(max_cells));
    }
    let (mut lo, mut hi) = (0u64, max_cells);
    if ok(lo) {
        return Ok(0);
    }
    // Invariant: lo infeasible, hi feasible.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
