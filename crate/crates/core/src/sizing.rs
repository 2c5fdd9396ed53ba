//! Minimum-energy load, the cheapest energy mix for a load, and the sweep
//! over coverage radii that ties them together.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::channel::LinkModel;
use crate::geometry::MAX_SWARM;
use crate::harvest::{pv_power, turbine_power, PvParams, TurbineSet};
use crate::ingest::HourlyTrace;
use crate::money::Eur;
use crate::par;
use crate::storage::{self, ChargerSpec, GroundBattery, HorizonOptions, StorageError};
use crate::uav_power::{AirframeParams, PowerError, SwarmPlan, WindContext};

/// Largest `D count × combinations × (cells + 1)` the exhaustive oracle accepts.
pub const ORACLE_CAP: u128 = 100_000_000;

/// Hard stop for open-ended sweeps.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

/// Tolerance under which two hourly energies count as equal.
const TIE_WH: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SizingError {
    #[error("traffic profile: {0}")]
    Traffic(String),
    #[error("coverage radius {d_max} m: no swarm size meets the rate at hour {hour}")]
    CoverageInfeasible { d_max: f64, hour: usize },
    #[error("no configuration fits the budget of {budget} EUR")]
    BudgetInfeasible { budget: Eur },
    #[error("annual UAV energy must be positive")]
    ZeroEnergy,
    #[error("coverage radius must be positive, got {0}")]
    Radius(f64),
    #[error("invalid sweep: {0}")]
    Sweep(String),
    #[error("oracle grid of {evaluations} evaluations exceeds the cap of {cap}")]
    OracleTooLarge { evaluations: u128, cap: u128 },
    #[error("load covers {load} hours but the trace has {trace}")]
    Horizon { load: usize, trace: usize },
    #[error(transparent)]
    Storage(#[from] StorageError),
}

/// Mean requested data rate per unit area for each hour of the day, Mbps/m²,
/// optionally with the samples behind each mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficProfile {
    lambda: Vec<f64>,
    samples: Option<Vec<Vec<f64>>>,
}

impl TrafficProfile {
    pub fn new(lambda: Vec<f64>, samples: Option<Vec<Vec<f64>>>) -> Result<Self, SizingError> {
        if lambda.len() != 24 {
            return Err(SizingError::Traffic(format!("expected 24 hourly values, got {}", lambda.len())));
        }
        if let Some((h, v)) = lambda.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            return Err(SizingError::Traffic(format!("hour {h}: invalid density {v}")));
        }
        if let Some(s) = &samples {
            if s.len() != 24 {
                return Err(SizingError::Traffic(format!("expected 24 sample sets, got {}", s.len())));
            }
            for (h, set) in s.iter().enumerate() {
                if set.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
                    return Err(SizingError::Traffic(format!("hour {h}: invalid sample")));
                }
            }
        }
        Ok(Self { lambda, samples })
    }

    pub fn flat(value: f64) -> Result<Self, SizingError> {
        Self::new(vec![value; 24], None)
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn samples(&self) -> Option<&[Vec<f64>]> {
        self.samples.as_deref()
    }

    /// Area rate requirement (Mbps) at hour of day `h` over radius `d_max`.
    pub fn required_rate_mbps(&self, h: usize, d_max: f64) -> f64 {
        self.lambda[h % 24] * PI * d_max * d_max
    }
}

/// Unit prices and the total budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PriceTable {
    pub pv_eur: Eur,
    pub w500_eur: Eur,
    pub w1000_eur: Eur,
    pub cell_eur: Eur,
    pub uav_eur: Eur,
    pub budget_eur: Eur,
}

impl Default for PriceTable {
    fn default() -> Self {
        Self {
            pv_eur: Eur::from_cents(20_200),
            w500_eur: Eur::from_cents(142_995),
            w1000_eur: Eur::from_cents(273_876),
            cell_eur: Eur::from_cents(575),
            uav_eur: Eur::from_cents(400_000),
            budget_eur: Eur::from_cents(10_000_000),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub n_pv: u32,
    pub n_w500: u32,
    pub n_w1000: u32,
    pub n_cell: u64,
    pub n_uav: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    pub pv: Eur,
    pub wind: Eur,
    pub storage: Eur,
    pub uav: Eur,
    pub total: Eur,
}

pub fn cost_ledger(counts: &Counts, prices: &PriceTable) -> CostLedger {
    let pv = prices.pv_eur * counts.n_pv as u64;
    let wind = prices.w500_eur * counts.n_w500 as u64 + prices.w1000_eur * counts.n_w1000 as u64;
    let storage = prices.cell_eur * counts.n_cell;
    let uav = prices.uav_eur * counts.n_uav as u64;
    CostLedger { pv, wind, storage, uav, total: pv + wind + storage + uav }
}

/// Optional caps on each count. `None` means "as many as the budget buys".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct CountBounds {
    pub max_pv: Option<u32>,
    pub max_w500: Option<u32>,
    pub max_w1000: Option<u32>,
    pub max_cells: Option<u64>,
}

/// Per-hour swarm sizes and energy for one coverage radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoadProfile {
    pub d_max: f64,
    pub swarm_sizes: Vec<u8>,
    pub energy_wh: Vec<f64>,
    pub n_uav: u32,
}

impl LoadProfile {
    pub fn annual_energy_wh(&self) -> f64 {
        self.energy_wh.iter().sum()
    }

    pub fn uav_cost(&self, prices: &PriceTable) -> Eur {
        prices.uav_eur * self.n_uav as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemConfig {
    pub d_max: f64,
    pub counts: Counts,
    pub cost: CostLedger,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    pub eeac: f64,
    pub annual_energy_wh: f64,
    pub min_reserve_wh: f64,
    /// Hour at which the battery reserve bottoms out.
    pub binding_hour: usize,
    pub budget_slack: Eur,
    pub spare_batteries: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub config: SystemConfig,
    /// Covered square meters per euro.
    pub objective: f64,
    pub diagnostics: Diagnostics,
}

/// Everything a sizing run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub trace: HourlyTrace,
    pub traffic: TrafficProfile,
    pub link: LinkModel,
    pub airframe: AirframeParams,
    pub wind: WindContext,
    pub pv: PvParams,
    pub turbines: TurbineSet,
    pub prices: PriceTable,
    pub charger: ChargerSpec,
    /// Cell template; its count is ignored.
    pub battery: GroundBattery,
    pub bounds: CountBounds,
    pub horizon: HorizonOptions,
}

/// Output of one unit of each generator for every hour, W.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationBasis {
    pub pv: Vec<f64>,
    pub w500: Vec<f64>,
    pub w1000: Vec<f64>,
}

impl GenerationBasis {
    pub fn new(trace: &HourlyTrace, pv: &PvParams, turbines: &TurbineSet) -> Self {
        let rec = trace.records();
        Self {
            pv: rec.iter().map(|r| pv_power(r.irradiance, r.temperature, 1, pv).power_w).collect(),
            w500: rec.iter().map(|r| turbine_power(r.wind, &turbines.w500)).collect(),
            w1000: rec.iter().map(|r| turbine_power(r.wind, &turbines.w1000)).collect(),
        }
    }

    pub fn combined(&self, n_pv: u32, n_w500: u32, n_w1000: u32) -> Vec<f64> {
        let (a, b, c) = (n_pv as f64, n_w500 as f64, n_w1000 as f64);
        (0..self.pv.len()).map(|h| a * self.pv[h] + b * self.w500[h] + c * self.w1000[h]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Combo {
    n_pv: u32,
    n_w500: u32,
    n_w1000: u32,
    cost: Eur,
}

/// Why a run produced no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Infeasibility {
    Coverage,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub d_max: f64,
    pub eeac: f64,
    pub annual_energy_wh: f64,
    pub n_uav: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GssOutcome {
    /// Feasible records, best objective first.
    pub records: Vec<SolutionRecord>,
    pub sweep: Vec<SweepPoint>,
    /// Indices into `sweep` that survived the candidate filters.
    pub candidates: Vec<usize>,
    pub diagnostic: Option<Infeasibility>,
}

impl GssOutcome {
    pub fn best(&self) -> Option<&SolutionRecord> {
        self.records.first()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub point: SweepPoint,
    pub candidate: bool,
    pub record: Option<SolutionRecord>,
}

/// A scenario with its per-unit generation precomputed.
#[derive(Debug, Clone)]
pub struct Sizer<'a> {
    scenario: &'a Scenario,
    basis: GenerationBasis,
}

impl<'a> Sizer<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        let basis = GenerationBasis::new(&scenario.trace, &scenario.pv, &scenario.turbines);
        Self { scenario, basis }
    }

    pub fn scenario(&self) -> &Scenario {
        self.scenario
    }

    pub fn basis(&self) -> &GenerationBasis {
        &self.basis
    }

    /// Per-hour energy of every swarm size at `d_max`; `None` where the size
    /// cannot serve that hour. Indexed `[hour][k - 1]`.
    pub fn swarm_table(&self, d_max: f64) -> Result<Vec<[Option<f64>; MAX_SWARM]>, SizingError> {
        if !(d_max > 0.0) || !d_max.is_finite() {
            return Err(SizingError::Radius(d_max));
        }
        let sc = self.scenario;
        let mut plans = Vec::with_capacity(MAX_SWARM);
        for k in 1..=MAX_SWARM {
            let rate = sc.link.edge_rate(k, d_max).ok().map(|r| r / 1e6);
            let plan = SwarmPlan::new(k, d_max, &sc.link, &sc.airframe).ok();
            plans.push(rate.zip(plan));
        }
        let table = sc
            .trace
            .records()
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                let need = sc.traffic.required_rate_mbps(i % 24, d_max);
                let wind = sc.wind.with_speed(rec.wind);
                let mut row = [None; MAX_SWARM];
                for (slot, entry) in row.iter_mut().zip(&plans) {
                    let Some((rate, plan)) = entry else { continue };
                    if need / plan.k() as f64 > *rate {
                        continue;
                    }
                    *slot = match plan.hourly_load(&wind) {
                        Ok(e) => Some(e),
                        Err(PowerError::HoverSpeed { .. }) => None,
                        Err(_) => None,
                    };
                }
                row
            })
            .collect();
        Ok(table)
    }

    /// Minimum-energy swarm size for every hour of the trace.
    pub fn mel_profile(&self, d_max: f64) -> Result<LoadProfile, SizingError> {
        let table = self.swarm_table(d_max)?;
        let mut swarm_sizes = Vec::with_capacity(table.len());
        let mut energy_wh = Vec::with_capacity(table.len());
        for (hour, row) in table.iter().enumerate() {
            let mut best: Option<(usize, f64)> = None;
            for (idx, e) in row.iter().enumerate() {
                let Some(e) = *e else { continue };
                match best {
                    Some((_, b)) if e >= b - TIE_WH => {}
                    _ => best = Some((idx + 1, e)),
                }
            }
            let (k, e) = best.ok_or(SizingError::CoverageInfeasible { d_max, hour })?;
            swarm_sizes.push(k as u8);
            energy_wh.push(e);
        }
        let n_uav = swarm_sizes.iter().copied().max().unwrap_or(0) as u32 + 1;
        Ok(LoadProfile { d_max, swarm_sizes, energy_wh, n_uav })
    }

    fn combos(&self, remaining: Eur) -> Vec<Combo> {
        let p = &self.scenario.prices;
        let b = &self.scenario.bounds;
        let cap = |bound: Option<u32>, unit: Eur| {
            let afford = remaining.units_affordable(unit).min(u32::MAX as u64) as u32;
            bound.map_or(afford, |m| m.min(afford))
        };
        let (max_pv, max_a, max_b) =
            (cap(b.max_pv, p.pv_eur), cap(b.max_w500, p.w500_eur), cap(b.max_w1000, p.w1000_eur));
        let mut out = Vec::new();
        for n_w1000 in 0..=max_b {
            let cost_b = p.w1000_eur * n_w1000 as u64;
            if cost_b > remaining {
                break;
            }
            for n_w500 in 0..=max_a {
                let cost_ab = cost_b + p.w500_eur * n_w500 as u64;
                if cost_ab > remaining {
                    break;
                }
                let room = (remaining - cost_ab).units_affordable(p.pv_eur).min(max_pv as u64) as u32;
                for n_pv in 0..=room {
                    let cost = cost_ab + p.pv_eur * n_pv as u64;
                    out.push(Combo { n_pv, n_w500, n_w1000, cost });
                }
            }
        }
        out.sort_by_key(|c| (c.cost, c.n_w1000, c.n_w500, c.n_pv));
        out
    }

    fn cells_for(&self, budget_left: Eur) -> u64 {
        let afford = budget_left.units_affordable(self.scenario.prices.cell_eur);
        self.scenario.bounds.max_cells.map_or(afford, |m| m.min(afford))
    }

    fn battery(&self, cells: u64) -> GroundBattery {
        GroundBattery { cells, ..self.scenario.battery }
    }

    fn check_horizon(&self, load: &LoadProfile) -> Result<(), SizingError> {
        let trace = self.scenario.trace.len();
        if load.energy_wh.len() != trace {
            return Err(SizingError::Horizon { load: load.energy_wh.len(), trace });
        }
        Ok(())
    }

    /// Cheapest generation mix plus battery that carries `load` through the
    /// whole trace within the budget.
    pub fn ccee(&self, load: &LoadProfile) -> Result<SystemConfig, SizingError> {
        self.check_horizon(load)?;
        let sc = self.scenario;
        let budget = sc.prices.budget_eur;
        let uav = load.uav_cost(&sc.prices);
        if uav > budget {
            return Err(SizingError::BudgetInfeasible { budget });
        }
        let combos = self.combos(budget - uav);
        let opts = sc.horizon;
        let chunk = chunk_size();
        // Highest total still worth accepting.
        let mut limit = budget;
        let mut best: Option<SystemConfig> = None;
        let mut start = 0;
        'scan: while start < combos.len() {
            let end = (start + chunk).min(combos.len());
            let window = &combos[start..end];
            let lim = limit;
            let verdicts = par::map_ordered(window, |c| {
                if uav + c.cost > lim {
                    return None;
                }
                let cells = self.cells_for(lim - uav - c.cost);
                let gen = self.basis.combined(c.n_pv, c.n_w500, c.n_w1000);
                storage::horizon_feasible(&load.energy_wh, &gen, &self.battery(cells), opts)
                    .then_some((gen, cells))
            });
            for (offset, verdict) in verdicts.into_iter().enumerate() {
                let c = window[offset];
                if uav + c.cost > limit {
                    break 'scan;
                }
                let Some((gen, cells)) = verdict else { continue };
                let n_cell = storage::min_feasible_cells(&load.energy_wh, &gen, &self.battery(0), cells, opts)?;
                let counts = Counts {
                    n_pv: c.n_pv,
                    n_w500: c.n_w500,
                    n_w1000: c.n_w1000,
                    n_cell,
                    n_uav: load.n_uav,
                };
                let cost = cost_ledger(&counts, &sc.prices);
                best = Some(SystemConfig { d_max: load.d_max, counts, cost });
                // Later combinations must be strictly cheaper.
                limit = cost.total - Eur::from_cents(1);
                start += offset + 1;
                continue 'scan;
            }
            start = end;
        }
        best.ok_or(SizingError::BudgetInfeasible { budget })
    }

    /// Wraps a configuration with its objective and battery diagnostics.
    pub fn record(&self, config: SystemConfig, load: &LoadProfile) -> Result<SolutionRecord, SizingError> {
        let sc = self.scenario;
        let c = config.counts;
        let gen = self.basis.combined(c.n_pv, c.n_w500, c.n_w1000);
        let out = storage::simulate_horizon(&load.energy_wh, &gen, &self.battery(c.n_cell), sc.horizon)?;
        let spare = storage::charger_requirements(c.n_uav.max(1), &sc.charger)?.batteries;
        let annual = load.annual_energy_wh();
        Ok(SolutionRecord {
            objective: PI * config.d_max * config.d_max / config.cost.total.euros(),
            diagnostics: Diagnostics {
                eeac: eeac(config.d_max, load)?,
                annual_energy_wh: annual,
                min_reserve_wh: out.min_state,
                binding_hour: out.min_state_hour,
                budget_slack: sc.prices.budget_eur - config.cost.total,
                spare_batteries: spare,
            },
            config,
        })
    }

    fn solve_at(&self, load: &LoadProfile) -> Result<SolutionRecord, SizingError> {
        let config = self.ccee(load)?;
        self.record(config, load)
    }

    /// Radii from `d_lb` in steps of `step` while the minimum-energy load
    /// stays feasible and the radius does not pass `d_ub`.
    pub fn sweep(&self, d_lb: f64, d_ub: f64, step: f64) -> Result<Vec<LoadProfile>, SizingError> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(SizingError::Sweep(format!("step must be positive, got {step}")));
        }
        if !(d_lb >= 0.0) || d_lb.is_infinite() {
            return Err(SizingError::Sweep(format!("lower bound must be finite and non-negative, got {d_lb}")));
        }
        if d_ub < d_lb {
            return Err(SizingError::Sweep(format!("upper bound {d_ub} below lower bound {d_lb}")));
        }
        let first = if d_lb > 0.0 { d_lb } else { step };
        let chunk = chunk_size();
        let mut loads = Vec::new();
        let mut i = 0usize;
        loop {
            let radii: Vec<f64> = (i..i + chunk)
                .map(|j| first + j as f64 * step)
                .take_while(|&d| d <= d_ub * (1.0 + 1e-12) && i < MAX_SWEEP_POINTS)
                .collect();
            if radii.is_empty() {
                return Ok(loads);
            }
            let n = radii.len();
            for result in par::map_ordered(&radii, |&d| self.mel_profile(d)) {
                match result {
                    Ok(load) => loads.push(load),
                    Err(SizingError::CoverageInfeasible { .. }) => return Ok(loads),
                    Err(e) => return Err(e),
                }
            }
            if n < chunk {
                return Ok(loads);
            }
            i += chunk;
        }
    }

    /// Greedy and sparse search over coverage radii.
    pub fn gss_optimize(&self, d_lb: f64, d_ub: f64, step: f64) -> Result<GssOutcome, SizingError> {
        let loads = self.sweep(d_lb, d_ub, step)?;
        let sweep = sweep_points(&loads)?;
        let series: Vec<f64> = sweep.iter().map(|p| p.eeac).collect();
        let candidates = gss_candidates(&series);
        let solved = par::map_ordered(&candidates, |&i| self.solve_at(&loads[i]));
        let mut records = Vec::new();
        for r in solved {
            match r {
                Ok(rec) => records.push(rec),
                Err(SizingError::BudgetInfeasible { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        rank(&mut records);
        let diagnostic = match (records.is_empty(), sweep.is_empty()) {
            (false, _) => None,
            (true, true) => Some(Infeasibility::Coverage),
            (true, false) => Some(Infeasibility::Budget),
        };
        Ok(GssOutcome { records, sweep, candidates, diagnostic })
    }

    /// Solves every radius of the sweep, not only the candidates.
    pub fn sweep_table(&self, d_lb: f64, d_ub: f64, step: f64) -> Result<Vec<SweepRow>, SizingError> {
        let loads = self.sweep(d_lb, d_ub, step)?;
        let points = sweep_points(&loads)?;
        let series: Vec<f64> = points.iter().map(|p| p.eeac).collect();
        let candidates = gss_candidates(&series);
        let solved = par::map_ordered(&loads, |l| self.solve_at(l));
        let mut rows = Vec::with_capacity(points.len());
        for (i, (point, r)) in points.into_iter().zip(solved).enumerate() {
            let record = match r {
                Ok(rec) => Some(rec),
                Err(SizingError::BudgetInfeasible { .. }) => None,
                Err(e) => return Err(e),
            };
            rows.push(SweepRow { point, candidate: candidates.contains(&i), record });
        }
        Ok(rows)
    }

    /// True optimum over `radii` by enumerating every count up to `bounds`.
    /// Battery cells are scanned upwards from zero, so the first feasible
    /// count is the cheapest for its combination.
    pub fn exhaustive_oracle(&self, radii: &[f64], bounds: &CountBounds) -> Result<Option<SolutionRecord>, SizingError> {
        let sc = self.scenario;
        let p = &sc.prices;
        let budget = p.budget_eur;
        let cap = |b: Option<u32>, unit: Eur| b.unwrap_or(budget.units_affordable(unit).min(u32::MAX as u64) as u32);
        let (max_pv, max_a, max_b) = (cap(bounds.max_pv, p.pv_eur), cap(bounds.max_w500, p.w500_eur), cap(bounds.max_w1000, p.w1000_eur));
        let max_cells = bounds.max_cells.unwrap_or(budget.units_affordable(p.cell_eur));
        let evaluations = radii.len() as u128
            * (max_pv as u128 + 1)
            * (max_a as u128 + 1)
            * (max_b as u128 + 1)
            * (max_cells as u128 + 1);
        if evaluations > ORACLE_CAP {
            return Err(SizingError::OracleTooLarge { evaluations, cap: ORACLE_CAP });
        }
        let mut combos = Vec::new();
        for n_w1000 in 0..=max_b {
            for n_w500 in 0..=max_a {
                for n_pv in 0..=max_pv {
                    combos.push((n_pv, n_w500, n_w1000));
                }
            }
        }
        let opts = sc.horizon;
        let mut best: Option<SolutionRecord> = None;
        for &d in radii {
            let load = match self.mel_profile(d) {
                Ok(l) => l,
                Err(SizingError::CoverageInfeasible { .. }) => continue,
                Err(e) => return Err(e),
            };
            let found = par::map_ordered(&combos, |&(n_pv, n_w500, n_w1000)| {
                let gen = self.basis.combined(n_pv, n_w500, n_w1000);
                let n_cell = (0..=max_cells)
                    .find(|&n| storage::horizon_feasible(&load.energy_wh, &gen, &self.battery(n), opts))?;
                let counts = Counts { n_pv, n_w500, n_w1000, n_cell, n_uav: load.n_uav };
                let cost = cost_ledger(&counts, p);
                (cost.total <= budget).then_some(SystemConfig { d_max: d, counts, cost })
            });
            for config in found.into_iter().flatten() {
                let objective = PI * d * d / config.cost.total.euros();
                if best.as_ref().is_none_or(|b| objective > b.objective) {
                    best = Some(self.record(config, &load)?);
                }
            }
        }
        Ok(best)
    }
}

fn chunk_size() -> usize {
    #[cfg(feature = "parallel")]
    {
        (rayon::current_num_threads() * 4).max(8)
    }
    #[cfg(not(feature = "parallel"))]
    {
        8
    }
}

fn sweep_points(loads: &[LoadProfile]) -> Result<Vec<SweepPoint>, SizingError> {
    loads
        .iter()
        .map(|l| {
            Ok(SweepPoint {
                d_max: l.d_max,
                eeac: eeac(l.d_max, l)?,
                annual_energy_wh: l.annual_energy_wh(),
                n_uav: l.n_uav,
            })
        })
        .collect()
}

/// Best objective first; equal objectives keep the smaller radius first.
fn rank(records: &mut [SolutionRecord]) {
    records.sort_by(|a, b| {
        b.objective.total_cmp(&a.objective).then(a.config.d_max.total_cmp(&b.config.d_max))
    });
}

/// Covered area per Wh of annual UAV energy, m²/Wh.
pub fn eeac(d_max: f64, load: &LoadProfile) -> Result<f64, SizingError> {
    let total = load.annual_energy_wh();
    if !(total > 0.0) {
        return Err(SizingError::ZeroEnergy);
    }
    Ok(PI * d_max * d_max / total)
}

/// Indices of sweep samples worth a full solve: new running maxima whose
/// discrete second difference (taken along the maxima) is positive. With
/// fewer than three maxima, or no convex point among them, all maxima are
/// returned.
pub fn gss_candidates(series: &[f64]) -> Vec<usize> {
    let mut mono = Vec::new();
    let mut running = f64::NEG_INFINITY;
    for (i, &v) in series.iter().enumerate() {
        if v > running {
            mono.push(i);
            running = v;
        }
    }
    if mono.len() < 3 {
        return mono;
    }
    let convex: Vec<usize> = mono
        .windows(3)
        .filter(|w| {
            let (x0, x1, x2) = (w[0] as f64, w[1] as f64, w[2] as f64);
            let (y0, y1, y2) = (series[w[0]], series[w[1]], series[w[2]]);
            (y2 - y1) / (x2 - x1) - (y1 - y0) / (x1 - x0) > 0.0
        })
        .map(|w| w[1])
        .collect();
    if convex.is_empty() {
        mono
    } else {
        convex
    }
}

pub fn mel_profile(d_max: f64, scenario: &Scenario) -> Result<LoadProfile, SizingError> {
    Sizer::new(scenario).mel_profile(d_max)
}

pub fn ccee(load: &LoadProfile, scenario: &Scenario) -> Result<SystemConfig, SizingError> {
    Sizer::new(scenario).ccee(load)
}

pub fn gss_optimize(scenario: &Scenario, d_lb: f64, d_ub: f64, step: f64) -> Result<GssOutcome, SizingError> {
    Sizer::new(scenario).gss_optimize(d_lb, d_ub, step)
}

pub fn exhaustive_oracle(
    scenario: &Scenario,
    radii: &[f64],
    bounds: &CountBounds,
) -> Result<Option<SolutionRecord>, SizingError> {
    Sizer::new(scenario).exhaustive_oracle(radii, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_prices() {
        let prices = PriceTable::default();
        let l = cost_ledger(&Counts { n_pv: 3, n_cell: 1000, n_uav: 2, ..Counts::default() }, &prices);
        assert_eq!(l.pv.cents(), 60_600);
        assert_eq!(l.storage.cents(), 575_000);
        assert_eq!(l.uav.cents(), 800_000);
        assert_eq!(l.total.cents(), 60_600 + 575_000 + 800_000);
        let l = cost_ledger(&Counts { n_w500: 1, n_w1000: 1, ..Counts::default() }, &prices);
        assert_eq!(l.wind.cents(), 142_995 + 273_876);
    }

    #[test]
    fn candidate_filters() {
        assert_eq!(gss_candidates(&[1.0, 2.0, 4.0, 5.0]), vec![1]);
        assert_eq!(gss_candidates(&[1.0, 2.0, 4.0, 8.0, 16.0]), vec![1, 2, 3]);
        assert_eq!(gss_candidates(&[3.0, 3.0, 3.0]), vec![0]);
        // Dips are skipped by the running-maximum filter.
        assert_eq!(gss_candidates(&[1.0, 0.5, 2.0, 4.0, 3.0, 8.0]), vec![2]);
        // Concave rise: fallback to the maxima.
        assert_eq!(gss_candidates(&[1.0, 3.0, 4.0]), vec![0, 1, 2]);
    }

    #[test]
    fn traffic_validation() {
        assert!(TrafficProfile::new(vec![1.0; 23], None).is_err());
        assert!(TrafficProfile::new(vec![-1.0; 24], None).is_err());
        let t = TrafficProfile::flat(2e-5).unwrap();
        assert_eq!(t.required_rate_mbps(25, 1000.0), 2e-5 * PI * 1e6);
    }

    #[test]
    fn eeac_arithmetic() {
        let load = LoadProfile { d_max: 1000.0, swarm_sizes: vec![1; 2], energy_wh: vec![5e5; 2], n_uav: 2 };
        assert_eq!(eeac(1000.0, &load).unwrap(), PI);
        assert_eq!(eeac(2000.0, &load).unwrap(), 4.0 * PI);
        let zero = LoadProfile { energy_wh: vec![0.0; 2], ..load };
        assert_eq!(eeac(1.0, &zero), Err(SizingError::ZeroEnergy));
    }
}
