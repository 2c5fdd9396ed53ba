//! PV array and wind-turbine generation.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::interp;
use crate::money::Eur;

pub const BOLTZMANN: f64 = 1.380649e-23;
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
const KELVIN: f64 = 273.15;

#[derive(Debug, thiserror::Error)]
pub enum HarvestError {
    #[error("turbine curve has no points")]
    EmptyCurve,
    #[error("turbine curve: {0}")]
    Curve(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
}

/// How the maximum-power current scales with irradiance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrradianceScaling {
    /// `I_m ∝ G / G_ST`.
    #[default]
    Proportional,
    /// `I_m ∝ G_ST / G`, kept for comparison runs.
    Inverse,
}

/// Panel datasheet values. Thermal coefficients are in %/°C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PvParams {
    pub alpha_pct: f64,
    pub beta_pct: f64,
    pub cells: u32,
    pub ideality: f64,
    pub v_mp_st: f64,
    pub i_mp_st: f64,
    pub g_st: f64,
    pub g_noc: f64,
    pub t_ambient_noc: f64,
    pub t_cell_noc: f64,
    pub t_ambient_st: f64,
    pub eff_converter: f64,
    pub eff_mppt: f64,
    pub unit_cost: Eur,
    pub irradiance_scaling: IrradianceScaling,
}

impl Default for PvParams {
    fn default() -> Self {
        Self {
            alpha_pct: 0.0474,
            beta_pct: -0.285,
            cells: 60,
            ideality: 1.5,
            v_mp_st: 31.8,
            i_mp_st: 8.85,
            g_st: 1000.0,
            g_noc: 800.0,
            t_ambient_noc: 20.0,
            t_cell_noc: 45.0,
            t_ambient_st: 25.0,
            eff_converter: 0.95,
            eff_mppt: 0.95,
            unit_cost: Eur::from_cents(20_200),
            irradiance_scaling: IrradianceScaling::Proportional,
        }
    }
}

impl PvParams {
    /// Cell temperature at standard test conditions, °C.
    pub fn t_cell_st(&self) -> f64 {
        pv_cell_temperature(self.g_st, self.t_ambient_st, self)
    }
}

/// Linear NOC cell-temperature model, °C.
pub fn pv_cell_temperature(g: f64, t_ambient: f64, pv: &PvParams) -> f64 {
    t_ambient + (pv.t_cell_noc - pv.t_ambient_noc) / pv.g_noc * g
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PvOutput {
    pub power_w: f64,
    /// The raw V·I product went negative and was clamped to zero.
    pub clamped: bool,
}

/// Array output (W) of `n_pv` panels at irradiance `g` and ambient `t_ambient`.
pub fn pv_power(g: f64, t_ambient: f64, n_pv: u32, pv: &PvParams) -> PvOutput {
    if g <= 0.0 || n_pv == 0 {
        return PvOutput { power_w: 0.0, clamped: false };
    }
    let t_cell = pv_cell_temperature(g, t_ambient, pv);
    let dt = t_cell - pv.t_cell_st();
    let v_thermal = pv.cells as f64 * BOLTZMANN * pv.ideality * (t_cell + KELVIN) / ELEMENTARY_CHARGE;
    let v_mp = pv.v_mp_st + pv.beta_pct / 100.0 * pv.v_mp_st * dt + v_thermal * (g / pv.g_st).ln();
    let ratio = match pv.irradiance_scaling {
        IrradianceScaling::Proportional => g / pv.g_st,
        IrradianceScaling::Inverse => pv.g_st / g,
    };
    let i_mp = pv.i_mp_st * ratio + pv.alpha_pct / 100.0 * pv.i_mp_st * dt;
    let per_panel = v_mp * i_mp * pv.eff_converter * pv.eff_mppt;
    if per_panel < 0.0 || v_mp < 0.0 || i_mp < 0.0 {
        return PvOutput { power_w: 0.0, clamped: true };
    }
    PvOutput { power_w: n_pv as f64 * per_panel, clamped: false }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TurbineKind {
    W500,
    W1000,
}

/// Datasheet power curve of one turbine model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurbineCurve {
    pub kind: TurbineKind,
    /// `(wind m/s, power W)`, strictly increasing in wind.
    pub points: Vec<(f64, f64)>,
    pub cut_in: f64,
    pub cut_out: f64,
    pub rated_power: f64,
    pub unit_cost: Eur,
}

impl TurbineCurve {
    pub fn new(
        kind: TurbineKind,
        points: Vec<(f64, f64)>,
        cut_in: f64,
        cut_out: f64,
        rated_power: f64,
        unit_cost: Eur,
    ) -> Result<Self, HarvestError> {
        if points.is_empty() {
            return Err(HarvestError::EmptyCurve);
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(HarvestError::Curve("wind speeds must be strictly increasing".into()));
        }
        if points.iter().any(|&(v, p)| v < 0.0 || p < 0.0 || !p.is_finite()) {
            return Err(HarvestError::Curve("negative or non-finite point".into()));
        }
        if !(cut_in >= 0.0 && cut_out > cut_in && rated_power > 0.0) {
            return Err(HarvestError::Curve("need 0 <= cut_in < cut_out and rated_power > 0".into()));
        }
        if points.iter().any(|&(_, p)| p > 1.1 * rated_power) {
            return Err(HarvestError::Curve("power exceeds 110% of rating".into()));
        }
        Ok(Self { kind, points, cut_in, cut_out, rated_power, unit_cost })
    }

    /// Approximate 500 W small horizontal-axis turbine.
    pub fn default_w500() -> Self {
        let points = vec![
            (3.0, 10.0),
            (4.0, 35.0),
            (5.0, 75.0),
            (6.0, 130.0),
            (7.0, 200.0),
            (8.0, 285.0),
            (9.0, 380.0),
            (10.0, 470.0),
            (11.0, 510.0),
            (12.0, 530.0),
            (13.0, 520.0),
            (14.0, 505.0),
            (16.0, 500.0),
        ];
        Self::new(TurbineKind::W500, points, 3.0, 20.0, 500.0, Eur::from_cents(142_995)).expect("valid default curve")
    }

    /// Approximate 1 kW medium horizontal-axis turbine.
    pub fn default_w1000() -> Self {
        let points = vec![
            (3.0, 15.0),
            (4.0, 55.0),
            (5.0, 125.0),
            (6.0, 220.0),
            (7.0, 345.0),
            (8.0, 490.0),
            (9.0, 650.0),
            (10.0, 810.0),
            (11.0, 940.0),
            (12.0, 1010.0),
            (13.0, 1050.0),
            (14.0, 1040.0),
            (16.0, 1000.0),
        ];
        Self::new(TurbineKind::W1000, points, 3.0, 25.0, 1000.0, Eur::from_cents(273_876)).expect("valid default curve")
    }

    /// Reads `wind_mps,power_w` CSV at `csv` and the keyed sidecar next to it
    /// (same stem, `.meta` extension) holding `cut_in`, `cut_out`,
    /// `rated_power` and `unit_cost_eur`.
    pub fn load(kind: TurbineKind, csv: &Path) -> Result<Self, HarvestError> {
        let meta_path = csv.with_extension("meta");
        let read = |p: &Path| {
            fs::read_to_string(p).map_err(|source| HarvestError::Io { path: p.to_path_buf(), source })
        };
        let csv_text = read(csv)?;
        let meta_text = read(&meta_path)?;
        let points = parse_curve_csv(&csv_text).map_err(|(line, msg)| HarvestError::Parse {
            path: csv.to_path_buf(),
            line,
            msg,
        })?;
        let meta: CurveMeta = toml::from_str(&meta_text).map_err(|e| HarvestError::Parse {
            path: meta_path.clone(),
            line: 0,
            msg: e.to_string(),
        })?;
        Self::new(kind, points, meta.cut_in, meta.cut_out, meta.rated_power, meta.unit_cost_eur)
    }

    /// Writes the curve and its sidecar in the format [`TurbineCurve::load`] reads.
    pub fn save(&self, csv: &Path) -> Result<(), HarvestError> {
        let mut body = String::from("wind_mps,power_w\n");
        for (v, p) in &self.points {
            body.push_str(&format!("{v},{p}\n"));
        }
        let meta = format!(
            "cut_in = {:?}\ncut_out = {:?}\nrated_power = {:?}\nunit_cost_eur = {}\n",
            self.cut_in, self.cut_out, self.rated_power, self.unit_cost
        );
        let write = |p: PathBuf, text: String| {
            fs::write(&p, text).map_err(|source| HarvestError::Io { path: p, source })
        };
        write(csv.to_path_buf(), body)?;
        write(csv.with_extension("meta"), meta)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveMeta {
    cut_in: f64,
    cut_out: f64,
    rated_power: f64,
    unit_cost_eur: Eur,
}

fn parse_curve_csv(text: &str) -> Result<Vec<(f64, f64)>, (usize, String)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == "wind_mps,power_w" => {}
        Some((i, header)) => return Err((i + 1, format!("expected header `wind_mps,power_w`, got `{header}`"))),
        None => return Err((0, "empty file".into())),
    }
    lines
        .map(|(i, line)| {
            let mut cols = line.split(',').map(str::trim);
            let mut num = |name: &str| -> Result<f64, (usize, String)> {
                let raw = cols.next().ok_or((i + 1, format!("missing {name}")))?;
                raw.parse().map_err(|_| (i + 1, format!("bad {name} `{raw}`")))
            };
            let v = num("wind_mps")?;
            let p = num("power_w")?;
            Ok((v, p))
        })
        .collect()
}

/// Output (W) of one turbine at hub wind speed `v`.
pub fn turbine_power(v: f64, curve: &TurbineCurve) -> f64 {
    if v < curve.cut_in || v > curve.cut_out {
        return 0.0;
    }
    interp::linear(&curve.points, v)
}

/// The two turbine models available to the optimiser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurbineSet {
    pub w500: TurbineCurve,
    pub w1000: TurbineCurve,
}

impl Default for TurbineSet {
    fn default() -> Self {
        Self { w500: TurbineCurve::default_w500(), w1000: TurbineCurve::default_w1000() }
    }
}

impl TurbineSet {
    pub fn by_kind(&self) -> BTreeMap<TurbineKind, &TurbineCurve> {
        BTreeMap::from([(TurbineKind::W500, &self.w500), (TurbineKind::W1000, &self.w1000)])
    }
}

/// Combined turbine output (W).
pub fn farm_power(v: f64, n_w500: u32, n_w1000: u32, curves: &TurbineSet) -> f64 {
    n_w500 as f64 * turbine_power(v, &curves.w500) + n_w1000 as f64 * turbine_power(v, &curves.w1000)
}
