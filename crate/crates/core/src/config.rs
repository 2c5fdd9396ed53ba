//! Scenario files: a sectioned keyed-text (TOML) description of one sizing run.
//!
//! Relative paths resolve against the directory holding the scenario file.
//! Every section and key is optional; omitted values take the reference
//! defaults. Example:
//!
//! ```toml
//! [inputs]
//! weather = "weather.csv"
//! traffic = "traffic.txt"
//! w500_curve = "w500.csv"
//!
//! [channel]
//! environment = "suburban"
//! a_eff = 0.9
//!
//! [prices]
//! budget_eur = 100000
//!
//! [search]
//! d_lb = 100
//! d_ub = inf
//! step = 10
//! provision_level = 0.9
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::{Environment, EnvironmentKind, LinkModel, RadioParams};
use crate::harvest::{PvParams, TurbineCurve, TurbineKind, TurbineSet};
use crate::ingest::{self, ColumnMap, ScaleModel};
use crate::money::Eur;
use crate::sizing::{CountBounds, PriceTable, Scenario};
use crate::storage::{ChargerSpec, GroundBattery, HorizonOptions};
use crate::uav_power::{AirframeParams, WindContext};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {msg}")]
    Syntax { path: PathBuf, msg: String },
    #[error("invalid value for `{key}`: {msg}")]
    Range { key: &'static str, msg: String },
    #[error("missing input `{0}`")]
    MissingInput(&'static str),
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
    #[error(transparent)]
    Harvest(#[from] crate::harvest::HarvestError),
    #[error(transparent)]
    Channel(#[from] crate::channel::ChannelError),
    #[error(transparent)]
    Sizing(#[from] crate::sizing::SizingError),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub weather: Option<PathBuf>,
    pub traffic: Option<PathBuf>,
    pub w500_curve: Option<PathBuf>,
    pub w1000_curve: Option<PathBuf>,
    pub columns: ColumnMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub environment: EnvironmentKind,
    pub a_eff: f64,
    /// Required for `environment = "custom"`, ignored otherwise.
    pub custom: Option<Environment>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self { environment: EnvironmentKind::Suburban, a_eff: 0.9, custom: None }
    }
}

/// Prices left out fall back to the PV datasheet and the turbine files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PriceSection {
    pub pv_eur: Option<Eur>,
    pub w500_eur: Option<Eur>,
    pub w1000_eur: Option<Eur>,
    pub cell_eur: Eur,
    pub uav_eur: Eur,
    pub budget_eur: Eur,
}

impl Default for PriceSection {
    fn default() -> Self {
        let p = PriceTable::default();
        Self {
            pv_eur: None,
            w500_eur: None,
            w1000_eur: None,
            cell_eur: p.cell_eur,
            uav_eur: p.uav_eur,
            budget_eur: p.budget_eur,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChargerSection {
    pub charge_power_w: f64,
    pub battery_wh: f64,
}

impl Default for ChargerSection {
    fn default() -> Self {
        let c = ChargerSpec::default();
        Self { charge_power_w: c.charge_power_w, battery_wh: c.battery_wh }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatterySection {
    pub cell_wh: f64,
    pub eff_conversion: f64,
    /// Require the year to end at least as charged as it started.
    pub cyclic: bool,
}

impl Default for BatterySection {
    fn default() -> Self {
        let b = GroundBattery::default();
        Self { cell_wh: b.cell_wh, eff_conversion: b.eff_conversion, cyclic: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSection {
    pub d_lb: f64,
    /// `None` (or `inf` in the file) sweeps until coverage becomes infeasible.
    pub d_ub: Option<f64>,
    pub step: f64,
    pub provision_level: Option<f64>,
    pub bounds: CountBounds,
}

impl Default for SearchSection {
    fn default() -> Self {
        Self { d_lb: 0.0, d_ub: None, step: 1.0, provision_level: None, bounds: CountBounds::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrafficSection {
    /// `(level, factor)` knots used when the profile has no samples.
    pub scale: Option<Vec<(f64, f64)>>,
}

/// One sizing run as written in a scenario file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub inputs: Inputs,
    pub channel: ChannelSection,
    pub radio: RadioParams,
    pub airframe: AirframeParams,
    pub wind: WindContext,
    pub pv: PvParams,
    pub prices: PriceSection,
    pub charger: ChargerSection,
    pub battery: BatterySection,
    pub search: SearchSection,
    pub traffic: TrafficSection,
}

/// Command-line style overrides; `Some` wins over the file.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub budget_eur: Option<f64>,
    pub a_eff: Option<f64>,
    pub environment: Option<EnvironmentKind>,
    pub d_lb: Option<f64>,
    pub d_ub: Option<f64>,
    pub step: Option<f64>,
    pub provision_level: Option<f64>,
}

impl ScenarioFile {
    /// Parses `path` and makes its input paths relative to the current directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let mut file: Self =
            toml::from_str(&text).map_err(|e| ConfigError::Syntax { path: path.to_path_buf(), msg: e.to_string() })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut file.inputs.weather,
            &mut file.inputs.traffic,
            &mut file.inputs.w500_curve,
            &mut file.inputs.w1000_curve,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        file.normalize();
        Ok(file)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let mut file: Self =
            toml::from_str(text).map_err(|e| ConfigError::Syntax { path: PathBuf::from("<string>"), msg: e.to_string() })?;
        file.normalize();
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    fn normalize(&mut self) {
        if self.search.d_ub.is_some_and(|d| d == f64::INFINITY) {
            self.search.d_ub = None;
        }
        self.radio.antenna_efficiency = self.channel.a_eff;
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(b) = o.budget_eur {
            self.prices.budget_eur = Eur::from_euros(b);
        }
        if let Some(a) = o.a_eff {
            self.channel.a_eff = a;
        }
        if let Some(e) = o.environment {
            self.channel.environment = e;
        }
        if let Some(d) = o.d_lb {
            self.search.d_lb = d;
        }
        if let Some(d) = o.d_ub {
            self.search.d_ub = Some(d);
        }
        if let Some(s) = o.step {
            self.search.step = s;
        }
        if let Some(l) = o.provision_level {
            self.search.provision_level = Some(l);
        }
        self.normalize();
    }

    pub fn environment(&self) -> Result<Environment, ConfigError> {
        let env = match self.channel.environment {
            EnvironmentKind::Custom => self.channel.custom.ok_or(ConfigError::Range {
                key: "channel.custom",
                msg: "required when environment = \"custom\"".into(),
            })?,
            kind => Environment::of_kind(kind).expect("named environment"),
        };
        env.validate()?;
        Ok(env)
    }

    /// Range checks that do not touch the filesystem.
    pub fn check_ranges(&self) -> Vec<ConfigError> {
        let mut out = Vec::new();
        let mut bad = |key: &'static str, ok: bool, msg: String| {
            if !ok {
                out.push(ConfigError::Range { key, msg });
            }
        };
        let s = &self.search;
        bad("search.d_lb", s.d_lb >= 0.0 && s.d_lb.is_finite(), format!("{} must be finite and >= 0", s.d_lb));
        bad("search.step", s.step > 0.0 && s.step.is_finite(), format!("{} must be positive", s.step));
        if let Some(ub) = s.d_ub {
            bad("search.d_ub", ub >= s.d_lb, format!("{ub} is below d_lb = {}", s.d_lb));
        }
        if let Some(l) = s.provision_level {
            bad("search.provision_level", l > 0.0 && l < 1.0, format!("{l} must lie in (0, 1)"));
        }
        let a = self.channel.a_eff;
        bad("channel.a_eff", a > 0.0 && a <= 1.0, format!("{a} must lie in (0, 1]"));
        bad("prices.budget_eur", self.prices.budget_eur >= Eur::ZERO, format!("{} must be >= 0", self.prices.budget_eur));
        let c = &self.charger;
        bad("charger.charge_power_w", c.charge_power_w > 0.0, format!("{} must be positive", c.charge_power_w));
        bad("charger.battery_wh", c.battery_wh > 0.0, format!("{} must be positive", c.battery_wh));
        let b = &self.battery;
        bad("battery.cell_wh", b.cell_wh > 0.0, format!("{} must be positive", b.cell_wh));
        bad(
            "battery.eff_conversion",
            b.eff_conversion > 0.0 && b.eff_conversion <= 1.0,
            format!("{} must lie in (0, 1]", b.eff_conversion),
        );
        let af = &self.airframe;
        bad("airframe.flight_hours", af.flight_hours > 0.0, format!("{} must be positive", af.flight_hours));
        bad("airframe.climb_speed", af.climb_speed > 0.0, format!("{} must be positive", af.climb_speed));
        bad("airframe.cruise_speed", af.cruise_speed > 0.0, format!("{} must be positive", af.cruise_speed));
        if let Err(e) = self.environment() {
            out.push(e);
        }
        let mut radio = self.radio;
        radio.antenna_efficiency = a;
        if let Err(e) = radio.validate() {
            out.push(e.into());
        }
        out
    }

    pub fn turbines(&self) -> Result<TurbineSet, ConfigError> {
        let load = |kind, path: &Option<PathBuf>, fallback: fn() -> TurbineCurve| match path {
            Some(p) => TurbineCurve::load(kind, p),
            None => Ok(fallback()),
        };
        Ok(TurbineSet {
            w500: load(TurbineKind::W500, &self.inputs.w500_curve, TurbineCurve::default_w500)?,
            w1000: load(TurbineKind::W1000, &self.inputs.w1000_curve, TurbineCurve::default_w1000)?,
        })
    }

    pub fn price_table(&self, turbines: &TurbineSet) -> PriceTable {
        let p = &self.prices;
        PriceTable {
            pv_eur: p.pv_eur.unwrap_or(self.pv.unit_cost),
            w500_eur: p.w500_eur.unwrap_or(turbines.w500.unit_cost),
            w1000_eur: p.w1000_eur.unwrap_or(turbines.w1000.unit_cost),
            cell_eur: p.cell_eur,
            uav_eur: p.uav_eur,
            budget_eur: p.budget_eur,
        }
    }

    /// Reads every referenced file and builds the sizing inputs.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        if let Some(e) = self.check_ranges().into_iter().next() {
            return Err(e);
        }
        let weather = self.inputs.weather.as_ref().ok_or(ConfigError::MissingInput("inputs.weather"))?;
        let traffic_path = self.inputs.traffic.as_ref().ok_or(ConfigError::MissingInput("inputs.traffic"))?;
        let weather = ingest::parse_weather_csv_with(weather, &self.inputs.columns)?;
        let mut traffic = ingest::load_traffic_profile(traffic_path)?;
        if let Some(level) = self.search.provision_level {
            let scale = self.traffic.scale.clone().map(|knots| ScaleModel { knots });
            traffic = ingest::provision_quantile(&traffic, level, scale.as_ref())?;
        }
        let turbines = self.turbines()?;
        let prices = self.price_table(&turbines);
        let mut radio = self.radio;
        radio.antenna_efficiency = self.channel.a_eff;
        let link = LinkModel::new(self.environment()?, radio)?;
        let scenario = Scenario {
            trace: weather.trace,
            traffic,
            link,
            airframe: self.airframe,
            wind: self.wind,
            pv: self.pv,
            turbines,
            prices,
            charger: ChargerSpec {
                charge_power_w: self.charger.charge_power_w,
                battery_wh: self.charger.battery_wh,
                flight_hours: self.airframe.flight_hours,
            },
            battery: GroundBattery {
                cells: 0,
                cell_wh: self.battery.cell_wh,
                cell_cost: prices.cell_eur,
                eff_conversion: self.battery.eff_conversion,
            },
            bounds: self.search.bounds,
            horizon: HorizonOptions { cyclic: self.battery.cyclic },
        };
        Ok(Resolved { scenario, notices: weather.notices })
    }
}

/// Sizing inputs built from a scenario file, plus parser notices.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: Scenario,
    pub notices: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_infinity() {
        let f = ScenarioFile::from_toml("[search]\nd_ub = inf\nstep = 5\n").unwrap();
        assert_eq!(f.search.d_ub, None);
        assert_eq!(f.search.step, 5.0);
        assert_eq!(f.prices.budget_eur, Eur::from_cents(10_000_000));
        assert_eq!(f.airframe, AirframeParams::default());
        assert!(f.check_ranges().is_empty());
    }

    #[test]
    fn partial_sections_and_unknown_keys() {
        let f = ScenarioFile::from_toml("[airframe]\ncruise_speed = 12.0\n[prices]\nbudget_eur = 5000.5\n").unwrap();
        assert_eq!(f.airframe.cruise_speed, 12.0);
        assert_eq!(f.airframe.weight_n, AirframeParams::default().weight_n);
        assert_eq!(f.prices.budget_eur.cents(), 500_050);
        assert!(ScenarioFile::from_toml("[search]\nstpe = 5\n").is_err());
    }

    #[test]
    fn overrides_win() {
        let mut f = ScenarioFile::from_toml("[channel]\na_eff = 0.6\n").unwrap();
        f.apply(&Overrides { a_eff: Some(0.9), environment: Some(EnvironmentKind::Urban), ..Overrides::default() });
        assert_eq!(f.channel.a_eff, 0.9);
        assert_eq!(f.radio.antenna_efficiency, 0.9);
        assert_eq!(f.environment().unwrap(), Environment::urban());
    }

    #[test]
    fn range_findings() {
        let f = ScenarioFile::from_toml("[radio]\ntotal_bandwidth_hz = 160e6\n[search]\nstep = 0\n").unwrap();
        let msgs: Vec<String> = f.check_ranges().iter().map(ToString::to_string).collect();
        assert!(msgs.iter().any(|m| m.contains("search.step")), "{msgs:?}");
        assert!(msgs.iter().any(|m| m.contains("3x")), "{msgs:?}");
        let f = ScenarioFile::from_toml("[channel]\nenvironment = \"custom\"\n").unwrap();
        assert!(f.environment().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let f = ScenarioFile::from_toml("[search]\nd_lb = 100\nd_ub = 900\nstep = 50\n").unwrap();
        assert_eq!(ScenarioFile::from_toml(&f.to_toml()).unwrap(), f);
    }
}
