//! Writes the synthetic fixture set used by the CLI tests and the README
//! walkthrough: a weather year, a traffic profile with samples, both turbine
//! curves and a scenario file.
//!
//! cargo run -p uavgrid --example fixtures -- data

use std::error::Error;
use std::fs;
use std::path::PathBuf;

use uavgrid::harvest::TurbineCurve;
use uavgrid::ingest::traffic_to_text;
use uavgrid::synth::{synthetic_traffic, synthetic_year, ClimateParams};

const WEATHER_SEED: u64 = 2015;
const TRAFFIC_SEED: u64 = 24;
const PEAK_DENSITY: f64 = 4e-5;
const SAMPLES_PER_HOUR: usize = 31;

const SCENARIO: &str = r#"# Synthetic desk-scale scenario. Inputs are generated, not measured.
[inputs]
weather = "weather.csv"
traffic = "traffic.txt"
w500_curve = "w500.csv"
w1000_curve = "w1000.csv"

[channel]
environment = "suburban"
a_eff = 0.9

[prices]
budget_eur = 100000

[search]
d_lb = 50
d_ub = inf
step = 25
"#;

fn main() -> Result<(), Box<dyn Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    fs::create_dir_all(&dir)?;
    synthetic_year(WEATHER_SEED, &ClimateParams::default()).write_csv(&dir.join("weather.csv"))?;
    let traffic = synthetic_traffic(TRAFFIC_SEED, PEAK_DENSITY, SAMPLES_PER_HOUR);
    fs::write(dir.join("traffic.txt"), traffic_to_text(&traffic))?;
    TurbineCurve::default_w500().save(&dir.join("w500.csv"))?;
    TurbineCurve::default_w1000().save(&dir.join("w1000.csv"))?;
    fs::write(dir.join("scenario.toml"), SCENARIO)?;
    println!("fixtures written to {}", dir.display());
    Ok(())
}
