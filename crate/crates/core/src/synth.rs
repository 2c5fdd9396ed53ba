//! Deterministic synthetic inputs for tests, demos and desk-scale runs.
//! None of this is measured data.

use std::f64::consts::TAU;

use chrono::{NaiveDate, TimeDelta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

use crate::ingest::{HourRecord, HourlyTrace, HOURS_PER_YEAR};
use crate::sizing::TrafficProfile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClimateParams {
    pub year: i32,
    pub latitude_deg: f64,
    pub mean_temp_c: f64,
    pub seasonal_swing_c: f64,
    pub daily_swing_c: f64,
    /// Rayleigh scale of the 10 m wind; the mean is about 0.886 × this.
    pub wind_scale: f64,
    /// Hour-to-hour correlation of the wind process.
    pub wind_memory: f64,
}

impl Default for ClimateParams {
    fn default() -> Self {
        Self {
            year: 2015,
            latitude_deg: 40.4,
            mean_temp_c: 15.0,
            seasonal_swing_c: 9.0,
            daily_swing_c: 5.0,
            wind_scale: 4.1,
            wind_memory: 0.93,
        }
    }
}

fn solar_elevation_sin(day: usize, hour: f64, latitude_deg: f64) -> f64 {
    let decl = (23.44f64).to_radians() * (TAU * (284.0 + day as f64 + 1.0) / 365.0).sin();
    let lat = latitude_deg.to_radians();
    let hour_angle = (hour - 12.0) * 15f64.to_radians();
    lat.sin() * decl.sin() + lat.cos() * decl.cos() * hour_angle.cos()
}

/// One non-leap year of hourly weather.
pub fn synthetic_year(seed: u64, climate: &ClimateParams) -> HourlyTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let start = NaiveDate::from_ymd_opt(climate.year, 1, 1).expect("valid year").and_hms_opt(0, 0, 0).expect("midnight");
    let rho = climate.wind_memory;
    let innov = (1.0 - rho * rho).sqrt();
    let (mut wx, mut wy) = (normal.sample(&mut rng), normal.sample(&mut rng));
    let mut clearness = 0.7;
    let mut records = Vec::with_capacity(HOURS_PER_YEAR);
    for i in 0..HOURS_PER_YEAR {
        let (day, hour) = (i / 24, (i % 24) as f64);
        if i % 24 == 0 {
            clearness = rng.random_range(0.25..1.0);
        }
        let sin_el = solar_elevation_sin(day, hour + 0.5, climate.latitude_deg);
        let irradiance = if sin_el > 0.0 { (1050.0 * clearness * sin_el.powf(1.15)).round() } else { 0.0 };
        let season = -(TAU * (day as f64 + 10.0) / 365.0).cos();
        let diurnal = -(TAU * (hour - 3.0) / 24.0).cos();
        let temperature = climate.mean_temp_c
            + climate.seasonal_swing_c * season
            + climate.daily_swing_c * diurnal
            + normal.sample(&mut rng);
        wx = rho * wx + innov * normal.sample(&mut rng);
        wy = rho * wy + innov * normal.sample(&mut rng);
        let sigma = climate.wind_scale / 2f64.sqrt();
        let wind = (sigma * (wx * wx + wy * wy).sqrt()).min(25.0);
        records.push(HourRecord {
            time: start + TimeDelta::hours(i as i64),
            irradiance,
            temperature: (temperature * 100.0).round() / 100.0,
            wind: (wind * 100.0).round() / 100.0,
        });
    }
    HourlyTrace::new(records).expect("synthetic trace is valid")
}

/// Daily traffic-density cycle peaking in the evening, Mbps/m², with
/// `samples` log-normal draws per hour whose mean is near the profile.
pub fn synthetic_traffic(seed: u64, peak: f64, samples: usize) -> TrafficProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = 0.25;
    let lambda: Vec<f64> = (0..24)
        .map(|h| {
            let x = (h as f64 - 20.0) / 24.0 * TAU;
            let shape = 0.2 + 0.8 * (0.5 + 0.5 * x.cos()).powi(2);
            peak * shape
        })
        .collect();
    let draws = (samples > 0).then(|| {
        lambda
            .iter()
            .map(|&m| {
                let mu = m.ln() - spread * spread / 2.0;
                let dist = LogNormal::new(mu, spread).expect("finite log-normal");
                (0..samples).map(|_| dist.sample(&mut rng)).collect()
            })
            .collect()
    });
    TrafficProfile::new(lambda, draws).expect("synthetic profile is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_year() {
        let a = synthetic_year(7, &ClimateParams::default());
        let b = synthetic_year(7, &ClimateParams::default());
        assert_eq!(a, b);
        assert!(a.is_full_year());
        let mean_wind = a.records().iter().map(|r| r.wind).sum::<f64>() / a.len() as f64;
        assert!((3.0..4.3).contains(&mean_wind), "{mean_wind}");
        let noon_june = &a.records()[(171 * 24) + 12];
        assert!(noon_june.irradiance > 200.0);
        assert_eq!(a.records()[0].irradiance, 0.0);
        assert!(a.records().iter().all(|r| r.temperature > -30.0 && r.temperature < 50.0));
    }

    #[test]
    fn traffic_shape() {
        let t = synthetic_traffic(3, 5e-5, 31);
        let l = t.lambda();
        assert!((l[20] - 5e-5).abs() < 1e-12);
        assert!(l[8] < l[20]);
        assert_eq!(t.samples().unwrap()[0].len(), 31);
    }
}
