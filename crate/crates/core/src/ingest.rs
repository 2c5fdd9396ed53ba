//! Hourly weather traces, daily traffic profiles, and quantile provisioning.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use chrono::{Datelike, NaiveDateTime, TimeDelta};
use serde::{Deserialize, Serialize};

use crate::interp;
use crate::sizing::TrafficProfile;

pub const HOURS_PER_YEAR: usize = 8760;
pub const LEAP_HOURS: usize = 8784;

/// Above this, wind is outside what the fleet can fly in.
pub const WIND_ENVELOPE_MPS: f64 = 30.0;

pub const CANONICAL_HEADER: &str = "time,G_i_wm2,T2m_c,WS10m_mps";
const CANONICAL_TIME: &str = "%Y-%m-%dT%H:%M";
const TIME_FORMATS: [&str; 5] = ["%Y%m%d:%H%M", "%Y-%m-%dT%H:%M", "%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M", "%Y-%m-%d %H:%M:%S"];

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: missing column(s) {missing:?}; found {found:?}")]
    Columns { path: PathBuf, missing: Vec<String>, found: Vec<String> },
    #[error("{path}:{line}: column `{column}`: {msg}")]
    Field { path: PathBuf, line: usize, column: String, msg: String },
    #[error("{path}: expected {HOURS_PER_YEAR} hourly rows (or {LEAP_HOURS} for a leap year), found {found}")]
    RowCount { path: PathBuf, found: usize },
    #[error("{path}:{line}: {msg}")]
    Line { path: PathBuf, line: usize, msg: String },
    #[error("trace: {0}")]
    Trace(String),
    #[error("quantile: {0}")]
    Quantile(String),
}

/// One hour of weather.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HourRecord {
    pub time: NaiveDateTime,
    /// Plane-of-array irradiance, W/m².
    pub irradiance: f64,
    /// Ambient temperature, °C.
    pub temperature: f64,
    /// Wind speed at 10 m, m/s.
    pub wind: f64,
}

/// Hourly weather with validated, strictly increasing timestamps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HourlyTrace {
    records: Vec<HourRecord>,
}

fn is_leap_gap(prev: NaiveDateTime, next: NaiveDateTime) -> bool {
    next - prev == TimeDelta::hours(25) && prev.month() == 2 && prev.day() == 28 && next.month() == 3 && next.day() == 1
}

impl HourlyTrace {
    /// Any length is accepted; steps must be one hour, except a skipped 29 February.
    pub fn new(records: Vec<HourRecord>) -> Result<Self, IngestError> {
        for (i, r) in records.iter().enumerate() {
            if !(r.irradiance >= 0.0) {
                return Err(IngestError::Trace(format!("hour {i}: negative irradiance {}", r.irradiance)));
            }
            if !(r.wind >= 0.0) {
                return Err(IngestError::Trace(format!("hour {i}: negative wind {}", r.wind)));
            }
            if !r.temperature.is_finite() {
                return Err(IngestError::Trace(format!("hour {i}: invalid temperature")));
            }
        }
        for (i, w) in records.windows(2).enumerate() {
            let step = w[1].time - w[0].time;
            if step != TimeDelta::hours(1) && !is_leap_gap(w[0].time, w[1].time) {
                return Err(IngestError::Trace(format!(
                    "hour {}: step from {} to {} is not one hour",
                    i + 1,
                    w[0].time,
                    w[1].time
                )));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[HourRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn is_full_year(&self) -> bool {
        self.records.len() == HOURS_PER_YEAR
    }

    /// `len` consecutive hours starting at `start`.
    pub fn window(&self, start: usize, len: usize) -> Result<Self, IngestError> {
        let end = start.checked_add(len).filter(|&e| e <= self.records.len()).ok_or_else(|| {
            IngestError::Trace(format!("window {start}+{len} exceeds {} hours", self.records.len()))
        })?;
        Ok(Self { records: self.records[start..end].to_vec() })
    }

    /// Canonical CSV text.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 40);
        out.push_str(CANONICAL_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(out, "{},{},{},{}", r.time.format(CANONICAL_TIME), r.irradiance, r.temperature, r.wind);
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), IngestError> {
        fs::write(path, self.to_csv()).map_err(|source| IngestError::Io { path: path.to_path_buf(), source })
    }
}

/// Header names to read each field from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ColumnMap {
    pub time: String,
    pub irradiance: String,
    pub temperature: String,
    pub wind: String,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            time: "time".into(),
            irradiance: "G_i_wm2".into(),
            temperature: "T2m_c".into(),
            wind: "WS10m_mps".into(),
        }
    }
}

/// A parsed trace with the non-fatal findings met along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherFile {
    pub trace: HourlyTrace,
    pub notices: Vec<String>,
}

pub fn parse_weather_csv(path: &Path) -> Result<WeatherFile, IngestError> {
    parse_weather_csv_with(path, &ColumnMap::default())
}

pub fn parse_weather_csv_with(path: &Path, columns: &ColumnMap) -> Result<WeatherFile, IngestError> {
    let file = fs::File::open(path).map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    read_weather(file, path, columns)
}

fn parse_time(raw: &str) -> Option<NaiveDateTime> {
    TIME_FORMATS.iter().find_map(|f| NaiveDateTime::parse_from_str(raw, f).ok())
}

/// Reads a weather CSV from any reader; `path` is only used in messages.
pub fn read_weather<R: Read>(reader: R, path: &Path, columns: &ColumnMap) -> Result<WeatherFile, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let io_err = |e: csv::Error| IngestError::Line {
        path: path.to_path_buf(),
        line: e.position().map_or(0, |p| p.line() as usize),
        msg: e.to_string(),
    };
    let headers = rdr.headers().map_err(io_err)?.clone();
    let found: Vec<String> = headers.iter().map(str::to_owned).collect();
    let wanted = [&columns.time, &columns.irradiance, &columns.temperature, &columns.wind];
    let idx: Vec<Option<usize>> = wanted.iter().map(|w| found.iter().position(|h| h == *w)).collect();
    let missing: Vec<String> =
        wanted.iter().zip(&idx).filter(|(_, i)| i.is_none()).map(|(w, _)| (*w).clone()).collect();
    if !missing.is_empty() {
        return Err(IngestError::Columns { path: path.to_path_buf(), missing, found });
    }
    let idx: Vec<usize> = idx.into_iter().flatten().collect();

    let mut notices = Vec::new();
    let mut records = Vec::with_capacity(LEAP_HOURS);
    let mut windy = 0usize;
    for row in rdr.records() {
        let row = row.map_err(io_err)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let field = |slot: usize| row.get(idx[slot]).unwrap_or("");
        let fail = |slot: usize, msg: String| IngestError::Field {
            path: path.to_path_buf(),
            line,
            column: wanted[slot].clone(),
            msg,
        };
        let time = parse_time(field(0)).ok_or_else(|| fail(0, format!("unrecognised timestamp `{}`", field(0))))?;
        let num = |slot: usize| -> Result<f64, IngestError> {
            let raw = field(slot);
            let v: f64 = raw.parse().map_err(|_| fail(slot, format!("not a number: `{raw}`")))?;
            if !v.is_finite() {
                return Err(fail(slot, format!("not finite: `{raw}`")));
            }
            Ok(v)
        };
        let (irradiance, temperature, wind) = (num(1)?, num(2)?, num(3)?);
        if irradiance < 0.0 {
            return Err(fail(1, format!("negative irradiance {irradiance}")));
        }
        if wind < 0.0 {
            return Err(fail(3, format!("negative wind speed {wind}")));
        }
        if wind > WIND_ENVELOPE_MPS {
            windy += 1;
            if windy == 1 {
                let msg = format!("line {line}: wind {wind} m/s exceeds the {WIND_ENVELOPE_MPS} m/s flight envelope");
                log::warn!("{}: {msg}", path.display());
                notices.push(msg);
            }
        }
        if let Some(prev) = records.last().map(|r: &HourRecord| r.time) {
            if time <= prev {
                return Err(fail(0, format!("timestamp {time} does not follow {prev}")));
            }
            if time - prev != TimeDelta::hours(1) {
                return Err(fail(0, format!("gap from {prev} to {time} is not one hour")));
            }
        }
        records.push(HourRecord { time, irradiance, temperature, wind });
    }
    if windy > 1 {
        notices.push(format!("{windy} hours exceed the {WIND_ENVELOPE_MPS} m/s flight envelope"));
    }
    match records.len() {
        HOURS_PER_YEAR => {}
        LEAP_HOURS => {
            let before = records.len();
            records.retain(|r| !(r.time.month() == 2 && r.time.day() == 29));
            if records.len() != HOURS_PER_YEAR {
                return Err(IngestError::RowCount { path: path.to_path_buf(), found: before });
            }
            let msg = "leap year: 29 February dropped".to_owned();
            log::info!("{}: {msg}", path.display());
            notices.push(msg);
        }
        found => return Err(IngestError::RowCount { path: path.to_path_buf(), found }),
    }
    Ok(WeatherFile { trace: HourlyTrace::new(records)?, notices })
}

/// Reads 24 lines of `mean[,sample,...]`. Blank lines and `#` comments are
/// skipped. Either every hour carries samples or none does.
pub fn load_traffic_profile(path: &Path) -> Result<TrafficProfile, IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    parse_traffic(&text, path)
}

pub fn parse_traffic(text: &str, path: &Path) -> Result<TrafficProfile, IngestError> {
    let line_err = |line: usize, msg: String| IngestError::Line { path: path.to_path_buf(), line, msg };
    let mut means = Vec::with_capacity(24);
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(24);
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last_line = i + 1;
        let values = line
            .split(',')
            .map(|f| {
                let f = f.trim();
                match f.parse::<f64>() {
                    Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
                    Ok(v) => Err(line_err(i + 1, format!("density must be non-negative, got {v}"))),
                    Err(_) => Err(line_err(i + 1, format!("not a number: `{f}`"))),
                }
            })
            .collect::<Result<Vec<f64>, _>>()?;
        means.push(values[0]);
        samples.push(values[1..].to_vec());
    }
    if means.len() != 24 {
        return Err(line_err(last_line, format!("expected 24 hourly values, found {}", means.len())));
    }
    let with = samples.iter().filter(|s| !s.is_empty()).count();
    let samples = match with {
        0 => None,
        24 => Some(samples),
        _ => return Err(line_err(0, format!("{with} of 24 hours carry samples; expected all or none"))),
    };
    TrafficProfile::new(means, samples).map_err(|e| line_err(0, e.to_string()))
}

pub fn traffic_to_text(profile: &TrafficProfile) -> String {
    let mut out = String::new();
    for h in 0..24 {
        let _ = write!(out, "{}", profile.lambda()[h]);
        if let Some(s) = profile.samples() {
            for v in &s[h] {
                let _ = write!(out, ",{v}");
            }
        }
        out.push('\n');
    }
    out
}

/// Multiplier applied to the mean profile as a function of provisioning
/// level, linearly interpolated between knots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleModel {
    pub knots: Vec<(f64, f64)>,
}

impl ScaleModel {
    pub fn factor(&self, level: f64) -> Result<f64, IngestError> {
        if self.knots.is_empty() {
            return Err(IngestError::Quantile("scale model has no knots".into()));
        }
        if self.knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(IngestError::Quantile("scale-model levels must increase".into()));
        }
        Ok(interp::linear(&self.knots, level))
    }
}

/// Lower empirical quantile: the sorted sample at index `⌈level·n⌉ − 1`.
pub fn lower_quantile(samples: &[f64], level: f64) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    // Guard against products like 0.9 × 10 = 9.000000000000002.
    let rank = ((level * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
    Some(sorted[rank - 1])
}

/// Replaces every hour's density by its `level` quantile, or scales the
/// means when no samples are attached.
pub fn provision_quantile(
    profile: &TrafficProfile,
    level: f64,
    scale: Option<&ScaleModel>,
) -> Result<TrafficProfile, IngestError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(IngestError::Quantile(format!("level must lie in (0, 1), got {level}")));
    }
    let lambda = match (profile.samples(), scale) {
        (Some(samples), _) => {
            samples.iter().map(|s| lower_quantile(s, level).unwrap_or(0.0)).collect()
        }
        (None, Some(model)) => {
            let f = model.factor(level)?;
            profile.lambda().iter().map(|v| v * f).collect()
        }
        (None, None) => {
            return Err(IngestError::Quantile("profile has no samples and no scale model is configured".into()))
        }
    };
    TrafficProfile::new(lambda, profile.samples().map(<[_]>::to_vec)).map_err(|e| IngestError::Quantile(e.to_string()))
}
