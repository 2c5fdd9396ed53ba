//! Sizing engine for self-sustained UAV-swarm wireless coverage.
//!
//! Given an hourly weather year and a daily traffic-density profile, the
//! engine picks the PV/wind/battery/fleet configuration and the coverage
//! radius that maximise covered area per euro of capital cost.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: packing radii and hover layouts for k-disk covers.
//! * [`channel`]: air-to-ground path loss, optimal elevation, edge rate.
//! * [`uav_power`]: rotor power and per-hour swarm energy.
//! * [`harvest`]: PV and wind-turbine generation.
//! * [`storage`]: charger bookkeeping and ground-battery simulation.
//! * [`sizing`]: minimum-energy load, cheapest energy mix and the sweep.
//! * [`ingest`]: weather/traffic parsing and quantile provisioning.

pub mod channel;
pub mod config;
pub mod geometry;
pub mod harvest;
pub mod ingest;
pub mod money;
pub mod sizing;
pub mod storage;
#[cfg(feature = "synth")]
pub mod synth;
pub mod uav_power;

mod interp;
mod par;

pub use money::Eur;

/// Top-level error for callers that want a single type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Channel(#[from] channel::ChannelError),
    #[error(transparent)]
    Power(#[from] uav_power::PowerError),
    #[error(transparent)]
    Harvest(#[from] harvest::HarvestError),
    #[error(transparent)]
    Storage(#[from] storage::StorageError),
    #[error(transparent)]
    Sizing(#[from] sizing::SizingError),
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
    #[error(transparent)]
    Config(#[from] config::ConfigError),
}
