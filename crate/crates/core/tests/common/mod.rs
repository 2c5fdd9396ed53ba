#![allow(dead_code)]

use uavgrid::channel::{Environment, LinkModel, RadioParams};
use uavgrid::harvest::{PvParams, TurbineSet};
use uavgrid::sizing::{CountBounds, PriceTable, Scenario, TrafficProfile};
use uavgrid::storage::{ChargerSpec, GroundBattery, HorizonOptions};
use uavgrid::synth::{synthetic_traffic, synthetic_year, ClimateParams};
use uavgrid::uav_power::{AirframeParams, WindContext};

/// A synthetic scenario cut to `hours` starting at `start`.
pub fn scenario(start: usize, hours: usize, traffic: TrafficProfile, bounds: CountBounds) -> Scenario {
    let trace = synthetic_year(2015, &ClimateParams::default()).window(start, hours).unwrap();
    Scenario {
        trace,
        traffic,
        link: LinkModel::new(Environment::suburban(), RadioParams::default()).unwrap(),
        airframe: AirframeParams::default(),
        wind: WindContext::default(),
        pv: PvParams::default(),
        turbines: TurbineSet::default(),
        prices: PriceTable::default(),
        charger: ChargerSpec::default(),
        battery: GroundBattery::default(),
        bounds,
        horizon: HorizonOptions::default(),
    }
}

pub fn traffic(peak: f64) -> TrafficProfile {
    synthetic_traffic(24, peak, 0)
}

pub fn small_bounds(per_type: u32, cells: u64) -> CountBounds {
    CountBounds {
        max_pv: Some(per_type),
        max_w500: Some(per_type),
        max_w1000: Some(per_type),
        max_cells: Some(cells),
    }
}
