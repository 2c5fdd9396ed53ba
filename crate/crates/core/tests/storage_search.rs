use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavgrid::storage::{
    battery_step, horizon_feasible, min_feasible_cells, simulate_horizon, GroundBattery, HorizonOptions,
    StorageError,
};

fn instance(rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let hours = rng.random_range(1..=336);
    let load: Vec<f64> = (0..hours).map(|_| rng.random_range(0.0..150.0)).collect();
    let gen: Vec<f64> = (0..hours)
        .map(|h| if h % 24 < 12 { rng.random_range(0.0..300.0) } else { 0.0 })
        .collect();
    (load, gen)
}

fn linear_scan(load: &[f64], gen: &[f64], max: u64) -> Option<u64> {
    (0..=max).find(|&n| horizon_feasible(load, gen, &GroundBattery::with_cells(n), HorizonOptions::default()))
}

#[test]
fn binary_search_matches_linear_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = HorizonOptions::default();
    let mut feasible = 0;
    for _ in 0..100 {
        let (load, gen) = instance(&mut rng);
        let max = rng.random_range(0..=200);
        let expected = linear_scan(&load, &gen, max);
        match min_feasible_cells(&load, &gen, &GroundBattery::default(), max, opts) {
            Ok(n) => {
                feasible += 1;
                assert_eq!(Some(n), expected);
            }
            Err(StorageError::InfeasibleAtMax(m)) => {
                assert_eq!(m, max);
                assert_eq!(expected, None);
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(feasible > 10, "too few feasible instances ({feasible}) to be informative");
}

#[test]
fn feasibility_is_monotone_in_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (load, gen) = instance(&mut rng);
        let verdicts: Vec<bool> = (0..=200)
            .map(|n| horizon_feasible(&load, &gen, &GroundBattery::with_cells(n), HorizonOptions::default()))
            .collect();
        assert!(verdicts.windows(2).all(|w| !w[0] || w[1]));
    }
}

#[test]
fn order_matters() {
    let b = GroundBattery::with_cells(10);
    let load = [0.0, 200.0];
    let gen = [150.0, 0.0];
    assert!(!horizon_feasible(&load, &gen, &b, HorizonOptions::default()));
    let load = [200.0, 0.0];
    let gen = [200.0, 0.0];
    assert!(horizon_feasible(&load, &gen, &b, HorizonOptions::default()));
}

proptest! {
    #[test]
    fn step_accounting(state in 0.0f64..126.0, net in -200.0f64..200.0, eff in 0.5f64..1.0) {
        let b = GroundBattery { cells: 10, eff_conversion: eff, ..GroundBattery::default() };
        let next = battery_step(state, net, &b);
        let factor = if net >= 0.0 { eff } else { 1.0 / eff };
        let raw = state + factor * net;
        if raw >= b.capacity_wh() {
            prop_assert_eq!(next, b.capacity_wh());
        } else {
            prop_assert_eq!(next, raw);
        }
    }

    #[test]
    fn trajectory_agrees_with_fast_check(
        load in prop::collection::vec(0.0f64..100.0, 1..100),
        seed in any::<u64>(),
        cells in 0u64..50,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen: Vec<f64> = load.iter().map(|_| rng.random_range(0.0..120.0)).collect();
        let b = GroundBattery::with_cells(cells);
        let out = simulate_horizon(&load, &gen, &b, HorizonOptions::default()).unwrap();
        prop_assert_eq!(out.feasible, horizon_feasible(&load, &gen, &b, HorizonOptions::default()));
        prop_assert_eq!(out.feasible, out.trajectory.iter().all(|&s| s >= 0.0));
        prop_assert!(out.trajectory.iter().all(|&s| s <= b.capacity_wh()));
    }
}
