use serde_json::Value;
use uavgrid_demo::{hover_power_json, layout_json, path_loss_json};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn layout_is_covered() {
    for k in 1..=10 {
        let v = parse(layout_json(k, 900.0, "urban", 0.6));
        assert_eq!(v["centers"].as_array().unwrap().len(), k);
        let cover = v["covering_radius"].as_f64().unwrap();
        let cell = v["cell_radius"].as_f64().unwrap();
        assert!(cover <= cell * (1.0 + 1e-9), "k = {k}");
        assert!(v["altitude"].as_f64().unwrap() > 0.0);
    }
    assert!(layout_json(11, 900.0, "urban", 0.6).is_err());
    assert!(layout_json(3, 900.0, "rural", 0.6).is_err());
}

#[test]
fn curve_minimum_sits_at_theta_star() {
    let v = parse(path_loss_json("suburban", 0.9, 400.0, 4000));
    let theta: Vec<f64> = v["theta_deg"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let loss: Vec<f64> = v["loss_db"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let i = (0..loss.len()).min_by(|&a, &b| loss[a].total_cmp(&loss[b])).unwrap();
    let star = v["theta_star_deg"].as_f64().unwrap();
    assert!((theta[i] - star).abs() < 0.05);
    assert!(v["loss_star_db"].as_f64().unwrap() <= loss[i] + 1e-9);
}

#[test]
fn hover_power_gaps_beyond_the_limit() {
    let v = parse(hover_power_json(&[50.0, 800.0], 15.0, 31));
    let series = v["series"].as_array().unwrap();
    assert_eq!(series.len(), 2);
    let low = series[0]["power_w"].as_array().unwrap();
    let high = series[1]["power_w"].as_array().unwrap();
    assert!(low.iter().all(|p| p.is_f64()));
    assert!(high.last().unwrap().is_null());
    assert!(low[0].as_f64().unwrap() < high[0].as_f64().unwrap());
}
