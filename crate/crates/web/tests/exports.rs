use regcert_web::{certificate, curves, generate, spectrum_view};

#[test]
fn spectrum_of_petersen() {
    let v: serde_json::Value = serde_json::from_str(&spectrum_view("IheA@GUAo").unwrap()).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
    let ev: Vec<f64> = serde_json::from_value(v["eigenvalues"].clone()).unwrap();
    assert!((ev[0] - 3.0).abs() < 1e-9 && (ev[1] - 1.0).abs() < 1e-9 && (ev[9] + 2.0).abs() < 1e-9);
    assert_eq!(v["thresholds"]["guarantee_main"], 1);
}

#[test]
fn irregular_input_has_no_thresholds() {
    let v: serde_json::Value = serde_json::from_str(&spectrum_view("3\n0 1\n1 2").unwrap()).unwrap();
    assert!(v["thresholds"].is_null());
    assert!(spectrum_view("C~~").is_err());
}

#[test]
fn curves_cover_the_range() {
    let v: serde_json::Value = serde_json::from_str(&curves(3, 10).unwrap()).unwrap();
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 8);
    assert!((pts[0]["pm_lambda3"].as_f64().unwrap() - 2.85577).abs() < 1e-4);
    for p in pts {
        let (lo, m, hi) = (
            p["main2_lower"].as_f64().unwrap(),
            p["main2"].as_f64().unwrap(),
            p["main2_upper"].as_f64().unwrap(),
        );
        assert!(lo < m && m < hi);
    }
    assert!(curves(2, 5).is_err());
}

#[test]
fn certificate_and_generators() {
    let g = generate("gd", 0, 3, 0).unwrap();
    let cert: serde_json::Value = serde_json::from_str(&certificate(&g, 1).unwrap()).unwrap();
    assert_eq!(cert["toughness"]["is_gd"], true);
    assert_eq!(cert["seed"], 1);
    let r = generate("random-regular", 10, 3, 4).unwrap();
    assert_eq!(regcert_core::parse_graph6(&r).unwrap().regular_degree(), Some(3));
    assert!(generate("hypercube", 8, 3, 0).is_err());
}
