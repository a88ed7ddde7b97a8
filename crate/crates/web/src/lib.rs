//! WebAssembly bindings for the browser demo. Every export takes graph text
//! (graph6 or edge list) or plain numbers and returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use regcert_core::certificate::analyze;
use regcert_core::generators::{gen_gd, gen_random_regular};
use regcert_core::matching::{guarantee_main, guarantee_prior, pm_threshold_lambda3};
use regcert_core::toughness::{
    main2_sandwich, threshold_cioaba_wong, threshold_liu_chen, threshold_main2,
};
use regcert_core::{encode_graph6, parse_graph, spectrum, InputFormat, RunConfig};

#[derive(Serialize)]
struct Thresholds {
    pm_lambda3: f64,
    main2: f64,
    liu_chen: f64,
    cioaba_wong: f64,
    guarantee_main: usize,
    guarantee_prior: usize,
}

#[derive(Serialize)]
struct SpectrumView {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    d: Option<usize>,
    eigenvalues: Vec<f64>,
    thresholds: Option<Thresholds>,
}

pub fn spectrum_view(input: &str) -> Result<String, String> {
    let g = parse_graph(input.trim(), InputFormat::Auto).map_err(|e| e.to_string())?;
    let s = spectrum(&g).map_err(|e| e.to_string())?;
    let d = g.regular_degree();
    let thresholds = match (d, s.lambda(2)) {
        (Some(d), Ok(l2)) if d >= 3 => Some(Thresholds {
            pm_lambda3: pm_threshold_lambda3(d).map_err(|e| e.to_string())?,
            main2: threshold_main2(d).map_err(|e| e.to_string())?,
            liu_chen: threshold_liu_chen(d).map_err(|e| e.to_string())?,
            cioaba_wong: threshold_cioaba_wong(d).map_err(|e| e.to_string())?,
            guarantee_main: guarantee_main(d, l2).map_err(|e| e.to_string())?.value,
            guarantee_prior: guarantee_prior(d, l2).map_err(|e| e.to_string())?.value,
        }),
        _ => None,
    };
    let view = SpectrumView {
        graph6: encode_graph6(&g),
        n: g.order(),
        edges: g.edges().collect(),
        d,
        eigenvalues: s.values().to_vec(),
        thresholds,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CurvePoint {
    d: usize,
    pm_lambda3: f64,
    main2: f64,
    main2_lower: f64,
    main2_upper: f64,
    liu_chen: f64,
    cioaba_wong: f64,
}

pub fn curves(d_min: usize, d_max: usize) -> Result<String, String> {
    if d_min < 3 || d_max < d_min || d_max > 1000 {
        return Err(format!("need 3 <= d_min <= d_max <= 1000, got {d_min}..{d_max}"));
    }
    let points: Vec<CurvePoint> = (d_min..=d_max)
        .map(|d| {
            let (lo, hi) = main2_sandwich(d);
            CurvePoint {
                d,
                pm_lambda3: pm_threshold_lambda3(d).unwrap(),
                main2: threshold_main2(d).unwrap(),
                main2_lower: lo,
                main2_upper: hi,
                liu_chen: threshold_liu_chen(d).unwrap(),
                cioaba_wong: threshold_cioaba_wong(d).unwrap(),
            }
        })
        .collect();
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

pub fn certificate(input: &str, seed: u64) -> Result<String, String> {
    let g = parse_graph(input.trim(), InputFormat::Auto).map_err(|e| e.to_string())?;
    if g.order() > 64 {
        return Err("the demo accepts at most 64 vertices".into());
    }
    let cfg = RunConfig::default().with_seed(seed);
    let cert = analyze(&g, &encode_graph6(&g), &cfg).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())
}

pub fn generate(kind: &str, n: usize, d: usize, seed: u64) -> Result<String, String> {
    let g = match kind {
        "gd" => gen_gd(d).map_err(|e| e.to_string())?,
        "random-regular" => gen_random_regular(n, d, seed).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown generator {other:?}")),
    };
    Ok(encode_graph6(&g))
}

/// Spectrum, edges, and the thresholds for the graph's degree.
#[wasm_bindgen(js_name = spectrumView)]
pub fn spectrum_view_js(input: &str) -> Result<String, JsValue> {
    spectrum_view(input).map_err(|e| JsValue::from_str(&e))
}

/// All threshold curves for `d` in `d_min..=d_max`.
#[wasm_bindgen(js_name = thresholdCurves)]
pub fn curves_js(d_min: u32, d_max: u32) -> Result<String, JsValue> {
    curves(d_min as usize, d_max as usize).map_err(|e| JsValue::from_str(&e))
}

/// The full certificate as pretty JSON.
#[wasm_bindgen(js_name = analyzeGraph)]
pub fn certificate_js(input: &str, seed: u32) -> Result<String, JsValue> {
    certificate(input, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = generateGraph)]
pub fn generate_js(kind: &str, n: u32, d: u32, seed: u32) -> Result<String, JsValue> {
    generate(kind, n as usize, d as usize, seed as u64).map_err(|e| JsValue::from_str(&e))
}
