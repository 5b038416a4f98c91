//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Each export takes plain strings/numbers and returns a JSON string, so
//! the page needs nothing beyond `JSON.parse`. Build with
//! `wasm-pack build --target web --out-dir www/pkg`.
//!
//! The `*_impl` functions hold all the logic and compile (and are tested)
//! on native targets; the `#[wasm_bindgen]` wrappers only translate
//! errors, since `JsError` can exist solely inside a JS runtime.

use wasm_bindgen::prelude::*;

use gaussfactor::{
    contrast_curve, scan, DampingRate, EchoTrace, Polarization, PulseSchedule, ScanConfig,
    ScanVariant, TargetNumber, TrialFactor, Truncation,
};

/// Interactive scans stay below this bound so a browser tab never locks up.
const DEMO_SCAN_LIMIT: u64 = 2_000_000;

fn target(n: &str) -> Result<TargetNumber, String> {
    TargetNumber::from_decimal(n).map_err(|e| e.to_string())
}

fn checked_u64(value: f64, name: &str) -> Result<u64, String> {
    if value.is_finite() && value >= 0.0 && value.fract() == 0.0 && value <= 2f64.powi(53) {
        Ok(value as u64)
    } else {
        Err(format!("{name} must be a nonnegative integer"))
    }
}

fn interference_pattern_impl(n: &str, m_max: u32, gamma: f64) -> Result<String, String> {
    let target = target(n)?;
    let mut config = if gamma > 0.0 {
        let rate = DampingRate::new(gamma).map_err(|e| e.to_string())?;
        ScanConfig::new(target, Truncation::new(m_max), ScanVariant::Damped).with_gamma(rate)
    } else {
        ScanConfig::new(target, Truncation::new(m_max), ScanVariant::AMagnitude)
    };
    config.full_scan_limit = DEMO_SCAN_LIMIT;
    let pattern = scan(&config).map_err(|e| e.to_string())?;
    Ok(gaussfactor::output::pattern_json(&pattern))
}

fn neighborhood_pattern_impl(
    n: &str,
    center: f64,
    halfwidth: u32,
    m_max: u32,
) -> Result<String, String> {
    let target = target(n)?;
    let center = checked_u64(center, "center")?;
    let config = ScanConfig::new(target, Truncation::new(m_max), ScanVariant::AMagnitude)
        .with_window(center, u64::from(halfwidth))
        .map_err(|e| e.to_string())?;
    let pattern = scan(&config).map_err(|e| e.to_string())?;
    Ok(gaussfactor::output::pattern_json(&pattern))
}

fn echo_trace_impl(n: &str, ell: f64, m_max: u32, gamma: f64) -> Result<String, String> {
    let target = target(n)?;
    let ell = TrialFactor::new(checked_u64(ell, "ell")?).map_err(|e| e.to_string())?;
    let schedule = PulseSchedule::for_gauss_sum(&target, ell, Truncation::new(m_max));
    let trace = EchoTrace::simulate(schedule, Polarization::default());
    let damped = if gamma > 0.0 {
        let rate = DampingRate::new(gamma).map_err(|e| e.to_string())?;
        Some(gaussfactor::damped_trace(&trace, rate))
    } else {
        None
    };
    Ok(gaussfactor::output::trace_json(&trace, damped.as_ref()))
}

fn visibility_curve_impl(n: &str, m_list: Vec<u32>) -> Result<String, String> {
    let target = target(n)?;
    let n0 = target.closest_sqrt_u64().map_err(|e| e.to_string())?;
    if n0 > DEMO_SCAN_LIMIT {
        return Err("target too large for an interactive contrast sweep".into());
    }
    let m_values: Vec<Truncation> = m_list.into_iter().map(Truncation::new).collect();
    let curve = contrast_curve(&target, &m_values).map_err(|e| e.to_string())?;
    Ok(gaussfactor::output::contrast_json(&curve))
}

/// Full interference pattern as JSON columns
/// `{ell, re, im, magnitude, is_factor}`.
#[wasm_bindgen]
pub fn interference_pattern(n: &str, m_max: u32, gamma: f64) -> Result<String, JsError> {
    interference_pattern_impl(n, m_max, gamma).map_err(|e| JsError::new(&e))
}

/// Windowed pattern around `center`, for targets too large to sweep.
#[wasm_bindgen]
pub fn neighborhood_pattern(
    n: &str,
    center: f64,
    halfwidth: u32,
    m_max: u32,
) -> Result<String, JsError> {
    neighborhood_pattern_impl(n, center, halfwidth, m_max).map_err(|e| JsError::new(&e))
}

/// Echo train for one trial factor as JSON `{m, s_m, s_m_damped}`.
#[wasm_bindgen]
pub fn echo_trace(n: &str, ell: f64, m_max: u32, gamma: f64) -> Result<String, JsError> {
    echo_trace_impl(n, ell, m_max, gamma).map_err(|e| JsError::new(&e))
}

/// Visibility of the full pattern for each truncation order in `m_list`,
/// as JSON `{m, v}`.
#[wasm_bindgen]
pub fn visibility_curve(n: &str, m_list: Vec<u32>) -> Result<String, JsError> {
    visibility_curve_impl(n, m_list).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_json_parses_and_flags_factors() {
        let json = interference_pattern_impl("157573", 10, 0.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let ells = v["ell"].as_array().unwrap();
        assert_eq!(ells.len(), 397);
        let idx = ells.iter().position(|e| e == 17).unwrap();
        assert_eq!(v["is_factor"][idx], serde_json::Value::Bool(true));
        assert!((v["magnitude"][idx].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn neighborhood_handles_24_digit_targets() {
        let json = neighborhood_pattern_impl("1062885837863046188098307", 790645490053.0, 10, 200)
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["ell"].as_array().unwrap().len(), 21);
    }

    #[test]
    fn trace_and_curve_exports() {
        let json = echo_trace_impl("157573", 18.0, 10, 0.2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["s_m"].as_array().unwrap().len(), 11);
        assert!(v.get("s_m_damped").is_some());

        let json = visibility_curve_impl("157573", vec![2, 10]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["m"][0], 2);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(checked_u64(2.5, "x").is_err());
        assert!(checked_u64(-1.0, "x").is_err());
        assert!(echo_trace_impl("157573", 0.0, 3, 0.0).is_err());
        assert!(interference_pattern_impl("1", 10, 0.0).is_err());
        // a 30-digit target is beyond the interactive full-scan bound
        assert!(interference_pattern_impl("100000000000000000000000000003", 10, 0.0).is_err());
    }
}
