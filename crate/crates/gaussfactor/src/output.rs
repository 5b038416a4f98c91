//! Deterministic CSV and JSON emission.
//!
//! Numeric fields are rendered with 12 decimal places, `.` as the decimal
//! separator and LF line endings, so two runs with the same inputs produce
//! byte-identical files. JSON mirrors the CSV columns as arrays.

use crate::scan::{FactorReport, InterferencePattern};
use crate::spin::EchoTrace;

/// Fixed 12-decimal rendering; negative zero is normalized away.
pub fn fmt_f64(v: f64) -> String {
    format!("{:.12}", v + 0.0)
}

pub fn pattern_csv(pattern: &InterferencePattern) -> String {
    let mut out = String::from("ell,re,im,magnitude,is_factor\n");
    for r in pattern.records() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.ell,
            fmt_f64(r.re),
            fmt_f64(r.im),
            fmt_f64(r.magnitude),
            r.is_factor
        ));
    }
    out
}

pub fn pattern_json(pattern: &InterferencePattern) -> String {
    let recs = pattern.records();
    let column = |f: &dyn Fn(&crate::scan::PatternRecord) -> String| -> String {
        recs.iter().map(f).collect::<Vec<_>>().join(",")
    };
    format!(
        "{{\"ell\":[{}],\"re\":[{}],\"im\":[{}],\"magnitude\":[{}],\"is_factor\":[{}]}}\n",
        column(&|r| r.ell.to_string()),
        column(&|r| fmt_f64(r.re)),
        column(&|r| fmt_f64(r.im)),
        column(&|r| fmt_f64(r.magnitude)),
        column(&|r| r.is_factor.to_string()),
    )
}

/// `m,s_m` rows, with a third damped column when requested.
pub fn trace_csv(trace: &EchoTrace, damped: Option<&EchoTrace>) -> String {
    let mut out = String::new();
    match damped {
        None => {
            out.push_str("m,s_m\n");
            for (m, s) in trace.values.iter().enumerate() {
                out.push_str(&format!("{},{}\n", m, fmt_f64(*s)));
            }
        }
        Some(d) => {
            out.push_str("m,s_m,s_m_damped\n");
            for (m, (s, sd)) in trace.values.iter().zip(&d.values).enumerate() {
                out.push_str(&format!("{},{},{}\n", m, fmt_f64(*s), fmt_f64(*sd)));
            }
        }
    }
    out
}

pub fn trace_json(trace: &EchoTrace, damped: Option<&EchoTrace>) -> String {
    let ms: Vec<String> = (0..trace.values.len()).map(|m| m.to_string()).collect();
    let ss: Vec<String> = trace.values.iter().map(|s| fmt_f64(*s)).collect();
    match damped {
        None => format!("{{\"m\":[{}],\"s_m\":[{}]}}\n", ms.join(","), ss.join(",")),
        Some(d) => {
            let ds: Vec<String> = d.values.iter().map(|s| fmt_f64(*s)).collect();
            format!(
                "{{\"m\":[{}],\"s_m\":[{}],\"s_m_damped\":[{}]}}\n",
                ms.join(","),
                ss.join(","),
                ds.join(",")
            )
        }
    }
}

pub fn contrast_csv(curve: &[(u32, f64)]) -> String {
    let mut out = String::from("m,v\n");
    for (m, v) in curve {
        out.push_str(&format!("{},{}\n", m, fmt_f64(*v)));
    }
    out
}

pub fn contrast_json(curve: &[(u32, f64)]) -> String {
    let ms: Vec<String> = curve.iter().map(|(m, _)| m.to_string()).collect();
    let vs: Vec<String> = curve.iter().map(|(_, v)| fmt_f64(*v)).collect();
    format!("{{\"m\":[{}],\"v\":[{}]}}\n", ms.join(","), vs.join(","))
}

/// Classification report as JSON (keys sorted, hence deterministic).
pub fn report_json(report: &FactorReport, n: &str, m_max: u32, threshold: f64) -> String {
    let as_vec = |s: &std::collections::BTreeSet<u64>| s.iter().copied().collect::<Vec<_>>();
    let value = serde_json::json!({
        "n": n,
        "m_max": m_max,
        "threshold": threshold,
        "detected": as_vec(&report.detected),
        "missed": as_vec(&report.missed),
        "false_positives": as_vec(&report.false_positives),
        "contrast_v": report.contrast_v,
        "scan_size": report.scan_size,
        "resource_estimate_sqrt_n": report.resource_estimate,
    });
    format!("{value}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{TargetNumber, Truncation};
    use crate::scan::{scan, ScanConfig, ScanVariant};

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt_f64(-0.0), "0.000000000000");
        assert_eq!(fmt_f64(0.0), "0.000000000000");
        assert_eq!(fmt_f64(-1.0), "-1.000000000000");
        assert_eq!(fmt_f64(0.0854266), "0.085426600000");
    }

    #[test]
    fn pattern_csv_rows_are_bit_exact_for_factors() {
        let config = ScanConfig::new(
            TargetNumber::from(157573),
            Truncation::new(10),
            ScanVariant::AMagnitude,
        );
        let pattern = scan(&config).unwrap();
        let csv = pattern_csv(&pattern);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "ell,re,im,magnitude,is_factor");
        assert!(csv
            .lines()
            .any(|l| l == "17,1.000000000000,0.000000000000,1.000000000000,true"));
        assert_eq!(csv.lines().count(), 398);
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_mirrors_csv_columns() {
        let config = ScanConfig::new(
            TargetNumber::from(15),
            Truncation::new(5),
            ScanVariant::AMagnitude,
        );
        let pattern = scan(&config).unwrap();
        let json = pattern_json(&pattern);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["ell"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["is_factor"][2], serde_json::Value::Bool(true));
        let mag = parsed["magnitude"][2].as_f64().unwrap();
        assert!((mag - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trip_preserves_magnitudes() {
        let config = ScanConfig::new(
            TargetNumber::from(157573),
            Truncation::new(10),
            ScanVariant::AMagnitude,
        );
        let pattern = scan(&config).unwrap();
        let csv = pattern_csv(&pattern);
        for (line, rec) in csv.lines().skip(1).zip(pattern.records()) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5);
            assert_eq!(fields[0].parse::<u64>().unwrap(), rec.ell);
            let mag: f64 = fields[3].parse().unwrap();
            assert!((mag - rec.magnitude).abs() < 1e-11);
        }
    }
}
