//! Deterministic CSV and JSON report emission.
//!
//! Identical inputs serialize to byte-identical output: the JSON map is
//! ordered, floats print in shortest round-trip form, and all collections
//! are emitted in a canonical order.

use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;

use crate::census::{CensusCurve, CensusRecord, CensusResult};
use crate::rational::BigRational;
use crate::siegel::AuxSectionCert;
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// A named pass/fail outcome carried into the `checks` array.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// CSV with the fixed column order T, A_U, mode, arc_id, r, seed.
pub fn csv_report(curve: &CensusCurve, seed: u64) -> String {
    let mut out = String::from("T,A_U,mode,arc_id,r,seed\n");
    for (t, count) in curve.t_grid.iter().zip(&curve.counts) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            t,
            count,
            curve.mode.as_str(),
            curve.arc_id,
            curve.r,
            seed
        ));
    }
    out
}

pub fn record_json(rec: &CensusRecord) -> Value {
    json!({
        "parameter": rec.parameter.as_ref().map(fmt_rational),
        "point": rec.point.to_string(),
        "height": rec.height,
    })
}

pub fn result_json(res: &CensusResult) -> Value {
    json!({
        "t": res.t,
        "r": res.r,
        "mode": res.mode.as_str(),
        "count_lower": res.count_lower(),
        "count_upper": res.count_upper(),
        "indeterminate": res.indeterminate.iter().map(fmt_rational).collect::<Vec<_>>(),
        "records": res.records.iter().map(record_json).collect::<Vec<_>>(),
    })
}

pub fn curve_json(curve: &CensusCurve) -> Value {
    json!({
        "arc_id": curve.arc_id,
        "dimension": curve.dimension,
        "r": curve.r,
        "mode": curve.mode.as_str(),
        "t_grid": curve.t_grid,
        "counts": curve.counts,
    })
}

pub fn cert_json(cert: &AuxSectionCert) -> Value {
    json!({
        "degree": cert.section.degree(),
        "coefficients": cert.section.to_dense().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "log_max_coeff": cert.log_max_coeff,
        "point_count": cert.point_count,
        "h0": cert.h0,
        "max_point_height": cert.max_point_height,
    })
}

pub fn check_json(check: &CheckOutcome) -> Value {
    json!({
        "name": check.name,
        "pass": check.pass,
        "detail": check.detail,
    })
}

/// The versioned top-level report document.
pub fn bundle_json(
    config_echo: &BTreeMap<String, String>,
    records: &[CensusRecord],
    curves: &[CensusCurve],
    certificates: &[AuxSectionCert],
    checks: &[CheckOutcome],
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "config_echo": config_echo,
        "records": records.iter().map(record_json).collect::<Vec<_>>(),
        "curves": curves.iter().map(curve_json).collect::<Vec<_>>(),
        "certificates": certificates.iter().map(cert_json).collect::<Vec<_>>(),
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}

pub fn json_to_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

/// Writes the report text; IO failures surface as errors for the CLI to
/// map to its usage exit code.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::AnalyticArc;
    use crate::census::{census, census_curve};
    use crate::rational::ProjectivePointQ;
    use crate::siegel::vanish_section;
    use num_bigint::BigInt;

    #[test]
    fn csv_has_fixed_header_and_rows() {
        let arc = AnalyticArc::parabola(2.0);
        let curve = census_curve(&arc, "parabola", 1.0, &[0.0, 4f64.ln()]).unwrap();
        let csv = csv_report(&curve, 42);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "T,A_U,mode,arc_id,r,seed");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("1.3862943611198906,3,parametric,parabola,1,42"));
    }

    #[test]
    fn empty_curve_is_header_only() {
        let curve = CensusCurve {
            arc_id: "x".into(),
            dimension: 1,
            r: 0.5,
            mode: crate::census::CensusMode::Parametric,
            t_grid: vec![],
            counts: vec![],
        };
        assert_eq!(csv_report(&curve, 1), "T,A_U,mode,arc_id,r,seed\n");
    }

    #[test]
    fn bundle_is_deterministic() {
        let arc = AnalyticArc::parabola(2.0);
        let res = census(&arc, 1.0, 4f64.ln()).unwrap();
        let pts: Vec<ProjectivePointQ> = res.records.iter().map(|r| r.point.clone()).collect();
        let cert = vanish_section(&pts, 2, 2).unwrap();
        let mut echo = BTreeMap::new();
        echo.insert("arc".to_string(), "parabola".to_string());
        let a = json_to_string(&bundle_json(&echo, &res.records, &[], &[cert.clone()], &[]));
        let b = json_to_string(&bundle_json(&echo, &res.records, &[], &[cert], &[]));
        assert_eq!(a, b);
        assert!(a.contains("\"schema_version\": 1"));
    }

    #[test]
    fn empty_bundle_valid() {
        let echo = BTreeMap::new();
        let v = bundle_json(&echo, &[], &[], &[], &[]);
        assert_eq!(v["records"].as_array().unwrap().len(), 0);
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn unwritable_path_errors() {
        let err = write_text(Path::new("/nonexistent-dir/report.json"), "x").unwrap_err();
        assert!(matches!(err, crate::error::Error::Io(_)));
        let _ = BigInt::from(1);
    }
}
