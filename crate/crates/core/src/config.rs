//! Flat `key = value` run configuration.
//!
//! UTF-8 text, one assignment per line, `#` comments.  Numeric inputs are
//! exact rationals written `p/q` (or plain integers).  Unknown keys are
//! rejected so that typos cannot silently fall back to defaults.

use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::arcs::AnalyticArc;
use crate::census::CensusMode;
use crate::error::Error;
use crate::rational::BigRational;
use crate::series::rational_to_f64;
use crate::Result;

/// Built-in arc families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcKind {
    Line,
    Parabola,
    ExpGraph,
}

impl ArcKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArcKind::Line => "line",
            ArcKind::Parabola => "parabola",
            ArcKind::ExpGraph => "exp",
        }
    }
}

/// Validated run configuration with the raw assignments retained for the
/// report echo.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub arc: ArcKind,
    pub r: BigRational,
    pub r_max: BigRational,
    pub t_grid: Vec<BigRational>,
    pub mode: CensusMode,
    pub seed: u64,
    pub degree: u32,
    pub c1: BigRational,
    pub c2: BigRational,
    pub gamma: BigRational,
    pub epsilon: BigRational,
    pub wideness: BigRational,
    pub entries: BTreeMap<String, String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            arc: ArcKind::Parabola,
            r: rational(9, 10),
            r_max: rational(2, 1),
            t_grid: vec![rational(0, 1), rational(1, 1), rational(2, 1)],
            mode: CensusMode::Parametric,
            seed: 42,
            degree: 2,
            c1: rational(10, 1),
            c2: rational(1, 2),
            gamma: rational(3, 1),
            epsilon: rational(1, 10),
            wideness: rational(2, 1),
            entries: BTreeMap::new(),
        }
    }
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn parse_rational(key: &str, raw: &str) -> Result<BigRational> {
    let mk_err = || Error::Config(format!("key '{key}': expected a rational p/q, got '{raw}'"));
    let (num, den) = match raw.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (raw.trim(), "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| mk_err())?;
    let d = BigInt::from_str(den).map_err(|_| mk_err())?;
    if d == BigInt::from(0) {
        return Err(Error::Config(format!("key '{key}': zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

impl RunConfig {
    /// Parses and validates the flat text format.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected 'key = value', got '{line}'",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            cfg.entries.insert(key.to_string(), value.to_string());
            match key {
                "arc" => {
                    cfg.arc = match value {
                        "line" => ArcKind::Line,
                        "parabola" => ArcKind::Parabola,
                        "exp" => ArcKind::ExpGraph,
                        other => {
                            return Err(Error::Config(format!(
                                "key 'arc': unknown family '{other}' (line, parabola, exp)"
                            )))
                        }
                    }
                }
                "r" => cfg.r = parse_rational(key, value)?,
                "r_max" => cfg.r_max = parse_rational(key, value)?,
                "t_grid" => {
                    cfg.t_grid = value
                        .split(',')
                        .map(|v| parse_rational(key, v.trim()))
                        .collect::<Result<Vec<_>>>()?;
                }
                "mode" => {
                    cfg.mode = match value {
                        "parametric" => CensusMode::Parametric,
                        "oracle" => CensusMode::Oracle,
                        other => {
                            return Err(Error::Config(format!(
                                "key 'mode': expected parametric or oracle, got '{other}'"
                            )))
                        }
                    }
                }
                "seed" => {
                    cfg.seed = value.parse().map_err(|_| {
                        Error::Config(format!("key 'seed': expected an unsigned integer, got '{value}'"))
                    })?
                }
                "degree" => {
                    cfg.degree = value.parse().map_err(|_| {
                        Error::Config(format!("key 'degree': expected a small integer, got '{value}'"))
                    })?
                }
                "c1" => cfg.c1 = parse_rational(key, value)?,
                "c2" => cfg.c2 = parse_rational(key, value)?,
                "gamma" => cfg.gamma = parse_rational(key, value)?,
                "epsilon" => cfg.epsilon = parse_rational(key, value)?,
                "wideness" => cfg.wideness = parse_rational(key, value)?,
                other => {
                    return Err(Error::Config(format!("unknown key '{other}'")));
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        RunConfig::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        let r = rational_to_f64(&self.r);
        let r_max = rational_to_f64(&self.r_max);
        if !(0.0 < r && r < r_max) {
            return Err(Error::Config(format!(
                "need 0 < r < r_max, got r = {r}, r_max = {r_max}"
            )));
        }
        let mut prev = f64::NEG_INFINITY;
        for t in &self.t_grid {
            let t = rational_to_f64(t);
            if t < 0.0 {
                return Err(Error::Config(format!("t_grid entries must be >= 0, got {t}")));
            }
            if t < prev {
                return Err(Error::Config("t_grid must be ascending".into()));
            }
            prev = t;
        }
        if self.t_grid.is_empty() {
            return Err(Error::Config("t_grid must be nonempty".into()));
        }
        Ok(())
    }

    /// Instantiates the configured arc family.
    pub fn build_arc(&self) -> AnalyticArc {
        let r_max = rational_to_f64(&self.r_max);
        match self.arc {
            ArcKind::Line => AnalyticArc::line(r_max),
            ArcKind::Parabola => AnalyticArc::parabola(r_max),
            ArcKind::ExpGraph => AnalyticArc::exp_graph(r_max),
        }
    }

    pub fn r_f64(&self) -> f64 {
        rational_to_f64(&self.r)
    }

    pub fn t_grid_f64(&self) -> Vec<f64> {
        self.t_grid.iter().map(rational_to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = RunConfig::parse(
            "# census run\n\
             arc = exp\n\
             r = 9/10\n\
             r_max = 19/20\n\
             t_grid = 0, 1/2, 1, 3/2\n\
             mode = parametric\n\
             seed = 7\n\
             degree = 3\n",
        )
        .unwrap();
        assert_eq!(cfg.arc, ArcKind::ExpGraph);
        assert_eq!(cfg.r, rational(9, 10));
        assert_eq!(cfg.t_grid.len(), 4);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.entries["arc"], "exp");
    }

    #[test]
    fn rejects_unknown_key() {
        let err = RunConfig::parse("radius = 1/2\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn rejects_bad_rational() {
        assert!(RunConfig::parse("r = 0.9\n").is_err());
        assert!(RunConfig::parse("r = 1/0\n").is_err());
    }

    #[test]
    fn rejects_inconsistent_radii() {
        assert!(RunConfig::parse("r = 3/2\nr_max = 1\n").is_err());
    }

    #[test]
    fn rejects_descending_grid() {
        assert!(RunConfig::parse("t_grid = 2, 1\n").is_err());
    }

    #[test]
    fn default_roundtrip_builds_arc() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.build_arc().dimension(), 2);
    }
}
