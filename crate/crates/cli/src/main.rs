//! Command line driver: census pipelines, analytic checks, and report
//! emission.
//!
//! Exit codes: 0 success, 1 failed check or computation error, 2 usage or
//! configuration error (including unwritable outputs).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;

use arc_census::bloch::{exceptional_area, Rect, RootConfig};
use arc_census::census::{
    bombieri_pila_experiment, census, census_curve, rare_interval_scan,
};
use arc_census::config::RunConfig;
use arc_census::dioph::{liouville_check, type_s_scan};
use arc_census::disk::count_zeros;
use arc_census::error::Error;
use arc_census::foliage::{exponential_field, jet_denominator_check, leaf_series, ord_along_leaf};
use arc_census::multipoly::MultiPoly;
use arc_census::rational::{BigRational, ProjectivePointQ};
use arc_census::report::{
    bundle_json, cert_json, csv_report, curve_json, json_to_string, write_text,
};
use arc_census::section::SectionPoly;
use arc_census::series::rational_to_f64;
use arc_census::siegel::{siegel_bound_report, vanish_section};

#[derive(Parser)]
#[command(name = "arc-census", version, about = "Rational point census on analytic arcs")]
struct Cli {
    /// Path to a flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed override for randomized subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker count (accepted for compatibility; execution is serial).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Census of rational points of bounded height on the configured arc.
    Census,
    /// Cell-cover auxiliary-section experiment over the census.
    BpExperiment,
    /// Auxiliary polynomial vanishing at explicit points.
    Auxpoly {
        /// Point as comma-separated integers, repeatable: -p 1,2 -p 0,1
        #[arg(short, long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(short, long)]
        degree: u32,
    },
    /// Argument-principle zero count of an integer polynomial in a disk.
    Zeros {
        /// Coefficients c0,c1,… of c0 + c1 z + …
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Disk radius as a rational p/q.
        #[arg(long)]
        radius: String,
    },
    /// Liouville lower-bound check of a section at a rational point.
    Liouville {
        /// Point as comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Dense coefficient list of the binary form, highest X power first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        degree: u32,
    },
    /// Monte-Carlo area of the small-product exceptional set.
    BlochCartan {
        /// Roots as semicolon-separated re,im pairs.
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        /// Radius budget H as a rational p/q.
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Formal leaf of a preset vector field with order checks.
    Leaf {
        #[arg(long, value_enum, default_value_t = LeafPreset::Exp)]
        preset: LeafPreset,
        #[arg(long, default_value_t = 40)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        jet_depth: usize,
    },
    /// Exhaustive type-S ratio scan over small integer sections.
    ScanS {
        /// Sample parameters as semicolon-separated re,im pairs.
        #[arg(long, allow_hyphen_values = true)]
        samples: String,
        /// Exponent a as a rational p/q.
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 2)]
        d_max: u32,
        #[arg(long, default_value_t = 2)]
        coeff_height: i64,
    },
    /// Maximal T-intervals where the census curve is epsilon·T^gamma rare.
    RareIntervals,
    /// Full census report bundle (records, curve, config echo).
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum LeafPreset {
    /// Field (1, y): leaf (t, e^t) through (0, 1).
    Exp,
    /// Field (1, 2x): leaf (t, t²) through the origin.
    Parabola,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version print and exit 0; real parse errors are usage
            // errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    Usage(String),
    Check(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Io(_) | Error::InfeasibleRange(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Check(other.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let seed = cli.seed.unwrap_or(cfg.seed);
    match &cli.command {
        Command::Census | Command::Report => {
            let arc = cfg.build_arc();
            let grid = cfg.t_grid_f64();
            let arc_id = cfg.arc.as_str();
            let curve = census_curve(&arc, arc_id, cfg.r_f64(), &grid)?;
            let output = match cli.format {
                Format::Csv => csv_report(&curve, seed),
                Format::Json => {
                    let last = census(&arc, cfg.r_f64(), *grid.last().expect("validated grid"))?;
                    let bundle = bundle_json(&cfg.entries, &last.records, &[curve], &[], &[]);
                    json_to_string(&bundle)
                }
            };
            emit(cli.out.as_deref(), &output)
        }
        Command::BpExperiment => {
            require_json(cli.format)?;
            let arc = cfg.build_arc();
            let t = *cfg.t_grid_f64().last().expect("validated grid");
            let rep = bombieri_pila_experiment(
                &arc,
                cfg.r_f64(),
                t,
                cfg.degree,
                rational_to_f64(&cfg.c1),
                rational_to_f64(&cfg.c2),
            )?;
            let certs: Vec<serde_json::Value> =
                rep.occupied.iter().map(|c| cert_json(&c.cert)).collect();
            let out = json_to_string(&serde_json::json!({
                "cell_diameter": rep.cell_diameter,
                "cells_per_side": rep.cells_per_side,
                "degree": rep.degree,
                "occupied_cells": rep.occupied.len(),
                "max_log_coeff": rep.max_log_coeff,
                "zero_bound": rep.zero_bound,
                "certificates": certs,
            }));
            emit(cli.out.as_deref(), &out)
        }
        Command::Auxpoly { points, degree } => {
            require_json(cli.format)?;
            let pts: Vec<ProjectivePointQ> = points
                .iter()
                .map(|raw| parse_point(raw))
                .collect::<Result<_, _>>()?;
            let n = pts
                .first()
                .map(|p| p.dimension())
                .ok_or_else(|| CliError::Usage("at least one point required".into()))?;
            let cert = vanish_section(&pts, n, *degree)?;
            let t_max = cert.max_point_height;
            let ratio = siegel_bound_report(&cert, t_max);
            let out = json_to_string(&serde_json::json!({
                "certificate": cert_json(&cert),
                "ratio": ratio.ratio,
            }));
            emit(cli.out.as_deref(), &out)
        }
        Command::Zeros { coeffs, radius } => {
            require_json(cli.format)?;
            let c: Vec<f64> = parse_i64_list(coeffs)?.into_iter().map(|x| x as f64).collect();
            if c.iter().all(|&x| x == 0.0) {
                return Err(CliError::Usage("polynomial must be nonzero".into()));
            }
            let r = parse_rational_arg(radius)?;
            let f = move |z: Complex64| {
                let mut acc = Complex64::new(0.0, 0.0);
                for ck in c.iter().rev() {
                    acc = acc * z + ck;
                }
                acc
            };
            let rep = count_zeros(&f, r)?;
            let out = json_to_string(&serde_json::json!({
                "count": rep.count,
                "residual": rep.residual,
                "radius": rep.radius,
            }));
            emit(cli.out.as_deref(), &out)
        }
        Command::Liouville {
            point,
            coeffs,
            degree,
        } => {
            require_json(cli.format)?;
            let p = parse_point(point)?;
            let c: Vec<BigInt> = parse_i64_list(coeffs)?.into_iter().map(BigInt::from).collect();
            if c.len() != *degree as usize + 1 {
                return Err(CliError::Usage(format!(
                    "degree {degree} needs {} coefficients, got {}",
                    degree + 1,
                    c.len()
                )));
            }
            let s = SectionPoly::from_p1_coeffs(*degree, &c);
            let rep = liouville_check(&s, &p)?;
            let out = json_to_string(&serde_json::json!({
                "point": rep.point.to_string(),
                "degree": rep.degree,
                "log_norm": rep.log_norm,
                "bound": rep.bound,
                "margin": rep.margin,
            }));
            if rep.margin < 0.0 {
                return Err(CliError::Check("Liouville margin negative".into()));
            }
            emit(cli.out.as_deref(), &out)
        }
        Command::BlochCartan { roots, h, samples } => {
            require_json(cli.format)?;
            let roots = parse_complex_list(roots)?;
            let h = parse_rational_arg(h)?;
            let span = roots
                .iter()
                .flat_map(|z| [z.re.abs(), z.im.abs()])
                .fold(1.0, f64::max)
                + h
                + 1.0;
            let rect = Rect::new(Complex64::new(-span, -span), Complex64::new(span, span));
            let est = exceptional_area(&RootConfig::new(roots, h), rect, *samples, seed)?;
            let out = json_to_string(&serde_json::json!({
                "area": est.value,
                "std_error": est.std_error,
                "bound": est.bound,
                "pass": est.pass,
                "seed": est.seed,
                "samples": est.samples,
            }));
            if !est.pass {
                return Err(CliError::Check("area exceeds the Bloch-Cartan bound".into()));
            }
            emit(cli.out.as_deref(), &out)
        }
        Command::Leaf {
            preset,
            order,
            jet_depth,
        } => {
            require_json(cli.format)?;
            let (field, base) = match preset {
                LeafPreset::Exp => (
                    exponential_field(),
                    vec![BigRational::from_integer(0.into()), BigRational::from_integer(1.into())],
                ),
                LeafPreset::Parabola => {
                    let two_x = MultiPoly::variable(2, 0)
                        .scale(&BigRational::from_integer(2.into()));
                    (
                        arc_census::foliage::VectorFieldQ::new(vec![
                            MultiPoly::constant(2, BigRational::from_integer(1.into())),
                            two_x,
                        ]),
                        vec![BigRational::from_integer(0.into()), BigRational::from_integer(0.into())],
                    )
                }
            };
            let leaf = leaf_series(&field, &base, *order)?;
            let residual_zero = leaf.ode_residual().iter().all(|r| r.is_zero());
            // Tangent-line order along the leaf as a standing example.
            let q = match preset {
                LeafPreset::Exp => MultiPoly::new(
                    2,
                    [
                        (vec![0, 1], BigRational::from_integer(1.into())),
                        (vec![0, 0], BigRational::from_integer((-1).into())),
                        (vec![1, 0], BigRational::from_integer((-1).into())),
                    ]
                    .into_iter()
                    .collect(),
                ),
                LeafPreset::Parabola => MultiPoly::variable(2, 1),
            };
            let ord = ord_along_leaf(&q, &leaf)?;
            let jet = jet_denominator_check(&leaf, &q, (*jet_depth).min(*order))?;
            let out = json_to_string(&serde_json::json!({
                "truncation": leaf.truncation(),
                "ode_residual_zero": residual_zero,
                "sample_order": ord.order,
                "sample_leading": ord.leading.to_string(),
                "jet_minimal_c": jet.minimal_c.to_string(),
                "series": leaf
                    .series()
                    .iter()
                    .map(|s| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }));
            if !residual_zero {
                return Err(CliError::Check("leaf ODE residual nonzero".into()));
            }
            emit(cli.out.as_deref(), &out)
        }
        Command::ScanS {
            samples,
            a,
            d_max,
            coeff_height,
        } => {
            require_json(cli.format)?;
            let arc = cfg.build_arc();
            let b = parse_complex_list(samples)?;
            let a = parse_rational_arg(a)?;
            let rep = type_s_scan(&arc, &b, a, *d_max, *coeff_height)?;
            let out = json_to_string(&serde_json::json!({
                "samples": rep.sample_count,
                "a": rep.a,
                "d_max": rep.d_max,
                "coeff_height": rep.coeff_height,
                "worst_ratio": rep.worst_ratio,
                "excluded": rep.excluded,
                "witness": rep.witness.as_ref().map(|w| w
                    .to_dense()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()),
                "note": "no violation up to (d_max, coeff_height); finite evidence only",
            }));
            emit(cli.out.as_deref(), &out)
        }
        Command::RareIntervals => {
            require_json(cli.format)?;
            let arc = cfg.build_arc();
            let curve = census_curve(&arc, cfg.arc.as_str(), cfg.r_f64(), &cfg.t_grid_f64())?;
            let rep = rare_interval_scan(
                &curve,
                rational_to_f64(&cfg.gamma),
                rational_to_f64(&cfg.epsilon),
                rational_to_f64(&cfg.wideness),
            )?;
            let out = json_to_string(&serde_json::json!({
                "gamma": rep.gamma,
                "epsilon": rep.epsilon,
                "wideness_factor": rep.wideness_factor,
                "hypothesis_met": rep.hypothesis_met,
                "curve": curve_json(&curve),
                "intervals": rep
                    .intervals
                    .iter()
                    .map(|iv| {
                        serde_json::json!({
                            "t_lo": iv.t_lo,
                            "t_hi": iv.t_hi,
                            "geometrically_wide": iv.geometrically_wide,
                        })
                    })
                    .collect::<Vec<_>>(),
            }));
            emit(cli.out.as_deref(), &out)
        }
    }
}

fn require_json(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(
            "csv output is only available for census/report; use --format json".into(),
        ));
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_text(path, text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_point(raw: &str) -> Result<ProjectivePointQ, CliError> {
    let ints: Vec<BigInt> = parse_i64_list(raw)?.into_iter().map(BigInt::from).collect();
    ProjectivePointQ::normalize_ints(&ints).map_err(CliError::from)
}

fn parse_i64_list(raw: &str) -> Result<Vec<i64>, CliError> {
    raw.split(',')
        .map(|x| {
            i64::from_str(x.trim())
                .map_err(|_| CliError::Usage(format!("expected an integer list, got '{raw}'")))
        })
        .collect()
}

fn parse_complex_list(raw: &str) -> Result<Vec<Complex64>, CliError> {
    raw.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(CliError::Usage(format!(
                    "expected re,im pairs separated by ';', got '{raw}'"
                )));
            }
            let re = parse_rational_arg(parts[0])?;
            let im = parse_rational_arg(parts[1])?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

fn parse_rational_arg(raw: &str) -> Result<f64, CliError> {
    let (num, den) = match raw.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (raw.trim(), "1"),
    };
    let n = i64::from_str(num)
        .map_err(|_| CliError::Usage(format!("expected a rational p/q, got '{raw}'")))?;
    let d = i64::from_str(den)
        .map_err(|_| CliError::Usage(format!("expected a rational p/q, got '{raw}'")))?;
    if d == 0 {
        return Err(CliError::Usage("zero denominator".into()));
    }
    Ok(n as f64 / d as f64)
}
