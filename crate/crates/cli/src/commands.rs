use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use susyext::error::Error;
use susyext::extensions::ExtensionSpec;
use susyext::numerics::{default_grid, numeric_spectrum, Grid};
use susyext::potentials::{ConventionalParams, Family};
use susyext::special_functions::{
    brute_force_zero_count, count_zeros, is_admissible, is_nodeless, Interval, JacobiSpec,
};
use susyext::susy::{extended_wavefunction_value, superpotential_value};

use crate::args::{Format, GridArgs, SampleArgs, SampleKind, ScanArgs, SpecArgs, SpectrumArgs, ZerosArgs};
use crate::report::{assemble, RunReport, SectionBuilder};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    /// Violated constraints, one per line on standard error.
    Invalid(Vec<String>),
}

impl CliError {
    pub fn lines(&self) -> Vec<String> {
        match self {
            CliError::Usage(m) => vec![format!("error: {m}")],
            CliError::Invalid(v) => v.iter().map(|m| format!("invalid: {m}")).collect(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidExtension { report, .. } => CliError::Invalid(report.violations),
            Error::InvalidParameters { reason, .. } => CliError::Invalid(vec![reason]),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Data for the output stream plus an optional report.
pub struct CommandOutput {
    pub data: String,
    pub report: Option<RunReport>,
}

pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn family_slug(f: Family) -> &'static str {
    match f {
        Family::RosenMorseII => "rm2",
        Family::Eckart => "eckart",
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Model {
    Conventional(ConventionalParams),
    Extended(ExtensionSpec),
}

impl Model {
    pub fn from_args(args: &SpecArgs) -> Result<Self, CliError> {
        let family: Family = args.family.into();
        if args.ext {
            let t = args
                .ext_type
                .ok_or_else(|| CliError::Usage("--ext requires --type {I,II,III}".into()))?;
            let m = args.m.ok_or_else(|| CliError::Usage("--ext requires -m".into()))?;
            let spec = ExtensionSpec::new(family, t.into(), args.a, args.b, m);
            spec.ensure_valid()?;
            Ok(Model::Extended(spec))
        } else {
            if args.ext_type.is_some() || args.m.is_some() {
                return Err(CliError::Usage("--type and -m require --ext".into()));
            }
            Ok(Model::Conventional(ConventionalParams::new(family, args.a, args.b)?))
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Model::Conventional(p) => p.family(),
            Model::Extended(s) => s.family,
        }
    }

    pub fn potential(&self, x: f64) -> Result<f64, Error> {
        match self {
            Model::Conventional(p) => p.potential_value(x),
            Model::Extended(s) => s.extended_potential_value(x),
        }
    }

    pub fn levels(&self) -> Result<Vec<(i64, f64)>, Error> {
        Ok(match self {
            Model::Conventional(p) => p.energies().into_iter().enumerate().map(|(k, e)| (k as i64, e)).collect(),
            Model::Extended(s) => s.extended_energy_levels()?.into_iter().map(|l| (l.nu, l.energy)).collect(),
        })
    }

    pub fn threshold(&self) -> Result<f64, Error> {
        Ok(match self {
            Model::Conventional(p) => p.continuum_threshold(),
            Model::Extended(s) => s.conventional_partner()?.continuum_threshold(),
        })
    }

    pub fn wavefunction(&self, nu: i64, x: f64) -> Result<f64, Error> {
        match self {
            Model::Conventional(p) => p.wavefunction_value(nu, x),
            Model::Extended(s) => extended_wavefunction_value(s, nu, x),
        }
    }

    fn meta(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("family".into(), family_slug(self.family()).into());
        match self {
            Model::Conventional(p) => {
                m.insert("kind".into(), "conventional".into());
                m.insert("A".into(), p.a().to_string());
                m.insert("B".into(), p.b().to_string());
            }
            Model::Extended(s) => {
                m.insert("kind".into(), "extended".into());
                m.insert("A".into(), s.a.to_string());
                m.insert("B".into(), s.b.to_string());
                m.insert("m".into(), s.m.to_string());
                m.insert("type".into(), s.ext_type.to_string());
            }
        }
        m
    }
}

fn apply_overrides(base: Grid, o: &GridArgs) -> Result<Grid, CliError> {
    Grid::new(
        o.x_min.unwrap_or(base.x_min),
        o.x_max.unwrap_or(base.x_max),
        o.grid_points.unwrap_or(base.n_points),
    )
    .map_err(CliError::from)
}

#[derive(Serialize)]
struct GridMeta {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    spacing: f64,
}

impl From<Grid> for GridMeta {
    fn from(g: Grid) -> Self {
        Self {
            x_min: g.x_min,
            x_max: g.x_max,
            n_points: g.n_points,
            spacing: g.spacing(),
        }
    }
}

#[derive(Serialize)]
struct SpectrumRow {
    nu: i64,
    analytic_energy: f64,
    numeric_energy: Option<f64>,
    abs_error: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumMeta {
    parameters: BTreeMap<String, String>,
    grid: GridMeta,
    threshold: f64,
    tolerance: f64,
    /// Relative tolerance applied to levels with negative index.
    deep_state_relative_tolerance: f64,
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    meta: SpectrumMeta,
    rows: Vec<SpectrumRow>,
    report: &'a RunReport,
}

const DEEP_RELATIVE_TOLERANCE: f64 = 1e-2;

pub fn spectrum(args: &SpectrumArgs) -> Result<CommandOutput, CliError> {
    let model = Model::from_args(&args.spec)?;
    let levels = model.levels()?;
    let threshold = model.threshold()?;
    let deepest = levels.first().map(|l| l.1).unwrap_or(threshold - 1.0);
    let shallowest = levels.last().map(|l| l.1).unwrap_or(threshold - 1.0);
    let grid = apply_overrides(default_grid(model.family(), deepest, shallowest, threshold)?, &args.grid)?;
    for x in grid.interior() {
        model.potential(x)?;
    }
    let result = numeric_spectrum(|x| model.potential(x).unwrap_or(f64::NAN), &grid, threshold);
    let numeric = result?.energies;

    let mut section = SectionBuilder::new("spectrum");
    section.uses(&["numeric_spectrum", "default_grid"]);
    section.at_most(
        "numeric vs analytic bound-state count difference",
        (numeric.len() as f64 - levels.len() as f64).abs(),
        0.0,
    );
    let mut rows = Vec::new();
    for (i, &(nu, e)) in levels.iter().enumerate() {
        let n = numeric.get(i).copied();
        let err = n.map(|n| (n - e).abs());
        if nu < 0 {
            section.at_most(
                format!("level {nu} relative error"),
                err.map(|d| d / e.abs()).unwrap_or(f64::NAN),
                DEEP_RELATIVE_TOLERANCE,
            );
        } else {
            section.at_most(format!("level {nu} abs error"), err.unwrap_or(f64::NAN), args.tolerance);
        }
        rows.push(SpectrumRow {
            nu,
            analytic_energy: e,
            numeric_energy: n,
            abs_error: err,
        });
    }
    let parameters = model.meta();
    let report = assemble("spectrum".into(), parameters.clone(), vec![section]);

    let data = match args.output.format {
        Format::Csv => {
            let mut s = String::from("nu,analytic_energy,numeric_energy,abs_error\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.nu,
                    num(r.analytic_energy),
                    r.numeric_energy.map(num).unwrap_or_default(),
                    r.abs_error.map(num).unwrap_or_default()
                );
            }
            s
        }
        Format::Json => {
            let doc = SpectrumJson {
                meta: SpectrumMeta {
                    parameters,
                    grid: grid.into(),
                    threshold,
                    tolerance: args.tolerance,
                    deep_state_relative_tolerance: DEEP_RELATIVE_TOLERANCE,
                },
                rows,
                report: &report,
            };
            serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
        }
    };
    Ok(CommandOutput {
        data,
        report: Some(report),
    })
}

#[derive(Serialize)]
struct SampleRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<i64>,
    x: f64,
    value: f64,
}

#[derive(Serialize)]
struct SampleJson {
    meta: BTreeMap<String, String>,
    rows: Vec<SampleRow>,
}

pub fn sample(args: &SampleArgs) -> Result<CommandOutput, CliError> {
    let model = Model::from_args(&args.spec)?;
    let xs = if args.x.is_empty() {
        let base = match model.family() {
            Family::RosenMorseII => Grid::new(-10.0, 10.0, 199)?,
            Family::Eckart => Grid::new(0.05, 10.0, 199)?,
        };
        apply_overrides(base, &args.grid)?.nodes()
    } else {
        args.x.clone()
    };
    let mut rows = Vec::new();
    match args.what {
        SampleKind::Potential => {
            for &x in &xs {
                rows.push(SampleRow {
                    nu: None,
                    x,
                    value: model.potential(x)?,
                });
            }
        }
        SampleKind::Superpotential => {
            let Model::Extended(spec) = model else {
                return Err(CliError::Usage("superpotential sampling requires --ext".into()));
            };
            for &x in &xs {
                rows.push(SampleRow {
                    nu: None,
                    x,
                    value: superpotential_value(&spec, x)?,
                });
            }
        }
        SampleKind::Wavefunction => {
            let all: Vec<i64> = model.levels()?.into_iter().map(|l| l.0).collect();
            let selected = match args.nu {
                Some(nu) if all.contains(&nu) => vec![nu],
                Some(nu) => {
                    return Err(CliError::Usage(format!("level {nu} is not a bound state; levels are {all:?}")))
                }
                None => all,
            };
            for nu in selected {
                for &x in &xs {
                    rows.push(SampleRow {
                        nu: Some(nu),
                        x,
                        value: model.wavefunction(nu, x)?,
                    });
                }
            }
        }
    }
    let data = match args.output.format {
        Format::Csv => {
            let with_nu = args.what == SampleKind::Wavefunction;
            let mut s = String::from(if with_nu { "nu,x,value\n" } else { "x,value\n" });
            for r in &rows {
                if let Some(nu) = r.nu {
                    let _ = write!(s, "{nu},");
                }
                let _ = writeln!(s, "{},{}", num(r.x), num(r.value));
            }
            s
        }
        Format::Json => {
            let mut meta = model.meta();
            let what = match args.what {
                SampleKind::Potential => "potential",
                SampleKind::Wavefunction => "wavefunction",
                SampleKind::Superpotential => "superpotential",
            };
            meta.insert("sample".into(), what.into());
            serde_json::to_string_pretty(&SampleJson { meta, rows }).expect("serializes") + "\n"
        }
    };
    Ok(CommandOutput { data, report: None })
}

pub fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("malformed range {text:?}; expected LO:HI with finite LO <= HI"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo.is_finite() && hi.is_finite() && lo <= hi {
        Ok((lo, hi))
    } else {
        Err(bad())
    }
}

#[derive(Serialize)]
struct ScanRow {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    valid: bool,
    bound_state_count: usize,
}

pub fn scan(args: &ScanArgs) -> Result<CommandOutput, CliError> {
    let (a_lo, a_hi) = parse_range(&args.a_range)?;
    let (b_lo, b_hi) = parse_range(&args.b_range)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let at = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / args.steps as f64;
    let mut rows = Vec::new();
    for i in 0..=args.steps {
        for j in 0..=args.steps {
            let spec = ExtensionSpec::new(
                args.family.into(),
                args.ext_type.into(),
                at(a_lo, a_hi, i),
                at(b_lo, b_hi, j),
                args.m,
            );
            let valid = spec.validate().is_ok();
            let count = if valid {
                spec.extended_energy_levels().map(|l| l.len()).unwrap_or(0)
            } else {
                0
            };
            rows.push(ScanRow {
                a: spec.a,
                b: spec.b,
                valid,
                bound_state_count: count,
            });
        }
    }
    let data = match args.output.format {
        Format::Csv => {
            let mut s = String::from("A,B,valid,bound_state_count\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", num(r.a), num(r.b), r.valid, r.bound_state_count);
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializes") + "\n",
    };
    Ok(CommandOutput { data, report: None })
}

#[derive(Serialize)]
struct ZerosRow {
    interval: &'static str,
    count_zeros: usize,
    brute_force_zero_count: usize,
    nodeless: bool,
}

pub fn zeros(args: &ZerosArgs) -> Result<CommandOutput, CliError> {
    let spec = JacobiSpec::new(args.n, args.alpha, args.beta);
    if !is_admissible(spec) {
        return Err(CliError::Invalid(vec![Error::InadmissibleParameters(spec).to_string()]));
    }
    if args.resolution < 2 {
        return Err(CliError::Usage("--resolution must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for (interval, label) in [(Interval::MinusOneToOne, "minus-one-to-one"), (Interval::OneToInfinity, "one-to-infinity")] {
        rows.push(ZerosRow {
            interval: label,
            count_zeros: count_zeros(spec, interval)?,
            brute_force_zero_count: brute_force_zero_count(spec, interval, args.resolution),
            nodeless: is_nodeless(spec, interval)?,
        });
    }
    let data = match args.output.format {
        Format::Csv => {
            let mut s = String::from("interval,count_zeros,brute_force_zero_count,nodeless\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.interval, r.count_zeros, r.brute_force_zero_count, r.nodeless
                );
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializes") + "\n",
    };
    Ok(CommandOutput { data, report: None })
}
