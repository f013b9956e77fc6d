//! Command-line front end: JSON run configs in, CSV or JSON tables out.
//!
//! ```text
//! photon-fusion predict --config <path>
//! photon-fusion scan    --config <path> --delta <min,max,n> --beta <min,max,n>
//! photon-fusion curve   --config <path> --kind signal|limit --delta <min,max,n>
//! photon-fusion compare --fusion <path> --axion <path> --length <min,max,n>
//! ```
//!
//! Every subcommand also takes `--output <path>` and `--format csv|json`.
//! `--delta` and `--beta` grids are log-spaced, `--length` is linear.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::axion::{oscillation_scaling_report, to_model_params, AxionParams, CompareRow, DictionaryConvention};
use crate::constants::qed_reference_birefringence;
use crate::dynamics::{ModelParams, Observables};
use crate::error::{Error, Result};
use crate::exclusion::{grid_scan, limit_curve, signal_curve, CurvePoint, ExperimentConfig, ScanRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Signal,
    Limit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSpec {
    Fusion(ModelParams<f64>),
    Axion(AxionParams<f64>),
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Fusion(p) => p.validate(),
            ModelSpec::Axion(a) => a.validate(),
        }
    }

    /// Composite-photon parameters, converting an ALP point with the matched dictionary.
    pub fn model_params(&self) -> ModelParams<f64> {
        match self {
            ModelSpec::Fusion(p) => *p,
            ModelSpec::Axion(a) => to_model_params(a, &DictionaryConvention::matched()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: ExperimentConfig<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    /// Free-form notes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.experiment.validate()?;
        if let Some(m) = &cfg.model {
            m.validate()?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
    }
}

/// `min,max,count` grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(format!("expected `min,max,count`, got `{s}`"));
        };
        let min: f64 = min.parse().map_err(|_| format!("bad grid minimum `{min}`"))?;
        let max: f64 = max.parse().map_err(|_| format!("bad grid maximum `{max}`"))?;
        let count: i64 = count.parse().map_err(|_| format!("bad grid count `{count}`"))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        if min >= max {
            return Err(format!("grid minimum {min} must be below maximum {max}"));
        }
        if count < 1 {
            return Err(format!("grid count {count} must be at least 1"));
        }
        Ok(Self {
            min,
            max,
            count: count as usize,
        })
    }
}

impl GridSpec {
    pub fn linear(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 })
            .collect()
    }

    pub fn log(&self, flag: &str) -> Result<Vec<f64>> {
        if self.min <= 0.0 {
            return Err(Error::Usage(format!("--{flag}: log-spaced grid needs a positive minimum")));
        }
        if self.count == 1 {
            return Ok(vec![self.min]);
        }
        let (a, b) = (self.min.log10(), self.max.log10());
        let step = (b - a) / (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| match i {
                0 => self.min,
                i if i + 1 == self.count => self.max,
                i => 10f64.powf(a + step * i as f64),
            })
            .collect())
    }
}

#[derive(Debug, Parser)]
#[command(name = "photon-fusion", version, about = "Magnetically induced vacuum dichroism and birefringence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Observables of one model point in one experiment.
    Predict {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rotation, ellipticity and birefringence over a (Δ, β) grid.
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// Log-spaced Δ grid in eV: min,max,count
        #[arg(long, allow_hyphen_values = true)]
        delta: GridSpec,
        /// Log-spaced β grid: min,max,count
        #[arg(long, allow_hyphen_values = true)]
        beta: GridSpec,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Signal or limit curve in the (Δ, β) plane.
    Curve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        kind: CurveKind,
        /// Log-spaced Δ grid in eV: min,max,count
        #[arg(long, allow_hyphen_values = true)]
        delta: GridSpec,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// P(L) of the composite-photon and ALP models at two photon energies.
    Compare {
        #[arg(long)]
        fusion: PathBuf,
        #[arg(long)]
        axion: PathBuf,
        /// Field length grid in m: min,max,count
        #[arg(long, allow_hyphen_values = true)]
        length: GridSpec,
        /// Second photon energy as a multiple of the configured one.
        #[arg(long, default_value_t = 2.0)]
        omega_ratio: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Scientific notation with 9 significant digits and a signed, at least
/// two-digit exponent, e.g. `1.00000000e-03`.
pub fn sci9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.8e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictRecord {
    #[serde(flatten)]
    pub observables: Observables<f64>,
    pub qed_birefringence: f64,
}

pub const PREDICT_HEADER: &str =
    "p_conversion,rotation_rad,phase_diff_rad,ellipticity_rad,birefringence,qed_birefringence";
pub const SCAN_HEADER: &str = "delta_ev,beta,rotation_rad,ellipticity_rad,birefringence";
pub const CURVE_HEADER: &str = "delta_ev,beta,node_flag";
pub const COMPARE_HEADER: &str =
    "length_m,p_fusion_omega1,p_fusion_omega2,p_alp_omega1,p_alp_omega2";

fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn predict(cfg: &RunConfig, format: Format) -> Result<String> {
    let model = cfg
        .model
        .as_ref()
        .ok_or_else(|| Error::Usage("predict needs a `model` entry in the config".into()))?;
    let record = PredictRecord {
        observables: cfg.experiment.observables(&model.model_params())?,
        qed_birefringence: qed_reference_birefringence(cfg.experiment.b_tesla),
    };
    match format {
        Format::Json => to_json(&record),
        Format::Csv => {
            // shortest round-trip representation, unlike the fixed-width tables
            let o = record.observables;
            Ok(format!(
                "{PREDICT_HEADER}\n{:e},{:e},{:e},{:e},{:e},{:e}\n",
                o.p_conversion,
                o.rotation,
                o.phase_diff,
                o.ellipticity,
                o.birefringence,
                record.qed_birefringence
            ))
        }
    }
}

pub fn scan(cfg: &RunConfig, delta: &GridSpec, beta: &GridSpec, format: Format) -> Result<String> {
    let rows = grid_scan(&cfg.experiment, &delta.log("delta")?, &beta.log("beta")?)?;
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => Ok(render_scan_csv(&rows)),
    }
}

pub fn render_scan_csv(rows: &[ScanRow<f64>]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(SCAN_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            sci9(r.delta_ev),
            sci9(r.beta),
            sci9(r.rotation_rad),
            sci9(r.ellipticity_rad),
            sci9(r.birefringence)
        );
    }
    s
}

pub fn curve(cfg: &RunConfig, kind: CurveKind, delta: &GridSpec, format: Format) -> Result<String> {
    let grid = delta.log("delta")?;
    let points = match kind {
        CurveKind::Signal => signal_curve(&cfg.experiment, &grid)?,
        CurveKind::Limit => limit_curve(&cfg.experiment, &grid)?,
    };
    match format {
        Format::Json => to_json(&points),
        Format::Csv => Ok(render_curve_csv(&points)),
    }
}

pub fn render_curve_csv(points: &[CurvePoint<f64>]) -> String {
    let mut s = String::from(CURVE_HEADER);
    s.push('\n');
    for p in points {
        let beta = p.beta.map(sci9).unwrap_or_default();
        let _ = writeln!(s, "{},{},{}", sci9(p.delta), beta, u8::from(p.node_flag));
    }
    s
}

pub fn compare(
    fusion: &RunConfig,
    axion: &RunConfig,
    length: &GridSpec,
    omega_ratio: f64,
    format: Format,
) -> Result<String> {
    let Some(ModelSpec::Fusion(p)) = &fusion.model else {
        return Err(Error::Usage("--fusion config needs `model.fusion`".into()));
    };
    let Some(ModelSpec::Axion(a)) = &axion.model else {
        return Err(Error::Usage("--axion config needs `model.axion`".into()));
    };
    if fusion.experiment.b_tesla != axion.experiment.b_tesla {
        return Err(Error::Usage(
            "`experiment.b_tesla` differs between the --fusion and --axion configs".into(),
        ));
    }
    if !(omega_ratio.is_finite() && omega_ratio > 0.0) {
        return Err(Error::Usage("--omega-ratio must be positive".into()));
    }
    if length.min < 0.0 {
        return Err(Error::Usage("--length must not be negative".into()));
    }
    let rows = oscillation_scaling_report(a, p, fusion.experiment.b_tesla, &length.linear(), omega_ratio);
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => Ok(render_compare_csv(&rows)),
    }
}

pub fn render_compare_csv(rows: &[CompareRow<f64>]) -> String {
    let mut s = String::from(COMPARE_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            sci9(r.length_m),
            sci9(r.p_fusion_omega1),
            sci9(r.p_fusion_omega2),
            sci9(r.p_alp_omega1),
            sci9(r.p_alp_omega2)
        );
    }
    s
}

fn emit(text: &str, out: &OutputArgs, cfg: &RunConfig) -> Result<()> {
    match out.output.as_ref().or(cfg.output_path.as_ref()) {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn format_of(out: &OutputArgs, cfg: &RunConfig) -> Format {
    out.format.or(cfg.output_format).unwrap_or(Format::Csv)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Predict { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let text = predict(&cfg, format_of(&out, &cfg))?;
            emit(&text, &out, &cfg)
        }
        Command::Scan { config, delta, beta, out } => {
            let cfg = RunConfig::load(&config)?;
            let text = scan(&cfg, &delta, &beta, format_of(&out, &cfg))?;
            emit(&text, &out, &cfg)
        }
        Command::Curve { config, kind, delta, out } => {
            let cfg = RunConfig::load(&config)?;
            let text = curve(&cfg, kind, &delta, format_of(&out, &cfg))?;
            emit(&text, &out, &cfg)
        }
        Command::Compare { fusion, axion, length, omega_ratio, out } => {
            let f = RunConfig::load(&fusion)?;
            let a = RunConfig::load(&axion)?;
            let text = compare(&f, &a, &length, omega_ratio, format_of(&out, &f))?;
            emit(&text, &out, &f)
        }
    }
}
