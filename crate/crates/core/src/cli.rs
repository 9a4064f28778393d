//! Command-line front end: configuration, run modes and output tables.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fluctuation::{DeterminantMethod, RatioOptions, DEFAULT_INTERVALS};
use crate::model::{temperature_to_size, DoubleWellParams};
use crate::propagator::{
    amplitude_finite_with, amplitude_infinite_with, infinite_size_report, HarmonicReference,
    PipelineOptions, TunnelingReport,
};
use crate::validation::{acceptance_suite, ValidationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Kink,
    #[default]
    Finite,
    Sweep,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    #[default]
    #[serde(rename = "L")]
    #[value(name = "L")]
    Size,
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Spectral,
    GelfandYaglom,
    Both,
}

impl From<MethodArg> for DeterminantMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Spectral => DeterminantMethod::Spectral,
            MethodArg::GelfandYaglom => DeterminantMethod::GelfandYaglom,
            MethodArg::Both => DeterminantMethod::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub mass: f64,
    pub omega: f64,
    pub delta: f64,
    pub hbar: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            delta: 1.0,
            hbar: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub spacing: Spacing,
    #[serde(default)]
    pub variable: SweepVariable,
}

impl SweepRange {
    fn points(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + t * (self.max / self.min).ln()).exp(),
                }
            })
            .collect()
    }
}

/// Full run description; every field has a default so a config file may
/// name only what it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub mode: Mode,
    #[serde(rename = "L")]
    pub size: Option<f64>,
    pub temperature: Option<f64>,
    pub boltzmann: f64,
    pub sweep: Option<SweepRange>,
    pub grid: usize,
    pub richardson: bool,
    pub method: MethodArg,
    pub reference: HarmonicReference,
    pub agreement_tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Sweep worker threads; 0 lets the pool decide.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ParamsConfig::default(),
            mode: Mode::default(),
            size: None,
            temperature: None,
            boltzmann: 1.0,
            sweep: None,
            grid: DEFAULT_INTERVALS,
            richardson: true,
            method: MethodArg::Both,
            reference: HarmonicReference::default(),
            agreement_tol: 0.02,
            format: Format::default(),
            out: None,
            workers: 0,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "instanton",
    version,
    allow_negative_numbers = true,
    about = "Finite-size instanton tunneling for the quartic double well"
)]
pub struct CliArgs {
    /// Run mode
    #[arg(value_enum)]
    pub mode: Option<Mode>,
    /// JSON config file; flags below override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Particle mass M
    #[arg(long)]
    pub mass: Option<f64>,
    /// Frequency parameter ω of the potential
    #[arg(long)]
    pub omega: Option<f64>,
    /// Quartic coupling δ
    #[arg(long)]
    pub delta: Option<f64>,
    /// Action quantum ħ
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Euclidean time extent
    #[arg(long = "L", id = "size")]
    pub size: Option<f64>,
    /// Temperature, mapped to L = ħ/(k_B T)
    #[arg(long)]
    pub temperature: Option<f64>,
    /// Boltzmann constant k_B used by the temperature map
    #[arg(long)]
    pub boltzmann: Option<f64>,
    /// Sweep range as min,max,steps
    #[arg(long, value_parser = parse_sweep)]
    pub sweep: Option<(f64, f64, usize)>,
    /// Spacing of sweep points
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Sweep over L or temperature
    #[arg(long, value_enum)]
    pub sweep_variable: Option<SweepVariable>,
    /// Fine grid intervals of the Richardson pair
    #[arg(long)]
    pub grid: Option<usize>,
    /// Determinant route; `both` cross-checks the two
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Frequency of the harmonic reference operator
    #[arg(long, value_enum)]
    pub reference: Option<ReferenceArg>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sweep worker threads (0 = all cores)
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceArg {
    WellCurvature,
    Omega,
}

fn parse_sweep(s: &str) -> std::result::Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected min,max,steps, got {s:?}"));
    }
    let min = parts[0].parse::<f64>().map_err(|e| format!("min: {e}"))?;
    let max = parts[1].parse::<f64>().map_err(|e| format!("max: {e}"))?;
    let steps = parts[2]
        .parse::<usize>()
        .map_err(|e| format!("steps: {e}"))?;
    Ok((min, max, steps))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    /// Config file (if any) with command-line overrides applied, validated.
    pub fn from_args(args: &CliArgs) -> Result<Self> {
        let mut cfg = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                Self::from_json(&text)?
            }
            None => Self::default(),
        };
        if let Some(m) = args.mode {
            cfg.mode = m;
        }
        macro_rules! set {
            ($field:expr, $value:expr) => {
                if let Some(v) = $value {
                    $field = v;
                }
            };
        }
        set!(cfg.params.mass, args.mass);
        set!(cfg.params.omega, args.omega);
        set!(cfg.params.delta, args.delta);
        set!(cfg.params.hbar, args.hbar);
        set!(cfg.boltzmann, args.boltzmann);
        set!(cfg.grid, args.grid);
        set!(cfg.method, args.method);
        set!(cfg.format, args.format);
        set!(cfg.workers, args.workers);
        if let Some(r) = args.reference {
            cfg.reference = match r {
                ReferenceArg::WellCurvature => HarmonicReference::WellCurvature,
                ReferenceArg::Omega => HarmonicReference::Omega,
            };
        }
        if args.size.is_some() || args.temperature.is_some() {
            cfg.size = args.size;
            cfg.temperature = args.temperature;
        }
        if let Some((min, max, steps)) = args.sweep {
            let prev = cfg.sweep;
            cfg.sweep = Some(SweepRange {
                min,
                max,
                steps,
                spacing: prev.map(|s| s.spacing).unwrap_or_default(),
                variable: prev.map(|s| s.variable).unwrap_or_default(),
            });
        }
        if let Some(s) = cfg.sweep.as_mut() {
            set!(s.spacing, args.spacing);
            set!(s.variable, args.sweep_variable);
        }
        if args.out.is_some() {
            cfg.out = args.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn params(&self) -> Result<DoubleWellParams> {
        let p = &self.params;
        DoubleWellParams::new(p.mass, p.omega, p.delta, p.hbar)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        self.params()?;
        if !(self.boltzmann > 0.0) {
            return cfg(format!("boltzmann must be > 0, got {}", self.boltzmann));
        }
        if self.grid < 8 || !self.grid.is_multiple_of(2) {
            return cfg(format!(
                "grid must be an even number >= 8, got {}",
                self.grid
            ));
        }
        if !(self.agreement_tol > 0.0) {
            return cfg("agreement_tol must be > 0".into());
        }
        let both = self.size.is_some() && self.temperature.is_some();
        match self.mode {
            Mode::Finite if both || (self.size.is_none() && self.temperature.is_none()) => {
                return cfg("finite mode needs exactly one of L or temperature".into());
            }
            Mode::Kink if both => return cfg("give at most one of L or temperature".into()),
            Mode::Sweep => {
                let Some(s) = self.sweep else {
                    return cfg("sweep mode needs a sweep range".into());
                };
                if !(s.min < s.max) || s.steps < 2 {
                    return cfg(format!("sweep needs min < max and steps >= 2, got {s:?}"));
                }
                if !(s.min > 0.0) {
                    return cfg("sweep bounds must be positive".into());
                }
            }
            _ => {}
        }
        for (name, v) in [("L", self.size), ("temperature", self.temperature)] {
            if let Some(v) = v {
                if !(v > 0.0) || !v.is_finite() {
                    return cfg(format!("{name} must be finite and > 0, got {v}"));
                }
            }
        }
        Ok(())
    }

    fn pipeline(&self) -> PipelineOptions {
        PipelineOptions {
            ratio: RatioOptions {
                intervals: self.grid,
                richardson: self.richardson,
                agreement_tol: self.agreement_tol,
            },
            method: self.method.into(),
            reference: self.reference,
            boltzmann: self.boltzmann,
            ..PipelineOptions::default()
        }
    }

    fn point_size(&self, p: &DoubleWellParams) -> Result<Option<f64>> {
        match (self.size, self.temperature) {
            (Some(l), _) => Ok(Some(l)),
            (None, Some(t)) => Ok(Some(temperature_to_size(p, t, self.boltzmann)?)),
            (None, None) => Ok(None),
        }
    }
}

/// One line of a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub size: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "E")]
    pub energy: Option<f64>,
    pub kappa: Option<f64>,
    pub s_squared: Option<f64>,
    pub period_ratio: Option<f64>,
    pub action: Option<f64>,
    pub zero_mode_norm_sq: Option<f64>,
    pub det_ratio: Option<f64>,
    pub det_ratio_gelfand_yaglom: Option<f64>,
    pub omega_tunnel: Option<f64>,
    pub omega_infinity: Option<f64>,
    pub omega_infinity_well: Option<f64>,
    pub amplitude: Option<f64>,
    pub status: String,
}

pub const CSV_COLUMNS: [&str; 15] = [
    "L",
    "T",
    "E",
    "kappa",
    "s_squared",
    "period_ratio",
    "action",
    "zero_mode_norm_sq",
    "det_ratio",
    "det_ratio_gelfand_yaglom",
    "omega_tunnel",
    "omega_infinity",
    "omega_infinity_well",
    "amplitude",
    "status",
];

impl SweepRow {
    pub fn from_report(r: &TunnelingReport) -> Self {
        let det = r.det_ratio.as_ref();
        let status = if r.warnings.is_empty() {
            "ok".to_string()
        } else {
            format!("ok; {}", r.warnings.join("; "))
        };
        Self {
            size: r.size,
            temperature: r.temperature,
            energy: r.energy,
            kappa: r.kappa,
            s_squared: r.s_squared,
            period_ratio: r.period_ratio,
            action: Some(r.action),
            zero_mode_norm_sq: Some(r.zero_mode_norm_sq),
            det_ratio: det.map(|d| d.ratio),
            det_ratio_gelfand_yaglom: det.and_then(|d| d.gelfand_yaglom),
            omega_tunnel: Some(r.omega_tunnel),
            omega_infinity: Some(r.omega_infinity),
            omega_infinity_well: Some(r.omega_infinity_well),
            amplitude: r.amplitude,
            status,
        }
    }

    fn failed(size: f64, temperature: f64, e: &Error) -> Self {
        Self {
            size,
            temperature,
            energy: None,
            kappa: None,
            s_squared: None,
            period_ratio: None,
            action: None,
            zero_mode_norm_sq: None,
            det_ratio: None,
            det_ratio_gelfand_yaglom: None,
            omega_tunnel: None,
            omega_infinity: None,
            omega_infinity_well: None,
            amplitude: None,
            status: format!("error: {e}"),
        }
    }

    fn cells(&self) -> Vec<String> {
        let num = |v: f64| {
            if v.is_infinite() {
                "inf".to_string()
            } else {
                format!("{v:.16e}")
            }
        };
        let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
        vec![
            num(self.size),
            num(self.temperature),
            opt(self.energy),
            opt(self.kappa),
            opt(self.s_squared),
            opt(self.period_ratio),
            opt(self.action),
            opt(self.zero_mode_norm_sq),
            opt(self.det_ratio),
            opt(self.det_ratio_gelfand_yaglom),
            opt(self.omega_tunnel),
            opt(self.omega_infinity),
            opt(self.omega_infinity_well),
            opt(self.amplitude),
            self.status.clone(),
        ]
    }
}

pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record(r.cells()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Parse a table written by [`rows_to_csv`].
pub fn rows_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(io)?;
        let num = |i: usize| -> Result<Option<f64>> {
            let s = rec.get(i).unwrap_or("");
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>()
                    .map(Some)
                    .map_err(|e| Error::Io(format!("column {i}: {e}")))
            }
        };
        rows.push(SweepRow {
            size: num(0)?.unwrap_or(f64::NAN),
            temperature: num(1)?.unwrap_or(f64::NAN),
            energy: num(2)?,
            kappa: num(3)?,
            s_squared: num(4)?,
            period_ratio: num(5)?,
            action: num(6)?,
            zero_mode_norm_sq: num(7)?,
            det_ratio: num(8)?,
            det_ratio_gelfand_yaglom: num(9)?,
            omega_tunnel: num(10)?,
            omega_infinity: num(11)?,
            omega_infinity_well: num(12)?,
            amplitude: num(13)?,
            status: rec.get(14).unwrap_or("").to_string(),
        });
    }
    Ok(rows)
}

/// Text to emit plus the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub text: String,
    pub exit_code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

fn emit_report(cfg: &RunConfig, r: &TunnelingReport) -> Result<String> {
    match cfg.format {
        Format::Json => to_json(r),
        Format::Csv => rows_to_csv(&[SweepRow::from_report(r)]),
    }
}

/// Sweep rows ordered by `L`; failures are recorded in their row.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    let p = cfg.params()?;
    let range = cfg
        .sweep
        .ok_or_else(|| Error::Config("missing sweep range".into()))?;
    let mut sizes: Vec<f64> = range
        .points()
        .into_iter()
        .map(|v| match range.variable {
            SweepVariable::Size => Ok(v),
            SweepVariable::Temperature => temperature_to_size(&p, v, cfg.boltzmann),
        })
        .collect::<Result<_>>()?;
    sizes.sort_by(f64::total_cmp);
    let opts = cfg.pipeline();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    Ok(pool.install(|| {
        sizes
            .par_iter()
            .map(|&l| {
                let t = p.hbar() / (cfg.boltzmann * l);
                match amplitude_finite_with(&p, l, &opts) {
                    Ok(r) => SweepRow::from_report(&r),
                    Err(e) => SweepRow::failed(l, t, &e),
                }
            })
            .collect()
    }))
}

/// Execute one configured run. Configuration problems come back as
/// `Error::Config`; numerical failures outside sweeps as other errors.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let p = cfg.params()?;
    let ok = |text| {
        Ok(RunOutput {
            text,
            exit_code: EXIT_OK,
        })
    };
    match cfg.mode {
        Mode::Kink => {
            let r = match cfg.point_size(&p)? {
                Some(l) => amplitude_infinite_with(&p, l, cfg.boltzmann)?,
                None => infinite_size_report(&p),
            };
            ok(emit_report(cfg, &r)?)
        }
        Mode::Finite => {
            let l = cfg.point_size(&p)?.expect("validated");
            let r = amplitude_finite_with(&p, l, &cfg.pipeline())?;
            ok(emit_report(cfg, &r)?)
        }
        Mode::Sweep => {
            let rows = run_sweep(cfg)?;
            ok(match cfg.format {
                Format::Json => to_json(&rows)?,
                Format::Csv => rows_to_csv(&rows)?,
            })
        }
        Mode::Validate => {
            let outcomes = acceptance_suite(&ValidationConfig {
                params: p,
                intervals: cfg.grid,
            });
            let all = outcomes.iter().all(|o| o.passed);
            let text = match cfg.format {
                Format::Json => to_json(&outcomes)?,
                Format::Csv => {
                    let mut lines: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
                    lines.push(format!(
                        "{} of {} checks passed",
                        outcomes.iter().filter(|o| o.passed).count(),
                        outcomes.len()
                    ));
                    lines.join("\n") + "\n"
                }
            };
            Ok(RunOutput {
                text,
                exit_code: if all { EXIT_OK } else { EXIT_NUMERICAL },
            })
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> CliArgs {
        CliArgs::parse_from(std::iter::once("instanton").chain(v.iter().copied()))
    }

    #[test]
    fn defaults_and_overrides() {
        let cfg = RunConfig::from_args(&args(&[
            "finite", "--L", "12", "--omega", "2", "--grid", "512",
        ]))
        .unwrap();
        assert_eq!(cfg.mode, Mode::Finite);
        assert_eq!(cfg.size, Some(12.0));
        assert_eq!(cfg.params.omega, 2.0);
        assert_eq!(cfg.grid, 512);
        let cfg = RunConfig::from_args(&args(&[
            "sweep",
            "--sweep",
            "8,40,17",
            "--spacing",
            "linear",
        ]))
        .unwrap();
        let s = cfg.sweep.unwrap();
        assert_eq!(
            (s.min, s.max, s.steps, s.spacing),
            (8.0, 40.0, 17, Spacing::Linear)
        );
    }

    #[test]
    fn config_errors() {
        assert!(RunConfig::from_args(&args(&["finite"])).is_err());
        assert!(
            RunConfig::from_args(&args(&["finite", "--L", "3", "--temperature", "1"])).is_err()
        );
        assert!(RunConfig::from_args(&args(&["sweep", "--sweep", "8,4,5"])).is_err());
        assert!(RunConfig::from_args(&args(&["sweep", "--sweep", "4,8,1"])).is_err());
        assert!(RunConfig::from_args(&args(&["kink", "--delta", "-1"])).is_err());
        assert!(RunConfig::from_json(r#"{"nonsense": 1}"#).is_err());
        let e = RunConfig::from_args(&args(&["finite"])).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_CONFIG);
    }

    #[test]
    fn json_config_round_trip() {
        let cfg = RunConfig::from_json(
            r#"{"params": {"delta": 0.5}, "mode": "sweep", "sweep": {"min": 8, "max": 40, "steps": 17, "spacing": "log"}, "format": "csv"}"#,
        )
        .unwrap();
        assert_eq!(cfg.params.delta, 0.5);
        assert_eq!(cfg.params.mass, 1.0);
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn sweep_points() {
        let s = SweepRange {
            min: 8.0,
            max: 40.0,
            steps: 17,
            spacing: Spacing::Log,
            variable: SweepVariable::Size,
        };
        let pts = s.points();
        assert_eq!(pts.len(), 17);
        assert!((pts[0] - 8.0).abs() < 1e-12 && (pts[16] - 40.0).abs() < 1e-12);
        let r: Vec<f64> = pts.windows(2).map(|w| w[1] / w[0]).collect();
        assert!(r.iter().all(|x| (x - r[0]).abs() < 1e-12));
    }

    #[test]
    fn kink_mode_reports_action() {
        let cfg = RunConfig {
            mode: Mode::Kink,
            ..RunConfig::default()
        };
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert!((v["action"].as_f64().unwrap() - 0.942_809_0).abs() < 1e-7);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let row = SweepRow {
            size: 12.345678901234567,
            temperature: 1.0 / 12.345678901234567,
            energy: Some(6.81e-7),
            kappa: Some(0.5000013),
            s_squared: Some(0.99999),
            period_ratio: Some(0.9),
            action: Some(std::f64::consts::PI),
            zero_mode_norm_sq: Some(1.0 / 3.0),
            det_ratio: Some(23.9),
            det_ratio_gelfand_yaglom: None,
            omega_tunnel: Some(0.7),
            omega_infinity: Some(0.52),
            omega_infinity_well: Some(0.739),
            amplitude: Some(1e-300),
            status: "ok, with \"quotes\"".into(),
        };
        let back = rows_from_csv(&rows_to_csv(std::slice::from_ref(&row)).unwrap()).unwrap();
        assert_eq!(back, vec![row]);
    }
}
