//! One-instanton tunneling amplitudes and frequencies.
//!
//! Infinite size:
//! `Ω∞ = e^{−A/ħ}·2√3ω·√(M N̄⁻²/(2πħ))`, with `M N̄⁻² = A` on the kink, and
//! `⟨x_f|x_i⟩ = √(Mω/πħ)·e^{−ωL/2}·Ω∞·L`.
//!
//! Finite size:
//! `Ω(L) = e^{−A(L)/ħ}·√(M N̄⁻²(L)/(2πħ))·√|Det[ĥ]/Detᴿ[Ô]|` and
//! `⟨x_f|x_i⟩_L = √(M/(2πħL))·Ω(L)·L / (2 sinh(ωL/2))`.

use std::f64::consts::PI;

use serde::{Serialize, Serializer};

use crate::action::{asymptotic_action, evaluate_action};
use crate::background::{solve_energy_for_size_with, SolverOptions};
use crate::error::{Error, Result};
use crate::fluctuation::{
    build_stability_operator, regularized_ratio, DeterminantMethod, DeterminantRatio, RatioOptions,
};
use crate::model::{size_to_temperature, DoubleWellParams};

/// Frequency of the harmonic reference operator `ĥ = −d²/dτ² + Ω²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HarmonicReference {
    /// `Ω = √(V''(±a)/M) = √2·ω`, the frequency the stability operator
    /// relaxes to away from the instanton core.
    #[default]
    WellCurvature,
    /// `Ω = ω`, the parameter of the potential.
    Omega,
}

impl HarmonicReference {
    pub fn frequency(self, p: &DoubleWellParams) -> f64 {
        match self {
            HarmonicReference::WellCurvature => p.well_curvature_frequency(),
            HarmonicReference::Omega => p.omega(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub ratio: RatioOptions,
    pub method: DeterminantMethod,
    pub reference: HarmonicReference,
    pub solver: SolverOptions,
    pub boltzmann: f64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            ratio: RatioOptions::default(),
            method: DeterminantMethod::Both,
            reference: HarmonicReference::default(),
            solver: SolverOptions::default(),
            boltzmann: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeConvention {
    /// Harmonic ground-state end points, infinite-size formula.
    HarmonicWavefunction,
    /// Free-particle normalized, finite-size formula.
    FreeParticle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub factor: String,
    pub expression: String,
    pub value: f64,
}

fn entry(factor: &str, expression: &str, value: f64) -> LedgerEntry {
    LedgerEntry {
        factor: factor.into(),
        expression: expression.into(),
        value,
    }
}

fn size_or_infinite<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str("infinite")
    } else {
        s.serialize_f64(*v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TunnelingReport {
    pub params: DoubleWellParams,
    #[serde(rename = "L", serialize_with = "size_or_infinite")]
    pub size: f64,
    pub temperature: f64,
    pub convention: AmplitudeConvention,
    pub energy: Option<f64>,
    pub kappa: Option<f64>,
    pub s_squared: Option<f64>,
    /// `ϖ*/K(s)`
    pub period_ratio: Option<f64>,
    pub action: f64,
    pub zero_mode_norm_sq: f64,
    pub det_ratio: Option<DeterminantRatio>,
    /// `Ω^QF = √(M N̄⁻²/(2πħ))·√|ratio|`
    pub omega_fluctuation: f64,
    /// `Ω∞` or `Ω(L)`.
    pub omega_tunnel: f64,
    /// `Ω∞` exactly as in the infinite-size formula.
    pub omega_infinity: f64,
    /// `Ω∞` with the `2√3` factor taken at the well-curvature frequency,
    /// the limit `Ω(L)` approaches under the default reference.
    pub omega_infinity_well: f64,
    pub amplitude: Option<f64>,
    /// Every factor of the amplitude, each exactly once.
    pub ledger: Vec<LedgerEntry>,
    pub warnings: Vec<String>,
}

fn jacobian(p: &DoubleWellParams, norm_sq: f64) -> f64 {
    (p.mass() * norm_sq / (2.0 * PI * p.hbar())).sqrt()
}

fn omega_infinity_at(p: &DoubleWellParams, frequency: f64) -> f64 {
    let a = asymptotic_action(p);
    // M N̄⁻² = A on the kink
    (-a / p.hbar()).exp() * 2.0 * 3f64.sqrt() * frequency * (a / (2.0 * PI * p.hbar())).sqrt()
}

/// `Ω∞ = e^{−A/ħ}·2√3ω·√(A/(2πħ))`.
pub fn omega_infinity(p: &DoubleWellParams) -> f64 {
    omega_infinity_at(p, p.omega())
}

/// `Ω∞` with `2√3` multiplying the well-curvature frequency `√2ω`.
pub fn omega_infinity_well(p: &DoubleWellParams) -> f64 {
    omega_infinity_at(p, p.well_curvature_frequency())
}

fn infinite_base(p: &DoubleWellParams) -> TunnelingReport {
    let a = asymptotic_action(p);
    let omega_inf = omega_infinity(p);
    TunnelingReport {
        params: *p,
        size: f64::INFINITY,
        temperature: 0.0,
        convention: AmplitudeConvention::HarmonicWavefunction,
        energy: Some(0.0),
        kappa: Some(0.5),
        s_squared: Some(1.0),
        period_ratio: None,
        action: a,
        zero_mode_norm_sq: a / p.mass(),
        det_ratio: None,
        omega_fluctuation: omega_inf * (a / p.hbar()).exp(),
        omega_tunnel: omega_inf,
        omega_infinity: omega_inf,
        omega_infinity_well: omega_infinity_well(p),
        amplitude: None,
        ledger: vec![
            entry("instanton weight", "exp(-A/hbar)", (-a / p.hbar()).exp()),
            entry(
                "collective coordinate jacobian",
                "sqrt(M N^-2/(2 pi hbar))",
                jacobian(p, a / p.mass()),
            ),
            entry(
                "fluctuation determinant",
                "2 sqrt(3) omega",
                2.0 * 3f64.sqrt() * p.omega(),
            ),
        ],
        warnings: Vec::new(),
    }
}

/// Infinite-size quantities without an amplitude (no `L`).
pub fn infinite_size_report(p: &DoubleWellParams) -> TunnelingReport {
    infinite_base(p)
}

/// `√(Mω/πħ)·e^{−ωL/2}·Ω∞·L`, valid for `ωL ≫ 1`.
pub fn amplitude_infinite(p: &DoubleWellParams, size: f64) -> Result<TunnelingReport> {
    amplitude_infinite_with(p, size, 1.0)
}

pub fn amplitude_infinite_with(
    p: &DoubleWellParams,
    size: f64,
    boltzmann: f64,
) -> Result<TunnelingReport> {
    if !(size > 0.0) || !size.is_finite() {
        return Err(Error::domain(format!(
            "size must be finite and > 0, got {size}"
        )));
    }
    let mut r = infinite_base(p);
    let w = p.omega();
    let endpoint = (p.mass() * w / (PI * p.hbar())).sqrt();
    let decay = (-0.5 * w * size).exp();
    r.amplitude = Some(endpoint * decay * r.omega_infinity * size);
    r.size = size;
    r.temperature = size_to_temperature(p, size, boltzmann)?;
    r.ledger.extend([
        entry("collective coordinate range", "L", size),
        entry(
            "end-point wavefunctions",
            "sqrt(M omega/(pi hbar))",
            endpoint,
        ),
        entry("harmonic decay", "exp(-omega L/2)", decay),
    ]);
    if w * size < 5.0 {
        r.warnings.push(format!(
            "omega*L = {} < 5: the infinite-size amplitude is an asymptotic form",
            w * size
        ));
    }
    Ok(r)
}

/// Finite-size pipeline with default options.
pub fn amplitude_finite(p: &DoubleWellParams, size: f64) -> Result<TunnelingReport> {
    amplitude_finite_with(p, size, &PipelineOptions::default())
}

pub fn amplitude_finite_with(
    p: &DoubleWellParams,
    size: f64,
    opts: &PipelineOptions,
) -> Result<TunnelingReport> {
    let inst = solve_energy_for_size_with(p, size, opts.solver)?;
    let act = evaluate_action(&inst, size)?;
    let op = build_stability_operator(&inst, size)?;
    let det = regularized_ratio(&op, opts.reference.frequency(p), opts.method, &opts.ratio)?;

    let weight = (-act.action / p.hbar()).exp();
    let jac = jacobian(p, act.zero_mode_norm_sq);
    let fluct = det.ratio.abs().sqrt();
    let omega_qf = jac * fluct;
    let omega_l = weight * omega_qf;
    let free = (p.mass() / (2.0 * PI * p.hbar() * size)).sqrt();
    let harmonic = 1.0 / (2.0 * (0.5 * p.omega() * size).sinh());
    let amplitude = free * harmonic * omega_l * size;

    let mut warnings = Vec::new();
    if let Some(w) = crate::fluctuation::spectrum_warning(&opts.ratio) {
        warnings.push(w);
    }
    Ok(TunnelingReport {
        params: *p,
        size,
        temperature: size_to_temperature(p, size, opts.boltzmann)?,
        convention: AmplitudeConvention::FreeParticle,
        energy: Some(inst.energy),
        kappa: Some(inst.kappa),
        s_squared: Some(inst.modulus.s_squared()),
        period_ratio: Some(inst.period_ratio()),
        action: act.action,
        zero_mode_norm_sq: act.zero_mode_norm_sq,
        det_ratio: Some(det),
        omega_fluctuation: omega_qf,
        omega_tunnel: omega_l,
        omega_infinity: omega_infinity(p),
        omega_infinity_well: omega_infinity_well(p),
        amplitude: Some(amplitude),
        ledger: vec![
            entry("instanton weight", "exp(-A/hbar)", weight),
            entry(
                "collective coordinate jacobian",
                "sqrt(M N^-2/(2 pi hbar))",
                jac,
            ),
            entry("fluctuation determinant", "sqrt|Det h / Det^R O|", fluct),
            entry("collective coordinate range", "L", size),
            entry("free-particle normalization", "sqrt(M/(2 pi hbar L))", free),
            entry("harmonic factor", "1/(2 sinh(omega L/2))", harmonic),
        ],
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // e^{−2√2/3}·2√3·√((2√2/3)/(2π)), evaluated independently
    const OMEGA_INF: f64 = 0.522_703_964_410_409_4;

    fn ledger_product(r: &TunnelingReport) -> f64 {
        r.ledger.iter().map(|e| e.value).product()
    }

    #[test]
    fn omega_infinity_reduced_units() {
        let p = DoubleWellParams::default();
        let a = 2.0 * 2f64.sqrt() / 3.0;
        let want = (-a).exp() * 2.0 * 3f64.sqrt() * (a / (2.0 * PI)).sqrt();
        assert!((omega_infinity(&p) - want).abs() < 1e-15);
        assert!((omega_infinity(&p) - OMEGA_INF).abs() < 1e-15);
        assert!((omega_infinity_well(&p) / omega_infinity(&p) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn omega_infinity_scalings() {
        let p = DoubleWellParams::default();
        let half = DoubleWellParams::new(1.0, 1.0, 0.5, 1.0).unwrap();
        let a = asymptotic_action(&p);
        let want = omega_infinity(&p) * (-a).exp() * 2f64.sqrt();
        assert!((omega_infinity(&half) / want - 1.0).abs() < 1e-14);
        let classical = DoubleWellParams::new(1.0, 1.0, 1.0, 1e-3).unwrap();
        assert!(omega_infinity(&classical) < 1e-300);
    }

    #[test]
    fn infinite_amplitude() {
        let p = DoubleWellParams::default();
        let r = amplitude_infinite(&p, 30.0).unwrap();
        let want = (1.0 / PI).sqrt() * (-15f64).exp() * omega_infinity(&p) * 30.0;
        assert!((r.amplitude.unwrap() / want - 1.0).abs() < 1e-14);
        assert!((ledger_product(&r) / want - 1.0).abs() < 1e-14);
        assert!(r.warnings.is_empty());
        assert_eq!(amplitude_infinite(&p, 4.0).unwrap().warnings.len(), 1);
        let json = serde_json::to_value(infinite_size_report(&p)).unwrap();
        assert_eq!(json["L"], "infinite");
        assert!((json["action"].as_f64().unwrap() - 0.942_809_041_582_063).abs() < 1e-12);
    }

    #[test]
    fn finite_report_ledger_is_complete() {
        let p = DoubleWellParams::default();
        let opts = PipelineOptions {
            ratio: RatioOptions {
                intervals: 1024,
                ..RatioOptions::default()
            },
            ..PipelineOptions::default()
        };
        let r = amplitude_finite_with(&p, 10.0, &opts).unwrap();
        let amp = r.amplitude.unwrap();
        assert!((ledger_product(&r) / amp - 1.0).abs() < 1e-14);
        let mut names: Vec<_> = r.ledger.iter().map(|e| e.factor.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), r.ledger.len());
        let omega: f64 = r.ledger[..3].iter().map(|e| e.value).product();
        assert!((omega / r.omega_tunnel - 1.0).abs() < 1e-14);
        assert!((r.temperature - 0.1).abs() < 1e-15);
        let prefactor = 1.0 / (2.0 * 1f64.sinh());
        assert!((prefactor - 0.425_459_064_119_660_8).abs() < 1e-15);
    }

    #[test]
    fn harmonic_reference_frequencies() {
        let p = DoubleWellParams::new(1.0, 0.8, 1.0, 1.0).unwrap();
        assert_eq!(HarmonicReference::Omega.frequency(&p), 0.8);
        assert!((HarmonicReference::WellCurvature.frequency(&p) - 0.8 * 2f64.sqrt()).abs() < 1e-15);
    }
}
