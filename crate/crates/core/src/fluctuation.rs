//! Quadratic fluctuations about a classical path.
//!
//! The stability operator is `Ô = −d²/dτ² + U(τ)` with `U = V''(x_cl)/M` and
//! Dirichlet conditions at the window edges. Its determinant relative to a
//! harmonic reference `ĥ = −d²/dτ² + Ω²` is computed two independent ways:
//! as a product of finite-difference eigenvalues, and from the endpoint of a
//! Gelfand–Yaglom initial-value problem. The lowest mode of `Ô` (the
//! translational zero mode, exactly zero only at `L = ∞`) is excised from
//! both.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::action::zero_mode_norm_sq;
use crate::background::ClassicalPath;
use crate::error::{Error, Result};
use crate::model::dd_potential;
use crate::numeric::ode::{integrate as ode, OdeOptions};
use crate::numeric::tridiag::{eigenvector, symmetric_eigenvalues};

pub const DEFAULT_INTERVALS: usize = 4096;
const MIN_INTERVALS: usize = 64;

type Potential = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `−d²/dτ² + U(τ)` on `[lo, hi]` with Dirichlet ends.
#[derive(Clone)]
pub struct StabilityOperator {
    u: Potential,
    lo: f64,
    hi: f64,
    constant: Option<f64>,
}

impl fmt::Debug for StabilityOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StabilityOperator")
            .field("window", &(self.lo, self.hi))
            .field("constant", &self.constant)
            .finish()
    }
}

impl StabilityOperator {
    pub fn from_fn<F>(u: F, lo: f64, hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!(
                "invalid operator window [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            u: Arc::new(u),
            lo,
            hi,
            constant: None,
        })
    }

    /// `−d²/dτ² + value` on `[−L/2, L/2]`.
    pub fn constant(value: f64, size: f64) -> Result<Self> {
        let mut op = Self::from_fn(move |_| value, -0.5 * size, 0.5 * size)?;
        op.constant = Some(value);
        Ok(op)
    }

    /// Harmonic reference `−d²/dτ² + Ω²`.
    pub fn harmonic(frequency: f64, size: f64) -> Result<Self> {
        Self::constant(frequency * frequency, size)
    }

    pub fn potential(&self, tau: f64) -> f64 {
        (self.u)(tau)
    }

    pub fn window(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn size(&self) -> f64 {
        self.hi - self.lo
    }
}

/// `U(τ) = V''(x(τ))/M` on the window of size `L` centred on the path.
pub fn build_stability_operator<P>(path: &P, size: f64) -> Result<StabilityOperator>
where
    P: ClassicalPath + Clone + 'static,
{
    let owned = path.clone();
    let c = path.center();
    StabilityOperator::from_fn(
        move |t| {
            let p = owned.params();
            dd_potential(p, owned.position(t)) / p.mass()
        },
        c - 0.5 * size,
        c + 0.5 * size,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub grid_spacing: f64,
    pub intervals: usize,
    pub extrapolated: bool,
    pub warning: Option<String>,
}

struct Discretized {
    diag: Vec<f64>,
    off: Vec<f64>,
    nodes: Vec<f64>,
    h: f64,
}

// Second-order stencil on the n − 1 interior nodes of n equal intervals.
fn discretize(op: &StabilityOperator, intervals: usize) -> Result<Discretized> {
    if intervals < 4 {
        return Err(Error::domain(format!(
            "need at least 4 grid intervals, got {intervals}"
        )));
    }
    let h = op.size() / intervals as f64;
    let nodes: Vec<f64> = (1..intervals).map(|j| op.lo + j as f64 * h).collect();
    let inv = 1.0 / (h * h);
    let diag = nodes.iter().map(|&t| 2.0 * inv + op.potential(t)).collect();
    let off = vec![-inv; intervals - 2];
    Ok(Discretized {
        diag,
        off,
        nodes,
        h,
    })
}

/// Full finite-difference spectrum on `intervals` equal steps.
pub fn spectrum_finite_difference(
    op: &StabilityOperator,
    intervals: usize,
) -> Result<SpectrumResult> {
    let d = discretize(op, intervals)?;
    let eigenvalues = symmetric_eigenvalues(&d.diag, &d.off)?;
    Ok(SpectrumResult {
        eigenvalues,
        grid_spacing: d.h,
        intervals,
        extrapolated: false,
        warning: coarse_warning(intervals),
    })
}

fn coarse_warning(intervals: usize) -> Option<String> {
    (intervals < MIN_INTERVALS).then(|| {
        format!("{intervals} grid intervals is below {MIN_INTERVALS}; low modes may be inaccurate")
    })
}

/// Coarse-grid warning for the grids `regularized_ratio` would use.
pub fn spectrum_warning(opts: &RatioOptions) -> Option<String> {
    coarse_warning(if opts.richardson {
        opts.intervals / 2
    } else {
        opts.intervals
    })
}

fn richardson(fine: f64, coarse: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Richardson-extrapolated low spectrum from grids of `intervals` and
/// `intervals/2` steps. Only the lowest eighth of the coarse modes is kept,
/// where the `h²` error expansion holds.
pub fn spectrum_extrapolated(op: &StabilityOperator, intervals: usize) -> Result<SpectrumResult> {
    if !intervals.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "Richardson pair needs an even interval count, got {intervals}"
        )));
    }
    let fine = spectrum_finite_difference(op, intervals)?;
    let coarse = spectrum_finite_difference(op, intervals / 2)?;
    let keep = (intervals / 16).max(2).min(coarse.eigenvalues.len());
    let eigenvalues = fine.eigenvalues[..keep]
        .iter()
        .zip(&coarse.eigenvalues[..keep])
        .map(|(&f, &c)| richardson(f, c))
        .collect();
    Ok(SpectrumResult {
        eigenvalues,
        grid_spacing: fine.grid_spacing,
        intervals,
        extrapolated: true,
        warning: coarse_warning(intervals / 2),
    })
}

/// `ln|h·det(h²A)|` and its sign for the finite-difference matrix `A`,
/// from its eigenvalues. This is the discrete analogue of the shooting
/// endpoint `y(L/2)` and converges to it as `h²`.
pub fn grid_log_determinant(op: &StabilityOperator, intervals: usize) -> Result<(f64, f64)> {
    let d = discretize(op, intervals)?;
    let ev = symmetric_eigenvalues(&d.diag, &d.off)?;
    let h2 = d.h * d.h;
    let log = d.h.ln() + ev.iter().map(|e| (h2 * e).abs().ln()).sum::<f64>();
    let sign = if ev.iter().filter(|e| **e < 0.0).count() % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    Ok((log, sign))
}

/// Grid determinant in shooting normalization, Richardson-extrapolated
/// over `intervals` and `intervals/2`.
pub fn grid_determinant_extrapolated(op: &StabilityOperator, intervals: usize) -> Result<f64> {
    let (lf, sf) = grid_log_determinant(op, intervals)?;
    let (lc, sc) = grid_log_determinant(op, intervals / 2)?;
    Ok(richardson(sf * lf.exp(), sc * lc.exp()))
}

/// Lowest grid eigenpair; the vector is unit-norm in the discrete `ℓ²`
/// sense, sampled at the interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub eigenvalue: f64,
    pub nodes: Vec<f64>,
    pub vector: Vec<f64>,
}

pub fn ground_state(op: &StabilityOperator, intervals: usize) -> Result<GroundState> {
    let d = discretize(op, intervals)?;
    let ev = symmetric_eigenvalues(&d.diag, &d.off)?;
    let vector = eigenvector(&d.diag, &d.off, ev[0])?;
    Ok(GroundState {
        eigenvalue: ev[0],
        nodes: d.nodes,
        vector,
    })
}

/// Unit-normalized velocity profile `η₀(τ) = N̄·ẋ(τ)`.
#[derive(Debug, Clone)]
pub struct ZeroModeProfile<P> {
    path: P,
    norm: f64,
}

impl<P: ClassicalPath> ZeroModeProfile<P> {
    pub fn value(&self, tau: f64) -> f64 {
        self.norm * self.path.velocity(tau)
    }

    /// `N̄`.
    pub fn normalization(&self) -> f64 {
        self.norm
    }
}

pub fn zero_mode_profile<P: ClassicalPath + Clone>(
    path: &P,
    size: f64,
) -> Result<ZeroModeProfile<P>> {
    let n2 = zero_mode_norm_sq(path, size)?;
    if !(n2 > 0.0) {
        return Err(Error::domain("constant path has no zero mode"));
    }
    Ok(ZeroModeProfile {
        path: path.clone(),
        norm: 1.0 / n2.sqrt(),
    })
}

/// Harmonic determinant in its free-normalized, sign-carrying convention,
/// `−4 sinh²(ΩL/2)`.
pub fn harmonic_determinant(frequency: f64, size: f64) -> f64 {
    let s = (0.5 * frequency * size).sinh();
    -4.0 * s * s
}

/// Endpoint data of the shooting problem at spectral parameter `λ`:
/// `D(λ) = y·e^{log_scale}` and `D'(λ) = z·e^{log_scale}`.
#[derive(Debug, Clone, Copy)]
struct Shot {
    y: f64,
    z: f64,
    log_scale: f64,
}

fn shoot(op: &StabilityOperator, lambda: f64) -> Result<Shot> {
    // Renormalize between segments so that growth like e^{ΩL} cannot
    // overflow; the system is linear so one common scale suffices.
    let mid = 0.5 * (op.lo + op.hi);
    let rate = [
        op.potential(op.lo),
        op.potential(mid),
        op.potential(op.hi),
        lambda,
    ]
    .iter()
    .map(|v| v.abs())
    .fold(0.0, f64::max)
    .sqrt();
    let segments = ((op.size() * rate / 8.0).ceil() as usize).max(1);
    let step = op.size() / segments as f64;
    let opts = OdeOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        initial_step: Some(step * 1e-3),
        ..OdeOptions::default()
    };
    let mut state = [0.0, 1.0, 0.0, 0.0];
    let mut log_scale = 0.0;
    for k in 0..segments {
        let t0 = op.lo + k as f64 * step;
        let t1 = if k + 1 == segments { op.hi } else { t0 + step };
        let (s, _) = ode(
            |t, s: &[f64; 4]| {
                let q = op.potential(t) - lambda;
                [s[1], q * s[0], s[3], q * s[2] - s[0]]
            },
            t0,
            state,
            t1,
            opts,
        )?;
        let norm = s.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Ode(format!(
                "shooting state degenerated at τ = {t1}"
            )));
        }
        state = s.map(|v| v / norm);
        log_scale += norm.ln();
    }
    Ok(Shot {
        y: state[0],
        z: state[2],
        log_scale,
    })
}

/// `y(L/2)` for `ÿ = U y`, `y(−L/2) = 0`, `ẏ(−L/2) = 1`.
pub fn gelfand_yaglom_solution(op: &StabilityOperator) -> Result<f64> {
    let s = shoot(op, 0.0)?;
    Ok(s.y * s.log_scale.exp())
}

/// `ln|y(L/2)|` and its sign, usable where `y` itself would overflow.
pub fn gelfand_yaglom_log(op: &StabilityOperator) -> Result<(f64, f64)> {
    let s = shoot(op, 0.0)?;
    Ok((s.y.abs().ln() + s.log_scale, s.y.signum()))
}

/// Lowest Dirichlet eigenvalue `ε₀` as the root of `D(λ)` nearest zero,
/// by Newton with `D'` from the variational equation. Returns the root and
/// the shots at `λ = 0` and at the root.
fn lowest_root(op: &StabilityOperator, scale: f64) -> Result<(f64, Shot, Shot)> {
    let at_zero = shoot(op, 0.0)?;
    let mut lambda = 0.0;
    let mut shot = at_zero;
    for _ in 0..60 {
        if shot.y == 0.0 {
            return Ok((lambda, at_zero, shot));
        }
        if shot.z == 0.0 {
            return Err(Error::RootFinding(
                "flat shooting function in zero-mode search".into(),
            ));
        }
        let step = shot.y / shot.z;
        lambda -= step;
        shot = shoot(op, lambda)?;
        // the endpoint carries ~1e−15 relative noise, so λ cannot be
        // resolved below a small absolute floor
        if step.abs() <= 1e-12 * lambda.abs() + 1e-13 * scale {
            return Ok((lambda, at_zero, shot));
        }
    }
    Err(Error::RootFinding(
        "zero-mode Newton iteration did not converge".into(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterminantMethod {
    Spectral,
    GelfandYaglom,
    Both,
}

#[derive(Debug, Clone, Copy)]
pub struct RatioOptions {
    /// Fine grid of the Richardson pair (the coarse grid has half).
    pub intervals: usize,
    pub richardson: bool,
    /// Relative tolerance between the two routes when both run.
    pub agreement_tol: f64,
}

impl Default for RatioOptions {
    fn default() -> Self {
        Self {
            intervals: DEFAULT_INTERVALS,
            richardson: true,
            agreement_tol: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminantRatio {
    /// `−4 sinh²(ΩL/2)` at the reference frequency.
    pub harmonic_det: f64,
    /// `|harmonic_det| / ratio`, the zero-mode-excised determinant in the
    /// same normalization.
    pub regularized_det: f64,
    /// `Det[ĥ]/Detᴿ[Ô]`, units of 1/time².
    pub ratio: f64,
    pub method: DeterminantMethod,
    pub spectral: Option<f64>,
    pub gelfand_yaglom: Option<f64>,
    /// Excised eigenvalue: the grid value for the spectral route, the
    /// shooting root otherwise.
    pub lowest_eigenvalue: f64,
    /// First retained eigenvalue from the grid, when the spectral route ran.
    pub first_excited: Option<f64>,
    pub reference_frequency: f64,
    pub intervals: usize,
}

struct SpectralPart {
    ratio: f64,
    lowest: f64,
    first_excited: f64,
}

fn spectral_log_ratio(
    op: &StabilityOperator,
    reference: f64,
    intervals: usize,
) -> Result<(f64, Vec<f64>)> {
    let d = discretize(op, intervals)?;
    let ev = symmetric_eigenvalues(&d.diag, &d.off)?;
    let w2 = reference * reference;
    let n = intervals as f64;
    let harmonic: f64 = (1..intervals)
        .map(|k| {
            let s = (k as f64 * std::f64::consts::PI / (2.0 * n)).sin();
            (w2 + 4.0 * s * s / (d.h * d.h)).ln()
        })
        .sum();
    let fluct: f64 = ev[1..].iter().map(|e| e.abs().ln()).sum();
    Ok((harmonic - fluct, ev))
}

fn spectral_ratio(
    op: &StabilityOperator,
    reference: f64,
    opts: &RatioOptions,
) -> Result<SpectralPart> {
    let (log_fine, ev_fine) = spectral_log_ratio(op, reference, opts.intervals)?;
    if !opts.richardson {
        return Ok(SpectralPart {
            ratio: log_fine.exp(),
            lowest: ev_fine[0],
            first_excited: ev_fine[1],
        });
    }
    if !opts.intervals.is_multiple_of(2) {
        return Err(Error::domain(
            "Richardson pair needs an even interval count",
        ));
    }
    let (log_coarse, ev_coarse) = spectral_log_ratio(op, reference, opts.intervals / 2)?;
    Ok(SpectralPart {
        ratio: richardson(log_fine.exp(), log_coarse.exp()),
        lowest: richardson(ev_fine[0], ev_coarse[0]),
        first_excited: richardson(ev_fine[1], ev_coarse[1]),
    })
}

fn gelfand_yaglom_ratio(op: &StabilityOperator, reference: f64) -> Result<(f64, f64)> {
    let (lo, hi) = op.window();
    let harmonic = StabilityOperator::from_fn(move |_| reference * reference, lo, hi)?;
    let h = shoot(&harmonic, 0.0)?;
    let log_h = h.y.ln() + h.log_scale;
    let scale = reference * reference;
    let (eps0, at_zero, at_root) = lowest_root(op, scale)?;
    // Detᴿ ∝ D(0)/ε₀ exactly. When ε₀ sits at the noise floor that quotient
    // is noise, and −D'(ε₀) = Detᴿ·(1 + O(ε₀ L/Ω)) is used instead.
    let log_reg = if eps0.abs() > 1e-6 * scale {
        (at_zero.y / eps0).ln() + at_zero.log_scale
    } else {
        (-at_root.z).ln() + at_root.log_scale
    };
    let ratio = (log_h - log_reg).exp();
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::Ode(format!(
            "shooting ratio is not a positive number ({ratio}); ε₀ = {eps0}"
        )));
    }
    Ok((ratio, eps0))
}

/// `Det[ĥ]/Detᴿ[Ô]` with `ĥ = −d²/dτ² + Ω²`, `Ω = reference`.
pub fn regularized_ratio(
    op: &StabilityOperator,
    reference: f64,
    method: DeterminantMethod,
    opts: &RatioOptions,
) -> Result<DeterminantRatio> {
    if !(reference > 0.0) {
        return Err(Error::domain(format!(
            "reference frequency must be > 0, got {reference}"
        )));
    }
    let spectral = match method {
        DeterminantMethod::Spectral | DeterminantMethod::Both => {
            Some(spectral_ratio(op, reference, opts)?)
        }
        DeterminantMethod::GelfandYaglom => None,
    };
    let gy = match method {
        DeterminantMethod::GelfandYaglom | DeterminantMethod::Both => {
            Some(gelfand_yaglom_ratio(op, reference)?)
        }
        DeterminantMethod::Spectral => None,
    };
    if let (Some(s), Some((g, _))) = (&spectral, &gy) {
        let gap = (s.ratio - g).abs() / s.ratio.abs().max(g.abs());
        if !(gap <= opts.agreement_tol) {
            return Err(Error::MethodsDisagree {
                spectral: s.ratio,
                gelfand_yaglom: *g,
                gap,
                tolerance: opts.agreement_tol,
            });
        }
    }
    let ratio = spectral
        .as_ref()
        .map(|s| s.ratio)
        .or(gy.map(|g| g.0))
        .unwrap();
    let harmonic_det = harmonic_determinant(reference, op.size());
    Ok(DeterminantRatio {
        harmonic_det,
        regularized_det: harmonic_det.abs() / ratio,
        ratio,
        method,
        spectral: spectral.as_ref().map(|s| s.ratio),
        gelfand_yaglom: gy.map(|g| g.0),
        lowest_eigenvalue: spectral
            .as_ref()
            .map(|s| s.lowest)
            .or(gy.map(|g| g.1))
            .unwrap(),
        first_excited: spectral.as_ref().map(|s| s.first_excited),
        reference_frequency: reference,
        intervals: opts.intervals,
    })
}
