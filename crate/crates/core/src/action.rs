//! Euclidean action and zero-mode norm of a classical path.

use serde::Serialize;

use crate::background::ClassicalPath;
use crate::error::{Error, Result};
use crate::model::{potential, DoubleWellParams};
use crate::numeric::quadrature::{integrate, integrate_pieces, QuadOptions};

const REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionResult {
    pub action: f64,
    /// `(M/2)∫ẋ²`
    pub kinetic: f64,
    /// `∫V`
    pub potential: f64,
    /// `N̄⁻² = ∫ẋ²` over the window
    pub zero_mode_norm_sq: f64,
    /// Window actually integrated, relative to the path centre.
    pub window: (f64, f64),
    /// Quadrature error estimate on `action`.
    pub error_estimate: f64,
    /// Set when the path is constant and the zero mode has no norm.
    pub degenerate: bool,
}

/// Half-width of the integration window: `L/2`, or the saturation time of
/// an infinite path.
fn half_window<P: ClassicalPath + ?Sized>(path: &P, size: f64) -> Result<f64> {
    if size.is_finite() {
        if !(size > 0.0) {
            return Err(Error::domain(format!(
                "window size must be > 0, got {size}"
            )));
        }
        return Ok(0.5 * size);
    }
    path.saturation_time()
        .ok_or_else(|| Error::domain("infinite window requested for a finite-size path"))
}

// Both integrands are even about the centre of motion; integrate one half.
// The tails carry almost none of the integral, so they get an absolute
// tolerance taken from the central piece instead of a relative one.
fn half_integral<F: Fn(f64) -> f64>(f: F, half: f64) -> Result<(f64, f64)> {
    let points = [0.125 * half, 0.25 * half, 0.5 * half, half];
    let core = integrate(&f, 0.0, points[0], QuadOptions::relative(REL_TOL))?;
    let tail_opts = QuadOptions {
        abs_tol: 0.25 * REL_TOL * core.value.abs(),
        ..QuadOptions::relative(REL_TOL)
    };
    let tail = integrate_pieces(&f, &points, tail_opts)?;
    Ok((
        2.0 * (core.value + tail.value),
        2.0 * (core.error_estimate + tail.error_estimate),
    ))
}

/// Kinetic and potential parts of the action plus the zero-mode norm over
/// `[τ₀ − L/2, τ₀ + L/2]`; `L = ∞` is allowed for paths that saturate.
pub fn evaluate_action<P: ClassicalPath + ?Sized>(path: &P, size: f64) -> Result<ActionResult> {
    let half = half_window(path, size)?;
    let p = path.params();
    let c = path.center();
    let (norm, err_k) = half_integral(
        |t| {
            let v = path.velocity(c + t);
            v * v
        },
        half,
    )?;
    let (pot, err_v) = half_integral(|t| potential(p, path.position(c + t)), half)?;
    let kinetic = 0.5 * p.mass() * norm;
    Ok(ActionResult {
        action: kinetic + pot,
        kinetic,
        potential: pot,
        zero_mode_norm_sq: norm,
        window: (-half, half),
        error_estimate: 0.5 * p.mass() * err_k + err_v,
        degenerate: norm == 0.0,
    })
}

/// `A = ∫ dτ ((M/2)ẋ² + V(x))` over the window.
pub fn classical_action<P: ClassicalPath + ?Sized>(path: &P, size: f64) -> Result<f64> {
    Ok(evaluate_action(path, size)?.action)
}

/// `N̄⁻² = 2∫₀^{L/2} ẋ² dτ`.
pub fn zero_mode_norm_sq<P: ClassicalPath + ?Sized>(path: &P, size: f64) -> Result<f64> {
    Ok(evaluate_action(path, size)?.zero_mode_norm_sq)
}

/// Kink action `(2√2/3) M²ω³/δ`.
pub fn asymptotic_action(p: &DoubleWellParams) -> f64 {
    let m = p.mass();
    let w = p.omega();
    2.0 * std::f64::consts::SQRT_2 / 3.0 * m * m * w * w * w / p.delta()
}
