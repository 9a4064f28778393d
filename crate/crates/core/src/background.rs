//! Classical Euclidean backgrounds of the double well.
//!
//! The imaginary-time equation of motion `Mẍ = V'(x)` has the first integral
//! `(M/2)ẋ² − V(x) = E`. For `E = 0` the solution is the kink
//! `±a·tanh(ω(τ − τ₀)/√2)`; for `E > 0` it is the elliptic family
//!
//! ```text
//! x₁(τ) =  (2κ)^¼ a · sn(ϖ)dn(ϖ)/cn(ϖ)
//! x₂(τ) = −(2κ)^¼ a · cn(ϖ)/(sn(ϖ)dn(ϖ))
//! ϖ = (κ/2)^¼ ω (τ − τ₀),  κ = ½ + 2E/(δa⁴),  s² = ½(1 + 1/√(2κ))
//! ```
//!
//! with both branches sharing one time parametrization (`x₂(ϖ) = x₁(ϖ − K)`).
//! A path of size `L` connects `−a` to `+a`, so `x₁(L/2) = a`; that condition
//! fixes `E` as a function of `L`.

use serde::Serialize;

use crate::elliptic::{complete_k, incomplete_f_sin_cos, jacobi_sn_cn_dn, EllipticModulus};
use crate::error::{Error, Result};
use crate::model::{d_potential, potential, DoubleWellParams};
use crate::numeric::quadrature::{integrate, QuadOptions};
use crate::numeric::roots::{brent, BrentOptions};

/// Uniform view of a classical path for the action and fluctuation modules.
pub trait ClassicalPath: Send + Sync {
    fn params(&self) -> &DoubleWellParams;

    /// `x(τ)`. Only meaningful inside the path's non-singular window.
    fn position(&self, tau: f64) -> f64;

    /// `ẋ(τ)`, from the analytic derivative of the closed form.
    fn velocity(&self, tau: f64) -> f64;

    /// The first-integral constant `E = (M/2)ẋ² − V(x)`.
    fn energy(&self) -> f64;

    /// Centre of motion `τ₀`.
    fn center(&self) -> f64 {
        0.0
    }

    /// Half-width beyond which the path equals its asymptotic vacuum to
    /// double precision. Only infinite-size paths have one.
    fn saturation_time(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KinkSign {
    Kink,
    Antikink,
}

impl KinkSign {
    fn factor(self) -> f64 {
        match self {
            KinkSign::Kink => 1.0,
            KinkSign::Antikink => -1.0,
        }
    }
}

/// The infinite-size (anti)kink `±a·tanh(ω(τ − τ₀)/√2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinkPath {
    pub params: DoubleWellParams,
    pub tau0: f64,
    pub sign: KinkSign,
}

impl KinkPath {
    pub fn new(params: DoubleWellParams) -> Self {
        Self {
            params,
            tau0: 0.0,
            sign: KinkSign::Kink,
        }
    }

    pub fn antikink(params: DoubleWellParams) -> Self {
        Self {
            sign: KinkSign::Antikink,
            ..Self::new(params)
        }
    }

    fn phase(&self, tau: f64) -> f64 {
        self.params.omega() * (tau - self.tau0) / std::f64::consts::SQRT_2
    }
}

pub fn kink_position(k: &KinkPath, tau: f64) -> f64 {
    k.sign.factor() * k.params.well_position() * k.phase(tau).tanh()
}

impl ClassicalPath for KinkPath {
    fn params(&self) -> &DoubleWellParams {
        &self.params
    }

    fn position(&self, tau: f64) -> f64 {
        kink_position(self, tau)
    }

    fn velocity(&self, tau: f64) -> f64 {
        let sech = 1.0 / self.phase(tau).cosh();
        self.sign.factor() * self.params.well_position() * self.params.omega()
            / std::f64::consts::SQRT_2
            * sech
            * sech
    }

    fn energy(&self) -> f64 {
        0.0
    }

    fn center(&self) -> f64 {
        self.tau0
    }

    fn saturation_time(&self) -> Option<f64> {
        // a − |x(T)| < 1e−14·a
        let z = (1.0 - 1e-14f64).atanh();
        Some(std::f64::consts::SQRT_2 * z / self.params.omega())
    }
}

/// The constant path sitting in one well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VacuumPath {
    pub params: DoubleWellParams,
    pub sign: KinkSign,
}

impl ClassicalPath for VacuumPath {
    fn params(&self) -> &DoubleWellParams {
        &self.params
    }

    fn position(&self, _tau: f64) -> f64 {
        self.sign.factor() * self.params.well_position()
    }

    fn velocity(&self, _tau: f64) -> f64 {
        0.0
    }

    fn energy(&self) -> f64 {
        0.0
    }
}

/// Member of the elliptic instanton family with integration constant
/// `E ≥ 0`, carried on the window `[τ₀ − L/2, τ₀ + L/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteInstanton {
    pub params: DoubleWellParams,
    pub energy: f64,
    pub kappa: f64,
    pub modulus: EllipticModulus,
    pub tau0: f64,
    pub size: f64,
    quarter_period: f64,
    lattice_rate: f64,
}

/// `(κ, s)` from `E`, keeping `1 − s²` free of cancellation.
fn kappa_and_modulus(p: &DoubleWellParams, energy: f64) -> Result<(f64, EllipticModulus, f64)> {
    if !(energy >= 0.0) || !energy.is_finite() {
        return Err(Error::domain(format!(
            "instanton energy must be finite and >= 0, got {energy}"
        )));
    }
    let eps = 4.0 * energy / p.energy_scale();
    let root = (1.0 + eps).sqrt();
    let kappa = 0.5 * (1.0 + eps);
    let complement = eps / (2.0 * root * (1.0 + root));
    Ok((kappa, EllipticModulus::from_complement(complement)?, eps))
}

impl FiniteInstanton {
    /// The instanton with integration constant `E`, sized by its own
    /// boundary condition (`L = ∞` at `E = 0`).
    pub fn from_energy(params: DoubleWellParams, energy: f64) -> Result<Self> {
        let size = size_for_energy(&params, energy)?;
        Self::with_size(params, energy, size)
    }

    /// An instanton with explicit `(E, L)`; `L` is not checked against the
    /// boundary condition.
    pub fn with_size(params: DoubleWellParams, energy: f64, size: f64) -> Result<Self> {
        let (kappa, modulus, _) = kappa_and_modulus(&params, energy)?;
        let quarter_period = if modulus.is_degenerate() {
            f64::INFINITY
        } else {
            complete_k(&modulus)?
        };
        Ok(Self {
            params,
            energy,
            kappa,
            modulus,
            tau0: 0.0,
            size,
            quarter_period,
            lattice_rate: (0.5 * kappa).powf(0.25) * params.omega(),
        })
    }

    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    /// `ϖ = (κ/2)^¼ ω (τ − τ₀)`.
    pub fn lattice_arg(&self, tau: f64) -> f64 {
        self.lattice_rate * (tau - self.tau0)
    }

    /// `ϖ*/K(s)` with `ϖ* = (κ/2)^¼ ωL/2`; below one when the window fits
    /// inside the first lattice period.
    pub fn period_ratio(&self) -> f64 {
        self.lattice_rate * 0.5 * self.size / self.quarter_period
    }

    fn amplitude(&self) -> f64 {
        (2.0 * self.kappa).powf(0.25) * self.params.well_position()
    }

    fn branch1_unchecked(&self, tau: f64) -> f64 {
        let t = jacobi_sn_cn_dn(self.lattice_arg(tau), &self.modulus);
        self.amplitude() * t.sn * t.dn / t.cn
    }

    fn branch2_unchecked(&self, tau: f64) -> f64 {
        let t = jacobi_sn_cn_dn(self.lattice_arg(tau), &self.modulus);
        -self.amplitude() * t.cn / (t.sn * t.dn)
    }

    // d/dϖ (sn dn / cn) = (1 − s²)/cn² + s² cn²
    fn branch1_velocity(&self, tau: f64) -> f64 {
        let t = jacobi_sn_cn_dn(self.lattice_arg(tau), &self.modulus);
        let cn2 = t.cn * t.cn;
        self.rate_prefactor() * (self.modulus.complement() / cn2 + self.modulus.s_squared() * cn2)
    }

    fn branch2_velocity(&self, tau: f64) -> f64 {
        let t = jacobi_sn_cn_dn(self.lattice_arg(tau), &self.modulus);
        let cn2 = t.cn * t.cn;
        let num = self.modulus.complement() + self.modulus.s_squared() * cn2 * cn2;
        self.rate_prefactor() * num / (t.sn * t.sn * t.dn * t.dn)
    }

    // (2κ)^¼ a · (κ/2)^¼ ω = √κ a ω
    fn rate_prefactor(&self) -> f64 {
        self.kappa.sqrt() * self.params.well_position() * self.params.omega()
    }

    /// The second branch of the family as a path of its own, centred on its
    /// zero at `ϖ = K` so that it covers the same window as the first.
    pub fn second_branch(&self) -> SecondBranch {
        SecondBranch { inner: *self }
    }
}

/// First branch, checked: `|ϖ| < K(s)`.
pub fn instanton_position_1(f: &FiniteInstanton, tau: f64) -> Result<f64> {
    let w = f.lattice_arg(tau);
    if w.abs() >= f.quarter_period {
        return Err(Error::SingularPoint {
            lattice_arg: w,
            quarter_period: f.quarter_period,
        });
    }
    Ok(f.branch1_unchecked(tau))
}

/// Second branch, checked: `0 < |ϖ| < K(s)`.
pub fn instanton_position_2(f: &FiniteInstanton, tau: f64) -> Result<f64> {
    let w = f.lattice_arg(tau);
    if w == 0.0 || w.abs() >= f.quarter_period {
        return Err(Error::SingularPoint {
            lattice_arg: w,
            quarter_period: f.quarter_period,
        });
    }
    Ok(f.branch2_unchecked(tau))
}

impl ClassicalPath for FiniteInstanton {
    fn params(&self) -> &DoubleWellParams {
        &self.params
    }

    fn position(&self, tau: f64) -> f64 {
        self.branch1_unchecked(tau)
    }

    fn velocity(&self, tau: f64) -> f64 {
        self.branch1_velocity(tau)
    }

    fn energy(&self) -> f64 {
        self.energy
    }

    fn center(&self) -> f64 {
        self.tau0
    }
}

/// `x₂` shifted by one quarter period, `x₂(ϖ + K)`, so that its zero sits at
/// `τ₀` like the first branch.
#[derive(Debug, Clone, Copy)]
pub struct SecondBranch {
    inner: FiniteInstanton,
}

impl SecondBranch {
    fn shifted(&self, tau: f64) -> f64 {
        tau + self.inner.quarter_period / self.inner.lattice_rate
    }
}

impl ClassicalPath for SecondBranch {
    fn params(&self) -> &DoubleWellParams {
        &self.inner.params
    }

    fn position(&self, tau: f64) -> f64 {
        self.inner.branch2_unchecked(self.shifted(tau))
    }

    fn velocity(&self, tau: f64) -> f64 {
        self.inner.branch2_velocity(self.shifted(tau))
    }

    fn energy(&self) -> f64 {
        self.inner.energy
    }

    fn center(&self) -> f64 {
        self.inner.tau0
    }
}

/// `ẋ(τ)` of any classical path.
pub fn velocity<P: ClassicalPath + ?Sized>(path: &P, tau: f64) -> f64 {
    path.velocity(tau)
}

/// Size `L(E)` at which the first branch reaches `+a`, in closed form:
/// `x₁ = a` at amplitude `θ* = 2·arctan((2κ)^−¼)`, and `L = F(θ*, s)/((κ/2)^¼ ω)`.
/// `E = 0` gives `L = ∞`.
pub fn size_for_energy(p: &DoubleWellParams, energy: f64) -> Result<f64> {
    let (kappa, modulus, eps) = kappa_and_modulus(p, energy)?;
    if modulus.is_degenerate() {
        return Ok(f64::INFINITY);
    }
    let root = (1.0 + eps).sqrt();
    // t = tan(θ*/2) = (1 + eps)^−¼
    let t2 = 1.0 / root;
    let one_minus_t2 = eps / (root * (1.0 + root));
    let sin_theta = 2.0 * t2.sqrt() / (1.0 + t2);
    let cos_theta = one_minus_t2 / (1.0 + t2);
    let f = incomplete_f_sin_cos(sin_theta, cos_theta, &modulus)?;
    Ok(f / ((0.5 * kappa).powf(0.25) * p.omega()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

/// Size at which the chosen branch satisfies `x(±L/2) = ±a`, found by
/// root-finding on the branch itself rather than through the closed form.
///
/// Near the window edge `x` crosses `±a` with slope `~√E`, so `x − a`
/// cannot locate the crossing in double precision once `E` is tiny. The
/// conditions are therefore multiplied through by `cn²` (resp. `sn²dn²`)
/// and written in `c = cn²(ϖ)` with `dn² = m' + s²c`, `sn² = 1 − c`; the
/// O(1) parts then cancel analytically and every remaining term is O(E):
///
/// ```text
/// x₁ =  a:  C²m' + c(C²s² − 1) − C²m'c − C²s²c² = 0
/// x₂ = −a:  s²c² + c(C² − 1 + 2m') − m'        = 0,   C² = √(2κ)
/// ```
pub fn boundary_size(p: &DoubleWellParams, energy: f64, branch: Branch) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::domain(format!(
            "boundary size needs E > 0, got {energy}"
        )));
    }
    let (_, _, eps) = kappa_and_modulus(p, energy)?;
    let f = FiniteInstanton::with_size(*p, energy, f64::NAN)?;
    let k = f.quarter_period;
    let m = f.modulus.s_squared();
    let mc = f.modulus.complement();
    let c2 = (1.0 + eps).sqrt();
    let c2_minus_1 = eps / (1.0 + c2);
    let opts = BrentOptions {
        x_tol: 1e-15 * k,
        ..BrentOptions::default()
    };
    let cn_sq = |w: f64| {
        let t = jacobi_sn_cn_dn(w, &f.modulus);
        t.cn * t.cn
    };
    match branch {
        Branch::First => {
            // C²s² − 1 = (C² − 1) − C²m'
            let lin = c2_minus_1 - c2 * mc;
            let h = |w: f64| {
                let c = cn_sq(w);
                c2 * mc + c * lin - c2 * mc * c - c2 * m * c * c
            };
            let w = brent(h, 0.0, k, opts)?;
            Ok(2.0 * w / f.lattice_rate)
        }
        Branch::Second => {
            // x₂ runs from −∞ at ϖ = 0⁺ to 0 at ϖ = K; the window is
            // symmetric about K.
            let lin = c2_minus_1 + 2.0 * mc;
            let h = |w: f64| {
                let c = cn_sq(w);
                m * c * c + c * lin - mc
            };
            let w = brent(h, 0.0, k, opts)?;
            Ok(2.0 * (k - w) / f.lattice_rate)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Lowest energy tried, in units of `δa⁴`.
    pub e_min_factor: f64,
    /// Give up above this energy, in units of `δa⁴`.
    pub e_max_factor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            e_min_factor: 1e-16,
            e_max_factor: 1e4,
        }
    }
}

/// The finite instanton whose first branch meets `x(L/2) = a`.
pub fn solve_energy_for_size(p: &DoubleWellParams, size: f64) -> Result<FiniteInstanton> {
    solve_energy_for_size_with(p, size, SolverOptions::default())
}

pub fn solve_energy_for_size_with(
    p: &DoubleWellParams,
    size: f64,
    opts: SolverOptions,
) -> Result<FiniteInstanton> {
    if !(size > 0.0) || !size.is_finite() {
        return Err(Error::domain(format!(
            "size must be finite and > 0, got {size}"
        )));
    }
    let scale = p.energy_scale();
    let target = size.ln();
    let g = |log_e: f64| -> Result<f64> { Ok(size_for_energy(p, log_e.exp())?.ln() - target) };

    // L(E) decreases monotonically; walk a logarithmic bracket
    let mut lo = (opts.e_min_factor * scale).ln();
    let mut g_lo = g(lo)?;
    let floor = (1e-300 * scale).ln();
    while g_lo < 0.0 {
        lo -= 6.0 * std::f64::consts::LN_10;
        if lo < floor {
            return Err(Error::NoInstanton {
                size,
                reason: "required energy underflows double precision".into(),
            });
        }
        g_lo = g(lo)?;
    }
    let ceiling = (opts.e_max_factor * scale).ln();
    let mut hi = lo;
    let mut g_hi = g_lo;
    while g_hi > 0.0 {
        lo = hi;
        hi += std::f64::consts::LN_10;
        if hi > ceiling {
            return Err(Error::NoInstanton {
                size,
                reason: format!(
                    "no bracketing energy below E_max = {:e}; size too small",
                    opts.e_max_factor * scale
                ),
            });
        }
        g_hi = g(hi)?;
    }

    let log_e = brent(
        |x| g(x).unwrap_or(f64::NAN),
        lo,
        hi,
        BrentOptions {
            x_tol: 1e-14,
            ..BrentOptions::default()
        },
    )?;
    let energy = log_e.exp();
    let f = FiniteInstanton::with_size(*p, energy, size)?;
    if !(f.period_ratio() < 1.0) {
        return Err(Error::NoInstanton {
            size,
            reason: format!(
                "window exceeds the lattice period (ϖ*/K = {})",
                f.period_ratio()
            ),
        });
    }
    Ok(f)
}

/// `τ(x) − τ₀ = √(M/2) ∫₀ˣ dy / √(E + V(y))` by adaptive quadrature.
pub fn time_of_position(p: &DoubleWellParams, energy: f64, x: f64) -> Result<f64> {
    if !(energy >= 0.0) {
        return Err(Error::domain(format!("energy must be >= 0, got {energy}")));
    }
    if energy == 0.0 && x.abs() >= p.well_position() {
        return Err(Error::domain(format!(
            "E + V vanishes at x = ±a; |x| = {} is not reachable at E = 0",
            x.abs()
        )));
    }
    let r = integrate(
        |y| 1.0 / (energy + potential(p, y)).sqrt(),
        0.0,
        x,
        QuadOptions::relative(1e-13),
    )?;
    Ok((0.5 * p.mass()).sqrt() * r.value)
}

/// `max |M ẍ − V'(x)|` over `grid`, with `ẍ` from a centred second
/// difference of the position.
pub fn euler_lagrange_residual<P: ClassicalPath + ?Sized>(path: &P, grid: &[f64]) -> f64 {
    let p = path.params();
    let h = 1e-3 / p.omega();
    grid.iter()
        .map(|&t| {
            let x = path.position(t);
            let acc = (path.position(t + h) - 2.0 * x + path.position(t - h)) / (h * h);
            (p.mass() * acc - d_potential(p, x)).abs()
        })
        .fold(0.0, f64::max)
}
