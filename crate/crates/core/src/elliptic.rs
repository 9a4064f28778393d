//! Elliptic integrals of the first kind and the Jacobi elliptic functions.
//!
//! Conventions follow the modulus `s` (not the parameter): the integrand is
//! `1/√(1 − s² sin²α)`. [`EllipticModulus`] keeps `s²` and the complement
//! `1 − s²` side by side; the physics never forms `1 − s²` by subtraction
//! because the interesting regime is `s² → 1`.
//!
//! * `K(s)`: arithmetic–geometric mean, `K = π / (2·agm(1, √(1 − s²)))`.
//! * `F(θ, s)`: Carlson's symmetric integral,
//!   `F = sin θ · R_F(cos²θ, cos²θ + (1 − s²) sin²θ, 1)`, with range
//!   reduction `F(θ + π) = F(θ) + 2K`.
//! * `sn, cn, dn`: descending Landen (Gauss) transformation.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticModulus {
    s: f64,
    s_squared: f64,
    complement: f64,
}

impl EllipticModulus {
    /// From the modulus `s` itself (`|s| ≤ 1`).
    pub fn from_modulus(s: f64) -> Result<Self> {
        if !(s.abs() <= 1.0) {
            return Err(Error::domain(format!(
                "elliptic modulus must satisfy |s| <= 1, got {s}"
            )));
        }
        Ok(Self {
            s: s.abs(),
            s_squared: s * s,
            complement: (1.0 - s.abs()) * (1.0 + s.abs()),
        })
    }

    /// From the parameter `s²`.
    pub fn from_s_squared(s_squared: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s_squared) {
            return Err(Error::domain(format!(
                "s² must lie in [0, 1], got {s_squared}"
            )));
        }
        Ok(Self {
            s: s_squared.sqrt(),
            s_squared,
            complement: 1.0 - s_squared,
        })
    }

    /// From the complementary parameter `1 − s²`, exact near `s² = 1`.
    pub fn from_complement(complement: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&complement) {
            return Err(Error::domain(format!(
                "1 − s² must lie in [0, 1], got {complement}"
            )));
        }
        let s_squared = 1.0 - complement;
        Ok(Self {
            s: s_squared.sqrt(),
            s_squared,
            complement,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn s_squared(&self) -> f64 {
        self.s_squared
    }

    /// `1 − s²`.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    pub fn is_degenerate(&self) -> bool {
        self.complement == 0.0
    }
}

/// Values of `(sn, cn, dn)` at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete integral `K(s) = F(π/2, s)`.
pub fn complete_k(s: &EllipticModulus) -> Result<f64> {
    if s.is_degenerate() {
        return Err(Error::DegenerateModulus(
            "K(s) diverges at s² = 1; use the hyperbolic limit forms".into(),
        ));
    }
    Ok(FRAC_PI_2 / agm(1.0, s.complement.sqrt()))
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const TOL: f64 = 1e-3;
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let mean = (x + y + z) / 3.0;
        let dx = (mean - x) / mean;
        let dy = (mean - y) / mean;
        let dz = (mean - z) / mean;
        if dx.abs().max(dy.abs()).max(dz.abs()) < TOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / mean.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
}

/// `F(θ, s)` for an amplitude in `[0, π/2]` given through `sin θ` and
/// `cos θ`. Passing the pair avoids losing `cos θ` to rounding when `θ` sits
/// next to `π/2`, which is where the classical paths need it.
pub fn incomplete_f_sin_cos(sin_theta: f64, cos_theta: f64, s: &EllipticModulus) -> Result<f64> {
    if !(sin_theta >= 0.0 && cos_theta >= 0.0) {
        return Err(Error::domain(format!(
            "amplitude must lie in [0, π/2]: sin = {sin_theta}, cos = {cos_theta}"
        )));
    }
    if sin_theta == 0.0 {
        return Ok(0.0);
    }
    let c2 = cos_theta * cos_theta;
    let delta2 = c2 + s.complement * sin_theta * sin_theta;
    if delta2 == 0.0 {
        return Err(Error::DegenerateModulus(
            "F(π/2, s) diverges at s² = 1".into(),
        ));
    }
    Ok(sin_theta * carlson_rf(c2, delta2, 1.0))
}

/// Incomplete integral `F(θ, s) = ∫₀^θ dα / √(1 − s² sin²α)` for any real
/// amplitude.
pub fn incomplete_f(theta: f64, s: &EllipticModulus) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::domain(format!(
            "amplitude must be finite, got {theta}"
        )));
    }
    let turns = (theta / std::f64::consts::PI).round();
    let phi = theta - turns * std::f64::consts::PI;
    let core = incomplete_f_sin_cos(phi.abs().sin(), phi.abs().cos(), s)?.copysign(phi);
    if turns == 0.0 {
        return Ok(core);
    }
    Ok(2.0 * turns * complete_k(s)? + core)
}

/// `(sn, cn, dn)(u, s)`.
///
/// At `s² = 1` exactly the functions are `(tanh, sech, sech)`; at `s = 0`
/// they are `(sin, cos, 1)`. Everything in between goes through the
/// descending Gauss transformation driven by the complementary parameter, so
/// accuracy holds up as `s² → 1`.
pub fn jacobi_sn_cn_dn(u: f64, s: &EllipticModulus) -> JacobiTriple {
    if s.complement == 0.0 {
        let sech = 1.0 / u.cosh();
        return JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        };
    }
    if s.s_squared == 0.0 {
        return JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        };
    }

    const CA: f64 = 1e-8;
    const DEPTH: usize = 40;
    let mut means = [0.0; DEPTH];
    let mut roots = [0.0; DEPTH];
    let mut b = s.complement;
    let mut a = 1.0;
    let mut c = 1.0;
    let mut last = 0;
    for i in 0..DEPTH {
        last = i;
        means[i] = a;
        b = b.sqrt();
        roots[i] = b;
        c = 0.5 * (a + b);
        if (a - b).abs() <= CA * a {
            break;
        }
        b *= a;
        a = c;
    }

    let arg = u * c;
    let mut sn = arg.sin();
    let mut cn = arg.cos();
    let mut dn = 1.0;
    if sn != 0.0 {
        let mut a = cn / sn;
        c *= a;
        for i in (0..=last).rev() {
            let b = means[i];
            a *= c;
            c *= dn;
            dn = (roots[i] + a) / (b + a);
            a = c / b;
        }
        let r = 1.0 / (c * c + 1.0).sqrt();
        sn = r.copysign(sn);
        cn = c * sn;
    }
    JacobiTriple { sn, cn, dn }
}
