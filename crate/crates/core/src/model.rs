//! The symmetric quartic double well
//!
//! ```text
//! V(x) = Mω²/(4a²) (x − a)² (x + a)²,    a = √(Mω²/δ)
//! ```
//!
//! which is the same polynomial as `−Mω²x²/2 + δx⁴/4 + δa⁴/4`. The factored
//! form is the one evaluated everywhere so that the minima are exact zeros.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the double well. The well position `a` is derived
/// and can not be set independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubleWellParams {
    mass: f64,
    omega: f64,
    delta: f64,
    hbar: f64,
    #[serde(rename = "a")]
    well_position: f64,
}

impl DoubleWellParams {
    pub fn new(mass: f64, omega: f64, delta: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [
            ("mass", mass),
            ("omega", omega),
            ("delta", delta),
            ("hbar", hbar),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            mass,
            omega,
            delta,
            hbar,
            well_position: (mass * omega * omega / delta).sqrt(),
        })
    }

    /// Reduced units M = ω = ħ = 1 with the quartic constant left free.
    pub fn reduced(delta: f64) -> Result<Self> {
        Self::new(1.0, 1.0, delta, 1.0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Position `a` of the minima.
    pub fn well_position(&self) -> f64 {
        self.well_position
    }

    /// `δa⁴`, the natural energy scale (four times the barrier height).
    pub fn energy_scale(&self) -> f64 {
        let a2 = self.well_position * self.well_position;
        self.delta * a2 * a2
    }

    pub fn barrier_height(&self) -> f64 {
        potential(self, 0.0)
    }

    /// Small-oscillation frequency at the bottom of either well,
    /// `√(V''(±a)/M) = √2·ω`.
    pub fn well_curvature_frequency(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.omega
    }

    fn stiffness(&self) -> f64 {
        self.mass * self.omega * self.omega / (self.well_position * self.well_position)
    }
}

impl Default for DoubleWellParams {
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0, 1.0).expect("unit parameters are valid")
    }
}

#[derive(Deserialize)]
struct RawParams {
    mass: f64,
    omega: f64,
    delta: f64,
    hbar: f64,
}

impl<'de> Deserialize<'de> for DoubleWellParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawParams::deserialize(d)?;
        DoubleWellParams::new(raw.mass, raw.omega, raw.delta, raw.hbar)
            .map_err(serde::de::Error::custom)
    }
}

pub fn potential(p: &DoubleWellParams, x: f64) -> f64 {
    let a = p.well_position;
    let d = (x - a) * (x + a);
    0.25 * p.stiffness() * d * d
}

/// `V'(x) = δx³ − Mω²x`, evaluated as `(Mω²/a²)·x(x − a)(x + a)`.
pub fn d_potential(p: &DoubleWellParams, x: f64) -> f64 {
    let a = p.well_position;
    p.stiffness() * x * (x - a) * (x + a)
}

/// `V''(x) = (Mω²/a²)(3x² − a²)`.
pub fn dd_potential(p: &DoubleWellParams, x: f64) -> f64 {
    let a = p.well_position;
    p.stiffness() * (3.0 * x * x - a * a)
}

/// Euclidean extent corresponding to a temperature, `L = ħ/(k_B T)`.
pub fn temperature_to_size(p: &DoubleWellParams, temperature: f64, boltzmann: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain(format!(
            "temperature must be > 0, got {temperature}"
        )));
    }
    if !(boltzmann > 0.0) {
        return Err(Error::domain(format!(
            "Boltzmann constant must be > 0, got {boltzmann}"
        )));
    }
    Ok(p.hbar / (boltzmann * temperature))
}

/// Inverse of [`temperature_to_size`].
pub fn size_to_temperature(p: &DoubleWellParams, size: f64, boltzmann: f64) -> Result<f64> {
    if !(size > 0.0) {
        return Err(Error::domain(format!("size must be > 0, got {size}")));
    }
    Ok(p.hbar / (boltzmann * size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> DoubleWellParams {
        DoubleWellParams::default()
    }

    fn expanded(p: &DoubleWellParams, x: f64) -> f64 {
        let a = p.well_position();
        -0.5 * p.mass() * p.omega().powi(2) * x * x
            + 0.25 * p.delta() * x.powi(4)
            + 0.25 * p.delta() * a.powi(4)
    }

    #[test]
    fn potential_values() {
        let p = unit();
        assert_eq!(potential(&p, 1.0), 0.0);
        assert_eq!(potential(&p, -1.0), 0.0);
        assert!((potential(&p, 0.5) - 0.140625).abs() < 1e-15);
        let p = DoubleWellParams::new(2.0, 1.5, 0.7, 1.0).unwrap();
        let a = p.well_position();
        assert!((potential(&p, 0.0) - 0.25 * p.delta() * a.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn derivative_values() {
        let p = unit();
        assert_eq!(d_potential(&p, 0.0), 0.0);
        assert_eq!(d_potential(&p, 1.0), 0.0);
        assert_eq!(d_potential(&p, -1.0), 0.0);
        assert!((d_potential(&p, 0.5) + 0.375).abs() < 1e-15);

        let p = DoubleWellParams::new(1.3, 0.8, 2.1, 1.0).unwrap();
        let a = p.well_position();
        let curv = 2.0 * p.mass() * p.omega().powi(2);
        assert!((dd_potential(&p, a) - curv).abs() < 1e-12 * curv);
        assert!((dd_potential(&p, -a) - curv).abs() < 1e-12 * curv);
        assert!((dd_potential(&p, 0.0) + p.mass() * p.omega().powi(2)).abs() < 1e-12);
        assert!(dd_potential(&p, a / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let p = DoubleWellParams::new(1.0, 1.2, 0.6, 1.0).unwrap();
        let h = 1e-5;
        for i in 0..40 {
            let x = -2.0 + 0.1 * i as f64 + 0.0123;
            let fd = (potential(&p, x + h) - potential(&p, x - h)) / (2.0 * h);
            let an = d_potential(&p, x);
            assert!(
                (fd - an).abs() <= 1e-6 * an.abs().max(1e-3),
                "x={x}: {fd} vs {an}"
            );
            let fd2 = (d_potential(&p, x + h) - d_potential(&p, x - h)) / (2.0 * h);
            let an2 = dd_potential(&p, x);
            assert!((fd2 - an2).abs() <= 1e-6 * an2.abs().max(1e-3));
        }
    }

    #[test]
    fn temperature_map() {
        let p = unit();
        assert_eq!(temperature_to_size(&p, 0.1, 1.0).unwrap(), 10.0);
        assert_eq!(temperature_to_size(&p, 2.0, 1.0).unwrap(), 0.5);
        assert!(temperature_to_size(&p, 1e-300, 1.0).unwrap() > 1e299);
        assert!(temperature_to_size(&p, 0.0, 1.0).is_err());
        assert!(temperature_to_size(&p, -1.0, 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(DoubleWellParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(DoubleWellParams::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(DoubleWellParams::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(DoubleWellParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn json_round_trip_rederives_well_position() {
        let p = DoubleWellParams::new(2.0, 3.0, 0.5, 1.0).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let q: DoubleWellParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let bad = r#"{"mass":1,"omega":1,"delta":-1,"hbar":1}"#;
        assert!(serde_json::from_str::<DoubleWellParams>(bad).is_err());
    }

    proptest! {
        #[test]
        fn factored_equals_expanded(
            m in 0.1f64..10.0, w in 0.1f64..10.0, d in 0.05f64..10.0, t in -3.0f64..3.0
        ) {
            let p = DoubleWellParams::new(m, w, d, 1.0).unwrap();
            let x = t * p.well_position();
            let f = potential(&p, x);
            let e = expanded(&p, x);
            // the expanded form cancels near the minima; compare on the barrier scale
            let scale = p.barrier_height().max(f.abs());
            prop_assert!((f - e).abs() <= 1e-12 * scale);
        }

        #[test]
        fn parity(m in 0.1f64..10.0, w in 0.1f64..10.0, d in 0.05f64..10.0, x in -5.0f64..5.0) {
            let p = DoubleWellParams::new(m, w, d, 1.0).unwrap();
            prop_assert_eq!(potential(&p, x), potential(&p, -x));
        }
    }
}
