//! Slow, high-accuracy reference evaluation of `K_0`, `M^2_nu(z)`,
//! `theta_nu(z)`, `J_nu(z)`, `Y_nu(z)` from integral representations and
//! ascending series, independent of all asymptotic expansions in this crate.

mod jy;
mod k0;
mod nicholson;
mod phase;

pub use jy::{bessel_jy, JyValues, SERIES_CEILING};
pub use k0::{g, k0};
pub use nicholson::modulus_sq_nicholson;
pub use phase::{phase_increment, phase_integral};

pub(crate) use k0::g_fast;
pub(crate) use phase::inv_u_m2;

use crate::coords::EvalPoint;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerances for the integral evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Target absolute tolerance.
    pub abs_tol: f64,
    /// Target relative tolerance.
    pub rel_tol: f64,
    /// Tanh-sinh refinement levels.
    pub max_levels: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_levels: 12,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if !(4..=20).contains(&self.max_levels) {
            return Err(Error::Config(format!(
                "max_levels must lie in [4, 20], got {}",
                self.max_levels
            )));
        }
        Ok(())
    }
}

/// A positive quantity carried as its natural logarithm.
///
/// `M^2_nu(z)` grows exponentially for `nu > z`; all modulus work there stays
/// log-scaled and the plain value is materialized only when representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaled {
    pub log_value: f64,
    /// Always `+1` for now; reserved for future signed use.
    pub sign: i8,
}

impl LogScaled {
    pub fn from_log(log_value: f64) -> Self {
        Self { log_value, sign: 1 }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("LogScaled::from_value needs v > 0, got {v}")));
        }
        Ok(Self {
            log_value: v.ln(),
            sign: 1,
        })
    }

    /// The plain value; `+inf` if unrepresentable.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// The plain value when it fits in an `f64` (log below ~709).
    pub fn try_value(&self) -> Option<f64> {
        if self.log_value < 709.0 {
            Some(self.log_value.exp())
        } else {
            None
        }
    }
}

/// Modulus and unwrapped phase at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusPhase {
    /// `M_nu(z) > 0` (may be `+inf` deep in the exponential regime; consult
    /// `log_modulus_sq` there).
    pub modulus: f64,
    /// `theta_nu(z)`, radians, unwrapped and strictly increasing in `z`.
    pub phase: f64,
    pub log_modulus_sq: LogScaled,
}

/// Modulus from Nicholson's integral, phase from the phase integral.
pub fn modulus_phase_oracle(p: EvalPoint, q: &QuadratureSpec) -> Result<ModulusPhase> {
    let log_m2 = modulus_sq_nicholson(p, q)?;
    let phase = phase_integral(p, q)?;
    Ok(ModulusPhase {
        modulus: (0.5 * log_m2.log_value).exp(),
        phase,
        log_modulus_sq: log_m2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_scaled_roundtrip() {
        let v = LogScaled::from_value(12.5).unwrap();
        assert_relative_eq!(v.value(), 12.5, max_relative = 1e-15);
        assert_eq!(v.try_value().map(|x| x.round()), Some(13.0));
        assert!(LogScaled::from_log(800.0).try_value().is_none());
        assert!(LogScaled::from_value(0.0).is_err());
    }

    #[test]
    fn modulus_phase_consistency_with_series() {
        let q = QuadratureSpec::default();
        // (z=1, nu=0): M ~ 0.770271, theta ~ 0.114831
        let mp = modulus_phase_oracle(EvalPoint::new(1.0, 0.0).unwrap(), &q).unwrap();
        assert_relative_eq!(mp.modulus, 0.593_316_791_246_231_3_f64.sqrt(), max_relative = 1e-9);
        assert_relative_eq!(mp.phase, 0.114_831_367_614_148, epsilon = 1e-9);
        // reconstruct J, Y
        let v = bessel_jy(1.0, 0.0).unwrap();
        assert!((mp.modulus * mp.phase.cos() - v.j).abs() < 1e-9);
        assert!((mp.modulus * mp.phase.sin() - v.y).abs() < 1e-9);
    }

    #[test]
    fn modulus_sq_matches_log_form() {
        let q = QuadratureSpec::default();
        let mp = modulus_phase_oracle(EvalPoint::new(7.0, 2.0).unwrap(), &q).unwrap();
        assert_relative_eq!(
            mp.modulus * mp.modulus,
            mp.log_modulus_sq.value(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn extended_precision_anchor_at_30_30() {
        // J, Y at (30, 30) from a one-off 30-digit run
        let q = QuadratureSpec::default();
        let mp = modulus_phase_oracle(EvalPoint::new(30.0, 30.0).unwrap(), &q).unwrap();
        let j = mp.modulus * mp.phase.cos();
        let y = mp.modulus * mp.phase.sin();
        assert!((j - 0.143_935_850_010_307_21).abs() < 1e-8);
        assert!((y - -0.249_374_393_966_974_15).abs() < 1e-8);
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec {
            abs_tol: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(QuadratureSpec {
            max_levels: 2,
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}
