//! Compactified coordinates on the `(z, nu)` quadrant and regime
//! classification.
//!
//! The quadrant is compactified with `mu = nu^{-1/3}` and `zeta = z^{-1/3}`;
//! the derived chart variables `eta = zeta/mu`, `lambda = mu/zeta`,
//! `w = eta - 1` and the transition variable `a = (z - nu)/nu^{1/3}` locate a
//! point relative to the asymptotic faces: large argument (AE), oscillatory
//! Debye (ABE), Airy transition (FE), exponential Debye (OBE), large order
//! (OE), or none of them (CORE, where only the integral oracle applies).

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point in the open first quadrant: argument `z > 0`, order `nu >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub z: f64,
    pub nu: f64,
}

impl EvalPoint {
    pub fn new(z: f64, nu: f64) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::Domain(format!("z must be positive and finite, got {z}")));
        }
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::Domain(format!("nu must be non-negative and finite, got {nu}")));
        }
        Ok(Self { z, nu })
    }
}

/// Compactified coordinates of an [`EvalPoint`].
///
/// For `nu = 0` the order-side fields degenerate: `mu` and `lambda` are
/// `+inf`, `eta` is `0`, `w` is `-1` and `a` is `+inf`; they are not used in
/// that regime (the point is treated as the far interior of the
/// large-argument face).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactCoords {
    /// nu^{-1/3}
    pub mu: f64,
    /// z^{-1/3}
    pub zeta: f64,
    /// zeta / mu = (nu/z)^{1/3}
    pub eta: f64,
    /// mu / zeta = (z/nu)^{1/3}
    pub lambda: f64,
    /// eta - 1
    pub w: f64,
    /// (z - nu) / nu^{1/3}
    pub a: f64,
}

/// Which asymptotic face governs the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Large argument, bounded order (shares the ABE evaluator).
    Ae,
    /// Oscillatory Debye regime, `z/nu` bounded away from 1 from above.
    Abe,
    /// Airy transition region `z = nu + a nu^{1/3}` with bounded `a`.
    Fe,
    /// Exponential Debye regime, `nu/z` bounded away from 1 from above.
    Obe,
    /// Large order at bounded argument.
    Oe,
    /// No asymptotic face applies; the integral oracle must be used.
    Core,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::Ae => "AE",
            Regime::Abe => "ABE",
            Regime::Fe => "FE",
            Regime::Obe => "OBE",
            Regime::Oe => "OE",
            Regime::Core => "CORE",
        };
        f.write_str(s)
    }
}

/// Thresholds steering [`classify`] and the auto-dispatcher.
///
/// The faces themselves are asymptotic; these cutoffs decide where the
/// truncated expansions are trusted. Defaults are chosen so every expansion's
/// next-term estimate is small at its boundary under the default truncation
/// orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegimeConfig {
    /// Half-width in `a` of the transition band around `z = nu`.
    pub fe_halfwidth: f64,
    /// Minimum `z` before argument-side asymptotics are used.
    pub core_z: f64,
    /// Minimum `nu` before order-side asymptotics are used.
    pub core_nu: f64,
    /// Minimum `nu/z - 1` for the exponential Debye regime.
    pub obe_margin: f64,
    /// Minimum `z/nu - 1` for the oscillatory Debye regime.
    pub abe_margin: f64,
}

impl Default for RegimeConfig {
    fn default() -> Self {
        Self {
            fe_halfwidth: 2.0,
            core_z: 10.0,
            core_nu: 10.0,
            obe_margin: 0.1,
            abe_margin: 0.1,
        }
    }
}

impl RegimeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.fe_halfwidth >= 1.0) {
            return Err(Error::Config(format!(
                "fe_halfwidth must be >= 1, got {}",
                self.fe_halfwidth
            )));
        }
        for (name, v) in [
            ("core_z", self.core_z),
            ("core_nu", self.core_nu),
            ("obe_margin", self.obe_margin),
            ("abe_margin", self.abe_margin),
        ] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Compute the compactified coordinates of `p`.
pub fn to_compact(p: EvalPoint) -> CompactCoords {
    let zeta = p.z.cbrt().recip();
    if p.nu == 0.0 {
        return CompactCoords {
            mu: f64::INFINITY,
            zeta,
            eta: 0.0,
            lambda: f64::INFINITY,
            w: -1.0,
            a: f64::INFINITY,
        };
    }
    let nu_cbrt = p.nu.cbrt();
    let mu = nu_cbrt.recip();
    let eta = zeta / mu;
    let lambda = mu / zeta;
    CompactCoords {
        mu,
        zeta,
        eta,
        lambda,
        w: eta - 1.0,
        a: (p.z - p.nu) / nu_cbrt,
    }
}

/// Classify the regime of `p` under the thresholds in `cfg`.
///
/// Ties between the transition band and a Debye side resolve to [`Regime::Fe`].
pub fn classify(p: EvalPoint, cfg: &RegimeConfig) -> Regime {
    let c = to_compact(p);
    if p.nu >= cfg.core_nu && c.a.abs() <= cfg.fe_halfwidth {
        return Regime::Fe;
    }
    if p.z > p.nu && p.z >= cfg.core_z && p.z / p.nu - 1.0 >= cfg.abe_margin {
        return Regime::Abe;
    }
    if p.nu > p.z && p.nu >= cfg.core_nu && p.nu / p.z - 1.0 >= cfg.obe_margin {
        return if p.z < cfg.core_z { Regime::Oe } else { Regime::Obe };
    }
    Regime::Core
}
