//! The modulus-squared via Nicholson's integral
//! `M^2_nu(z) = (8/pi^2) int_0^inf K_0(2 z sinh t) cosh(2 nu t) dt`.
//!
//! For `nu > z` the integrand peaks exponentially at `t = acosh(nu/z)`; the
//! integration then runs on the log-shifted integrand with the peak value
//! folded out, so no intermediate quantity overflows and the result is
//! returned log-scaled.

use super::k0::{g_fast, ln_k0_fast};
use super::{LogScaled, QuadratureSpec};
use crate::coords::EvalPoint;
use crate::quad::tanh_sinh;
use crate::Result;

const LN2: f64 = std::f64::consts::LN_2;

/// Exponent budget: truncate the integral where
/// `2 z sinh t - 2 nu t >= 760` (integrand below double-precision underflow).
const TAIL_EXPONENT: f64 = 760.0;

/// Truncation point: the unique `t` beyond the integrand peak where
/// `2 z sinh T - 2 nu T = TAIL_EXPONENT`, found by monotone bisection.
pub(crate) fn truncation_point(z: f64, nu: f64) -> f64 {
    let h = |t: f64| 2.0 * z * t.sinh() - 2.0 * nu * t;
    // h is increasing for t >= t_peak; start right of the peak
    let mut lo = if nu > z { (nu / z).acosh() } else { 0.0 };
    let mut hi = lo.max(1.0);
    while h(hi) < TAIL_EXPONENT {
        hi *= 2.0;
        if hi > 1e6 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < TAIL_EXPONENT {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi {
            break;
        }
    }
    hi
}

/// `log M^2_nu(z)` from Nicholson's formula.
pub fn modulus_sq_nicholson(p: EvalPoint, q: &QuadratureSpec) -> Result<LogScaled> {
    q.validate()?;
    let (z, nu) = (p.z, p.nu);
    let t_max = truncation_point(z, nu);
    let ln_norm = (8.0 / (std::f64::consts::PI * std::f64::consts::PI)).ln();

    if nu <= z {
        // K_0(x) cosh(2 nu t) = G(x) e^{2 nu t - x} (1 + e^{-4 nu t}) / 2 with
        // a non-positive exponent; every factor stays representable.
        let f = |t: f64, t_from_0: f64, _: f64| {
            let t = if t < 0.5 * t_max { t_from_0 } else { t };
            let x = 2.0 * z * t.sinh();
            let x = x.max(f64::MIN_POSITIVE); // t=0 endpoint guard
            let expo = 2.0 * nu * t - x;
            let half_cosh_scaled = 0.5 * (1.0 + (-4.0 * nu * t).exp());
            g_fast(x) * expo.exp() * half_cosh_scaled
        };
        let r = tanh_sinh(f, 0.0, t_max, q.abs_tol, q.rel_tol, q.max_levels)?;
        Ok(LogScaled::from_log(ln_norm + r.value.ln()))
    } else {
        // log-shifted: L(t) = ln K_0(2 z sinh t) + ln cosh(2 nu t), peak folded out
        let l_fn = |t: f64| -> f64 {
            let x = (2.0 * z * t.sinh()).max(f64::MIN_POSITIVE);
            ln_k0_fast(x) + 2.0 * nu * t + (-4.0 * nu * t).exp().ln_1p() - LN2
        };
        let t_peak = (nu / z).acosh();
        let l_max = l_fn(t_peak);
        let f = |t: f64, t_from_0: f64, _: f64| {
            let t = if t < 0.5 * t_max { t_from_0 } else { t };
            (l_fn(t) - l_max).exp()
        };
        let r = tanh_sinh(f, 0.0, t_max, q.abs_tol, q.rel_tol, q.max_levels)?;
        Ok(LogScaled::from_log(ln_norm + l_max + r.value.ln()))
    }
}

/// `g_fast` re-export for the phase module.
pub(crate) fn g_cached(x: f64) -> f64 {
    g_fast(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bessel_jy;
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn matches_series_m2_small_orders() {
        // golden: M^2(1, 0) = J0^2 + Y0^2
        let m2 = modulus_sq_nicholson(EvalPoint::new(1.0, 0.0).unwrap(), &spec()).unwrap();
        assert_relative_eq!(m2.log_value.exp(), 0.593_316_791_246_231_3, max_relative = 1e-9);
        // and across a grid against the J/Y reference
        for &(z, nu) in &[(0.5, 0.0), (2.0, 1.0), (5.0, 1.5), (30.0, 7.0), (60.0, 30.0), (13.0, 10.5)] {
            let v = bessel_jy(z, nu).unwrap();
            let m2 = modulus_sq_nicholson(EvalPoint::new(z, nu).unwrap(), &spec()).unwrap();
            assert_relative_eq!(m2.log_value.exp(), v.j * v.j + v.y * v.y, max_relative = 1e-9);
        }
    }

    #[test]
    fn large_argument_leading_term() {
        // M^2 (pi z / 2) = 1 - 1/(8 z^2) + ..., within 2e-5 at z = 100
        let m2 = modulus_sq_nicholson(EvalPoint::new(100.0, 0.0).unwrap(), &spec()).unwrap();
        let v = m2.log_value.exp() * std::f64::consts::PI * 50.0;
        assert!((v - 1.0).abs() < 2e-5, "got {v}");
        assert_relative_eq!(m2.log_value.exp(), 0.006_366_118_159_625_979, max_relative = 1e-9);
    }

    #[test]
    fn exponential_regime_log_scaled() {
        // golden: log M^2(30, 50) computed from J,Y at 30 digits
        let m2 = modulus_sq_nicholson(EvalPoint::new(30.0, 50.0).unwrap(), &spec()).unwrap();
        assert_relative_eq!(m2.log_value, 25.731_115_763_967_747, max_relative = 1e-10);
        // deep regime: representable only in logs
        let m2 = modulus_sq_nicholson(EvalPoint::new(1.0, 300.0).unwrap(), &spec()).unwrap();
        assert!(m2.log_value > 1000.0);
        assert!(m2.try_value().is_none());
    }

    #[test]
    fn small_z_lower_bound() {
        // M^2 z e^{-nu} stays above the calibrated floor (grid min is ~0.37)
        let m2 = modulus_sq_nicholson(EvalPoint::new(0.5, 3.0).unwrap(), &spec()).unwrap();
        let v = m2.log_value.exp();
        assert_relative_eq!(v, 1769.001_067_741_812, max_relative = 1e-9);
        assert!(v * 0.5 * (-3.0f64).exp() > 0.05);
    }

    #[test]
    fn nicholson_inequality_spot() {
        // (pi/2) M^2 sqrt(z^2 - nu^2) <= 1 for z > nu
        for &(z, nu) in &[(10.0, 0.0), (10.0, 8.0), (100.0, 60.0), (3.0, 2.9)] {
            let m2 = modulus_sq_nicholson(EvalPoint::new(z, nu).unwrap(), &spec()).unwrap();
            let lhs = 0.5 * std::f64::consts::PI * m2.log_value.exp() * (z * z - nu * nu).sqrt();
            assert!(lhs <= 1.0 + 1e-10, "({z},{nu}): {lhs}");
        }
    }

    #[test]
    fn halved_tolerance_within_estimate() {
        let coarse = QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-7,
            max_levels: 12,
        };
        let fine = spec();
        for &(z, nu) in &[(2.0, 5.0), (40.0, 3.0)] {
            let a = modulus_sq_nicholson(EvalPoint::new(z, nu).unwrap(), &coarse).unwrap();
            let b = modulus_sq_nicholson(EvalPoint::new(z, nu).unwrap(), &fine).unwrap();
            assert!((a.log_value - b.log_value).abs() < 1e-7);
        }
    }
}
