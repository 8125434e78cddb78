//! The Bessel phase from its integral representation
//! `theta_nu(z) = -pi/2 + (2/pi) int_0^z du / (u M^2_nu(u))`.
//!
//! Inner `M^2` evaluations use the J/Y reference below the series ceiling and
//! Nicholson's integral above it; a splice-continuity test pins the seam. The
//! integrand vanishes to high order below `u ~ nu`, is smooth through the
//! transition, and tends to `pi/2` for `u >> nu`, so the integration mixes a
//! tanh-sinh panel at the `u -> 0` endpoint with adaptive Gauss-Legendre
//! panels split at the transition landmarks.

use super::jy::{bessel_jy, SERIES_CEILING};
use super::nicholson::modulus_sq_nicholson;
use super::QuadratureSpec;
use crate::coords::EvalPoint;
use crate::quad::{gl_adaptive, tanh_sinh};
use crate::Result;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// `1 / (u M^2_nu(u))`, the phase integrand up to the `2/pi` factor.
pub(crate) fn inv_u_m2(u: f64, nu: f64, q: &QuadratureSpec) -> f64 {
    if u <= SERIES_CEILING {
        match bessel_jy(u, nu) {
            Ok(v) => {
                let m2 = v.j * v.j + v.y * v.y;
                if m2.is_finite() {
                    1.0 / (u * m2)
                } else {
                    0.0 // Y overflowed: the integrand underflows to zero
                }
            }
            Err(_) => 0.0,
        }
    } else {
        match modulus_sq_nicholson(EvalPoint { z: u, nu }, q) {
            Ok(ls) => (-ls.log_value - u.ln()).exp(),
            Err(_) => f64::NAN,
        }
    }
}

/// Unwrapped phase `theta_nu(z)`; strictly greater than `-pi/2`.
pub fn phase_integral(p: EvalPoint, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    Ok(-FRAC_PI_2 + phase_increment(p.nu, 0.0, p.z, q)?)
}

/// `(2/pi) int_{z0}^{z1} du/(u M^2)`: the phase difference
/// `theta_nu(z1) - theta_nu(z0)`. Used incrementally by root finding.
pub fn phase_increment(nu: f64, z0: f64, z1: f64, q: &QuadratureSpec) -> Result<f64> {
    debug_assert!(z0 >= 0.0 && z1 >= z0);
    if z1 == z0 {
        return Ok(0.0);
    }
    let f = |u: f64| inv_u_m2(u, nu, q);

    // segment boundaries: endpoint panel, then landmarks around u ~ nu
    let mut cuts = vec![z0];
    let lead_in = if z0 == 0.0 {
        let c = z1.min(2.0);
        cuts.push(c);
        Some(c)
    } else {
        None
    };
    let lo = cuts[cuts.len() - 1];
    for m in [0.7 * nu, nu + 6.0 * nu.cbrt(), 2.0 * nu] {
        if m > lo && m < z1 {
            cuts.push(m);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.push(z1);

    // error budget: the phase grows like z, so scale the absolute tolerance
    let abs_tol = q.abs_tol * (1.0 + z1);
    let mut total = 0.0;
    let mut first = lead_in.is_some();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let v = if first {
            first = false;
            // tanh-sinh absorbs the u -> 0 endpoint behavior
            tanh_sinh(|x, _, _| f(x), a, b, abs_tol, q.rel_tol, q.max_levels)?.value
        } else {
            gl_adaptive(&f, a, b, abs_tol, q.rel_tol)?.value
        };
        total += v;
    }
    Ok(total * 2.0 / std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn theta(z: f64, nu: f64) -> f64 {
        phase_integral(EvalPoint::new(z, nu).unwrap(), &spec()).unwrap()
    }

    #[test]
    fn unwrapped_goldens() {
        // frozen from high-precision J/Y plus zero-count unwrapping
        assert_relative_eq!(theta(1.0, 0.0), 0.114_831_367_614_148_13, epsilon = 1e-9);
        assert_relative_eq!(theta(10.0, 0.0), 9.202_164_989_497_172_3, epsilon = 1e-8);
        assert_relative_eq!(theta(2.0, 0.0), 1.157_397_237_179_936_1, epsilon = 1e-9);
        assert_relative_eq!(theta(5.0, 1.5), 2.055_802_906_260_087_5, epsilon = 1e-9);
        assert_relative_eq!(theta(30.0, 10.0), 15.183_947_414_637_192, epsilon = 1e-8);
        assert_relative_eq!(theta(60.0, 30.0), 19.756_461_469_073_13, epsilon = 1e-8);
        assert_relative_eq!(theta(0.5, 0.0), -0.442_357_168_403_274_97, epsilon = 1e-9);
        assert_relative_eq!(theta(30.0, 30.0), -1.047_319_435_182_880_4, epsilon = 1e-8);
    }

    #[test]
    fn phase_tends_to_minus_half_pi_at_zero() {
        assert!((theta(1e-6, 0.0) + FRAC_PI_2).abs() < 1e-2);
        assert!((theta(0.1, 5.0) + FRAC_PI_2).abs() < 1e-12);
        assert!(theta(1e-8, 1.0) > -FRAC_PI_2);
    }

    #[test]
    fn strictly_increasing_in_z() {
        assert!(theta(2.0, 0.0) > theta(1.0, 0.0));
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=12 {
            let t = theta(k as f64 * 0.7, 2.5);
            assert!(t > prev);
            prev = t;
        }
    }

    #[test]
    fn increment_consistency() {
        let q = spec();
        let whole = theta(25.0, 3.0);
        let part = theta(17.0, 3.0) + phase_increment(3.0, 17.0, 25.0, &q).unwrap();
        assert_relative_eq!(whole, part, epsilon = 1e-9);
    }

    #[test]
    fn splice_continuity_at_series_ceiling() {
        // the two inner M^2 routes agree at the seam
        let q = spec();
        for &nu in &[0.0, 2.0, 17.5, 30.0] {
            let below = inv_u_m2(SERIES_CEILING - 1e-9, nu, &q);
            let above = inv_u_m2(SERIES_CEILING + 1e-9, nu, &q);
            assert_relative_eq!(below, above, max_relative = 1e-8);
        }
    }

    #[test]
    fn crosses_series_ceiling_smoothly() {
        // integral through the seam vs sum of parts around it
        let q = spec();
        let inc = phase_increment(1.0, 55.0, 65.0, &q).unwrap();
        let sum = phase_increment(1.0, 55.0, 60.0, &q).unwrap() + phase_increment(1.0, 60.0, 65.0, &q).unwrap();
        assert_relative_eq!(inc, sum, epsilon = 1e-9);
        // and the large-z phase approaches theta ~ z - (nu/2 + 1/4) pi
        let th = theta(80.0, 1.0);
        let ae = 80.0 - 0.75 * std::f64::consts::PI + 3.0 / (8.0 * 80.0);
        assert!((th - ae).abs() < 1e-4, "theta={th} ae={ae}");
    }
}
