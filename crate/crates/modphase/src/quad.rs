//! Quadrature kernels: tanh-sinh (double exponential) rules on finite and
//! semi-infinite intervals, plus an adaptive Gauss-Legendre driver for smooth
//! integrands.
//!
//! The tanh-sinh map clusters nodes double-exponentially at the endpoints, so
//! integrable endpoint singularities (the `K_0` logarithm in Nicholson's
//! formula, the `u -> 0` behavior of the phase integrand) need no special
//! casing. All drivers are deterministic: fixed refinement schedule, fixed
//! summation order.

use crate::{Error, Result};
use std::sync::OnceLock;

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Estimate of the remaining error (last refinement delta).
    pub err_estimate: f64,
    pub evaluations: usize,
}

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

/// Tanh-sinh quadrature of `f` over the finite interval `(a, b)`.
///
/// The integrand receives `(x, x - a, b - x)`; the endpoint distances are
/// computed without cancellation so singular factors like `ln(x - a)` can be
/// evaluated accurately arbitrarily close to the endpoints.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64, max_levels: u32) -> Result<QuadResult>
where
    F: Fn(f64, f64, f64) -> f64,
{
    debug_assert!(b > a);
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    let mut evals = 0usize;

    // contribution of a node at parameter u (both +u and -u handled by caller)
    let node = |u: f64, evals: &mut usize| -> f64 {
        let w = FRAC_PI_2 * u.sinh();
        // distances to the endpoints: d*(1 -+ tanh w), stable form
        let e2 = (-2.0 * w.abs()).exp();
        let near = 2.0 * d * e2 / (1.0 + e2); // distance to the endpoint w points at
        let far = 2.0 * d / (1.0 + e2);
        let weight = d * FRAC_PI_2 * u.cosh() * (2.0 * e2.sqrt() / (1.0 + e2)).powi(2);
        if weight == 0.0 || !weight.is_finite() {
            return 0.0;
        }
        let (xa, xb) = if u >= 0.0 { (far, near) } else { (near, far) };
        let x = if u >= 0.0 { b - near } else { a + near };
        *evals += 1;
        let fx = f(x, xa, xb);
        if fx.is_finite() {
            weight * fx
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut sum = node(0.0, &mut evals);
    {
        // level 0: integer abscissas
        let mut j = 1;
        loop {
            let t1 = node(h * j as f64, &mut evals);
            let t2 = node(-h * j as f64, &mut evals);
            sum += t1 + t2;
            if (t1.abs() + t2.abs()) <= f64::MIN_POSITIVE || j as f64 * h > 6.8 {
                break;
            }
            j += 1;
        }
    }
    let mut prev = sum * h;
    let mut best_err = f64::INFINITY;
    for _level in 1..=max_levels {
        h *= 0.5;
        // add odd multiples of the new h
        let mut j = 1;
        loop {
            let t1 = node(h * j as f64, &mut evals);
            let t2 = node(-h * j as f64, &mut evals);
            sum += t1 + t2;
            if (t1.abs() + t2.abs()) <= f64::MIN_POSITIVE || j as f64 * h > 6.8 {
                break;
            }
            j += 2;
        }
        let cur = sum * h;
        let delta = (cur - prev).abs();
        best_err = delta;
        prev = cur;
        if delta <= abs_tol.max(rel_tol * cur.abs()) {
            return Ok(QuadResult {
                value: cur,
                err_estimate: delta,
                evaluations: evals,
            });
        }
    }
    if best_err <= 10.0 * abs_tol.max(rel_tol * prev.abs()) {
        // close enough to report, with an honest estimate
        return Ok(QuadResult {
            value: prev,
            err_estimate: best_err,
            evaluations: evals,
        });
    }
    Err(Error::Quadrature {
        achieved: best_err,
        requested: abs_tol,
    })
}

/// Tanh-sinh (exp-sinh) quadrature over `(0, inf)` with `x = exp((pi/2) sinh u)`.
pub fn exp_sinh<F>(f: F, abs_tol: f64, rel_tol: f64, max_levels: u32) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let mut evals = 0usize;
    let node = |u: f64, evals: &mut usize| -> f64 {
        let x = (FRAC_PI_2 * u.sinh()).exp();
        if x == 0.0 || !x.is_finite() {
            return 0.0;
        }
        let weight = FRAC_PI_2 * u.cosh() * x;
        *evals += 1;
        let fx = f(x);
        if fx.is_finite() {
            weight * fx
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut sum = node(0.0, &mut evals);
    {
        let mut j = 1;
        let mut dead = 0;
        loop {
            let t1 = node(h * j as f64, &mut evals);
            let t2 = node(-h * j as f64, &mut evals);
            sum += t1 + t2;
            if t1.abs() + t2.abs() <= f64::MIN_POSITIVE {
                dead += 1;
            } else {
                dead = 0;
            }
            if dead >= 2 || j as f64 * h > 5.5 {
                break;
            }
            j += 1;
        }
    }
    let mut prev = sum * h;
    let mut best_err = f64::INFINITY;
    for _level in 1..=max_levels {
        h *= 0.5;
        let mut j = 1;
        let mut dead = 0;
        loop {
            let t1 = node(h * j as f64, &mut evals);
            let t2 = node(-h * j as f64, &mut evals);
            sum += t1 + t2;
            if t1.abs() + t2.abs() <= f64::MIN_POSITIVE {
                dead += 1;
            } else {
                dead = 0;
            }
            if dead >= 2 || j as f64 * h > 5.5 {
                break;
            }
            j += 2;
        }
        let cur = sum * h;
        let delta = (cur - prev).abs();
        best_err = delta;
        prev = cur;
        if delta <= abs_tol.max(rel_tol * cur.abs()) {
            return Ok(QuadResult {
                value: cur,
                err_estimate: delta,
                evaluations: evals,
            });
        }
    }
    if best_err <= 10.0 * abs_tol.max(rel_tol * prev.abs()) {
        return Ok(QuadResult {
            value: prev,
            err_estimate: best_err,
            evaluations: evals,
        });
    }
    Err(Error::Quadrature {
        achieved: best_err,
        requested: abs_tol,
    })
}

// ---------------------------------------------------------------------------
// Gauss-Legendre

const GL_N: usize = 15;

fn gl_rule() -> &'static ([f64; GL_N], [f64; GL_N]) {
    static RULE: OnceLock<([f64; GL_N], [f64; GL_N])> = OnceLock::new();
    RULE.get_or_init(|| {
        // Newton iteration on P_15 from Chebyshev initial guesses.
        let n = GL_N;
        let mut xs = [0.0; GL_N];
        let mut ws = [0.0; GL_N];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_p_dp(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_p_dp(n, x);
            xs[n - 1 - i] = x;
            ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed 15-point Gauss-Legendre rule on `[a, b]`.
pub fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = gl_rule();
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..GL_N {
        acc += ws[i] * f(c + d * xs[i]);
    }
    acc * d
}

/// Adaptive bisecting Gauss-Legendre integration of a smooth integrand.
///
/// The error control compares a panel against its two halves; panels are
/// processed in index order so the summation order is deterministic.
pub fn gl_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<QuadResult> {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        evals: &mut usize,
        err_acc: &mut f64,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let left = gl15(f, a, m);
        let right = gl15(f, m, b);
        *evals += 2 * GL_N;
        let delta = (left + right - whole).abs();
        if delta <= tol || depth >= 48 {
            if depth >= 48 && delta > tol {
                return Err(Error::Quadrature {
                    achieved: delta,
                    requested: tol,
                });
            }
            *err_acc += delta;
            return Ok(left + right);
        }
        let l = rec(f, a, m, left, 0.5 * tol, depth + 1, evals, err_acc)?;
        let r = rec(f, m, b, right, 0.5 * tol, depth + 1, evals, err_acc)?;
        Ok(l + r)
    }

    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut evals = GL_N;
    let mut err_acc = 0.0;
    let first = gl15(f, a, b);
    let tol = abs_tol.max(rel_tol * first.abs());
    let value = rec(f, a, b, first, tol, 0, &mut evals, &mut err_acc)?;
    Ok(QuadResult {
        value,
        err_estimate: err_acc,
        evaluations: evals,
    })
}
