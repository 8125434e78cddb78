//! The modified Bessel function `K_0` and its exponentially scaled companion
//! `G(x) = e^x K_0(x)`, evaluated from the integral representation
//! `G(x) = int_0^inf exp(-x (cosh t - 1)) dt`.
//!
//! The public `k0`/`g` entry points always run the double-exponential
//! quadrature. The Nicholson and phase integrals need millions of `K_0`
//! evaluations, so a write-once Chebyshev table of `G` on a logarithmic axis
//! (built from the same quadrature) backs the crate-internal fast path; tests
//! pin the table against the direct quadrature.

use crate::quad::exp_sinh;
use crate::util::EULER_GAMMA;
use crate::{Error, Result};
use std::sync::OnceLock;

/// Switch to the large-x asymptotic series beyond this point.
const X_ASYM: f64 = 700.0;
/// Below this, `G(x) = -ln(x/2) - gamma` to full double precision.
const X_TINY: f64 = 1e-9;

fn domain_check(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("k0/g: x must be positive and finite, got {x}")));
    }
    Ok(())
}

/// `K_0(x)` with relative error <= 1e-12 on `[1e-6, 700]`; underflows to 0
/// gracefully for large `x`.
pub fn k0(x: f64) -> Result<f64> {
    domain_check(x)?;
    Ok(g(x)? * (-x).exp())
}

/// `G(x) = e^x K_0(x)`, stable up to `x = 1e8` and beyond (no overflow).
pub fn g(x: f64) -> Result<f64> {
    domain_check(x)?;
    if x >= X_ASYM {
        return Ok(g_asymptotic(x));
    }
    if x < X_TINY {
        return Ok(-(0.5 * x).ln() - EULER_GAMMA);
    }
    g_quadrature(x)
}

/// Direct double-exponential quadrature of the defining integral.
pub(crate) fn g_quadrature(x: f64) -> Result<f64> {
    // cosh t - 1 = 2 sinh^2(t/2), cancellation-free for small t
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        (-x * 2.0 * s * s).exp()
    };
    let r = exp_sinh(f, 1e-15, 1e-14, 14)?;
    Ok(r.value)
}

/// Asymptotic series `G(x) ~ sqrt(pi/(2x)) (1 - 1/(8x) + 9/(2!(8x)^2) - ...)`.
fn g_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let m = 2.0 * k as f64 - 1.0;
        let next = term * -(m * m) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * sum
}

// ---------------------------------------------------------------------------
// Cached fast path

const PANELS: usize = 96;
const CHEB_N: usize = 14;

struct GTable {
    s_lo: f64,
    s_hi: f64,
    /// Chebyshev coefficients per panel.
    coeffs: Vec<[f64; CHEB_N]>,
}

fn g_table() -> &'static GTable {
    static TABLE: OnceLock<GTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let s_lo = X_TINY.ln();
        let s_hi = X_ASYM.ln() + 1e-9;
        let mut coeffs = Vec::with_capacity(PANELS);
        let width = (s_hi - s_lo) / PANELS as f64;
        for p in 0..PANELS {
            let a = s_lo + p as f64 * width;
            let b = a + width;
            // values at Chebyshev nodes
            let mut vals = [0.0; CHEB_N];
            for (j, v) in vals.iter_mut().enumerate() {
                let th = std::f64::consts::PI * (j as f64 + 0.5) / CHEB_N as f64;
                let s = 0.5 * (a + b) + 0.5 * (b - a) * th.cos();
                *v = g_quadrature(s.exp()).expect("G table quadrature");
            }
            let mut c = [0.0; CHEB_N];
            for (k, ck) in c.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (j, v) in vals.iter().enumerate() {
                    let th = std::f64::consts::PI * (j as f64 + 0.5) / CHEB_N as f64;
                    acc += v * (k as f64 * th).cos();
                }
                *ck = 2.0 * acc / CHEB_N as f64;
            }
            c[0] *= 0.5;
            coeffs.push(c);
        }
        GTable { s_lo, s_hi, coeffs }
    })
}

/// Fast `G(x)` via the cached Chebyshev table (crate internal).
pub(crate) fn g_fast(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x >= X_ASYM {
        return g_asymptotic(x);
    }
    if x < X_TINY {
        return -(0.5 * x).ln() - EULER_GAMMA;
    }
    let tab = g_table();
    let s = x.ln();
    let width = (tab.s_hi - tab.s_lo) / PANELS as f64;
    let pf = ((s - tab.s_lo) / width).floor();
    let p = (pf as usize).min(PANELS - 1);
    let a = tab.s_lo + p as f64 * width;
    let t = 2.0 * (s - a) / width - 1.0; // in [-1, 1]
    // Clenshaw
    let c = &tab.coeffs[p];
    let (mut b1, mut b2) = (0.0, 0.0);
    for k in (1..CHEB_N).rev() {
        let b0 = 2.0 * t * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

/// Fast `ln K_0(x)` (crate internal), valid for any `x > 0` without overflow.
pub(crate) fn ln_k0_fast(x: f64) -> f64 {
    g_fast(x).ln() - x
}
