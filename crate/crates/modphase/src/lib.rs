//! Modulus-phase decomposition of Bessel functions.
//!
//! Writes `J_nu(z) = M_nu(z) cos(theta_nu(z))` and `Y_nu(z) = M_nu(z) sin(theta_nu(z))`
//! with a positive modulus `M` and a smoothly unwrapped phase `theta`, and provides:
//!
//! * an integral-based reference evaluator (`oracle`) built on Nicholson's formula
//!   for `M^2` and the phase integral, independent of all asymptotic expansions;
//! * per-regime asymptotic evaluators (`expansions`) for the large-argument,
//!   oscillatory-Debye, Airy transition, and exponential-Debye regimes of the
//!   compactified `(z, nu)` quadrant, with truncation-order control and next-term
//!   error estimates;
//! * term-by-term differentiated expansions (`derivatives`);
//! * real-argument Airy functions (`airy`);
//! * phase-based eigenvalue counting for the Dirichlet disk (`spectral`):
//!   Bessel zeros, Weyl remainders, lattice comparisons, and Polya-type checks.
//!
//! All public functions are pure; nothing mutates shared state apart from
//! write-once internal caches, so concurrent use needs no synchronization.

pub mod airy;
pub mod coords;
pub mod derivatives;
pub mod expansions;
pub mod oracle;
pub mod quad;
pub mod spectral;
pub(crate) mod util;

pub use coords::{classify, to_compact, CompactCoords, EvalPoint, Regime, RegimeConfig};
pub use oracle::{LogScaled, ModulusPhase, QuadratureSpec};

/// Errors produced by evaluators, quadrature, and root finding.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
    /// The point lies outside the regime an expansion is valid for.
    #[error("regime error: {0}")]
    Regime(String),
    /// Zero bracketing expanded past its growth cap.
    #[error("bracket failure locating zero (nu={nu}, k={k}): {detail}")]
    Bracket { nu: f64, k: usize, detail: String },
    /// Unsupported series/polynomial index.
    #[error("unsupported index {index} for {what} (max {max})")]
    UnsupportedIndex {
        what: &'static str,
        index: usize,
        max: usize,
    },
    /// Invalid configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
