//! Exact computation of Delannoy numbers by a family of independent methods,
//! with cross-verification, a floating-point quadrature check, and a small
//! benchmark harness.
//!
//! The Delannoy number `D(p, q)` counts lattice paths from `(0, 0)` to
//! `(p, q)` built from east `(1, 0)`, north `(0, 1)` and diagonal `(1, 1)`
//! steps; the diagonal values `D(n) = D(n, n)` are the central Delannoy
//! numbers (OEIS A008288 / A001850). Every method here computes the same
//! array by a genuinely different route, so each one is evidence for the
//! others:
//!
//! - [`methods::recurrence3`]: the three-term recurrence over a memo table,
//! - [`methods::sum_binom_2i`] and [`methods::sum_binom_conv`]: the two
//!   classical binomial sums,
//! - [`methods::lattice_brute`]: exhaustive path walking (small inputs only),
//! - [`methods::gf_bivariate`]: coefficient extraction from the bivariate
//!   generating function `1/(1 - x - y - xy)`,
//! - [`methods::qi_recursion`] and [`methods::central_qi_relation`]: a
//!   recursion expressing `D(p, q)` through binomials and the row values
//!   `D(p, r)` for `r < q`,
//! - [`methods::central_gf_series`]: central numbers from the series
//!   `1/sqrt(1 - 6x + x^2)` without ever leaving integer arithmetic,
//! - [`detexpr::delannoy_via_det`] and [`detexpr::central_via_det`]: two
//!   Hessenberg-determinant expressions evaluated over exact rationals,
//! - [`integral::central_via_integral`]: a float64 quadrature of the integral
//!   representation of `D(n)`, used as an inexact cross-check.
//!
//! Everything outside the [`integral`] module is exact integer or rational
//! arithmetic. The [`verify`] module sweeps grids with any subset of methods
//! and reports agreement as data; [`verify::bench_methods`] times the methods
//! against each other.

pub mod detexpr;
pub mod exactnum;
pub mod hessenberg;
pub mod integral;
pub mod methods;
pub mod verify;

pub use exactnum::{BigInt, BigRat};
pub use methods::DelannoyMethod;

/// Errors surfaced by the fallible operations.
///
/// Internal invariant violations (a determinant that fails its divisibility
/// or integrality witness, a non-integral series coefficient) are bugs, not
/// inputs, and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A method declined an input that exceeds its cost cap or shape
    /// requirements (for example, exhaustive walks past the step budget, or
    /// central-only methods off the diagonal).
    #[error("{method} refused: {reason}")]
    Refused {
        method: &'static str,
        reason: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn refused(method: &'static str, reason: impl Into<String>) -> Self {
        Error::Refused {
            method,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
