//! Floating-point verification of the integral representation of central
//! Delannoy numbers.
//!
//! The starting point is
//!
//! ```text
//! D(n) = 1/pi * integral from 3-2*sqrt(2) to 3+2*sqrt(2) of
//!        t^-(n+1) / sqrt((t - (3-2*sqrt(2))) * ((3+2*sqrt(2)) - t)) dt
//! ```
//!
//! whose integrand blows up like an inverse square root at both endpoints,
//! defeating naive quadrature. Substituting `t = 3 + 2*sqrt(2) cos(theta)`
//! removes both singularities; see [`central_via_integral`] for the
//! derivation. The result is a smooth periodic integrand handled by the
//! midpoint rule at spectral accuracy. Everything here is float64 and
//! verification-grade only; the exact methods carry correctness.

use num_traits::ToPrimitive;

use crate::methods::recurrence3;
use crate::{Error, Result};

/// A quadrature value for `D(n)` together with the node count that produced
/// it and a heuristic error bound from node doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub nodes: u32,
    pub abs_error_bound: f64,
}

/// Approximates `D(n)` by midpoint quadrature of the substituted integral.
///
/// Derivation of the substitution `t = 3 + 2*sqrt(2) cos(theta)` for
/// `theta` in `[0, pi]`:
///
/// ```text
/// t - (3 - 2*sqrt(2)) = 2*sqrt(2) (1 + cos theta)
/// (3 + 2*sqrt(2)) - t = 2*sqrt(2) (1 - cos theta)
/// product             = 8 (1 - cos^2 theta) = 8 sin^2 theta
/// sqrt(product)       = 2*sqrt(2) sin theta          (sin >= 0 on [0, pi])
/// dt                  = -2*sqrt(2) sin theta dtheta
/// ```
///
/// The endpoint `t = 3 - 2*sqrt(2)` maps to `theta = pi` and the other to
/// `theta = 0`, so the orientation flip cancels the sign of `dt` and the
/// `sin theta` factors cancel exactly:
///
/// ```text
/// D(n) = 1/pi * integral from 0 to pi of (3 + 2*sqrt(2) cos theta)^-(n+1) dtheta
/// ```
///
/// The integrand is smooth, even, and 2*pi-periodic, so the midpoint rule on
/// `[0, pi]` converges geometrically in the node count. Sanity anchor:
/// `n = 0` gives `1/pi * integral dtheta / (3 + 2*sqrt(2) cos theta) =
/// 1/sqrt(3^2 - 8) = 1`.
///
/// The error bound is the node-doubling difference
/// `|estimate(2 * nodes) - estimate(nodes)|`.
pub fn central_via_integral(n: u32, nodes: u32) -> Result<QuadratureEstimate> {
    if nodes == 0 {
        return Err(Error::domain("central_via_integral: nodes must be >= 1"));
    }
    let value = midpoint_estimate(n, nodes);
    let refined = midpoint_estimate(n, 2 * nodes);
    Ok(QuadratureEstimate {
        value,
        nodes,
        abs_error_bound: (refined - value).abs(),
    })
}

fn midpoint_estimate(n: u32, nodes: u32) -> f64 {
    let b = 2.0 * std::f64::consts::SQRT_2;
    let h = std::f64::consts::PI / nodes as f64;
    let exponent = -(n as i32 + 1);
    let samples: Vec<f64> = (0..nodes)
        .map(|i| {
            let theta = (i as f64 + 0.5) * h;
            (3.0 + b * theta.cos()).powi(exponent)
        })
        .collect();
    // pairwise (tree) accumulation: reproducible and roundoff-friendly
    pairwise_sum(&samples) / nodes as f64
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// `|estimate - exact| / exact` where `exact` is `D(n, n)` from the
/// three-term recurrence rounded to the nearest float64.
///
/// Meaningful for `n <= 30`; beyond that `D(n)` exhausts the float64
/// mantissa and the comparison is noise.
pub fn relative_error_vs_exact(n: u32, nodes: u32) -> f64 {
    let exact = recurrence3(n, n)
        .to_f64()
        .expect("D(n) representable as f64");
    let estimate = midpoint_estimate(n, nodes);
    ((estimate - exact) / exact).abs()
}
