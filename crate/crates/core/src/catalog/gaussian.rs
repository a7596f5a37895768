//! Balance of the Gaussian integral split at the cutoff length.
//!
//! For the profile exp(-μ²x²) the integral from 0 to 1/μ against the
//! tail from 1/μ to infinity has the μ-independent ratio
//! erf(1)/(1-erf(1)) ≈ 5.357, i.e. the two pieces balance to within an
//! order of magnitude. The ratio is computed here by adaptive
//! quadrature of the actual integrand, not via a closed form, which
//! leaves the closed form available as an independent check in the
//! tests.

use super::{expect_dimension, ModelError};
use crate::dimension::Dimension;
use crate::quantity::Quantity;

/// Ratio of the head integral [0, 1/μ] to the tail [1/μ, ∞) of
/// exp(-μ²x²), for `mu_inv` = 1/μ given as a length.
pub fn gaussian_balance(mu_inv: Quantity) -> Result<f64, ModelError> {
    expect_dimension("cutoff length", &mu_inv, Dimension::LENGTH)?;
    let cut = mu_inv.magnitude();
    if cut <= 0.0 || !cut.is_finite() {
        return Err(ModelError::NonPositiveLength);
    }
    let mu = 1.0 / cut;
    let integrand = |x: f64| (-(mu * x) * (mu * x)).exp();
    let head = integrate(&integrand, 0.0, cut, 1e-12);
    // The integrand underflows to zero beyond ~27/μ; 30/μ truncates the
    // tail far below the requested accuracy.
    let tail = integrate(&integrand, cut, 30.0 * cut, 1e-12);
    Ok(head / tail)
}

/// Adaptive Simpson quadrature with Richardson extrapolation, relative
/// tolerance `rel_eps` against the initial whole-interval estimate.
fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let scale = if whole == 0.0 { 1.0 } else { whole.abs() };
    adapt(f, a, fa, b, fb, m, fm, whole, rel_eps * scale, 60)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 15.0 * eps {
        return refined + (refined - whole) / 15.0;
    }
    adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1)
        + adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1)
}
