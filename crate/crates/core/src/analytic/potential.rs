use serde::Serialize;

use super::pf::PicardFuchsOperator;
use crate::error::{Error, Result};

/// Central-difference step for `∂H/∂t` (with one Richardson halving).
pub const POTENTIAL_STEP: f64 = 1e-5;

/// Exponent of `(1 − λt)` in the potential `H` and the zeroth-order
/// coefficient of the operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialVariant {
    pub h_exponent: f64,
    pub constant: f64,
}

impl PotentialVariant {
    /// `H = −(2/3)t^{2/3}(1 − t)^{1/3}(1 − λt)^{−5/3}` against `ab = 4/9`.
    pub const CONSISTENT: Self = Self { h_exponent: -5.0 / 3.0, constant: 4.0 / 9.0 };
    /// The exponent `−5/2` in place of `−5/3`.
    pub const EXPONENT_TYPO: Self = Self { h_exponent: -2.5, constant: 4.0 / 9.0 };
    /// The constant `9/4` in place of `4/9`.
    pub const CONSTANT_TYPO: Self = Self { h_exponent: -5.0 / 3.0, constant: 9.0 / 4.0 };
}

/// `f(t, λ) = t^{−1/3}(1 − t)^{−2/3}(1 − λt)^{−2/3}`
fn integrand(t: f64, lambda: f64) -> f64 {
    t.powf(-1.0 / 3.0) * (1.0 - t).powf(-2.0 / 3.0) * (1.0 - lambda * t).powf(-2.0 / 3.0)
}

fn potential(t: f64, lambda: f64, exponent: f64) -> f64 {
    -2.0 / 3.0 * t.powf(2.0 / 3.0) * (1.0 - t).cbrt() * (1.0 - lambda * t).powf(exponent)
}

/// `|∂H/∂t − 𝒟_λ f|` at `(t, λ)`: the integrand of the period is an exact
/// `t`-derivative after applying the operator.
pub fn verify_potential_identity(t: f64, lambda: f64) -> Result<f64> {
    verify_potential_identity_with(t, lambda, PotentialVariant::CONSISTENT)
}

pub fn verify_potential_identity_with(t: f64, lambda: f64, variant: PotentialVariant) -> Result<f64> {
    let h = POTENTIAL_STEP;
    if !(t - h > 0.0 && t + h < 1.0) {
        return Err(Error::Domain(format!("t must lie in ({h}, {}), got {t}", 1.0 - h)));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let f = integrand(t, lambda);
    let w = 1.0 / (1.0 - lambda * t);
    let df = 2.0 / 3.0 * t * w * f;
    let d2f = 10.0 / 9.0 * t * t * w * w * f;
    let op = PicardFuchsOperator::default().with_constant(variant.constant);
    let rhs = op.apply(lambda, f, df, d2f);
    let central = |step: f64| {
        (potential(t + step, lambda, variant.h_exponent) - potential(t - step, lambda, variant.h_exponent)) / (2.0 * step)
    };
    // One Richardson step removes the O(h²) term, which near t = 0.9 is
    // larger than the residual being tested.
    let lhs = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    Ok((lhs - rhs).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialSweep {
    pub variant: PotentialVariant,
    /// `(t, λ, residual)`
    pub points: Vec<(f64, f64, f64)>,
    pub max_residual: f64,
}

/// Residuals on the `n × n` grid `t, λ ∈ linspace(0.1, 0.9, n)`.
pub fn potential_sweep(n: usize, variant: PotentialVariant) -> Result<PotentialSweep> {
    let axis: Vec<f64> = (0..n).map(|i| if n == 1 { 0.5 } else { 0.1 + 0.8 * i as f64 / (n - 1) as f64 }).collect();
    let mut points = Vec::with_capacity(n * n);
    for &t in &axis {
        for &l in &axis {
            points.push((t, l, verify_potential_identity_with(t, l, variant)?));
        }
    }
    let max_residual = points.iter().fold(0.0, |m: f64, p| m.max(p.2));
    Ok(PotentialSweep { variant, points, max_residual })
}
