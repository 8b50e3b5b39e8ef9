use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use super::tanh_sinh::{de_quad_endpoints, QuadOptions, QuadResult};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};

const TWO_THIRDS: f64 = 2.0 / 3.0;
const ONE_THIRD: f64 = 1.0 / 3.0;

fn check_lambda(lambda: f64, allow_zero: bool) -> Result<()> {
    let ok = lambda < 1.0 && if allow_zero { lambda >= 0.0 } else { lambda > 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("lambda must lie in {}0, 1), got {lambda}", if allow_zero { "[" } else { "(" })))
    }
}

/// `P(λ) = ∫₀¹ t^{−1/3}(1 − t)^{−2/3}(1 − λt)^{−2/3} dt` with positive real
/// roots. `λ = 0` is accepted as the continuous endpoint.
pub fn period_value(lambda: f64, tol: f64) -> Result<QuadResult> {
    period_value_with(lambda, tol, QuadOptions::default())
}

pub fn period_value_with(lambda: f64, tol: f64, opts: QuadOptions) -> Result<QuadResult> {
    check_lambda(lambda, true)?;
    de_quad_endpoints(
        |t, ta, tb| ta.powf(-ONE_THIRD) * tb.powf(-TWO_THIRDS) * (1.0 - lambda * t).powf(-TWO_THIRDS),
        0.0,
        1.0,
        tol,
        opts,
    )
}

/// `dP/dλ = (2/3)∫₀¹ t^{2/3}(1 − t)^{−2/3}(1 − λt)^{−5/3} dt`
pub fn period_derivative(lambda: f64, tol: f64) -> Result<QuadResult> {
    check_lambda(lambda, true)?;
    let mut r = de_quad_endpoints(
        |t, ta, tb| ta.powf(TWO_THIRDS) * tb.powf(-TWO_THIRDS) * (1.0 - lambda * t).powf(-5.0 / 3.0),
        0.0,
        1.0,
        tol,
        QuadOptions::default(),
    )?;
    r.value *= TWO_THIRDS;
    r.err_estimate *= TWO_THIRDS;
    Ok(r)
}

/// `B(1/3, 1/3)`, computed once by quadrature.
fn beta_third() -> f64 {
    static B: OnceLock<f64> = OnceLock::new();
    *B.get_or_init(|| {
        de_quad_endpoints(|_, ta, tb| (ta * tb).powf(-TWO_THIRDS), 0.0, 1.0, 1e-15, QuadOptions::default())
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    })
}

/// `J(y) = ∫₀¹ s^{−2/3}(1 − ys)^{−2/3} ds` for `0 ≤ y ≤ 1/2`.
fn scaled_head(y: f64, tol: f64, opts: QuadOptions) -> Result<QuadResult> {
    de_quad_endpoints(|s, sa, _| sa.powf(-TWO_THIRDS) * (1.0 - y * s).powf(-TWO_THIRDS), 0.0, 1.0, tol, opts)
}

/// `I(x)` from `x` and `c = 1 − x` (the latter exact near `x = 1`).
fn inner_split(x: f64, c: f64, tol: f64, opts: QuadOptions) -> Result<QuadResult> {
    if x <= 0.5 {
        // I = B(1/3,1/3) − ∫₀ˣ, and ∫₀ˣ = x^{1/3}·J(x)
        let f = x.cbrt();
        let mut r = scaled_head(x, tol / f.max(1e-300), opts)?;
        r.value = beta_third() - f * r.value;
        r.err_estimate *= f;
        Ok(r)
    } else {
        let f = c.cbrt();
        let mut r = scaled_head(c, tol / f.max(1e-300), opts)?;
        r.value *= f;
        r.err_estimate *= f;
        Ok(r)
    }
}

/// `I(x) = ∫_1^{1/x} v^{−2/3}(v − 1)^{−2/3} dv`, evaluated as
/// `∫_x^1 u^{−2/3}(1 − u)^{−2/3} du` after `v = 1/u`.
pub fn incomplete_inner(x: f64, tol: f64) -> Result<QuadResult> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
    }
    inner_split(x, 1.0 - x, tol, QuadOptions::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GValue {
    pub lambda: f64,
    /// The real double integral; positive.
    pub g_real: f64,
    /// `(1 − ζ)·g_real`
    pub g: Complex64,
    /// Outer estimate plus the largest inner estimate times a bound on the
    /// outer weight integral.
    pub err_estimate: f64,
    pub converged: bool,
    pub evaluations: u64,
}

impl GValue {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged { err_estimate: self.err_estimate, levels: 0 })
        }
    }
}

/// `G(λ)/(1 − ζ) = ∫₀¹ x^{−1/3}(1 − x)^{−2/3}(1 − λx)^{−2/3} I(x) dx` by
/// nested tanh-sinh; the inner tolerance is one order tighter.
pub fn g_value(lambda: f64, tol: f64) -> Result<GValue> {
    g_value_with(lambda, tol, QuadOptions::default())
}

pub fn g_value_with(lambda: f64, tol: f64, opts: QuadOptions) -> Result<GValue> {
    check_lambda(lambda, false)?;
    let inner_tol = tol / 10.0;
    let inner_err = AtomicU64::new(0);
    let inner_ok = AtomicBool::new(true);
    let inner_evals = AtomicU64::new(0);
    let outer = de_quad_endpoints(
        |x, xa, xb| match inner_split(x, xb, inner_tol, opts) {
            Ok(r) => {
                // Nonnegative floats order like their bit patterns.
                inner_err.fetch_max(r.err_estimate.to_bits(), Ordering::Relaxed);
                inner_evals.fetch_add(r.evaluations, Ordering::Relaxed);
                if !r.converged {
                    inner_ok.store(false, Ordering::Relaxed);
                }
                xa.powf(-ONE_THIRD) * xb.powf(-TWO_THIRDS) * (1.0 - lambda * x).powf(-TWO_THIRDS) * r.value
            }
            Err(_) => f64::NAN,
        },
        0.0,
        1.0,
        tol,
        opts,
    )?;
    let weight_bound = 2.0 * std::f64::consts::PI / 3f64.sqrt() * (1.0 - lambda).powf(-TWO_THIRDS);
    let err_estimate = outer.err_estimate + f64::from_bits(inner_err.into_inner()) * weight_bound;
    let one_minus_zeta = (EisensteinInt::ONE - EisensteinInt::ZETA).to_complex();
    Ok(GValue {
        lambda,
        g_real: outer.value,
        g: one_minus_zeta * outer.value,
        err_estimate,
        converged: outer.converged && inner_ok.into_inner(),
        evaluations: outer.evaluations + inner_evals.into_inner(),
    })
}
