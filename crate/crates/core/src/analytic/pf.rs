use serde::Serialize;

use super::chebyshev::ChebModel;
use crate::error::Result;

/// The hypergeometric operator
/// `𝒟_λ = λ(1 − λ)d²/dλ² + (c − (a + b + 1)λ)d/dλ − ab`.
///
/// The default is the type `(2/3, 2/3, 1)`:
/// `λ(1 − λ)f″ + (1 − 7λ/3)f′ − (4/9)f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PicardFuchsOperator {
    /// `c`
    pub c: f64,
    /// `a + b + 1`
    pub linear: f64,
    /// `ab`
    pub constant: f64,
}

impl Default for PicardFuchsOperator {
    fn default() -> Self {
        Self { c: 1.0, linear: 7.0 / 3.0, constant: 4.0 / 9.0 }
    }
}

impl PicardFuchsOperator {
    pub fn hypergeometric(a: f64, b: f64, c: f64) -> Self {
        Self { c, linear: a + b + 1.0, constant: a * b }
    }

    /// Same operator with a different zeroth-order coefficient.
    pub fn with_constant(self, constant: f64) -> Self {
        Self { constant, ..self }
    }

    /// `𝒟_λ` applied to a jet `(f, f′, f″)` at `λ`.
    pub fn apply(&self, lambda: f64, f: f64, df: f64, d2f: f64) -> f64 {
        lambda * (1.0 - lambda) * d2f + (self.c - self.linear * lambda) * df - self.constant * f
    }
}

/// `λ ↦ 𝒟_λ f` for a sampled `f`, by exact differentiation of its
/// Chebyshev expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct PfApplied {
    pub op: PicardFuchsOperator,
    pub f: ChebModel,
    pub df: ChebModel,
    pub d2f: ChebModel,
}

impl PfApplied {
    pub fn eval(&self, lambda: f64) -> f64 {
        self.op.apply(lambda, self.f.eval(lambda), self.df.eval(lambda), self.d2f.eval(lambda))
    }
}

/// Fails with [`crate::Error::Unresolved`] when the model is not resolved.
pub fn pf_apply(model: &ChebModel) -> Result<PfApplied> {
    pf_apply_with(model, PicardFuchsOperator::default())
}

pub fn pf_apply_with(model: &ChebModel, op: PicardFuchsOperator) -> Result<PfApplied> {
    model.resolution_check()?;
    let df = model.derivative();
    let d2f = df.derivative();
    Ok(PfApplied { op, f: model.clone(), df, d2f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_linear_inputs() {
        let one = ChebModel::fit(0.1, 0.9, 4, |_| Ok(1.0)).unwrap();
        let lin = ChebModel::fit(0.1, 0.9, 4, Ok).unwrap();
        let (p1, pl) = (pf_apply(&one).unwrap(), pf_apply(&lin).unwrap());
        for l in [0.1, 0.33, 0.8] {
            assert!((p1.eval(l) + 4.0 / 9.0).abs() < 1e-14);
            assert!((pl.eval(l) - (1.0 - 25.0 / 9.0 * l)).abs() < 1e-13);
        }
    }
}
