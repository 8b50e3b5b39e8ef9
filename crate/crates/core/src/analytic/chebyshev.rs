use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Chebyshev points of the second kind on `[lo, hi]`, `n + 1` of them,
/// in decreasing order (`x_j = cos(πj/n)` mapped affinely).
pub fn chebyshev_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    if n == 0 {
        return vec![mid];
    }
    (0..=n).map(|j| mid + half * (PI * j as f64 / n as f64).cos()).collect()
}

/// A Chebyshev expansion `Σ c_k T_k(ξ)` on `[lo, hi]`, `ξ` the affine image
/// of `[lo, hi]` on `[−1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebModel {
    pub lo: f64,
    pub hi: f64,
    pub coeffs: Vec<f64>,
}

impl ChebModel {
    /// Interpolant of values sampled at [`chebyshev_points`]`(lo, hi, n)`.
    pub fn from_samples(lo: f64, hi: f64, values: &[f64]) -> Result<Self> {
        if !(lo < hi) || values.len() < 2 {
            return Err(Error::Domain(format!("need lo < hi and at least two samples, got [{lo}, {hi}] with {}", values.len())));
        }
        let n = values.len() - 1;
        let nf = n as f64;
        let coeffs = (0..=n)
            .map(|k| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                        w * v * (PI * (j * k) as f64 / nf).cos()
                    })
                    .sum();
                let w = if k == 0 || k == n { 0.5 } else { 1.0 };
                2.0 / nf * w * s
            })
            .collect();
        Ok(Self { lo, hi, coeffs })
    }

    /// Samples `f` at the `degree + 1` Chebyshev points (in parallel, order
    /// preserved) and interpolates.
    pub fn fit<F>(lo: f64, hi: f64, degree: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let pts = chebyshev_points(lo, hi, degree);
        let values: Vec<f64> = pts.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
        Self::from_samples(lo, hi, &values)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn to_unit(&self, x: f64) -> f64 {
        (2.0 * x - self.lo - self.hi) / (self.hi - self.lo)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let xi = self.to_unit(x);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * xi * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        xi * b1 - b2 + self.coeffs.first().copied().unwrap_or(0.0)
    }

    /// Exact derivative of the expansion, as a model of one degree less.
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self { coeffs: vec![0.0], ..*self };
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..=n).rev() {
            d[k - 1] = d.get(k + 1).copied().unwrap_or(0.0) + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n);
        let scale = 2.0 / (self.hi - self.lo);
        Self { lo: self.lo, hi: self.hi, coeffs: d.into_iter().map(|c| c * scale).collect() }
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Largest of the last two coefficients.
    pub fn trailing(&self) -> f64 {
        self.coeffs.iter().rev().take(2).fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Refuses models whose trailing coefficients are not below `1e-3` of
    /// the largest coefficient.
    pub fn resolution_check(&self) -> Result<()> {
        let (trailing, max) = (self.trailing(), self.max_coeff());
        if trailing < 1e-3 * max || max == 0.0 {
            Ok(())
        } else {
            Err(Error::Unresolved { trailing, max })
        }
    }

    /// Rough bound on the error of the second derivative caused by sample
    /// noise, estimated from the coefficient plateau.
    pub fn second_derivative_noise_floor(&self) -> f64 {
        let n = self.degree() as f64;
        let tail = self.coeffs.len().min(8);
        let plateau = self.coeffs.iter().rev().take(tail).fold(0.0f64, |m, c| m.max(c.abs()));
        let scale = 2.0 / (self.hi - self.lo);
        plateau * n.powi(4) * scale * scale / 3.0 * 0.25
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_reproduced() {
        let m = ChebModel::fit(0.1, 0.9, 8, |x| Ok(3.0 * x * x - x + 2.0)).unwrap();
        for x in [0.1, 0.37, 0.9] {
            assert!((m.eval(x) - (3.0 * x * x - x + 2.0)).abs() < 1e-14);
            assert!((m.derivative().eval(x) - (6.0 * x - 1.0)).abs() < 1e-13);
            assert!((m.derivative().derivative().eval(x) - 6.0).abs() < 1e-11);
        }
        assert!(m.resolution_check().is_ok());
    }

    #[test]
    fn sine_derivative() {
        let m = ChebModel::fit(0.1, 0.9, 24, |x| Ok(x.sin())).unwrap();
        let d = m.derivative();
        let err = chebyshev_points(0.1, 0.9, 50).iter().map(|&x| (d.eval(x) - x.cos()).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn unresolved_model_refused() {
        let m = ChebModel::fit(0.0, 1.0, 8, |x| Ok((40.0 * x).sin())).unwrap();
        assert!(matches!(m.resolution_check(), Err(Error::Unresolved { .. })));
    }
}
