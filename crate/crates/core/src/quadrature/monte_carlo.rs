use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Plain Monte Carlo estimate of
/// `∫∫_{0<x<y<1} {y(y − x)(1 − x)(1 − λx)}^{−2/3} dx dy`.
///
/// The triangle is split at `y = 1/2`. Below, `x = y·w` with `y = p³/2`,
/// `w = 1 − q³`; above, `x = 1 − α³`, `y = 1 − α³(1 − β³)`. Both maps make
/// the integrand bounded on the unit square, so the variance is finite.
pub fn g_monte_carlo(lambda: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    if samples < 4 {
        return Err(Error::Domain("need at least 4 samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = samples / 2;
    let c_low = 4.5 * 2f64.cbrt();
    let low = moments(half, || {
        let (p, q): (f64, f64) = (rng.random(), rng.random());
        let y = 0.5 * p * p * p;
        let w = 1.0 - q * q * q;
        let x = y * w;
        c_low * p * ((1.0 - x) * (1.0 - lambda * x)).powf(-2.0 / 3.0)
    });
    let high = moments(samples - half, || {
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        let a3 = a * a * a;
        let y = 1.0 - a3 * (1.0 - b * b * b);
        if y <= 0.5 {
            return 0.0;
        }
        let x = 1.0 - a3;
        9.0 * a * y.powf(-2.0 / 3.0) * (1.0 - lambda * x).powf(-2.0 / 3.0)
    });
    Ok(McEstimate {
        mean: low.0 + high.0,
        std_error: (low.1 * low.1 + high.1 * high.1).sqrt(),
        samples,
    })
}

/// `(mean, standard error)` of `n` draws.
fn moments(n: u64, mut draw: impl FnMut() -> f64) -> (f64, f64) {
    let (mut mean, mut m2) = (0.0, 0.0);
    for k in 1..=n {
        let v = draw();
        let d = v - mean;
        mean += d / k as f64;
        m2 += d * (v - mean);
    }
    let var = m2 / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_repeat() {
        let a = g_monte_carlo(0.5, 10_000, 7).unwrap();
        let b = g_monte_carlo(0.5, 10_000, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.mean > 0.0 && a.std_error > 0.0);
    }
}
