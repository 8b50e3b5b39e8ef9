//! Numerical root localization for polynomials with simple roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::upoly::{q_to_f64, UniPoly};

/// Newton tolerance used when polishing roots.
pub const NEWTON_TOL: f64 = 1e-12;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a polynomial with complex coefficients (ascending
/// order), by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    // Fujiwara-style radius bound for the initial circle.
    let lc = c[n];
    let radius = (0..n)
        .map(|k| (c[k] / lc).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        *zi = newton_polish(&c, *zi);
    }
    z
}

pub fn newton_polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..50 {
        let (p, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= NEWTON_TOL * z.norm().max(1.0) * 1e-4 {
            break;
        }
    }
    z
}

pub fn to_complex_coeffs(p: &UniPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(q_to_f64(c), 0.0)).collect()
}

/// Roots of a rational polynomial, which should be squarefree.
pub fn rational_poly_roots(p: &UniPoly) -> Vec<Complex64> {
    // Scale to a primitive integer polynomial first so that huge or tiny
    // rational coefficients do not lose range in f64.
    let ints = p.primitive_integer();
    let c: Vec<Complex64> = ints
        .iter()
        .map(|b| Complex64::new(num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN), 0.0))
        .collect();
    let mut roots = complex_roots(&c);
    for r in roots.iter_mut() {
        if r.im.abs() < 1e-10 * r.re.abs().max(1.0) {
            r.im = 0.0;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Best rational approximation with denominator at most `max_den`, via
/// continued fractions.
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-14 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Exact rational roots of `p`, found by rationalizing numerical real roots
/// and verifying each candidate exactly.
pub fn exact_rational_roots(p: &UniPoly) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for r in rational_poly_roots(p) {
        if r.im != 0.0 {
            continue;
        }
        for den in [1_000i64, 1_000_000, 1_000_000_000] {
            if let Some(c) = rationalize(r.re, den) {
                if p.eval(&c).is_zero() && !out.contains(&c) {
                    out.push(c);
                    break;
                }
            }
        }
    }
    out.sort();
    out
}
