//! Sylvester resultants over ℚ and ℚ[x].
//!
//! Convention: the Sylvester matrix of `f = Σ fᵢ yⁱ` (degree `m`) and
//! `g` (degree `n`) has the `n` shifted coefficient rows of `f` first, then
//! the `m` rows of `g`, coefficients in descending order. `Res(f, g)` is its
//! determinant. With this convention `Res(y² − x, 2y) = −4x`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bivar::BivarPoly;
use super::upoly::{q, UniPoly};
use crate::error::{Error, Result};

/// Sylvester matrix from ascending coefficient lists with formal degrees
/// `f.len() − 1` and `g.len() − 1`.
pub fn sylvester_matrix(f: &[BigRational], g: &[BigRational]) -> Vec<Vec<BigRational>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Exact determinant by fraction-carrying Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Resultant of two univariate polynomials (true degrees).
pub fn resultant_uni(f: &UniPoly, g: &UniPoly) -> Result<BigRational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant operand"));
    }
    Ok(determinant(sylvester_matrix(f.coeffs(), g.coeffs())))
}

/// `Res_y(h, g)` as a polynomial in `x`.
///
/// Computed exactly by evaluating the Sylvester determinant at enough
/// integer points and interpolating; the formal `y`-degrees are used at every
/// point, so vanishing leading coefficients are handled correctly.
pub fn resultant_y(h: &BivarPoly, g: &BivarPoly) -> Result<UniPoly> {
    if h.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant operand"));
    }
    let hc = h.coeffs_in_y();
    let gc = g.coeffs_in_y();
    let m = hc.len() - 1;
    let n = gc.len() - 1;
    let dh = h.deg_x().unwrap_or(0) as usize;
    let dg = g.deg_x().unwrap_or(0) as usize;
    let bound = n * dh + m * dg;
    let xs: Vec<BigRational> = (0..=bound as i64).map(q).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let fh: Vec<BigRational> = hc.iter().map(|c| c.eval(x)).collect();
            let fg: Vec<BigRational> = gc.iter().map(|c| c.eval(x)).collect();
            determinant(sylvester_matrix(&fh, &fg))
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}

/// `Res_x(h, g)` as a polynomial in `y`.
pub fn resultant_x(h: &BivarPoly, g: &BivarPoly) -> Result<UniPoly> {
    resultant_y(&h.swap_xy(), &g.swap_xy())
}

/// Newton divided-difference interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        p = &(&p * &lin) + &UniPoly::constant(dd[i].clone());
    }
    p
}
