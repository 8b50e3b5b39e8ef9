use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use super::upoly::{q, q_to_f64, UniPoly};
use crate::error::{Error, Result};

/// Exact bivariate polynomial over ℚ; keys are `(deg_x, deg_y)`, and only
/// nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Integer coefficients `(i, j, c)` meaning `c·xⁱ·yʲ`.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), q(c))))
    }

    pub fn x() -> Self {
        Self::from_int_terms(&[(1, 0, 1)])
    }

    pub fn y() -> Self {
        Self::from_int_terms(&[(0, 1, 1)])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, c)| (*key, c * k)))
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * q(*i as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * q(*j as i64))),
        )
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())))
    }

    /// Coefficients as a polynomial in `y` over `ℚ[x]`: entry `j` is the
    /// coefficient of `yʲ`. The vector has length `deg_y + 1`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let Some(dy) = self.deg_y() else { return vec![] };
        let dx = self.deg_x().unwrap_or(0) as usize;
        let mut rows = vec![vec![BigRational::zero(); dx + 1]; dy as usize + 1];
        for ((i, j), c) in &self.terms {
            rows[*j as usize][*i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// `p(α, y)` as a polynomial in `y`.
    pub fn at_x(&self, alpha: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs_in_y().iter().map(|c| c.eval(alpha)).collect())
    }

    /// `p(x, β)` as a polynomial in `x`.
    pub fn at_y(&self, beta: &BigRational) -> UniPoly {
        self.swap_xy().at_x(beta)
    }

    /// `p(α, y)` with a floating-point `α`, as complex coefficients in `y`.
    pub fn at_x_c(&self, alpha: Complex64) -> Vec<Complex64> {
        self.coeffs_in_y().iter().map(|c| c.eval_c(alpha)).collect()
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|((i, j), c)| c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn eval_c(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|((i, j), c)| q_to_f64(c) * x.powu(*i) * y.powu(*j))
            .sum()
    }

    /// Sum of absolute values of the terms at `(x, y)`; a scale for relative
    /// zero tests.
    pub fn magnitude_c(&self, x: Complex64, y: Complex64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| q_to_f64(c).abs() * x.norm().powi(*i as i32) * y.norm().powi(*j as i32))
            .sum()
    }

    /// A product of affine linear factors `a + b·x + c·y`.
    pub fn product_of_linear(factors: &[(i64, i64, i64)]) -> Self {
        factors.iter().fold(Self::constant(BigRational::one()), |acc, &(a, b, c)| {
            acc.mul(&Self::from_int_terms(&[(0, 0, a), (1, 0, b), (0, 1, c)]))
        })
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((i, j), c)| format!("({c})*x^{i}*y^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A bivariate polynomial whose coefficients are polynomials in one
/// parameter `λ`; keys are `(deg_x, deg_y, deg_λ)`.
///
/// JSON form: `{"i,j": "c"}` or `{"i,j,k": "c"}` with `c` an integer,
/// decimal or fraction such as `"-1/2"`; `k` is the power of `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamBivarPoly {
    terms: BTreeMap<(u32, u32, u32), BigRational>,
}

impl ParamBivarPoly {
    pub fn add_term(&mut self, key: (u32, u32, u32), c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn has_parameter(&self) -> bool {
        self.terms.keys().any(|k| k.2 > 0)
    }

    pub fn specialize(&self, lambda: &BigRational) -> BivarPoly {
        BivarPoly::from_terms(
            self.terms
                .iter()
                .map(|((i, j, k), c)| ((*i, *j), c * num_traits::pow(lambda.clone(), *k as usize))),
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object of coefficients".into()))?;
        let mut out = Self::default();
        for (key, val) in obj {
            let idx: Vec<u32> = key
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent key {key:?}"))))
                .collect::<Result<_>>()?;
            let key3 = match idx.as_slice() {
                [i, j] => (*i, *j, 0),
                [i, j, k] => (*i, *j, *k),
                _ => return Err(Error::Parse(format!("bad exponent key {key:?}"))),
            };
            let c = match val {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(Error::Parse(format!("bad coefficient for {key:?}"))),
            };
            out.add_term(key3, c);
        }
        Ok(out)
    }

    /// `y(y − x)(1 − x)(1 − λx)`, the affine branch polynomial of the
    /// normalized family.
    pub fn normalized_family() -> Self {
        let base = BivarPoly::product_of_linear(&[(0, 0, 1), (0, -1, 1), (1, -1, 0)]);
        let mut out = Self::default();
        // (1 − λx) = 1·x⁰λ⁰ − x¹λ¹
        for ((i, j), c) in base.terms() {
            out.add_term((*i, *j, 0), c.clone());
            out.add_term((i + 1, *j, 1), -c.clone());
        }
        out
    }
}

impl From<BivarPoly> for ParamBivarPoly {
    fn from(p: BivarPoly) -> Self {
        let mut out = Self::default();
        for ((i, j), c) in p.terms() {
            out.add_term((*i, *j, 0), c.clone());
        }
        out
    }
}

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"−2"` (Unicode minus) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.trim_start().starts_with('-');
        let ip_abs = ip.trim().trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() { BigInt::zero() } else { ip_abs.parse().map_err(|_| bad())? };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let mag = BigRational::new(whole * &den + frac, den);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::upoly::q_frac;

    #[test]
    fn derivatives_and_swap() {
        // x^2 y + 3 y^3
        let p = BivarPoly::from_int_terms(&[(2, 1, 1), (0, 3, 3)]);
        assert_eq!(p.partial_x(), BivarPoly::from_int_terms(&[(1, 1, 2)]));
        assert_eq!(p.partial_y(), BivarPoly::from_int_terms(&[(2, 0, 1), (0, 2, 9)]));
        assert_eq!(p.swap_xy().swap_xy(), p);
        assert_eq!(p.at_x(&q(2)), UniPoly::from_ints(&[0, 4, 0, 3]));
    }

    #[test]
    fn normalized_family_specializes() {
        let h = ParamBivarPoly::normalized_family().specialize(&q_frac(1, 2));
        let expect = BivarPoly::product_of_linear(&[(0, 0, 1), (0, -1, 1), (1, -1, 0)])
            .mul(&BivarPoly::from_terms([((0, 0), q(1)), ((1, 0), q_frac(-1, 2))]));
        assert_eq!(h, expect);
        assert_eq!(h.eval(&q(0), &q(1)), q(1));
        assert_eq!(h.deg_x(), Some(3));
        assert_eq!(h.deg_y(), Some(2));
    }

    #[test]
    fn json_coefficients() {
        let p = ParamBivarPoly::from_json(r#"{"0,2": 1, "1,0": "−1", "1,1,1": "-1/2", "0,0": "0.25"}"#).unwrap();
        assert!(p.has_parameter());
        let s = p.specialize(&q(2));
        assert_eq!(s, BivarPoly::from_terms([((0, 2), q(1)), ((1, 0), q(-1)), ((1, 1), q(-1)), ((0, 0), q_frac(1, 4))]));
        assert!(ParamBivarPoly::from_json(r#"{"1": 1}"#).is_err());
        assert!(ParamBivarPoly::from_json(r#"{"1,1": "x"}"#).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-0.5").unwrap(), q_frac(-1, 2));
        assert_eq!(parse_rational("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_rational("-.25").unwrap(), q_frac(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.").is_err());
    }
}
