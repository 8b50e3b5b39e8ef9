use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An Eisenstein integer `a + b·ζ` with `ζ = exp(2πi/3)`.
///
/// Arithmetic uses `ζ² = −1 − ζ`. Operators panic on `i64` overflow instead
/// of wrapping; the `checked_*` methods report it as [`Error::Overflow`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const ZETA: Self = Self { a: 0, b: 1 };
    /// `ζ² = −1 − ζ`
    pub const ZETA2: Self = Self { a: -1, b: -1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::ONE,
            1 => Self::ZETA,
            _ => Self::ZETA2,
        }
    }

    /// Complex conjugate: `conj(a + bζ) = (a − b) − bζ`.
    pub fn conj(&self) -> Self {
        self.checked_conj().expect("overflow in Eisenstein conjugate")
    }

    pub fn checked_conj(&self) -> Result<Self> {
        let a = self.a.checked_sub(self.b).ok_or(Error::Overflow("eis_conj"))?;
        let b = self.b.checked_neg().ok_or(Error::Overflow("eis_conj"))?;
        Ok(Self { a, b })
    }

    /// Field norm `a² − ab + b²`, always `≥ 0`.
    pub fn norm(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - a * b + b * b
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Self {
            a: self.a.checked_add(rhs.a).ok_or(Error::Overflow("eis_add"))?,
            b: self.b.checked_add(rhs.b).ok_or(Error::Overflow("eis_add"))?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self {
            a: self.a.checked_sub(rhs.a).ok_or(Error::Overflow("eis_sub"))?,
            b: self.b.checked_sub(rhs.b).ok_or(Error::Overflow("eis_sub"))?,
        })
    }

    /// `(a + bζ)(c + dζ) = (ac − bd) + (ad + bc − bd)ζ`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, rhs.a as i128, rhs.b as i128);
        let re = a * c - b * d;
        let im = a * d + b * c - b * d;
        let re = i64::try_from(re).map_err(|_| Error::Overflow("eis_mul"))?;
        let im = i64::try_from(im).map_err(|_| Error::Overflow("eis_mul"))?;
        Ok(Self { a: re, b: im })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self> {
        self.checked_mul(Self::from_int(k))
    }

    /// Embedding into ℂ with `ζ ↦ exp(2πi/3)`.
    pub fn to_complex(&self) -> Complex64 {
        self.a as f64 + self.b as f64 * zeta_c()
    }
}

/// `ζ` as a double-precision complex number.
pub fn zeta_c() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

/// Product in `ℤ[ζ]`; panics on overflow.
pub fn eis_mul(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt {
    x * y
}

pub fn eis_norm(x: EisensteinInt) -> i128 {
    x.norm()
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("overflow in Eisenstein add")
    }
}

impl AddAssign for EisensteinInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("overflow in Eisenstein sub")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::ZERO - self
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("overflow in Eisenstein mul")
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ζ"),
            (a, b) if b < 0 => write!(f, "{a} - {}ζ", -b),
            (a, b) => write!(f, "{a} + {b}ζ"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zeta_relations() {
        let z = EisensteinInt::ZETA;
        assert_eq!(z * z, EisensteinInt::new(-1, -1));
        assert_eq!(z * z * z, EisensteinInt::ONE);
        assert_eq!(EisensteinInt::ONE + z + z * z, EisensteinInt::ZERO);
        assert_eq!(EisensteinInt::zeta_pow(-1), EisensteinInt::ZETA2);
    }

    #[test]
    fn identity_is_neutral() {
        let x = EisensteinInt::new(7, -4);
        assert_eq!(EisensteinInt::ONE * x, x);
    }

    #[test]
    fn cube_of_one_minus_zeta_matches_complex_embedding() {
        let u = EisensteinInt::new(1, -1);
        let exact = u * u * u;
        let c = u.to_complex();
        let approx = c * c * c;
        assert!((exact.to_complex() - approx).norm() < 1e-12);
        // (1 - ζ)^2 = -3ζ, so (1 - ζ)^3 = -3ζ + 3ζ^2 = -3 - 6ζ.
        assert_eq!(exact, EisensteinInt::new(-3, -6));
    }

    #[test]
    fn conj_matches_complex_conjugate() {
        let x = EisensteinInt::new(5, 3);
        assert!((x.conj().to_complex() - x.to_complex().conj()).norm() < 1e-12);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn overflow_is_detected() {
        let big = EisensteinInt::new(i64::MAX / 2, i64::MAX / 2);
        assert_eq!(big.checked_mul(big), Err(Error::Overflow("eis_mul")));
        assert!(EisensteinInt::new(i64::MAX, 0).checked_add(EisensteinInt::ONE).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn norm_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                  c in -10_000i64..10_000, d in -10_000i64..10_000) {
            let x = EisensteinInt::new(a, b);
            let y = EisensteinInt::new(c, d);
            prop_assert_eq!(eis_norm(eis_mul(x, y)), eis_norm(x) * eis_norm(y));
            prop_assert!(x.norm() >= 0);
            prop_assert_eq!(x.norm() == 0, x.is_zero());
        }

        #[test]
        fn mul_commutes_and_associates(a in -1000i64..1000, b in -1000i64..1000,
                                       c in -1000i64..1000, d in -1000i64..1000,
                                       e in -100i64..100, f in -100i64..100) {
            let x = EisensteinInt::new(a, b);
            let y = EisensteinInt::new(c, d);
            let z = EisensteinInt::new(e, f);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert!(((x * y).to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-6);
        }
    }
}
