//! The explicit section of the simultaneously resolved family through the
//! cusp degeneration, checked as an identity in `ℤ[ζ][t]`.

use serde::Serialize;

use crate::eisenstein::EisensteinInt;

/// Polynomial in `t` with Eisenstein integer coefficients, ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct EisPoly(pub Vec<EisensteinInt>);

impl EisPoly {
    pub fn zero() -> Self {
        Self(vec![])
    }

    /// `c·tᵏ`
    pub fn monomial(c: EisensteinInt, k: usize) -> Self {
        let mut v = vec![EisensteinInt::ZERO; k + 1];
        v[k] = c;
        Self(v).normalized()
    }

    pub fn constant(c: EisensteinInt) -> Self {
        Self::monomial(c, 0)
    }

    fn normalized(mut self) -> Self {
        while self.0.last().is_some_and(EisensteinInt::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(EisensteinInt::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Self, i: usize| p.0.get(i).copied().unwrap_or_default();
        Self((0..n).map(|i| get(self, i) + get(o, i)).collect()).normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|&c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![EisensteinInt::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self(v).normalized()
    }
}

/// Which second-chart coefficient to use; `ZetaReplacedByOne` is a
/// deliberately broken control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SectionVariant {
    #[default]
    Exact,
    ZetaReplacedByOne,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolutionResidual {
    pub n: u32,
    /// `w₀₁·x − w₀₀·(z − t^{2N})`
    pub first: EisPoly,
    /// `w₁₁·x − w₁₀·(z − t^{2N})(z − ζt^{2N})`
    pub second: EisPoly,
    /// `z³ − xy − t^{6N}`: the section lies on the base-changed surface.
    pub on_surface: EisPoly,
}

impl ResolutionResidual {
    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero() && self.on_surface.is_zero()
    }
}

/// Substitutes the section `t ↦ (z, x, y) = (0, −t^{3N}, t^{3N})` with
/// projective coordinates `[t^N : 1]`, `[1 : −ζt^N]` into both graph
/// relations and returns the residuals.
pub fn verify_resolution_section(n: u32) -> ResolutionResidual {
    verify_resolution_section_with(n, SectionVariant::Exact)
}

pub fn verify_resolution_section_with(n: u32, variant: SectionVariant) -> ResolutionResidual {
    let n_us = n as usize;
    let one = EisensteinInt::ONE;
    let t = |k: usize| EisPoly::monomial(one, k);
    let z = EisPoly::zero();
    let x = EisPoly::monomial(-one, 3 * n_us);
    let y = t(3 * n_us);
    let (w00, w01) = (t(n_us), EisPoly::constant(one));
    let w11_coeff = match variant {
        SectionVariant::Exact => -EisensteinInt::ZETA,
        SectionVariant::ZetaReplacedByOne => -one,
    };
    let (w10, w11) = (EisPoly::constant(one), EisPoly::monomial(w11_coeff, n_us));

    let shift0 = z.sub(&t(2 * n_us));
    let shift1 = z.sub(&EisPoly::monomial(EisensteinInt::ZETA, 2 * n_us));
    let first = w01.mul(&x).sub(&w00.mul(&shift0));
    let second = w11.mul(&x).sub(&w10.mul(&shift0).mul(&shift1));
    let on_surface = z.mul(&z).mul(&z).sub(&x.mul(&y)).sub(&t(6 * n_us));
    ResolutionResidual { n, first, second, on_surface }
}
