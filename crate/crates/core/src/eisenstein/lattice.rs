use rand::Rng;
use serde::{Deserialize, Serialize};

use super::int::EisensteinInt;
use super::intmat::{self, IntMatrix};
use crate::error::{Error, Result};

/// An integral lattice given by its Gram matrix together with an isometry
/// `ρ` of order 3, acting on column coordinate vectors.
///
/// JSON form: `{"gram": [[...]], "isometry": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLattice", into = "RawLattice")]
pub struct IsometricLattice {
    gram: IntMatrix,
    isometry: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawLattice {
    gram: IntMatrix,
    isometry: IntMatrix,
}

impl TryFrom<RawLattice> for IsometricLattice {
    type Error = Error;
    fn try_from(raw: RawLattice) -> Result<Self> {
        Self::new(raw.gram, raw.isometry)
    }
}

impl From<IsometricLattice> for RawLattice {
    fn from(l: IsometricLattice) -> Self {
        RawLattice { gram: l.gram, isometry: l.isometry }
    }
}

impl IsometricLattice {
    /// Validates symmetry, `ρᵀ·G·ρ = G` and `ρ³ = 1`.
    pub fn new(gram: IntMatrix, isometry: IntMatrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty Gram matrix".into()));
        }
        if !intmat::is_square(&gram) || !intmat::is_square(&isometry) || isometry.len() != n {
            return Err(Error::InvalidLattice("Gram and isometry must be square of equal size".into()));
        }
        if gram != intmat::transpose(&gram) {
            return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
        }
        let rt = intmat::transpose(&isometry);
        if intmat::mul(&intmat::mul(&rt, &gram)?, &isometry)? != gram {
            return Err(Error::InvalidLattice("isometry does not preserve the form".into()));
        }
        let r2 = intmat::mul(&isometry, &isometry)?;
        if intmat::mul(&r2, &isometry)? != intmat::identity(n) {
            return Err(Error::InvalidLattice("isometry does not have order dividing 3".into()));
        }
        Ok(Self { gram, isometry })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The `A₂` root lattice with its rotation of order 3.
    pub fn a2() -> Self {
        Self::new(vec![vec![2, -1], vec![-1, 2]], vec![vec![0, -1], vec![1, -1]])
            .expect("A2 is a valid isometric lattice")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn isometry(&self) -> &IntMatrix {
        &self.isometry
    }

    /// `ρ² + ρ + 1 = 0`, i.e. ρ has no nonzero fixed vectors.
    pub fn is_eisenstein(&self) -> bool {
        let n = self.rank();
        let Ok(r2) = intmat::mul(&self.isometry, &self.isometry) else {
            return false;
        };
        intmat::add(&r2, &self.isometry)
            .and_then(|s| intmat::add(&s, &intmat::identity(n)))
            .map(|s| intmat::is_zero(&s))
            .unwrap_or(false)
    }

    /// `⟨x, y⟩ = xᵀ G y`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let gy = intmat::mul_vec(&self.gram, y)?;
        if x.len() != gy.len() {
            return Err(Error::InvalidLattice("vector length mismatch".into()));
        }
        let acc: i128 = x.iter().zip(&gy).map(|(&a, &b)| a as i128 * b as i128).sum();
        i64::try_from(acc).map_err(|_| Error::Overflow("pairing"))
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        intmat::mul_vec(&self.isometry, x)
    }

    /// Change of basis by a unimodular `u` (with inverse `u_inv`):
    /// `G' = uᵀ G u`, `ρ' = u⁻¹ ρ u`.
    pub fn change_basis(&self, u: &IntMatrix, u_inv: &IntMatrix) -> Result<Self> {
        let gram = intmat::mul(&intmat::mul(&intmat::transpose(u), &self.gram)?, u)?;
        let isometry = intmat::mul(&intmat::mul(u_inv, &self.isometry)?, u)?;
        Self::new(gram, isometry)
    }

    pub fn direct_sum(parts: &[IsometricLattice]) -> Result<Self> {
        let grams: Vec<_> = parts.iter().map(|p| p.gram.clone()).collect();
        let isos: Vec<_> = parts.iter().map(|p| p.isometry.clone()).collect();
        Self::new(intmat::direct_sum(&grams), intmat::direct_sum(&isos))
    }

    /// Scales the form by `k`; the isometry is unchanged.
    pub fn scaled(&self, k: i64) -> Result<Self> {
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&g| g.checked_mul(k).ok_or(Error::Overflow("scale"))).collect())
            .collect::<Result<IntMatrix>>()?;
        Self::new(gram, self.isometry.clone())
    }

    /// A random Eisenstein lattice: a sum of `blocks` scaled copies of `A₂`
    /// (scales in `±1..=±3`, so indefinite forms occur) seen in a random basis.
    pub fn random_eisenstein<R: Rng + ?Sized>(blocks: usize, rng: &mut R) -> Self {
        let parts: Vec<_> = (0..blocks.max(1))
            .map(|_| {
                let k = rng.random_range(1..=3) * if rng.random_bool(0.3) { -1 } else { 1 };
                Self::a2().scaled(k).expect("small scale")
            })
            .collect();
        let sum = Self::direct_sum(&parts).expect("direct sum of valid lattices");
        let (u, inv) = intmat::random_unimodular(sum.rank(), 2 * sum.rank(), rng);
        sum.change_basis(&u, &inv).expect("unimodular change of basis")
    }
}

/// `h(x, y) = ⟨x,y⟩ + ζ⟨x,ρy⟩ + ζ²⟨x,ρ²y⟩`, returned in the `(1, ζ)` basis.
pub fn hermitian_form(lattice: &IsometricLattice, x: &[i64], y: &[i64]) -> Result<EisensteinInt> {
    if !lattice.is_eisenstein() {
        return Err(Error::NotEisenstein);
    }
    if x.len() != lattice.rank() || y.len() != lattice.rank() {
        return Err(Error::InvalidLattice("vector length does not match rank".into()));
    }
    let ry = lattice.apply(y)?;
    let rry = lattice.apply(&ry)?;
    let p0 = lattice.pairing(x, y)?;
    let p1 = lattice.pairing(x, &ry)?;
    let p2 = lattice.pairing(x, &rry)?;
    // ζ² = −1 − ζ
    let a = p0.checked_sub(p2).ok_or(Error::Overflow("hermitian_form"))?;
    let b = p1.checked_sub(p2).ok_or(Error::Overflow("hermitian_form"))?;
    Ok(EisensteinInt::new(a, b))
}
