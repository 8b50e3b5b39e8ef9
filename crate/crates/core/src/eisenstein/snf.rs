use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::IntMatrix;
use crate::error::{Error, Result};

/// Invariant factors of `L^∨ / L`, i.e. the cokernel of the Gram matrix.
/// Only factors `> 1` are kept; each divides the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Number of cyclic factors of order divisible by `p`, i.e. the `p`-rank.
    pub fn p_rank(&self, p: u32) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors.iter().filter(|f| (*f % &p).is_zero()).count()
    }

    /// `true` when the group is `(ℤ/3)^a` for some `a`.
    pub fn is_3_elementary(&self) -> bool {
        let three = BigInt::from(3);
        self.invariant_factors.iter().all(|f| *f == three)
    }
}

/// Diagonal of the Smith normal form of an integer matrix (including ones
/// and zeros), computed by row/column reduction with minimal pivots.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::with_capacity(rows.min(cols));

    for t in 0..rows.min(cols) {
        loop {
            // Pivot: nonzero entry of minimal absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
                return normalize(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide every trailing entry.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    normalize(diag)
}

fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    d
}

pub fn discriminant_group(gram: &IntMatrix) -> Result<DiscriminantGroup> {
    if gram.is_empty() || gram.iter().any(|r| r.len() != gram.len()) {
        return Err(Error::InvalidLattice("Gram matrix must be square and nonempty".into()));
    }
    let diag = smith_diagonal(gram);
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateLattice);
    }
    let mut invariant_factors: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    invariant_factors.sort();
    Ok(DiscriminantGroup { invariant_factors })
}
