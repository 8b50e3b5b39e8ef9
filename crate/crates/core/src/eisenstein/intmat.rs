//! Small dense integer matrices with overflow-checked products.

use rand::Rng;

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn is_square(m: &IntMatrix) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    if a.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidLattice("matrix dimension mismatch".into()));
    }
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc: i128 = 0;
            for l in 0..k {
                acc += a[i][l] as i128 * b[l][j] as i128;
            }
            out[i][j] = i64::try_from(acc).map_err(|_| Error::Overflow("matrix product"))?;
        }
    }
    Ok(out)
}

pub fn mul_vec(a: &IntMatrix, v: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|row| {
            if row.len() != v.len() {
                return Err(Error::InvalidLattice("vector length mismatch".into()));
            }
            let acc: i128 = row.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum();
            i64::try_from(acc).map_err(|_| Error::Overflow("matrix-vector product"))
        })
        .collect()
}

pub fn add(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(&x, &y)| x.checked_add(y).ok_or(Error::Overflow("matrix sum")))
                .collect()
        })
        .collect()
}

pub fn is_zero(m: &IntMatrix) -> bool {
    m.iter().flatten().all(|&x| x == 0)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    out
}

/// A random unimodular matrix together with its inverse, built from
/// elementary row operations with multipliers in `-2..=2`.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let mut u = identity(n);
    let mut inv = identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k: i64 = match rng.random_range(0..4) {
            0 => -2,
            1 => -1,
            2 => 1,
            _ => 2,
        };
        // U <- E U with E = I + k e_i e_j^T; U^{-1} <- U^{-1} E^{-1}.
        for c in 0..n {
            u[i][c] += k * u[j][c];
        }
        for r in 0..n {
            inv[r][j] -= k * inv[r][i];
        }
    }
    (u, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..6 {
            let (u, inv) = random_unimodular(n, 12, &mut rng);
            assert_eq!(mul(&u, &inv).unwrap(), identity(n));
            assert_eq!(mul(&inv, &u).unwrap(), identity(n));
        }
    }

    #[test]
    fn product_overflow_is_an_error() {
        let a = vec![vec![i64::MAX, i64::MAX]];
        let b = vec![vec![2], vec![2]];
        assert!(matches!(mul(&a, &b), Err(Error::Overflow(_))));
    }
}
