//! Dense matrices over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::signed_perm::SignedPerm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimMismatch { left: c, right: bad.len() });
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        Ok(Self { rows: r, cols: c, entries })
    }

    pub fn from_signed_perm(f: &SignedPerm) -> Self {
        Self::from_integers(&f.to_matrix()).expect("square")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch { left: self.rows * self.cols, right: other.rows * other.cols });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    out.entries[i * other.cols + j] += prod;
                }
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let cols = self.cols;
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            for c in 0..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
            let p = m[rank * cols + col].clone();
            for r in 0..self.rows {
                if r == rank || m[r * cols + col].is_zero() {
                    continue;
                }
                let factor = &m[r * cols + col] / &p;
                for c in col..cols {
                    let delta = &factor * &m[rank * cols + c];
                    m[r * cols + c] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Rank of the averaging projector `(1/|H|) Σ_h M_h`, the dimension of the
/// common fixed subspace of the given matrices when they form a group.
pub fn averaged_rank(matrices: &[SignedPerm], dim: usize) -> usize {
    let mut sum = RationalMatrix::zeros(dim, dim);
    for m in matrices {
        sum = sum.add(&RationalMatrix::from_signed_perm(m)).expect("matching dims");
    }
    if matrices.is_empty() {
        return 0;
    }
    let k = BigRational::new(BigInt::one(), BigInt::from(matrices.len()));
    sum.scale(&k).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(2, 2).rank(), 0);
        let m = RationalMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn regular_rep_of_c2_projector() {
        let swap = SignedPerm::transposition(2, 0, 1);
        assert_eq!(averaged_rank(&[SignedPerm::identity(2), swap], 2), 1);
        let neg = SignedPerm::flip(1, 0);
        assert_eq!(averaged_rank(&[SignedPerm::identity(1), neg], 1), 0);
    }

    #[test]
    fn product_matches_signed_perm_composition() {
        for f in SignedPerm::all(2) {
            for g in SignedPerm::all(2) {
                let lhs = RationalMatrix::from_signed_perm(&f).mul(&RationalMatrix::from_signed_perm(&g)).unwrap();
                assert_eq!(lhs, RationalMatrix::from_signed_perm(&f.compose(&g).unwrap()));
            }
        }
    }
}
