//! Signed permutation matrices: the hyperoctahedral group `B_n ⊂ O(n)`.
//!
//! A [`SignedPerm`] sends the basis vector `e_i` to `signs[i] · e_{perm[i]}`.
//! These are exactly the orthogonal matrices with entries in `{-1, 0, 1}`; the
//! engine uses them as its finite stand-in for `O(n)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSignedPerm(format!("sign must be +1 or -1, got {other}"))),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    #[inline]
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn bit(self) -> usize {
        (self == Sign::Minus) as usize
    }
}

/// Ordering is lexicographic on `(perm, signs)` with `Plus < Minus`, which puts
/// the identity first among signed permutations of a given dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<Sign>,
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, s)) in self.perm.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if *s == Sign::Plus { '+' } else { '-' }, p)?;
        }
        write!(f, "]")
    }
}

/// One cycle of the underlying permutation together with the product of the
/// signs met along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCycle {
    pub coords: Vec<usize>,
    pub sign: Sign,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::InvalidSignedPerm(format!(
                "{} images but {} signs",
                perm.len(),
                signs.len()
            )));
        }
        let mut hit = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidSignedPerm(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self { perm, signs })
    }

    pub fn from_ints(perm: &[usize], signs: &[i64]) -> Result<Self> {
        let signs = signs.iter().map(|&s| Sign::from_i64(s)).collect::<Result<Vec<_>>>()?;
        Self::new(perm.to_vec(), signs)
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![Sign::Plus; n] }
    }

    /// Swaps coordinates `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Self { perm, signs: vec![Sign::Plus; n] }
    }

    /// Negates coordinate `i`.
    pub fn flip(n: usize, i: usize) -> Self {
        let mut signs = vec![Sign::Plus; n];
        signs[i] = Sign::Minus;
        Self { perm: (0..n).collect(), signs }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// The matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: other.dim() });
        }
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&p, &s)| s.times(self.signs[p]))
            .collect();
        Ok(SignedPerm { perm, signs })
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPerm { perm, signs }
    }

    /// Block-diagonal sum: `self` on the first `n` coordinates, `other` on the rest.
    pub fn block_sum(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.dim();
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|&p| p + n));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        SignedPerm { perm, signs }
    }

    /// Dense integer matrix, `m[row][col]`.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[self.perm[i]][i] = self.signs[i].to_i64();
        }
        m
    }

    /// Acts on a sign vector in `{+,-}^n`, encoded as an integer whose bit
    /// `n-1-i` is set when coordinate `i` is negative (coordinate 0 is the most
    /// significant bit, so integer order is lexicographic order with `+ < -`).
    pub fn act_on_sign_vector(&self, vector: usize) -> usize {
        let n = self.dim();
        let mut out = 0;
        for i in 0..n {
            let bit = (vector >> (n - 1 - i)) & 1;
            let image = bit ^ self.signs[i].bit();
            out |= image << (n - 1 - self.perm[i]);
        }
        out
    }

    pub fn cycles(&self) -> Vec<SignedCycle> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut coords = Vec::new();
            let mut sign = Sign::Plus;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                coords.push(i);
                sign = sign.times(self.signs[i]);
                i = self.perm[i];
            }
            out.push(SignedCycle { coords, sign });
        }
        out
    }

    pub fn has_negative_cycle(&self) -> bool {
        self.cycles().iter().any(|c| c.sign == Sign::Minus)
    }

    /// Position of `self` in the lexicographic list of all signed permutations
    /// of its dimension.
    pub fn rank(&self) -> usize {
        let n = self.dim();
        let mut perm_rank = 0;
        for i in 0..n {
            let smaller_later = self.perm[i + 1..].iter().filter(|&&p| p < self.perm[i]).count();
            perm_rank = perm_rank * (n - i) + smaller_later;
        }
        let sign_bits = self.signs.iter().fold(0, |acc, s| (acc << 1) | s.bit());
        (perm_rank << n) | sign_bits
    }

    pub fn unrank(n: usize, rank: usize) -> SignedPerm {
        let sign_bits = rank & ((1 << n) - 1);
        let mut perm_rank = rank >> n;
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = perm_rank % base;
            perm_rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let perm = digits.iter().map(|&d| pool.remove(d)).collect();
        let signs = (0..n)
            .map(|i| if (sign_bits >> (n - 1 - i)) & 1 == 1 { Sign::Minus } else { Sign::Plus })
            .collect();
        SignedPerm { perm, signs }
    }

    /// `2^n · n!`
    pub fn count(n: usize) -> usize {
        (1..=n).product::<usize>() << n
    }

    /// All signed permutations of dimension `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<SignedPerm> {
        (0..Self::count(n)).map(|r| Self::unrank(n, r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn block_sum_of_sign_and_trivial_is_diag() {
        let minus = SignedPerm::from_ints(&[0], &[-1]).unwrap();
        let plus = SignedPerm::identity(1);
        let d = minus.block_sum(&plus);
        assert_eq!(d.to_matrix(), vec![vec![-1, 0], vec![0, 1]]);
    }

    #[test]
    fn inverse_and_involutions() {
        for f in SignedPerm::all(3) {
            assert!(f.compose(&f.inverse()).unwrap().is_identity());
            assert!(f.inverse().compose(&f).unwrap().is_identity());
        }
        let s = SignedPerm::transposition(2, 0, 1);
        assert!(s.compose(&s).unwrap().is_identity());
        assert_eq!(
            SignedPerm::identity(2).compose(&SignedPerm::identity(3)),
            Err(Error::DimMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn compose_matches_matrix_product_exhaustively_in_dim_2() {
        for f in SignedPerm::all(2) {
            for g in SignedPerm::all(2) {
                let fg = f.compose(&g).unwrap();
                assert_eq!(fg.to_matrix(), matmul(&f.to_matrix(), &g.to_matrix()));
            }
        }
    }

    #[test]
    fn rank_is_lexicographic_position() {
        for n in 0..=3 {
            let all = SignedPerm::all(n);
            assert_eq!(all.len(), SignedPerm::count(n));
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(all, sorted);
            for (i, f) in all.iter().enumerate() {
                assert_eq!(f.rank(), i);
            }
            assert!(all[0].is_identity());
        }
        assert_eq!(SignedPerm::count(2), 8);
        assert_eq!(SignedPerm::count(3), 48);
    }

    #[test]
    fn sign_vector_action_is_the_linear_action() {
        // vector index -> coordinates in {+1,-1}
        let coords = |n: usize, v: usize| -> Vec<i64> {
            (0..n).map(|i| if (v >> (n - 1 - i)) & 1 == 1 { -1 } else { 1 }).collect()
        };
        for f in SignedPerm::all(3) {
            let m = f.to_matrix();
            for v in 0..8 {
                let x = coords(3, v);
                let y: Vec<i64> = (0..3).map(|r| (0..3).map(|c| m[r][c] * x[c]).sum()).collect();
                assert_eq!(coords(3, f.act_on_sign_vector(v)), y);
            }
        }
    }

    #[test]
    fn cycle_signs() {
        // e0 -> -e1 -> e0: one negative 2-cycle
        let f = SignedPerm::from_ints(&[1, 0], &[-1, 1]).unwrap();
        assert!(f.has_negative_cycle());
        let g = SignedPerm::from_ints(&[1, 0], &[-1, -1]).unwrap();
        assert!(!g.has_negative_cycle());
        assert_eq!(g.cycles().len(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(SignedPerm::from_ints(&[0, 0], &[1, 1]).is_err());
        assert!(SignedPerm::from_ints(&[0], &[2]).is_err());
    }
}
