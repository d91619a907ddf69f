use std::fmt;
use std::sync::Arc;

use crate::algebra::{averaged_rank, same_group, FiniteGroup, GroupHom, SignedPerm};
use crate::error::{Error, Result};

/// An `n`-dimensional orthogonal representation whose matrices are signed
/// permutations.
///
/// Equality compares extent, dimension and matrices; the label is only a name.
#[derive(Clone)]
pub struct Rep {
    group: Arc<FiniteGroup>,
    dim: usize,
    rho: Vec<SignedPerm>,
    rho_index: Vec<u32>,
    label: String,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.dim == other.dim && self.rho_index == other.rho_index
    }
}

impl Eq for Rep {}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep({} over {}, dim {}, {:?})", self.label, self.group.name(), self.dim, self.rho)
    }
}

fn check_extent(expected: &Arc<FiniteGroup>, found: &Arc<FiniteGroup>) -> Result<()> {
    if same_group(expected, found) {
        Ok(())
    } else {
        Err(Error::ExtentMismatch { expected: expected.name().to_string(), found: found.name().to_string() })
    }
}

impl Rep {
    /// Validates that `rho` (indexed by group element) is a homomorphism into
    /// signed permutations of dimension `dim`.
    pub fn new(group: Arc<FiniteGroup>, label: impl Into<String>, dim: usize, rho: Vec<SignedPerm>) -> Result<Self> {
        let label = label.into();
        let invalid = |reason: String| Error::InvalidRep { label: label.clone(), reason };
        if rho.len() != group.order() {
            return Err(invalid(format!("{} matrices for a group of order {}", rho.len(), group.order())));
        }
        if let Some((g, m)) = rho.iter().enumerate().find(|(_, m)| m.dim() != dim) {
            return Err(invalid(format!("matrix of {} has dimension {}, expected {dim}", group.label(g), m.dim())));
        }
        for a in group.elements() {
            for b in group.elements() {
                let lhs = &rho[group.mul(a, b)];
                let rhs = rho[a].compose(&rho[b])?;
                if *lhs != rhs {
                    return Err(invalid(format!(
                        "rho({}*{}) != rho({})rho({})",
                        group.label(a),
                        group.label(b),
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        Ok(Self::from_parts(group, label, dim, rho))
    }

    fn from_parts(group: Arc<FiniteGroup>, label: String, dim: usize, rho: Vec<SignedPerm>) -> Self {
        let rho_index = rho.iter().map(|m| m.rank() as u32).collect();
        Self { group, dim, rho, rho_index, label }
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let rho = vec![SignedPerm::identity(dim); group.order()];
        Self::from_parts(group, format!("triv{dim}"), dim, rho)
    }

    /// A one-dimensional representation sending `g` to `signs[g]`.
    pub fn character(group: Arc<FiniteGroup>, label: impl Into<String>, signs: &[i64]) -> Result<Self> {
        let rho = signs.iter().map(|&s| SignedPerm::from_ints(&[0], &[s])).collect::<Result<Vec<_>>>()?;
        Self::new(group, label, 1, rho)
    }

    /// A permutation representation: `perms[g][i]` is the image of coordinate `i`.
    pub fn permutation(group: Arc<FiniteGroup>, label: impl Into<String>, perms: &[Vec<usize>]) -> Result<Self> {
        let dim = perms.first().map_or(0, Vec::len);
        let rho = perms
            .iter()
            .map(|p| SignedPerm::from_ints(p, &vec![1; p.len()]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, label, dim, rho)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rho(&self, g: usize) -> &SignedPerm {
        &self.rho[g]
    }

    pub fn matrices(&self) -> &[SignedPerm] {
        &self.rho
    }

    /// Lexicographic rank of `rho(g)` among signed permutations of this dimension.
    #[inline]
    pub fn rho_index(&self, g: usize) -> usize {
        self.rho_index[g] as usize
    }

    pub fn rho_indices(&self) -> &[u32] {
        &self.rho_index
    }

    pub fn is_trivial(&self) -> bool {
        self.rho_index.iter().all(|&i| i == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
}

/// Pullback along `alpha: H → G` of a representation of `G`.
pub fn rep_restrict(alpha: &GroupHom, v: &Rep) -> Result<Rep> {
    check_extent(alpha.target(), v.group())?;
    let rho = alpha.image().iter().map(|&a| v.rho[a].clone()).collect();
    Ok(Rep::from_parts(alpha.source().clone(), format!("res[{}]({})", alpha.name(), v.label), v.dim, rho))
}

/// Block-diagonal direct sum.
pub fn rep_direct_sum(v: &Rep, w: &Rep) -> Result<Rep> {
    check_extent(v.group(), w.group())?;
    let rho = v.rho.iter().zip(&w.rho).map(|(a, b)| a.block_sum(b)).collect();
    Ok(Rep::from_parts(v.group.clone(), format!("{}+{}", v.label, w.label), v.dim + w.dim, rho))
}

/// Direct sum that refuses to leave a catalog of dimension `cap`.
pub fn rep_direct_sum_capped(v: &Rep, w: &Rep, cap: usize) -> Result<Rep> {
    if v.dim + w.dim > cap {
        return Err(Error::DimCapExceeded { dim: v.dim + w.dim, cap });
    }
    rep_direct_sum(v, w)
}

/// Dimension of the subspace fixed by every element of `subgroup`.
pub fn fixed_subspace_dim(rep: &Rep, subgroup: &[usize]) -> Result<usize> {
    rep.group.check_subgroup(subgroup)?;
    let mats: Vec<SignedPerm> = subgroup.iter().map(|&h| rep.rho[h].clone()).collect();
    Ok(averaged_rank(&mats, rep.dim))
}
