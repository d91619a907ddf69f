//! Finite hom-spaces between representations and their conjugation actions.

use crate::algebra::{hyperoctahedral, SignedPerm, MAX_TABLE_DIM};
use crate::error::{Error, Result};

use super::rep::Rep;
use crate::algebra::same_group;

/// All signed-permutation isometries `V → W` with the action
/// `(g, h) · f = ρ_W(h) f ρ_V(g)⁻¹` of `G × H`.
///
/// Element `i` is the signed permutation of lexicographic rank `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    dim: Option<usize>,
    len: usize,
    source_order: usize,
    target_order: usize,
    action: Vec<u32>,
}

pub fn hom_space(v: &Rep, w: &Rep) -> HomSpace {
    let (go, ho) = (v.group().order(), w.group().order());
    if v.dim() != w.dim() {
        return HomSpace { dim: None, len: 0, source_order: go, target_order: ho, action: Vec::new() };
    }
    let n = v.dim();
    let len = SignedPerm::count(n);
    let mut action = Vec::with_capacity(go * ho * len);
    if n <= MAX_TABLE_DIM {
        let b = hyperoctahedral(n);
        for g in 0..go {
            let vg_inv = b.inv(v.rho_index(g));
            for h in 0..ho {
                let wh = w.rho_index(h);
                for f in 0..len {
                    action.push(b.mul(b.mul(wh, f), vg_inv) as u32);
                }
            }
        }
    } else {
        let elements = SignedPerm::all(n);
        for g in 0..go {
            let vg_inv = v.rho(g).inverse();
            for h in 0..ho {
                for f in &elements {
                    let img = w.rho(h).compose(f).and_then(|x| x.compose(&vg_inv)).expect("equal dims");
                    action.push(img.rank() as u32);
                }
            }
        }
    }
    HomSpace { dim: Some(n), len, source_order: go, target_order: ho, action }
}

impl HomSpace {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn element(&self, i: usize) -> SignedPerm {
        SignedPerm::unrank(self.dim.expect("non-empty hom-space"), i)
    }

    pub fn elements(&self) -> Vec<SignedPerm> {
        self.dim.map(SignedPerm::all).unwrap_or_default()
    }

    /// Index of `(g, h) · f`.
    #[inline]
    pub fn act(&self, g: usize, h: usize, f: usize) -> usize {
        self.action[(g * self.target_order + h) * self.len + f] as usize
    }

    pub fn action_table(&self) -> &[u32] {
        &self.action
    }

    /// `Δ*`: the `G`-action `g · f = (g, g) · f`, as a `|G| × len` table.
    pub fn diagonal_pullback(&self) -> Result<Vec<u32>> {
        if self.source_order != self.target_order {
            return Err(Error::DimMismatch { left: self.source_order, right: self.target_order });
        }
        let mut out = Vec::with_capacity(self.source_order * self.len);
        for g in 0..self.source_order {
            for f in 0..self.len {
                out.push(self.act(g, g, f) as u32);
            }
        }
        Ok(out)
    }
}

/// Hom-space between representations of one group with the diagonal
/// conjugation action, computed by composing signed permutations directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalHom {
    pub elements: Vec<SignedPerm>,
    /// `action[g * len + f]`
    pub action: Vec<u32>,
}

impl DiagonalHom {
    pub fn act(&self, g: usize, f: usize) -> usize {
        self.action[g * self.elements.len() + f] as usize
    }
}

pub fn diagonal_hom(v: &Rep, w: &Rep) -> Result<DiagonalHom> {
    if !same_group(v.group(), w.group()) {
        return Err(Error::ExtentMismatch { expected: v.group().name().to_string(), found: w.group().name().to_string() });
    }
    if v.dim() != w.dim() {
        return Ok(DiagonalHom { elements: Vec::new(), action: Vec::new() });
    }
    let elements = SignedPerm::all(v.dim());
    let mut action = Vec::with_capacity(v.group().order() * elements.len());
    for g in v.group().elements() {
        let vg_inv = v.rho(g).inverse();
        for f in &elements {
            let img = w.rho(g).compose(f)?.compose(&vg_inv)?;
            action.push(img.rank() as u32);
        }
    }
    Ok(DiagonalHom { elements, action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteGroup, RationalMatrix};
    use std::sync::Arc;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn sizes() {
        let g = c2();
        assert!(hom_space(&Rep::trivial(g.clone(), 1), &Rep::trivial(g.clone(), 2)).is_empty());
        assert_eq!(hom_space(&Rep::trivial(g.clone(), 2), &Rep::trivial(g.clone(), 2)).len(), 8);
        assert_eq!(hom_space(&Rep::trivial(g.clone(), 3), &Rep::trivial(g, 3)).len(), 48);
    }

    #[test]
    fn conjugating_the_identity_of_the_sign_rep() {
        let g = c2();
        let sign = Rep::character(g.clone(), "sign", &[1, -1]).unwrap();
        let d = diagonal_hom(&sign, &sign).unwrap();
        assert_eq!(d.act(1, 0), 0);
        // sign -> trivial: g . id = -id
        let t = Rep::trivial(g, 1);
        let d = diagonal_hom(&sign, &t).unwrap();
        assert_eq!(d.elements[d.act(1, 0)], SignedPerm::flip(1, 0));
        let d = diagonal_hom(&t, &t).unwrap();
        assert!((0..2).all(|f| d.act(1, f) == f));
    }

    #[test]
    fn action_matches_matrix_formula_and_is_an_action() {
        let g = c2();
        let swap = Rep::permutation(g.clone(), "swap", &[vec![0, 1], vec![1, 0]]).unwrap();
        let sign2 = Rep::new(g.clone(), "sign2", 2, vec![SignedPerm::identity(2), SignedPerm::from_ints(&[0, 1], &[-1, 1]).unwrap()])
            .unwrap();
        let hs = hom_space(&swap, &sign2);
        for a in 0..2 {
            for b in 0..2 {
                for f in 0..hs.len() {
                    let lhs = RationalMatrix::from_signed_perm(&hs.element(hs.act(a, b, f)));
                    let m = |x: &SignedPerm| RationalMatrix::from_signed_perm(x);
                    let rhs = m(sign2.rho(b)).mul(&m(&hs.element(f))).unwrap().mul(&m(&swap.rho(a).inverse())).unwrap();
                    assert_eq!(lhs, rhs);
                    for c in 0..2 {
                        for d in 0..2 {
                            assert_eq!(hs.act(g.mul(a, c), g.mul(b, d), f), hs.act(a, b, hs.act(c, d, f)));
                        }
                    }
                }
            }
        }
        assert!((0..hs.len()).all(|f| hs.act(0, 0, f) == f));
    }

    #[test]
    fn diagonal_equals_pullback() {
        let g = c2();
        let sign = Rep::character(g.clone(), "sign", &[1, -1]).unwrap();
        let v = crate::site::rep_direct_sum(&sign, &Rep::trivial(g, 1)).unwrap();
        let hs = hom_space(&v, &v);
        let d = diagonal_hom(&v, &v).unwrap();
        assert_eq!(hs.diagonal_pullback().unwrap(), d.action);
    }
}
