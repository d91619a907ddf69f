//! Cached multiplication tables for the small hyperoctahedral groups.
//!
//! Element `i` of `B_n` is the signed permutation of lexicographic rank `i`,
//! so index 0 is always the identity.

use std::sync::OnceLock;

use super::signed_perm::SignedPerm;

/// Largest dimension for which tables are built.
pub const MAX_TABLE_DIM: usize = 4;

pub struct Hyperoctahedral {
    dim: usize,
    elements: Vec<SignedPerm>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    sign_action: Vec<u32>,
    generators: Vec<u32>,
}

static TABLES: [OnceLock<Hyperoctahedral>; MAX_TABLE_DIM + 1] =
    [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];

/// Tables for `B_n`. Panics if `n > MAX_TABLE_DIM`; callers check dimensions
/// against the catalog cap first.
pub fn hyperoctahedral(n: usize) -> &'static Hyperoctahedral {
    assert!(n <= MAX_TABLE_DIM, "no hyperoctahedral table for dimension {n}");
    TABLES[n].get_or_init(|| Hyperoctahedral::build(n))
}

impl Hyperoctahedral {
    fn build(n: usize) -> Self {
        let elements = SignedPerm::all(n);
        let len = elements.len();
        let mut mul = Vec::with_capacity(len * len);
        for a in &elements {
            for b in &elements {
                mul.push(a.compose(b).expect("same dimension").rank() as u32);
            }
        }
        let inv = elements.iter().map(|a| a.inverse().rank() as u32).collect();
        let vectors = 1usize << n;
        let mut sign_action = Vec::with_capacity(len * vectors);
        for a in &elements {
            for v in 0..vectors {
                sign_action.push(a.act_on_sign_vector(v) as u32);
            }
        }
        let mut generators: Vec<u32> =
            (0..n.saturating_sub(1)).map(|i| SignedPerm::transposition(n, i, i + 1).rank() as u32).collect();
        if n > 0 {
            generators.push(SignedPerm::flip(n, 0).rank() as u32);
        }
        Self { dim: n, elements, mul, inv, sign_action, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Image of sign vector `v` under element `a`.
    #[inline]
    pub fn act(&self, a: usize, v: usize) -> usize {
        self.sign_action[(a << self.dim) + v] as usize
    }

    /// Adjacent transpositions followed by the sign flip of coordinate 0.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().map(|&g| g as usize)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_index_zero_and_tables_agree() {
        for n in 0..=3 {
            let b = hyperoctahedral(n);
            assert!(b.element(0).is_identity());
            for x in 0..b.len() {
                assert_eq!(b.mul(0, x), x);
                assert_eq!(b.mul(x, b.inv(x)), 0);
            }
        }
    }

    #[test]
    fn generators_generate() {
        for n in 0..=4 {
            let b = hyperoctahedral(n);
            let gens: Vec<usize> = b.generators().collect();
            assert_eq!(b.generated(&gens).len(), b.len());
        }
    }

    #[test]
    fn sign_action_is_an_action() {
        let b = hyperoctahedral(2);
        for x in 0..b.len() {
            for y in 0..b.len() {
                for v in 0..4 {
                    assert_eq!(b.act(b.mul(x, y), v), b.act(x, b.act(y, v)));
                }
            }
        }
    }
}
