//! Finite groups given by multiplication tables, and homomorphisms between them.
//!
//! Elements are the indices `0..order`. Every enumeration in the crate walks
//! elements in index order, so anything derived from a group is reproducible.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Validates a multiplication table: square, in range, associative, with a
    /// two-sided identity and two-sided inverses. Element labels default to the
    /// decimal indices.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::EmptyGroup);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { row, col, value, order });
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(Error::NoIdentity)?;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(Error::NoInverse { element: a })?;
            inverses.push(inv);
        }
        Ok(Self {
            name: name.into(),
            labels: (0..order).map(|i| i.to_string()).collect(),
            table,
            identity,
            inverses,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidCatalog(format!(
                "group {} has {} labels for order {}",
                self.name,
                labels.len(),
                self.order()
            )));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidCatalog(format!("group {} has duplicate element labels", self.name)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn trivial() -> Self {
        Self::from_table("e", vec![vec![0]]).expect("trivial table").with_names(&["1"])
    }

    /// Cyclic group of order `n` with elements `0..n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("C{n}"), table).expect("cyclic table")
    }

    /// Symmetric group on `n` letters. Elements are permutations in lexicographic
    /// order of their one-line notation; the product `a*b` applies `b` first.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        Self::from_table(format!("S{n}"), table)
            .expect("symmetric table")
            .with_labels(labels)
            .expect("distinct labels")
    }

    fn with_names(self, names: &[&str]) -> Self {
        self.with_labels(names.iter().map(|s| s.to_string()).collect())
            .expect("label count")
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, sorted by index.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
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

    /// All cyclic subgroups, each listed once, ordered by their least generator.
    pub fn cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let elements = self.generated(&[g]);
            if seen.insert(elements.clone()) {
                out.push(CyclicSubgroup { generator: g, elements });
            }
        }
        out
    }

    pub fn check_subgroup(&self, elements: &[usize]) -> Result<()> {
        if elements.is_empty() {
            return Err(Error::NotASubgroup("empty element list".into()));
        }
        let mut member = vec![false; self.order()];
        for &a in elements {
            if a >= self.order() {
                return Err(Error::NotASubgroup(format!("element {a} out of range")));
            }
            member[a] = true;
        }
        for &a in elements {
            if !member[self.inv(a)] {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in elements {
                if !member[self.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub elements: Vec<usize>,
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Pointer or structural equality of two shared groups.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A homomorphism between finite groups, stored as the image of every element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    name: String,
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({}: {} -> {}, {:?})", self.name, self.source.name(), self.target.name(), self.image)
    }
}

impl GroupHom {
    pub fn new(
        name: impl Into<String>,
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if image.len() != source.order() {
            return Err(Error::HomArity { name, got: image.len(), expected: source.order() });
        }
        if let Some(&bad) = image.iter().find(|&&x| x >= target.order()) {
            return Err(Error::EntryOutOfRange { row: 0, col: 0, value: bad, order: target.order() });
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotAHomomorphism { name, a, b });
                }
            }
        }
        Ok(Self { name, source, target, image })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let image = group.elements().collect();
        Self { name: format!("id_{}", group.name()), source: group.clone(), target: group, image }
    }

    /// The unique homomorphism sending everything to the identity.
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let image = vec![target.identity(); source.order()];
        Self { name: format!("1_{}_{}", source.name(), target.name()), source, target, image }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::ExtentMismatch {
                expected: self.source.name().to_string(),
                found: first.target.name().to_string(),
            });
        }
        let image = first.image.iter().map(|&x| self.image[x]).collect();
        Ok(GroupHom {
            name: format!("{}.{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            image,
        })
    }
}

/// Every homomorphism `source → target`, ordered lexicographically by image.
pub fn enumerate_homs(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    fn extend(
        g: &FiniteGroup,
        h: &FiniteGroup,
        image: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = image.len();
        if k == g.order() {
            out.push(image.clone());
            return;
        }
        for candidate in h.elements() {
            image.push(candidate);
            let consistent = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = g.mul(a, b);
                    ab > k || image[ab] == h.mul(image[a], image[b])
                })
            });
            if consistent {
                extend(g, h, image, out);
            }
            image.pop();
        }
    }
    let mut images = Vec::new();
    extend(source, target, &mut Vec::new(), &mut images);
    images
        .into_iter()
        .enumerate()
        .map(|(i, image)| GroupHom {
            name: format!("{}->{}#{}", source.name(), target.name(), i),
            source: source.clone(),
            target: target.clone(),
            image,
        })
        .collect()
}

/// A direct product with its structure maps.
#[derive(Debug, Clone)]
pub struct Product {
    pub group: Arc<FiniteGroup>,
    pub left: GroupHom,
    pub right: GroupHom,
    /// `G → G × G`, present only when both factors are the same group.
    pub diagonal: Option<GroupHom>,
}

/// `G × H` with componentwise multiplication. The element `(g, h)` has index
/// `g * |H| + h`.
pub fn group_product(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Product {
    let (m, n) = (g.order(), h.order());
    let table = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                .collect()
        })
        .collect();
    let labels = (0..m * n)
        .map(|x| format!("({},{})", g.label(x / n), h.label(x % n)))
        .collect();
    let group = Arc::new(
        FiniteGroup::from_table(format!("{}x{}", g.name(), h.name()), table)
            .expect("product of groups is a group")
            .with_labels(labels)
            .expect("distinct labels"),
    );
    let left = GroupHom {
        name: format!("pr1_{}", group.name()),
        source: group.clone(),
        target: g.clone(),
        image: (0..m * n).map(|x| x / n).collect(),
    };
    let right = GroupHom {
        name: format!("pr2_{}", group.name()),
        source: group.clone(),
        target: h.clone(),
        image: (0..m * n).map(|x| x % n).collect(),
    };
    let diagonal = (g == h).then(|| GroupHom {
        name: format!("diag_{}", g.name()),
        source: g.clone(),
        target: group.clone(),
        image: (0..m).map(|x| x * n + x).collect(),
    });
    Product { group, left, right, diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// S3 built independently as composition of permutations of three letters.
    fn s3_by_composition() -> Vec<Vec<usize>> {
        let perms = permutations(3);
        perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..3).map(|i| a[b[i]]).collect();
                        perms.iter().position(|p| *p == ab).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn trivial_and_c2_tables() {
        let e = FiniteGroup::from_table("e", vec![vec![0]]).unwrap();
        assert_eq!(e.order(), 1);
        assert_eq!(e.identity(), 0);
        let c2 = FiniteGroup::from_table("C2", vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.inverses(), &[0, 1]);
        assert_eq!(c2.element_order(1), 2);
    }

    #[test]
    fn s3_validates_and_is_generated_by_two_elements() {
        let s3 = FiniteGroup::from_table("S3", s3_by_composition()).unwrap();
        assert_eq!(s3.order(), 6);
        // (1 0 2) and (1 2 0) in one-line notation
        let perms = permutations(3);
        let t = perms.iter().position(|p| *p == vec![1, 0, 2]).unwrap();
        let c = perms.iter().position(|p| *p == vec![1, 2, 0]).unwrap();
        assert_eq!(s3.generated(&[t, c]).len(), 6);
        assert_eq!(s3.generated(&[t]).len(), 2);
        assert_eq!(s3.generated(&[c]).len(), 3);
        assert_eq!(FiniteGroup::symmetric(3).table(), s3.table());
    }

    #[test]
    fn broken_tables_are_rejected_with_witnesses() {
        assert!(matches!(
            FiniteGroup::from_table("x", vec![vec![0, 1], vec![1]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        // subtraction mod 3 is a Latin square but not associative
        let minus = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        let err = FiniteGroup::from_table("x", minus).unwrap_err();
        assert_eq!(err, Error::NotAssociative { a: 0, b: 0, c: 1 });
        // constant table: associative, no identity
        let err = FiniteGroup::from_table("x", vec![vec![0, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::NoIdentity);
        // monoid {0,1} under max: identity 0, element 1 not invertible
        let err = FiniteGroup::from_table("x", vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse { element: 1 });
    }

    #[test]
    fn inverse_law_holds_exhaustively() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::symmetric(3), FiniteGroup::symmetric(4)] {
            for a in g.elements() {
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
                assert_eq!(g.mul(g.inv(a), a), g.identity());
            }
        }
    }

    #[test]
    fn products() {
        let e = Arc::new(FiniteGroup::trivial());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let p = group_product(&e, &c3);
        assert_eq!(p.group.order(), 3);
        assert_eq!(p.right.image(), &[0, 1, 2]);

        let klein = group_product(&c2, &c2);
        assert_eq!(klein.group.order(), 4);
        let involutions = klein
            .group
            .elements()
            .filter(|&a| a != klein.group.identity() && klein.group.mul(a, a) == klein.group.identity())
            .count();
        assert_eq!(involutions, 3);
        assert!(klein.diagonal.is_some());

        let c6 = group_product(&c2, &c3);
        let orders: Vec<usize> = c6.group.elements().map(|a| c6.group.element_order(a)).collect();
        // (1,1) has order 6
        assert_eq!(orders[1 * 3 + 1], 6);
        assert!(c6.diagonal.is_none());
    }

    #[test]
    fn hom_counts() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let klein = group_product(&c2, &c2).group;
        assert_eq!(enumerate_homs(&s3, &s3).len(), 10);
        assert_eq!(enumerate_homs(&klein, &klein).len(), 16);
        assert_eq!(enumerate_homs(&c2, &s3).len(), 4);
        assert_eq!(enumerate_homs(&s3, &c2).len(), 2);
        for h in enumerate_homs(&klein, &s3) {
            GroupHom::new("check", h.source().clone(), h.target().clone(), h.image().to_vec()).unwrap();
        }
    }

    #[test]
    fn cyclic_subgroups_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let subs = s3.cyclic_subgroups();
        // trivial, three of order 2, one of order 3
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.elements.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3]);
        assert!(s3.check_subgroup(&[0, 1, 2]).is_err());
    }
}
