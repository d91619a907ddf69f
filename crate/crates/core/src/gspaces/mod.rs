//! Finite pointed G-sets, based maps, smash products and conjugation
//! map-spaces.

mod fibration;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{same_group, FiniteGroup, GroupHom};
use crate::error::{Error, Result};
use crate::report::{Check, Report};

pub use fibration::{check_top_fibration, GSetCatalog, NamedGSet};

/// A finite set with a distinguished basepoint and a basepoint-preserving
/// action. `action[g * len + x]` is `g · x`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointedGSet {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    basepoint: usize,
    action: Vec<u32>,
}

impl fmt::Debug for PointedGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedGSet(over {}, {:?}, base {})", self.group.name(), self.labels, self.basepoint)
    }
}

impl PointedGSet {
    pub fn new(group: Arc<FiniteGroup>, labels: Vec<String>, basepoint: usize, action: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        if basepoint >= n {
            return Err(Error::InvalidGSet(format!("basepoint {basepoint} out of range for {n} elements")));
        }
        if action.len() != group.order() * n {
            return Err(Error::InvalidGSet(format!(
                "action table has {} entries, expected {}",
                action.len(),
                group.order() * n
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidGSet(format!("duplicate element label {dup}")));
        }
        let s = Self { group, labels, basepoint, action };
        if let Some(&bad) = s.action.iter().find(|&&y| y as usize >= n) {
            return Err(Error::InvalidGSet(format!("action image {bad} out of range")));
        }
        for g in s.group.elements() {
            if s.act(g, basepoint) != basepoint {
                return Err(Error::InvalidGSet(format!("{} moves the basepoint", s.group.label(g))));
            }
            let mut hit = vec![false; n];
            for x in 0..n {
                hit[s.act(g, x)] = true;
            }
            if hit.contains(&false) {
                return Err(Error::InvalidGSet(format!("{} does not act bijectively", s.group.label(g))));
            }
        }
        for x in 0..n {
            if s.act(s.group.identity(), x) != x {
                return Err(Error::InvalidGSet(format!("identity moves {}", s.labels[x])));
            }
        }
        for a in s.group.elements() {
            for b in s.group.elements() {
                for x in 0..n {
                    if s.act(s.group.mul(a, b), x) != s.act(a, s.act(b, x)) {
                        return Err(Error::InvalidGSet(format!(
                            "({}*{}).{} != {}.({}.{})",
                            s.group.label(a),
                            s.group.label(b),
                            s.labels[x],
                            s.group.label(a),
                            s.group.label(b),
                            s.labels[x]
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Builds an action from the images of a few group elements, extending
    /// to the whole group by products. Fails if the given images do not
    /// define an action.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        labels: Vec<String>,
        basepoint: usize,
        generators: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut table: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        table[group.identity()] = Some((0..n).collect());
        let mut queue = vec![group.identity()];
        for (g, images) in generators {
            if images.len() != n || images.iter().any(|&y| y >= n) {
                return Err(Error::InvalidGSet(format!("images of {} do not match the element list", group.label(*g))));
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let current = table[x].clone().expect("visited");
            for (g, images) in generators {
                // (g*x) acts as images ∘ current
                let y = group.mul(*g, x);
                let composed: Vec<usize> = current.iter().map(|&p| images[p]).collect();
                match &table[y] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidGSet(format!(
                            "generator images are inconsistent at {}",
                            group.label(y)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        table[y] = Some(composed);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        if let Some(missing) = table.iter().position(Option::is_none) {
            return Err(Error::InvalidGSet(format!("generators do not reach {}", group.label(missing))));
        }
        let action = table.into_iter().flat_map(|r| r.expect("filled")).map(|y| y as u32).collect();
        Self::new(group, labels, basepoint, action)
    }

    /// `labels` with the trivial action.
    pub fn trivial(group: Arc<FiniteGroup>, labels: Vec<String>, basepoint: usize) -> Result<Self> {
        let action = (0..group.order()).flat_map(|_| 0..labels.len() as u32).collect();
        Self::new(group, labels, basepoint, action)
    }

    /// The one-point space.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, vec!["*".into()], 0).expect("valid")
    }

    /// Two points with trivial action.
    pub fn s0(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, vec!["*".into(), "1".into()], 0).expect("valid")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn non_base(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| x != self.basepoint)
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.labels.len() + x] as usize
    }

    pub fn action_table(&self) -> &[u32] {
        &self.action
    }

    pub fn is_trivial_action(&self) -> bool {
        self.group.elements().all(|g| (0..self.len()).all(|x| self.act(g, x) == x))
    }

    /// Same points and action up to relabelling.
    pub fn same_structure(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.basepoint == other.basepoint && self.action == other.action
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidGSet("relabelling changes the size".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Non-base points fixed by every element of `subgroup`.
    pub fn fixed_points(&self, subgroup: &[usize]) -> Vec<usize> {
        self.non_base().filter(|&x| subgroup.iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// `{group, elements, basepoint, action}` with the action listed per
    /// group element as the images of every point.
    pub fn to_json(&self) -> Value {
        let action: serde_json::Map<String, Value> = self
            .group
            .elements()
            .map(|g| {
                let row: Vec<&str> = (0..self.len()).map(|x| self.labels[self.act(g, x)].as_str()).collect();
                (self.group.label(g).to_string(), json!(row))
            })
            .collect();
        json!({
            "group": self.group.name(),
            "elements": self.labels,
            "basepoint": self.labels[self.basepoint],
            "action": action,
        })
    }
}

/// A based map, stored as the image of every element. Equivariance is not
/// part of the data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMap {
    images: Vec<u32>,
}

impl PointedMap {
    pub fn new(source: &PointedGSet, target: &PointedGSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidMap(format!("{} images for {} elements", images.len(), source.len())));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
            return Err(Error::InvalidMap(format!("image {bad} out of range")));
        }
        if images[source.basepoint()] != target.basepoint() {
            return Err(Error::InvalidMap("basepoint not preserved".into()));
        }
        Ok(Self::from_images(images))
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        Self { images: images.into_iter().map(|y| y as u32).collect() }
    }

    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    /// Sends everything to `basepoint`.
    pub fn constant(n: usize, basepoint: usize) -> Self {
        Self { images: vec![basepoint as u32; n] }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    pub fn raw(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PointedMap) -> PointedMap {
        Self { images: first.images.iter().map(|&y| self.images[y as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    pub fn is_bijection(&self, target_len: usize) -> bool {
        if self.images.len() != target_len {
            return false;
        }
        let mut hit = vec![false; target_len];
        for &y in &self.images {
            if std::mem::replace(&mut hit[y as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<PointedMap> {
        if !self.is_bijection(self.images.len()) {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Some(Self { images: inv })
    }

    /// First `(g, x)` with `f(g·x) != g·f(x)`.
    pub fn equivariance_witness(&self, source: &PointedGSet, target: &PointedGSet) -> Option<(usize, usize)> {
        for g in source.group().elements() {
            for x in 0..source.len() {
                if self.apply(source.act(g, x)) != target.act(g, self.apply(x)) {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn is_equivariant(&self, source: &PointedGSet, target: &PointedGSet) -> bool {
        self.equivariance_witness(source, target).is_none()
    }

    /// Swaps the images of `i` and `j`.
    pub fn swapped(&self, i: usize, j: usize) -> PointedMap {
        let mut images = self.images.clone();
        images.swap(i, j);
        Self { images }
    }
}

/// `X ∧ Y`: basepoint first, then the pairs of non-base points in
/// lexicographic order, with the diagonal action.
pub fn smash(x: &PointedGSet, y: &PointedGSet) -> Result<PointedGSet> {
    if !same_group(x.group(), y.group()) {
        return Err(Error::ExtentMismatch { expected: x.group().name().into(), found: y.group().name().into() });
    }
    let layout = SmashLayout::new(x, y);
    let mut labels = vec!["*".to_string()];
    for a in x.non_base() {
        for b in y.non_base() {
            labels.push(format!("{}^{}", x.label(a), y.label(b)));
        }
    }
    let mut action = Vec::with_capacity(x.group().order() * labels.len());
    for g in x.group().elements() {
        action.push(0);
        for a in x.non_base() {
            for b in y.non_base() {
                action.push(layout.pair(x.act(g, a), y.act(g, b)) as u32);
            }
        }
    }
    // Labels built from pairs can collide (e.g. "a^b^c"); fall back to indices.
    let out = PointedGSet::new(x.group().clone(), labels, 0, action.clone());
    match out {
        Ok(s) => Ok(s),
        Err(_) => PointedGSet::new(x.group().clone(), (0..layout.len()).map(|i| format!("p{i}")).collect(), 0, action),
    }
}

/// Index arithmetic for `X ∧ Y`.
#[derive(Debug, Clone)]
pub struct SmashLayout {
    x_pos: Vec<usize>,
    y_pos: Vec<usize>,
    x_base: usize,
    y_base: usize,
    y_count: usize,
    x_points: Vec<usize>,
    y_points: Vec<usize>,
}

impl SmashLayout {
    pub fn new(x: &PointedGSet, y: &PointedGSet) -> Self {
        Self::from_shapes(x.len(), x.basepoint(), y.len(), y.basepoint())
    }

    pub fn from_shapes(x_len: usize, x_base: usize, y_len: usize, y_base: usize) -> Self {
        let positions = |len: usize, base: usize| -> (Vec<usize>, Vec<usize>) {
            let mut pos = vec![usize::MAX; len];
            let mut points = Vec::new();
            for i in (0..len).filter(|&i| i != base) {
                pos[i] = points.len();
                points.push(i);
            }
            (pos, points)
        };
        let (x_pos, x_points) = positions(x_len, x_base);
        let (y_pos, y_points) = positions(y_len, y_base);
        Self { x_pos, y_pos, x_base, y_base, y_count: y_points.len(), x_points, y_points }
    }

    pub fn len(&self) -> usize {
        1 + self.x_points.len() * self.y_points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `a ∧ b`; the basepoint if either is.
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        if a == self.x_base || b == self.y_base {
            0
        } else {
            1 + self.x_pos[a] * self.y_count + self.y_pos[b]
        }
    }

    /// Components of a non-base point.
    #[inline]
    pub fn split(&self, p: usize) -> Option<(usize, usize)> {
        if p == 0 {
            None
        } else {
            let q = p - 1;
            Some((self.x_points[q / self.y_count], self.y_points[q % self.y_count]))
        }
    }

    /// `f ∧ g` as a map of smash products laid out by `self` and `target`.
    pub fn map(&self, target: &SmashLayout, f: &PointedMap, g: &PointedMap) -> PointedMap {
        let images = (0..self.len())
            .map(|p| match self.split(p) {
                None => 0,
                Some((a, b)) => target.pair(f.apply(a), g.apply(b)),
            })
            .collect();
        PointedMap::from_images(images)
    }
}

pub fn restrict_gset(alpha: &GroupHom, x: &PointedGSet) -> Result<PointedGSet> {
    if !same_group(alpha.target(), x.group()) {
        return Err(Error::ExtentMismatch { expected: alpha.target().name().into(), found: x.group().name().into() });
    }
    let action = alpha.image().iter().flat_map(|&a| (0..x.len()).map(move |p| x.act(a, p) as u32)).collect();
    PointedGSet::new(alpha.source().clone(), x.labels.clone(), x.basepoint, action)
}

/// All based maps `X → Y`, ordered lexicographically by their images, with
/// the conjugation action `(g, h) · f = (x ↦ h·f(g⁻¹·x))` of `G × H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpace {
    source_len: usize,
    source_base: usize,
    target_len: usize,
    target_base: usize,
    count: usize,
    target_order: usize,
    action: Vec<u32>,
}

pub fn map_space(x: &PointedGSet, y: &PointedGSet) -> MapSpace {
    let free = x.len() - 1;
    let count = y.len().pow(free as u32);
    let mut space = MapSpace {
        source_len: x.len(),
        source_base: x.basepoint(),
        target_len: y.len(),
        target_base: y.basepoint(),
        count,
        target_order: y.group().order(),
        action: Vec::with_capacity(x.group().order() * y.group().order() * count),
    };
    let n = x.len();
    let decoded: Vec<usize> = (0..count).flat_map(|i| space.decode(i)).collect();
    let mut conjugated = vec![0usize; n];
    for g in x.group().elements() {
        let g_inv = x.group().inv(g);
        for h in y.group().elements() {
            for f in decoded.chunks_exact(n.max(1)).take(count) {
                for (p, slot) in conjugated.iter_mut().enumerate() {
                    *slot = y.act(h, f[x.act(g_inv, p)]);
                }
                space.action.push(space.encode(&conjugated) as u32);
            }
        }
    }
    space
}

impl MapSpace {
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Images of the `i`-th map.
    pub fn decode(&self, mut i: usize) -> Vec<usize> {
        let mut images = vec![self.target_base; self.source_len];
        for p in (0..self.source_len).rev().filter(|&p| p != self.source_base) {
            images[p] = i % self.target_len;
            i /= self.target_len;
        }
        images
    }

    pub fn encode(&self, images: &[usize]) -> usize {
        (0..self.source_len)
            .filter(|&p| p != self.source_base)
            .fold(0, |acc, p| acc * self.target_len + images[p])
    }

    pub fn element(&self, i: usize) -> PointedMap {
        PointedMap::from_images(self.decode(i))
    }

    #[inline]
    pub fn act(&self, g: usize, h: usize, f: usize) -> usize {
        self.action[(g * self.target_order + h) * self.count + f] as usize
    }

    pub fn action_table(&self) -> &[u32] {
        &self.action
    }
}

/// Based maps fixed by the diagonal conjugation action: the equivariant ones.
pub fn equivariant_maps(x: &PointedGSet, y: &PointedGSet) -> Result<Vec<PointedMap>> {
    if !same_group(x.group(), y.group()) {
        return Err(Error::ExtentMismatch { expected: x.group().name().into(), found: y.group().name().into() });
    }
    let space = map_space(x, y);
    Ok((0..space.len())
        .filter(|&f| x.group().elements().all(|g| space.act(g, g, f) == f))
        .map(|f| space.element(f))
        .collect())
}

/// Smash is associative and unital up to the canonical pairing bijections,
/// and those bijections are equivariant.
pub fn check_smash_coherence(sets: &[&PointedGSet]) -> Report {
    let mut report = Report::new();
    let mut unit = Check::new("smash.unit");
    let mut assoc = Check::new("smash.associativity");
    let mut groups: HashMap<&str, Vec<&PointedGSet>> = HashMap::new();
    for s in sets {
        groups.entry(s.group().name()).or_default().push(s);
    }
    let mut names: Vec<&str> = groups.keys().copied().collect();
    names.sort_unstable();
    for name in names {
        let list = &groups[name];
        let s0 = PointedGSet::s0(list[0].group().clone());
        for x in list {
            let xs = smash(x, &s0).expect("same group");
            let layout = SmashLayout::new(x, &s0);
            let one = s0.index_of("1").expect("non-base point");
            let bij = PointedMap::from_images((0..x.len()).map(|a| layout.pair(a, one)).collect());
            let ok = bij.is_bijection(xs.len()) && bij.is_equivariant(x, &xs);
            unit.test(ok, || json!({ "group": name, "set": x.labels() }));
            for y in list {
                for z in list {
                    if x.len() * y.len() * z.len() > 200 {
                        continue;
                    }
                    let xy = smash(x, y).expect("same group");
                    let yz = smash(y, z).expect("same group");
                    let left = smash(&xy, z).expect("same group");
                    let right = smash(x, &yz).expect("same group");
                    let (lxy, lyz) = (SmashLayout::new(x, y), SmashLayout::new(y, z));
                    let (l_left, l_right) = (SmashLayout::new(&xy, z), SmashLayout::new(x, &yz));
                    let images: Vec<usize> = (0..left.len())
                        .map(|p| match l_left.split(p) {
                            None => 0,
                            Some((ab, c)) => {
                                let (a, b) = lxy.split(ab).expect("non-base");
                                l_right.pair(a, lyz.pair(b, c))
                            }
                        })
                        .collect();
                    let bij = PointedMap::from_images(images);
                    let ok = bij.is_bijection(right.len()) && bij.is_equivariant(&left, &right);
                    assoc.test(ok, || json!({ "group": name, "sizes": [x.len(), y.len(), z.len()] }));
                }
            }
        }
    }
    report.push(unit);
    report.push(assoc);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn swap_set(g: Arc<FiniteGroup>) -> PointedGSet {
        PointedGSet::from_generators(g, vec!["*".into(), "a".into(), "b".into()], 0, &[(1, vec![0, 2, 1])]).unwrap()
    }

    #[test]
    fn smash_of_swap_with_itself() {
        let x = swap_set(c2());
        let xx = smash(&x, &x).unwrap();
        assert_eq!(xx.len(), 5);
        let idx = |l: &str| xx.index_of(l).unwrap();
        assert_eq!(xx.act(1, idx("a^a")), idx("b^b"));
        assert_eq!(xx.act(1, idx("a^b")), idx("b^a"));
    }

    #[test]
    fn smash_counts_and_unit() {
        let g = c2();
        let x = swap_set(g.clone());
        let s0 = PointedGSet::s0(g.clone());
        assert!(smash(&x, &s0).unwrap().same_structure(&x));
        let y = PointedGSet::trivial(g, (0..4).map(|i| i.to_string()).collect(), 0).unwrap();
        assert_eq!(smash(&x, &y).unwrap().len() - 1, 2 * 3);
    }

    #[test]
    fn self_maps_of_swap_set() {
        let x = swap_set(c2());
        assert_eq!(map_space(&x, &x).len(), 9);
        let eq = equivariant_maps(&x, &x).unwrap();
        assert_eq!(eq.len(), 3);
        assert!(eq.contains(&PointedMap::identity(3)));
        assert!(eq.contains(&PointedMap::constant(3, 0)));
        assert!(eq.contains(&PointedMap::from_images(vec![0, 2, 1])));
    }

    #[test]
    fn map_space_action_formula() {
        let g = c2();
        let x = swap_set(g.clone());
        let y = PointedGSet::from_generators(g.clone(), vec!["*".into(), "p".into(), "q".into(), "r".into()], 0, &[(1, vec![0, 2, 1, 3])])
            .unwrap();
        let space = map_space(&x, &y);
        for a in g.elements() {
            for b in g.elements() {
                for f in 0..space.len() {
                    let fm = space.decode(f);
                    let expected: Vec<usize> = (0..x.len()).map(|p| y.act(b, fm[x.act(g.inv(a), p)])).collect();
                    assert_eq!(space.decode(space.act(a, b, f)), expected);
                    assert_eq!(space.encode(&fm), f);
                }
            }
        }
    }

    #[test]
    fn restriction_to_trivial_group() {
        let g = c2();
        let e = Arc::new(FiniteGroup::trivial());
        let incl = &crate::algebra::enumerate_homs(&e, &g)[0];
        let r = restrict_gset(incl, &swap_set(g)).unwrap();
        assert!(r.is_trivial_action());
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn invalid_sets_rejected() {
        let g = c2();
        let labels: Vec<String> = vec!["*".into(), "a".into()];
        assert!(PointedGSet::new(g.clone(), labels.clone(), 0, vec![0, 1, 1, 0]).is_err());
        assert!(PointedGSet::from_generators(g, labels, 0, &[(1, vec![0, 0])]).is_err());
    }

    #[test]
    fn smash_coherence_on_small_sets() {
        let g = c2();
        let x = swap_set(g.clone());
        let s0 = PointedGSet::s0(g.clone());
        let p = PointedGSet::point(g);
        assert!(check_smash_coherence(&[&x, &s0, &p]).all_passed());
    }
}
