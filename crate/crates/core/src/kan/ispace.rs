use std::sync::Arc;

use rand::Rng;
use serde_json::json;

use crate::algebra::{hyperoctahedral, same_group, FiniteGroup, MAX_TABLE_DIM};
use crate::error::{Error, Result};
use crate::functors::{perm_label, GlobalSpace, IGSpaceFin};
use crate::gspaces::{PointedGSet, PointedMap};
use crate::report::{Check, Report};

/// A functor on the trivial representations `ℝ⁰, …, ℝᴺ` with values in
/// pointed G-sets. Over the trivial group this is a plain I-space.
#[derive(Debug, Clone)]
pub struct ISpaceFin {
    group: Arc<FiniteGroup>,
    values: Vec<PointedGSet>,
    /// Per dimension, `maps[t * len + x]`.
    morphisms: Vec<Vec<u32>>,
}

impl ISpaceFin {
    /// `values[n]` is the value at `ℝⁿ`; `morphism(n, t)` lists the images
    /// of the isometry with index `t`.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        values: Vec<PointedGSet>,
        mut morphism: impl FnMut(usize, usize) -> Vec<u32>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidFunctor("no values".into()));
        }
        if values.len() > MAX_TABLE_DIM + 1 {
            return Err(Error::DimCapExceeded { dim: values.len() - 1, cap: MAX_TABLE_DIM });
        }
        if let Some(bad) = values.iter().find(|x| !same_group(x.group(), &group)) {
            return Err(Error::ExtentMismatch { expected: group.name().to_string(), found: bad.group().name().to_string() });
        }
        let mut morphisms = Vec::with_capacity(values.len());
        for (n, x) in values.iter().enumerate() {
            let b = hyperoctahedral(n);
            let mut flat = Vec::with_capacity(b.len() * x.len());
            for t in 0..b.len() {
                let images = morphism(n, t);
                let ok = images.len() == x.len()
                    && images.iter().all(|&y| (y as usize) < x.len())
                    && images[x.basepoint()] as usize == x.basepoint();
                if !ok {
                    return Err(Error::InvalidFunctor(format!("image of {} is not a based map", perm_label(n, t))));
                }
                flat.extend_from_slice(&images);
            }
            morphisms.push(flat);
        }
        Ok(Self { group, values, morphisms })
    }

    /// `tables[n][t]` is the image of isometry `t` of `ℝⁿ`.
    pub fn from_tables(group: Arc<FiniteGroup>, values: Vec<PointedGSet>, tables: Vec<Vec<PointedMap>>) -> Result<Self> {
        if tables.len() != values.len() {
            return Err(Error::CoverageGap(format!("{} morphism tables for {} dimensions", tables.len(), values.len())));
        }
        for (n, t) in tables.iter().enumerate() {
            if n <= MAX_TABLE_DIM && t.len() != hyperoctahedral(n).len() {
                return Err(Error::CoverageGap(format!("{} maps for {} isometries of dimension {n}", t.len(), hyperoctahedral(n).len())));
            }
        }
        Self::from_fn(group, values, |n, t| tables[n][t].raw().to_vec())
    }

    /// The same set at every dimension with identity maps.
    pub fn constant(group: Arc<FiniteGroup>, dim_cap: usize, x: &PointedGSet) -> Result<Self> {
        let values = vec![x.clone(); dim_cap + 1];
        Self::from_fn(group, values, |_, _| (0..x.len() as u32).collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim_cap(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[PointedGSet] {
        &self.values
    }

    pub fn value(&self, n: usize) -> &PointedGSet {
        &self.values[n]
    }

    #[inline]
    pub fn morphism(&self, n: usize, t: usize) -> &[u32] {
        let len = self.values[n].len();
        &self.morphisms[n][t * len..(t + 1) * len]
    }

    pub fn morphism_map(&self, n: usize, t: usize) -> PointedMap {
        PointedMap::from_raw(self.morphism(n, t).to_vec())
    }

    pub fn swap_morphism_images(&mut self, n: usize, t: usize, i: usize, j: usize) -> Result<()> {
        let len = self.values.get(n).map(PointedGSet::len).unwrap_or(0);
        if n >= self.values.len() || t >= hyperoctahedral(n).len() || i >= len || j >= len {
            return Err(Error::InvalidFunctor("swap position out of range".into()));
        }
        self.morphisms[n].swap(t * len + i, t * len + j);
        Ok(())
    }
}

/// A natural transformation of I-spaces, one based map per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ISpaceMap {
    pub components: Vec<PointedMap>,
}

impl ISpaceMap {
    pub fn identity(x: &ISpaceFin) -> Self {
        Self { components: x.values().iter().map(|v| PointedMap::identity(v.len())).collect() }
    }

    pub fn after(&self, first: &ISpaceMap) -> ISpaceMap {
        Self { components: self.components.iter().zip(&first.components).map(|(a, b)| a.after(b)).collect() }
    }
}

/// Functor laws and equivariance of every structure map.
pub fn check_ispace(x: &ISpaceFin) -> Report {
    let mut report = Report::new();
    let mut identity = Check::new("ispace.identity");
    let mut composition = Check::new("ispace.composition");
    let mut equivariance = Check::new("ispace.equivariance");
    let group = x.group();
    for n in 0..=x.dim_cap() {
        let b = hyperoctahedral(n);
        let value = x.value(n);
        let id = x.morphism(n, 0);
        identity.test(id.iter().enumerate().all(|(p, &q)| p == q as usize), || json!({ "dim": n }));
        for t in 0..b.len() {
            let xt = x.morphism(n, t);
            for u in 0..b.len() {
                let (xu, xtu) = (x.morphism(n, u), x.morphism(n, b.mul(t, u)));
                let bad = (0..value.len()).find(|&p| xtu[p] != xt[xu[p] as usize]);
                composition.test(bad.is_none(), || {
                    json!({ "dim": n, "outer": perm_label(n, t), "inner": perm_label(n, u), "point": value.label(bad.unwrap_or(0)) })
                });
            }
            let bad = group
                .elements()
                .find_map(|g| (0..value.len()).find(|&p| xt[value.act(g, p)] as usize != value.act(g, xt[p] as usize)).map(|p| (g, p)));
            equivariance.test(bad.is_none(), || {
                let (g, p) = bad.unwrap_or_default();
                json!({ "dim": n, "isometry": perm_label(n, t), "g": group.label(g), "point": value.label(p) })
            });
        }
    }
    report.push(identity);
    report.push(composition);
    report.push(equivariance);
    report
}

/// Equivariance and naturality of a map of I-spaces.
pub fn check_ispace_map(name: &str, f: &ISpaceMap, x: &ISpaceFin, y: &ISpaceFin) -> Report {
    let mut report = Report::new();
    let mut shape = Check::new(format!("{name}.shape"));
    let ok = f.components.len() == x.values().len()
        && y.values().len() == x.values().len()
        && f.components.iter().enumerate().all(|(n, m)| {
            m.len() == x.value(n).len() && m.raw().iter().all(|&p| (p as usize) < y.value(n).len())
        });
    shape.test(ok, || json!({ "components": f.components.len(), "dims": x.values().len() }));
    report.push(shape);
    if !ok {
        return report;
    }
    let mut equivariance = Check::new(format!("{name}.equivariance"));
    let mut naturality = Check::new(format!("{name}.naturality"));
    for n in 0..=x.dim_cap() {
        let m = &f.components[n];
        let w = m.equivariance_witness(x.value(n), y.value(n));
        equivariance.test(w.is_none(), || json!({ "dim": n, "point": x.value(n).label(w.unwrap_or_default().1) }));
        for t in 0..hyperoctahedral(n).len() {
            let (xt, yt) = (x.morphism(n, t), y.morphism(n, t));
            let bad = (0..x.value(n).len()).find(|&p| m.apply(xt[p] as usize) != yt[m.apply(p)] as usize);
            naturality.test(bad.is_none(), || {
                json!({ "dim": n, "isometry": perm_label(n, t), "point": x.value(n).label(bad.unwrap_or(0)) })
            });
        }
    }
    report.push(equivariance);
    report.push(naturality);
    report
}

/// Restriction of a functor over one group to the trivial representations.
/// Every isometry between trivial representations is fixed by the group, so
/// its image must commute with the action.
pub fn restrict_igspace(a: &IGSpaceFin) -> Result<ISpaceFin> {
    let catalog = a.catalog();
    let g = a.group_index();
    catalog.require_trivial_reps(g)?;
    let trivial: Vec<usize> = (0..=catalog.dim_cap()).map(|n| catalog.trivial_index(g, n).expect("checked")).collect();
    let values: Vec<PointedGSet> = trivial.iter().map(|&r| a.value(r).clone()).collect();
    let group = a.group();
    for (n, &r) in trivial.iter().enumerate() {
        let value = a.value(r);
        for t in 0..hyperoctahedral(n).len() {
            let at = a.morphism(r, r, t);
            for h in group.elements() {
                if (0..value.len()).any(|p| at[value.act(h, p)] as usize != value.act(h, at[p] as usize)) {
                    return Err(Error::NonTrivialActionOnTrivialRep { dim: n, element: t, g: h });
                }
            }
        }
    }
    ISpaceFin::from_fn(group.clone(), values, |n, t| a.morphism(trivial[n], trivial[n], t).to_vec())
}

/// The I-space underlying a global space: its trivial-group component.
pub fn restrict_global(a: &GlobalSpace) -> Result<ISpaceFin> {
    let e = a.catalog().trivial_group().ok_or_else(|| Error::CatalogIncomplete("no trivial group".into()))?;
    restrict_igspace(a.component(e))
}

/// Left cosets `gH` numbered by least element; returns the coset of every
/// element and the least element of every coset.
fn cosets(n: usize, subgroup: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let b = hyperoctahedral(n);
    let mut coset_of = vec![usize::MAX; b.len()];
    let mut reps = Vec::new();
    for g in 0..b.len() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for &h in subgroup {
            coset_of[b.mul(g, h)] = reps.len();
        }
        reps.push(g);
    }
    (coset_of, reps)
}

/// A chain of subgroups `H₀ ⊆ H₁ ⊆ …` of `B_n`, one orbit of each I-space in
/// a tower.
struct OrbitChain {
    dim: usize,
    subgroups: Vec<Vec<usize>>,
}

fn random_subgroup(rng: &mut impl Rng, n: usize, base: &[usize], max_index: usize) -> Option<Vec<usize>> {
    let b = hyperoctahedral(n);
    for _ in 0..16 {
        let extra = rng.gen_range(0..=3);
        let mut gens = base.to_vec();
        gens.extend((0..extra).map(|_| rng.gen_range(0..b.len())));
        let h = b.generated(&gens);
        if b.len() / h.len() <= max_index {
            return Some(h);
        }
    }
    None
}

/// A tower `X₀ → X₁ → … → X_{depth-1}` of random I-spaces over the trivial
/// group with at most `max_points` non-base points per dimension. Each value
/// is a union of coset spaces `B_n/H`, and the maps are the projections
/// `gH ↦ gK` for `H ⊆ K`.
pub fn random_tower(rng: &mut impl Rng, trivial: &Arc<FiniteGroup>, dim_cap: usize, max_points: usize, depth: usize) -> (Vec<ISpaceFin>, Vec<ISpaceMap>) {
    let mut chains: Vec<Vec<OrbitChain>> = Vec::with_capacity(dim_cap + 1);
    for n in 0..=dim_cap {
        let mut orbits = Vec::new();
        let mut budget = max_points;
        let wanted = rng.gen_range(0..=3);
        for _ in 0..wanted {
            if budget == 0 {
                break;
            }
            let Some(h) = random_subgroup(rng, n, &[], budget) else { continue };
            budget -= hyperoctahedral(n).len() / h.len();
            let mut subgroups = vec![h];
            for _ in 1..depth {
                let last = subgroups.last().expect("nonempty");
                let k = random_subgroup(rng, n, last, usize::MAX).expect("unbounded index");
                subgroups.push(k);
            }
            orbits.push(OrbitChain { dim: n, subgroups });
        }
        chains.push(orbits);
    }

    let mut spaces = Vec::with_capacity(depth);
    let mut coset_tables: Vec<Vec<Vec<(Vec<usize>, Vec<usize>)>>> = Vec::with_capacity(depth);
    for level in 0..depth {
        let tables: Vec<Vec<(Vec<usize>, Vec<usize>)>> = chains
            .iter()
            .map(|orbits| orbits.iter().map(|o| cosets(o.dim, &o.subgroups[level])).collect())
            .collect();
        let values: Vec<PointedGSet> = tables
            .iter()
            .map(|orbits| {
                let mut labels = vec!["*".to_string()];
                for (i, (_, reps)) in orbits.iter().enumerate() {
                    labels.extend((0..reps.len()).map(|c| format!("o{i}c{c}")));
                }
                PointedGSet::trivial(trivial.clone(), labels, 0).expect("distinct labels")
            })
            .collect();
        let space = ISpaceFin::from_fn(trivial.clone(), values, |n, t| {
            let b = hyperoctahedral(n);
            let mut images = vec![0u32];
            let mut offset = 1;
            for (coset_of, reps) in &tables[n] {
                images.extend(reps.iter().map(|&g| (offset + coset_of[b.mul(t, g)]) as u32));
                offset += reps.len();
            }
            images
        })
        .expect("coset actions are functorial");
        spaces.push(space);
        coset_tables.push(tables);
    }

    let mut maps = Vec::with_capacity(depth.saturating_sub(1));
    for level in 1..depth {
        let components = (0..=dim_cap)
            .map(|n| {
                let (lower, upper) = (&coset_tables[level - 1][n], &coset_tables[level][n]);
                let mut images = vec![0usize];
                let mut offset = 1;
                for ((_, reps), (coset_of, upper_reps)) in lower.iter().zip(upper) {
                    images.extend(reps.iter().map(|&g| offset + coset_of[g]));
                    offset += upper_reps.len();
                }
                PointedMap::from_images(images)
            })
            .collect();
        maps.push(ISpaceMap { components });
    }
    (spaces, maps)
}

/// A random I-space over the trivial group.
pub fn random_ispace(rng: &mut impl Rng, trivial: &Arc<FiniteGroup>, dim_cap: usize, max_points: usize) -> ISpaceFin {
    random_tower(rng, trivial, dim_cap, max_points, 1).0.pop().expect("one level")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_towers_are_functors_with_natural_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e = Arc::new(FiniteGroup::trivial());
        for _ in 0..20 {
            let (spaces, maps) = random_tower(&mut rng, &e, 3, 5, 3);
            for x in &spaces {
                assert!(x.values().iter().all(|v| v.len() <= 6));
                assert!(check_ispace(x).all_passed());
            }
            for (i, f) in maps.iter().enumerate() {
                assert!(check_ispace_map("map", f, &spaces[i], &spaces[i + 1]).all_passed());
            }
        }
    }

    #[test]
    fn corrupted_ispace_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = Arc::new(FiniteGroup::trivial());
        let x = loop {
            let x = random_ispace(&mut rng, &e, 2, 5);
            if x.value(2).len() > 2 && (1..x.value(2).len()).any(|p| x.morphism(2, 3)[p] as usize != p) {
                break x;
            }
        };
        let mut y = x.clone();
        let moved = (1..y.value(2).len()).find(|&p| y.morphism(2, 3)[p] as usize != p).unwrap();
        y.swap_morphism_images(2, 3, 0, moved).unwrap();
        assert!(!check_ispace(&y).all_passed());
    }
}
