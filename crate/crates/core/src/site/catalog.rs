use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{enumerate_homs, group_product, FiniteGroup, GroupHom, MAX_TABLE_DIM};
use crate::error::{Error, Result};

use super::rep::{rep_direct_sum, rep_restrict, Rep};
use crate::algebra::same_group;

#[derive(Debug, Clone)]
pub struct CatalogHom {
    pub hom: GroupHom,
    pub source: usize,
    pub target: usize,
}

/// A truncation of the representation site: finitely many groups, the
/// homomorphisms between them, and per group a list of representations of
/// dimension at most `dim_cap`.
///
/// Representations of each group are kept sorted by `(dim, matrices)`.
#[derive(Debug, Clone)]
pub struct SiteCatalog {
    dim_cap: usize,
    groups: Vec<Arc<FiniteGroup>>,
    homs: Vec<CatalogHom>,
    reps: Vec<Vec<Rep>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
    restrict: Vec<Vec<Option<usize>>>,
    trivial: Vec<Vec<Option<usize>>>,
    identity_hom: Vec<Option<usize>>,
    to_trivial: Vec<Option<usize>>,
    composite: HashMap<(usize, usize), usize>,
}

fn rep_key(v: &Rep) -> Vec<u32> {
    let mut key = Vec::with_capacity(v.rho_indices().len() + 1);
    key.push(v.dim() as u32);
    key.extend_from_slice(v.rho_indices());
    key
}

impl SiteCatalog {
    pub fn new(dim_cap: usize, groups: Vec<Arc<FiniteGroup>>, homs: Vec<GroupHom>, reps: Vec<Rep>) -> Result<Self> {
        if dim_cap > MAX_TABLE_DIM {
            return Err(Error::DimCapExceeded { dim: dim_cap, cap: MAX_TABLE_DIM });
        }
        for (i, g) in groups.iter().enumerate() {
            if groups[..i].iter().any(|h| h.name() == g.name()) {
                return Err(Error::InvalidCatalog(format!("duplicate group name {}", g.name())));
            }
        }
        let group_of = |g: &Arc<FiniteGroup>| groups.iter().position(|h| same_group(h, g));
        let mut catalog_homs = Vec::with_capacity(homs.len());
        for hom in homs {
            if catalog_homs.iter().any(|h: &CatalogHom| h.hom.name() == hom.name()) {
                return Err(Error::InvalidCatalog(format!("duplicate hom name {}", hom.name())));
            }
            let (Some(source), Some(target)) = (group_of(hom.source()), group_of(hom.target())) else {
                return Err(Error::InvalidCatalog(format!("hom {} connects groups outside the catalog", hom.name())));
            };
            catalog_homs.push(CatalogHom { hom, source, target });
        }
        let mut per_group: Vec<Vec<Rep>> = vec![Vec::new(); groups.len()];
        for rep in reps {
            if rep.dim() > dim_cap {
                return Err(Error::DimCapExceeded { dim: rep.dim(), cap: dim_cap });
            }
            let Some(g) = group_of(rep.group()) else {
                return Err(Error::InvalidCatalog(format!("rep {} lives over a group outside the catalog", rep.label())));
            };
            if let Some(other) = per_group[g].iter().find(|r| r.label() == rep.label()) {
                return Err(Error::InvalidCatalog(format!("duplicate rep label {} over {}", other.label(), groups[g].name())));
            }
            if let Some(other) = per_group[g].iter().find(|r| **r == rep) {
                return Err(Error::InvalidCatalog(format!(
                    "reps {} and {} over {} have identical data",
                    other.label(),
                    rep.label(),
                    groups[g].name()
                )));
            }
            per_group[g].push(rep);
        }
        for list in &mut per_group {
            list.sort_by(|a, b| (a.dim(), a.rho_indices()).cmp(&(b.dim(), b.rho_indices())));
        }
        let lookup: Vec<HashMap<Vec<u32>, usize>> = per_group
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, r)| (rep_key(r), i)).collect())
            .collect();
        let trivial: Vec<Vec<Option<usize>>> = groups
            .iter()
            .enumerate()
            .map(|(gi, g)| (0..=dim_cap).map(|n| lookup[gi].get(&rep_key(&Rep::trivial(g.clone(), n))).copied()).collect())
            .collect();
        for (gi, g) in groups.iter().enumerate() {
            if trivial[gi][0].is_none() || (dim_cap >= 1 && trivial[gi][1].is_none()) {
                return Err(Error::CatalogIncomplete(format!(
                    "group {} lacks the 0- or 1-dimensional trivial representation",
                    g.name()
                )));
            }
        }
        let restrict = catalog_homs
            .iter()
            .map(|h| {
                per_group[h.target]
                    .iter()
                    .map(|v| {
                        let r = rep_restrict(&h.hom, v).expect("extent checked");
                        lookup[h.source].get(&rep_key(&r)).copied()
                    })
                    .collect()
            })
            .collect();
        let identity_hom = (0..groups.len())
            .map(|g| catalog_homs.iter().position(|h| h.source == g && h.target == g && h.hom.is_identity()))
            .collect();
        let trivial_group = groups.iter().position(|g| g.is_trivial());
        let to_trivial = (0..groups.len())
            .map(|g| trivial_group.and_then(|e| catalog_homs.iter().position(|h| h.source == g && h.target == e)))
            .collect();
        let mut composite = HashMap::new();
        for (b, beta) in catalog_homs.iter().enumerate() {
            for (a, alpha) in catalog_homs.iter().enumerate() {
                if alpha.target != beta.source {
                    continue;
                }
                let image: Vec<usize> = alpha.hom.image().iter().map(|&x| beta.hom.apply(x)).collect();
                if let Some(c) = catalog_homs
                    .iter()
                    .position(|h| h.source == alpha.source && h.target == beta.target && h.hom.image() == image.as_slice())
                {
                    composite.insert((b, a), c);
                }
            }
        }
        Ok(Self {
            dim_cap,
            groups,
            homs: catalog_homs,
            reps: per_group,
            lookup,
            restrict,
            trivial,
            identity_hom,
            to_trivial,
            composite,
        })
    }

    /// Closes `seeds` under restriction along every hom and then under direct
    /// sums within `dim_cap`. Restriction commutes with sums, so the result is
    /// closed under both. Seeds keep their labels; new reps are labelled by
    /// construction.
    pub fn closed(dim_cap: usize, groups: Vec<Arc<FiniteGroup>>, homs: Vec<GroupHom>, seeds: Vec<Rep>) -> Result<Self> {
        let group_of = |g: &Arc<FiniteGroup>| groups.iter().position(|h| same_group(h, g));
        let mut lists: Vec<Vec<Rep>> = vec![Vec::new(); groups.len()];
        let mut keys: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::new(); groups.len()];
        let mut insert = |lists: &mut Vec<Vec<Rep>>, g: usize, rep: Rep| -> bool {
            let key = rep_key(&rep);
            if keys[g].contains_key(&key) {
                return false;
            }
            keys[g].insert(key, lists[g].len());
            lists[g].push(rep);
            true
        };
        for (gi, g) in groups.iter().enumerate() {
            for n in 0..=dim_cap.min(1) {
                insert(&mut lists, gi, Rep::trivial(g.clone(), n));
            }
        }
        for seed in seeds {
            if seed.dim() > dim_cap {
                return Err(Error::DimCapExceeded { dim: seed.dim(), cap: dim_cap });
            }
            let g = group_of(seed.group())
                .ok_or_else(|| Error::InvalidCatalog(format!("seed {} lives outside the catalog", seed.label())))?;
            insert(&mut lists, g, seed);
        }
        let mut grown = true;
        while grown {
            grown = false;
            for hom in &homs {
                let (Some(s), Some(t)) = (group_of(hom.source()), group_of(hom.target())) else {
                    return Err(Error::InvalidCatalog(format!("hom {} connects groups outside the catalog", hom.name())));
                };
                let mut i = 0;
                while i < lists[t].len() {
                    let r = rep_restrict(hom, &lists[t][i])?;
                    grown |= insert(&mut lists, s, r);
                    i += 1;
                }
            }
        }
        for g in 0..groups.len() {
            let mut grown = true;
            while grown {
                grown = false;
                let current = lists[g].len();
                for a in 0..current {
                    for b in 0..current {
                        if lists[g][a].dim() + lists[g][b].dim() <= dim_cap {
                            let sum = rep_direct_sum(&lists[g][a], &lists[g][b])?;
                            grown |= insert(&mut lists, g, sum);
                        }
                    }
                }
            }
        }
        Self::new(dim_cap, groups, homs, lists.into_iter().flatten().collect())
    }

    /// The groups `e, C2, C3, C2xC2, S3` in that order.
    pub fn standard_groups() -> Vec<Arc<FiniteGroup>> {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let v4 = group_product(&c2, &c2).group;
        vec![
            Arc::new(FiniteGroup::trivial()),
            c2,
            Arc::new(FiniteGroup::cyclic(3)),
            v4,
            Arc::new(FiniteGroup::symmetric(3)),
        ]
    }

    /// Every homomorphism between every ordered pair of `groups`.
    pub fn all_homs(groups: &[Arc<FiniteGroup>]) -> Vec<GroupHom> {
        groups.iter().flat_map(|s| groups.iter().flat_map(move |t| enumerate_homs(s, t))).collect()
    }

    /// Seed representations of the shipped catalog.
    pub fn standard_seeds(groups: &[Arc<FiniteGroup>], dim_cap: usize) -> Vec<Rep> {
        let mut seeds = Vec::new();
        for g in groups {
            for n in 0..=dim_cap {
                seeds.push(Rep::trivial(g.clone(), n));
            }
        }
        let by_name = |name: &str| groups.iter().find(|g| g.name() == name).cloned();
        if let Some(c2) = by_name("C2") {
            seeds.push(Rep::character(c2.clone(), "sign", &[1, -1]).expect("sign character"));
            if dim_cap >= 2 {
                seeds.push(Rep::permutation(c2, "swap", &[vec![0, 1], vec![1, 0]]).expect("swap rep"));
            }
        }
        if let Some(c3) = by_name("C3") {
            if dim_cap >= 3 {
                let perms: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|i| (i + a) % 3).collect()).collect();
                seeds.push(Rep::permutation(c3, "cyc3", &perms).expect("cyclic rep"));
            }
        }
        if let Some(s3) = by_name("S3") {
            let perms: Vec<Vec<usize>> = s3
                .labels()
                .iter()
                .map(|l| l.chars().map(|c| c.to_digit(10).expect("digit label") as usize).collect())
                .collect();
            let parity: Vec<i64> = perms
                .iter()
                .map(|p| {
                    let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if inversions % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            seeds.push(Rep::character(s3.clone(), "sign", &parity).expect("sign character"));
            if dim_cap >= 3 {
                seeds.push(Rep::permutation(s3, "perm3", &perms).expect("permutation rep"));
            }
        }
        seeds
    }

    /// The shipped catalog: standard groups, all homs, seeds closed under
    /// restriction and sums, `dim_cap = 3`.
    pub fn standard() -> Self {
        Self::standard_with_cap(3)
    }

    pub fn standard_with_cap(dim_cap: usize) -> Self {
        let groups = Self::standard_groups();
        let homs = Self::all_homs(&groups);
        let seeds = Self::standard_seeds(&groups, dim_cap);
        Self::closed(dim_cap, groups, homs, seeds).expect("standard catalog is valid")
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    pub fn group(&self, g: usize) -> &Arc<FiniteGroup> {
        &self.groups[g]
    }

    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.name() == name)
    }

    pub fn group_by_name(&self, name: &str) -> Result<usize> {
        self.group_index(name).ok_or_else(|| Error::Unknown { kind: "group", name: name.to_string() })
    }

    pub fn homs(&self) -> &[CatalogHom] {
        &self.homs
    }

    pub fn hom(&self, h: usize) -> &CatalogHom {
        &self.homs[h]
    }

    pub fn hom_index(&self, name: &str) -> Option<usize> {
        self.homs.iter().position(|h| h.hom.name() == name)
    }

    pub fn reps(&self, g: usize) -> &[Rep] {
        &self.reps[g]
    }

    pub fn rep(&self, g: usize, v: usize) -> &Rep {
        &self.reps[g][v]
    }

    pub fn rep_count(&self) -> usize {
        self.reps.iter().map(Vec::len).sum()
    }

    pub fn rep_index(&self, g: usize, label: &str) -> Option<usize> {
        self.reps[g].iter().position(|r| r.label() == label)
    }

    pub fn rep_by_label(&self, g: usize, label: &str) -> Result<usize> {
        self.rep_index(g, label).ok_or_else(|| Error::Unknown { kind: "representation", name: label.to_string() })
    }

    /// Catalog index of a representation with the same data as `rep`.
    pub fn find_rep(&self, g: usize, rep: &Rep) -> Option<usize> {
        if !same_group(&self.groups[g], rep.group()) {
            return None;
        }
        self.lookup[g].get(&rep_key(rep)).copied()
    }

    /// Index over the hom's source of `α* V`, for `V` over its target.
    pub fn restrict_index(&self, h: usize, v: usize) -> Option<usize> {
        self.restrict[h][v]
    }

    pub fn trivial_index(&self, g: usize, dim: usize) -> Option<usize> {
        self.trivial[g].get(dim).copied().flatten()
    }

    pub fn sum_index(&self, g: usize, a: usize, b: usize) -> Option<usize> {
        let sum = rep_direct_sum(&self.reps[g][a], &self.reps[g][b]).ok()?;
        self.find_rep(g, &sum)
    }

    pub fn identity_hom(&self, g: usize) -> Option<usize> {
        self.identity_hom[g]
    }

    /// The hom `G → e`, if the trivial group is present.
    pub fn to_trivial(&self, g: usize) -> Option<usize> {
        self.to_trivial[g]
    }

    pub fn trivial_group(&self) -> Option<usize> {
        self.groups.iter().position(|g| g.is_trivial())
    }

    /// Index of `beta ∘ alpha`, when it is in the catalog.
    pub fn composite(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.composite.get(&(beta, alpha)).copied()
    }

    /// Trivial representations of every dimension up to the cap.
    pub fn require_trivial_reps(&self, g: usize) -> Result<()> {
        for n in 0..=self.dim_cap {
            if self.trivial_index(g, n).is_none() {
                return Err(Error::CatalogIncomplete(format!(
                    "group {} lacks the trivial representation of dimension {n}",
                    self.groups[g].name()
                )));
            }
        }
        Ok(())
    }

    /// Everything a family of functors over all groups needs: the trivial
    /// group with a hom to it from every group, identity homs, composites,
    /// restrictions and trivial representations.
    pub fn require_global(&self) -> Result<()> {
        let incomplete = |m: String| Err(Error::CatalogIncomplete(m));
        if self.trivial_group().is_none() {
            return incomplete("no trivial group".into());
        }
        for g in 0..self.groups.len() {
            self.require_trivial_reps(g)?;
            if self.identity_hom[g].is_none() {
                return incomplete(format!("no identity hom on {}", self.groups[g].name()));
            }
            if self.to_trivial[g].is_none() {
                return incomplete(format!("no hom from {} to the trivial group", self.groups[g].name()));
            }
        }
        for (b, beta) in self.homs.iter().enumerate() {
            for (a, alpha) in self.homs.iter().enumerate() {
                if alpha.target == beta.source && self.composite(b, a).is_none() {
                    return incomplete(format!("composite {} . {} missing", beta.hom.name(), alpha.hom.name()));
                }
            }
        }
        for (h, hom) in self.homs.iter().enumerate() {
            if let Some(v) = self.restrict[h].iter().position(Option::is_none) {
                return incomplete(format!(
                    "restriction of {} along {} missing",
                    self.reps[hom.target][v].label(),
                    hom.hom.name()
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_catalog_shape() {
        let cat = SiteCatalog::standard();
        let names: Vec<&str> = cat.groups().iter().map(|g| g.name()).collect();
        assert_eq!(names, ["e", "C2", "C3", "C2xC2", "S3"]);
        assert_eq!(cat.homs().len(), 76);
        let dims = |g: usize| -> Vec<usize> {
            (0..=3).map(|n| cat.reps(g).iter().filter(|r| r.dim() == n).count()).collect()
        };
        // counts computed independently by a brute-force closure script
        assert_eq!(dims(0), [1, 1, 1, 1]);
        assert_eq!(dims(1), [1, 2, 5, 13]);
        assert_eq!(dims(2), [1, 1, 1, 3]);
        assert_eq!(dims(3), [1, 4, 19, 91]);
        assert_eq!(dims(4), [1, 2, 5, 19]);
        cat.require_global().unwrap();
    }

    #[test]
    fn seeds_keep_labels() {
        let cat = SiteCatalog::standard();
        let c2 = cat.group_index("C2").unwrap();
        let sign = cat.rep_index(c2, "sign").unwrap();
        assert_eq!(cat.rep(c2, sign).dim(), 1);
        assert_eq!(cat.trivial_index(c2, 0), Some(0));
        let e = cat.trivial_group().unwrap();
        let incl = cat.homs().iter().position(|h| h.source == e && h.target == c2).unwrap();
        assert_eq!(cat.restrict_index(incl, sign), cat.trivial_index(e, 1));
    }

    #[test]
    fn missing_trivial_rep_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let err = SiteCatalog::new(1, vec![g.clone()], vec![], vec![Rep::trivial(g, 0)]).unwrap_err();
        assert!(matches!(err, Error::CatalogIncomplete(_)));
    }
}
