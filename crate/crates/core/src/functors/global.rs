use std::sync::Arc;

use serde_json::json;

use crate::algebra::SignedPerm;
use crate::error::{Error, Result};
use crate::gspaces::PointedMap;
use crate::report::{Check, Report};
use crate::site::SiteCatalog;

use super::igspace::{check_igspace, check_igspace_map, perm_label, IGSpaceFin};

/// One functor per catalog group, tied together by restriction isomorphisms
/// `α*(A_H(V)) → A_G(α*V)` for every hom `α: G → H` and every `V` over `H`.
#[derive(Debug, Clone)]
pub struct GlobalSpace {
    catalog: Arc<SiteCatalog>,
    components: Vec<IGSpaceFin>,
    restriction: Vec<Vec<PointedMap>>,
}

impl GlobalSpace {
    /// `restriction[h][v]` is the comparison map for hom `h` at
    /// representation `v` of the hom's target.
    pub fn new(catalog: Arc<SiteCatalog>, components: Vec<IGSpaceFin>, restriction: Vec<Vec<PointedMap>>) -> Result<Self> {
        if components.len() != catalog.groups().len() {
            return Err(Error::CoverageGap(format!(
                "{} components for {} groups",
                components.len(),
                catalog.groups().len()
            )));
        }
        for (g, c) in components.iter().enumerate() {
            if c.group_index() != g || !Arc::ptr_eq(c.catalog(), &catalog) {
                return Err(Error::InvalidFunctor(format!("component {g} is not over group {}", catalog.group(g).name())));
            }
        }
        if restriction.len() != catalog.homs().len() {
            return Err(Error::CoverageGap(format!(
                "restriction data for {} of {} homs",
                restriction.len(),
                catalog.homs().len()
            )));
        }
        for (h, hom) in catalog.homs().iter().enumerate() {
            let maps = &restriction[h];
            if maps.len() != catalog.reps(hom.target).len() {
                return Err(Error::CoverageGap(format!("restriction data for {} is incomplete", hom.hom.name())));
            }
            for (v, m) in maps.iter().enumerate() {
                let w = catalog.restrict_index(h, v).ok_or_else(|| {
                    Error::CatalogIncomplete(format!(
                        "restriction of {} along {} is not in the catalog",
                        catalog.rep(hom.target, v).label(),
                        hom.hom.name()
                    ))
                })?;
                let (src, tgt) = (components[hom.target].value(v), components[hom.source].value(w));
                PointedMap::new(src, tgt, m.images()).map_err(|e| {
                    Error::InvalidFunctor(format!("restriction map for {} at {}: {e}", hom.hom.name(), catalog.rep(hom.target, v).label()))
                })?;
            }
        }
        Ok(Self { catalog, components, restriction })
    }

    /// Restriction isomorphisms that are identity tables. Fails unless every
    /// restricted value has exactly the points of the original.
    pub fn with_identity_restrictions(catalog: Arc<SiteCatalog>, components: Vec<IGSpaceFin>) -> Result<Self> {
        let mut restriction = Vec::with_capacity(catalog.homs().len());
        for hom in catalog.homs() {
            let maps = (0..catalog.reps(hom.target).len())
                .map(|v| PointedMap::identity(components[hom.target].value(v).len()))
                .collect();
            restriction.push(maps);
        }
        Self::new(catalog, components, restriction)
    }

    pub fn catalog(&self) -> &Arc<SiteCatalog> {
        &self.catalog
    }

    pub fn components(&self) -> &[IGSpaceFin] {
        &self.components
    }

    pub fn component(&self, g: usize) -> &IGSpaceFin {
        &self.components[g]
    }

    pub fn component_mut(&mut self, g: usize) -> &mut IGSpaceFin {
        &mut self.components[g]
    }

    pub fn restriction(&self, h: usize, v: usize) -> &PointedMap {
        &self.restriction[h][v]
    }

    /// Swaps the images of points `i` and `j` in one restriction map.
    pub fn swap_restriction_images(&mut self, h: usize, v: usize, i: usize, j: usize) -> Result<()> {
        let m = self
            .restriction
            .get(h)
            .and_then(|maps| maps.get(v))
            .ok_or_else(|| Error::InvalidFunctor("restriction position out of range".into()))?;
        if i >= m.len() || j >= m.len() {
            return Err(Error::InvalidFunctor("swap position out of range".into()));
        }
        self.restriction[h][v] = m.swapped(i, j);
        Ok(())
    }
}

/// Every component is a G-continuous functor; the restriction maps are
/// equivariant bijections, natural, unital and satisfy the cocycle identity;
/// values at trivial representations carry the trivial action.
pub fn check_global(a: &GlobalSpace) -> Report {
    let mut report = Report::new();
    let catalog = a.catalog();
    for (g, c) in a.components().iter().enumerate() {
        report.merge(&format!("component.{}", catalog.group(g).name()), check_igspace(c));
    }

    let mut bijection = Check::new("restriction-iso.bijection");
    let mut equivariance = Check::new("restriction-iso.equivariance");
    let mut naturality = Check::new("restriction-iso.naturality");
    let mut unit = Check::new("restriction-iso.unit");
    for (h, hom) in catalog.homs().iter().enumerate() {
        let (upper, lower) = (a.component(hom.target), a.component(hom.source));
        let source_group = catalog.group(hom.source);
        let reps = catalog.reps(hom.target);
        for (v, rep) in reps.iter().enumerate() {
            let w = catalog.restrict_index(h, v).expect("validated");
            let phi = a.restriction(h, v);
            let (x, y) = (upper.value(v), lower.value(w));
            let base = || json!({ "hom": hom.hom.name(), "rep": rep.label() });
            bijection.test(phi.is_bijection(y.len()), base);
            let mut bad = None;
            'eq: for g in source_group.elements() {
                let ag = hom.hom.apply(g);
                for p in 0..x.len() {
                    if phi.apply(x.act(ag, p)) != y.act(g, phi.apply(p)) {
                        bad = Some((g, p));
                        break 'eq;
                    }
                }
            }
            equivariance.test(bad.is_none(), || {
                let (g, p) = bad.unwrap_or_default();
                json!({ "hom": hom.hom.name(), "rep": rep.label(), "g": source_group.label(g), "point": x.label(p) })
            });
            if hom.hom.is_identity() {
                unit.test(phi.is_identity(), base);
            }
            for (v2, rep2) in reps.iter().enumerate().filter(|(_, r)| r.dim() == rep.dim()) {
                let w2 = catalog.restrict_index(h, v2).expect("validated");
                let phi2 = a.restriction(h, v2);
                for f in 0..SignedPerm::count(rep.dim()) {
                    let (up, low) = (upper.morphism(v, v2, f), lower.morphism(w, w2, f));
                    let bad = (0..x.len()).find(|&p| phi2.apply(up[p] as usize) != low[phi.apply(p)] as usize);
                    naturality.test(bad.is_none(), || {
                        json!({
                            "hom": hom.hom.name(), "source": rep.label(), "target": rep2.label(),
                            "isometry": perm_label(rep.dim(), f), "point": x.label(bad.unwrap_or(0)),
                        })
                    });
                }
            }
        }
    }
    report.push(bijection);
    report.push(equivariance);
    report.push(naturality);
    report.push(unit);

    let mut cocycle = Check::new("restriction-iso.cocycle");
    for (b, beta) in catalog.homs().iter().enumerate() {
        for (al, alpha) in catalog.homs().iter().enumerate().filter(|(_, h)| h.target == beta.source) {
            let Some(c) = catalog.composite(b, al) else {
                cocycle.test(false, || json!({ "outer": beta.hom.name(), "inner": alpha.hom.name(), "missing": "composite" }));
                continue;
            };
            for (v, rep) in catalog.reps(beta.target).iter().enumerate() {
                let mid = catalog.restrict_index(b, v).expect("validated");
                let two_step = a.restriction(al, mid).after(a.restriction(b, v));
                let ok = catalog.restrict_index(al, mid) == catalog.restrict_index(c, v) && two_step == *a.restriction(c, v);
                cocycle.test(ok, || json!({ "outer": beta.hom.name(), "inner": alpha.hom.name(), "rep": rep.label() }));
            }
        }
    }
    report.push(cocycle);

    let mut trivial = Check::new("trivial-rep-action");
    for (g, group) in catalog.groups().iter().enumerate() {
        for n in 0..=catalog.dim_cap() {
            let Some(t) = catalog.trivial_index(g, n) else { continue };
            let ok = a.component(g).value(t).is_trivial_action();
            trivial.test(ok, || json!({ "group": group.name(), "dim": n }));
        }
    }
    report.push(trivial);
    report
}

/// A morphism of global spaces: one family of maps per group.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalMap {
    pub components: Vec<Vec<PointedMap>>,
}

impl GlobalMap {
    pub fn identity(a: &GlobalSpace) -> Self {
        let components = a
            .components()
            .iter()
            .map(|c| c.values().iter().map(|x| PointedMap::identity(x.len())).collect())
            .collect();
        Self { components }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GlobalMap) -> GlobalMap {
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(outer, inner)| outer.iter().zip(inner).map(|(o, i)| o.after(i)).collect())
            .collect();
        GlobalMap { components }
    }

    pub fn swap_images(&mut self, g: usize, v: usize, i: usize, j: usize) -> Result<()> {
        let m = self
            .components
            .get(g)
            .and_then(|c| c.get(v))
            .ok_or_else(|| Error::InvalidMap("component position out of range".into()))?;
        if i >= m.len() || j >= m.len() {
            return Err(Error::InvalidMap("swap position out of range".into()));
        }
        self.components[g][v] = m.swapped(i, j);
        Ok(())
    }
}

/// Equivariance and naturality of every component, and compatibility with
/// the restriction isomorphisms of source and target.
pub fn check_global_map(f: &GlobalMap, a: &GlobalSpace, b: &GlobalSpace) -> Report {
    let mut report = Report::new();
    let catalog = a.catalog();
    if f.components.len() != catalog.groups().len() || !Arc::ptr_eq(catalog, b.catalog()) {
        let mut shape = Check::new("global-map.shape");
        shape.test(false, || json!({ "components": f.components.len(), "groups": catalog.groups().len() }));
        report.push(shape);
        return report;
    }
    let mut equivariance = Check::new("global-map.equivariance");
    let mut naturality = Check::new("global-map.naturality");
    for (g, maps) in f.components.iter().enumerate() {
        let part = check_igspace_map("component", maps, a.component(g), b.component(g));
        for e in part.checks {
            if e.name.ends_with("equivariance") {
                equivariance.absorb(e);
            } else {
                naturality.absorb(e);
            }
        }
    }
    report.push(equivariance);
    report.push(naturality);

    let mut square = Check::new("global-map.restriction-square");
    for (h, hom) in catalog.homs().iter().enumerate() {
        for (v, rep) in catalog.reps(hom.target).iter().enumerate() {
            let w = catalog.restrict_index(h, v).expect("validated");
            let (Some(fh), Some(fg)) = (f.components[hom.target].get(v), f.components[hom.source].get(w)) else {
                continue;
            };
            let left = b.restriction(h, v).after(fh);
            let right = fg.after(a.restriction(h, v));
            square.test(left == right, || json!({ "hom": hom.hom.name(), "rep": rep.label() }));
        }
    }
    report.push(square);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::igspace::tests::{constant, orientation};
    use crate::gspaces::PointedGSet;
    use crate::report::Status;

    fn catalog() -> Arc<SiteCatalog> {
        Arc::new(SiteCatalog::standard_with_cap(2))
    }

    fn global_orientation(catalog: &Arc<SiteCatalog>) -> GlobalSpace {
        let components = (0..catalog.groups().len()).map(|g| orientation(catalog, g)).collect();
        GlobalSpace::with_identity_restrictions(catalog.clone(), components).unwrap()
    }

    #[test]
    fn constant_and_orientation_pass() {
        let catalog = catalog();
        let components = (0..catalog.groups().len())
            .map(|g| constant(&catalog, g, &PointedGSet::s0(catalog.group(g).clone())))
            .collect();
        let s0 = GlobalSpace::with_identity_restrictions(catalog.clone(), components).unwrap();
        assert!(check_global(&s0).all_passed());
        let a = global_orientation(&catalog);
        let report = check_global(&a);
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(check_global_map(&GlobalMap::identity(&a), &a, &a).all_passed());
    }

    #[test]
    fn non_equivariant_restriction_fails() {
        let catalog = catalog();
        let mut a = global_orientation(&catalog);
        let c2 = catalog.group_index("C2").unwrap();
        let h = catalog.identity_hom(c2).unwrap();
        let sign = catalog.rep_index(c2, "sign").unwrap();
        a.swap_restriction_images(h, sign, 2, 3).unwrap();
        let report = check_global(&a);
        let entry = report.entry("restriction-iso.equivariance").unwrap();
        assert_eq!(entry.status, Status::Fail);
        assert_eq!(entry.witness.as_ref().unwrap()["rep"], "sign");
    }

    #[test]
    fn non_equivariant_map_component_fails() {
        let catalog = catalog();
        let a = global_orientation(&catalog);
        let mut f = GlobalMap::identity(&a);
        let c2 = catalog.group_index("C2").unwrap();
        let sign = catalog.rep_index(c2, "sign").unwrap();
        f.swap_images(c2, sign, 2, 3).unwrap();
        let report = check_global_map(&f, &a, &a);
        assert_eq!(report.entry("global-map.equivariance").unwrap().status, Status::Fail);
        let g = f.after(&GlobalMap::identity(&a));
        assert_eq!(g, f);
    }
}
