use std::sync::Arc;

use serde_json::json;

use crate::algebra::hyperoctahedral;
use crate::error::{Error, Result};
use crate::functors::{check_global_map, check_igspace_map, perm_label, GlobalMap, GlobalSpace, IGSpaceFin};
use crate::gspaces::PointedMap;
use crate::report::{Check, Report};
use crate::site::SiteCatalog;

use super::extend::{extend, extend_global, extend_global_map, extend_map, Extension, GlobalExtension};
use super::ispace::{restrict_global, restrict_igspace, ISpaceFin, ISpaceMap};

/// A left inverse of `m` on its image; points outside the image go to the
/// preimage of `base`.
fn pseudo_inverse(m: &PointedMap, target_len: usize, base: usize) -> PointedMap {
    let mut inv = vec![usize::MAX; target_len];
    for p in (0..m.len()).rev() {
        if let Some(slot) = inv.get_mut(m.apply(p)) {
            *slot = p;
        }
    }
    let fallback = inv.get(base).copied().filter(|&p| p != usize::MAX).unwrap_or(0);
    PointedMap::from_images(inv.into_iter().map(|p| if p == usize::MAX { fallback } else { p }).collect())
}

/// `ε[s, x] = A(s)(φ(x))` and `ν(a) = [i, φ⁻¹(A(i⁻¹)(a))]` at every
/// representation of one group, where `φ` compares the restricted values with
/// `A` at trivial representations and `i` is the identity matrix.
fn counit_components(a: &IGSpaceFin, ext: &Extension, phi: &[PointedMap]) -> Result<(Vec<PointedMap>, Vec<PointedMap>)> {
    let catalog = a.catalog();
    let g = a.group_index();
    let trivial: Vec<usize> = (0..=catalog.dim_cap())
        .map(|n| catalog.trivial_index(g, n).ok_or_else(|| Error::CatalogIncomplete(format!("no trivial rep of dim {n}"))))
        .collect::<Result<_>>()?;
    let inverses: Vec<PointedMap> = phi
        .iter()
        .enumerate()
        .map(|(n, m)| pseudo_inverse(m, a.value(trivial[n]).len(), a.value(trivial[n]).basepoint()))
        .collect();
    let mut epsilon = Vec::with_capacity(a.reps().len());
    let mut nu = Vec::with_capacity(a.reps().len());
    for (v, rep) in a.reps().iter().enumerate() {
        let n = rep.dim();
        let r = trivial[n];
        let k = &ext.classes[v];
        epsilon.push(PointedMap::from_images(
            k.classes().iter().map(|&(s, x)| a.morphism(r, v, s)[phi[n].apply(x)] as usize).collect(),
        ));
        let frame_back = a.morphism(v, r, 0);
        nu.push(PointedMap::from_images(
            (0..a.value(v).len()).map(|p| k.class_of(0, inverses[n].apply(frame_back[p] as usize))).collect(),
        ));
    }
    Ok((epsilon, nu))
}

/// The counit `ERA → A` of a global space with its inverse.
#[derive(Debug, Clone)]
pub struct Counit {
    pub extension: GlobalExtension,
    pub epsilon: GlobalMap,
    pub nu: GlobalMap,
}

fn iota_phi(a: &GlobalSpace, g: usize) -> Result<Vec<PointedMap>> {
    let catalog = a.catalog();
    let e = catalog.trivial_group().ok_or_else(|| Error::CatalogIncomplete("no trivial group".into()))?;
    let iota = catalog
        .to_trivial(g)
        .ok_or_else(|| Error::CatalogIncomplete(format!("no hom from {} to the trivial group", catalog.group(g).name())))?;
    (0..=catalog.dim_cap())
        .map(|n| {
            let r = catalog.trivial_index(e, n).ok_or_else(|| Error::CatalogIncomplete(format!("no trivial rep of dim {n}")))?;
            if catalog.restrict_index(iota, r) != catalog.trivial_index(g, n) {
                return Err(Error::CatalogIncomplete(format!("restriction of the trivial rep of dim {n} is not trivial")));
            }
            Ok(a.restriction(iota, r).clone())
        })
        .collect()
}

pub fn counit(a: &GlobalSpace) -> Result<Counit> {
    let catalog = a.catalog();
    let extension = extend_global(&restrict_global(a)?, catalog)?;
    let mut epsilon = Vec::with_capacity(catalog.groups().len());
    let mut nu = Vec::with_capacity(catalog.groups().len());
    for g in 0..catalog.groups().len() {
        let (e, n) = counit_components(a.component(g), &extension.extensions[g], &iota_phi(a, g)?)?;
        epsilon.push(e);
        nu.push(n);
    }
    Ok(Counit { extension, epsilon: GlobalMap { components: epsilon }, nu: GlobalMap { components: nu } })
}

/// The counit `ERA → A` of a functor over a single group with its inverse.
#[derive(Debug, Clone)]
pub struct SingleCounit {
    pub extension: Extension,
    pub epsilon: Vec<PointedMap>,
    pub nu: Vec<PointedMap>,
}

pub fn counit_single(a: &IGSpaceFin) -> Result<SingleCounit> {
    let restricted = restrict_igspace(a)?;
    let extension = extend(&restricted, a.catalog(), a.group_index())?;
    let identities: Vec<PointedMap> = restricted.values().iter().map(|x| PointedMap::identity(x.len())).collect();
    let (epsilon, nu) = counit_components(a, &extension, &identities)?;
    Ok(SingleCounit { extension, epsilon, nu })
}

/// `η(x) = [id, x]` into the extension evaluated at trivial representations.
pub fn unit(x: &ISpaceFin, ext: &Extension) -> Result<ISpaceMap> {
    let catalog = ext.functor.catalog();
    let g = ext.functor.group_index();
    let components = (0..=catalog.dim_cap())
        .map(|n| {
            let r = catalog.trivial_index(g, n).ok_or_else(|| Error::CatalogIncomplete(format!("no trivial rep of dim {n}")))?;
            Ok(PointedMap::from_images((0..x.value(n).len()).map(|p| ext.class_of(r, 0, p)).collect()))
        })
        .collect::<Result<_>>()?;
    Ok(ISpaceMap { components })
}

/// `ε ∘ ν = id` and `ν ∘ ε = id` on every value of one group.
fn check_inverse(check: &mut Check, a: &IGSpaceFin, ext: &Extension, epsilon: &[PointedMap], nu: &[PointedMap]) {
    let group = a.group().name();
    for (v, rep) in a.reps().iter().enumerate() {
        let (e, n) = (&epsilon[v], &nu[v]);
        let value = a.value(v);
        let bad = (0..value.len()).find(|&p| e.apply(n.apply(p)) != p);
        check.test(bad.is_none(), || json!({ "group": group, "rep": rep.label(), "point": value.label(bad.unwrap_or(0)) }));
        let classes = ext.classes[v].value();
        let bad = (0..classes.len()).find(|&c| n.apply(e.apply(c)) != c);
        check.test(bad.is_none(), || json!({ "group": group, "rep": rep.label(), "class": classes.label(bad.unwrap_or(0)) }));
    }
}

/// `X → R E X` is a natural bijection.
fn check_unit(report: &mut Report, x: &ISpaceFin, ext: &Extension) -> Result<ISpaceMap> {
    let eta = unit(x, ext)?;
    let catalog = ext.functor.catalog();
    let g = ext.functor.group_index();
    let mut bijection = Check::new("unit.bijection");
    let mut naturality = Check::new("unit.naturality");
    for n in 0..=x.dim_cap().min(catalog.dim_cap()) {
        let r = catalog.trivial_index(g, n).expect("checked by unit");
        let m = &eta.components[n];
        bijection.test(m.is_bijection(ext.functor.value(r).len()), || json!({ "dim": n }));
        for t in 0..hyperoctahedral(n).len() {
            let (xt, et) = (x.morphism(n, t), ext.functor.morphism(r, r, t));
            let bad = (0..x.value(n).len()).find(|&p| m.apply(xt[p] as usize) != et[m.apply(p)] as usize);
            naturality.test(bad.is_none(), || {
                json!({ "dim": n, "isometry": perm_label(n, t), "point": x.value(n).label(bad.unwrap_or(0)) })
            });
        }
    }
    report.push(bijection);
    report.push(naturality);
    Ok(eta)
}

/// `R(ε_A) ∘ η_{RA} = id` at every trivial representation.
fn check_restriction_triangle(check: &mut Check, a: &IGSpaceFin, ext: &Extension, epsilon: &[PointedMap], phi: &[PointedMap]) {
    let catalog = a.catalog();
    let g = a.group_index();
    for n in 0..=catalog.dim_cap() {
        let Some(r) = catalog.trivial_index(g, n) else { continue };
        let value = a.value(r);
        // η lands on [id, x]; ε then applies A(id) after φ.
        let bad = (0..phi[n].len()).find(|&p| epsilon[r].apply(ext.class_of(r, 0, p)) != phi[n].apply(p));
        check.test(bad.is_none(), || json!({ "group": a.group().name(), "dim": n, "point": value.label(bad.unwrap_or(0)) }));
    }
}

/// `ε_{EX} ∘ E(η_X) = id` at every representation of one group.
fn check_extension_triangle(check: &mut Check, ex: &Extension, e_eta: &[PointedMap], epsilon: &[PointedMap]) {
    for (v, k) in ex.classes.iter().enumerate() {
        let value = k.value();
        let bad = (0..value.len()).find(|&c| epsilon[v].apply(e_eta[v].apply(c)) != c);
        check.test(bad.is_none(), || {
            json!({ "group": value.group().name(), "rep": k.rep().label(), "class": value.label(bad.unwrap_or(0)) })
        });
    }
}

/// Counit bijectivity, ν as its two-sided inverse, ε as a map of global
/// spaces, and `R(ε_A) ∘ η_{RA} = id`.
fn counit_laws(a: &GlobalSpace, c: &Counit) -> Result<Report> {
    let mut report = Report::new();
    let mut inverse = Check::new("counit.inverse");
    let mut triangle = Check::new("triangle.restriction");
    for g in 0..a.catalog().groups().len() {
        let ext = &c.extension.extensions[g];
        check_inverse(&mut inverse, a.component(g), ext, &c.epsilon.components[g], &c.nu.components[g]);
        check_restriction_triangle(&mut triangle, a.component(g), ext, &c.epsilon.components[g], &iota_phi(a, g)?);
    }
    report.push(inverse);
    report.push(triangle);
    report.merge("counit", check_global_map(&c.epsilon, &c.extension.space, a));
    Ok(report)
}

/// Unit laws on `x` and `ε_{EX} ∘ E(η_X) = id`.
fn extension_laws(x: &ISpaceFin, ex: &GlobalExtension, c: &Counit) -> Result<Report> {
    let mut report = Report::new();
    let e = ex.space.catalog().trivial_group().expect("global catalog");
    let eta = check_unit(&mut report, x, &ex.extensions[e])?;
    let e_eta = extend_global_map(&eta, ex, &c.extension);
    let mut triangle = Check::new("triangle.extension");
    for g in 0..ex.space.catalog().groups().len() {
        check_extension_triangle(&mut triangle, &ex.extensions[g], &e_eta.components[g], &c.epsilon.components[g]);
    }
    report.push(triangle);
    Ok(report)
}

/// The adjunction between I-spaces and global spaces at a global space `A`:
/// counit and inverse, both triangle identities, and the unit at `R(A)`.
pub fn check_adjunction(a: &GlobalSpace) -> Result<Report> {
    let c = counit(a)?;
    let mut report = counit_laws(a, &c)?;
    let restricted = restrict_global(a)?;
    let c2 = counit(&c.extension.space)?;
    let laws = extension_laws(&restricted, &c.extension, &c2)?;
    report.merge("", laws);
    Ok(report)
}

/// The adjunction at an I-space `X`: unit at `X`, counit at `E(X)` and both
/// triangle identities.
pub fn check_ispace_adjunction(x: &ISpaceFin, catalog: &Arc<SiteCatalog>) -> Result<Report> {
    let ex = extend_global(x, catalog)?;
    let c = counit(&ex.space)?;
    let mut report = extension_laws(x, &ex, &c)?;
    report.merge("", counit_laws(&ex.space, &c)?);
    Ok(report)
}

/// The single-group adjunction at a functor `A` over one group.
pub fn check_adjunction_single(a: &IGSpaceFin) -> Result<Report> {
    let c = counit_single(a)?;
    let mut report = Report::new();
    let mut inverse = Check::new("counit.inverse");
    check_inverse(&mut inverse, a, &c.extension, &c.epsilon, &c.nu);
    report.push(inverse);
    let restricted = restrict_igspace(a)?;
    let identities: Vec<PointedMap> = restricted.values().iter().map(|x| PointedMap::identity(x.len())).collect();
    let mut triangle = Check::new("triangle.restriction");
    check_restriction_triangle(&mut triangle, a, &c.extension, &c.epsilon, &identities);
    report.push(triangle);
    report.merge("counit", check_igspace_map("single-map", &c.epsilon, &c.extension.functor, a));

    let eta = check_unit(&mut report, &restricted, &c.extension)?;
    let c2 = counit_single(&c.extension.functor)?;
    let e_eta = extend_map(&eta, &c.extension, &c2.extension);
    let mut triangle = Check::new("triangle.extension");
    check_extension_triangle(&mut triangle, &c.extension, &e_eta, &c2.epsilon);
    report.push(triangle);
    Ok(report)
}

/// `ε_B ∘ ERf = f ∘ ε_A` for a map of global spaces.
pub fn check_counit_naturality(f: &GlobalMap, a: &GlobalSpace, b: &GlobalSpace) -> Result<Report> {
    let (ca, cb) = (counit(a)?, counit(b)?);
    let catalog = a.catalog();
    let e = catalog.trivial_group().ok_or_else(|| Error::CatalogIncomplete("no trivial group".into()))?;
    let restricted = ISpaceMap {
        components: (0..=catalog.dim_cap())
            .map(|n| f.components[e][catalog.trivial_index(e, n).expect("global catalog")].clone())
            .collect(),
    };
    let erf = extend_global_map(&restricted, &ca.extension, &cb.extension);
    let mut check = Check::new("counit.natural-in-maps");
    for (g, group) in catalog.groups().iter().enumerate() {
        for (v, rep) in catalog.reps(g).iter().enumerate() {
            let left = cb.epsilon.components[g][v].after(&erf.components[g][v]);
            let right = f.components[g][v].after(&ca.epsilon.components[g][v]);
            check.test(left == right, || json!({ "group": group.name(), "rep": rep.label() }));
        }
    }
    let mut report = Report::new();
    report.push(check);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::kan::random_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_ispaces_satisfy_the_adjunction() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let e = Arc::new(FiniteGroup::trivial());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let (spaces, maps) = random_tower(&mut rng, &e, 2, 5, 2);
            let report = check_ispace_adjunction(&spaces[0], &catalog).unwrap();
            assert!(report.all_passed(), "{}", report.to_text());
            let (a, b) = (extend_global(&spaces[0], &catalog).unwrap(), extend_global(&spaces[1], &catalog).unwrap());
            let f = extend_global_map(&maps[0], &a, &b);
            assert!(check_global_map(&f, &a.space, &b.space).all_passed());
            assert!(check_counit_naturality(&f, &a.space, &b.space).unwrap().all_passed());
        }
    }

    #[test]
    fn single_group_adjunction_on_extension() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let e = Arc::new(FiniteGroup::trivial());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (spaces, _) = random_tower(&mut rng, &e, 2, 5, 1);
        let ext = extend_global(&spaces[0], &catalog).unwrap();
        for g in 0..catalog.groups().len() {
            let report = check_adjunction_single(ext.space.component(g)).unwrap();
            assert!(report.all_passed(), "{}", report.to_text());
        }
    }

    #[test]
    fn broken_restriction_breaks_the_counit_inverse() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let e = Arc::new(FiniteGroup::trivial());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = loop {
            let (mut s, _) = random_tower(&mut rng, &e, 2, 5, 1);
            let x = s.pop().unwrap();
            if x.value(1).len() >= 3 {
                break x;
            }
        };
        let mut a = extend_global(&x, &catalog).unwrap().space;
        let c2 = catalog.group_index("C2").unwrap();
        let iota = catalog.to_trivial(c2).unwrap();
        let r = catalog.trivial_index(catalog.trivial_group().unwrap(), 1).unwrap();
        a.swap_restriction_images(iota, r, 1, 2).unwrap();
        let report = check_adjunction(&a).unwrap();
        assert!(!report.all_passed());
    }
}
