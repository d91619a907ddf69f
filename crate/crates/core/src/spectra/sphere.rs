use std::sync::Arc;

use serde_json::json;

use crate::algebra::SignedPerm;
use crate::error::{Error, Result};
use crate::functors::{GlobalSpace, IGSpaceFin};
use crate::gspaces::{smash, PointedGSet, PointedMap, SmashLayout};
use crate::report::{Check, Report};
use crate::site::{fixed_subspace_dim, Rep, SiteCatalog};

/// `{+,-}ⁿ` written coordinate by coordinate; `()` in dimension zero.
pub fn sign_vector_label(dim: usize, v: usize) -> String {
    if dim == 0 {
        return "()".to_string();
    }
    (0..dim).map(|i| if (v >> (dim - 1 - i)) & 1 == 1 { '-' } else { '+' }).collect()
}

/// The sign-vector sphere: a basepoint and the `2ⁿ` sign vectors, with the
/// group acting through `ρ`. Vector `v` sits at index `v + 1`.
pub fn sphere(rep: &Rep) -> PointedGSet {
    let n = rep.dim();
    let mut labels = vec!["*".to_string()];
    labels.extend((0..1usize << n).map(|v| sign_vector_label(n, v)));
    let group = rep.group();
    let mut action = Vec::with_capacity(group.order() * labels.len());
    for g in group.elements() {
        action.push(0);
        let rho = rep.rho(g);
        action.extend((0..1usize << n).map(|v| 1 + rho.act_on_sign_vector(v) as u32));
    }
    PointedGSet::new(group.clone(), labels, 0, action).expect("signed permutations act on sign vectors")
}

/// The action of an isometry on sign vectors.
pub fn sphere_map(f: &SignedPerm) -> PointedMap {
    let n = f.dim();
    PointedMap::from_images(std::iter::once(0).chain((0..1usize << n).map(|v| 1 + f.act_on_sign_vector(v))).collect())
}

pub fn sphere_functor(catalog: &Arc<SiteCatalog>, g: usize) -> Result<IGSpaceFin> {
    let reps = catalog.reps(g);
    let values = reps.iter().map(sphere).collect();
    IGSpaceFin::from_fn(catalog.clone(), g, values, |v, _, f| {
        sphere_map(&SignedPerm::unrank(reps[v].dim(), f)).raw().to_vec()
    })
}

/// The sphere over every group; restricting a sphere gives the sphere of the
/// restricted representation on the nose, so every comparison map is an
/// identity table.
pub fn global_sphere(catalog: &Arc<SiteCatalog>) -> Result<GlobalSpace> {
    catalog.require_global()?;
    let components = (0..catalog.groups().len()).map(|g| sphere_functor(catalog, g)).collect::<Result<_>>()?;
    GlobalSpace::with_identity_restrictions(catalog.clone(), components)
}

/// `S(V) ∧ S(W) → S(V⊕W)` by concatenating sign vectors.
pub fn sphere_smash_iso(v: &Rep, w: &Rep, dim_cap: usize) -> Result<PointedMap> {
    let (n, m) = (v.dim(), w.dim());
    if n + m > dim_cap {
        return Err(Error::DimCapExceeded { dim: n + m, cap: dim_cap });
    }
    let layout = SmashLayout::from_shapes(1 + (1 << n), 0, 1 + (1 << m), 0);
    Ok(PointedMap::from_images(
        (0..layout.len())
            .map(|p| match layout.split(p) {
                None => 0,
                Some((a, b)) => 1 + (((a - 1) << m) | (b - 1)),
            })
            .collect(),
    ))
}

/// `V ↦ X₀ ∧ S(V)` over one group, with `X₀` carrying the trivial action.
pub fn suspension_functor(catalog: &Arc<SiteCatalog>, g: usize, x0: &PointedGSet) -> Result<IGSpaceFin> {
    let group = catalog.group(g);
    let x = PointedGSet::trivial(group.clone(), x0.labels().to_vec(), x0.basepoint())?;
    let reps = catalog.reps(g);
    let spheres: Vec<PointedGSet> = reps.iter().map(sphere).collect();
    let values = spheres.iter().map(|s| smash(&x, s)).collect::<Result<Vec<_>>>()?;
    let layouts: Vec<SmashLayout> = spheres.iter().map(|s| SmashLayout::new(&x, s)).collect();
    let identity = PointedMap::identity(x.len());
    IGSpaceFin::from_fn(catalog.clone(), g, values, |v, w, f| {
        let s = sphere_map(&SignedPerm::unrank(reps[v].dim(), f));
        layouts[v].map(&layouts[w], &identity, &s).raw().to_vec()
    })
}

/// The suspension `V ↦ X₀ ∧ S(V)` of a pointed set over every group.
pub fn suspension(catalog: &Arc<SiteCatalog>, x0: &PointedGSet) -> Result<GlobalSpace> {
    catalog.require_global()?;
    let components =
        (0..catalog.groups().len()).map(|g| suspension_functor(catalog, g, x0)).collect::<Result<_>>()?;
    GlobalSpace::with_identity_restrictions(catalog.clone(), components)
}

/// `V ↦ X₀` with identity maps over every group.
pub fn constant(catalog: &Arc<SiteCatalog>, x0: &PointedGSet) -> Result<GlobalSpace> {
    catalog.require_global()?;
    let components = (0..catalog.groups().len())
        .map(|g| {
            let x = PointedGSet::trivial(catalog.group(g).clone(), x0.labels().to_vec(), x0.basepoint())?;
            let values = vec![x; catalog.reps(g).len()];
            IGSpaceFin::from_fn(catalog.clone(), g, values, |_, _, _| (0..x0.len() as u32).collect())
        })
        .collect::<Result<_>>()?;
    GlobalSpace::with_identity_restrictions(catalog.clone(), components)
}

/// A pointed set with `len` points, the first being the basepoint.
pub fn pointed_set(len: usize) -> PointedGSet {
    let e = Arc::new(crate::algebra::FiniteGroup::trivial());
    let labels = std::iter::once("*".to_string()).chain((1..len).map(|i| format!("x{i}"))).collect();
    PointedGSet::trivial(e, labels, 0).expect("distinct labels")
}

/// For every representation and cyclic subgroup `⟨g⟩`: the number of
/// non-base sign vectors fixed by `g` is `0` when `ρ(g)` has a cycle with
/// an odd number of sign changes and `2^dim(V^g)` otherwise.
pub fn check_sphere_fixed_points(catalog: &SiteCatalog) -> Report {
    let mut check = Check::new("sphere.fixed-points");
    for (gi, group) in catalog.groups().iter().enumerate() {
        let subgroups = group.cyclic_subgroups();
        for rep in catalog.reps(gi) {
            let s = sphere(rep);
            for sub in &subgroups {
                let generator = sub.generator;
                let counted = s.non_base().filter(|&p| s.act(generator, p) == p).count();
                let expected = if rep.rho(generator).has_negative_cycle() {
                    Ok(0)
                } else {
                    fixed_subspace_dim(rep, &sub.elements).map(|d| 1usize << d)
                };
                check.test(expected.as_ref().is_ok_and(|&e| e == counted), || {
                    json!({
                        "group": group.name(), "rep": rep.label(), "generator": group.label(generator),
                        "enumerated": counted, "expected": expected.as_ref().map_err(|e| e.to_string()).ok(),
                    })
                });
            }
        }
    }
    let mut report = Report::new();
    report.push(check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{check_global, check_igspace};
    use crate::kan::{extend_global, ISpaceFin};

    #[test]
    fn sphere_labels_and_action() {
        let catalog = SiteCatalog::standard_with_cap(2);
        let g = catalog.group_index("C2").unwrap();
        let v = catalog.trivial_index(g, 2).unwrap();
        let s = sphere(catalog.rep(g, v));
        assert_eq!(s.labels(), ["*", "++", "+-", "-+", "--"]);
        assert!(s.is_trivial_action());
        let zero = sphere(catalog.rep(g, catalog.trivial_index(g, 0).unwrap()));
        assert_eq!(zero.labels(), ["*", "()"]);
    }

    #[test]
    fn sphere_is_a_global_space() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let s = global_sphere(&catalog).unwrap();
        let report = check_global(&s);
        assert!(report.all_passed(), "{}", report.to_text());
        for g in 0..catalog.groups().len() {
            assert!(check_igspace(s.component(g)).all_passed());
        }
    }

    #[test]
    fn concatenation_is_a_bijection() {
        let catalog = SiteCatalog::standard_with_cap(3);
        let g = catalog.group_index("e").unwrap();
        let (v, w) = (catalog.rep(g, catalog.trivial_index(g, 1).unwrap()), catalog.rep(g, catalog.trivial_index(g, 2).unwrap()));
        let m = sphere_smash_iso(v, w, 3).unwrap();
        assert!(m.is_bijection(9));
        assert!(matches!(sphere_smash_iso(w, w, 3), Err(Error::DimCapExceeded { dim: 4, cap: 3 })));
    }

    #[test]
    fn suspension_of_the_constant_extends() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let x0 = pointed_set(3);
        let sigma = suspension(&catalog, &x0).unwrap();
        assert!(check_global(&sigma).all_passed());
        let c = constant(&catalog, &x0).unwrap();
        assert!(check_global(&c).all_passed());
        let e = catalog.trivial_group().unwrap();
        let x = ISpaceFin::constant(catalog.group(e).clone(), 2, &x0).unwrap();
        let ext = extend_global(&x, &catalog).unwrap();
        assert!(check_global(&ext.space).all_passed());
    }

    #[test]
    fn fixed_point_counts_match_the_fixed_subspace() {
        let catalog = SiteCatalog::standard_with_cap(3);
        let report = check_sphere_fixed_points(&catalog);
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.checks[0].checked > 100);
    }
}
