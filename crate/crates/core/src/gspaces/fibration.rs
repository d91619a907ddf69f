use std::sync::Arc;

use serde_json::json;

use crate::algebra::{same_group, FiniteGroup, GroupHom};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::site::SiteCatalog;

use super::{map_space, restrict_gset, PointedGSet};

#[derive(Debug, Clone)]
pub struct NamedGSet {
    pub name: String,
    pub set: PointedGSet,
}

/// Groups, homomorphisms and a list of pointed G-sets over them.
#[derive(Debug, Clone)]
pub struct GSetCatalog {
    pub groups: Vec<Arc<FiniteGroup>>,
    pub homs: Vec<GroupHom>,
    pub sets: Vec<NamedGSet>,
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl GSetCatalog {
    pub fn new(groups: Vec<Arc<FiniteGroup>>, homs: Vec<GroupHom>, sets: Vec<NamedGSet>) -> Result<Self> {
        let known = |g: &Arc<FiniteGroup>| groups.iter().any(|h| same_group(h, g));
        for h in &homs {
            if !known(h.source()) || !known(h.target()) {
                return Err(Error::InvalidCatalog(format!("hom {} connects groups outside the catalog", h.name())));
            }
        }
        for (i, s) in sets.iter().enumerate() {
            if !known(s.set.group()) {
                return Err(Error::InvalidCatalog(format!("set {} lives over a group outside the catalog", s.name)));
            }
            if sets[..i].iter().any(|t| t.name == s.name && same_group(t.set.group(), s.set.group())) {
                return Err(Error::InvalidCatalog(format!("duplicate set name {}", s.name)));
            }
        }
        Ok(Self { groups, homs, sets })
    }

    /// Small pointed G-sets (at most five points) over the standard groups.
    pub fn standard() -> Self {
        let groups = SiteCatalog::standard_groups();
        let homs = SiteCatalog::all_homs(&groups);
        let named = |name: &str, set: PointedGSet| NamedGSet { name: name.to_string(), set };
        let mut sets = Vec::new();
        for g in &groups {
            sets.push(named("s0", PointedGSet::s0(g.clone())));
        }
        let [e, c2, c3, v4, s3] = [0, 1, 2, 3, 4].map(|i| groups[i].clone());
        sets.push(named("three", PointedGSet::trivial(e, labels(&["*", "a", "b"]), 0).expect("valid")));
        sets.push(named(
            "swap",
            PointedGSet::from_generators(c2.clone(), labels(&["*", "a", "b"]), 0, &[(1, vec![0, 2, 1])]).expect("valid"),
        ));
        sets.push(named(
            "swap-fixed",
            PointedGSet::from_generators(c2, labels(&["*", "a", "b", "c"]), 0, &[(1, vec![0, 2, 1, 3])]).expect("valid"),
        ));
        sets.push(named(
            "rotation",
            PointedGSet::from_generators(c3, labels(&["*", "a", "b", "c"]), 0, &[(1, vec![0, 2, 3, 1])]).expect("valid"),
        ));
        // (1,0) swaps a and b; (0,1) acts trivially
        sets.push(named(
            "left-swap",
            PointedGSet::from_generators(v4.clone(), labels(&["*", "a", "b"]), 0, &[(2, vec![0, 2, 1]), (1, vec![0, 1, 2])])
                .expect("valid"),
        ));
        let regular: Vec<(usize, Vec<usize>)> =
            (0..4).map(|g| (g, std::iter::once(0).chain((0..4).map(|x| 1 + v4.mul(g, x))).collect())).collect();
        sets.push(named(
            "regular",
            PointedGSet::from_generators(v4, labels(&["*", "r0", "r1", "r2", "r3"]), 0, &regular).expect("valid"),
        ));
        let letters: Vec<(usize, Vec<usize>)> = s3
            .labels()
            .iter()
            .enumerate()
            .map(|(g, l)| {
                let p: Vec<usize> = l.chars().map(|c| c.to_digit(10).expect("digit") as usize).collect();
                (g, std::iter::once(0).chain(p.iter().map(|&i| i + 1)).collect())
            })
            .collect();
        sets.push(named(
            "letters",
            PointedGSet::from_generators(s3, labels(&["*", "0", "1", "2"]), 0, &letters).expect("valid"),
        ));
        Self::new(groups, homs, sets).expect("standard sets are valid")
    }
}

/// Sizes above which a set is not used as a target or probe.
const MAX_SIZE: usize = 5;
/// Probes used for naturality squares over all based maps between them.
const MAX_NATURALITY_PROBE: usize = 3;

/// `F(Z, α*X) = (1 × α)* F(Z, X)` as `K × H` tables for every hom
/// `α: H → G`, every `X` over `G` and every probe `Z`, and naturality of this
/// identification in `Z`.
pub fn check_top_fibration(catalog: &GSetCatalog) -> Report {
    let mut report = Report::new();
    let mut tables = Check::new("top-fibration.map-space");
    let mut natural = Check::new("top-fibration.naturality");
    let small: Vec<&NamedGSet> = catalog.sets.iter().filter(|s| s.set.len() <= MAX_SIZE).collect();
    for alpha in &catalog.homs {
        let source = alpha.source();
        for x in small.iter().filter(|x| same_group(x.set.group(), alpha.target())) {
            let pulled = restrict_gset(alpha, &x.set).expect("extent");
            for z in &small {
                let left = map_space(&z.set, &pulled);
                let right = map_space(&z.set, &x.set);
                let mut bad = None;
                if left.len() != right.len() {
                    bad = Some((0, 0, 0));
                }
                'scan: for k in z.set.group().elements() {
                    for h in source.elements() {
                        let ah = alpha.apply(h);
                        for f in 0..left.len().min(right.len()) {
                            if left.act(k, h, f) != right.act(k, ah, f) {
                                bad = Some((k, h, f));
                                break 'scan;
                            }
                        }
                    }
                }
                tables.test(bad.is_none(), || {
                    let (k, h, f) = bad.unwrap_or_default();
                    json!({
                        "hom": alpha.name(), "set": x.name, "probe": z.name,
                        "probe_group": z.set.group().name(), "k": k, "h": source.label(h), "map": f,
                    })
                });
            }
            // Precomposition with any based u: Z → Z' must agree on both sides
            // and commute with the actions whenever u is equivariant.
            for z in small.iter().filter(|z| z.set.len() <= MAX_NATURALITY_PROBE) {
                for z2 in small
                    .iter()
                    .filter(|z2| z2.set.len() <= MAX_NATURALITY_PROBE && same_group(z2.set.group(), z.set.group()))
                {
                    let (l_from, l_to) = (map_space(&z2.set, &pulled), map_space(&z.set, &pulled));
                    let (r_from, r_to) = (map_space(&z2.set, &x.set), map_space(&z.set, &x.set));
                    let probes = map_space(&z.set, &z2.set);
                    for u_idx in 0..probes.len() {
                        let u = probes.element(u_idx);
                        let equivariant = u.is_equivariant(&z.set, &z2.set);
                        let pre_left: Vec<usize> =
                            (0..l_from.len()).map(|f| l_to.encode(&compose_images(&l_from.decode(f), &u.images()))).collect();
                        let pre_right: Vec<usize> =
                            (0..r_from.len()).map(|f| r_to.encode(&compose_images(&r_from.decode(f), &u.images()))).collect();
                        let mut ok = pre_left == pre_right;
                        if ok && equivariant {
                            'eq: for k in z.set.group().elements() {
                                for h in source.elements() {
                                    let ah = alpha.apply(h);
                                    for f in 0..l_from.len() {
                                        if pre_left[l_from.act(k, h, f)] != l_to.act(k, h, pre_left[f])
                                            || pre_right[r_from.act(k, ah, f)] != r_to.act(k, ah, pre_right[f])
                                        {
                                            ok = false;
                                            break 'eq;
                                        }
                                    }
                                }
                            }
                        }
                        natural.test(ok, || {
                            json!({ "hom": alpha.name(), "set": x.name, "from": z2.name, "to": z.name, "probe_map": u.images() })
                        });
                    }
                }
            }
        }
    }
    report.push(tables);
    report.push(natural);
    report
}

fn compose_images(f: &[usize], u: &[usize]) -> Vec<usize> {
    u.iter().map(|&p| f[p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_homs;

    #[test]
    fn swap_set_along_inclusion() {
        let cat = GSetCatalog::standard();
        let (e, c2) = (cat.groups[0].clone(), cat.groups[1].clone());
        let alpha = &enumerate_homs(&e, &c2)[0];
        let x = &cat.sets.iter().find(|s| s.name == "swap").unwrap().set;
        let z = &cat.sets.iter().find(|s| s.name == "three").unwrap().set;
        let left = map_space(z, &restrict_gset(alpha, x).unwrap());
        let right = map_space(z, x);
        assert_eq!(left.len(), 9);
        assert!((0..9).all(|f| left.act(0, 0, f) == f));
        assert!((0..9).all(|f| right.act(0, 0, f) == f));
        // C2 conjugation on the right acts non-trivially
        assert!((0..9).any(|f| right.act(0, 1, f) != f));
    }

    #[test]
    fn identity_hom_sweep_passes() {
        let mut cat = GSetCatalog::standard();
        cat.homs.retain(|h| h.is_identity());
        assert!(check_top_fibration(&cat).all_passed());
    }
}
