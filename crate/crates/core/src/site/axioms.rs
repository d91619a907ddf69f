//! Exhaustive checks of the indexed-category and fibration axioms on a catalog.

use serde_json::json;

use crate::algebra::{hyperoctahedral, SignedPerm};
use crate::report::{Check, Report};

use super::catalog::SiteCatalog;
use super::hom::{diagonal_hom, hom_space};
use super::rep::{rep_direct_sum, rep_restrict, Rep};

/// Diagonal conjugation of `f` by `g`, read off the cached tables.
#[inline]
fn conj(v: &Rep, w: &Rep, g: usize, f: usize) -> usize {
    let b = hyperoctahedral(v.dim());
    b.mul(b.mul(w.rho_index(g), f), b.inv(v.rho_index(g)))
}

/// Restriction strictly functorial, fully faithful on hom-spaces with
/// compatible actions, and strictly compatible with direct sums.
pub fn check_site_axioms(catalog: &SiteCatalog) -> Report {
    let mut report = Report::new();
    let homs = catalog.homs();

    let mut identity = Check::new("site.restriction.identity");
    for (h, hom) in homs.iter().enumerate().filter(|(_, h)| h.hom.is_identity()) {
        for (v, rep) in catalog.reps(hom.target).iter().enumerate() {
            let restricted = rep_restrict(&hom.hom, rep).expect("extent");
            identity.test(restricted == *rep && catalog.restrict_index(h, v) == Some(v), || {
                json!({ "hom": hom.hom.name(), "rep": rep.label() })
            });
        }
    }
    report.push(identity);

    let mut composite = Check::new("site.restriction.composite");
    for (b, beta) in homs.iter().enumerate() {
        for (a, alpha) in homs.iter().enumerate() {
            if alpha.target != beta.source {
                continue;
            }
            let direct = beta.hom.after(&alpha.hom).expect("composable");
            for (v, rep) in catalog.reps(beta.target).iter().enumerate() {
                let twice = rep_restrict(&alpha.hom, &rep_restrict(&beta.hom, rep).expect("extent")).expect("extent");
                let once = rep_restrict(&direct, rep).expect("extent");
                let mut ok = twice == once;
                if let Some(c) = catalog.composite(b, a) {
                    let via_catalog = catalog.restrict_index(b, v).and_then(|w| catalog.restrict_index(a, w));
                    ok &= via_catalog == catalog.restrict_index(c, v);
                }
                composite.test(ok, || json!({ "outer": beta.hom.name(), "inner": alpha.hom.name(), "rep": rep.label() }));
            }
        }
    }
    report.push(composite);

    // Restriction is the identity on isometries; it must carry the conjugation
    // action by alpha(g) to the action by g.
    let mut faithful = Check::new("site.restriction.fully-faithful");
    for hom in homs {
        let source = catalog.group(hom.source);
        let reps = catalog.reps(hom.target);
        let restricted: Vec<Rep> = reps.iter().map(|r| rep_restrict(&hom.hom, r).expect("extent")).collect();
        for (v, rv) in reps.iter().enumerate() {
            for (w, rw) in reps.iter().enumerate() {
                if rv.dim() != rw.dim() {
                    continue;
                }
                let (sv, sw) = (&restricted[v], &restricted[w]);
                let len = SignedPerm::count(rv.dim());
                for g in source.elements() {
                    let ag = hom.hom.apply(g);
                    for f in 0..len {
                        faithful.test(conj(sv, sw, g, f) == conj(rv, rw, ag, f), || {
                            json!({
                                "hom": hom.hom.name(), "source": rv.label(), "target": rw.label(),
                                "g": source.label(g), "element": f,
                            })
                        });
                    }
                }
            }
        }
    }
    report.push(faithful);

    let mut sums = Check::new("site.restriction.direct-sum");
    for hom in homs {
        let reps = catalog.reps(hom.target);
        for rv in reps {
            for rw in reps.iter().filter(|w| w.dim() + rv.dim() <= catalog.dim_cap()) {
                let lhs = rep_restrict(&hom.hom, &rep_direct_sum(rv, rw).expect("extent")).expect("extent");
                let rhs = rep_direct_sum(
                    &rep_restrict(&hom.hom, rv).expect("extent"),
                    &rep_restrict(&hom.hom, rw).expect("extent"),
                )
                .expect("extent");
                sums.test(lhs == rhs, || json!({ "hom": hom.hom.name(), "left": rv.label(), "right": rw.label() }));
            }
        }
    }
    report.push(sums);

    let mut unit = Check::new("site.direct-sum.unit");
    let mut assoc = Check::new("site.direct-sum.associativity");
    for (g, group) in catalog.groups().iter().enumerate() {
        let zero = Rep::trivial(group.clone(), 0);
        let reps = catalog.reps(g);
        for u in reps {
            let ok = rep_direct_sum(u, &zero).expect("extent") == *u && rep_direct_sum(&zero, u).expect("extent") == *u;
            unit.test(ok, || json!({ "group": group.name(), "rep": u.label() }));
            for v in reps.iter().filter(|v| u.dim() + v.dim() < catalog.dim_cap()) {
                let uv = rep_direct_sum(u, v).expect("extent");
                for w in reps.iter().filter(|w| uv.dim() + w.dim() <= catalog.dim_cap()) {
                    let left = rep_direct_sum(&uv, w).expect("extent");
                    let right = rep_direct_sum(u, &rep_direct_sum(v, w).expect("extent")).expect("extent");
                    assoc.test(left == right, || json!({ "group": group.name(), "reps": [u.label(), v.label(), w.label()] }));
                }
            }
        }
    }
    report.push(unit);
    report.push(assoc);
    report
}

/// For every `α: H → G`, `V` over `G` and probe `Z`: the `K × H` hom-space
/// `hom(Z, α*V)` equals the `(1 × α)`-restriction of the `K × G` hom-space
/// `hom(Z, V)`, element list and action table alike.
pub fn check_restriction_object(catalog: &SiteCatalog) -> Report {
    let mut report = Report::new();
    let mut check = Check::new("fibration.restriction-object");
    let probes: Vec<&Rep> = (0..catalog.groups().len()).flat_map(|k| catalog.reps(k).iter()).collect();
    for (h, hom) in catalog.homs().iter().enumerate() {
        let source = catalog.group(hom.source);
        for (v, rv) in catalog.reps(hom.target).iter().enumerate() {
            let restricted = match catalog.restrict_index(h, v) {
                Some(r) => catalog.rep(hom.source, r).clone(),
                None => rep_restrict(&hom.hom, rv).expect("extent"),
            };
            for z in probes.iter().filter(|z| z.dim() == rv.dim()) {
                let left = hom_space(z, &restricted);
                let right = hom_space(z, rv);
                let mut ok = left.len() == right.len();
                let mut bad = None;
                'outer: for k in z.group().elements() {
                    for hh in source.elements() {
                        let ah = hom.hom.apply(hh);
                        for f in 0..left.len() {
                            if left.act(k, hh, f) != right.act(k, ah, f) {
                                ok = false;
                                bad = Some((k, hh, f));
                                break 'outer;
                            }
                        }
                    }
                }
                check.test(ok, || {
                    let (k, hh, f) = bad.unwrap_or((0, 0, 0));
                    json!({
                        "hom": hom.hom.name(), "rep": rv.label(), "probe": z.label(),
                        "probe_group": z.group().name(), "k": k, "h": source.label(hh), "element": f,
                    })
                });
            }
        }
    }
    report.push(check);
    report
}

/// The single-group hom-spaces are the diagonal pullbacks of the two-group
/// ones, for every pair of representations of one group.
pub fn check_grothendieck(catalog: &SiteCatalog) -> Report {
    let mut report = Report::new();
    let mut check = Check::new("grothendieck.diagonal-pullback");
    for (g, group) in catalog.groups().iter().enumerate() {
        for v in catalog.reps(g) {
            for w in catalog.reps(g).iter().filter(|w| w.dim() == v.dim()) {
                let diagonal = diagonal_hom(v, w).expect("same extent");
                let pulled = hom_space(v, w).diagonal_pullback().expect("same extent");
                let bad = diagonal.action.iter().zip(&pulled).position(|(a, b)| a != b);
                check.test(bad.is_none() && diagonal.action.len() == pulled.len(), || {
                    let i = bad.unwrap_or(0);
                    let len = diagonal.elements.len().max(1);
                    json!({
                        "group": group.name(), "source": v.label(), "target": w.label(),
                        "g": group.label(i / len), "element": i % len,
                    })
                });
            }
        }
    }
    report.push(check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use std::sync::Arc;

    #[test]
    fn trivial_group_only() {
        let e = Arc::new(FiniteGroup::trivial());
        let homs = SiteCatalog::all_homs(&[e.clone()]);
        let cat = SiteCatalog::closed(2, vec![e], homs, vec![]).unwrap();
        assert!(check_site_axioms(&cat).all_passed());
        assert!(check_restriction_object(&cat).all_passed());
    }

    #[test]
    fn two_group_catalog_passes() {
        let e = Arc::new(FiniteGroup::trivial());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let groups = vec![e, c2.clone()];
        let homs = SiteCatalog::all_homs(&groups);
        let sign = Rep::character(c2, "sign", &[1, -1]).unwrap();
        let cat = SiteCatalog::closed(2, groups, homs, vec![sign]).unwrap();
        let r = check_site_axioms(&cat);
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(check_restriction_object(&cat).all_passed());
        assert!(check_grothendieck(&cat).all_passed());
    }

    #[test]
    fn restriction_object_example() {
        // α: e → C2, V = sign, Z = trivial line over e: both sides are {±1}
        // with trivial action.
        let e = Arc::new(FiniteGroup::trivial());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let sign = Rep::character(c2.clone(), "sign", &[1, -1]).unwrap();
        let alpha = &crate::algebra::enumerate_homs(&e, &c2)[0];
        let z = Rep::trivial(e, 1);
        let left = hom_space(&z, &rep_restrict(alpha, &sign).unwrap());
        let right = hom_space(&z, &sign);
        assert_eq!(left.len(), 2);
        assert_eq!(left.elements(), right.elements());
        assert!((0..2).all(|f| left.act(0, 0, f) == f && right.act(0, alpha.apply(0), f) == f));
    }
}
