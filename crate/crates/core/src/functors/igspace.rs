use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{hyperoctahedral, same_group, FiniteGroup, SignedPerm};
use crate::error::{Error, Result};
use crate::gspaces::{PointedGSet, PointedMap};
use crate::report::{Check, Report};
use crate::site::{Rep, SiteCatalog};

/// Images of every isometry `V → W` under a functor, `maps[f * len + x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismTable {
    source_len: usize,
    maps: Vec<u32>,
}

impl MorphismTable {
    #[inline]
    pub fn map(&self, f: usize) -> &[u32] {
        &self.maps[f * self.source_len..(f + 1) * self.source_len]
    }

    pub fn count(&self) -> usize {
        if self.source_len == 0 {
            0
        } else {
            self.maps.len() / self.source_len
        }
    }
}

/// A functor from the catalog's representations of one group to pointed
/// G-sets, given extensionally on every isometry.
#[derive(Debug, Clone)]
pub struct IGSpaceFin {
    catalog: Arc<SiteCatalog>,
    group: usize,
    values: Vec<PointedGSet>,
    morphisms: Vec<Option<MorphismTable>>,
}

pub(crate) fn perm_label(dim: usize, f: usize) -> String {
    format!("{:?}", SignedPerm::unrank(dim, f))
}

/// Diagonal conjugation `g · f = ρ_W(g) f ρ_V(g)⁻¹` on isometry indices.
#[inline]
pub(crate) fn conjugate(v: &Rep, w: &Rep, g: usize, f: usize) -> usize {
    let b = hyperoctahedral(v.dim());
    b.mul(b.mul(w.rho_index(g), f), b.inv(v.rho_index(g)))
}

impl IGSpaceFin {
    /// Builds the functor from its values and a rule producing the image of
    /// isometry `f: V → W` (as a list of images) for every same-dimension pair.
    pub fn from_fn(
        catalog: Arc<SiteCatalog>,
        group: usize,
        values: Vec<PointedGSet>,
        mut morphism: impl FnMut(usize, usize, usize) -> Vec<u32>,
    ) -> Result<Self> {
        Self::check_values(&catalog, group, &values)?;
        let reps = catalog.reps(group);
        let r = reps.len();
        let mut morphisms = vec![None; r * r];
        for v in 0..r {
            for w in 0..r {
                if reps[v].dim() != reps[w].dim() {
                    continue;
                }
                let count = SignedPerm::count(reps[v].dim());
                let mut maps = Vec::with_capacity(count * values[v].len());
                for f in 0..count {
                    let images = morphism(v, w, f);
                    Self::check_map(&values[v], &values[w], &images, reps, v, w, f)?;
                    maps.extend_from_slice(&images);
                }
                morphisms[v * r + w] = Some(MorphismTable { source_len: values[v].len(), maps });
            }
        }
        Ok(Self { catalog, group, values, morphisms })
    }

    /// Builds the functor from explicit tables; every same-dimension pair of
    /// representations must be covered.
    pub fn from_tables(
        catalog: Arc<SiteCatalog>,
        group: usize,
        values: Vec<PointedGSet>,
        tables: Vec<((usize, usize), Vec<PointedMap>)>,
    ) -> Result<Self> {
        Self::check_values(&catalog, group, &values)?;
        let reps = catalog.reps(group);
        let r = reps.len();
        let mut morphisms: Vec<Option<MorphismTable>> = vec![None; r * r];
        for ((v, w), maps) in tables {
            if v >= r || w >= r || reps[v].dim() != reps[w].dim() {
                return Err(Error::InvalidFunctor(format!("no isometries for pair ({v}, {w})")));
            }
            let count = SignedPerm::count(reps[v].dim());
            if maps.len() != count {
                return Err(Error::InvalidFunctor(format!(
                    "{} maps given for {} isometries {} -> {}",
                    maps.len(),
                    count,
                    reps[v].label(),
                    reps[w].label()
                )));
            }
            let mut flat = Vec::with_capacity(count * values[v].len());
            for (f, m) in maps.iter().enumerate() {
                Self::check_map(&values[v], &values[w], m.raw(), reps, v, w, f)?;
                flat.extend_from_slice(m.raw());
            }
            morphisms[v * r + w] = Some(MorphismTable { source_len: values[v].len(), maps: flat });
        }
        for v in 0..r {
            for w in 0..r {
                if reps[v].dim() == reps[w].dim() && morphisms[v * r + w].is_none() {
                    return Err(Error::CoverageGap(format!(
                        "no morphism data for {} -> {} over {}",
                        reps[v].label(),
                        reps[w].label(),
                        catalog.group(group).name()
                    )));
                }
            }
        }
        Ok(Self { catalog, group, values, morphisms })
    }

    fn check_values(catalog: &SiteCatalog, group: usize, values: &[PointedGSet]) -> Result<()> {
        let g = catalog.group(group);
        if values.len() != catalog.reps(group).len() {
            return Err(Error::CoverageGap(format!(
                "{} values for {} representations of {}",
                values.len(),
                catalog.reps(group).len(),
                g.name()
            )));
        }
        if let Some(bad) = values.iter().find(|x| !same_group(x.group(), g)) {
            return Err(Error::ExtentMismatch { expected: g.name().to_string(), found: bad.group().name().to_string() });
        }
        Ok(())
    }

    fn check_map(
        source: &PointedGSet,
        target: &PointedGSet,
        images: &[u32],
        reps: &[Rep],
        v: usize,
        w: usize,
        f: usize,
    ) -> Result<()> {
        let ok = images.len() == source.len()
            && images.iter().all(|&y| (y as usize) < target.len())
            && images[source.basepoint()] as usize == target.basepoint();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFunctor(format!(
                "image of {} : {} -> {} is not a based map",
                perm_label(reps[v].dim(), f),
                reps[v].label(),
                reps[w].label()
            )))
        }
    }

    pub fn catalog(&self) -> &Arc<SiteCatalog> {
        &self.catalog
    }

    pub fn group_index(&self) -> usize {
        self.group
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.catalog.group(self.group)
    }

    pub fn reps(&self) -> &[Rep] {
        self.catalog.reps(self.group)
    }

    pub fn values(&self) -> &[PointedGSet] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &PointedGSet {
        &self.values[v]
    }

    pub fn table(&self, v: usize, w: usize) -> Option<&MorphismTable> {
        self.morphisms[v * self.values.len() + w].as_ref()
    }

    /// Image of isometry `f: V → W`.
    #[inline]
    pub fn morphism(&self, v: usize, w: usize, f: usize) -> &[u32] {
        self.table(v, w).expect("same-dimension pair").map(f)
    }

    pub fn morphism_map(&self, v: usize, w: usize, f: usize) -> PointedMap {
        PointedMap::from_images(self.morphism(v, w, f).iter().map(|&y| y as usize).collect())
    }

    /// Swaps the images of points `i` and `j` under the isometry `f: V → W`.
    pub fn swap_morphism_images(&mut self, v: usize, w: usize, f: usize, i: usize, j: usize) -> Result<()> {
        let n = self.values.len();
        let len = self.values[v].len();
        let table = self.morphisms[v * n + w]
            .as_mut()
            .ok_or_else(|| Error::InvalidFunctor(format!("no isometries for pair ({v}, {w})")))?;
        if f >= table.count() || i >= len || j >= len {
            return Err(Error::InvalidFunctor("swap position out of range".into()));
        }
        table.maps.swap(f * len + i, f * len + j);
        Ok(())
    }

    /// Replaces the action on the value at `v`.
    pub fn replace_value(&mut self, v: usize, value: PointedGSet) -> Result<()> {
        if value.len() != self.values[v].len() || value.basepoint() != self.values[v].basepoint() {
            return Err(Error::InvalidFunctor("replacement value has a different shape".into()));
        }
        self.values[v] = value;
        Ok(())
    }

    fn witness(&self, v: usize, w: usize, f: usize, extra: Value) -> Value {
        let reps = self.reps();
        let mut out = json!({
            "group": self.group().name(),
            "source": reps[v].label(),
            "target": reps[w].label(),
            "isometry": perm_label(reps[v].dim(), f),
        });
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
        out
    }
}

/// Identity law, composition law and G-continuity, exhaustively.
///
/// Composition is checked in the factored form `A(f∘h) = A(f)∘A(h)` for every
/// `f: V → W` and every `h: R → V` out of the trivial representation `R` of
/// the same dimension, together with bijectivity of `A(h)` for one such `h`.
/// Since every isometry `V → W` factors through `R`, this implies the law for
/// all composable pairs.
pub fn check_igspace(a: &IGSpaceFin) -> Report {
    let mut report = Report::new();
    let reps = a.reps();
    let catalog = a.catalog();
    let group = a.group();

    let mut identity = Check::new("functor.identity");
    for v in 0..reps.len() {
        let img = a.morphism(v, v, 0);
        let bad = img.iter().enumerate().position(|(x, &y)| x != y as usize);
        identity.test(bad.is_none(), || a.witness(v, v, 0, json!({ "point": a.value(v).label(bad.unwrap_or(0)) })));
    }
    report.push(identity);

    let mut composition = Check::new("functor.composition");
    let mut frames = Check::new("functor.frame-bijection");
    for n in 0..=catalog.dim_cap() {
        let b = hyperoctahedral(n);
        let same_dim: Vec<usize> = (0..reps.len()).filter(|&v| reps[v].dim() == n).collect();
        if same_dim.is_empty() {
            continue;
        }
        match catalog.trivial_index(a.group_index(), n) {
            Some(r) => {
                for &v in &same_dim {
                    let frame = a.morphism(r, v, 0);
                    let bijective = PointedMap::from_raw(frame.to_vec()).is_bijection(a.value(v).len());
                    frames.test(bijective, || a.witness(r, v, 0, json!({})));
                    for &w in &same_dim {
                        for f in 0..b.len() {
                            let af = a.morphism(v, w, f);
                            for h in 0..b.len() {
                                let ah = a.morphism(r, v, h);
                                let afh = a.morphism(r, w, b.mul(f, h));
                                let bad = (0..ah.len()).find(|&x| afh[x] != af[ah[x] as usize]);
                                composition.test(bad.is_none(), || {
                                    a.witness(v, w, f, json!({ "first": perm_label(n, h), "via": reps[r].label() }))
                                });
                            }
                        }
                    }
                }
            }
            None => {
                for &u in &same_dim {
                    for &v in &same_dim {
                        for &w in &same_dim {
                            for f in 0..b.len() {
                                let af = a.morphism(v, w, f);
                                for h in 0..b.len() {
                                    let ah = a.morphism(u, v, h);
                                    let afh = a.morphism(u, w, b.mul(f, h));
                                    let bad = (0..ah.len()).find(|&x| afh[x] != af[ah[x] as usize]);
                                    composition.test(bad.is_none(), || {
                                        a.witness(v, w, f, json!({ "first": perm_label(n, h), "via": reps[u].label() }))
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.push(composition);
    report.push(frames);

    let mut continuity = Check::new("functor.continuity");
    for v in 0..reps.len() {
        let (xv, len) = (a.value(v), a.value(v).len());
        for w in (0..reps.len()).filter(|&w| reps[w].dim() == reps[v].dim()) {
            let xw = a.value(w);
            for f in 0..SignedPerm::count(reps[v].dim()) {
                let af = a.morphism(v, w, f);
                for g in group.elements().filter(|&g| g != group.identity()) {
                    let gf = a.morphism(v, w, conjugate(&reps[v], &reps[w], g, f));
                    let g_inv = group.inv(g);
                    let bad = (0..len).find(|&x| xw.act(g, af[xv.act(g_inv, x)] as usize) != gf[x] as usize);
                    continuity.test(bad.is_none(), || {
                        a.witness(v, w, f, json!({ "g": group.label(g), "point": xv.label(bad.unwrap_or(0)) }))
                    });
                }
            }
        }
    }
    report.push(continuity);
    report
}

/// The composition law over every composable triple of representations.
/// Slower than [`check_igspace`]; used to cross-check its factored form.
pub fn check_composition_exhaustive(a: &IGSpaceFin) -> Report {
    let mut report = Report::new();
    let mut check = Check::new("functor.composition-exhaustive");
    let reps = a.reps();
    for u in 0..reps.len() {
        let n = reps[u].dim();
        let b = hyperoctahedral(n);
        for v in (0..reps.len()).filter(|&v| reps[v].dim() == n) {
            for w in (0..reps.len()).filter(|&w| reps[w].dim() == n) {
                for f in 0..b.len() {
                    for h in 0..b.len() {
                        let (af, ah, afh) = (a.morphism(v, w, f), a.morphism(u, v, h), a.morphism(u, w, b.mul(f, h)));
                        let ok = (0..ah.len()).all(|x| afh[x] == af[ah[x] as usize]);
                        check.test(ok, || a.witness(v, w, f, json!({ "first": perm_label(n, h), "via": reps[u].label() })));
                    }
                }
            }
        }
    }
    report.push(check);
    report
}

/// Equivariance and naturality of a family of maps `A(V) → B(V)`.
pub fn check_igspace_map(name: &str, maps: &[PointedMap], a: &IGSpaceFin, b: &IGSpaceFin) -> Report {
    let mut report = Report::new();
    let reps = a.reps();
    let group = a.group();
    let mut equivariance = Check::new(format!("{name}.equivariance"));
    let mut naturality = Check::new(format!("{name}.naturality"));
    if maps.len() != reps.len() || b.group_index() != a.group_index() || !Arc::ptr_eq(a.catalog(), b.catalog()) {
        let mut shape = Check::new(format!("{name}.shape"));
        shape.test(false, || json!({ "group": group.name(), "components": maps.len(), "reps": reps.len() }));
        report.push(shape);
        return report;
    }
    for v in 0..reps.len() {
        let (xa, xb) = (a.value(v), b.value(v));
        let m = &maps[v];
        let in_range = m.len() == xa.len() && m.raw().iter().all(|&y| (y as usize) < xb.len());
        let witness = if in_range { m.equivariance_witness(xa, xb) } else { Some((0, 0)) };
        equivariance.test(witness.is_none(), || {
            let (g, x) = witness.unwrap_or_default();
            json!({ "group": group.name(), "rep": reps[v].label(), "g": group.label(g), "point": xa.label(x) })
        });
        if !in_range {
            continue;
        }
        for w in (0..reps.len()).filter(|&w| reps[w].dim() == reps[v].dim()) {
            let mw = &maps[w];
            if mw.len() != a.value(w).len() {
                continue;
            }
            for f in 0..SignedPerm::count(reps[v].dim()) {
                let (af, bf) = (a.morphism(v, w, f), b.morphism(v, w, f));
                let bad = (0..xa.len()).find(|&x| mw.apply(af[x] as usize) != bf[m.apply(x)] as usize);
                naturality.test(bad.is_none(), || {
                    a.witness(v, w, f, json!({ "point": xa.label(bad.unwrap_or(0)) }))
                });
            }
        }
    }
    report.push(equivariance);
    report.push(naturality);
    report
}

/// A natural isomorphism `A → B` of functors over one group, if one exists.
///
/// Values at trivial representations determine everything: a candidate is an
/// isomorphism of `B_n × G`-sets at the trivial representation of each
/// dimension, transported to every other object along the frame isometries.
pub fn find_natural_iso(a: &IGSpaceFin, b: &IGSpaceFin) -> Option<Vec<PointedMap>> {
    if a.group_index() != b.group_index() || !Arc::ptr_eq(a.catalog(), b.catalog()) {
        return None;
    }
    let catalog = a.catalog();
    let reps = a.reps();
    let mut at_trivial: Vec<Option<PointedMap>> = vec![None; catalog.dim_cap() + 1];
    for n in 0..=catalog.dim_cap() {
        if !reps.iter().any(|r| r.dim() == n) {
            continue;
        }
        let r = catalog.trivial_index(a.group_index(), n)?;
        at_trivial[n] = Some(equivariant_bijection(a, b, r)?);
    }
    let mut maps = Vec::with_capacity(reps.len());
    for v in 0..reps.len() {
        let n = reps[v].dim();
        let r = catalog.trivial_index(a.group_index(), n)?;
        let u = at_trivial[n].as_ref()?;
        let frame_a = PointedMap::from_raw(a.morphism(r, v, 0).to_vec()).inverse()?;
        let frame_b = PointedMap::from_raw(b.morphism(r, v, 0).to_vec());
        maps.push(frame_b.after(u).after(&frame_a));
    }
    let report = check_igspace_map("iso", &maps, a, b);
    let bijective = maps.iter().enumerate().all(|(v, m)| m.is_bijection(b.value(v).len()));
    (report.all_passed() && bijective).then_some(maps)
}

/// A bijection `A(R) → B(R)` commuting with the automorphisms of `R` and the
/// group action, found by backtracking with propagation.
fn equivariant_bijection(a: &IGSpaceFin, b: &IGSpaceFin, r: usize) -> Option<PointedMap> {
    let (xa, xb) = (a.value(r), b.value(r));
    if xa.len() != xb.len() {
        return None;
    }
    let n = a.reps()[r].dim();
    let mut moves_a: Vec<Vec<u32>> = hyperoctahedral(n).generators().map(|t| a.morphism(r, r, t).to_vec()).collect();
    let mut moves_b: Vec<Vec<u32>> = hyperoctahedral(n).generators().map(|t| b.morphism(r, r, t).to_vec()).collect();
    for g in a.group().elements() {
        moves_a.push((0..xa.len()).map(|x| xa.act(g, x) as u32).collect());
        moves_b.push((0..xb.len()).map(|x| xb.act(g, x) as u32).collect());
    }
    let mut assignment = vec![u32::MAX; xa.len()];
    let mut used = vec![false; xb.len()];
    if !propagate(&moves_a, &moves_b, &mut assignment, &mut used, xa.basepoint(), xb.basepoint()) {
        return None;
    }
    fn search(moves_a: &[Vec<u32>], moves_b: &[Vec<u32>], assignment: &mut Vec<u32>, used: &mut Vec<bool>) -> bool {
        let Some(x) = assignment.iter().position(|&y| y == u32::MAX) else {
            return true;
        };
        for y in 0..used.len() {
            if used[y] {
                continue;
            }
            let (saved_a, saved_u) = (assignment.clone(), used.clone());
            if propagate(moves_a, moves_b, assignment, used, x, y) && search(moves_a, moves_b, assignment, used) {
                return true;
            }
            *assignment = saved_a;
            *used = saved_u;
        }
        false
    }
    search(&moves_a, &moves_b, &mut assignment, &mut used)
        .then(|| PointedMap::from_raw(assignment))
}

fn propagate(
    moves_a: &[Vec<u32>],
    moves_b: &[Vec<u32>],
    assignment: &mut [u32],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    let mut stack = vec![(x, y)];
    while let Some((x, y)) = stack.pop() {
        if assignment[x] != u32::MAX {
            if assignment[x] as usize != y {
                return false;
            }
            continue;
        }
        if used[y] {
            return false;
        }
        assignment[x] = y as u32;
        used[y] = true;
        for (ma, mb) in moves_a.iter().zip(moves_b) {
            stack.push((ma[x] as usize, mb[y] as usize));
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn constant(catalog: &Arc<SiteCatalog>, g: usize, x: &PointedGSet) -> IGSpaceFin {
        let values = vec![x.clone(); catalog.reps(g).len()];
        IGSpaceFin::from_fn(catalog.clone(), g, values, |_, _, _| (0..x.len() as u32).collect()).unwrap()
    }

    fn determinant(f: &SignedPerm) -> i64 {
        let p = f.perm();
        let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let sign: i64 = f.signs().iter().map(|s| s.to_i64()).product();
        if inversions % 2 == 0 { sign } else { -sign }
    }

    fn orientation_set(group: &Arc<FiniteGroup>, rep: &Rep) -> PointedGSet {
        let labels = ["*", "+", "-", "z"].map(String::from).to_vec();
        let gens: Vec<(usize, Vec<usize>)> = group
            .elements()
            .map(|g| (g, if determinant(rep.rho(g)) < 0 { vec![0, 2, 1, 3] } else { vec![0, 1, 2, 3] }))
            .collect();
        PointedGSet::from_generators(group.clone(), labels, 0, &gens).unwrap()
    }

    /// `V ↦ {*, +, -, z}` with isometries and the group acting through the
    /// sign of the determinant on `±`.
    pub(crate) fn orientation(catalog: &Arc<SiteCatalog>, g: usize) -> IGSpaceFin {
        let reps = catalog.reps(g);
        let values = reps.iter().map(|r| orientation_set(catalog.group(g), r)).collect();
        IGSpaceFin::from_fn(catalog.clone(), g, values, |v, _, f| {
            if determinant(&SignedPerm::unrank(reps[v].dim(), f)) < 0 {
                vec![0, 2, 1, 3]
            } else {
                vec![0, 1, 2, 3]
            }
        })
        .unwrap()
    }

    #[test]
    fn constant_functors_pass() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        for g in 0..catalog.groups().len() {
            let point = constant(&catalog, g, &PointedGSet::point(catalog.group(g).clone()));
            assert!(check_igspace(&point).all_passed());
            let s0 = constant(&catalog, g, &PointedGSet::s0(catalog.group(g).clone()));
            assert!(check_igspace(&s0).all_passed());
        }
    }

    #[test]
    fn orientation_functor_passes_both_composition_checks() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        for g in 0..catalog.groups().len() {
            let a = orientation(&catalog, g);
            assert!(check_igspace(&a).all_passed(), "{}", check_igspace(&a).to_text());
            assert!(check_composition_exhaustive(&a).all_passed());
        }
    }

    #[test]
    fn corrupted_morphism_is_caught_with_witness() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let c2 = catalog.group_index("C2").unwrap();
        let sign = catalog.rep_index(c2, "sign").unwrap();
        let mut a = orientation(&catalog, c2);
        a.swap_morphism_images(sign, sign, 1, 2, 3).unwrap();
        let report = check_igspace(&a);
        assert!(!report.all_passed());
        let bad = report.entry("functor.composition").unwrap();
        assert!(bad.failures > 0);
        let witness = bad.witness.as_ref().unwrap();
        assert_eq!(witness["group"], "C2");
        assert!(!check_composition_exhaustive(&a).all_passed());
    }

    #[test]
    fn factored_and_exhaustive_composition_agree_on_faults() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let g = catalog.group_index("C2xC2").unwrap();
        let reps = catalog.reps(g).len();
        for v in 0..reps {
            for w in (0..reps).filter(|&w| catalog.rep(g, w).dim() == catalog.rep(g, v).dim() && catalog.rep(g, v).dim() > 0) {
                let mut a = orientation(&catalog, g);
                a.swap_morphism_images(v, w, 1, 1, 3).unwrap();
                let factored = check_igspace(&a).entry("functor.composition").unwrap().failures > 0
                    || check_igspace(&a).entry("functor.identity").unwrap().failures > 0;
                let exhaustive = !check_composition_exhaustive(&a).all_passed();
                assert_eq!(factored, exhaustive);
            }
        }
    }

    #[test]
    fn continuity_fault_is_caught() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(1));
        let c2 = catalog.group_index("C2").unwrap();
        let sign = catalog.rep_index(c2, "sign").unwrap();
        let mut a = orientation(&catalog, c2);
        let trivial = catalog.trivial_index(c2, 1).unwrap();
        let wrong = a.value(trivial).clone();
        a.replace_value(sign, wrong).unwrap();
        let report = check_igspace(&a);
        assert_eq!(report.entry("functor.continuity").unwrap().status, crate::report::Status::Fail);
    }

    #[test]
    fn natural_iso_found_between_relabelled_copies() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let g = catalog.group_index("S3").unwrap();
        let a = orientation(&catalog, g);
        let maps = find_natural_iso(&a, &a).unwrap();
        assert!(maps.iter().all(|m| m.is_bijection(4)));
        let point = constant(&catalog, g, &PointedGSet::point(catalog.group(g).clone()));
        assert!(find_natural_iso(&a, &point).is_none());
    }
}
