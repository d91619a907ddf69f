use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{FiniteGroup, SignedPerm};
use crate::error::{Error, Result};
use crate::functors::{check_global_map, check_igspace_map, GlobalMap, GlobalSpace, IGSpaceFin};
use crate::gspaces::{PointedGSet, PointedMap, SmashLayout};
use crate::report::{Check, Report};
use crate::site::SiteCatalog;

use super::sphere::{global_sphere, sphere_functor, sphere_smash_iso, suspension};

/// The functor a spectrum structure lives on: one group, or every group of a
/// catalog with restriction isomorphisms.
#[derive(Debug, Clone)]
pub enum SpectrumBase {
    Single(IGSpaceFin),
    Global(GlobalSpace),
}

impl SpectrumBase {
    pub fn catalog(&self) -> &Arc<SiteCatalog> {
        match self {
            Self::Single(a) => a.catalog(),
            Self::Global(a) => a.catalog(),
        }
    }

    pub fn components(&self) -> &[IGSpaceFin] {
        match self {
            Self::Single(a) => std::slice::from_ref(a),
            Self::Global(a) => a.components(),
        }
    }

    fn components_mut(&mut self, c: usize) -> &mut IGSpaceFin {
        match self {
            Self::Single(a) => a,
            Self::Global(a) => a.component_mut(c),
        }
    }

    pub fn global(&self) -> Option<&GlobalSpace> {
        match self {
            Self::Single(_) => None,
            Self::Global(a) => Some(a),
        }
    }

    /// The sphere over the same groups.
    fn sphere(&self) -> Result<SpectrumBase> {
        match self {
            Self::Single(a) => Ok(Self::Single(sphere_functor(a.catalog(), a.group_index())?)),
            Self::Global(a) => Ok(Self::Global(global_sphere(a.catalog())?)),
        }
    }
}

/// `V ⊕ W` for every pair whose total dimension is within the cap.
fn sum_table(catalog: &SiteCatalog, g: usize) -> Result<Vec<Option<usize>>> {
    let reps = catalog.reps(g);
    let r = reps.len();
    let mut out = vec![None; r * r];
    for v in 0..r {
        for w in 0..r {
            if reps[v].dim() + reps[w].dim() > catalog.dim_cap() {
                continue;
            }
            let s = catalog.sum_index(g, v, w).ok_or_else(|| {
                Error::CatalogIncomplete(format!(
                    "{} ⊕ {} over {} is not in the catalog",
                    reps[v].label(),
                    reps[w].label(),
                    catalog.group(g).name()
                ))
            })?;
            out[v * r + w] = Some(s);
        }
    }
    Ok(out)
}

/// Index of `f ⊕ h` for all `f ∈ B_n`, `h ∈ B_m`, row-major in `f`.
fn block_sum_table(n: usize, m: usize) -> Vec<usize> {
    let (fs, hs) = (SignedPerm::all(n), SignedPerm::all(m));
    fs.iter().flat_map(|f| hs.iter().map(move |h| f.block_sum(h).rank())).collect()
}

/// Builds the maps `X(V) ∧ Y(W) → Z(V⊕W)` for every in-cap pair, checking
/// that each is a based map of the right shape.
fn build_pairing(
    left: &IGSpaceFin,
    right: &IGSpaceFin,
    target: &IGSpaceFin,
    sums: &[Option<usize>],
    mut make: impl FnMut(usize, usize) -> Result<PointedMap>,
) -> Result<Vec<Option<PointedMap>>> {
    let r = left.reps().len();
    let mut maps = vec![None; r * r];
    for v in 0..r {
        for w in 0..r {
            let Some(s) = sums[v * r + w] else { continue };
            let map = make(v, w)?;
            validate_pairing_map(left.value(v), right.value(w), target.value(s), &map).map_err(|reason| {
                Error::InvalidMap(format!(
                    "structure map at ({}, {}) over {}: {reason}",
                    left.reps()[v].label(),
                    left.reps()[w].label(),
                    left.group().name()
                ))
            })?;
            maps[v * r + w] = Some(map);
        }
    }
    Ok(maps)
}

fn validate_pairing_map(x: &PointedGSet, y: &PointedGSet, z: &PointedGSet, map: &PointedMap) -> Result<(), String> {
    let layout = SmashLayout::new(x, y);
    if map.len() != layout.len() {
        return Err(format!("{} images for {} points", map.len(), layout.len()));
    }
    if map.raw().iter().any(|&p| p as usize >= z.len()) {
        return Err("image out of range".into());
    }
    if map.apply(0) != z.basepoint() {
        return Err("basepoint not preserved".into());
    }
    Ok(())
}

fn swap_pairing(maps: &mut [Option<PointedMap>], r: usize, v: usize, w: usize, i: usize, j: usize) -> Result<()> {
    let slot = maps
        .get_mut(v * r + w)
        .and_then(Option::as_mut)
        .ok_or_else(|| Error::InvalidMap(format!("no structure map at ({v}, {w})")))?;
    if i >= slot.len() || j >= slot.len() {
        return Err(Error::InvalidMap("swap position out of range".into()));
    }
    *slot = slot.swapped(i, j);
    Ok(())
}

/// A family of maps `X(V) ∧ Y(W) → Z(V⊕W)` over one group.
struct Pairing<'a> {
    left: &'a IGSpaceFin,
    right: &'a IGSpaceFin,
    target: &'a IGSpaceFin,
    sums: &'a [Option<usize>],
    maps: &'a [Option<PointedMap>],
    layouts: Vec<Option<SmashLayout>>,
}

impl<'a> Pairing<'a> {
    fn new(
        left: &'a IGSpaceFin,
        right: &'a IGSpaceFin,
        target: &'a IGSpaceFin,
        sums: &'a [Option<usize>],
        maps: &'a [Option<PointedMap>],
    ) -> Self {
        let r = left.reps().len();
        let layouts = (0..r * r)
            .map(|i| sums[i].map(|_| SmashLayout::new(left.value(i / r), right.value(i % r))))
            .collect();
        Self { left, right, target, sums, maps, layouts }
    }

    fn r(&self) -> usize {
        self.left.reps().len()
    }

    fn sum(&self, v: usize, w: usize) -> Option<usize> {
        self.sums[v * self.r() + w]
    }

    #[inline]
    fn apply(&self, v: usize, w: usize, x: usize, y: usize) -> usize {
        let i = v * self.r() + w;
        let p = self.layouts[i].as_ref().expect("in-cap pair").pair(x, y);
        self.maps[i].as_ref().expect("in-cap pair").apply(p)
    }

    fn witness(&self, v: usize, w: usize, extra: Value) -> Value {
        let reps = self.left.reps();
        let mut out = json!({ "group": self.left.group().name(), "left": reps[v].label(), "right": reps[w].label() });
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
        out
    }

    fn equivariance(&self, check: &mut Check) {
        let group = self.left.group();
        let r = self.r();
        for v in 0..r {
            for w in 0..r {
                let Some(s) = self.sum(v, w) else { continue };
                let (xv, yw, zs) = (self.left.value(v), self.right.value(w), self.target.value(s));
                for g in group.elements() {
                    let bad = xv.non_base().flat_map(|x| yw.non_base().map(move |y| (x, y))).find(|&(x, y)| {
                        self.apply(v, w, xv.act(g, x), yw.act(g, y)) != zs.act(g, self.apply(v, w, x, y))
                    });
                    check.test(bad.is_none(), || {
                        let (x, y) = bad.unwrap_or_default();
                        self.witness(v, w, json!({ "g": group.label(g), "point": [xv.label(x), yw.label(y)] }))
                    });
                }
            }
        }
    }

    /// `Z(f⊕h) ∘ P = P ∘ (X(f) ∧ Y(h))` for all isometries `f`, `h`.
    fn naturality(&self, check: &mut Check) {
        let reps = self.left.reps();
        let cap = self.left.catalog().dim_cap();
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); cap + 1];
        for (i, rep) in reps.iter().enumerate() {
            by_dim[rep.dim()].push(i);
        }
        let mut block_sums: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for n in 0..=cap {
            for m in 0..=cap - n {
                let table = block_sums.entry((n, m)).or_insert_with(|| block_sum_table(n, m));
                let hm = SignedPerm::count(m);
                for &v in &by_dim[n] {
                    for &v2 in &by_dim[n] {
                        for &w in &by_dim[m] {
                            for &w2 in &by_dim[m] {
                                let (Some(s), Some(s2)) = (self.sum(v, w), self.sum(v2, w2)) else { continue };
                                let (xv, yw) = (self.left.value(v), self.right.value(w));
                                for f in 0..SignedPerm::count(n) {
                                    let lf = self.left.morphism(v, v2, f);
                                    for h in 0..hm {
                                        let rh = self.right.morphism(w, w2, h);
                                        let t = self.target.morphism(s, s2, table[f * hm + h]);
                                        let bad = xv.non_base().flat_map(|x| yw.non_base().map(move |y| (x, y))).find(
                                            |&(x, y)| {
                                                t[self.apply(v, w, x, y)] as usize
                                                    != self.apply(v2, w2, lf[x] as usize, rh[y] as usize)
                                            },
                                        );
                                        check.test(bad.is_none(), || {
                                            let (x, y) = bad.unwrap_or_default();
                                            self.witness(
                                                v,
                                                w,
                                                json!({
                                                    "left_target": reps[v2].label(), "right_target": reps[w2].label(),
                                                    "f": format!("{:?}", SignedPerm::unrank(n, f)),
                                                    "h": format!("{:?}", SignedPerm::unrank(m, h)),
                                                    "point": [xv.label(x), yw.label(y)],
                                                }),
                                            )
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// `P(P(x ∧ y) ∧ z) = P(x ∧ Q(y ∧ z))` where `Q` pairs the right factor
    /// with itself.
    fn associativity(&self, inner: &Pairing, check: &mut Check) {
        let r = self.r();
        for v in 0..r {
            for w in 0..r {
                let Some(vw) = self.sum(v, w) else { continue };
                for u in 0..r {
                    let Some(wu) = inner.sum(w, u) else { continue };
                    let (Some(a), Some(b)) = (self.sum(vw, u), self.sum(v, wu)) else { continue };
                    if !check.test(a == b, || json!({ "group": self.left.group().name(), "sum_mismatch": [a, b] })) {
                        continue;
                    }
                    let (xv, yw, yu) = (self.left.value(v), self.right.value(w), self.right.value(u));
                    let bad = xv
                        .non_base()
                        .flat_map(|x| yw.non_base().flat_map(move |y| yu.non_base().map(move |z| (x, y, z))))
                        .find(|&(x, y, z)| {
                            self.apply(vw, u, self.apply(v, w, x, y), z) != self.apply(v, wu, x, inner.apply(w, u, y, z))
                        });
                    check.test(bad.is_none(), || {
                        let (x, y, z) = bad.unwrap_or_default();
                        self.witness(
                            v,
                            w,
                            json!({ "third": self.left.reps()[u].label(), "point": [xv.label(x), yw.label(y), yu.label(z)] }),
                        )
                    });
                }
            }
        }
    }

    /// `P(x ∧ one) = x` with `one` a point of the right factor at zero.
    fn right_unit(&self, zero: usize, one: usize, check: &mut Check) {
        for v in 0..self.r() {
            if !check.test(self.sum(v, zero) == Some(v), || self.witness(v, zero, json!({ "sum": self.sum(v, zero) }))) {
                continue;
            }
            let xv = self.left.value(v);
            let bad = xv.non_base().find(|&x| self.apply(v, zero, x, one) != x);
            check.test(bad.is_none(), || self.witness(v, zero, json!({ "point": xv.label(bad.unwrap_or(0)) })));
        }
    }

    /// `P(one ∧ y) = y` with `one` a point of the left factor at zero.
    fn left_unit(&self, zero: usize, one: usize, check: &mut Check) {
        for w in 0..self.r() {
            if !check.test(self.sum(zero, w) == Some(w), || self.witness(zero, w, json!({ "sum": self.sum(zero, w) }))) {
                continue;
            }
            let yw = self.right.value(w);
            let bad = yw.non_base().find(|&y| self.apply(zero, w, one, y) != y);
            check.test(bad.is_none(), || self.witness(zero, w, json!({ "point": yw.label(bad.unwrap_or(0)) })));
        }
    }
}

/// Compatibility of pairings with restriction along every hom `α: G → H`:
/// `φ_Z ∘ P_H = P_G ∘ (φ_X ∧ φ_Y)`.
fn pairing_restriction(x: &GlobalSpace, y: &GlobalSpace, z: &GlobalSpace, pairings: &[Pairing], check: &mut Check) {
    let catalog = x.catalog();
    for (h, hom) in catalog.homs().iter().enumerate() {
        let (pt, ps) = (&pairings[hom.target], &pairings[hom.source]);
        let reps = catalog.reps(hom.target);
        for v in 0..reps.len() {
            for w in 0..reps.len() {
                let Some(s) = pt.sum(v, w) else { continue };
                let restricted = (catalog.restrict_index(h, v), catalog.restrict_index(h, w), catalog.restrict_index(h, s));
                let (Some(v2), Some(w2), Some(s2)) = restricted else {
                    check.test(false, || json!({ "hom": hom.hom.name(), "missing_restriction": [reps[v].label(), reps[w].label()] }));
                    continue;
                };
                if !check.test(ps.sum(v2, w2) == Some(s2), || json!({ "hom": hom.hom.name(), "sum_mismatch": [v, w] })) {
                    continue;
                }
                let (xv, yw) = (x.component(hom.target).value(v), y.component(hom.target).value(w));
                let (fx, fy, fz) = (x.restriction(h, v), y.restriction(h, w), z.restriction(h, s));
                let bad = xv
                    .non_base()
                    .flat_map(|a| yw.non_base().map(move |b| (a, b)))
                    .find(|&(a, b)| fz.apply(pt.apply(v, w, a, b)) != ps.apply(v2, w2, fx.apply(a), fy.apply(b)));
                check.test(bad.is_none(), || {
                    let (a, b) = bad.unwrap_or_default();
                    json!({
                        "hom": hom.hom.name(), "left": reps[v].label(), "right": reps[w].label(),
                        "point": [xv.label(a), yw.label(b)],
                    })
                });
            }
        }
    }
}

/// Shared data: the base functor, the sphere over the same groups, the sum
/// tables, and sign-vector concatenation on the sphere.
#[derive(Debug, Clone)]
struct Frame {
    base: SpectrumBase,
    sphere: SpectrumBase,
    sums: Vec<Vec<Option<usize>>>,
    concat: Vec<Vec<Option<PointedMap>>>,
}

impl Frame {
    fn new(base: SpectrumBase) -> Result<Self> {
        let catalog = base.catalog().clone();
        let sphere = base.sphere()?;
        let mut sums = Vec::new();
        let mut concat = Vec::new();
        for s in sphere.components() {
            let table = sum_table(&catalog, s.group_index())?;
            let reps = s.reps();
            concat.push(build_pairing(s, s, s, &table, |v, w| sphere_smash_iso(&reps[v], &reps[w], catalog.dim_cap()))?);
            sums.push(table);
        }
        Ok(Self { base, sphere, sums, concat })
    }

    fn zero(&self, c: usize) -> Result<usize> {
        let g = self.base.components()[c].group_index();
        self.base.catalog().trivial_index(g, 0).ok_or_else(|| {
            Error::CatalogIncomplete(format!("no zero representation over {}", self.base.catalog().group(g).name()))
        })
    }

    fn concat_pairings(&self) -> Vec<Pairing<'_>> {
        self.sphere
            .components()
            .iter()
            .enumerate()
            .map(|(c, s)| Pairing::new(s, s, s, &self.sums[c], &self.concat[c]))
            .collect()
    }
}

/// Structure maps `σ_{V,W}: A(V) ∧ S(W) → A(V⊕W)` for every pair of
/// representations whose total dimension is within the catalog cap.
#[derive(Debug, Clone)]
pub struct SpectrumStructure {
    frame: Frame,
    sigma: Vec<Vec<Option<PointedMap>>>,
}

impl SpectrumStructure {
    /// `sigma(component, v, w)` produces `σ_{V,W}` on the smash layout of
    /// `A(V)` and `S(W)`.
    pub fn new(base: SpectrumBase, mut sigma: impl FnMut(&IGSpaceFin, usize, usize) -> Result<PointedMap>) -> Result<Self> {
        let frame = Frame::new(base)?;
        let mut maps = Vec::new();
        for (c, a) in frame.base.components().iter().enumerate() {
            let s = &frame.sphere.components()[c];
            maps.push(build_pairing(a, s, a, &frame.sums[c], |v, w| sigma(a, v, w))?);
        }
        Ok(Self { frame, sigma: maps })
    }

    pub fn base(&self) -> &SpectrumBase {
        &self.frame.base
    }

    pub fn sigma(&self, component: usize, v: usize, w: usize) -> Option<&PointedMap> {
        let r = self.frame.base.components()[component].reps().len();
        self.sigma[component].get(v * r + w)?.as_ref()
    }

    pub fn swap_sigma_images(&mut self, component: usize, v: usize, w: usize, i: usize, j: usize) -> Result<()> {
        let r = self.frame.base.components()[component].reps().len();
        swap_pairing(&mut self.sigma[component], r, v, w, i, j)
    }

    fn pairings(&self) -> Vec<Pairing<'_>> {
        let f = &self.frame;
        f.base
            .components()
            .iter()
            .enumerate()
            .map(|(c, a)| Pairing::new(a, &f.sphere.components()[c], a, &f.sums[c], &self.sigma[c]))
            .collect()
    }
}

/// Unit, associativity, naturality and equivariance of the structure maps,
/// and compatibility with restriction when the base is global.
pub fn check_spectrum(s: &SpectrumStructure) -> Report {
    let mut report = Report::new();
    let pairings = s.pairings();
    let concat = s.frame.concat_pairings();
    let mut unit = Check::new("spectrum.unit");
    let mut associativity = Check::new("spectrum.associativity");
    let mut naturality = Check::new("spectrum.naturality");
    let mut equivariance = Check::new("spectrum.equivariance");
    for (c, p) in pairings.iter().enumerate() {
        match s.frame.zero(c) {
            Ok(zero) => p.right_unit(zero, 1, &mut unit),
            Err(e) => {
                unit.test(false, || json!({ "error": e.to_string() }));
            }
        }
        p.associativity(&concat[c], &mut associativity);
        p.naturality(&mut naturality);
        p.equivariance(&mut equivariance);
    }
    report.push(unit);
    report.push(associativity);
    report.push(naturality);
    report.push(equivariance);
    if let (SpectrumBase::Global(a), SpectrumBase::Global(sph)) = (&s.frame.base, &s.frame.sphere) {
        let mut restriction = Check::new("spectrum.restriction");
        pairing_restriction(a, sph, a, &pairings, &mut restriction);
        report.push(restriction);
    }
    report
}

/// A unit `η: S → A` and a multiplication `μ_{V,W}: A(V) ∧ A(W) → A(V⊕W)`.
#[derive(Debug, Clone)]
pub struct LaxMonoidalData {
    frame: Frame,
    unit: Vec<Vec<PointedMap>>,
    mult: Vec<Vec<Option<PointedMap>>>,
}

impl LaxMonoidalData {
    pub fn new(
        base: SpectrumBase,
        mut unit: impl FnMut(&IGSpaceFin, usize) -> Result<PointedMap>,
        mut mult: impl FnMut(&IGSpaceFin, usize, usize) -> Result<PointedMap>,
    ) -> Result<Self> {
        let frame = Frame::new(base)?;
        let mut units = Vec::new();
        let mut mults = Vec::new();
        for (c, a) in frame.base.components().iter().enumerate() {
            let s = &frame.sphere.components()[c];
            let etas = (0..a.reps().len())
                .map(|v| {
                    let eta = unit(a, v)?;
                    PointedMap::new(s.value(v), a.value(v), eta.images())
                        .map_err(|e| Error::InvalidMap(format!("unit at {}: {e}", a.reps()[v].label())))
                })
                .collect::<Result<Vec<_>>>()?;
            units.push(etas);
            mults.push(build_pairing(a, a, a, &frame.sums[c], |v, w| mult(a, v, w))?);
        }
        Ok(Self { frame, unit: units, mult: mults })
    }

    pub fn base(&self) -> &SpectrumBase {
        &self.frame.base
    }

    pub fn unit(&self, component: usize, v: usize) -> &PointedMap {
        &self.unit[component][v]
    }

    pub fn mult(&self, component: usize, v: usize, w: usize) -> Option<&PointedMap> {
        let r = self.frame.base.components()[component].reps().len();
        self.mult[component].get(v * r + w)?.as_ref()
    }

    pub fn swap_mult_images(&mut self, component: usize, v: usize, w: usize, i: usize, j: usize) -> Result<()> {
        let r = self.frame.base.components()[component].reps().len();
        swap_pairing(&mut self.mult[component], r, v, w, i, j)
    }

    /// Replaces a value of the base; used to build deliberately broken data.
    pub fn base_component_mut(&mut self, component: usize) -> &mut IGSpaceFin {
        self.frame.base.components_mut(component)
    }

    fn pairings(&self) -> Vec<Pairing<'_>> {
        let f = &self.frame;
        f.base
            .components()
            .iter()
            .enumerate()
            .map(|(c, a)| Pairing::new(a, a, a, &f.sums[c], &self.mult[c]))
            .collect()
    }
}

/// Naturality and equivariance of unit and multiplication, associativity,
/// two-sided unitality, and `η(a·b) = μ(η a ∧ η b)`.
pub fn check_lax(l: &LaxMonoidalData) -> Report {
    let mut report = Report::new();
    let f = &l.frame;
    match (&f.base, &f.sphere) {
        (SpectrumBase::Global(a), SpectrumBase::Global(s)) => {
            let eta = GlobalMap { components: l.unit.clone() };
            report.merge("lax.unit", check_global_map(&eta, s, a));
        }
        _ => {
            report.merge("", check_igspace_map("lax.unit", &l.unit[0], &f.sphere.components()[0], &f.base.components()[0]));
        }
    }

    let pairings = l.pairings();
    let concat = f.concat_pairings();
    let mut equivariance = Check::new("lax.mult.equivariance");
    let mut naturality = Check::new("lax.mult.naturality");
    let mut associativity = Check::new("lax.associativity");
    let mut unitality = Check::new("lax.unitality");
    let mut multiplicative = Check::new("lax.unit-multiplicative");
    for (c, p) in pairings.iter().enumerate() {
        p.equivariance(&mut equivariance);
        p.naturality(&mut naturality);
        p.associativity(p, &mut associativity);
        match f.zero(c) {
            Ok(zero) => {
                let one = l.unit[c][zero].apply(1);
                p.right_unit(zero, one, &mut unitality);
                p.left_unit(zero, one, &mut unitality);
            }
            Err(e) => {
                unitality.test(false, || json!({ "error": e.to_string() }));
            }
        }
        unit_multiplicative(p, &concat[c], &l.unit[c], &mut multiplicative);
    }
    report.push(equivariance);
    report.push(naturality);
    report.push(associativity);
    report.push(unitality);
    report.push(multiplicative);
    if let SpectrumBase::Global(a) = &f.base {
        let mut restriction = Check::new("lax.mult.restriction");
        pairing_restriction(a, a, a, &pairings, &mut restriction);
        report.push(restriction);
    }
    report
}

fn unit_multiplicative(mult: &Pairing, concat: &Pairing, eta: &[PointedMap], check: &mut Check) {
    let r = mult.r();
    for v in 0..r {
        for w in 0..r {
            let Some(s) = mult.sum(v, w) else { continue };
            let (sv, sw) = (concat.left.value(v), concat.left.value(w));
            let bad = sv.non_base().flat_map(|a| sw.non_base().map(move |b| (a, b))).find(|&(a, b)| {
                eta[s].apply(concat.apply(v, w, a, b)) != mult.apply(v, w, eta[v].apply(a), eta[w].apply(b))
            });
            check.test(bad.is_none(), || {
                let (a, b) = bad.unwrap_or_default();
                mult.witness(v, w, json!({ "point": [sv.label(a), sw.label(b)] }))
            });
        }
    }
}

/// `σ = μ ∘ (id ∧ η)`, provided the lax monoidal laws hold.
pub fn spectrum_from_lax(l: &LaxMonoidalData) -> Result<SpectrumStructure> {
    let report = check_lax(l);
    if !report.all_passed() {
        let failed: Vec<&str> = report.failures().map(|e| e.name.as_str()).collect();
        return Err(Error::CoherenceFailure(format!("lax monoidal laws fail: {}", failed.join(", "))));
    }
    let f = &l.frame;
    let components = f.base.components();
    let sphere = f.sphere.components();
    SpectrumStructure::new(f.base.clone(), |a, v, w| {
        let c = components.iter().position(|x| x.group_index() == a.group_index()).expect("component");
        let r = a.reps().len();
        let s = f.sums[c][v * r + w].expect("in-cap pair");
        let mu = l.mult[c][v * r + w].as_ref().expect("in-cap pair");
        let source = SmashLayout::new(a.value(v), sphere[c].value(w));
        let through = SmashLayout::new(a.value(v), a.value(w));
        let eta = &l.unit[c][w];
        let images = (0..source.len())
            .map(|p| match source.split(p) {
                None => a.value(s).basepoint(),
                Some((x, b)) => mu.apply(through.pair(x, eta.apply(b))),
            })
            .collect();
        Ok(PointedMap::from_images(images))
    })
}

/// The sphere with `σ` given by concatenating sign vectors.
pub fn sphere_spectrum(catalog: &Arc<SiteCatalog>) -> Result<SpectrumStructure> {
    let base = SpectrumBase::Global(global_sphere(catalog)?);
    let cap = catalog.dim_cap();
    SpectrumStructure::new(base, |a, v, w| sphere_smash_iso(&a.reps()[v], &a.reps()[w], cap))
}

/// The sphere over a single group.
pub fn sphere_spectrum_single(catalog: &Arc<SiteCatalog>, g: usize) -> Result<SpectrumStructure> {
    let base = SpectrumBase::Single(sphere_functor(catalog, g)?);
    let cap = catalog.dim_cap();
    SpectrumStructure::new(base, |a, v, w| sphere_smash_iso(&a.reps()[v], &a.reps()[w], cap))
}

/// Layout of `X₀ ∧ S(V)` as built by [`suspension`].
fn suspension_layout(x0: &PointedGSet, dim: usize) -> SmashLayout {
    SmashLayout::from_shapes(x0.len(), x0.basepoint(), 1 + (1 << dim), 0)
}

/// `V ↦ X₀ ∧ S(V)` with `σ((x ∧ a) ∧ b) = x ∧ (a, b)`.
pub fn suspension_spectrum(catalog: &Arc<SiteCatalog>, x0: &PointedGSet) -> Result<SpectrumStructure> {
    let base = SpectrumBase::Global(suspension(catalog, x0)?);
    SpectrumStructure::new(base, |a, v, w| {
        let (n, m) = (a.reps()[v].dim(), a.reps()[w].dim());
        let (lv, lvw) = (suspension_layout(x0, n), suspension_layout(x0, n + m));
        let outer = SmashLayout::from_shapes(lv.len(), 0, 1 + (1 << m), 0);
        let images = (0..outer.len())
            .map(|p| match outer.split(p) {
                None => 0,
                Some((q, b)) => {
                    let (x, s) = lv.split(q).expect("non-base");
                    lvw.pair(x, 1 + (((s - 1) << m) | (b - 1)))
                }
            })
            .collect();
        Ok(PointedMap::from_images(images))
    })
}

/// A finite set with a binary operation and a two-sided unit. Associativity
/// is not required here; the lax monoidal checks detect its absence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitalMagma {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

impl UnitalMagma {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 || unit >= n {
            return Err(Error::InvalidFunctor("magma needs a unit among its elements".into()));
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &x)| x >= n) {
                return Err(Error::EntryOutOfRange { row, col, value, order: n });
            }
        }
        if table.len() != n {
            return Err(Error::NotSquare { row: table.len(), len: table.len(), expected: n });
        }
        if (0..n).any(|a| table[unit][a] != a || table[a][unit] != a) {
            return Err(Error::NoIdentity);
        }
        Ok(Self { labels, table, unit })
    }

    pub fn from_group(group: &FiniteGroup) -> Self {
        Self { labels: group.labels().to_vec(), table: group.table().to_vec(), unit: group.identity() }
    }

    /// The magma with its basepoint adjoined.
    pub fn pointed(&self) -> Result<PointedGSet> {
        let e = Arc::new(FiniteGroup::trivial());
        let labels = std::iter::once("*".to_string()).chain(self.labels.iter().cloned()).collect();
        PointedGSet::trivial(e, labels, 0)
    }
}

/// The suspension of `M₊` with `η(a) = 1 ∧ a` and
/// `μ((m ∧ a) ∧ (m' ∧ b)) = mm' ∧ (a, b)`.
pub fn magma_lax(catalog: &Arc<SiteCatalog>, magma: &UnitalMagma) -> Result<LaxMonoidalData> {
    let x0 = magma.pointed()?;
    let base = SpectrumBase::Global(suspension(catalog, &x0)?);
    let one = 1 + magma.unit;
    LaxMonoidalData::new(
        base,
        |a, v| {
            let n = a.reps()[v].dim();
            let l = suspension_layout(&x0, n);
            Ok(PointedMap::from_images((0..1 + (1usize << n)).map(|s| l.pair(one, s)).collect()))
        },
        |a, v, w| {
            let (n, m) = (a.reps()[v].dim(), a.reps()[w].dim());
            let (lv, lw, lvw) = (suspension_layout(&x0, n), suspension_layout(&x0, m), suspension_layout(&x0, n + m));
            let outer = SmashLayout::from_shapes(lv.len(), 0, lw.len(), 0);
            let images = (0..outer.len())
                .map(|p| match outer.split(p) {
                    None => 0,
                    Some((q1, q2)) => {
                        let ((x, s), (y, t)) = (lv.split(q1).expect("non-base"), lw.split(q2).expect("non-base"));
                        let product = 1 + magma.table[x - 1][y - 1];
                        lvw.pair(product, 1 + (((s - 1) << m) | (t - 1)))
                    }
                })
                .collect();
            Ok(PointedMap::from_images(images))
        },
    )
}

/// The sphere with `η = id` and `μ` concatenation.
pub fn sphere_lax(catalog: &Arc<SiteCatalog>) -> Result<LaxMonoidalData> {
    let base = SpectrumBase::Global(global_sphere(catalog)?);
    let cap = catalog.dim_cap();
    LaxMonoidalData::new(
        base,
        |a, v| Ok(PointedMap::identity(a.value(v).len())),
        |a, v, w| sphere_smash_iso(&a.reps()[v], &a.reps()[w], cap),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::spectra::pointed_set;

    fn catalog() -> Arc<SiteCatalog> {
        Arc::new(SiteCatalog::standard_with_cap(2))
    }

    fn failing(report: &Report) -> Vec<String> {
        report.failures().map(|e| e.name.clone()).collect()
    }

    #[test]
    fn sphere_and_suspensions_are_spectra() {
        let catalog = catalog();
        let report = check_spectrum(&sphere_spectrum(&catalog).unwrap());
        assert!(report.all_passed(), "{}", report.to_text());
        assert_eq!(report.checks.len(), 5);
        for len in [2, 3, 4] {
            let report = check_spectrum(&suspension_spectrum(&catalog, &pointed_set(len)).unwrap());
            assert!(report.all_passed(), "{}", report.to_text());
        }
        let g = catalog.group_index("S3").unwrap();
        let report = check_spectrum(&sphere_spectrum_single(&catalog, g).unwrap());
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.entry("spectrum.restriction").is_none());
    }

    #[test]
    fn sphere_lax_data_recovers_concatenation() {
        let catalog = catalog();
        let lax = sphere_lax(&catalog).unwrap();
        let report = check_lax(&lax);
        assert!(report.all_passed(), "{}", report.to_text());
        let from_lax = spectrum_from_lax(&lax).unwrap();
        let direct = sphere_spectrum(&catalog).unwrap();
        for (c, a) in direct.base().components().iter().enumerate() {
            let r = a.reps().len();
            for v in 0..r {
                for w in 0..r {
                    assert_eq!(from_lax.sigma(c, v, w), direct.sigma(c, v, w));
                }
            }
        }
    }

    #[test]
    fn group_suspension_is_lax_monoidal() {
        let catalog = catalog();
        let magma = UnitalMagma::from_group(&FiniteGroup::cyclic(2));
        let lax = magma_lax(&catalog, &magma).unwrap();
        let report = check_lax(&lax);
        assert!(report.all_passed(), "{}", report.to_text());
        let spectrum = spectrum_from_lax(&lax).unwrap();
        assert!(check_spectrum(&spectrum).all_passed());
    }

    #[test]
    fn non_associative_multiplication_is_rejected() {
        let catalog = catalog();
        let labels = ["e", "a", "b"].map(String::from).to_vec();
        let magma = UnitalMagma::new(labels, vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 1]], 0).unwrap();
        let lax = magma_lax(&catalog, &magma).unwrap();
        assert_eq!(failing(&check_lax(&lax)), vec!["lax.associativity"]);
        assert!(matches!(spectrum_from_lax(&lax), Err(Error::CoherenceFailure(_))));
    }

    #[test]
    fn shifted_structure_map_is_detected() {
        let catalog = catalog();
        let mut s = sphere_spectrum(&catalog).unwrap();
        let g = catalog.group_index("C2").unwrap();
        let v = catalog.trivial_index(g, 1).unwrap();
        s.swap_sigma_images(g, v, v, 1, 2).unwrap();
        let report = check_spectrum(&s);
        let failed = failing(&report);
        assert!(failed.contains(&"spectrum.associativity".to_string()), "{failed:?}");
        assert!(failed.contains(&"spectrum.restriction".to_string()), "{failed:?}");
        assert_eq!(report.entry("spectrum.unit").unwrap().status, Status::Pass);
    }

    #[test]
    fn broken_multiplication_breaks_equivariance() {
        let catalog = catalog();
        let mut lax = sphere_lax(&catalog).unwrap();
        let g = catalog.group_index("C2").unwrap();
        let sign = (0..catalog.reps(g).len()).find(|&v| {
            let rep = catalog.rep(g, v);
            rep.dim() == 1 && !rep.is_trivial()
        });
        let v = sign.unwrap();
        let t = catalog.trivial_index(g, 1).unwrap();
        lax.swap_mult_images(g, v, t, 1, 2).unwrap();
        let failed = failing(&check_lax(&lax));
        assert!(failed.contains(&"lax.mult.equivariance".to_string()), "{failed:?}");
    }

    #[test]
    fn magma_validation() {
        let l = ["e", "a"].map(String::from).to_vec();
        assert!(UnitalMagma::new(l.clone(), vec![vec![0, 1], vec![1, 0]], 0).is_ok());
        assert!(matches!(UnitalMagma::new(l.clone(), vec![vec![0, 1], vec![0, 0]], 0), Err(Error::NoIdentity)));
        assert!(matches!(UnitalMagma::new(l, vec![vec![0, 1], vec![1, 5]], 0), Err(Error::EntryOutOfRange { .. })));
    }
}
