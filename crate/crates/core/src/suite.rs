//! Named verification suites over a catalog, with optional injected faults.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::functors::{check_global, check_global_map, check_igspace, GlobalMap, GlobalSpace};
use crate::gspaces::{check_top_fibration, smash, GSetCatalog};
use crate::kan::{check_adjunction, check_counit_naturality, check_ispace, check_ispace_adjunction, extend_global, extend_global_map, random_tower};
use crate::report::{Check, Report};
use crate::schema::{self, IsometryDef, LoadError};
use crate::site::{check_grothendieck, check_restriction_object, check_site_axioms, SiteCatalog};
use crate::spectra::{
    check_lax, check_spectrum, check_sphere_fixed_points, constant, global_sphere, magma_lax, pointed_set, sphere,
    sphere_lax, sphere_spectrum, spectrum_from_lax, suspension, suspension_spectrum, SpectrumStructure, UnitalMagma,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    SiteAxioms,
    Fibration,
    TopFibration,
    Grothendieck,
    Functor,
    Global,
    Adjunction,
    Triangles,
    Spectrum,
    SphereFixedPoints,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        Self::SiteAxioms,
        Self::Fibration,
        Self::TopFibration,
        Self::Grothendieck,
        Self::Functor,
        Self::Global,
        Self::Adjunction,
        Self::Triangles,
        Self::Spectrum,
        Self::SphereFixedPoints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SiteAxioms => "site-axioms",
            Self::Fibration => "fibration",
            Self::TopFibration => "top-fibration",
            Self::Grothendieck => "grothendieck",
            Self::Functor => "functor",
            Self::Global => "global",
            Self::Adjunction => "adjunction",
            Self::Triangles => "triangles",
            Self::Spectrum => "spectrum",
            Self::SphereFixedPoints => "sphere-fixed-points",
        }
    }
}

/// A magma given by element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagmaDef {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub unit: String,
}

impl MagmaDef {
    pub fn build(&self) -> Result<UnitalMagma> {
        let index = |l: &String| {
            self.elements.iter().position(|e| e == l).ok_or_else(|| Error::Unknown { kind: "magma element", name: l.clone() })
        };
        let table = self.table.iter().map(|row| row.iter().map(index).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        UnitalMagma::new(self.elements.clone(), table, index(&self.unit)?)
    }
}

/// A deliberate corruption of one of the suite's built-in instances. Point
/// names refer to the source of the map whose two images are exchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FaultDef {
    /// A restriction isomorphism of the global sphere.
    SwapRestriction { hom: String, rep: String, points: [String; 2] },
    /// A morphism image of the sphere over one group.
    SwapMorphism { group: String, source: String, target: String, isometry: IsometryDef, points: [String; 2] },
    /// A component of the identity map of the global sphere.
    SwapGlobalMap { group: String, rep: String, points: [String; 2] },
    /// A structure map of the sphere spectrum.
    SwapSigma { group: String, left: String, right: String, points: [String; 2] },
    /// Replaces the multiplication used for the suspension ring.
    Multiplication { magma: MagmaDef },
}

/// Everything a suite run needs, resolved from files.
#[derive(Debug, Clone)]
pub struct SuiteInput {
    pub catalog: Arc<SiteCatalog>,
    pub gsets: GSetCatalog,
    pub suites: Vec<SuiteName>,
    pub seed: u64,
    pub instance_count: usize,
    pub faults: Vec<FaultDef>,
}

/// Reads a suite configuration. Malformed files are errors; files that are
/// well formed but describe invalid structure become failing report entries.
pub fn run_config(path: &Path, seed: Option<u64>) -> Result<Report, LoadError> {
    let doc = schema::read_suite(path)?;
    let seed = seed.unwrap_or(doc.seed);
    let mut failed = Report::new();
    let catalog = match schema::read_catalog(&schema::relative_to(path, &doc.catalog)) {
        Ok(c) => Some(c),
        Err(LoadError::Invalid { source, .. }) => {
            failed.push_error("input.catalog", &source);
            None
        }
        Err(e) => return Err(e),
    };
    let gsets = match &doc.gsets {
        None => Some(GSetCatalog::standard()),
        Some(p) => match schema::read_gsets(&schema::relative_to(path, p)) {
            Ok(g) => Some(g),
            Err(LoadError::Invalid { source, .. }) => {
                failed.push_error("input.gsets", &source);
                None
            }
            Err(e) => return Err(e),
        },
    };
    let (Some(catalog), Some(gsets)) = (catalog, gsets) else {
        failed.seed = Some(seed);
        return Ok(failed);
    };
    let input = SuiteInput {
        catalog: Arc::new(catalog),
        gsets,
        suites: doc.suites,
        seed,
        instance_count: doc.instance_count,
        faults: doc.faults,
    };
    Ok(run(&input))
}

/// Runs the selected suites. Entries are named `suite.instance.law` and
/// sorted, so the report depends only on the input.
pub fn run(input: &SuiteInput) -> Report {
    let mut selected = input.suites.clone();
    selected.sort();
    selected.dedup();
    let mut jobs: Vec<Vec<SuiteName>> = Vec::new();
    for &s in &selected {
        match s {
            SuiteName::Triangles if selected.contains(&SuiteName::Adjunction) => {}
            SuiteName::Adjunction if selected.contains(&SuiteName::Triangles) => {
                jobs.push(vec![SuiteName::Adjunction, SuiteName::Triangles])
            }
            s => jobs.push(vec![s]),
        }
    }
    let parts: Vec<Vec<(SuiteName, Report)>> = jobs.par_iter().map(|job| run_job(input, job)).collect();
    let mut report = Report::new();
    for (name, part) in parts.into_iter().flatten() {
        report.merge(name.name(), part);
    }
    report.sort();
    report.seed = Some(input.seed);
    report
}

fn run_job(input: &SuiteInput, job: &[SuiteName]) -> Vec<(SuiteName, Report)> {
    let catalog = &input.catalog;
    let single = |r: Report| vec![(job[0], r)];
    match job[0] {
        SuiteName::SiteAxioms => single(check_site_axioms(catalog)),
        SuiteName::Fibration => single(check_restriction_object(catalog)),
        SuiteName::Grothendieck => single(check_grothendieck(catalog)),
        SuiteName::TopFibration => single(check_top_fibration(&input.gsets)),
        SuiteName::SphereFixedPoints => single(check_sphere_fixed_points(catalog)),
        SuiteName::Functor => single(guarded(|| functor_suite(input))),
        SuiteName::Global => single(guarded(|| global_suite(input))),
        SuiteName::Spectrum => single(guarded(|| spectrum_suite(input))),
        SuiteName::Adjunction | SuiteName::Triangles => {
            let all = guarded(|| adjunction_family(input));
            let (mut adjunction, mut triangles) = (Report::new(), Report::new());
            for e in all.checks {
                if e.name.split('.').any(|part| part == "triangle") {
                    triangles.push_entry(e);
                } else {
                    adjunction.push_entry(e);
                }
            }
            job.iter()
                .map(|&s| (s, if s == SuiteName::Triangles { std::mem::take(&mut triangles) } else { std::mem::take(&mut adjunction) }))
                .collect()
        }
    }
}

/// Turns a construction error into a failing entry.
fn guarded(body: impl FnOnce() -> Result<Report>) -> Report {
    body().unwrap_or_else(|e| {
        let mut r = Report::new();
        r.push_error("construction", &e);
        r
    })
}

/// Merges entries that share a name after `rename`.
fn fold(report: Report, rename: impl Fn(&str) -> String) -> Report {
    let mut checks: BTreeMap<String, Check> = BTreeMap::new();
    for e in report.checks {
        let name = rename(&e.name);
        checks.entry(name.clone()).or_insert_with(|| Check::new(name)).absorb(e);
    }
    let mut out = Report::new();
    for c in checks.into_values() {
        out.push(c);
    }
    out
}

/// Drops the `component.<group>.` part of a name.
fn without_component(name: &str) -> String {
    match name.strip_prefix("component.") {
        Some(rest) => format!("component.{}", rest.split_once('.').map_or(rest, |(_, tail)| tail)),
        None => name.to_string(),
    }
}

fn point_pair(x: &crate::gspaces::PointedGSet, points: &[String; 2]) -> Result<(usize, usize)> {
    let find = |l: &String| x.index_of(l).ok_or_else(|| Error::Unknown { kind: "point", name: l.clone() });
    Ok((find(&points[0])?, find(&points[1])?))
}

fn hom_index(catalog: &SiteCatalog, name: &str) -> Result<usize> {
    catalog.hom_index(name).ok_or_else(|| Error::Unknown { kind: "hom", name: name.into() })
}

/// The global test functors, with any faults applied to the sphere.
struct Instances {
    list: Vec<(String, GlobalSpace)>,
    sphere_map: GlobalMap,
}

impl Instances {
    fn new(input: &SuiteInput) -> Result<Self> {
        let catalog = &input.catalog;
        let mut sphere = global_sphere(catalog)?;
        let mut sphere_map = GlobalMap::identity(&sphere);
        for fault in &input.faults {
            match fault {
                FaultDef::SwapRestriction { hom, rep, points } => {
                    let h = hom_index(catalog, hom)?;
                    let target = catalog.hom(h).target;
                    let v = catalog.rep_by_label(target, rep)?;
                    let (i, j) = point_pair(sphere.component(target).value(v), points)?;
                    sphere.swap_restriction_images(h, v, i, j)?;
                }
                FaultDef::SwapMorphism { group, source, target, isometry, points } => {
                    let g = catalog.group_by_name(group)?;
                    let (v, w) = (catalog.rep_by_label(g, source)?, catalog.rep_by_label(g, target)?);
                    let f = isometry.build()?.rank();
                    let (i, j) = point_pair(sphere.component(g).value(v), points)?;
                    sphere.component_mut(g).swap_morphism_images(v, w, f, i, j)?;
                }
                FaultDef::SwapGlobalMap { group, rep, points } => {
                    let g = catalog.group_by_name(group)?;
                    let v = catalog.rep_by_label(g, rep)?;
                    let (i, j) = point_pair(sphere.component(g).value(v), points)?;
                    sphere_map.swap_images(g, v, i, j)?;
                }
                FaultDef::SwapSigma { .. } | FaultDef::Multiplication { .. } => {}
            }
        }
        let mut list = vec![("sphere".to_string(), sphere), ("constant".to_string(), constant(catalog, &pointed_set(3))?)];
        for len in [2, 3, 4] {
            list.push((format!("suspension-{len}"), suspension(catalog, &pointed_set(len))?));
        }
        Ok(Self { list, sphere_map })
    }

    fn sphere(&self) -> &GlobalSpace {
        &self.list[0].1
    }
}

fn functor_suite(input: &SuiteInput) -> Result<Report> {
    let instances = Instances::new(input)?;
    let mut report = Report::new();
    for (name, a) in &instances.list {
        let mut per_group = Report::new();
        for c in a.components() {
            per_group.merge("", check_igspace(c));
        }
        report.merge(name, fold(per_group, str::to_string));
    }
    Ok(report)
}

fn global_suite(input: &SuiteInput) -> Result<Report> {
    let instances = Instances::new(input)?;
    let mut report = Report::new();
    for (name, a) in &instances.list {
        report.merge(name, fold(check_global(a), without_component));
    }
    let sphere = instances.sphere();
    report.merge("sphere-identity-map", check_global_map(&instances.sphere_map, sphere, sphere));
    Ok(report)
}

fn adjunction_family(input: &SuiteInput) -> Result<Report> {
    let catalog = &input.catalog;
    let instances = Instances::new(input)?;
    let mut report = Report::new();
    for (name, a) in &instances.list {
        report.merge(name, guarded(|| check_adjunction(a)));
    }

    let e = catalog.trivial_group().ok_or_else(|| Error::CatalogIncomplete("no trivial group".into()))?;
    let trivial = catalog.group(e).clone();
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    let mut random = Report::new();
    let mut functoriality = Check::new("extension-functoriality");
    let mut generated = Check::new("instances");
    let mut made = 0;
    while made < input.instance_count {
        let (spaces, maps) = random_tower(&mut rng, &trivial, catalog.dim_cap(), 5, 3);
        made += spaces.len();
        let mut extensions = Vec::with_capacity(spaces.len());
        for x in &spaces {
            generated.test(true, || json!(null));
            random.merge("ispace", check_ispace(x));
            random.merge("", check_ispace_adjunction(x, catalog)?);
            extensions.push(extend_global(x, catalog)?);
        }
        let extended: Vec<GlobalMap> =
            maps.iter().enumerate().map(|(i, f)| extend_global_map(f, &extensions[i], &extensions[i + 1])).collect();
        for (i, ef) in extended.iter().enumerate() {
            let (source, target) = (&extensions[i].space, &extensions[i + 1].space);
            random.merge("extended-map", check_global_map(ef, source, target));
            random.merge("", check_counit_naturality(ef, source, target)?);
        }
        let composite = maps[1].after(&maps[0]);
        let direct = extend_global_map(&composite, &extensions[0], &extensions[2]);
        let stepwise = extended[1].after(&extended[0]);
        functoriality.test(direct == stepwise, || json!({ "tower": made }));
    }
    random.push(functoriality);
    random.push(generated);
    report.merge("random", fold(random, str::to_string));
    Ok(report)
}

fn spectrum_suite(input: &SuiteInput) -> Result<Report> {
    let catalog = &input.catalog;
    let mut report = Report::new();

    let mut sphere = sphere_spectrum(catalog)?;
    for fault in &input.faults {
        if let FaultDef::SwapSigma { group, left, right, points } = fault {
            let g = catalog.group_by_name(group)?;
            let (v, w) = (catalog.rep_by_label(g, left)?, catalog.rep_by_label(g, right)?);
            let source = smash(&crate::spectra::sphere(catalog.rep(g, v)), &sphere_value(catalog, g, w))?;
            let (i, j) = point_pair(&source, points)?;
            sphere.swap_sigma_images(g, v, w, i, j)?;
        }
    }
    report.merge("sphere", check_spectrum(&sphere));
    for len in [2, 3, 4] {
        report.merge(&format!("suspension-{len}"), check_spectrum(&suspension_spectrum(catalog, &pointed_set(len))?));
    }

    let lax = sphere_lax(catalog)?;
    report.merge("sphere-lax", check_lax(&lax));
    let mut recovers = Check::new("sphere-lax.recovers-concatenation");
    match spectrum_from_lax(&lax) {
        Ok(derived) => {
            let reference = sphere_spectrum(catalog)?;
            compare_sigma(&derived, &reference, &mut recovers);
        }
        Err(e) => {
            recovers.test(false, || json!({ "error": e.to_string() }));
        }
    }
    report.push(recovers);

    let mut magma = UnitalMagma::from_group(&crate::algebra::FiniteGroup::cyclic(2));
    for fault in &input.faults {
        if let FaultDef::Multiplication { magma: def } = fault {
            magma = def.build()?;
        }
    }
    let lax = magma_lax(catalog, &magma)?;
    report.merge("ring", check_lax(&lax));
    match spectrum_from_lax(&lax) {
        Ok(s) => report.merge("ring.spectrum", check_spectrum(&s)),
        Err(e) => report.push_error("ring.from-lax", &e),
    }
    Ok(report)
}

fn sphere_value(catalog: &SiteCatalog, g: usize, v: usize) -> crate::gspaces::PointedGSet {
    sphere(catalog.rep(g, v))
}

fn compare_sigma(a: &SpectrumStructure, b: &SpectrumStructure, check: &mut Check) {
    for (c, comp) in a.base().components().iter().enumerate() {
        let r = comp.reps().len();
        for v in 0..r {
            for w in 0..r {
                check.test(a.sigma(c, v, w) == b.sigma(c, v, w), || {
                    json!({ "group": comp.group().name(), "left": comp.reps()[v].label(), "right": comp.reps()[w].label() })
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn input(suites: Vec<SuiteName>, faults: Vec<FaultDef>) -> SuiteInput {
        SuiteInput {
            catalog: Arc::new(SiteCatalog::standard_with_cap(2)),
            gsets: GSetCatalog::standard(),
            suites,
            seed: 3,
            instance_count: 6,
            faults,
        }
    }

    #[test]
    fn every_suite_passes_on_the_standard_catalog() {
        let report = run(&input(SuiteName::ALL.to_vec(), Vec::new()));
        assert!(report.all_passed(), "{}", report.to_text());
        for s in SuiteName::ALL {
            assert!(report.checks.iter().any(|e| e.name.starts_with(&format!("{}.", s.name()))), "{}", s.name());
        }
        assert!(report.entry("triangles.sphere.triangle.extension").is_some());
        assert!(report.entry("adjunction.random.unit.bijection").is_some());
    }

    #[test]
    fn empty_selection_records_nothing() {
        let report = run(&input(Vec::new(), Vec::new()));
        assert!(report.checks.is_empty());
        assert_eq!(report.seed, Some(3));
    }

    #[test]
    fn same_seed_same_report() {
        let a = run(&input(vec![SuiteName::Adjunction], Vec::new())).to_json();
        let b = run(&input(vec![SuiteName::Adjunction], Vec::new())).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn global_map_fault_is_reported() {
        let fault = FaultDef::SwapGlobalMap { group: "C2".into(), rep: "sign+triv1".into(), points: ["++".into(), "+-".into()] };
        let report = run(&input(vec![SuiteName::Global], vec![fault]));
        let failed: Vec<&str> = report.failures().map(|e| e.name.as_str()).collect();
        assert!(failed.iter().all(|n| n.starts_with("global.sphere-identity-map.")), "{failed:?}");
        let entry = report.entry("global.sphere-identity-map.global-map.equivariance").unwrap();
        assert_eq!(entry.status, Status::Fail);
        assert!(entry.witness.is_some());
    }

    #[test]
    fn unknown_fault_targets_are_reported() {
        let fault = FaultDef::SwapGlobalMap { group: "C7".into(), rep: "sign".into(), points: ["+".into(), "-".into()] };
        let report = run(&input(vec![SuiteName::Global], vec![fault]));
        assert_eq!(report.failures().count(), 1);
    }
}
