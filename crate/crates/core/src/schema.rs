//! JSON documents: catalogs, pointed G-set collections, I-spaces, functor
//! bundles and suite configurations.
//!
//! Every document is an object with a `kind` field. Reading distinguishes
//! malformed input (bad JSON, wrong shape) from well-formed input that
//! describes invalid structure; the two map to different exit codes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{hyperoctahedral, FiniteGroup, GroupHom, SignedPerm};
use crate::error::{Error, Result};
use crate::functors::IGSpaceFin;
use crate::gspaces::{GSetCatalog, NamedGSet, PointedGSet, PointedMap};
use crate::kan::{Extension, ISpaceFin};
use crate::site::{Rep, SiteCatalog};
use crate::suite::{FaultDef, SuiteName};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: cannot read: {message}")]
    Io { path: String, message: String },
    #[error("{path}: malformed JSON: {message}")]
    Syntax { path: String, message: String },
    #[error("{path}: schema violation at {pointer}: {message}")]
    Schema { path: String, pointer: String, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: Error,
    },
}

impl LoadError {
    /// `1` for invalid structure, `2` for unreadable or malformed input.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Invalid { .. } => 1,
            _ => 2,
        }
    }

    fn invalid(path: &Path, source: Error) -> Self {
        Self::Invalid { path: path.display().to_string(), source }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Catalog,
    Gsets,
    Ispace,
    Bundle,
    Suite,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Catalog(CatalogDoc),
    GSets(GSetsDoc),
    ISpace(ISpaceDoc),
    Bundle(BundleDoc),
    Suite(SuiteDoc),
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for segment in path.iter() {
        out.push('/');
        match segment {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn typed<T: serde::de::DeserializeOwned>(path: &Path, value: Value) -> Result<T, LoadError> {
    serde_path_to_error::deserialize(value).map_err(|e| LoadError::Schema {
        path: path.display().to_string(),
        pointer: pointer(e.path()),
        message: e.inner().to_string(),
    })
}

/// Reads a document of any kind.
pub fn read_document(path: &Path) -> Result<Document, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io { path: shown.clone(), message: e.to_string() })?;
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| LoadError::Syntax { path: shown.clone(), message: e.to_string() })?;
    let schema = |pointer: &str, message: &str| LoadError::Schema {
        path: shown.clone(),
        pointer: pointer.to_string(),
        message: message.to_string(),
    };
    let object = value.as_object_mut().ok_or_else(|| schema("", "expected an object"))?;
    let kind = object.remove("kind").ok_or_else(|| schema("/kind", "missing field `kind`"))?;
    let kind: Kind = serde_json::from_value(kind).map_err(|e| schema("/kind", &e.to_string()))?;
    Ok(match kind {
        Kind::Catalog => Document::Catalog(typed(path, value)?),
        Kind::Gsets => Document::GSets(typed(path, value)?),
        Kind::Ispace => Document::ISpace(typed(path, value)?),
        Kind::Bundle => Document::Bundle(typed(path, value)?),
        Kind::Suite => Document::Suite(typed(path, value)?),
    })
}

fn read_kind<T>(path: &Path, pick: impl FnOnce(Document) -> Option<T>, expected: &str) -> Result<T, LoadError> {
    let doc = read_document(path)?;
    pick(doc).ok_or_else(|| LoadError::Schema {
        path: path.display().to_string(),
        pointer: "/kind".into(),
        message: format!("expected a {expected} document"),
    })
}

/// Serializes a document with its `kind` tag, pretty-printed.
pub fn to_json_string<T: Serialize>(kind: Kind, doc: &T) -> String {
    let mut value = serde_json::to_value(doc).expect("documents serialize");
    if let Value::Object(o) = &mut value {
        let mut tagged = serde_json::Map::new();
        tagged.insert("kind".into(), serde_json::to_value(kind).expect("kind serializes"));
        tagged.extend(std::mem::take(o));
        *o = tagged;
    }
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

/// A group by element labels and a multiplication table over them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

fn element(group: &FiniteGroup, label: &str) -> Result<usize> {
    group.element_by_label(label).ok_or_else(|| Error::Unknown { kind: "group element", name: format!("{}:{label}", group.name()) })
}

impl GroupDef {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            name: g.name().to_string(),
            elements: g.labels().to_vec(),
            table: g.table().iter().map(|row| row.iter().map(|&x| g.label(x).to_string()).collect()).collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let index = |l: &String| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| Error::Unknown { kind: "group element", name: format!("{}:{l}", self.name) })
        };
        let table = self.table.iter().map(|row| row.iter().map(index).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_table(self.name.clone(), table)?.with_labels(self.elements.clone())
    }
}

/// Groups by name, as built from a document.
struct Groups(Vec<Arc<FiniteGroup>>);

impl Groups {
    fn build(defs: &[GroupDef]) -> Result<Self> {
        Ok(Self(defs.iter().map(|d| d.build().map(Arc::new)).collect::<Result<_>>()?))
    }

    fn get(&self, name: &str) -> Result<&Arc<FiniteGroup>> {
        self.0.iter().find(|g| g.name() == name).ok_or_else(|| Error::Unknown { kind: "group", name: name.into() })
    }

    fn homs(&self, all: bool, defs: &[HomDef]) -> Result<Vec<GroupHom>> {
        if all && !defs.is_empty() {
            return Err(Error::InvalidCatalog("`all_homs` excludes an explicit hom list".into()));
        }
        if all {
            return Ok(SiteCatalog::all_homs(&self.0));
        }
        defs.iter().map(|d| d.build(self)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub image: Vec<String>,
}

impl HomDef {
    pub fn from_hom(h: &GroupHom) -> Self {
        Self {
            name: h.name().to_string(),
            source: h.source().name().to_string(),
            target: h.target().name().to_string(),
            image: h.image().iter().map(|&x| h.target().label(x).to_string()).collect(),
        }
    }

    fn build(&self, groups: &Groups) -> Result<GroupHom> {
        let (source, target) = (groups.get(&self.source)?, groups.get(&self.target)?);
        let image = self.image.iter().map(|l| element(target, l)).collect::<Result<Vec<_>>>()?;
        GroupHom::new(self.name.clone(), source.clone(), target.clone(), image)
    }
}

/// A signed permutation: coordinate `i` goes to `perm[i]` with sign `signs[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryDef {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
}

impl IsometryDef {
    pub fn from_perm(f: &SignedPerm) -> Self {
        Self { perm: f.perm().to_vec(), signs: f.signs().iter().map(|s| s.to_i64()).collect() }
    }

    pub fn build(&self) -> Result<SignedPerm> {
        SignedPerm::from_ints(&self.perm, &self.signs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDef {
    pub group: String,
    pub label: String,
    pub dim: usize,
    pub rho: BTreeMap<String, IsometryDef>,
}

impl RepDef {
    pub fn from_rep(v: &Rep) -> Self {
        let g = v.group();
        Self {
            group: g.name().to_string(),
            label: v.label().to_string(),
            dim: v.dim(),
            rho: g.elements().map(|a| (g.label(a).to_string(), IsometryDef::from_perm(v.rho(a)))).collect(),
        }
    }

    fn build(&self, groups: &Groups) -> Result<Rep> {
        let group = groups.get(&self.group)?;
        build_rep(group, &self.label, self.dim, &self.rho)
    }
}

fn build_rep(group: &Arc<FiniteGroup>, label: &str, dim: usize, rho: &BTreeMap<String, IsometryDef>) -> Result<Rep> {
    if let Some(extra) = rho.keys().find(|l| group.element_by_label(l).is_none()) {
        return Err(Error::Unknown { kind: "group element", name: format!("{}:{extra}", group.name()) });
    }
    let matrices = group
        .labels()
        .iter()
        .map(|l| {
            rho.get(l)
                .ok_or_else(|| Error::InvalidRep { label: label.into(), reason: format!("no matrix for element {l}") })?
                .build()
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::new(group.clone(), label, dim, matrices)
}

/// A site catalog. With `close` the representations are seeds, closed under
/// restriction and direct sums; otherwise they are the full list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub dim_cap: usize,
    pub groups: Vec<GroupDef>,
    #[serde(default)]
    pub all_homs: bool,
    #[serde(default)]
    pub homs: Vec<HomDef>,
    pub reps: Vec<RepDef>,
    #[serde(default)]
    pub close: bool,
}

impl CatalogDoc {
    /// Every group, hom and representation listed explicitly.
    pub fn from_catalog(c: &SiteCatalog) -> Self {
        Self {
            dim_cap: c.dim_cap(),
            groups: c.groups().iter().map(|g| GroupDef::from_group(g)).collect(),
            all_homs: false,
            homs: c.homs().iter().map(|h| HomDef::from_hom(&h.hom)).collect(),
            reps: (0..c.groups().len()).flat_map(|g| c.reps(g).iter().map(RepDef::from_rep)).collect(),
            close: false,
        }
    }

    /// The seed form of the shipped catalog.
    pub fn standard_seeds(dim_cap: usize) -> Self {
        let groups = SiteCatalog::standard_groups();
        Self {
            dim_cap,
            groups: groups.iter().map(|g| GroupDef::from_group(g)).collect(),
            all_homs: true,
            homs: Vec::new(),
            reps: SiteCatalog::standard_seeds(&groups, dim_cap).iter().map(RepDef::from_rep).collect(),
            close: true,
        }
    }

    pub fn build(&self) -> Result<SiteCatalog> {
        let groups = Groups::build(&self.groups)?;
        let homs = groups.homs(self.all_homs, &self.homs)?;
        let reps = self.reps.iter().map(|r| r.build(&groups)).collect::<Result<Vec<_>>>()?;
        if self.close {
            SiteCatalog::closed(self.dim_cap, groups.0, homs, reps)
        } else {
            SiteCatalog::new(self.dim_cap, groups.0, homs, reps)
        }
    }
}

/// The points of a pointed G-set and the images of each point under some
/// group elements; the rest of the action is generated. An empty action is
/// the trivial one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDef {
    pub elements: Vec<String>,
    pub basepoint: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<String>>,
}

fn point(x: &PointedGSet, label: &str) -> Result<usize> {
    x.index_of(label).ok_or_else(|| Error::Unknown { kind: "point", name: label.into() })
}

fn points(x: &PointedGSet, labels: &[String]) -> Result<Vec<usize>> {
    labels.iter().map(|l| point(x, l)).collect()
}

impl ValueDef {
    pub fn from_gset(x: &PointedGSet) -> Self {
        let g = x.group();
        let action = if x.is_trivial_action() {
            BTreeMap::new()
        } else {
            g.elements()
                .filter(|&a| a != g.identity())
                .map(|a| (g.label(a).to_string(), (0..x.len()).map(|p| x.label(x.act(a, p)).to_string()).collect()))
                .collect()
        };
        Self { elements: x.labels().to_vec(), basepoint: x.label(x.basepoint()).to_string(), action }
    }

    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<PointedGSet> {
        let base = self
            .elements
            .iter()
            .position(|e| *e == self.basepoint)
            .ok_or_else(|| Error::Unknown { kind: "point", name: self.basepoint.clone() })?;
        if self.action.is_empty() {
            return PointedGSet::trivial(group.clone(), self.elements.clone(), base);
        }
        let bare = PointedGSet::trivial(Arc::new(FiniteGroup::trivial()), self.elements.clone(), base)?;
        let generators = self
            .action
            .iter()
            .map(|(g, images)| Ok((element(group, g)?, points(&bare, images)?)))
            .collect::<Result<Vec<_>>>()?;
        PointedGSet::from_generators(group.clone(), self.elements.clone(), base, &generators)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetDef {
    pub name: String,
    pub group: String,
    pub elements: Vec<String>,
    pub basepoint: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<String>>,
}

/// Pointed G-sets over a family of groups and homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetsDoc {
    pub groups: Vec<GroupDef>,
    #[serde(default)]
    pub all_homs: bool,
    #[serde(default)]
    pub homs: Vec<HomDef>,
    pub sets: Vec<GSetDef>,
}

impl GSetsDoc {
    pub fn from_catalog(c: &GSetCatalog) -> Self {
        Self {
            groups: c.groups.iter().map(|g| GroupDef::from_group(g)).collect(),
            all_homs: false,
            homs: c.homs.iter().map(HomDef::from_hom).collect(),
            sets: c
                .sets
                .iter()
                .map(|s| {
                    let v = ValueDef::from_gset(&s.set);
                    GSetDef {
                        name: s.name.clone(),
                        group: s.set.group().name().to_string(),
                        elements: v.elements,
                        basepoint: v.basepoint,
                        action: v.action,
                    }
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<GSetCatalog> {
        let groups = Groups::build(&self.groups)?;
        let homs = groups.homs(self.all_homs, &self.homs)?;
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let value = ValueDef { elements: s.elements.clone(), basepoint: s.basepoint.clone(), action: s.action.clone() };
                Ok(NamedGSet { name: s.name.clone(), set: value.build(groups.get(&s.group)?)? })
            })
            .collect::<Result<Vec<_>>>()?;
        GSetCatalog::new(groups.0, homs, sets)
    }
}

/// The image of every point under one isometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub images: Vec<String>,
}

impl MorphismDef {
    fn new(f: &SignedPerm, target: &PointedGSet, images: &[u32]) -> Self {
        let iso = IsometryDef::from_perm(f);
        Self { perm: iso.perm, signs: iso.signs, images: images.iter().map(|&y| target.label(y as usize).to_string()).collect() }
    }
}

/// The action of `B_n` on one set, generated from the listed isometries.
/// Fails if the listed images are inconsistent with the group law or do not
/// reach every isometry.
fn generate_action(n: usize, x: &PointedGSet, defs: &[MorphismDef]) -> Result<Vec<PointedMap>> {
    let b = hyperoctahedral(n);
    let mut given = Vec::with_capacity(defs.len());
    for d in defs {
        let f = IsometryDef { perm: d.perm.clone(), signs: d.signs.clone() }.build()?;
        if f.dim() != n {
            return Err(Error::DimMismatch { left: f.dim(), right: n });
        }
        let images = points(x, &d.images)?;
        if images.len() != x.len() {
            return Err(Error::InvalidMap(format!("{} images for {} points", images.len(), x.len())));
        }
        given.push((f.rank(), PointedMap::from_images(images)));
    }
    let mut table: Vec<Option<PointedMap>> = vec![None; b.len()];
    table[0] = Some(PointedMap::identity(x.len()));
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let t = queue[i];
        let current = table[t].clone().expect("visited");
        for (g, image) in &given {
            let u = b.mul(*g, t);
            let composed = image.after(&current);
            match &table[u] {
                Some(existing) if *existing != composed => {
                    return Err(Error::CoherenceFailure(format!(
                        "isometry images are inconsistent at {:?} in dimension {n}",
                        b.element(u)
                    )));
                }
                Some(_) => {}
                None => {
                    table[u] = Some(composed);
                    queue.push(u);
                }
            }
        }
        i += 1;
    }
    table
        .into_iter()
        .enumerate()
        .map(|(t, m)| m.ok_or_else(|| Error::CoverageGap(format!("isometry {:?} is not generated", b.element(t)))))
        .collect()
}

fn generator_defs(n: usize, x: &PointedGSet, image: impl Fn(usize) -> Vec<u32>) -> Vec<MorphismDef> {
    let b = hyperoctahedral(n);
    b.generators().map(|t| MorphismDef::new(b.element(t), x, &image(t))).collect()
}

/// A functor on trivial representations of dimension `0..=dim_cap`, over the
/// trivial group unless `group` is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ISpaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDef>,
    pub dim_cap: usize,
    pub values: Vec<ValueDef>,
    pub morphisms: Vec<Vec<MorphismDef>>,
}

impl ISpaceDoc {
    pub fn from_ispace(x: &ISpaceFin) -> Self {
        let group = (!x.group().is_trivial()).then(|| GroupDef::from_group(x.group()));
        Self {
            group,
            dim_cap: x.dim_cap(),
            values: x.values().iter().map(ValueDef::from_gset).collect(),
            morphisms: (0..=x.dim_cap()).map(|n| generator_defs(n, x.value(n), |t| x.morphism(n, t).to_vec())).collect(),
        }
    }

    pub fn build(&self) -> Result<ISpaceFin> {
        let group = Arc::new(match &self.group {
            Some(g) => g.build()?,
            None => FiniteGroup::trivial(),
        });
        if self.values.len() != self.dim_cap + 1 || self.morphisms.len() != self.dim_cap + 1 {
            return Err(Error::CoverageGap(format!("expected values and morphisms for dimensions 0..={}", self.dim_cap)));
        }
        let values = self.values.iter().map(|v| v.build(&group)).collect::<Result<Vec<_>>>()?;
        let tables = (0..=self.dim_cap).map(|n| generate_action(n, &values[n], &self.morphisms[n])).collect::<Result<_>>()?;
        ISpaceFin::from_tables(group, values, tables)
    }
}

/// Canonical representative of one class of a Kan extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDef {
    pub label: String,
    pub isometry: String,
    pub point: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDef {
    pub rep: String,
    pub value: ValueDef,
    /// Images of the points of the value at the trivial representation of
    /// the same dimension under the identity frame.
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassDef>>,
}

/// A natural isomorphism, as the images of every point at every object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDef {
    pub against: String,
    pub iso: Option<BTreeMap<String, Vec<String>>>,
}

/// A functor over one group, self-contained: the group, its
/// representations, every value, the frame maps out of the trivial
/// representations, and the isometry action on the trivial values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub group: GroupDef,
    pub dim_cap: usize,
    pub reps: Vec<RepDef>,
    pub isometries: Vec<Vec<MorphismDef>>,
    pub objects: Vec<ObjectDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateDef>,
}

impl BundleDoc {
    pub fn from_functor(a: &IGSpaceFin, extension: Option<&Extension>) -> Result<Self> {
        let catalog = a.catalog();
        let g = a.group_index();
        let reps = a.reps();
        let trivial = |n: usize| {
            catalog
                .trivial_index(g, n)
                .ok_or_else(|| Error::CatalogIncomplete(format!("no trivial representation of dimension {n}")))
        };
        let isometries = (0..=catalog.dim_cap())
            .map(|n| {
                let r = trivial(n)?;
                Ok(generator_defs(n, a.value(r), |t| a.morphism(r, r, t).to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        let objects = reps
            .iter()
            .enumerate()
            .map(|(v, rep)| {
                let r = trivial(rep.dim())?;
                let classes = extension.map(|e| {
                    let k = &e.classes[v];
                    k.classes()
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| c != k.value().basepoint())
                        .map(|(c, &(s, x))| ClassDef {
                            label: k.value().label(c).to_string(),
                            isometry: format!("{:?}", SignedPerm::unrank(rep.dim(), s)),
                            point: k.source_label(x).to_string(),
                        })
                        .collect()
                });
                Ok(ObjectDef {
                    rep: rep.label().to_string(),
                    value: ValueDef::from_gset(a.value(v)),
                    frame: a.morphism(r, v, 0).iter().map(|&y| a.value(v).label(y as usize).to_string()).collect(),
                    classes,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group: GroupDef::from_group(a.group()),
            dim_cap: catalog.dim_cap(),
            reps: reps.iter().map(RepDef::from_rep).collect(),
            isometries,
            objects,
            certificates: Vec::new(),
        })
    }

    /// Records whether the bundle's functor is isomorphic to `other`.
    pub fn certify(&mut self, against: &str, iso: Option<&[PointedMap]>, a: &IGSpaceFin, other: &IGSpaceFin) {
        let iso = iso.map(|maps| {
            a.reps()
                .iter()
                .enumerate()
                .map(|(v, rep)| {
                    let images = maps[v].raw().iter().map(|&y| other.value(v).label(y as usize).to_string()).collect();
                    (rep.label().to_string(), images)
                })
                .collect()
        });
        self.certificates.push(CertificateDef { against: against.to_string(), iso });
    }

    /// Rebuilds the functor over a catalog holding just this group, its
    /// identity and the listed representations. Every morphism is
    /// `F_W ∘ A(f) ∘ F_V⁻¹` with `F` the frames.
    pub fn build(&self) -> Result<IGSpaceFin> {
        let group = Arc::new(self.group.build()?);
        let groups = Groups(vec![group.clone()]);
        let reps = self.reps.iter().map(|r| r.build(&groups)).collect::<Result<Vec<_>>>()?;
        let catalog = Arc::new(SiteCatalog::new(self.dim_cap, vec![group.clone()], vec![GroupHom::identity(group)], reps)?);
        let catalog_reps = catalog.reps(0);
        let mut values = vec![None; catalog_reps.len()];
        let mut frames = vec![None; catalog_reps.len()];
        for object in &self.objects {
            let v = catalog.rep_by_label(0, &object.rep)?;
            let value = object.value.build(catalog.group(0))?;
            let frame = PointedMap::from_images(points(&value, &object.frame)?);
            values[v] = Some(value);
            frames[v] = Some(frame);
        }
        let missing = |v: usize| Error::CoverageGap(format!("no object for {}", catalog_reps[v].label()));
        let values = values.into_iter().enumerate().map(|(v, x)| x.ok_or_else(|| missing(v))).collect::<Result<Vec<_>>>()?;
        if self.isometries.len() != self.dim_cap + 1 {
            return Err(Error::CoverageGap(format!("expected isometry actions for dimensions 0..={}", self.dim_cap)));
        }
        let actions = (0..=self.dim_cap)
            .map(|n| {
                let r = catalog.trivial_index(0, n).ok_or_else(|| Error::CatalogIncomplete(format!("no trivial rep of dim {n}")))?;
                generate_action(n, &values[r], &self.isometries[n])
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inverse = Vec::with_capacity(frames.len());
        for (v, frame) in frames.iter().enumerate() {
            let frame = frame.as_ref().ok_or_else(|| missing(v))?;
            let n = catalog_reps[v].dim();
            let r = catalog.trivial_index(0, n).expect("checked above");
            if frame.len() != values[r].len() || !frame.is_bijection(values[v].len()) {
                return Err(Error::InvalidMap(format!("frame of {} is not a bijection", catalog_reps[v].label())));
            }
            inverse.push(frame.inverse().expect("bijection"));
        }
        let frames: Vec<PointedMap> = frames.into_iter().map(|f| f.expect("checked above")).collect();
        IGSpaceFin::from_fn(catalog.clone(), 0, values, |v, w, f| {
            let n = catalog_reps[v].dim();
            frames[w].after(&actions[n][f]).after(&inverse[v]).raw().to_vec()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDoc {
    /// Relative to the configuration file.
    pub catalog: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gsets: Option<PathBuf>,
    pub suites: Vec<SuiteName>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_instance_count")]
    pub instance_count: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faults: Vec<FaultDef>,
}

fn default_instance_count() -> usize {
    50
}

pub fn read_catalog(path: &Path) -> Result<SiteCatalog, LoadError> {
    let doc = read_kind(path, |d| if let Document::Catalog(c) = d { Some(c) } else { None }, "catalog")?;
    doc.build().map_err(|e| LoadError::invalid(path, e))
}

pub fn read_gsets(path: &Path) -> Result<GSetCatalog, LoadError> {
    let doc = read_kind(path, |d| if let Document::GSets(c) = d { Some(c) } else { None }, "gsets")?;
    doc.build().map_err(|e| LoadError::invalid(path, e))
}

pub fn read_ispace(path: &Path) -> Result<ISpaceFin, LoadError> {
    let doc = read_kind(path, |d| if let Document::ISpace(c) = d { Some(c) } else { None }, "ispace")?;
    doc.build().map_err(|e| LoadError::invalid(path, e))
}

pub fn read_suite(path: &Path) -> Result<SuiteDoc, LoadError> {
    read_kind(path, |d| if let Document::Suite(c) = d { Some(c) } else { None }, "suite")
}

/// Resolves a path named inside `config` relative to the config's directory.
pub fn relative_to(config: &Path, named: &Path) -> PathBuf {
    if named.is_absolute() {
        named.to_path_buf()
    } else {
        config.parent().unwrap_or_else(|| Path::new(".")).join(named)
    }
}

/// Directory of the data files shipped with the crate.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::check_igspace;
    use crate::spectra::sphere_functor;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn standard_catalog_round_trips() {
        let standard = SiteCatalog::standard_with_cap(2);
        let doc = CatalogDoc::from_catalog(&standard);
        let rebuilt = doc.build().unwrap();
        assert_eq!(CatalogDoc::from_catalog(&rebuilt), doc);
        let seeds = CatalogDoc::standard_seeds(2).build().unwrap();
        assert_eq!(CatalogDoc::from_catalog(&seeds), doc);
    }

    #[test]
    fn shipped_catalog_matches_the_builtin_one() {
        let shipped = read_catalog(&data_dir().join("standard-catalog.json")).unwrap();
        assert_eq!(CatalogDoc::from_catalog(&shipped), CatalogDoc::from_catalog(&SiteCatalog::standard()));
    }

    #[test]
    fn shipped_gsets_match_the_builtin_ones() {
        let shipped = read_gsets(&data_dir().join("gsets.json")).unwrap();
        assert_eq!(GSetsDoc::from_catalog(&shipped), GSetsDoc::from_catalog(&GSetCatalog::standard()));
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.json", r#"{"kind":"catalog","dim_cap":1,"groups":[{"name":"e","elements":["e"],"table":[["e"]],"extra":1}],"reps":[]}"#);
        match read_document(&p) {
            Err(LoadError::Schema { pointer, .. }) => assert_eq!(pointer, "/groups/0/extra"),
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "b.json", r#"{"kind":"catalog","dim_cap":"x"}"#);
        match read_document(&p) {
            Err(e @ LoadError::Schema { .. }) => {
                assert_eq!(e.exit_code(), 2);
                assert!(e.to_string().contains("/dim_cap"), "{e}");
            }
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "c.json", "{not json");
        assert!(matches!(read_document(&p), Err(LoadError::Syntax { .. })));
        let p = write(&dir, "d.json", r#"{"kind":"nonsense"}"#);
        assert!(matches!(read_document(&p), Err(LoadError::Schema { .. })));
    }

    #[test]
    fn non_associative_table_is_invalid_not_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let mut doc = CatalogDoc::standard_seeds(1);
        doc.groups[2].table[1][1] = doc.groups[2].elements[0].clone();
        let p = write(&dir, "bad.json", &to_json_string(Kind::Catalog, &doc));
        let err = read_catalog(&p).unwrap_err();
        assert_eq!(err.exit_code(), 1, "{err}");
    }

    #[test]
    fn ispace_round_trips_through_generators() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(3));
        let e = catalog.trivial_group().unwrap();
        let s = crate::kan::restrict_igspace(&sphere_functor(&catalog, e).unwrap()).unwrap();
        let doc = ISpaceDoc::from_ispace(&s);
        assert_eq!(doc.morphisms[3].len(), hyperoctahedral(3).generators().count());
        let back = doc.build().unwrap();
        for n in 0..=3 {
            for t in 0..hyperoctahedral(n).len() {
                assert_eq!(back.morphism(n, t), s.morphism(n, t));
            }
        }
    }

    #[test]
    fn inconsistent_generator_images_are_rejected() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(1));
        let e = catalog.trivial_group().unwrap();
        let s = crate::kan::restrict_igspace(&sphere_functor(&catalog, e).unwrap()).unwrap();
        let mut doc = ISpaceDoc::from_ispace(&s);
        // the flip must square to the identity; sending "+" to "*" breaks that
        doc.morphisms[1][0].images[1] = "*".into();
        assert!(doc.build().is_err());
    }

    #[test]
    fn bundle_rebuilds_the_functor() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let g = catalog.group_index("C2xC2").unwrap();
        let s = sphere_functor(&catalog, g).unwrap();
        let doc = BundleDoc::from_functor(&s, None).unwrap();
        let back = doc.build().unwrap();
        assert!(check_igspace(&back).all_passed());
        assert_eq!(BundleDoc::from_functor(&back, None).unwrap(), doc);
    }
}
