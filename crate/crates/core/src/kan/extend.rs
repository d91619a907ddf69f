use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{hyperoctahedral, same_group, SignedPerm};
use crate::error::{Error, Result};
use crate::functors::{GlobalMap, GlobalSpace, IGSpaceFin};
use crate::gspaces::{PointedGSet, PointedMap};
use crate::site::{Rep, SiteCatalog};
use crate::union_find::UnionFind;

use super::ispace::{ISpaceFin, ISpaceMap};

/// Pairs `(s, x)` with `s ∈ B_n` and `x ∈ X(ℝⁿ)` modulo `[st, x] ~ [s, t·x]`.
/// The relation only touches the source of `s`, so one quotient serves every
/// representation of dimension `n`.
#[derive(Debug)]
pub(crate) struct Quotient {
    dim: usize,
    source_len: usize,
    class_of: Vec<u32>,
    /// Least pair `(s, x)` of every class.
    reps: Vec<(usize, usize)>,
}

impl Quotient {
    fn new(x: &ISpaceFin, n: usize) -> Self {
        let b = hyperoctahedral(n);
        let len = x.value(n).len();
        let mut uf = UnionFind::new(b.len() * len);
        for t in 0..b.len() {
            let xt = x.morphism(n, t);
            for s in 0..b.len() {
                let st = b.mul(s, t);
                for p in 0..len {
                    uf.union(st * len + p, s * len + xt[p] as usize);
                }
            }
        }
        let (class_of, roots) = uf.classes();
        Self {
            dim: n,
            source_len: len,
            class_of: class_of.into_iter().map(|c| c as u32).collect(),
            reps: roots.into_iter().map(|r| (r / len, r % len)).collect(),
        }
    }

    #[inline]
    fn class(&self, s: usize, x: usize) -> usize {
        self.class_of[s * self.source_len + x] as usize
    }
}

/// The value of an extension at one representation: classes `[s, x]` with
/// canonical representatives and the induced action.
#[derive(Debug, Clone)]
pub struct KanResult {
    rep: Rep,
    quotient: Arc<Quotient>,
    source_labels: Vec<String>,
    value: PointedGSet,
}

impl KanResult {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim
    }

    /// Canonical representatives `(isometry index, point)`, lexicographically
    /// least in their class.
    pub fn classes(&self) -> &[(usize, usize)] {
        &self.quotient.reps
    }

    /// The class of the pair `(s, x)`.
    pub fn class_of(&self, s: usize, x: usize) -> usize {
        self.quotient.class(s, x)
    }

    pub fn value(&self) -> &PointedGSet {
        &self.value
    }

    /// Label of point `x` of the value being extended.
    pub fn source_label(&self, x: usize) -> &str {
        &self.source_labels[x]
    }

    pub fn to_json(&self) -> Value {
        let group = self.value.group();
        let classes: Vec<Value> = self
            .classes()
            .iter()
            .enumerate()
            .map(|(c, &(s, x))| {
                json!({
                    "label": self.value.label(c),
                    "isometry": format!("{:?}", SignedPerm::unrank(self.dim(), s)),
                    "point": self.source_labels[x],
                })
            })
            .collect();
        let action: serde_json::Map<String, Value> = group
            .elements()
            .map(|g| {
                let row: Vec<usize> = (0..self.value.len()).map(|c| self.value.act(g, c)).collect();
                (group.label(g).to_string(), json!(row))
            })
            .collect();
        json!({
            "group": group.name(),
            "rep": self.rep.label(),
            "dim": self.dim(),
            "basepoint": self.value.basepoint(),
            "classes": classes,
            "action": action,
        })
    }
}

/// Extension of an I-space to one group: the functor together with the
/// class data behind each of its values.
#[derive(Debug, Clone)]
pub struct Extension {
    pub functor: IGSpaceFin,
    pub classes: Vec<KanResult>,
}

impl Extension {
    /// `[s, x]` at representation `v`.
    pub fn class_of(&self, v: usize, s: usize, x: usize) -> usize {
        self.classes[v].class_of(s, x)
    }
}

fn quotients(x: &ISpaceFin, catalog: &SiteCatalog) -> Result<Vec<Arc<Quotient>>> {
    if catalog.dim_cap() > x.dim_cap() {
        return Err(Error::DimCapExceeded { dim: catalog.dim_cap(), cap: x.dim_cap() });
    }
    Ok((0..=catalog.dim_cap()).map(|n| Arc::new(Quotient::new(x, n))).collect())
}

fn extend_with(x: &ISpaceFin, catalog: &Arc<SiteCatalog>, g: usize, quotients: &[Arc<Quotient>]) -> Result<Extension> {
    let group = catalog.group(g);
    let acts_trivially = x.group().is_trivial();
    if !acts_trivially && !same_group(x.group(), group) {
        return Err(Error::ExtentMismatch { expected: group.name().to_string(), found: x.group().name().to_string() });
    }
    let mut classes = Vec::with_capacity(catalog.reps(g).len());
    for rep in catalog.reps(g) {
        let n = rep.dim();
        let q = &quotients[n];
        let b = hyperoctahedral(n);
        let source = x.value(n);
        let act_source = |h: usize, p: usize| if acts_trivially { p } else { source.act(h, p) };
        let count = q.reps.len();
        let mut action = Vec::with_capacity(group.order() * count);
        for h in group.elements() {
            let rho = rep.rho_index(h);
            action.extend(q.reps.iter().map(|&(s, p)| q.class(b.mul(rho, s), act_source(h, p)) as u32));
        }
        for h in group.elements() {
            let rho = rep.rho_index(h);
            for s in 0..b.len() {
                for p in 0..source.len() {
                    let moved = q.class(b.mul(rho, s), act_source(h, p));
                    if moved != action[h * count + q.class(s, p)] as usize {
                        return Err(Error::NotWellDefined(format!(
                            "action of {} on [{:?}, {}] at {} depends on the representative",
                            group.label(h),
                            SignedPerm::unrank(n, s),
                            source.label(p),
                            rep.label()
                        )));
                    }
                }
            }
        }
        let base = q.class(0, source.basepoint());
        let labels = q
            .reps
            .iter()
            .enumerate()
            .map(|(c, &(s, p))| {
                if c == base {
                    "*".to_string()
                } else {
                    format!("[{:?},{}]", SignedPerm::unrank(n, s), source.label(p))
                }
            })
            .collect();
        let value = PointedGSet::new(group.clone(), labels, base, action)?;
        classes.push(KanResult { rep: rep.clone(), quotient: q.clone(), source_labels: source.labels().to_vec(), value });
    }
    let values = classes.iter().map(|k| k.value.clone()).collect();
    let functor = IGSpaceFin::from_fn(catalog.clone(), g, values, |v, _, f| {
        let k = &classes[v];
        let b = hyperoctahedral(k.dim());
        k.classes().iter().map(|&(s, p)| k.class_of(b.mul(f, s), p) as u32).collect()
    })?;
    Ok(Extension { functor, classes })
}

/// Left Kan extension of `x` along the trivial representations of group `g`:
/// `E(X)(V) = B(ℝⁿ, V) × X(ℝⁿ) / [st, x] ~ [s, t·x]` with the diagonal action
/// and isometries acting by postcomposition. `x` lives over `g` or over the
/// trivial group.
pub fn extend(x: &ISpaceFin, catalog: &Arc<SiteCatalog>, g: usize) -> Result<Extension> {
    extend_with(x, catalog, g, &quotients(x, catalog)?)
}

/// Extension of an I-space to every catalog group, with the comparison maps
/// `α*E_H(X)(V) → E_G(X)(α*V)` sending `[s, x]` to `[s, x]`.
#[derive(Debug, Clone)]
pub struct GlobalExtension {
    pub space: GlobalSpace,
    pub extensions: Vec<Extension>,
}

pub fn extend_global(x: &ISpaceFin, catalog: &Arc<SiteCatalog>) -> Result<GlobalExtension> {
    if !x.group().is_trivial() {
        return Err(Error::ExtentMismatch { expected: "e".into(), found: x.group().name().to_string() });
    }
    catalog.require_global()?;
    let quotients = quotients(x, catalog)?;
    let extensions: Vec<Extension> =
        (0..catalog.groups().len()).map(|g| extend_with(x, catalog, g, &quotients)).collect::<Result<_>>()?;
    let mut restriction = Vec::with_capacity(catalog.homs().len());
    for (h, hom) in catalog.homs().iter().enumerate() {
        let (upper, lower) = (&extensions[hom.target], &extensions[hom.source]);
        let maps = (0..catalog.reps(hom.target).len())
            .map(|v| {
                let w = catalog.restrict_index(h, v).expect("global catalog");
                let images = upper.classes[v].classes().iter().map(|&(s, p)| lower.class_of(w, s, p)).collect();
                PointedMap::from_images(images)
            })
            .collect();
        restriction.push(maps);
    }
    let space = GlobalSpace::new(catalog.clone(), extensions.iter().map(|e| e.functor.clone()).collect(), restriction)?;
    Ok(GlobalExtension { space, extensions })
}

/// `E(f)[s, x] = [s, f(x)]` at every representation of one group.
pub fn extend_map(f: &ISpaceMap, source: &Extension, target: &Extension) -> Vec<PointedMap> {
    source
        .classes
        .iter()
        .enumerate()
        .map(|(v, k)| {
            let fn_ = &f.components[k.dim()];
            PointedMap::from_images(k.classes().iter().map(|&(s, p)| target.class_of(v, s, fn_.apply(p))).collect())
        })
        .collect()
}

pub fn extend_global_map(f: &ISpaceMap, source: &GlobalExtension, target: &GlobalExtension) -> GlobalMap {
    let components = source.extensions.iter().zip(&target.extensions).map(|(s, t)| extend_map(f, s, t)).collect();
    GlobalMap { components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::functors::{check_global, check_igspace};

    /// `ℝⁿ ↦` sign vectors, the restriction of the sphere built by hand.
    fn sign_vectors(dim_cap: usize) -> ISpaceFin {
        let e = Arc::new(FiniteGroup::trivial());
        let values = (0..=dim_cap)
            .map(|n| {
                let mut labels = vec!["*".to_string()];
                labels.extend((0..1usize << n).map(|v| format!("v{v}")));
                PointedGSet::trivial(e.clone(), labels, 0).unwrap()
            })
            .collect();
        ISpaceFin::from_fn(e, values, |n, t| {
            let f = SignedPerm::unrank(n, t);
            std::iter::once(0).chain((0..1usize << n).map(|v| 1 + f.act_on_sign_vector(v) as u32)).collect()
        })
        .unwrap()
    }

    #[test]
    fn sign_rep_has_two_swapped_classes() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let c2 = catalog.group_index("C2").unwrap();
        let sign = catalog.rep_index(c2, "sign").unwrap();
        let ext = extend(&sign_vectors(2), &catalog, c2).unwrap();
        let k = &ext.classes[sign];
        // Four pairs (±1, v) collapse along [-1, v] ~ [+1, -v].
        assert_eq!(k.classes().len(), 3);
        let non_base: Vec<usize> = k.value().non_base().collect();
        assert_eq!(non_base.len(), 2);
        assert_eq!(k.value().act(1, non_base[0]), non_base[1]);
        for &c in &non_base {
            assert_eq!(k.classes()[c].0, 0);
        }
    }

    #[test]
    fn extension_is_a_global_space() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let ext = extend_global(&sign_vectors(2), &catalog).unwrap();
        let report = check_global(&ext.space);
        assert!(report.all_passed(), "{}", report.to_text());
        for g in 0..catalog.groups().len() {
            assert!(check_igspace(ext.space.component(g)).all_passed());
        }
    }

    #[test]
    fn point_extends_to_point() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let e = Arc::new(FiniteGroup::trivial());
        let x = ISpaceFin::constant(e.clone(), 2, &PointedGSet::point(e)).unwrap();
        let ext = extend_global(&x, &catalog).unwrap();
        assert!(ext.space.components().iter().all(|c| c.values().iter().all(|v| v.len() == 1)));
    }

    #[test]
    fn extension_needs_every_dimension() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(3));
        let err = extend_global(&sign_vectors(2), &catalog).unwrap_err();
        assert_eq!(err, Error::DimCapExceeded { dim: 3, cap: 2 });
    }
}
