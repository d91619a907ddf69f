use std::sync::Arc;

use crate::algebra::{hyperoctahedral, SignedPerm};
use crate::error::{Error, Result};
use crate::functors::IGSpaceFin;
use crate::gspaces::PointedGSet;
use crate::site::SiteCatalog;
use crate::union_find::UnionFind;

/// One summand `(V₁, V₂)` of the coend with its non-base pairs `a ∧ b`.
struct Block {
    left: usize,
    right: usize,
    pairs: Vec<(usize, usize)>,
    /// `a * |B(V₂)| + b ↦` index into `pairs`, or `None` for base pairs.
    pair_index: Vec<Option<usize>>,
    offset: usize,
}

/// `B_{n₁} × B_{n₂} → B_{n₁+n₂}` on indices.
fn block_sum_table(n1: usize, n2: usize) -> Vec<usize> {
    let (b1, b2) = (hyperoctahedral(n1), hyperoctahedral(n2));
    let mut table = Vec::with_capacity(b1.len() * b2.len());
    for t1 in b1.elements() {
        for t2 in b2.elements() {
            table.push(t1.block_sum(t2).rank());
        }
    }
    table
}

/// Classes of `∐ B(V₁⊕V₂, ℝᵈ) × A(V₁) ∧ B(V₂)` for one dimension `d`. As
/// with the extension, the relation acts on the source of `s` only and is
/// shared by every target of dimension `d`.
struct SmashQuotient {
    dim: usize,
    blocks: Vec<Block>,
    class_of: Vec<u32>,
    reps: Vec<usize>,
}

impl SmashQuotient {
    fn locate(&self, raw: usize) -> Option<(usize, usize, usize)> {
        if raw == 0 {
            return None;
        }
        let k = self.blocks.partition_point(|b| b.offset <= raw) - 1;
        let local = raw - self.blocks[k].offset;
        let pairs = self.blocks[k].pairs.len();
        Some((k, local / pairs, local % pairs))
    }
}

fn raw_index(block: &Block, s: usize, pair: usize) -> usize {
    block.offset + s * block.pairs.len() + pair
}

fn smash_quotient(a: &IGSpaceFin, b: &IGSpaceFin, d: usize) -> Result<SmashQuotient> {
    let catalog = a.catalog();
    let g = a.group_index();
    let reps = catalog.reps(g);
    let bd = hyperoctahedral(d);
    let mut blocks = Vec::new();
    let mut offset = 1;
    for (left, r1) in reps.iter().enumerate() {
        for (right, r2) in reps.iter().enumerate() {
            if r1.dim() + r2.dim() != d {
                continue;
            }
            let (x, y) = (a.value(left), b.value(right));
            let mut pairs = Vec::new();
            let mut pair_index = vec![None; x.len() * y.len()];
            for p in x.non_base() {
                for q in y.non_base() {
                    pair_index[p * y.len() + q] = Some(pairs.len());
                    pairs.push((p, q));
                }
            }
            let size = bd.len() * pairs.len();
            blocks.push(Block { left, right, pairs, pair_index, offset });
            offset += size;
        }
    }
    let mut uf = UnionFind::new(offset);
    let block_of = |l: usize, r: usize| blocks.iter().position(|k| k.left == l && k.right == r);
    let trivial = |n: usize| {
        catalog.trivial_index(g, n).ok_or_else(|| {
            Error::CatalogIncomplete(format!("{} lacks the trivial representation of dimension {n}", catalog.group(g).name()))
        })
    };
    let mut sums: Vec<Option<Vec<usize>>> = vec![None; d + 1];
    // Generators: frame isometries to the trivial pair of the same
    // dimensions, and generators of each factor's isometries there.
    let mut relate = |from: usize, to: usize, n1: usize, t1: usize, t2: usize, uf: &mut UnionFind| {
        let sum = sums[n1].get_or_insert_with(|| block_sum_table(n1, d - n1));
        let t = sum[t1 * hyperoctahedral(d - n1).len() + t2];
        let (src, dst) = (&blocks[from], &blocks[to]);
        let (ta, tb) = (a.morphism(src.left, dst.left, t1), b.morphism(src.right, dst.right, t2));
        let width = b.value(dst.right).len();
        for s in 0..bd.len() {
            let st = bd.mul(s, t);
            for (i, &(p, q)) in src.pairs.iter().enumerate() {
                let image = dst.pair_index[ta[p] as usize * width + tb[q] as usize];
                let target = image.map_or(0, |j| raw_index(dst, s, j));
                uf.union(raw_index(src, st, i), target);
            }
        }
    };
    for k in 0..blocks.len() {
        let (l, r) = (blocks[k].left, blocks[k].right);
        let (n1, n2) = (reps[l].dim(), reps[r].dim());
        let reference = block_of(trivial(n1)?, trivial(n2)?).expect("trivial pair has the right dimension");
        relate(k, reference, n1, 0, 0, &mut uf);
        if k == reference {
            for t in hyperoctahedral(n1).generators() {
                relate(k, k, n1, t, 0, &mut uf);
            }
            for t in hyperoctahedral(n2).generators() {
                relate(k, k, n1, 0, t, &mut uf);
            }
        }
    }
    let (class_of, reps) = uf.classes();
    Ok(SmashQuotient { dim: d, blocks, class_of: class_of.into_iter().map(|c| c as u32).collect(), reps })
}

/// The internal smash product: at `V` of dimension `d`, the quotient of
/// `∐_{V₁,V₂} B(V₁⊕V₂, V) × A(V₁) ∧ B(V₂)` by `[s(t₁⊕t₂), a∧b] ~ [s, t₁a ∧ t₂b]`,
/// with `g[s, a∧b] = [ρ_V(g) s (ρ_{V₁}⊕ρ_{V₂})(g)⁻¹, ga ∧ gb]` and isometries
/// acting by postcomposition.
pub fn internal_smash(a: &IGSpaceFin, b: &IGSpaceFin) -> Result<IGSpaceFin> {
    if a.group_index() != b.group_index() || !Arc::ptr_eq(a.catalog(), b.catalog()) {
        return Err(Error::ExtentMismatch { expected: a.group().name().to_string(), found: b.group().name().to_string() });
    }
    let catalog = a.catalog();
    let group = a.group();
    let reps = a.reps();
    let quotients: Vec<SmashQuotient> = (0..=catalog.dim_cap())
        .map(|d| smash_quotient(a, b, d))
        .collect::<Result<_>>()?;

    let mut values = Vec::with_capacity(reps.len());
    for rep in reps {
        let q = &quotients[rep.dim()];
        let bd = hyperoctahedral(q.dim);
        let count = q.reps.len();
        // g acts on raw elements; the class table must not depend on the
        // representative.
        let inner: Vec<Vec<usize>> = q
            .blocks
            .iter()
            .map(|k| group.elements().map(|h| reps[k.left].rho(h).block_sum(reps[k.right].rho(h)).inverse().rank()).collect())
            .collect();
        let act_raw = |h: usize, raw: usize| -> usize {
            let Some((k, s, i)) = q.locate(raw) else { return 0 };
            let block = &q.blocks[k];
            let (x, y) = (a.value(block.left), b.value(block.right));
            let (p, r) = block.pairs[i];
            let s2 = bd.mul(bd.mul(rep.rho_index(h), s), inner[k][h]);
            let j = block.pair_index[x.act(h, p) * y.len() + y.act(h, r)].expect("actions fix the basepoint");
            raw_index(block, s2, j)
        };
        let mut action = Vec::with_capacity(group.order() * count);
        for h in group.elements() {
            action.extend(q.reps.iter().map(|&raw| q.class_of[act_raw(h, raw)]));
        }
        for h in group.elements() {
            for raw in 0..q.class_of.len() {
                if q.class_of[act_raw(h, raw)] != action[h * count + q.class_of[raw] as usize] {
                    return Err(Error::NotWellDefined(format!(
                        "action of {} on the smash product at {} depends on the representative",
                        group.label(h),
                        rep.label()
                    )));
                }
            }
        }
        let labels = q
            .reps
            .iter()
            .map(|&raw| match q.locate(raw) {
                None => "*".to_string(),
                Some((k, s, i)) => {
                    let block = &q.blocks[k];
                    let (p, r) = block.pairs[i];
                    format!(
                        "[{:?};{},{};{}^{}]",
                        SignedPerm::unrank(q.dim, s),
                        reps[block.left].label(),
                        reps[block.right].label(),
                        a.value(block.left).label(p),
                        b.value(block.right).label(r)
                    )
                }
            })
            .collect();
        values.push(PointedGSet::new(group.clone(), labels, 0, action)?);
    }
    IGSpaceFin::from_fn(catalog.clone(), a.group_index(), values, |v, _, f| {
        let q = &quotients[reps[v].dim()];
        let bd = hyperoctahedral(q.dim);
        q.reps
            .iter()
            .map(|&raw| match q.locate(raw) {
                None => 0,
                Some((k, s, i)) => q.class_of[raw_index(&q.blocks[k], bd.mul(f, s), i)],
            })
            .collect()
    })
}

/// The unit for the internal smash product: `S⁰` at the zero representation
/// and a point elsewhere.
pub fn unit_space(catalog: &Arc<SiteCatalog>, g: usize) -> Result<IGSpaceFin> {
    let group = catalog.group(g);
    let values = catalog
        .reps(g)
        .iter()
        .map(|r| if r.dim() == 0 { PointedGSet::s0(group.clone()) } else { PointedGSet::point(group.clone()) })
        .collect::<Vec<_>>();
    let lens: Vec<u32> = values.iter().map(|v| v.len() as u32).collect();
    IGSpaceFin::from_fn(catalog.clone(), g, values, |v, _, _| (0..lens[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{check_igspace, find_natural_iso};
    use crate::kan::{extend, ISpaceFin};
    use crate::algebra::FiniteGroup;

    fn sphere_like(catalog: &Arc<SiteCatalog>, g: usize) -> IGSpaceFin {
        let e = Arc::new(FiniteGroup::trivial());
        let values = (0..=catalog.dim_cap())
            .map(|n| {
                let mut labels = vec!["*".to_string()];
                labels.extend((0..1usize << n).map(|v| format!("v{v}")));
                PointedGSet::trivial(e.clone(), labels, 0).unwrap()
            })
            .collect();
        let x = ISpaceFin::from_fn(e, values, |n, t| {
            let f = SignedPerm::unrank(n, t);
            std::iter::once(0).chain((0..1usize << n).map(|v| 1 + f.act_on_sign_vector(v) as u32)).collect()
        })
        .unwrap();
        extend(&x, catalog, g).unwrap().functor
    }

    #[test]
    fn smash_with_unit_is_isomorphic() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let c2 = catalog.group_index("C2").unwrap();
        let s = sphere_like(&catalog, c2);
        let u = unit_space(&catalog, c2).unwrap();
        assert!(check_igspace(&u).all_passed());
        let su = internal_smash(&s, &u).unwrap();
        assert!(check_igspace(&su).all_passed());
        assert!(find_natural_iso(&su, &s).is_some());
        let us = internal_smash(&u, &s).unwrap();
        assert!(find_natural_iso(&us, &s).is_some());
    }

    #[test]
    fn sphere_squared_has_four_to_the_dim_classes() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let c2 = catalog.group_index("C2").unwrap();
        let s = sphere_like(&catalog, c2);
        let ss = internal_smash(&s, &s).unwrap();
        assert!(check_igspace(&ss).all_passed());
        for (v, rep) in catalog.reps(c2).iter().enumerate() {
            assert_eq!(ss.value(v).len(), 1 + (1 << (2 * rep.dim())));
        }
        assert!(find_natural_iso(&ss, &s).is_none());
    }

    #[test]
    fn point_absorbs() {
        let catalog = Arc::new(SiteCatalog::standard_with_cap(2));
        let g = catalog.group_index("S3").unwrap();
        let s = sphere_like(&catalog, g);
        let values = vec![PointedGSet::point(catalog.group(g).clone()); catalog.reps(g).len()];
        let point = IGSpaceFin::from_fn(catalog.clone(), g, values, |_, _, _| vec![0]).unwrap();
        let sp = internal_smash(&point, &s).unwrap();
        assert!(sp.values().iter().all(|v| v.len() == 1));
    }
}
