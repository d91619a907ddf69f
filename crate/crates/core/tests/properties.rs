use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use equicat::algebra::{hyperoctahedral, FiniteGroup, SignedPerm};
use equicat::gspaces::{smash, PointedGSet, PointedMap};
use equicat::kan::{check_ispace, check_ispace_adjunction, extend_global, extend_global_map, random_ispace, random_tower};
use equicat::site::SiteCatalog;
use equicat::suite::{run, SuiteInput, SuiteName};

fn catalog() -> &'static Arc<SiteCatalog> {
    static CATALOG: OnceLock<Arc<SiteCatalog>> = OnceLock::new();
    CATALOG.get_or_init(|| Arc::new(SiteCatalog::standard_with_cap(2)))
}

fn trivial() -> Arc<FiniteGroup> {
    let c = catalog();
    c.group(c.trivial_group().unwrap()).clone()
}

fn signed_perm(max_dim: usize) -> impl Strategy<Value = SignedPerm> {
    (0..=max_dim).prop_flat_map(|n| (0..SignedPerm::count(n)).prop_map(move |r| SignedPerm::unrank(n, r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_round_trips(f in signed_perm(4)) {
        prop_assert_eq!(SignedPerm::unrank(f.dim(), f.rank()), f);
    }

    #[test]
    fn multiplication_table_matches_composition(n in 0usize..=3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let group = hyperoctahedral(n);
        let (a, b) = (a.index(group.len()), b.index(group.len()));
        let composed = group.element(a).compose(group.element(b)).unwrap();
        prop_assert_eq!(group.element(group.mul(a, b)), &composed);
    }

    #[test]
    fn inverse_is_two_sided(f in signed_perm(4)) {
        let i = f.inverse();
        prop_assert!(f.compose(&i).unwrap().is_identity());
        prop_assert!(i.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn sign_vector_action_respects_block_sums(f in signed_perm(2), h in signed_perm(2), v in 0usize..4, w in 0usize..4) {
        let (n, m) = (f.dim(), h.dim());
        let (v, w) = (v % (1 << n), w % (1 << m));
        let joined = f.block_sum(&h).act_on_sign_vector((v << m) | w);
        prop_assert_eq!(joined, (f.act_on_sign_vector(v) << m) | h.act_on_sign_vector(w));
    }

    #[test]
    fn smash_is_associative_up_to_relabelling(a in 1usize..4, b in 1usize..4, c in 1usize..4) {
        let e = Arc::new(FiniteGroup::trivial());
        let set = |k: usize, tag: &str| {
            let labels = std::iter::once("*".to_string()).chain((1..=k).map(|i| format!("{tag}{i}"))).collect();
            PointedGSet::trivial(e.clone(), labels, 0).unwrap()
        };
        let (x, y, z) = (set(a, "x"), set(b, "y"), set(c, "z"));
        let left = smash(&smash(&x, &y).unwrap(), &z).unwrap();
        let right = smash(&x, &smash(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left.len(), right.len());
        prop_assert_eq!(left.len(), 1 + a * b * c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_ispaces_are_functors_and_extend_to_equivalences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_ispace(&mut rng, &trivial(), 2, 4);
        prop_assert!(check_ispace(&x).all_passed());
        let report = check_ispace_adjunction(&x, catalog()).unwrap();
        prop_assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn extension_preserves_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (spaces, maps) = random_tower(&mut rng, &trivial(), 2, 4, 3);
        let ext: Vec<_> = spaces.iter().map(|x| extend_global(x, catalog()).unwrap()).collect();
        let direct = extend_global_map(&maps[1].after(&maps[0]), &ext[0], &ext[2]);
        let stepwise = extend_global_map(&maps[1], &ext[1], &ext[2]).after(&extend_global_map(&maps[0], &ext[0], &ext[1]));
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn extending_the_identity_gives_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_ispace(&mut rng, &trivial(), 2, 4);
        let ext = extend_global(&x, catalog()).unwrap();
        let id = extend_global_map(&equicat::kan::ISpaceMap::identity(&x), &ext, &ext);
        for (g, component) in id.components.iter().enumerate() {
            for (v, map) in component.iter().enumerate() {
                prop_assert_eq!(map, &PointedMap::identity(ext.space.component(g).value(v).len()));
            }
        }
    }

    #[test]
    fn reports_depend_only_on_the_seed(seed in any::<u64>()) {
        let input = SuiteInput {
            catalog: catalog().clone(),
            gsets: equicat::gspaces::GSetCatalog::standard(),
            suites: vec![SuiteName::Adjunction],
            seed,
            instance_count: 3,
            faults: Vec::new(),
        };
        let first = run(&input);
        prop_assert!(first.all_passed(), "{}", first.to_text());
        prop_assert_eq!(first.to_json(), run(&input).to_json());
    }
}
