use std::sync::{Arc, OnceLock};

use nonsplit_core::cohom::{
    coboundary_test, derivation_space, table_coboundary_test, tails_with_section, ConnectingCocycle, Derivation,
    SharedCocycle, ZeroCocycle,
};
use nonsplit_core::ext::{nonsplit_certificate, CosetAction, ExtGroup, StabilizerSection, SubgroupKind};
use nonsplit_core::gf::{SubspaceGF, VectorGF};
use nonsplit_core::gmod::natural_module;
use nonsplit_core::perm::PermGroup;
use nonsplit_core::pipelines::{build_even, Command, RunConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Even7 {
    h: ExtGroup,
    stab: StabilizerSection,
    action: CosetAction,
}

fn even7() -> &'static Even7 {
    static CELL: OnceLock<Even7> = OnceLock::new();
    CELL.get_or_init(|| {
        let cfg = RunConfig::new(Command::Even { k: 7 });
        let b = build_even(7, &cfg, &mut cfg.rng()).unwrap();
        Even7 {
            h: b.h,
            stab: b.stab,
            action: b.action,
        }
    })
}

#[test]
fn zero_cocycle_splits_with_explicit_complement() {
    let n = natural_module(7, 2).unwrap();
    let delta: SharedCocycle = Arc::new(ZeroCocycle::new(n));
    let h = ExtGroup::build(delta.clone(), &mut rng(1), 1000).unwrap();
    let cert = nonsplit_certificate(&h, 1 << 10, &mut rng(2)).unwrap();
    assert!(!cert.nonsplit);
    let field = h.module().field();
    let c: Vec<VectorGF> = cert
        .complement
        .unwrap()
        .iter()
        .map(|s| VectorGF::from_digit_string(field, s).unwrap())
        .collect();
    assert!(tails_with_section(delta.as_ref(), &c)
        .unwrap()
        .iter()
        .all(|t| t.is_zero()));
}

#[test]
fn inner_derivation_gives_a_coboundary() {
    // V = natural A_5-module over GF(5), M = span(1,...,1), V/M of dimension 4.
    let v = natural_module(5, 5).unwrap();
    let field = v.field();
    let ones = VectorGF::from_elems(field, &[1; 5]);
    let q = SubspaceGF::span(field, 5, [ones]).quotient_with_section();
    let m = v.submodule(q.kernel()).unwrap();
    let vm = v.quotient(&q).unwrap();
    let x = VectorGF::from_elems(field, &[1, 2, 0, 0, 0]);
    let inner = Derivation::inner(vm.clone(), &q.project(&x)).unwrap();
    let delta = ConnectingCocycle::new(inner, v.clone(), q.clone(), m.clone()).unwrap();
    assert!(coboundary_test(&delta).unwrap().is_feasible());
    assert!(table_coboundary_test(&delta, 100).unwrap());
}

#[test]
fn outer_derivation_gives_a_nonsplit_class() {
    // V = F_3^6 for A_6 and M = span(1,...,1). H¹(A_6, V) = H¹(A_5, F_3) = 0, so
    // the connecting map is injective on H¹(A_6, V/M).
    let v = natural_module(6, 3).unwrap();
    let field = v.field();
    let q = SubspaceGF::span(field, 6, [VectorGF::from_elems(field, &[1; 6])]).quotient_with_section();
    let m = v.submodule(q.kernel()).unwrap();
    let vm = v.quotient(&q).unwrap();
    let ds = derivation_space(&vm);
    assert!(ds.h1_dim >= 1);
    let outer = Derivation::new(vm, ds.non_inner().unwrap()).unwrap();
    let delta = ConnectingCocycle::new(outer, v, q, m).unwrap();
    assert!(!coboundary_test(&delta).unwrap().is_feasible());
}

#[test]
fn split_control_orders_include_involutions() {
    let n = natural_module(6, 2).unwrap();
    let h = ExtGroup::new(Arc::new(ZeroCocycle::new(n)));
    let x = nonsplit_core::perm::Permutation::from_cycles(6, &[&[0, 1], &[2, 3]]).unwrap();
    assert!(h.sweep_coset_orders(&x, 1 << 10).unwrap().contains(&2));
    assert!(!h.coset_squares_nonzero(&x).unwrap());
}

#[test]
fn even_k7_coset_space_basics() {
    let e = even7();
    assert_eq!(e.action.space.degree(), 84);
    assert!(e.action.is_transitive().unwrap());
    assert!(e.stab.contains(&e.h.identity()).unwrap());
    // the fibers {2t, 2t+1} form blocks and the module fixes every block
    for g in e.action.lift_images().iter().chain(e.action.module_images()) {
        for t in 0..42 {
            assert_eq!(g.apply(2 * t) / 2, g.apply(2 * t + 1) / 2);
        }
    }
    for g in e.action.module_images() {
        assert!((0..84).all(|x| g.apply(x) / 2 == x / 2));
    }
    // forgetting the fiber recovers the action on ordered pairs
    let tr = e.action.space.transversal();
    for (g, s) in e
        .action
        .lift_images()
        .iter()
        .zip(e.h.module().presentation().realization())
    {
        for t in 0..42 {
            let (_, t2) = tr.decompose(t, s);
            assert_eq!(g.apply(2 * t) / 2, t2);
        }
    }
}

#[test]
fn transversals_are_in_distinct_cosets() {
    for k in 5..=8 {
        for kind in [SubgroupKind::YoungPair, SubgroupKind::PointwisePair] {
            let sub = PermGroup::new(k, kind.presentation(k).unwrap().realization().to_vec()).unwrap();
            let tr = kind.transversal(k).unwrap();
            let reps = tr.reps();
            let index = nonsplit_core::perm::alternating_group(k).unwrap().order() / sub.order();
            assert_eq!(num_bigint::BigUint::from(reps.len()), index);
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i + 1..] {
                    assert!(!sub.contains(&a.then(&b.inverse())), "{kind:?} k = {k}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(seed: u64) {
        let e = even7();
        let mut r = rng(seed);
        let (a, b, c) = (e.h.random(&mut r), e.h.random(&mut r), e.h.random(&mut r));
        let h = &e.h;
        let ab_c = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c.m, &a_bc.m);
        prop_assert_eq!(&ab_c.g, &a_bc.g);
        prop_assert!(h.is_identity(&h.mul(&a, &h.inverse(&a).unwrap()).unwrap()));
        // projection is a homomorphism
        prop_assert_eq!(h.mul(&a, &b).unwrap().g, a.g.then(&b.g));
    }

    #[test]
    fn action_is_a_homomorphism(seed: u64) {
        let e = even7();
        let mut r = rng(seed);
        let (a, b) = (e.h.random(&mut r), e.h.random(&mut r));
        let sp = &e.action.space;
        let pa = sp.image(&e.h, &e.stab, &a).unwrap();
        let pb = sp.image(&e.h, &e.stab, &b).unwrap();
        let pab = sp.image(&e.h, &e.stab, &e.h.mul(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(pab, pa.then(&pb));
    }

    #[test]
    fn nonzero_module_elements_have_order_p(seed: u64) {
        let e = even7();
        let x = e.h.random(&mut rng(seed));
        prop_assume!(!x.m.is_zero());
        let m = e.h.from_module(x.m);
        prop_assert_eq!(e.h.element_order(&m).unwrap(), 2);
    }
}

#[test]
fn associativity_on_ten_thousand_triples() {
    even7().h.check_associativity(&mut rng(11), 10_000).unwrap();
}
