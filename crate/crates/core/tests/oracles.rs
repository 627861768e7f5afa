//! Presentation-based computations checked against brute-force oracles.

use std::sync::Arc;

use nonsplit_core::cohom::{
    check_cocycle, coboundary_test, table_coboundary_test, Cocycle2, CocycleKind, RandomCoboundary, SharedCocycle,
    SignCarryCocycle, SpinCocycle, SumCocycle, ZeroCocycle,
};
use nonsplit_core::gf::{Field, VectorGF};
use nonsplit_core::gmod::GModule;
use nonsplit_core::perm::{
    pointwise_pair_presentation, todd_coxeter_order, young_pair_presentation, GroupKind, Permutation, Presentation,
};
use nonsplit_core::Result;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Inflation of the carry cocycle of `Z/3` along `A_4 → A_4/V_4 ≅ Z/3`,
/// with trivial GF(3) coefficients. Nonzero in `H²(A_4, F_3)`.
struct Z3Carry {
    module: GModule,
}

impl Z3Carry {
    fn new() -> Self {
        let pres = Arc::new(Presentation::of(GroupKind::AlternatingCarmichael, 4).unwrap());
        Z3Carry {
            module: GModule::trivial(pres, Field::new(3).unwrap()),
        }
    }

    /// The rotation `g` induces on the three pair partitions of `{0,1,2,3}`,
    /// read off from where it sends `{01|23}`; each is named by the partner of 0.
    fn psi(g: &Permutation) -> u8 {
        let (a, b) = (g.apply(0), g.apply(1));
        let partner = match (a, b) {
            (0, x) | (x, 0) => x,
            _ => (1..4).find(|&c| c != a && c != b).unwrap(),
        };
        (partner - 1) as u8
    }
}

impl Cocycle2 for Z3Carry {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Other
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        let carry = (Self::psi(g) + Self::psi(h) >= 3) as u8;
        Ok(VectorGF::from_elems(self.module.field(), &[carry]))
    }
}

fn symmetric(m: usize) -> Arc<Presentation> {
    Arc::new(Presentation::of(GroupKind::SymmetricCoxeter, m).unwrap())
}

fn a4() -> Arc<Presentation> {
    Arc::new(Presentation::of(GroupKind::AlternatingCarmichael, 4).unwrap())
}

/// `a·spin + b·sign_carry + dc` on a presentation, trivial GF(2) coefficients.
fn gf2_combination(pres: Arc<Presentation>, a: bool, b: bool, seed: u64) -> SharedCocycle {
    let n = pres.degree();
    let points: Vec<usize> = (0..n).collect();
    let module = GModule::trivial(pres.clone(), Field::new(2).unwrap());
    let mut parts: Vec<SharedCocycle> = vec![Arc::new(RandomCoboundary::new(module, seed))];
    if a {
        parts.push(Arc::new(SpinCocycle::new(pres.clone(), points.clone()).unwrap()));
    }
    if b {
        parts.push(Arc::new(SignCarryCocycle::new(pres, points).unwrap()));
    }
    Arc::new(SumCocycle::new(parts).unwrap())
}

fn agree(delta: &dyn Cocycle2) -> (bool, bool) {
    let presented = coboundary_test(delta).unwrap().is_feasible();
    let table = table_coboundary_test(delta, 100).unwrap();
    (presented, table)
}

#[test]
fn z3_carry_is_a_nonzero_class_on_a4() {
    let c = Z3Carry::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    check_cocycle(&c, &mut rng, 500).unwrap();
    assert_eq!(agree(&c), (false, false));
}

#[test]
fn known_classes_over_gf2() {
    // S_3: the sign carry is the nonzero class of H²(Z/2, F_2) inflated.
    let carry = SignCarryCocycle::on_symmetric(3).unwrap();
    assert_eq!(agree(&carry), (false, false));
    let spin = SpinCocycle::on_symmetric(4).unwrap();
    assert_eq!(agree(&spin), (false, false));
    let zero = ZeroCocycle::new(GModule::trivial(symmetric(4), Field::new(2).unwrap()));
    assert_eq!(agree(&zero), (true, true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complement_system_matches_table_over_gf2(m in 3usize..=4, a: bool, b: bool, seed: u64) {
        let delta = gf2_combination(symmetric(m), a, b, seed);
        let (presented, table) = agree(delta.as_ref());
        prop_assert_eq!(presented, table);
    }

    #[test]
    fn complement_system_matches_table_on_a4_over_gf2(a: bool, seed: u64) {
        let delta = gf2_combination(a4(), a, false, seed);
        let (presented, table) = agree(delta.as_ref());
        prop_assert_eq!(presented, table);
    }

    #[test]
    fn complement_system_matches_table_over_gf3(which in 0usize..3, carry: bool, seed: u64) {
        let pres = [symmetric(3), symmetric(4), a4()][which].clone();
        let module = GModule::trivial(pres, Field::new(3).unwrap());
        let mut parts: Vec<SharedCocycle> = vec![Arc::new(RandomCoboundary::new(module, seed))];
        if carry && which == 2 {
            parts.push(Arc::new(Z3Carry::new()));
        }
        let delta = SumCocycle::new(parts).unwrap();
        let (presented, table) = agree(&delta);
        prop_assert_eq!(presented, table);
        prop_assert_eq!(presented, !(carry && which == 2));
    }
}

#[test]
fn todd_coxeter_matches_realized_orders() {
    for n in 3..=8 {
        for kind in [GroupKind::AlternatingCarmichael, GroupKind::SymmetricCoxeter] {
            let p = Presentation::of(kind, n).unwrap();
            let enumerated = todd_coxeter_order(&p, 200_000).unwrap();
            assert_eq!(enumerated, p.group().order(), "{kind:?} n = {n}");
            assert_eq!(enumerated, p.expected_order(), "{kind:?} n = {n}");
        }
    }
    for k in 5..=8 {
        for p in [
            young_pair_presentation(k).unwrap(),
            pointwise_pair_presentation(k).unwrap(),
        ] {
            assert!(p.relators_hold());
            assert_eq!(todd_coxeter_order(&p, 200_000).unwrap(), p.group().order(), "k = {k}");
        }
    }
}

#[test]
fn cocycle_identity_on_many_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spin = SpinCocycle::on_symmetric(8).unwrap();
    check_cocycle(&spin, &mut rng, 10_000).unwrap();
    let carry = SignCarryCocycle::on_symmetric(8).unwrap();
    check_cocycle(&carry, &mut rng, 10_000).unwrap();
}
