use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::certificate::{
    cocycle_record, images_record, module_record, presentation_record, stabilizer_record, verdict, Certificate,
    Construction, ConstructionKind, Degrees, RestrictionRecord,
};
use super::RunConfig;
use crate::cohom::{
    check_cocycle, coboundary_test, InducedCocycle, MappedCocycle, SharedCocycle, SignCarryCocycle, SpinCocycle,
    SumCocycle, SystemRecord,
};
use crate::error::{Error, Result};
use crate::ext::{
    coset_action, faithfulness_certificate, nonsplit_certificate, restrict_to_subextension, splitting_over,
    CosetAction, ExtGroup, FaithfulCertificate, NonsplitCertificate, OrderCheck, StabilizerSection, SubgroupKind,
};
use crate::gf::{Quotient, SubspaceGF, VectorGF};
use crate::gmod::{
    composition_factors, fixed_points, pair_permutation_module, split, GModule, IrreducibilityCertificate, PairModule,
    Split,
};
use crate::perm::{young_pair_presentation, PairTransversal, PermGroup, Permutation};

/// Candidate classes on `Y`, in selection order.
pub const CLASS_NAMES: [&str; 3] = ["spin", "sign_carry", "sum"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub k: usize,
    /// Dimensions of `P₁ = F·f`, `P₂ = span(x_i)` and `P₃ = (P₁+P₂)^⊥`.
    pub summand_dims: Vec<usize>,
    pub direct_sum: bool,
    pub summand_certificates: Vec<Option<IrreducibilityCertificate>>,
    /// Distinct composition factor dimensions of `P`.
    pub factor_dims: Vec<usize>,
    pub u_orthogonal: bool,
    pub u_isotropic: bool,
    pub fixed_dim: usize,
    /// `C_P(Y) = span{u, f, x₁+x₂}`.
    pub fixed_basis: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.direct_sum
            && self.summand_certificates.iter().all(|c| c.is_some())
            && self.u_orthogonal
            && self.u_isotropic
            && self.fixed_dim == 3
            && self.fixed_basis
    }
}

pub fn decompose_pair_module(pm: &PairModule, rng: &mut impl Rng, tries: usize) -> Result<DecompositionReport> {
    let module = &pm.module;
    let field = module.field();
    let k = pm.pairs.k();
    let (p1, p2, p3) = (pm.p1(), pm.p2(), pm.p3());
    let p12 = pm.p1_plus_p2();
    let direct_sum =
        p1.dim() + p2.dim() == p12.dim() && p12.intersection(&p3)?.dim() == 0 && p12.dim() + p3.dim() == module.dim();
    let mut certs = Vec::new();
    for s in [&p1, &p2, &p3] {
        let sub = module.submodule(s)?;
        certs.push(match split(&sub, rng, tries)? {
            Split::Irreducible(c) => Some(c),
            Split::Proper(_) => None,
        });
    }
    let mut factor_dims: Vec<usize> = composition_factors(module, rng, tries)?
        .iter()
        .map(|f| f.module.dim())
        .collect();
    factor_dims.sort_unstable();
    factor_dims.dedup();
    let y = Arc::new(young_pair_presentation(k)?);
    let fixed = fixed_points(&module.restrict(y)?);
    let expected = SubspaceGF::span(field, module.dim(), [pm.u.clone(), pm.f.clone(), pm.x[0].sum(&pm.x[1])]);
    Ok(DecompositionReport {
        k,
        summand_dims: vec![p1.dim(), p2.dim(), p3.dim()],
        direct_sum,
        summand_certificates: certs,
        factor_dims,
        u_orthogonal: p12.basis().iter().all(|b| b.dot(&pm.u) == 0),
        u_isotropic: pm.u.dot(&pm.u) == 0,
        fixed_dim: fixed.dim(),
        fixed_basis: fixed == expected,
    })
}

/// A class on `Y = S_{k-2}` with trivial GF(2) coefficients.
pub fn class_on_young(k: usize, name: &str) -> Result<SharedCocycle> {
    let y = Arc::new(young_pair_presentation(k)?);
    let points: Vec<usize> = (2..k).collect();
    let spin: SharedCocycle = Arc::new(SpinCocycle::new(y.clone(), points.clone())?);
    let carry: SharedCocycle = Arc::new(SignCarryCocycle::new(y, points)?);
    Ok(match name {
        "spin" => spin,
        "sign_carry" => carry,
        "sum" => Arc::new(SumCocycle::new(vec![spin, carry])?),
        _ => return Err(Error::InvalidInput(format!("unknown class {name}"))),
    })
}

/// The Eckmann–Shapiro induction of a class on `Y` to the pair module.
pub fn induced_class(pm: &PairModule, name: &str) -> Result<SharedCocycle> {
    let k = pm.pairs.k();
    Ok(Arc::new(InducedCocycle::new(
        class_on_young(k, name)?,
        pm.module.clone(),
        PairTransversal::unordered(k)?,
    )?))
}

/// `M = P/(P₁+P₂)` with the quotient map.
pub fn reduced_module(pm: &PairModule) -> Result<(GModule, Quotient)> {
    let q = pm.p1_plus_p2().quotient_with_section();
    Ok((pm.module.quotient(&q)?, q))
}

pub fn project_cocycle(delta: SharedCocycle, target: GModule, q: Quotient) -> SharedCocycle {
    Arc::new(MappedCocycle::new(
        delta,
        target,
        Arc::new(move |v: &VectorGF| q.project(v)),
    ))
}

/// `g₁ = (1 2)(3 4)` and `g₂ = (3 4)(5 6)`.
pub fn lemma_elements(k: usize) -> Result<(Permutation, Permutation)> {
    Ok((
        Permutation::from_cycles(k, &[&[0, 1], &[2, 3]])?,
        Permutation::from_cycles(k, &[&[2, 3], &[4, 5]])?,
    ))
}

/// `((δ(g₁,g₁), u), (δ(g₂,g₂), u))`.
pub fn lemma_inner_products(delta: &SharedCocycle, u: &VectorGF) -> Result<[u8; 2]> {
    let k = delta.module().presentation().degree();
    let (g1, g2) = lemma_elements(k)?;
    Ok([delta.eval(&g1, &g1)?.dot(u), delta.eval(&g2, &g2)?.dot(u)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub name: String,
    /// Complement system for the class on `Y` itself.
    pub on_young: SystemRecord,
    /// Complement system for the induced class projected to `P/(P₁+P₂)`.
    pub on_reduced: Option<SystemRecord>,
    pub inner_products: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSelection {
    pub classes: Vec<ClassReport>,
    pub selected: String,
    /// Lower bound on `dim H²(Y, F)` from three nonzero classes closed under addition.
    pub h2_lower_bound: usize,
    pub note: String,
}

/// Runs the complement systems for every candidate class and picks the first
/// one nontrivial on `P₃`. With `reduced_systems = false` the `P₃` systems are
/// skipped and the first class is taken.
pub fn select_class(pm: &PairModule, reduced_systems: bool) -> Result<ClassSelection> {
    let k = pm.pairs.k();
    let (m, q) = reduced_module(pm)?;
    let mut classes = Vec::new();
    for name in CLASS_NAMES {
        let eps = class_on_young(k, name)?;
        let on_young = coboundary_test(eps.as_ref())?.record();
        let delta = induced_class(pm, name)?;
        let on_reduced = if reduced_systems {
            let projected = project_cocycle(delta.clone(), m.clone(), q.clone());
            Some(coboundary_test(projected.as_ref())?.record())
        } else {
            None
        };
        classes.push(ClassReport {
            name: name.to_string(),
            on_young,
            on_reduced,
            inner_products: lemma_inner_products(&delta, &pm.u)?,
        });
    }
    let selected = classes
        .iter()
        .find(|c| c.on_reduced.as_ref().is_none_or(|s| !s.feasible))
        .ok_or_else(|| Error::check("class selection", "no candidate class is nontrivial on P₃"))?
        .name
        .clone();
    let nonzero = classes.iter().filter(|c| !c.on_young.feasible).count();
    Ok(ClassSelection {
        h2_lower_bound: if nonzero == 3 { 2 } else { 0 },
        note: "three pairwise non-cohomologous nonzero classes; dim H²(Y, F) = 2 is not computed".into(),
        classes,
        selected,
    })
}

/// The direct construction at `k ≡ 3 (mod 4)`.
pub struct EvenBuild {
    pub k: usize,
    pub pm: PairModule,
    pub decomposition: DecompositionReport,
    pub selection: ClassSelection,
    pub inner_products: [u8; 2],
    pub h: ExtGroup,
    pub stab: StabilizerSection,
    pub action: CosetAction,
    pub transitive: bool,
    pub nonsplit: NonsplitCertificate,
}

pub fn build_even(k: usize, cfg: &RunConfig, rng: &mut impl Rng) -> Result<EvenBuild> {
    if k % 4 != 3 || k < 7 {
        return Err(Error::InvalidInput(format!(
            "direct even construction needs k = 3 mod 4, got {k}"
        )));
    }
    let budgets = &cfg.budgets;
    let pm = pair_permutation_module(k, 2)?;
    log::info!("decomposing the pair module at k = {k}");
    let decomposition = decompose_pair_module(&pm, rng, budgets.meataxe_tries)?;
    if !decomposition.holds() {
        return Err(Error::check("decomposition", format!("{decomposition:?}")));
    }
    log::info!("selecting the class");
    let selection = select_class(&pm, true)?;
    let delta_p = induced_class(&pm, &selection.selected)?;
    check_cocycle(delta_p.as_ref(), rng, budgets.associativity_trials.min(1000))?;
    let inner_products = lemma_inner_products(&delta_p, &pm.u)?;
    if inner_products != [1, 0] {
        return Err(Error::check(
            "cocycle lemma",
            format!("inner products {inner_products:?}, expected [1, 0]"),
        ));
    }
    let (m, q) = reduced_module(&pm)?;
    let field = m.field();
    let phi: Vec<u8> = (0..m.dim())
        .map(|i| q.section(&VectorGF::unit(field, m.dim(), i)).dot(&pm.u))
        .collect();
    let phi = VectorGF::from_elems(field, &phi);
    let delta = project_cocycle(delta_p, m, q);
    log::info!("building the extension");
    let h = ExtGroup::build(delta, rng, budgets.associativity_trials)?;
    let stab = splitting_over(&h, SubgroupKind::PointwisePair, &phi)?;
    if !stab.quotient_module().action().iter().all(|a| a.is_identity()) {
        return Err(Error::check(
            "splitting",
            "the fiber M/M₀ is not central in the preimage of X",
        ));
    }
    log::info!("computing the coset action");
    let action = coset_action(&h, &stab)?;
    let transitive = action.is_transitive()?;
    log::info!("certifying nonsplitness");
    let nonsplit = nonsplit_certificate(&h, budgets.sweep_elements, rng)?;
    Ok(EvenBuild {
        k,
        pm,
        decomposition,
        selection,
        inner_products,
        h,
        stab,
        action,
        transitive,
        nonsplit,
    })
}

fn details(b: &EvenBuild) -> serde_json::Value {
    serde_json::json!({
        "decomposition": b.decomposition,
        "classes": b.selection,
        "lemma_inner_products": b.inner_products,
    })
}

pub fn run_even(k: usize, cfg: &RunConfig) -> Result<Certificate> {
    let mut rng = cfg.rng();
    if k < 7 {
        return Err(Error::InvalidInput(format!("even construction needs k >= 7, got {k}")));
    }
    let j = (k..=k + 3).find(|j| j % 4 == 3).expect("some residue");
    let b = build_even(j, cfg, &mut rng)?;
    let closed_form = 2 * k * (k - 1);
    let degrees = |degree| Degrees {
        degree,
        formula: "2k(k-1)".into(),
        closed_form,
        sanity_lower: k * (k - 1),
    };
    if j == k {
        let module = b.h.module();
        let order_check = b.action.space.degree() <= cfg.budgets.order_check_degree;
        let faithful = faithfulness_certificate(&b.h, &b.stab, &b.action, b.nonsplit.nonsplit, order_check)?;
        let degree = b.action.space.degree();
        let v = verdict(
            degree == closed_form,
            b.transitive,
            faithful.faithful,
            b.nonsplit.nonsplit,
        );
        return Ok(Certificate {
            construction: Construction {
                kind: ConstructionKind::Even,
                k,
                p: 2,
                j: None,
                within_hypotheses: true,
                notes: vec![format!("class {}", b.selection.selected)],
            },
            degrees: degrees(degree),
            presentation: presentation_record(module),
            module: module_record(module, vec![module.dim()], None),
            cocycle: cocycle_record(b.h.cocycle().as_ref(), "induced_projected")?,
            stabilizer: Some(stabilizer_record(&b.stab)),
            generator_images: images_record(degree, b.action.lift_images(), b.action.module_images()),
            nonsplit: b.nonsplit.clone(),
            faithful,
            transitive: b.transitive,
            details: details(&b),
            restriction: None,
            seed: cfg.seed,
            verdict: v,
        });
    }
    log::info!("restricting from A_{j} to A_{k}");
    let r = restrict_to_subextension(&b.h, &b.stab, &b.action, k, cfg.budgets.sweep_elements, &mut rng)?;
    let degree = r.points.len();
    let group = PermGroup::new(degree, r.images.clone())?;
    let transitive = group.orbit(0)?.len() == degree;
    let module = r.image_ext.module();
    let order_check = if degree <= cfg.budgets.order_check_degree {
        let expected = num_bigint::BigUint::from(2u8).pow(module.dim() as u32) * module.presentation().expected_order();
        let computed = group.order();
        Some(OrderCheck {
            matches: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        })
    } else {
        None
    };
    let faithful = FaithfulCertificate {
        gcore_dim: 0,
        kernel_on_module_dim: 0,
        argument: vec![
            format!(
                "M' = M/K where K (dimension {}) is the part of M acting trivially on the orbit",
                r.kernel.dim()
            ),
            "the image is a permutation group on the orbit; the order check identifies it with M'.A_k".into(),
        ],
        faithful: r.nonsplit.nonsplit && order_check.as_ref().is_none_or(|c| c.matches),
        order_check,
    };
    let mut rng2 = cfg.rng();
    let factor_dims = {
        let mut d: Vec<usize> = composition_factors(module, &mut rng2, cfg.budgets.meataxe_tries)?
            .iter()
            .map(|f| f.module.dim())
            .collect();
        d.sort_unstable();
        d
    };
    let v = verdict(
        degree == closed_form,
        transitive,
        faithful.faithful,
        r.nonsplit.nonsplit,
    );
    let lift_count = r.lift_count;
    Ok(Certificate {
        construction: Construction {
            kind: ConstructionKind::Even,
            k,
            p: 2,
            j: Some(j),
            within_hypotheses: true,
            notes: vec![
                format!("class {}", b.selection.selected),
                format!(
                    "image of the preimage of A_{k} on an orbit of the degree-{} action of the A_{j} extension",
                    b.action.space.degree()
                ),
            ],
        },
        degrees: degrees(degree),
        presentation: presentation_record(module),
        module: module_record(module, factor_dims, None),
        cocycle: cocycle_record(r.image_ext.cocycle().as_ref(), "induced_projected_restricted")?,
        stabilizer: None,
        generator_images: images_record(degree, &r.images[..lift_count], &r.images[lift_count..]),
        nonsplit: r.nonsplit.clone(),
        faithful,
        transitive,
        details: details(&b),
        restriction: Some(RestrictionRecord {
            j,
            orbits: r.orbits.clone(),
            kernel_dim: r.kernel.dim(),
            fallback: r.fallback,
        }),
        seed: cfg.seed,
        verdict: v,
    })
}
