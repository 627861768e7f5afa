use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ExtElement, ExtGroup};
use crate::cohom::{coboundary_test, lift_word, tails_with_section, Cocycle2, MappedCocycle, SystemRecord};
use crate::error::{Error, Result};
use crate::gf::{MatrixGF, SubspaceGF, VectorGF};
use crate::gmod::{g_core, GModule};
use crate::perm::{
    pointwise_pair_presentation, young_pair_presentation, PairTransversal, PermGroup, Permutation, Presentation,
};

/// The subgroup of `G` over which the stabilizer is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupKind {
    /// Setwise stabilizer of `{1, 2}`, acting on `M/M₀` by the sign character.
    YoungPair,
    /// Pointwise stabilizer of `1` and `2`, acting trivially on `M/M₀`.
    PointwisePair,
}

impl SubgroupKind {
    pub fn presentation(self, k: usize) -> Result<Presentation> {
        match self {
            SubgroupKind::YoungPair => young_pair_presentation(k),
            SubgroupKind::PointwisePair => pointwise_pair_presentation(k),
        }
    }

    pub fn transversal(self, k: usize) -> Result<PairTransversal> {
        match self {
            SubgroupKind::YoungPair => PairTransversal::unordered(k),
            SubgroupKind::PointwisePair => PairTransversal::ordered(k),
        }
    }
}

/// A complement to `M/M₀` in the preimage of a pair stabilizer, modulo `M₀`.
///
/// `M₀` is the kernel of a functional `φ` on `M` that is equivariant for the
/// subgroup; the stabilizer is `{(m, y) : φ(m) = c(y)}`.
pub struct StabilizerSection {
    kind: SubgroupKind,
    functional: VectorGF,
    z: VectorGF,
    quotient: Arc<MappedCocycle>,
    system: SystemRecord,
    section: Vec<VectorGF>,
}

/// Builds the stabilizer section for `h` over the subgroup `kind`, with `M₀ = ker φ`.
pub fn splitting_over(h: &ExtGroup, kind: SubgroupKind, functional: &VectorGF) -> Result<StabilizerSection> {
    let module = h.module();
    let field = module.field();
    let d = module.dim();
    if functional.len() != d {
        return Err(Error::DimensionMismatch("functional does not fit the module".into()));
    }
    let lead = functional
        .leading()
        .ok_or_else(|| Error::InvalidInput("zero functional".into()))?;
    let z = VectorGF::unit(field, d, lead).scaled(field.inv(functional.get(lead)));
    let sub = Arc::new(kind.presentation(h.degree())?);
    let restricted = module.restrict(sub.clone())?;
    let mut chars = Vec::new();
    for a in restricted.action() {
        let chi = a.vec_mul(&z).dot(functional);
        for j in 0..d {
            let e = VectorGF::unit(field, d, j);
            if a.vec_mul(&e).dot(functional) != field.mul(chi, functional.get(j)) {
                return Err(Error::check("splitting", "M₀ is not invariant under the subgroup"));
            }
        }
        chars.push(MatrixGF::from_rows(
            field,
            1,
            vec![VectorGF::from_elems(field, &[chi])],
        )?);
    }
    let theta = GModule::new(sub, field, 1, chars)?;
    let phi = functional.clone();
    let quotient = Arc::new(MappedCocycle::new(
        h.cocycle().clone(),
        theta,
        Arc::new(move |v: &VectorGF| VectorGF::from_elems(v.field(), &[v.dot(&phi)])),
    ));
    let sys = coboundary_test(quotient.as_ref())?;
    let section = sys.solution.clone().ok_or_else(|| {
        Error::check(
            "splitting",
            format!(
                "the extension of M/M₀ by the {kind:?} subgroup does not split, contradicting H²(subgroup, M/M₀) = 0"
            ),
        )
    })?;
    if !tails_with_section(quotient.as_ref(), &section)?
        .iter()
        .all(|t| t.is_zero())
    {
        return Err(Error::check("splitting", "section leaves nonzero relator tails"));
    }
    Ok(StabilizerSection {
        kind,
        functional: functional.clone(),
        z,
        quotient,
        system: sys.record(),
        section,
    })
}

impl StabilizerSection {
    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn functional(&self) -> &VectorGF {
        &self.functional
    }

    /// `M₀ = ker φ`.
    pub fn kernel(&self) -> SubspaceGF {
        let f = self.functional.field();
        let col = MatrixGF::from_rows(f, self.functional.len(), vec![self.functional.clone()]).expect("row");
        SubspaceGF::span(f, self.functional.len(), col.nullspace())
    }

    pub fn system(&self) -> &SystemRecord {
        &self.system
    }

    /// Section values `c_i ∈ M/M₀` on the subgroup's generators.
    pub fn section(&self) -> &[VectorGF] {
        &self.section
    }

    pub fn quotient_module(&self) -> &GModule {
        self.quotient.module()
    }

    /// `(χ(y), c(y))`: the character of `M/M₀` at `y` and the section value.
    pub fn evaluate(&self, y: &Permutation) -> Result<(u8, u8)> {
        let word = self.quotient_module().presentation().factor_word(y)?;
        let chi = self.quotient_module().word_matrix(&word).get(0, 0);
        let (c, _) = lift_word(self.quotient.as_ref(), &self.section, &word)?;
        Ok((chi, c.get(0)))
    }

    pub fn contains(&self, x: &ExtElement) -> Result<bool> {
        let sub = self.quotient_module().presentation();
        if !sub.group().contains(&x.g) {
            return Ok(false);
        }
        Ok(x.m.dot(&self.functional) == self.evaluate(&x.g)?.1)
    }
}

/// Right cosets of a stabilizer `S` in `H`, labelled `(coset of G-subgroup, fiber)`.
///
/// The point `(t, a)` is the coset of `(a·z·g_t, g_t)`, where `z` is a fixed
/// vector with `φ(z) = 1`.
pub struct CosetSpace {
    transversal: PairTransversal,
    p: usize,
    /// `shifts[t]·m = φ(m·g_t⁻¹)`
    shifts: Vec<VectorGF>,
    /// `φ(δ(g_t, g_t⁻¹))`
    inverse_terms: Vec<u8>,
}

impl CosetSpace {
    pub fn new(h: &ExtGroup, stab: &StabilizerSection) -> Result<Self> {
        let module = h.module();
        let transversal = stab.kind.transversal(h.degree())?;
        let mut shifts = Vec::with_capacity(transversal.len());
        let mut inverse_terms = Vec::with_capacity(transversal.len());
        for g in transversal.reps() {
            let gi = g.inverse();
            let a = module.element_matrix(&gi)?;
            shifts.push(a.mul_vec(&stab.functional));
            inverse_terms.push(h.cocycle().eval(g, &gi)?.dot(&stab.functional));
        }
        Ok(CosetSpace {
            transversal,
            p: module.field().p() as usize,
            shifts,
            inverse_terms,
        })
    }

    pub fn degree(&self) -> usize {
        self.transversal.len() * self.p
    }

    pub fn transversal(&self) -> &PairTransversal {
        &self.transversal
    }

    pub fn point(&self, t: usize, a: u8) -> usize {
        t * self.p + a as usize
    }

    pub fn split_point(&self, point: usize) -> (usize, u8) {
        (point / self.p, (point % self.p) as u8)
    }

    pub fn label(&self, point: usize) -> String {
        let (t, a) = self.split_point(point);
        format!("{}:{}", self.transversal.label(t), a)
    }

    /// The `M`-part of the point stabilizer's action: `m` fixes coset `t`
    /// pointwise iff `shift(t)·m = 0`.
    pub fn shift(&self, t: usize) -> &VectorGF {
        &self.shifts[t]
    }

    pub fn representative(&self, h: &ExtGroup, stab: &StabilizerSection, point: usize) -> Result<ExtElement> {
        let (t, a) = self.split_point(point);
        let g = self.transversal.rep(t).clone();
        let m = h.module().act(&stab.z.scaled(a), &g)?;
        Ok(ExtElement { m, g })
    }

    /// The point whose coset contains `x`.
    pub fn locate(&self, h: &ExtGroup, stab: &StabilizerSection, x: &ExtElement) -> Result<usize> {
        let field = h.module().field();
        let t = self.transversal.label_of(&x.g);
        let gi = self.transversal.rep(t).inverse();
        let y = x.g.then(&gi);
        // x·(0,g_t)⁻¹ = (m·g_t⁻¹ - δ(g_t,g_t⁻¹) + δ(g,g_t⁻¹), y)
        let mut phi = x.m.dot(&self.shifts[t]);
        phi = field.sub(phi, self.inverse_terms[t]);
        phi = field.add(phi, h.cocycle().eval(&x.g, &gi)?.dot(&stab.functional));
        let (_, c) = stab.evaluate(&y)?;
        Ok(self.point(t, field.sub(phi, c)))
    }

    /// The permutation of the points induced by right multiplication by `x`.
    pub fn image(&self, h: &ExtGroup, stab: &StabilizerSection, x: &ExtElement) -> Result<Permutation> {
        let field = h.module().field();
        let mut images = vec![0; self.degree()];
        for t in 0..self.transversal.len() {
            // (a·z·g_t, g_t)·(m, s) lands in coset t' with fiber
            // a·χ(y) + (m + δ(g_t,s))·shift(t') - φδ(g_t',g_t'⁻¹) + φδ(g_t s, g_t'⁻¹) - c(y)
            let g = self.transversal.rep(t);
            let (y, t2) = self.transversal.decompose(t, &x.g);
            let (chi, c) = if y.is_identity() { (1, 0) } else { stab.evaluate(&y)? };
            let gs = g.then(&x.g);
            let gi = self.transversal.rep(t2).inverse();
            let mut m = x.m.clone();
            if !x.g.is_identity() {
                m.add_assign(&h.cocycle().eval(g, &x.g)?);
            }
            let mut base = m.dot(&self.shifts[t2]);
            base = field.sub(base, self.inverse_terms[t2]);
            base = field.add(base, h.cocycle().eval(&gs, &gi)?.dot(&stab.functional));
            base = field.sub(base, c);
            for a in field.elements() {
                let b = field.add(field.mul(a, chi), base);
                images[self.point(t, a)] = self.point(t2, b);
            }
        }
        Permutation::from_images(images)
    }
}

/// The permutation representation of `H` on a coset space.
pub struct CosetAction {
    pub space: CosetSpace,
    /// Images of `H`'s generators: lifts of `G`'s generators, then a basis of `M`.
    pub images: Vec<Permutation>,
    pub lift_count: usize,
}

impl CosetAction {
    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.space.degree(), self.images.clone())
    }

    pub fn is_transitive(&self) -> Result<bool> {
        Ok(self.group()?.orbit(0)?.len() == self.space.degree())
    }

    pub fn lift_images(&self) -> &[Permutation] {
        &self.images[..self.lift_count]
    }

    pub fn module_images(&self) -> &[Permutation] {
        &self.images[self.lift_count..]
    }

    /// `{m ∈ M : (m,1) acts trivially}`, from the coset shifts.
    pub fn kernel_on_module(&self, module: &GModule) -> SubspaceGF {
        kernel_on_points(&self.space, module, 0..self.space.transversal().len())
    }
}

/// `{m ∈ M : (m,1) fixes every point over the cosets in `cosets`}`.
pub fn kernel_on_points(space: &CosetSpace, module: &GModule, cosets: impl IntoIterator<Item = usize>) -> SubspaceGF {
    let field = module.field();
    let cols: Vec<VectorGF> = cosets.into_iter().map(|t| space.shift(t).clone()).collect();
    if cols.is_empty() {
        return SubspaceGF::full(field, module.dim());
    }
    let a = MatrixGF::from_rows(field, module.dim(), cols).expect("shift rows");
    SubspaceGF::span(field, module.dim(), a.nullspace())
}

pub fn coset_action(h: &ExtGroup, stab: &StabilizerSection) -> Result<CosetAction> {
    let space = CosetSpace::new(h, stab)?;
    let gens = h.generators();
    let images = gens
        .iter()
        .map(|x| space.image(h, stab, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetAction {
        space,
        images,
        lift_count: h.module().generator_count(),
    })
}

/// Faithfulness data for a coset action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulCertificate {
    /// Dimension of the largest submodule of `M` inside `M₀`.
    pub gcore_dim: usize,
    /// Dimension of `{m : (m,1) acts trivially}`, read off the coset shifts.
    pub kernel_on_module_dim: usize,
    pub argument: Vec<String>,
    pub order_check: Option<OrderCheck>,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// `ker ∩ M` is a submodule inside `M₀`, so it vanishes iff the G-core of `M₀`
/// does; a kernel not inside `M` would map onto the simple group `G` and give a
/// complement, which the nonsplit certificate excludes.
pub fn faithfulness_certificate(
    h: &ExtGroup,
    stab: &StabilizerSection,
    action: &CosetAction,
    nonsplit: bool,
    order_check: bool,
) -> Result<FaithfulCertificate> {
    let module = h.module();
    let core = g_core(module, &stab.kernel());
    let kernel = action.kernel_on_module(module);
    if kernel != core {
        return Err(Error::check(
            "faithfulness",
            "kernel on M differs from the G-core of M₀",
        ));
    }
    let order_check = if order_check {
        let expected = num_bigint::BigUint::from(module.field().p()).pow(module.dim() as u32)
            * module.presentation().expected_order();
        let computed = action.group()?.order();
        Some(OrderCheck {
            matches: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        })
    } else {
        None
    };
    let argument =
        vec![
            format!(
                "kernel ∩ M is a G-submodule of M inside M₀; G-core(M₀) has dimension {}",
                core.dim()
            ),
            format!(
            "a kernel not inside M maps onto the simple group G and yields a complement to M; nonsplit certificate: {}",
            if nonsplit { "no complement exists" } else { "not established" }
        ),
        ];
    let faithful = core.dim() == 0 && nonsplit && order_check.as_ref().is_none_or(|c| c.matches);
    Ok(FaithfulCertificate {
        gcore_dim: core.dim(),
        kernel_on_module_dim: kernel.dim(),
        argument,
        order_check,
        faithful,
    })
}
