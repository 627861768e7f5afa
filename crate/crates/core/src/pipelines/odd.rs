use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::certificate::{
    cocycle_record, images_record, module_record, presentation_record, stabilizer_record, verdict, Certificate,
    Construction, ConstructionKind, Degrees,
};
use super::RunConfig;
use crate::cohom::{check_cocycle, derivation_space, ConnectingCocycle, Derivation, SharedCocycle};
use crate::error::{Error, Result};
use crate::ext::{
    coset_action, faithfulness_certificate, nonsplit_certificate, splitting_over, CosetAction, ExtGroup,
    NonsplitCertificate, StabilizerSection, SubgroupKind,
};
use crate::gf::{MatrixGF, SubspaceGF, VectorGF};
use crate::gmod::{analyze, hom_space, sign_induced_module, socle, GModule, StructureReport};
use crate::perm::young_pair_presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddDims {
    pub v: usize,
    pub m: usize,
    pub l: usize,
    pub d: usize,
    pub expected_m: usize,
    pub expected_l: usize,
    pub expected_d: usize,
}

impl OddDims {
    pub fn match_formulas(&self) -> bool {
        self.m == self.expected_m && self.l == self.expected_l && self.d == self.expected_d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddStructure {
    pub v: StructureReport,
    pub dims: OddDims,
    /// The socle and head are both a single copy of `L`.
    pub socle_is_l: bool,
    pub head_is_l: bool,
    /// `(dimension, multiplicity)` of the socle of `rad V / soc V`.
    pub middle: Vec<(usize, usize)>,
    /// `rad V / soc V` is semisimple with factors `F_p` and `D`.
    pub middle_is_trivial_plus_d: bool,
    pub hom_m_theta: usize,
    pub hom_theta_m: usize,
    /// `M_Y = θ ⊕ M₀` for a `Y`-stable line outside `M₀`.
    pub theta_complement: bool,
    pub h1_quotient: usize,
}

impl OddStructure {
    pub fn holds(&self) -> bool {
        self.dims.match_formulas()
            && self.socle_is_l
            && self.head_is_l
            && self.middle_is_trivial_plus_d
            && self.hom_m_theta == 1
            && self.theta_complement
            && self.h1_quotient >= 1
    }
}

pub struct OddBuild {
    pub k: usize,
    pub p: u32,
    pub structure: OddStructure,
    pub h: ExtGroup,
    pub stab: StabilizerSection,
    pub action: CosetAction,
    pub transitive: bool,
    pub nonsplit: NonsplitCertificate,
}

fn theta_module(k: usize, field: crate::gf::Field) -> Result<GModule> {
    let y = Arc::new(young_pair_presentation(k)?);
    let minus = MatrixGF::from_rows(field, 1, vec![VectorGF::from_elems(field, &[field.neg(1)])])?;
    let n = y.generator_count();
    GModule::new(y, field, 1, vec![minus; n])
}

fn image_sum(maps: &[crate::gmod::ModuleMap], field: crate::gf::Field, dim: usize) -> Result<SubspaceGF> {
    maps.iter()
        .try_fold(SubspaceGF::zero(field, dim), |acc, m| acc.sum(&m.image()))
}

pub fn build_odd(k: usize, p: u32, cfg: &RunConfig, rng: &mut impl Rng) -> Result<OddBuild> {
    let budgets = &cfg.budgets;
    let v = sign_induced_module(k, p)?;
    let field = v.field();
    log::info!("analyzing the induced sign module (dimension {})", v.dim());
    let (report, irreducibles) = analyze(&v, rng, budgets.meataxe_tries)?;
    let (dl, dd) = (k - 2, (k - 2) * (k - 3) / 2);
    let find = |d: usize| {
        irreducibles
            .iter()
            .find(|m| m.dim() == d)
            .cloned()
            .ok_or_else(|| Error::check("structure", format!("no composition factor of dimension {d}")))
    };
    let (l_irr, d_irr) = (find(dl)?, find(dd)?);
    let soc = socle(&v, &irreducibles)?;
    let q1 = soc.space.quotient_with_section();
    let w = v.quotient(&q1)?;
    let d_image = image_sum(&hom_space(&d_irr, &w)?, field, w.dim())?;
    if d_image.dim() != dd {
        return Err(Error::check(
            "structure",
            format!("D occurs {} times in soc(V/soc V)", d_image.dim() / dd.max(1)),
        ));
    }
    let m_space = q1.preimage(&d_image);
    let rad = crate::gmod::radical(&v, &irreducibles)?;
    let middle_socle = socle(&w, &irreducibles)?;
    let rad_mod_soc = q1.project_subspace(&rad);
    let mut middle = middle_socle.components.clone();
    middle.sort_unstable();
    let middle_is_trivial_plus_d = middle_socle.space == rad_mod_soc && middle == vec![(1, 1), (dd, 1)];

    let m = v.submodule(&m_space)?;
    let qm = m_space.quotient_with_section();
    let vm = v.quotient(&qm)?;
    let theta = theta_module(k, field)?;
    let y = theta.presentation().clone();
    let m_y = m.restrict(y)?;
    let to_theta = hom_space(&m_y, &theta)?;
    let from_theta = hom_space(&theta, &m_y)?;
    if to_theta.len() != 1 {
        return Err(Error::check(
            "restriction to Y",
            format!("dim Hom_Y(M, θ) = {}", to_theta.len()),
        ));
    }
    let phi = to_theta[0].matrix.transpose().row(0).clone();
    let theta_complement = from_theta.iter().any(|f| f.matrix.row(0).dot(&phi) != 0);
    let ds = derivation_space(&vm);
    let structure = OddStructure {
        socle_is_l: soc.components == vec![(dl, 1)] && l_irr.dim() == dl,
        head_is_l: report.head_dim == dl,
        dims: OddDims {
            v: v.dim(),
            m: m.dim(),
            l: l_irr.dim(),
            d: d_irr.dim(),
            expected_m: dl + dd,
            expected_l: dl,
            expected_d: dd,
        },
        v: report,
        middle,
        middle_is_trivial_plus_d,
        hom_m_theta: to_theta.len(),
        hom_theta_m: from_theta.len(),
        theta_complement,
        h1_quotient: ds.h1_dim,
    };
    if !structure.holds() {
        return Err(Error::check("structure", format!("{structure:?}")));
    }
    let values = ds
        .non_inner()
        .ok_or_else(|| Error::check("cohomology", "H¹(G, V/M) = 0"))?;
    let d = Derivation::new(vm, values)?;
    let delta: SharedCocycle = Arc::new(ConnectingCocycle::new(d, v, qm, m)?);
    check_cocycle(delta.as_ref(), rng, budgets.associativity_trials.min(1000))?;
    log::info!("building the extension");
    let h = ExtGroup::build(delta, rng, budgets.associativity_trials)?;
    let stab = splitting_over(&h, SubgroupKind::YoungPair, &phi)?;
    log::info!("computing the coset action");
    let action = coset_action(&h, &stab)?;
    let transitive = action.is_transitive()?;
    log::info!("certifying nonsplitness");
    let nonsplit = nonsplit_certificate(&h, budgets.sweep_elements, rng)?;
    Ok(OddBuild {
        k,
        p,
        structure,
        h,
        stab,
        action,
        transitive,
        nonsplit,
    })
}

pub fn run_odd(k: usize, p: u32, cfg: &RunConfig) -> Result<Certificate> {
    let mut rng = cfg.rng();
    let b = build_odd(k, p, cfg, &mut rng)?;
    let module = b.h.module();
    let degree = b.action.space.degree();
    let closed_form = p as usize * k * (k - 1) / 2;
    let order_check = degree <= cfg.budgets.order_check_degree;
    let faithful = faithfulness_certificate(&b.h, &b.stab, &b.action, b.nonsplit.nonsplit, order_check)?;
    let within = k >= 10 && k.is_multiple_of(p as usize);
    let mut notes = vec!["M is the submodule of the induced sign module with factors L and D".to_string()];
    if !within {
        notes.push("outside theorem hypotheses".into());
    }
    let v = verdict(
        degree == closed_form,
        b.transitive,
        faithful.faithful,
        b.nonsplit.nonsplit,
    );
    Ok(Certificate {
        construction: Construction {
            kind: ConstructionKind::Odd,
            k,
            p: p as u8,
            j: None,
            within_hypotheses: within,
            notes,
        },
        degrees: Degrees {
            degree,
            formula: "pk(k-1)/2".into(),
            closed_form,
            sanity_lower: k * (k - 1),
        },
        presentation: presentation_record(module),
        module: module_record(
            module,
            vec![b.structure.dims.l, b.structure.dims.d],
            Some(b.structure.v.clone()),
        ),
        cocycle: cocycle_record(b.h.cocycle().as_ref(), "connecting")?,
        stabilizer: Some(stabilizer_record(&b.stab)),
        generator_images: images_record(degree, b.action.lift_images(), b.action.module_images()),
        nonsplit: b.nonsplit.clone(),
        faithful,
        transitive: b.transitive,
        details: serde_json::json!({ "structure": b.structure }),
        restriction: None,
        seed: cfg.seed,
        verdict: v,
    })
}
