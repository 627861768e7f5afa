use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{kernel_on_points, nonsplit_certificate, CosetAction, ExtGroup, NonsplitCertificate, StabilizerSection};
use crate::cohom::{MappedCocycle, SharedCocycle};
use crate::error::{Error, Result};
use crate::gf::{Quotient, SubspaceGF};
use crate::perm::{PermGroup, Permutation, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub size: usize,
    /// Dimension of the subspace of `M` acting trivially on the orbit.
    pub kernel_on_module_dim: usize,
}

/// The subgroup `J = π⁻¹(A_k)` of an extension over `A_j`, acting on one of
/// its orbits in the coset space.
pub struct Restriction {
    pub k: usize,
    pub j: usize,
    pub orbits: Vec<OrbitRecord>,
    /// Points of the selected orbit in the original coset space, sorted.
    pub points: Vec<usize>,
    /// Images on the orbit of lifts of `A_k`'s generators, then of a basis of `M' = M/K`.
    pub images: Vec<Permutation>,
    pub lift_count: usize,
    /// `K`: the part of `M` acting trivially on the orbit.
    pub kernel: SubspaceGF,
    pub quotient: Quotient,
    /// The extension `1 → M' → image → A_k → 1`.
    pub image_ext: ExtGroup,
    pub nonsplit: NonsplitCertificate,
    /// Set when the largest orbit's image splits and another orbit was used.
    pub fallback: bool,
}

/// Restricts the coset action of `h` (over `A_j`) to `J` and extracts an
/// orbit of size `2k(k-1)` carrying a nonsplit image.
pub fn restrict_to_subextension(
    h: &ExtGroup,
    stab: &StabilizerSection,
    action: &CosetAction,
    k: usize,
    sweep_cap: u64,
    rng: &mut impl Rng,
) -> Result<Restriction> {
    let j = h.degree();
    let module = h.module();
    if k > j || k < 5 {
        return Err(Error::InvalidInput(format!("cannot restrict from A_{j} to A_{k}")));
    }
    let sub = Arc::new(Presentation::alternating(j, (0..k).collect())?);
    let mut gens: Vec<Permutation> = Vec::new();
    for s in sub.realization() {
        gens.push(action.space.image(h, stab, &h.lift(s))?);
    }
    let lift_count = gens.len();
    gens.extend(action.module_images().iter().cloned());
    let group = PermGroup::new(action.space.degree(), gens.clone())?;
    let p = module.field().p() as usize;
    let mut orbits: Vec<Vec<usize>> = group.orbits();
    orbits.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
    let allowed = [2, 2 * k, 2 * k * (k - 1)];
    let mut records = Vec::new();
    for o in &orbits {
        if k < j && !allowed.contains(&o.len()) {
            return Err(Error::check(
                "restriction",
                format!("orbit of unexpected size {}", o.len()),
            ));
        }
        let cosets: BTreeSet<usize> = o.iter().map(|x| x / p).collect();
        records.push(OrbitRecord {
            size: o.len(),
            kernel_on_module_dim: kernel_on_points(&action.space, module, cosets).dim(),
        });
    }
    let target = 2 * k * (k - 1);
    let mut candidates: Vec<&Vec<usize>> = orbits.iter().filter(|o| o.len() == target).collect();
    if candidates.len() != 1 {
        return Err(Error::check(
            "restriction",
            format!("{} orbits of size {target}", candidates.len()),
        ));
    }
    candidates.extend(orbits.iter().filter(|o| o.len() != target && o.len() > 2));
    let module_j = module.restrict(sub.clone())?;
    for (idx, orbit) in candidates.iter().enumerate() {
        let mut points = (*orbit).clone();
        points.sort_unstable();
        let cosets: BTreeSet<usize> = points.iter().map(|x| x / p).collect();
        let kernel = kernel_on_points(&action.space, module, cosets);
        let quotient = kernel.quotient_with_section();
        let target_module = module_j.quotient(&quotient)?;
        let q = quotient.clone();
        let delta: SharedCocycle = Arc::new(MappedCocycle::new(
            h.cocycle().clone(),
            target_module,
            Arc::new(move |v| q.project(v)),
        ));
        let image_ext = ExtGroup::new(delta);
        let nonsplit = nonsplit_certificate(&image_ext, sweep_cap, rng)?;
        if !nonsplit.nonsplit {
            log::warn!("image on orbit of size {} splits", points.len());
            continue;
        }
        let field = module.field();
        let mut images: Vec<Permutation> = Vec::new();
        for g in &gens[..lift_count] {
            images.push(restrict_to(g, &points)?);
        }
        for i in 0..quotient.dim() {
            let v = quotient.section(&crate::gf::VectorGF::unit(field, quotient.dim(), i));
            let perm = module_vector_image(action, &v);
            images.push(restrict_to(&perm, &points)?);
        }
        return Ok(Restriction {
            k,
            j,
            orbits: records,
            points,
            images,
            lift_count,
            kernel,
            quotient,
            image_ext,
            nonsplit,
            fallback: idx > 0,
        });
    }
    Err(Error::check("restriction", "every orbit image splits"))
}

fn restrict_to(g: &Permutation, points: &[usize]) -> Result<Permutation> {
    g.restrict(points)
        .ok_or_else(|| Error::check("restriction", "orbit is not invariant"))
}

/// The image of `(v, 1)` as a product of the module generators' images.
pub fn module_vector_image(action: &CosetAction, v: &crate::gf::VectorGF) -> Permutation {
    let mut acc = Permutation::identity(action.space.degree());
    for (j, g) in action.module_images().iter().enumerate() {
        for _ in 0..v.get(j) {
            acc = acc.then(g);
        }
    }
    acc
}
