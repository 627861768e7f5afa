use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{hom_space, GModule};
use crate::error::{Error, Result};
use crate::gf::{EchelonBuilder, Field, MatrixGF, SubspaceGF, VectorGF};

/// Smallest subspace containing `seeds` and invariant under `mats`.
pub fn spin_with(field: Field, dim: usize, mats: &[MatrixGF], seeds: &[VectorGF]) -> SubspaceGF {
    let mut builder = EchelonBuilder::new(field, dim);
    let mut queue: Vec<VectorGF> = Vec::new();
    for s in seeds {
        if builder.insert(s) {
            queue.push(s.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() && builder.dim() < dim {
        for a in mats {
            let w = a.vec_mul(&queue[i]);
            if builder.insert(&w) {
                queue.push(w);
            }
        }
        i += 1;
    }
    builder.to_subspace()
}

/// The submodule generated by `seeds`.
pub fn spin(module: &GModule, seeds: &[VectorGF]) -> SubspaceGF {
    spin_with(module.field(), module.dim(), module.action(), seeds)
}

/// The largest submodule contained in `u`.
pub fn g_core(module: &GModule, u: &SubspaceGF) -> SubspaceGF {
    let mut cur = u.clone();
    loop {
        let mut next = cur.clone();
        for a in module.action_inverse() {
            // {v ∈ next : v·g ∈ cur} = next ∩ cur·g⁻¹
            let pulled = SubspaceGF::span(cur.field(), cur.ambient(), cur.basis().iter().map(|b| a.vec_mul(b)));
            next = next.intersection(&pulled).expect("same ambient");
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Vectors fixed by every generator.
pub fn fixed_points(module: &GModule) -> SubspaceGF {
    let field = module.field();
    let n = module.dim();
    let id = MatrixGF::identity(field, n);
    let rows: Vec<VectorGF> = (0..n)
        .map(|i| {
            module
                .action()
                .iter()
                .map(|a| a.add_scaled(&id, field.neg(1)).row(i).clone())
                .fold(VectorGF::zeros(field, 0), |acc, r| acc.concat(&r))
        })
        .collect();
    let m = MatrixGF::from_rows(field, n * module.generator_count(), rows).expect("rows");
    SubspaceGF::span(field, n, m.left_nullspace())
}

/// `{v : v·w = 0 for all w ∈ u}` for a subspace of the dual.
pub fn annihilator(u: &SubspaceGF) -> SubspaceGF {
    u.orthogonal_complement()
}

/// Monic irreducible polynomials of degree ≤ 3, coefficients low to high.
fn small_irreducibles(field: Field) -> Vec<Vec<u8>> {
    let p = field.p();
    let eval = |f: &[u8], x: u8| f.iter().rev().fold(0u8, |acc, &c| field.add(field.mul(acc, x), c));
    let mut out = Vec::new();
    for deg in 1..=3usize {
        let count = (p as usize).pow(deg as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                f.push((c % p as usize) as u8);
                c /= p as usize;
            }
            f.push(1);
            if deg == 1 || field.elements().all(|x| eval(&f, x) != 0) {
                out.push(f);
            }
        }
    }
    out
}

fn poly_at(field: Field, f: &[u8], a: &MatrixGF) -> MatrixGF {
    let id = MatrixGF::identity(field, a.nrows());
    let mut b = id.scaled(*f.last().expect("nonempty"));
    for &c in f.iter().rev().skip(1) {
        b = b.mul(a).add_scaled(&id, c);
    }
    b
}

/// Evidence that a module is irreducible: an algebra element `a` and an
/// irreducible `f` with `dim ker f(a) = deg f`, such that a kernel vector
/// spins to the whole module and a kernel vector of `f(a)ᵀ` spins to the
/// whole space under the transposed action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub dim: usize,
    /// Coefficients of `f`, low to high.
    pub polynomial: Vec<u8>,
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub enum Split {
    Irreducible(IrreducibilityCertificate),
    Proper(SubspaceGF),
}

fn random_algebra_element(module: &GModule, rng: &mut impl Rng) -> MatrixGF {
    let field = module.field();
    let n = module.dim();
    let gens = module.action();
    let mut a = MatrixGF::zeros(field, n, n);
    for _ in 0..3 {
        let len = rng.gen_range(1..=3);
        let mut w = gens[rng.gen_range(0..gens.len())].clone();
        for _ in 1..len {
            w = w.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        a = a.add_scaled(&w, rng.gen_range(1..field.p()));
    }
    a
}

/// One Meataxe step: a proper nonzero submodule, or a Norton certificate.
pub fn split(module: &GModule, rng: &mut impl Rng, max_tries: usize) -> Result<Split> {
    let field = module.field();
    let n = module.dim();
    if n <= 1 {
        return Ok(Split::Irreducible(IrreducibilityCertificate {
            dim: n,
            polynomial: vec![0, 1],
            attempts: 0,
        }));
    }
    let transposed: Vec<MatrixGF> = module.action().iter().map(|a| a.transpose()).collect();
    let polys = small_irreducibles(field);
    for attempt in 1..=max_tries {
        let a = random_algebra_element(module, rng);
        for f in &polys {
            let b = poly_at(field, f, &a);
            let ker = b.left_nullspace();
            if ker.is_empty() {
                continue;
            }
            let w = spin(module, &ker[..1]);
            if w.dim() < n {
                return Ok(Split::Proper(w));
            }
            let ker_t = b.nullspace();
            let wt = spin_with(field, n, &transposed, &ker_t[..1]);
            if wt.dim() < n {
                return Ok(Split::Proper(annihilator(&wt)));
            }
            if ker.len() == f.len() - 1 {
                return Ok(Split::Irreducible(IrreducibilityCertificate {
                    dim: n,
                    polynomial: f.clone(),
                    attempts: attempt,
                }));
            }
        }
    }
    Err(Error::Budget(format!(
        "Meataxe found neither a submodule nor a Norton element in {max_tries} tries (dimension {n})"
    )))
}

/// An irreducible composition factor together with its certificate.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: GModule,
    pub certificate: IrreducibilityCertificate,
}

/// Composition factors, in the order submodule-first.
pub fn composition_factors(module: &GModule, rng: &mut impl Rng, max_tries: usize) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut stack = vec![module.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match split(&m, rng, max_tries)? {
            Split::Irreducible(certificate) => out.push(Factor { module: m, certificate }),
            Split::Proper(w) => {
                // process the submodule first
                stack.push(m.quotient(&w.quotient_with_section())?);
                stack.push(m.submodule(&w)?);
            }
        }
    }
    Ok(out)
}

pub fn are_isomorphic_irreducibles(a: &GModule, b: &GModule) -> Result<bool> {
    Ok(a.dim() == b.dim() && !hom_space(a, b)?.is_empty())
}

/// Isomorphism classes among irreducible factors: one representative each,
/// with multiplicities.
pub fn distinct_factors(factors: &[Factor]) -> Result<Vec<(Factor, usize)>> {
    let mut classes: Vec<(Factor, usize)> = Vec::new();
    'outer: for f in factors {
        for (rep, count) in classes.iter_mut() {
            if are_isomorphic_irreducibles(&rep.module, &f.module)? {
                *count += 1;
                continue 'outer;
            }
        }
        classes.push((f.clone(), 1));
    }
    classes.sort_by_key(|(f, _)| f.module.dim());
    Ok(classes)
}

/// The socle as a sum of homogeneous components, one per irreducible in `irreducibles`.
#[derive(Clone, Debug)]
pub struct Socle {
    pub space: SubspaceGF,
    /// `(dimension of the irreducible, its multiplicity in the socle)`
    pub components: Vec<(usize, usize)>,
}

/// Socle of `module`, given representatives of all its composition factors.
pub fn socle(module: &GModule, irreducibles: &[GModule]) -> Result<Socle> {
    let mut space = SubspaceGF::zero(module.field(), module.dim());
    let mut components = Vec::new();
    for t in irreducibles {
        let homog = hom_space(t, module)?
            .iter()
            .fold(SubspaceGF::zero(module.field(), module.dim()), |acc, m| {
                acc.sum(&m.image()).expect("same ambient")
            });
        if homog.dim() > 0 {
            components.push((t.dim(), homog.dim() / t.dim()));
        }
        space = space.sum(&homog)?;
    }
    Ok(Socle { space, components })
}

/// Radical: the annihilator of the socle of the dual.
pub fn radical(module: &GModule, irreducibles: &[GModule]) -> Result<SubspaceGF> {
    let duals: Vec<GModule> = irreducibles.iter().map(|t| t.dual()).collect();
    let s = socle(&module.dual(), &duals)?;
    Ok(annihilator(&s.space))
}

/// Indecomposability via the endomorphism ring: the module is indecomposable
/// iff every endomorphism is nilpotent or invertible. Decided by enumerating
/// `End(M)`, which must have at most `max_elements` elements.
pub fn is_indecomposable(module: &GModule, max_elements: u64) -> Result<bool> {
    let end = hom_space(module, module)?;
    let field = module.field();
    let p = field.p() as u64;
    let count = p
        .checked_pow(end.len() as u32)
        .filter(|&c| c <= max_elements)
        .ok_or_else(|| {
            Error::Budget(format!(
                "endomorphism ring of dimension {} is too large to enumerate",
                end.len()
            ))
        })?;
    let n = module.dim();
    for code in 1..count {
        let mut phi = MatrixGF::zeros(field, n, n);
        let mut c = code;
        for e in &end {
            phi = phi.add_scaled(&e.matrix, (c % p) as u8);
            c /= p;
        }
        if phi.rank() == n {
            continue;
        }
        // nilpotent iff φ^(2^r) = 0 for 2^r ≥ n
        let mut q = phi;
        let mut pow = 1;
        while pow < n {
            q = q.mul(&q);
            pow *= 2;
        }
        if !q.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Summary of a module's structure for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub dim: usize,
    /// `(dimension, multiplicity)` of composition factors, by dimension.
    pub factors: Vec<(usize, usize)>,
    pub socle_dim: usize,
    pub socle: Vec<(usize, usize)>,
    pub head_dim: usize,
    pub indecomposable: Option<bool>,
    pub self_dual: bool,
}

/// Full analysis: factors, socle, head (via the dual), and the endomorphism test.
pub fn analyze(module: &GModule, rng: &mut impl Rng, max_tries: usize) -> Result<(StructureReport, Vec<GModule>)> {
    let factors = composition_factors(module, rng, max_tries)?;
    let classes = distinct_factors(&factors)?;
    let irreducibles: Vec<GModule> = classes.iter().map(|(f, _)| f.module.clone()).collect();
    let soc = socle(module, &irreducibles)?;
    let rad = radical(module, &irreducibles)?;
    let self_dual = hom_space(module, &module.dual())?
        .iter()
        .any(|m| m.rank() == module.dim());
    let indecomposable = match is_indecomposable(module, 1 << 16) {
        Ok(b) => Some(b),
        Err(Error::Budget(_)) => None,
        Err(e) => return Err(e),
    };
    let report = StructureReport {
        dim: module.dim(),
        factors: classes.iter().map(|(f, c)| (f.module.dim(), *c)).collect(),
        socle_dim: soc.space.dim(),
        socle: soc.components,
        head_dim: module.dim() - rad.dim(),
        indecomposable,
        self_dual,
    };
    Ok((report, irreducibles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::builders::{natural_module, pair_permutation_module, standard_module_l};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spin_of_all_ones_is_a_line() {
        let pm = pair_permutation_module(7, 2).unwrap();
        assert_eq!(spin(&pm.module, std::slice::from_ref(&pm.f)).dim(), 1);
    }

    #[test]
    fn fixed_points_of_natural_module() {
        let n = natural_module(6, 3).unwrap();
        assert_eq!(fixed_points(&n).dim(), 1);
    }

    #[test]
    fn g_core_is_invariant_and_idempotent() {
        let pm = pair_permutation_module(7, 2).unwrap();
        let c = g_core(&pm.module, &pm.p0());
        assert!(pm.module.is_invariant(&c));
        assert_eq!(g_core(&pm.module, &c), c);
        assert!(pm.p1_plus_p2().is_subspace_of(&c));
        assert!(!c.contains(&pm.u));
    }

    #[test]
    fn natural_module_mod_three_is_uniserial() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = natural_module(6, 3).unwrap();
        let (report, irr) = analyze(&n, &mut rng, 50).unwrap();
        assert_eq!(report.factors, vec![(1, 2), (4, 1)]);
        assert_eq!(report.socle_dim, 1);
        assert_eq!(report.head_dim, 1);
        assert_eq!(report.indecomposable, Some(true));
        assert!(report.self_dual);
        assert_eq!(irr.len(), 2);
    }

    #[test]
    fn l_is_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let l = standard_module_l(6, 3).unwrap();
        assert!(matches!(split(&l, &mut rng, 50).unwrap(), Split::Irreducible(_)));
    }
}
