use super::{Cocycle2, CocycleKind, SharedCocycle};
use crate::error::{Error, Result};
use crate::gf::VectorGF;
use crate::gmod::GModule;
use crate::perm::{PairTransversal, Permutation};

/// Eckmann–Shapiro induction of a cocycle `ε` on `Y` with 1-dimensional
/// coefficients to the module induced along the pair transversal:
///
/// `δ(g,h) = sum_s ε(y_s(g), y_{s·g}(h)) e_{s·g·h}`, where `g_s·g = y_s(g)·g_{s·g}`.
pub struct InducedCocycle {
    eps: SharedCocycle,
    module: GModule,
    transversal: PairTransversal,
}

impl InducedCocycle {
    pub fn new(eps: SharedCocycle, module: GModule, transversal: PairTransversal) -> Result<Self> {
        if eps.module().dim() != 1 {
            return Err(Error::InvalidInput("induction needs 1-dimensional coefficients".into()));
        }
        if module.dim() != transversal.len() || module.field() != eps.module().field() {
            return Err(Error::DimensionMismatch(format!(
                "module of dimension {} for {} cosets",
                module.dim(),
                transversal.len()
            )));
        }
        Ok(InducedCocycle {
            eps,
            module,
            transversal,
        })
    }

    pub fn base(&self) -> &SharedCocycle {
        &self.eps
    }

    /// The coordinate of `δ(g,h)` at coset `t` (pair label).
    pub fn coordinate(&self, g: &Permutation, h: &Permutation, t: usize) -> Result<u8> {
        // s·g·h = t, so s = t·(gh)^{-1}
        let gh_inv = g.then(h).inverse();
        let s = self.transversal.label_of(&self.transversal.rep(t).then(&gh_inv));
        let (a, sg) = self.transversal.decompose(s, g);
        let (b, _) = self.transversal.decompose(sg, h);
        Ok(self.eps.eval(&a, &b)?.get(0))
    }
}

impl Cocycle2 for InducedCocycle {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Induced
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        let mut v = self.module.zero();
        for s in 0..self.transversal.len() {
            let (a, sg) = self.transversal.decompose(s, g);
            let (b, sgh) = self.transversal.decompose(sg, h);
            let e = self.eps.eval(&a, &b)?.get(0);
            if e != 0 {
                v.set(sgh, e);
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cohom::{check_cocycle, random_element, SpinCocycle};
    use crate::gmod::pair_permutation_module;
    use crate::perm::young_pair_presentation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn induced_spin(k: usize) -> InducedCocycle {
        let y = Arc::new(young_pair_presentation(k).unwrap());
        let eps: SharedCocycle = Arc::new(SpinCocycle::new(y, (2..k).collect()).unwrap());
        let pm = pair_permutation_module(k, 2).unwrap();
        InducedCocycle::new(eps, pm.module, PairTransversal::unordered(k).unwrap()).unwrap()
    }

    #[test]
    fn induced_is_a_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        check_cocycle(&induced_spin(7), &mut rng, 300).unwrap();
    }

    #[test]
    fn restriction_to_base_coordinate_recovers_eps() {
        let k = 7;
        let d = induced_spin(k);
        let y = young_pair_presentation(k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let a = random_element(&y, &mut rng);
            let b = random_element(&y, &mut rng);
            let v = d.eval(&a, &b).unwrap();
            assert_eq!(v.get(0), d.base().eval(&a, &b).unwrap().get(0));
            assert_eq!(d.coordinate(&a, &b, 0).unwrap(), v.get(0));
        }
    }
}
