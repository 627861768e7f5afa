use std::sync::Arc;

use super::GModule;
use crate::error::{Error, Result};
use crate::gf::{Field, MatrixGF, SubspaceGF, VectorGF};
use crate::perm::{alternating_presentation, PairTransversal, Pairs, Presentation};

/// The permutation module on unordered pairs with its distinguished vectors.
#[derive(Clone, Debug)]
pub struct PairModule {
    pub module: GModule,
    pub pairs: Pairs,
    /// `x_i = sum_j e_ij`
    pub x: Vec<VectorGF>,
    /// Sum of all basis vectors.
    pub f: VectorGF,
    /// Sum of `e_ij` over pairs inside `{3..k}`.
    pub u: VectorGF,
}

impl PairModule {
    /// `P_1 = F·f`.
    pub fn p1(&self) -> SubspaceGF {
        SubspaceGF::span(self.module.field(), self.module.dim(), [self.f.clone()])
    }

    /// `P_2 = span(x_i)`.
    pub fn p2(&self) -> SubspaceGF {
        SubspaceGF::span(self.module.field(), self.module.dim(), self.x.iter().cloned())
    }

    pub fn p1_plus_p2(&self) -> SubspaceGF {
        self.p1().sum(&self.p2()).expect("same ambient")
    }

    /// `P_3 = (P_1 + P_2)^⊥`.
    pub fn p3(&self) -> SubspaceGF {
        self.p1_plus_p2().orthogonal_complement()
    }

    /// `P_0 = (F·u)^⊥`.
    pub fn p0(&self) -> SubspaceGF {
        SubspaceGF::span(self.module.field(), self.module.dim(), [self.u.clone()]).orthogonal_complement()
    }
}

fn pair_labels(pairs: &Pairs) -> Vec<String> {
    (0..pairs.len()).map(|t| pairs.label(t)).collect()
}

pub fn pair_permutation_module(k: usize, p: u32) -> Result<PairModule> {
    let field = Field::new(p)?;
    let pres = Arc::new(alternating_presentation(k)?);
    pair_permutation_module_for(pres, field)
}

/// The pair permutation module for any group acting on `0..k`.
pub fn pair_permutation_module_for(pres: Arc<Presentation>, field: Field) -> Result<PairModule> {
    let k = pres.degree();
    let pairs = Pairs::new(k);
    let n = pairs.len();
    let action = pres
        .realization()
        .iter()
        .map(|g| MatrixGF::permutation(field, &pairs.action(g).images()))
        .collect();
    let module = GModule::new(pres, field, n, action)?
        .with_labels(pair_labels(&pairs))
        .with_orthonormal_basis()?;
    let x = (0..k)
        .map(|i| {
            let mut v = VectorGF::zeros(field, n);
            for j in (0..k).filter(|&j| j != i) {
                v.set(pairs.index(i, j), 1);
            }
            v
        })
        .collect();
    let f = VectorGF::from_ints(field, &vec![1; n]);
    let mut u = VectorGF::zeros(field, n);
    for (t, (i, _)) in pairs.iter().enumerate() {
        if i >= 2 {
            u.set(t, 1);
        }
    }
    Ok(PairModule { module, pairs, x, f, u })
}

/// `θ↑` for the sign character `θ` of `Y`: `e_t·g = θ(y)·e_s` where `g_t·g = y·g_s`.
pub fn sign_induced_module(k: usize, p: u32) -> Result<GModule> {
    if p == 2 {
        return Err(Error::InvalidInput(
            "the sign character is trivial in characteristic 2; use the pair permutation module".into(),
        ));
    }
    let field = Field::new(p)?;
    let pres = Arc::new(alternating_presentation(k)?);
    let tr = PairTransversal::unordered(k)?;
    let n = tr.len();
    let action = pres
        .realization()
        .iter()
        .map(|g| {
            let mut m = MatrixGF::zeros(field, n, n);
            for t in 0..n {
                let (y, s) = tr.decompose(t, g);
                // y lies in Y; it acts oddly on {3..k} exactly when it swaps 1 and 2
                m.set(t, s, if y.apply(0) == 1 { field.neg(1) } else { 1 });
            }
            m
        })
        .collect();
    GModule::new(pres, field, n, action)?
        .with_labels(pair_labels(&Pairs::new(k)))
        .with_orthonormal_basis()
}

/// The natural permutation module `GF(p)^k` of `A_k`.
pub fn natural_module(k: usize, p: u32) -> Result<GModule> {
    Ok(GModule::natural(Arc::new(alternating_presentation(k)?), Field::new(p)?))
}

/// Sum-zero vectors of `GF(p)^k` and the all-ones line inside them.
fn sum_zero_and_ones(field: Field, k: usize) -> (SubspaceGF, SubspaceGF) {
    let sum_zero = SubspaceGF::span(
        field,
        k,
        (0..k - 1).map(|i| {
            let mut v = VectorGF::unit(field, k, i);
            v.set(k - 1, field.neg(1));
            v
        }),
    );
    let ones = SubspaceGF::span(field, k, [VectorGF::from_ints(field, &vec![1; k])]);
    (sum_zero, ones)
}

/// `L` = sum-zero vectors modulo the all-ones line, of dimension `k - 2`.
pub fn standard_module_l(k: usize, p: u32) -> Result<GModule> {
    if !k.is_multiple_of(p as usize) {
        return Err(Error::InvalidInput(format!(
            "L needs p dividing k, got k = {k}, p = {p}"
        )));
    }
    let nat = natural_module(k, p)?;
    let (sum_zero, ones) = sum_zero_and_ones(nat.field(), k);
    let w = nat.submodule(&sum_zero)?;
    let ones_in_w = SubspaceGF::span(
        nat.field(),
        w.dim(),
        ones.basis().iter().map(|b| sum_zero.coords(b).expect("p | k")),
    );
    w.quotient(&ones_in_w.quotient_with_section())
}

/// The sum-zero submodule of the natural module, of dimension `k - 1`.
pub fn sum_zero_module(k: usize, p: u32) -> Result<GModule> {
    let nat = natural_module(k, p)?;
    let (sum_zero, _) = sum_zero_and_ones(nat.field(), k);
    nat.submodule(&sum_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_module_at_seven() {
        let pm = pair_permutation_module(7, 2).unwrap();
        assert_eq!(pm.module.dim(), 21);
        assert!(pm.module.relations_hold());
        assert_eq!(pm.u.weight(), 10);
        for a in pm.module.action() {
            assert_eq!(a.vec_mul(&pm.f), pm.f);
        }
        assert_eq!(pm.p0().dim(), 20);
        assert_eq!(pm.p1_plus_p2().dim(), 7);
        assert_eq!(pm.u.dot(&pm.u), 0);
        assert_eq!(pm.u.dot(&pm.f), 0);
        assert!(pm.x.iter().all(|x| x.dot(&pm.u) == 0));
    }

    #[test]
    fn induced_sign_module_is_signed_permutation() {
        let v = sign_induced_module(6, 3).unwrap();
        assert_eq!(v.dim(), 15);
        assert!(v.relations_hold());
        for a in v.action() {
            assert!(a.rows().iter().all(|r| r.weight() == 1));
        }
        assert!(sign_induced_module(6, 2).is_err());
    }

    #[test]
    fn standard_module_dimensions() {
        let l = standard_module_l(6, 3).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(l.relations_hold());
        assert_eq!(l.wedge_square().dim(), 6);
        assert!(standard_module_l(7, 3).is_err());
    }
}
