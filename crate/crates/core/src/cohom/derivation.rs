use std::collections::HashMap;
use std::sync::RwLock;

use super::{Cocycle2, CocycleKind};
use crate::error::{Error, Result};
use crate::gf::{MatrixGF, Quotient, SubspaceGF, VectorGF};
use crate::gmod::GModule;
use crate::perm::Permutation;

/// Fox-derivative matrix of the presentation with coefficients in `module`.
///
/// Rows are indexed by (generator, coordinate), columns by (relator,
/// coordinate): for a generator cochain `c`, `c·F` lists the values of the
/// relators under the cochain, so `Z¹` is the left nullspace of `F`.
pub fn fox_matrix(module: &GModule) -> MatrixGF {
    let field = module.field();
    let d = module.dim();
    let r = module.generator_count();
    let relators = module.presentation().relators();
    let mut f = MatrixGF::zeros(field, r * d, relators.len() * d);
    for (ri, rel) in relators.iter().enumerate() {
        let mut blocks = vec![MatrixGF::zeros(field, d, d); r];
        let mut suffix = MatrixGF::identity(field, d);
        for l in rel.iter().rev() {
            if l.inverse {
                let m = module.action_inverse()[l.gen].mul(&suffix);
                blocks[l.gen] = blocks[l.gen].add_scaled(&m, field.neg(1));
                suffix = m;
            } else {
                blocks[l.gen] = blocks[l.gen].add(&suffix);
                suffix = module.action()[l.gen].mul(&suffix);
            }
        }
        for (gi, b) in blocks.iter().enumerate() {
            for i in 0..d {
                for j in b.row(i).support() {
                    f.set(gi * d + i, ri * d + j, b.get(i, j));
                }
            }
        }
    }
    f
}

/// Concatenates per-generator vectors into one cochain vector.
pub fn concat_cochain(values: &[VectorGF]) -> VectorGF {
    values.iter().skip(1).fold(values[0].clone(), |acc, v| acc.concat(v))
}

pub fn split_cochain(v: &VectorGF, d: usize) -> Vec<VectorGF> {
    (0..v.len() / d.max(1)).map(|i| v.slice(i * d, (i + 1) * d)).collect()
}

/// A 1-cocycle (crossed homomorphism) given by its generator values.
pub struct Derivation {
    module: GModule,
    values: Vec<VectorGF>,
    cache: RwLock<HashMap<Permutation, VectorGF>>,
}

impl Derivation {
    pub fn new(module: GModule, values: Vec<VectorGF>) -> Result<Self> {
        if values.len() != module.generator_count() || values.iter().any(|v| v.len() != module.dim()) {
            return Err(Error::DimensionMismatch(
                "derivation values do not fit the module".into(),
            ));
        }
        let d = Derivation {
            module,
            values,
            cache: RwLock::new(HashMap::new()),
        };
        if !d.relators_vanish() {
            return Err(Error::check("derivation", "relator conditions fail"));
        }
        Ok(d)
    }

    /// The inner derivation `g ↦ v·g - v`.
    pub fn inner(module: GModule, v: &VectorGF) -> Result<Self> {
        let values = module.action().iter().map(|a| a.vec_mul(v).diff(v)).collect();
        Self::new(module, values)
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn values(&self) -> &[VectorGF] {
        &self.values
    }

    fn relators_vanish(&self) -> bool {
        let f = fox_matrix(&self.module);
        f.vec_mul(&concat_cochain(&self.values)).is_zero()
    }

    /// `d(g)`, from a word for `g` and `d(xy) = d(x)·y + d(y)`.
    pub fn eval(&self, g: &Permutation) -> Result<VectorGF> {
        if let Some(v) = self.cache.read().expect("derivation cache").get(g) {
            return Ok(v.clone());
        }
        let word = self.module.presentation().factor_word(g)?;
        let mut acc = self.module.zero();
        for l in word {
            acc = self.module.act_letter(&acc, l);
            if l.inverse {
                // d(s⁻¹) = -d(s)·s⁻¹
                acc.sub_assign(&self.module.action_inverse()[l.gen].vec_mul(&self.values[l.gen]));
            } else {
                acc.add_assign(&self.values[l.gen]);
            }
        }
        self.cache
            .write()
            .expect("derivation cache")
            .insert(g.clone(), acc.clone());
        Ok(acc)
    }
}

/// `Z¹`, `B¹` and `dim H¹` for a module over its group's presentation.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub dim: usize,
    /// Basis of `Z¹` as concatenated generator values.
    pub cocycles: SubspaceGF,
    pub inner: SubspaceGF,
    pub h1_dim: usize,
}

impl DerivationSpace {
    /// Some derivation that is not inner, if `H¹ ≠ 0`.
    pub fn non_inner(&self) -> Option<Vec<VectorGF>> {
        self.cocycles
            .basis()
            .iter()
            .find(|z| !self.inner.contains(z))
            .map(|z| split_cochain(z, self.dim))
    }
}

pub fn derivation_space(module: &GModule) -> DerivationSpace {
    let field = module.field();
    let d = module.dim();
    let total = d * module.generator_count();
    let cocycles = SubspaceGF::span(field, total, fox_matrix(module).left_nullspace());
    let inner = SubspaceGF::span(
        field,
        total,
        (0..d).map(|i| {
            let v = VectorGF::unit(field, d, i);
            concat_cochain(
                &module
                    .action()
                    .iter()
                    .map(|a| a.vec_mul(&v).diff(&v))
                    .collect::<Vec<_>>(),
            )
        }),
    );
    let h1_dim = cocycles.dim() - inner.dim();
    DerivationSpace {
        dim: d,
        cocycles,
        inner,
        h1_dim,
    }
}

/// The connecting cocycle `δ = d(s∘d)` into a submodule `M ⊆ V`, for a
/// derivation `d` into `V/M` and the fixed section `s` of the quotient.
pub struct ConnectingCocycle {
    derivation: Derivation,
    ambient: GModule,
    quotient: Quotient,
    sub: SubspaceGF,
    module: GModule,
}

impl ConnectingCocycle {
    /// `ambient` is `V`; `quotient` has kernel `M`; `module` is `M` in the
    /// coordinates of the kernel's echelon basis.
    pub fn new(derivation: Derivation, ambient: GModule, quotient: Quotient, module: GModule) -> Result<Self> {
        if derivation.module().dim() != quotient.dim() || module.dim() != quotient.kernel().dim() {
            return Err(Error::DimensionMismatch("connecting cocycle data do not fit".into()));
        }
        let sub = quotient.kernel().clone();
        Ok(ConnectingCocycle {
            derivation,
            ambient,
            quotient,
            sub,
            module,
        })
    }

    fn lifted(&self, g: &Permutation) -> Result<VectorGF> {
        Ok(self.quotient.section(&self.derivation.eval(g)?))
    }
}

impl Cocycle2 for ConnectingCocycle {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Connecting
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        let mut v = self.ambient.act(&self.lifted(g)?, h)?;
        v.add_assign(&self.lifted(h)?);
        v.sub_assign(&self.lifted(&g.then(h))?);
        self.sub.coords(&v).ok_or_else(|| {
            Error::check(
                "connecting cocycle",
                format!("value at ({g}, {h}) escapes the submodule"),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::gmod::{natural_module, sum_zero_module};

    #[test]
    fn perfect_group_trivial_coefficients() {
        let n = natural_module(7, 3).unwrap();
        let t = GModule::trivial(n.presentation().clone(), Field::new(3).unwrap());
        assert_eq!(derivation_space(&t).h1_dim, 0);
    }

    #[test]
    fn inner_derivations_satisfy_relators() {
        let n = natural_module(6, 2).unwrap();
        let v = VectorGF::from_ints(n.field(), &[1, 0, 1, 1, 0, 0]);
        let d = Derivation::inner(n.clone(), &v).unwrap();
        let g = Permutation::parse_cycles(6, "(1 4 2)(3 5 6)").unwrap();
        assert_eq!(d.eval(&g).unwrap(), n.act(&v, &g).unwrap().diff(&v));
    }

    #[test]
    fn natural_quotient_has_h1_when_p_divides_k() {
        let n = natural_module(6, 3).unwrap();
        let ones = SubspaceGF::span(n.field(), 6, [VectorGF::from_ints(n.field(), &[1; 6])]);
        let w = n.quotient(&ones.quotient_with_section()).unwrap();
        assert!(derivation_space(&w).h1_dim >= 1);
        let s = sum_zero_module(6, 3).unwrap();
        assert!(derivation_space(&s).h1_dim >= 1);
    }
}
