use std::sync::Arc;

use super::GModule;
use crate::error::{Error, Result};
use crate::gf::{EchelonBuilder, MatrixGF, SubspaceGF, VectorGF};

/// A linear map `v ↦ v·matrix` between modules for the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: MatrixGF,
}

impl ModuleMap {
    pub fn apply(&self, v: &VectorGF) -> VectorGF {
        self.matrix.vec_mul(v)
    }

    /// True when `(v·g)φ = (vφ)·g` for every generator.
    pub fn intertwines(&self, source: &GModule, target: &GModule) -> bool {
        source
            .action()
            .iter()
            .zip(target.action())
            .all(|(a, b)| a.mul(&self.matrix) == self.matrix.mul(b))
    }

    pub fn image(&self) -> SubspaceGF {
        SubspaceGF::span(
            self.matrix.field(),
            self.matrix.ncols(),
            self.matrix.rows().iter().cloned(),
        )
    }

    pub fn kernel(&self) -> SubspaceGF {
        SubspaceGF::span(self.matrix.field(), self.matrix.nrows(), self.matrix.left_nullspace())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Seed(usize),
    Image(usize, usize),
}

/// A basis obtained by spinning seed vectors, remembering how each vector
/// arose and the linear relations met along the way.
struct SpinBasis {
    vectors: Vec<VectorGF>,
    origin: Vec<Origin>,
    seeds: usize,
    /// `(t, g, c)`: `s_t·g = sum_i c_i s_i`
    relations: Vec<(usize, usize, VectorGF)>,
}

impl SpinBasis {
    fn new(module: &GModule) -> Self {
        let field = module.field();
        let n = module.dim();
        let mut builder = EchelonBuilder::tracking(field, n);
        let mut sb = SpinBasis {
            vectors: Vec::new(),
            origin: Vec::new(),
            seeds: 0,
            relations: Vec::new(),
        };
        for i in 0..n {
            if builder.dim() == n {
                break;
            }
            let e = VectorGF::unit(field, n, i);
            if builder.contains(&e) {
                continue;
            }
            builder.insert_tracked(&e);
            sb.vectors.push(e);
            sb.origin.push(Origin::Seed(sb.seeds));
            sb.seeds += 1;
            let mut q = sb.vectors.len() - 1;
            while q < sb.vectors.len() {
                for (g, a) in module.action().iter().enumerate() {
                    let w = a.vec_mul(&sb.vectors[q]);
                    match builder.insert_tracked(&w) {
                        None => {
                            sb.vectors.push(w);
                            sb.origin.push(Origin::Image(q, g));
                        }
                        Some(c) => sb.relations.push((q, g, c)),
                    }
                }
                q += 1;
            }
        }
        sb
    }
}

fn same_group(a: &GModule, b: &GModule) -> Result<()> {
    if !Arc::ptr_eq(a.presentation(), b.presentation())
        && a.presentation().realization() != b.presentation().realization()
    {
        return Err(Error::InvalidInput("modules for different groups".into()));
    }
    if a.field() != b.field() {
        return Err(Error::InvalidInput("modules over different fields".into()));
    }
    Ok(())
}

/// A basis of `Hom_G(source, target)`.
///
/// The source is spun from unit vectors; a homomorphism is determined by the
/// images of the seeds, subject to the relations found while spinning.
pub fn hom_space(source: &GModule, target: &GModule) -> Result<Vec<ModuleMap>> {
    same_group(source, target)?;
    let field = source.field();
    let (da, db) = (source.dim(), target.dim());
    if da == 0 || db == 0 {
        return Ok(Vec::new());
    }
    let sb = SpinBasis::new(source);
    let unknowns = sb.seeds * db;
    // φ(s_t) = x·T_t for the unknown seed images x
    let mut t_mats: Vec<MatrixGF> = Vec::with_capacity(da);
    for o in &sb.origin {
        let m = match *o {
            Origin::Seed(j) => {
                let mut m = MatrixGF::zeros(field, unknowns, db);
                for i in 0..db {
                    m.set(j * db + i, i, 1);
                }
                m
            }
            Origin::Image(q, g) => t_mats[q].mul(&target.action()[g]),
        };
        t_mats.push(m);
    }
    let mut sol: Vec<VectorGF> = (0..unknowns).map(|i| VectorGF::unit(field, unknowns, i)).collect();
    for (q, g, c) in &sb.relations {
        if sol.is_empty() {
            return Ok(Vec::new());
        }
        let mut k = t_mats[*q].mul(&target.action()[*g]);
        for i in c.support() {
            k = k.add_scaled(&t_mats[i], field.neg(c.get(i)));
        }
        let n = MatrixGF::from_rows(field, unknowns, sol.clone())?;
        let nk = n.mul(&k);
        sol = nk.left_nullspace().iter().map(|lam| n.vec_mul(lam)).collect();
    }
    let s_inv = MatrixGF::from_rows(field, da, sb.vectors.clone())?.inverse()?;
    let maps = sol
        .iter()
        .map(|x| {
            let rows = t_mats.iter().map(|t| t.vec_mul(x)).collect();
            let images = MatrixGF::from_rows(field, db, rows).expect("image rows");
            ModuleMap {
                matrix: s_inv.mul(&images),
            }
        })
        .collect();
    Ok(maps)
}

pub fn hom_dimension(source: &GModule, target: &GModule) -> Result<usize> {
    Ok(hom_space(source, target)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::gmod::builders::{natural_module, standard_module_l};

    #[test]
    fn endomorphisms_of_natural_module() {
        // rank 2 action: End has dimension 2
        let n = natural_module(6, 2).unwrap();
        let end = hom_space(&n, &n).unwrap();
        assert_eq!(end.len(), 2);
        assert!(end.iter().all(|m| m.intertwines(&n, &n)));
    }

    #[test]
    fn trivial_into_natural_is_the_all_ones_line() {
        let n = natural_module(6, 3).unwrap();
        let t = GModule::trivial(n.presentation().clone(), Field::new(3).unwrap());
        let h = hom_space(&t, &n).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].image().dim(), 1);
        assert_eq!(hom_space(&n, &t).unwrap().len(), 1);
    }

    #[test]
    fn schur_for_l() {
        let l = standard_module_l(6, 3).unwrap();
        assert_eq!(hom_dimension(&l, &l).unwrap(), 1);
    }
}
