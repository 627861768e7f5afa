use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Field, MatrixGF, Quotient, SubspaceGF, VectorGF};
use crate::perm::{Letter, PermGroup, Permutation, Presentation};

/// A right GF(p)G-module: one invertible action matrix per generator of the
/// group's registered presentation.
#[derive(Clone, Debug)]
pub struct GModule {
    field: Field,
    dim: usize,
    presentation: Arc<Presentation>,
    action: Vec<MatrixGF>,
    inverse: Vec<MatrixGF>,
    labels: Option<Vec<String>>,
    orthonormal: bool,
}

impl GModule {
    pub fn new(presentation: Arc<Presentation>, field: Field, dim: usize, action: Vec<MatrixGF>) -> Result<Self> {
        if action.len() != presentation.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} generators",
                action.len(),
                presentation.generator_count()
            )));
        }
        for a in &action {
            if a.nrows() != dim || a.ncols() != dim || a.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix {}x{} in a module of dimension {dim}",
                    a.nrows(),
                    a.ncols()
                )));
            }
        }
        let inverse = action.iter().map(|a| a.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            field,
            dim,
            presentation,
            action,
            inverse,
            labels: None,
            orthonormal: false,
        })
    }

    pub fn trivial(presentation: Arc<Presentation>, field: Field) -> Self {
        let n = presentation.generator_count();
        Self::new(presentation, field, 1, vec![MatrixGF::identity(field, 1); n]).expect("trivial module")
    }

    /// The permutation module on the points of the group's degree.
    pub fn natural(presentation: Arc<Presentation>, field: Field) -> Self {
        let n = presentation.degree();
        let action = presentation
            .realization()
            .iter()
            .map(|g| MatrixGF::permutation(field, &g.images()))
            .collect();
        let mut m = Self::new(presentation, field, n, action).expect("permutation matrices");
        m.orthonormal = true;
        m
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    /// Marks the standard form as G-invariant (checked).
    pub fn with_orthonormal_basis(mut self) -> Result<Self> {
        for a in &self.action {
            if !a.mul(&a.transpose()).is_identity() {
                return Err(Error::check("module", "standard form is not invariant"));
            }
        }
        self.orthonormal = true;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn group(&self) -> PermGroup {
        self.presentation.group()
    }

    pub fn generator_count(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[MatrixGF] {
        &self.action
    }

    pub fn action_inverse(&self) -> &[MatrixGF] {
        &self.inverse
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn zero(&self) -> VectorGF {
        VectorGF::zeros(self.field, self.dim)
    }

    pub fn act_letter(&self, v: &VectorGF, l: Letter) -> VectorGF {
        if l.inverse {
            self.inverse[l.gen].vec_mul(v)
        } else {
            self.action[l.gen].vec_mul(v)
        }
    }

    pub fn act_word(&self, v: &VectorGF, word: &[Letter]) -> VectorGF {
        word.iter().fold(v.clone(), |acc, &l| self.act_letter(&acc, l))
    }

    pub fn word_matrix(&self, word: &[Letter]) -> MatrixGF {
        let mut m = MatrixGF::identity(self.field, self.dim);
        for &l in word {
            m = m.mul(if l.inverse {
                &self.inverse[l.gen]
            } else {
                &self.action[l.gen]
            });
        }
        m
    }

    /// Matrix of a group element, via the presentation's word problem.
    pub fn element_matrix(&self, g: &Permutation) -> Result<MatrixGF> {
        Ok(self.word_matrix(&self.presentation.factor_word(g)?))
    }

    pub fn act(&self, v: &VectorGF, g: &Permutation) -> Result<VectorGF> {
        Ok(self.act_word(v, &self.presentation.factor_word(g)?))
    }

    /// True when every relator of the presentation acts as the identity.
    pub fn relations_hold(&self) -> bool {
        self.presentation
            .relators()
            .iter()
            .all(|r| self.word_matrix(r).is_identity())
    }

    /// The same module for the group generated by `sub`'s realization inside
    /// this module's group.
    pub fn restrict(&self, sub: Arc<Presentation>) -> Result<GModule> {
        let action = sub
            .realization()
            .iter()
            .map(|s| self.element_matrix(s))
            .collect::<Result<Vec<_>>>()?;
        let mut m = GModule::new(sub, self.field, self.dim, action)?;
        m.labels = self.labels.clone();
        m.orthonormal = self.orthonormal;
        Ok(m)
    }

    pub fn is_invariant(&self, u: &SubspaceGF) -> bool {
        u.basis()
            .iter()
            .all(|b| self.action.iter().all(|a| u.contains(&a.vec_mul(b))))
    }

    /// The submodule `U` in coordinates of `U`'s echelon basis.
    pub fn submodule(&self, u: &SubspaceGF) -> Result<GModule> {
        if !self.is_invariant(u) {
            return Err(Error::InvalidInput("subspace is not invariant".into()));
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let rows = u
                    .basis()
                    .iter()
                    .map(|b| u.coords(&a.vec_mul(b)).expect("invariant"))
                    .collect();
                MatrixGF::from_rows(self.field, u.dim(), rows)
            })
            .collect::<Result<Vec<_>>>()?;
        GModule::new(self.presentation.clone(), self.field, u.dim(), action)
    }

    /// The quotient by an invariant subspace, in the coordinates of `q`.
    pub fn quotient(&self, q: &Quotient) -> Result<GModule> {
        if !self.is_invariant(q.kernel()) {
            return Err(Error::InvalidInput("kernel is not invariant".into()));
        }
        let field = self.field;
        let action = self
            .action
            .iter()
            .map(|a| {
                let rows = (0..q.dim())
                    .map(|i| q.project(&a.vec_mul(&q.section(&VectorGF::unit(field, q.dim(), i)))))
                    .collect();
                MatrixGF::from_rows(field, q.dim(), rows)
            })
            .collect::<Result<Vec<_>>>()?;
        GModule::new(self.presentation.clone(), field, q.dim(), action)
    }

    /// The dual module, acting by inverse transposes on the dual basis.
    pub fn dual(&self) -> GModule {
        let action = self.inverse.iter().map(|a| a.transpose()).collect();
        let mut m = GModule::new(self.presentation.clone(), self.field, self.dim, action).expect("dual");
        m.orthonormal = self.orthonormal;
        m
    }

    /// `Λ²` on the basis `e_a ∧ e_b`, `a < b`, in lexicographic order.
    pub fn wedge_square(&self) -> GModule {
        let n = self.dim;
        let field = self.field;
        let index = |a: usize, b: usize| a * (2 * n - a - 1) / 2 + (b - a - 1);
        let wdim = n * n.saturating_sub(1) / 2;
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut w = MatrixGF::zeros(field, wdim, wdim);
                for a in 0..n {
                    for b in a + 1..n {
                        let (ra, rb) = (m.row(a), m.row(b));
                        let row = index(a, b);
                        for c in ra.support() {
                            for d in rb.support() {
                                if c == d {
                                    continue;
                                }
                                let x = field.mul(ra.get(c), rb.get(d));
                                let (i, sgn) = if c < d {
                                    (index(c, d), x)
                                } else {
                                    (index(d, c), field.neg(x))
                                };
                                w.set(row, i, field.add(w.get(row, i), sgn));
                            }
                        }
                    }
                }
                w
            })
            .collect();
        GModule::new(self.presentation.clone(), field, wdim, action).expect("wedge square")
    }

    /// Direct sum, with `self` on the first coordinates.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.presentation, &other.presentation) || self.field != other.field {
            return Err(Error::InvalidInput("direct sum over different groups".into()));
        }
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let rows = a
                    .rows()
                    .iter()
                    .map(|r| r.concat(&VectorGF::zeros(self.field, other.dim)))
                    .chain(b.rows().iter().map(|r| VectorGF::zeros(self.field, self.dim).concat(r)))
                    .collect();
                MatrixGF::from_rows(self.field, n, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        GModule::new(self.presentation.clone(), self.field, n, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupKind;

    fn s4() -> Arc<Presentation> {
        Arc::new(Presentation::of(GroupKind::SymmetricCoxeter, 4).unwrap())
    }

    #[test]
    fn natural_module_relations() {
        let f = Field::new(3).unwrap();
        let m = GModule::natural(s4(), f);
        assert!(m.relations_hold());
        assert!(m.dual().relations_hold());
    }

    #[test]
    fn wedge_of_two_dimensional_module_is_one_dimensional() {
        let f = Field::new(3).unwrap();
        let e = GModule::new(
            s4(),
            f,
            2,
            vec![
                MatrixGF::from_ints(f, &[vec![0, 1], vec![1, 0]]),
                MatrixGF::identity(f, 2),
                MatrixGF::identity(f, 2),
            ],
        )
        .unwrap();
        let wedge = e.wedge_square();
        assert_eq!(wedge.dim(), 1);
        assert_eq!(wedge.action()[0].get(0, 0), f.neg(1));
    }

    #[test]
    fn restriction_to_point_stabilizer() {
        let f = Field::new(2).unwrap();
        let a6 = Arc::new(Presentation::of(GroupKind::AlternatingCarmichael, 6).unwrap());
        let nat = GModule::natural(a6, f);
        let sub = Arc::new(Presentation::alternating(6, vec![2, 3, 4, 5]).unwrap());
        let r = nat.restrict(sub).unwrap();
        assert!(r.relations_hold());
        assert!(r.action()[0].get(0, 0) == 1 && r.action()[0].get(1, 1) == 1);
    }
}
