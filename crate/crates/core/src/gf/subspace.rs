use super::matrix::rref_in_place;
use super::{Field, MatrixGF, VectorGF};
use crate::error::{Error, Result};

/// A subspace of GF(p)^n kept in canonical reduced row-echelon form, so two
/// subspaces are equal exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceGF {
    field: Field,
    ambient: usize,
    basis: Vec<VectorGF>,
    pivots: Vec<usize>,
}

impl SubspaceGF {
    pub fn zero(field: Field, ambient: usize) -> Self {
        SubspaceGF {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        SubspaceGF {
            field,
            ambient,
            basis: (0..ambient).map(|i| VectorGF::unit(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = VectorGF>) -> Self {
        let mut rows: Vec<VectorGF> = vectors.into_iter().collect();
        assert!(
            rows.iter().all(|v| v.len() == ambient && v.field() == field),
            "spanning vector outside the ambient space"
        );
        let pivots = rref_in_place(field, &mut rows, ambient);
        SubspaceGF {
            field,
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VectorGF] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> MatrixGF {
        MatrixGF::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent basis")
    }

    fn check(&self, other: &SubspaceGF) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of GF({})^{} and GF({})^{}",
                self.field.p(),
                self.ambient,
                other.field.p(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// `v` minus its component along the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &VectorGF) -> VectorGF {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.get(p);
            if c != 0 {
                r.add_scaled(b, self.field.neg(c));
            }
        }
        r
    }

    pub fn contains(&self, v: &VectorGF) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &VectorGF) -> Option<VectorGF> {
        let c: Vec<u8> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let c = VectorGF::from_elems(self.field, &c);
        (self.combine(&c) == *v).then_some(c)
    }

    /// `sum_i c_i b_i` over the echelon basis.
    pub fn combine(&self, c: &VectorGF) -> VectorGF {
        let mut out = VectorGF::zeros(self.field, self.ambient);
        for i in c.support() {
            out.add_scaled(&self.basis[i], c.get(i));
        }
        out
    }

    pub fn is_subspace_of(&self, other: &SubspaceGF) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &SubspaceGF) -> Result<SubspaceGF> {
        self.check(other)?;
        Ok(SubspaceGF::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    pub fn intersection(&self, other: &SubspaceGF) -> Result<SubspaceGF> {
        self.check(other)?;
        // x·B_U = y·B_W  <=>  [x | -y] lies in the left nullspace of [B_U; B_W]
        let stacked: Vec<VectorGF> = self.basis.iter().chain(&other.basis).cloned().collect();
        let m = MatrixGF::from_rows(self.field, self.ambient, stacked)?;
        let vecs = m
            .left_nullspace()
            .into_iter()
            .map(|x| self.combine(&x.slice(0, self.dim())));
        Ok(SubspaceGF::span(self.field, self.ambient, vecs))
    }

    /// Orthogonal complement for the standard form `sum_i u_i v_i`.
    pub fn orthogonal_complement(&self) -> SubspaceGF {
        let m = MatrixGF::from_rows(self.field, self.ambient, self.basis.clone()).expect("basis");
        SubspaceGF::span(self.field, self.ambient, m.nullspace())
    }

    /// Projection to `V/U` together with a fixed section `V/U → V`.
    pub fn quotient_with_section(&self) -> Quotient {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        Quotient {
            kernel: self.clone(),
            free_columns: (0..self.ambient).filter(|&c| !is_pivot[c]).collect(),
        }
    }
}

/// The quotient `V/U` in coordinates given by the non-pivot columns of `U`'s
/// echelon basis. The section puts quotient coordinates back on those columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    kernel: SubspaceGF,
    free_columns: Vec<usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }

    pub fn kernel(&self) -> &SubspaceGF {
        &self.kernel
    }

    pub fn project(&self, v: &VectorGF) -> VectorGF {
        let r = self.kernel.reduce(v);
        let elems: Vec<u8> = self.free_columns.iter().map(|&c| r.get(c)).collect();
        VectorGF::from_elems(self.kernel.field(), &elems)
    }

    pub fn section(&self, q: &VectorGF) -> VectorGF {
        let mut v = VectorGF::zeros(self.kernel.field(), self.kernel.ambient());
        for i in q.support() {
            v.set(self.free_columns[i], q.get(i));
        }
        v
    }

    pub fn project_subspace(&self, u: &SubspaceGF) -> SubspaceGF {
        SubspaceGF::span(
            self.kernel.field(),
            self.dim(),
            u.basis().iter().map(|b| self.project(b)),
        )
    }

    /// Full preimage of a subspace of the quotient.
    pub fn preimage(&self, w: &SubspaceGF) -> SubspaceGF {
        SubspaceGF::span(
            self.kernel.field(),
            self.kernel.ambient(),
            w.basis()
                .iter()
                .map(|b| self.section(b))
                .chain(self.kernel.basis().iter().cloned()),
        )
    }
}

/// Incrementally built semi-echelon basis. A tracking builder also records,
/// for every stored row, its expression over the independent vectors inserted
/// so far (indexed in insertion order).
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Field,
    ambient: usize,
    rows: Vec<VectorGF>,
    pivots: Vec<usize>,
    inv_leads: Vec<u8>,
    track: Option<Vec<VectorGF>>,
}

impl EchelonBuilder {
    pub fn new(field: Field, ambient: usize) -> Self {
        EchelonBuilder {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            inv_leads: Vec::new(),
            track: None,
        }
    }

    pub fn tracking(field: Field, ambient: usize) -> Self {
        let mut b = Self::new(field, ambient);
        b.track = Some(Vec::new());
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reduce(&self, v: &VectorGF) -> VectorGF {
        self.reduce_inner(v, None)
    }

    fn reduce_inner(&self, v: &VectorGF, mut comb: Option<&mut VectorGF>) -> VectorGF {
        let mut r = v.clone();
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r.get(p);
            if c != 0 {
                let factor = self.field.mul(c, self.inv_leads[i]);
                r.add_scaled(row, self.field.neg(factor));
                if let (Some(comb), Some(track)) = (comb.as_deref_mut(), self.track.as_ref()) {
                    comb.add_scaled(&track[i], factor);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &VectorGF) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &VectorGF) -> bool {
        if self.track.is_some() {
            return self.insert_tracked(v).is_none();
        }
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let r = self.reduce(v);
        self.push(r)
    }

    fn push(&mut self, r: VectorGF) -> bool {
        match r.leading() {
            Some(p) => {
                self.inv_leads.push(self.field.inv(r.get(p)));
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    /// Tracked insertion. When `v` is dependent, returns its expression as a
    /// combination of the previously inserted independent vectors; otherwise
    /// stores it and returns `None`.
    pub fn insert_tracked(&mut self, v: &VectorGF) -> Option<VectorGF> {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let n = self.rows.len();
        let mut comb = VectorGF::zeros(self.field, self.ambient);
        let r = self.reduce_inner(v, Some(&mut comb));
        if r.is_zero() {
            return Some(comb.slice(0, n));
        }
        // r = v - comb·(inserted), so the new row is e_n - comb
        let mut expr = comb.neg();
        expr.set(n, 1);
        self.track.as_mut().expect("tracking builder").push(expr);
        self.push(r);
        None
    }

    pub fn rows(&self) -> &[VectorGF] {
        &self.rows
    }

    pub fn to_subspace(&self) -> SubspaceGF {
        SubspaceGF::span(self.field, self.ambient, self.rows.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coord(field: Field, n: usize, idx: &[usize]) -> SubspaceGF {
        SubspaceGF::span(field, n, idx.iter().map(|&i| VectorGF::unit(field, n, i)))
    }

    #[test]
    fn equal_subspaces() {
        let u = coord(Field::GF3, 5, &[0, 3]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersection(&u).unwrap(), u);
    }

    #[test]
    fn complementary_coordinate_subspaces() {
        let u = coord(Field::GF2, 6, &[0, 1]);
        let w = coord(Field::GF2, 6, &[2, 3, 4, 5]);
        assert_eq!(u.intersection(&w).unwrap().dim(), 0);
        assert_eq!(u.sum(&w).unwrap().dim(), 6);
    }

    #[test]
    fn mismatched_ambients_rejected() {
        let u = coord(Field::GF2, 6, &[0]);
        let w = coord(Field::GF2, 5, &[0]);
        assert!(u.sum(&w).is_err());
        assert!(u.intersection(&w).is_err());
    }

    #[test]
    fn quotient_section_is_a_right_inverse() {
        let f = Field::GF3;
        let u = SubspaceGF::span(
            f,
            4,
            [
                VectorGF::from_ints(f, &[1, 1, 1, 1]),
                VectorGF::from_ints(f, &[0, 1, 2, 0]),
            ],
        );
        let q = u.quotient_with_section();
        assert_eq!(q.dim(), 2);
        for a in 0..3 {
            for b in 0..3 {
                let x = VectorGF::from_ints(f, &[a, b]);
                assert_eq!(q.project(&q.section(&x)), x);
            }
        }
        for b in u.basis() {
            assert!(q.project(b).is_zero());
        }
    }

    #[test]
    fn tracked_insertion_expresses_dependents() {
        let f = Field::GF3;
        let mut e = EchelonBuilder::tracking(f, 3);
        let a = VectorGF::from_ints(f, &[1, 2, 0]);
        let b = VectorGF::from_ints(f, &[0, 1, 1]);
        assert!(e.insert_tracked(&a).is_none());
        assert!(e.insert_tracked(&b).is_none());
        let c = a.scaled(2).sum(&b);
        let comb = e.insert_tracked(&c).unwrap();
        assert_eq!(comb.to_elems(), vec![2, 1]);
    }
}
