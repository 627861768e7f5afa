use std::fmt::Write as _;

use super::{Field, VectorGF};
use crate::error::{Error, Result};

/// Dense matrix over GF(p), stored as a list of rows.
///
/// Vectors are row vectors throughout: a matrix acts on the right, `v ↦ v·A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixGF {
    field: Field,
    ncols: usize,
    rows: Vec<VectorGF>,
}

/// Reduces `rows` in place to reduced row-echelon form considering only columns
/// `0..limit`, drops zero rows, and returns the pivot columns.
pub(crate) fn rref_in_place(field: Field, rows: &mut Vec<VectorGF>, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..limit {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i].get(col) != 0) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r].get(col);
        if lead != 1 {
            rows[r].scale(field.inv(lead));
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let c = row.get(col);
            if c != 0 {
                row.add_scaled(pivot_row, field.neg(c));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl MatrixGF {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        MatrixGF {
            field,
            ncols,
            rows: vec![VectorGF::zeros(field, ncols); nrows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        MatrixGF {
            field,
            ncols: n,
            rows: (0..n).map(|i| VectorGF::unit(field, n, i)).collect(),
        }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<VectorGF>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols || r.field() != field) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {} columns",
                bad.len(),
                ncols
            )));
        }
        Ok(MatrixGF { field, ncols, rows })
    }

    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        MatrixGF {
            field,
            ncols,
            rows: rows.iter().map(|r| VectorGF::from_ints(field, r)).collect(),
        }
    }

    /// The permutation matrix sending basis vector `i` to basis vector `images[i]`.
    pub fn permutation(field: Field, images: &[usize]) -> Self {
        let n = images.len();
        MatrixGF {
            field,
            ncols: n,
            rows: images.iter().map(|&j| VectorGF::unit(field, n, j)).collect(),
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &VectorGF {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[VectorGF] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<VectorGF> {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.rows[i].set(j, x);
    }

    pub fn row_mut(&mut self, i: usize) -> &mut VectorGF {
        &mut self.rows[i]
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(self.field, self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.support() {
                t.rows[j].set(i, row.get(j));
            }
        }
        t
    }

    /// `v·A`
    pub fn vec_mul(&self, v: &VectorGF) -> VectorGF {
        assert_eq!(v.len(), self.nrows(), "vector/matrix dimension mismatch");
        let mut out = VectorGF::zeros(self.field, self.ncols);
        for i in v.support() {
            out.add_scaled(&self.rows[i], v.get(i));
        }
        out
    }

    /// `A·vᵀ`, as a vector.
    pub fn mul_vec(&self, v: &VectorGF) -> VectorGF {
        assert_eq!(v.len(), self.ncols, "vector/matrix dimension mismatch");
        let xs: Vec<u8> = self.rows.iter().map(|r| r.dot(v)).collect();
        VectorGF::from_elems(self.field, &xs)
    }

    /// `A·B`
    pub fn mul(&self, other: &MatrixGF) -> MatrixGF {
        assert_eq!(self.ncols, other.nrows(), "matrix dimension mismatch");
        MatrixGF {
            field: self.field,
            ncols: other.ncols,
            rows: self.rows.iter().map(|r| other.vec_mul(r)).collect(),
        }
    }

    pub fn add(&self, other: &MatrixGF) -> MatrixGF {
        self.add_scaled(other, 1)
    }

    /// `A + c·B`
    pub fn add_scaled(&self, other: &MatrixGF, c: u8) -> MatrixGF {
        assert_eq!((self.nrows(), self.ncols), (other.nrows(), other.ncols));
        let mut out = self.clone();
        for (r, o) in out.rows.iter_mut().zip(&other.rows) {
            r.add_scaled(o, c);
        }
        out
    }

    pub fn scaled(&self, c: u8) -> MatrixGF {
        MatrixGF {
            field: self.field,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.get(i) == 1 && r.weight() == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Reduced row-echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self) -> (Vec<VectorGF>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(self.field, &mut rows, self.ncols);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A·xᵀ = 0}`, i.e. vectors orthogonal to every row.
    pub fn nullspace(&self) -> Vec<VectorGF> {
        let (rows, pivots) = self.rref();
        let field = self.field;
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = VectorGF::zeros(field, self.ncols);
            x.set(free, 1);
            for (row, &p) in rows.iter().zip(&pivots) {
                let c = row.get(free);
                if c != 0 {
                    x.set(p, field.neg(c));
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of `{x : x·A = 0}`.
    pub fn left_nullspace(&self) -> Vec<VectorGF> {
        self.transpose().nullspace()
    }

    /// Some `x` with `A·xᵀ = bᵀ`, if one exists.
    pub fn solve(&self, b: &VectorGF) -> Result<Option<VectorGF>> {
        if b.len() != self.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a system with {} equations",
                b.len(),
                self.nrows()
            )));
        }
        let field = self.field;
        let mut rows: Vec<VectorGF> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut rhs = VectorGF::zeros(field, 1);
                rhs.set(0, b.get(i));
                r.concat(&rhs)
            })
            .collect();
        let pivots = rref_in_place(field, &mut rows, self.ncols + 1);
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = VectorGF::zeros(field, self.ncols);
        for (row, &p) in rows.iter().zip(&pivots) {
            x.set(p, row.get(self.ncols));
        }
        Ok(Some(x))
    }

    /// Some `x` with `x·A = b`, if one exists.
    pub fn solve_left(&self, b: &VectorGF) -> Result<Option<VectorGF>> {
        self.transpose().solve(b)
    }

    pub fn inverse(&self) -> Result<MatrixGF> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let field = self.field;
        let mut rows: Vec<VectorGF> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&VectorGF::unit(field, n, i)))
            .collect();
        let pivots = rref_in_place(field, &mut rows, n);
        if pivots.len() != n {
            return Err(Error::Singular);
        }
        Ok(MatrixGF {
            field,
            ncols: n,
            rows: rows.iter().map(|r| r.slice(n, 2 * n)).collect(),
        })
    }

    /// Text dump: first line `p rows cols`, then one digit string per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.p(), self.nrows(), self.ncols);
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.to_digit_string());
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MatrixGF> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("matrix header: {e}")))?;
        let [p, nrows, ncols] = nums[..] else {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        };
        let field = Field::new(p as u32)?;
        let mut rows = Vec::with_capacity(nrows);
        for _ in 0..nrows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated matrix dump".into()))?;
            let v = VectorGF::from_digit_string(field, line.trim())
                .filter(|v| v.len() == ncols)
                .ok_or_else(|| Error::Parse(format!("bad matrix row {line:?}")))?;
            rows.push(v);
        }
        Ok(MatrixGF { field, ncols, rows })
    }
}
