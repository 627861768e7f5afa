use std::fmt;

use super::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Packed {
    /// GF(2): one bit per coordinate, little-endian within each word. Padding bits stay zero.
    Bits(Vec<u64>),
    /// Odd p: one residue per byte.
    Bytes(Vec<u8>),
}

/// A vector over GF(p) with a fixed length.
///
/// GF(2) vectors are bit-packed so that row operations are word-parallel XORs;
/// the representation is not observable through the public interface.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorGF {
    field: Field,
    len: usize,
    data: Packed,
}

#[inline]
fn words(len: usize) -> usize {
    len.div_ceil(64)
}

impl VectorGF {
    pub fn zeros(field: Field, len: usize) -> Self {
        let data = if field.p() == 2 {
            Packed::Bits(vec![0; words(len)])
        } else {
            Packed::Bytes(vec![0; len])
        };
        VectorGF { field, len, data }
    }

    pub fn unit(field: Field, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.set(i, 1);
        v
    }

    /// Builds a vector from integer coordinates, reducing each modulo p.
    pub fn from_ints(field: Field, xs: &[i64]) -> Self {
        let mut v = Self::zeros(field, xs.len());
        for (i, &x) in xs.iter().enumerate() {
            v.set(i, field.reduce(x));
        }
        v
    }

    pub fn from_elems(field: Field, xs: &[u8]) -> Self {
        let mut v = Self::zeros(field, xs.len());
        for (i, &x) in xs.iter().enumerate() {
            v.set(i, x % field.p());
        }
        v
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        match &self.data {
            Packed::Bits(w) => ((w[i >> 6] >> (i & 63)) & 1) as u8,
            Packed::Bytes(b) => b[i],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, x: u8) {
        debug_assert!(i < self.len && x < self.field.p());
        match &mut self.data {
            Packed::Bits(w) => {
                let mask = 1u64 << (i & 63);
                if x & 1 == 1 {
                    w[i >> 6] |= mask;
                } else {
                    w[i >> 6] &= !mask;
                }
            }
            Packed::Bytes(b) => b[i] = x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Packed::Bits(w) => w.iter().all(|&x| x == 0),
            Packed::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        match &self.data {
            Packed::Bits(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize),
            Packed::Bytes(b) => b.iter().position(|&x| x != 0),
        }
    }

    /// Indices of nonzero coordinates, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        match &self.data {
            Packed::Bits(w) => {
                let mut out = Vec::new();
                for (wi, &word) in w.iter().enumerate() {
                    let mut x = word;
                    while x != 0 {
                        out.push(wi * 64 + x.trailing_zeros() as usize);
                        x &= x - 1;
                    }
                }
                out
            }
            Packed::Bytes(b) => (0..b.len()).filter(|&i| b[i] != 0).collect(),
        }
    }

    pub fn weight(&self) -> usize {
        match &self.data {
            Packed::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Packed::Bytes(b) => b.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &VectorGF, c: u8) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        if c == 0 {
            return;
        }
        match (&mut self.data, &other.data) {
            (Packed::Bits(a), Packed::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            (Packed::Bytes(a), Packed::Bytes(b)) => {
                let p = self.field.p();
                let mut table = [0u8; 256];
                for (x, t) in table.iter_mut().enumerate().take(p as usize) {
                    *t = self.field.mul(c, x as u8);
                }
                for (x, y) in a.iter_mut().zip(b) {
                    let s = *x + table[*y as usize];
                    *x = if s >= p { s - p } else { s };
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn add_assign(&mut self, other: &VectorGF) {
        self.add_scaled(other, 1);
    }

    pub fn sub_assign(&mut self, other: &VectorGF) {
        let c = self.field.neg(1);
        self.add_scaled(other, c);
    }

    pub fn scale(&mut self, c: u8) {
        match &mut self.data {
            Packed::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Packed::Bytes(b) => {
                let f = self.field;
                b.iter_mut().for_each(|x| *x = f.mul(*x, c));
            }
        }
    }

    pub fn scaled(&self, c: u8) -> VectorGF {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn neg(&self) -> VectorGF {
        self.scaled(self.field.neg(1))
    }

    pub fn sum(&self, other: &VectorGF) -> VectorGF {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn diff(&self, other: &VectorGF) -> VectorGF {
        let mut v = self.clone();
        v.sub_assign(other);
        v
    }

    /// Standard bilinear form `sum_i u_i v_i`.
    pub fn dot(&self, other: &VectorGF) -> u8 {
        assert_eq!(self.len, other.len, "vector length mismatch");
        match (&self.data, &other.data) {
            (Packed::Bits(a), Packed::Bits(b)) => {
                let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                (ones & 1) as u8
            }
            (Packed::Bytes(a), Packed::Bytes(b)) => {
                let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
                (s % self.field.p() as u64) as u8
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn to_elems(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Coordinates as a digit string (p ≤ 10 uses one character per coordinate).
    pub fn to_digit_string(&self) -> String {
        if self.field.p() <= 10 {
            (0..self.len).map(|i| char::from(b'0' + self.get(i))).collect()
        } else {
            (0..self.len)
                .map(|i| self.get(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn from_digit_string(field: Field, s: &str) -> Option<VectorGF> {
        let digits: Option<Vec<u8>> = if field.p() <= 10 {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        } else if s.is_empty() {
            Some(Vec::new())
        } else {
            s.split(',').map(|t| t.trim().parse::<u8>().ok()).collect()
        };
        let digits = digits?;
        if digits.iter().any(|&d| d >= field.p()) {
            return None;
        }
        Some(VectorGF::from_elems(field, &digits))
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &VectorGF) -> VectorGF {
        let mut v = VectorGF::zeros(self.field, self.len + other.len);
        for i in self.support() {
            v.set(i, self.get(i));
        }
        for i in other.support() {
            v.set(self.len + i, other.get(i));
        }
        v
    }

    pub fn slice(&self, start: usize, end: usize) -> VectorGF {
        let mut v = VectorGF::zeros(self.field, end - start);
        for i in self.support() {
            if i >= start && i < end {
                v.set(i - start, self.get(i));
            }
        }
        v
    }
}

impl fmt::Debug for VectorGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_digit_string(), self.field.p())
    }
}
