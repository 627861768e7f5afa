use num_bigint::BigUint;

use super::Presentation;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Coset table over the trivial subgroup, filled by HLT enumeration with
/// coincidence processing.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max_cosets: usize,
}

impl CosetTable {
    fn new(gens: usize, max_cosets: usize) -> Self {
        let cols = 2 * gens;
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            max_cosets,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32> {
        if self.len() >= self.max_cosets {
            return Err(Error::Budget(format!(
                "coset enumeration exceeded {} cosets",
                self.max_cosets
            )));
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                match self.get(e1, x) {
                    NONE => self.set(e1, x, f1),
                    t => self.merge(f1, t),
                }
                let e1 = self.rep(e1);
                let f1 = self.rep(f1);
                match self.get(f1, x ^ 1) {
                    NONE => self.set(f1, x ^ 1, e1),
                    t => self.merge(e1, t),
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, word[i]) != NONE {
                f = self.get(f, word[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, word[j as usize] ^ 1) != NONE {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Order of the abstractly presented group, by coset enumeration over the
/// trivial subgroup. Fails with [`Error::Budget`] past `max_cosets` definitions.
pub fn todd_coxeter_order(presentation: &Presentation, max_cosets: usize) -> Result<BigUint> {
    let gens = presentation.generator_count();
    let relators: Vec<Vec<usize>> = presentation
        .relators()
        .iter()
        .map(|r| r.iter().map(|l| 2 * l.gen + l.inverse as usize).collect())
        .collect();
    let mut ct = CosetTable::new(gens, max_cosets);
    let mut c = 0u32;
    while (c as usize) < ct.len() {
        if ct.is_live(c) {
            for r in &relators {
                ct.scan_and_fill(c, r)?;
                if !ct.is_live(c) {
                    break;
                }
            }
            for x in 0..ct.cols {
                if ct.is_live(c) && ct.get(c, x) == NONE {
                    ct.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    let live = (0..ct.len() as u32).filter(|&c| ct.is_live(c)).count();
    Ok(BigUint::from(live))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{GroupKind, Letter};

    #[test]
    fn coxeter_s5() {
        let p = Presentation::of(GroupKind::SymmetricCoxeter, 5).unwrap();
        assert_eq!(todd_coxeter_order(&p, 100_000).unwrap(), BigUint::from(120u32));
    }

    #[test]
    fn carmichael_a6() {
        let p = Presentation::of(GroupKind::AlternatingCarmichael, 6).unwrap();
        assert_eq!(todd_coxeter_order(&p, 100_000).unwrap(), BigUint::from(360u32));
    }

    #[test]
    fn budget_is_reported() {
        let p = Presentation::of(GroupKind::SymmetricCoxeter, 6).unwrap();
        assert!(matches!(todd_coxeter_order(&p, 50), Err(Error::Budget(_))));
    }

    #[test]
    fn letter_columns_pair_up() {
        let l = Letter::inv(3);
        assert_eq!((2 * l.gen + l.inverse as usize) ^ 1, 2 * l.gen);
    }
}
