use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cohom::enumerate_elements;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group given by generators, read from the text format:
/// a degree line, then one permutation per line in 1-based cycle notation.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let degree: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing degree line".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad degree: {e}")))?;
    let gens = lines
        .map(|l| Permutation::parse_cycles(degree, l))
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    Ok((degree, gens))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegreeReport {
    pub order: usize,
    pub subgroups: usize,
    pub minimal_normal_order: usize,
    /// Minimal index of a core-free subgroup.
    pub degree: usize,
    pub stabilizer_order: usize,
}

struct Table {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl Table {
    fn new(elems: &[Permutation]) -> Self {
        let n = elems.len();
        let index: HashMap<&Permutation, u16> = elems.iter().enumerate().map(|(i, g)| (g, i as u16)).collect();
        let mut mul = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&a.then(b)];
            }
        }
        let inv = elems.iter().map(|g| index[&g.inverse()]).collect();
        Table { n, mul, inv }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    /// The subgroup generated by `gens`.
    fn closure(&self, gens: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = FixedBitSet::with_capacity(self.n);
        set.insert(0);
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    fn conjugate(&self, s: &FixedBitSet, g: usize) -> FixedBitSet {
        let gi = self.inv[g] as usize;
        let mut out = FixedBitSet::with_capacity(self.n);
        for x in s.ones() {
            out.insert(self.mul(self.mul(gi, x), g));
        }
        out
    }

    fn core(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut core = s.clone();
        for g in 0..self.n {
            core.intersect_with(&self.conjugate(s, g));
        }
        core
    }
}

/// All subgroups, by closing the cyclic subgroups under joins.
fn subgroup_lattice(t: &Table) -> Vec<FixedBitSet> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut cyclic = Vec::new();
    for g in 0..t.n {
        let c = t.closure([g]);
        if seen.insert(c.clone()) {
            cyclic.push(c);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subset(a) {
                    continue;
                }
                let j = t.closure(a.ones().chain(c.ones()));
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
    all
}

/// Minimal degree of a faithful permutation representation of a group with a
/// unique minimal normal subgroup: the least index of a core-free subgroup.
pub fn min_faithful_degree(degree: usize, gens: &[Permutation], max_order: usize) -> Result<MinDegreeReport> {
    let elems = enumerate_elements(gens, degree, max_order)?;
    if elems.len() > u16::MAX as usize {
        return Err(Error::Budget("group too large for the multiplication table".into()));
    }
    let t = Table::new(&elems);
    let n = t.n;
    let lattice = subgroup_lattice(&t);
    let normal: Vec<&FixedBitSet> = lattice
        .iter()
        .filter(|s| s.count_ones(..) > 1 && gens_normalize(&t, s, &elems, gens))
        .collect();
    let minimal: Vec<&&FixedBitSet> = normal
        .iter()
        .filter(|s| {
            !normal
                .iter()
                .any(|o| o.count_ones(..) < s.count_ones(..) && o.is_subset(s))
        })
        .collect();
    if n > 1 && minimal.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "group has {} minimal normal subgroups; the single-subgroup formula needs exactly one",
            minimal.len()
        )));
    }
    let best = lattice
        .iter()
        .filter(|s| t.core(s).count_ones(..) == 1)
        .max_by_key(|s| s.count_ones(..))
        .expect("the trivial subgroup is core-free");
    let stabilizer_order = best.count_ones(..);
    Ok(MinDegreeReport {
        order: n,
        subgroups: lattice.len() + 1 - lattice.iter().any(|s| s.count_ones(..) == 1) as usize,
        minimal_normal_order: minimal.first().map_or(1, |s| s.count_ones(..)),
        degree: n / stabilizer_order,
        stabilizer_order,
    })
}

fn gens_normalize(t: &Table, s: &FixedBitSet, elems: &[Permutation], gens: &[Permutation]) -> bool {
    gens.iter().all(|g| {
        let gi = elems.iter().position(|e| e == g).expect("generator is an element");
        t.conjugate(s, gi) == *s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_natural_degree() {
        let (d, gens) = parse_group_file("5\n(1 2 3)\n(1 2 3 4 5)\n").unwrap();
        let r = min_faithful_degree(d, &gens, 400).unwrap();
        assert_eq!(r.order, 60);
        assert_eq!(r.subgroups, 59);
        assert_eq!(r.degree, 5);
    }

    #[test]
    fn klein_four_is_refused() {
        let (d, gens) = parse_group_file("4\n(1 2)(3 4)\n(1 3)(2 4)\n").unwrap();
        assert!(min_faithful_degree(d, &gens, 400).is_err());
    }

    #[test]
    fn cyclic_of_prime_power_order() {
        let (d, gens) = parse_group_file("# C8\n8\n(1 2 3 4 5 6 7 8)\n").unwrap();
        assert_eq!(min_faithful_degree(d, &gens, 400).unwrap().degree, 8);
    }
}
