use num_bigint::BigUint;

use super::Permutation;
use crate::error::{Error, Result};

/// A permutation group given by an ordered list of generators.
///
/// The generator order is part of the group's identity: cohomology code indexes
/// unknowns by generator position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

/// An orbit together with a Schreier transversal.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub base: usize,
    /// Orbit points in discovery order, starting with `base`.
    pub points: Vec<usize>,
    /// `transversal[q]` maps `base` to `q`, for orbit points `q`.
    transversal: Vec<Option<Permutation>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.transversal.get(q).is_some_and(|t| t.is_some())
    }

    pub fn transversal(&self, q: usize) -> Option<&Permutation> {
        self.transversal.get(q).and_then(|t| t.as_ref())
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidInput(format!(
                "generator {g} has degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbit(&self, point: usize) -> Result<Orbit> {
        if point >= self.degree {
            return Err(Error::InvalidInput(format!(
                "point {point} outside degree {}",
                self.degree
            )));
        }
        Ok(orbit_of(self.degree, &self.generators, point))
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut pts = orbit_points(self.degree, &self.generators, p);
            for &q in &pts {
                seen[q] = true;
            }
            pts.sort_unstable();
            out.push(pts);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_points(self.degree, &self.generators, 0).len() == self.degree
    }

    pub fn stabilizer_chain(&self) -> StabChain {
        StabChain::new(self.degree, &self.generators, usize::MAX).expect("unbounded")
    }

    /// Stabilizer chain with a cap on the number of strong generators.
    pub fn stabilizer_chain_capped(&self, max_strong_gens: usize) -> Result<StabChain> {
        StabChain::new(self.degree, &self.generators, max_strong_gens)
    }

    pub fn order(&self) -> BigUint {
        self.stabilizer_chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.stabilizer_chain().contains(g)
    }

    /// The group on the points of `orbit`, relabelled in the given order.
    pub fn action_on(&self, points: &[usize]) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                g.restrict(points)
                    .ok_or_else(|| Error::InvalidInput("point set is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(points.len(), gens)
    }
}

fn orbit_points(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut pts = vec![point];
    let mut i = 0;
    while i < pts.len() {
        let x = pts[i];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                pts.push(y);
            }
        }
        i += 1;
    }
    pts
}

fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Orbit {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[point] = Some(Permutation::identity(degree));
    let mut points = vec![point];
    let mut i = 0;
    while i < points.len() {
        let x = points[i];
        let tx = transversal[x].clone().expect("orbit point");
        for g in gens {
            let y = g.apply(x);
            if transversal[y].is_none() {
                transversal[y] = Some(tx.then(g));
                points.push(y);
            }
        }
        i += 1;
    }
    Orbit {
        base: point,
        points,
        transversal,
    }
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    orbit: Orbit,
    inverses: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Self {
        let orbit = orbit_of(degree, &gens, base_point);
        let inverses = orbit
            .transversal
            .iter()
            .map(|t| t.as_ref().map(|t| t.inverse()))
            .collect();
        Level {
            base_point,
            gens,
            orbit,
            inverses,
        }
    }
}

/// Base and strong generating set computed by the deterministic Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut strong = gens.len();
        // initial base: enough points that no generator fixes all of them
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.moved_points()[0]);
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(degree, b, level_gens));
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut extended = None;
            'scan: for &beta in &chain.levels[lvl].orbit.points {
                let u_beta = chain.levels[lvl].orbit.transversal(beta).expect("orbit");
                for s in &chain.levels[lvl].gens {
                    let image = s.apply(beta);
                    let u_inv = chain.levels[lvl].inverses[image].as_ref().expect("orbit");
                    let h = u_beta.then(s).then(u_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = chain.strip_from(&h, lvl + 1);
                    if j < chain.levels.len() || !y.is_identity() {
                        extended = Some((y, j));
                        break 'scan;
                    }
                }
            }
            match extended {
                None => i -= 1,
                Some((y, j)) => {
                    strong += 1;
                    if strong > cap {
                        return Err(Error::Budget(format!("Schreier–Sims exceeded {cap} strong generators")));
                    }
                    if j == chain.levels.len() {
                        let b = y.moved_points()[0];
                        chain.levels.push(Level::new(degree, b, Vec::new()));
                    }
                    for l in lvl + 1..=j {
                        let mut g = chain.levels[l].gens.clone();
                        g.push(y.clone());
                        let b = chain.levels[l].base_point;
                        chain.levels[l] = Level::new(degree, b, g);
                    }
                    i = j as isize;
                }
            }
        }
        Ok(chain)
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it passed every level).
    fn strip_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base_point);
            match &level.inverses[beta] {
                Some(u_inv) => g = g.then(u_inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (y, j) = self.strip_from(g, 0);
        j == self.levels.len() && y.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7 {
            let g = PermGroup::new(
                n,
                vec![
                    p(n, "(1 2)"),
                    Permutation::from_images((1..n).chain([0]).collect()).unwrap(),
                ],
            )
            .unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(g.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn identity_group_has_order_one() {
        assert_eq!(PermGroup::trivial(5).order(), BigUint::from(1u32));
        let g = PermGroup::new(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), BigUint::from(1u32));
    }

    #[test]
    fn transversal_maps_base_to_point() {
        let g = PermGroup::new(6, vec![p(6, "(1 2 3)"), p(6, "(3 4)(5 6)")]).unwrap();
        let orb = g.orbit(0).unwrap();
        assert_eq!(orb.len(), 4);
        for &q in &orb.points {
            assert_eq!(orb.transversal(q).unwrap().apply(0), q);
        }
        assert!(g.orbit(6).is_err());
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(5, vec![p(5, "(1 2 3)"), p(5, "(3 4 5)")]).unwrap();
        assert_eq!(g.order(), BigUint::from(60u32));
        let chain = g.stabilizer_chain();
        assert!(chain.contains(&p(5, "(1 2)(3 4)")));
        assert!(!chain.contains(&p(5, "(1 2)")));
    }

    #[test]
    fn strong_generator_cap() {
        let g = PermGroup::new(8, vec![p(8, "(1 2)"), p(8, "(1 2 3 4 5 6 7 8)")]).unwrap();
        assert!(matches!(g.stabilizer_chain_capped(2), Err(Error::Budget(_))));
    }
}
