use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::{Cocycle2, CocycleKind};
use crate::error::{Error, Result};
use crate::gf::{Field, VectorGF};
use crate::gmod::GModule;
use crate::perm::{Permutation, Presentation};

/// An element of the Clifford algebra on `e_0, .., e_{m-1}` with `e_i² = 1`,
/// as integer coefficients on monomials (bitmasks).
pub type CliffordElement = HashMap<u32, i64>;

/// Sign of `e_A·e_B` relative to `e_{A xor B}`.
fn monomial_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (a >> i >> 1).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn times_difference(x: &CliffordElement, a: usize, b: usize) -> CliffordElement {
    let (ea, eb) = (1u32 << a, 1u32 << b);
    let mut out: CliffordElement = HashMap::with_capacity(2 * x.len());
    for (&mono, &c) in x {
        *out.entry(mono ^ ea).or_insert(0) += c * monomial_sign(mono, ea);
        *out.entry(mono ^ eb).or_insert(0) -= c * monomial_sign(mono, eb);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The canonical lift of `σ ∈ S_m`: each cycle `(c_1 .. c_r)` is written as
/// `(c_1 c_2)(c_1 c_3)···(c_1 c_r)` and each transposition `(a b)` lifts to `e_a - e_b`.
pub fn clifford_lift(sigma: &Permutation) -> CliffordElement {
    let mut x: CliffordElement = HashMap::from([(0, 1)]);
    for cycle in sigma.cycles() {
        for &c in &cycle[1..] {
            x = times_difference(&x, cycle[0], c);
        }
    }
    x
}

/// Sign discrepancy between `t(σ)t(τ)` and `t(στ)`, as 0 or 1.
fn lift_discrepancy(ls: &CliffordElement, lt: &CliffordElement, lst: &CliffordElement) -> u8 {
    let (&mu, &gamma) = lst.iter().min_by_key(|(m, _)| **m).expect("lifts are nonzero");
    let mut kappa = 0i64;
    for (&a, &ca) in ls {
        if let Some(&cb) = lt.get(&(a ^ mu)) {
            kappa += ca * cb * monomial_sign(a, a ^ mu);
        }
    }
    debug_assert!(kappa != 0, "lifts are not proportional");
    ((kappa > 0) != (gamma > 0)) as u8
}

const LIFT_CACHE_LIMIT: usize = 1 << 16;

/// The spin cocycle on permutations of a point list, with trivial GF(2) coefficients.
pub struct SpinCocycle {
    module: GModule,
    points: Vec<usize>,
    cache: RwLock<HashMap<Permutation, Arc<CliffordElement>>>,
}

impl SpinCocycle {
    /// `ε_spin` on the group of `pres`, which must act on `points`.
    pub fn new(pres: Arc<Presentation>, points: Vec<usize>) -> Result<Self> {
        if points.len() > 31 {
            return Err(Error::InvalidInput("spin cocycle needs at most 31 points".into()));
        }
        let module = GModule::trivial(pres, Field::new(2)?);
        Ok(SpinCocycle {
            module,
            points,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// On `S_m` with its Coxeter presentation.
    pub fn on_symmetric(m: usize) -> Result<Self> {
        let pres = Arc::new(Presentation::of(crate::perm::GroupKind::SymmetricCoxeter, m)?);
        Self::new(pres, (0..m).collect())
    }

    fn restricted(&self, g: &Permutation) -> Result<Permutation> {
        g.restrict(&self.points)
            .ok_or_else(|| Error::InvalidInput(format!("{g} does not preserve the spin points")))
    }

    fn lift(&self, sigma: &Permutation) -> Arc<CliffordElement> {
        if let Some(l) = self.cache.read().expect("lift cache").get(sigma) {
            return l.clone();
        }
        let l = Arc::new(clifford_lift(sigma));
        let mut cache = self.cache.write().expect("lift cache");
        if cache.len() >= LIFT_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(sigma.clone(), l.clone());
        l
    }

    pub fn value(&self, g: &Permutation, h: &Permutation) -> Result<u8> {
        let (s, t) = (self.restricted(g)?, self.restricted(h)?);
        if s.is_identity() || t.is_identity() {
            return Ok(0);
        }
        let st = s.then(&t);
        Ok(lift_discrepancy(&self.lift(&s), &self.lift(&t), &self.lift(&st)))
    }
}

impl Cocycle2 for SpinCocycle {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Spin
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        Ok(VectorGF::from_elems(self.module.field(), &[self.value(g, h)?]))
    }
}

/// `ε'(σ,τ) = sgn₂(σ)·sgn₂(τ)` for the parity bits of the actions on a point list.
pub struct SignCarryCocycle {
    module: GModule,
    points: Vec<usize>,
}

impl SignCarryCocycle {
    pub fn new(pres: Arc<Presentation>, points: Vec<usize>) -> Result<Self> {
        Ok(SignCarryCocycle {
            module: GModule::trivial(pres, Field::new(2)?),
            points,
        })
    }

    pub fn on_symmetric(m: usize) -> Result<Self> {
        let pres = Arc::new(Presentation::of(crate::perm::GroupKind::SymmetricCoxeter, m)?);
        Self::new(pres, (0..m).collect())
    }

    fn parity(&self, g: &Permutation) -> Result<u8> {
        let r = g
            .restrict(&self.points)
            .ok_or_else(|| Error::InvalidInput(format!("{g} does not preserve the points")))?;
        Ok(!r.is_even() as u8)
    }

    pub fn value(&self, g: &Permutation, h: &Permutation) -> Result<u8> {
        Ok(self.parity(g)? & self.parity(h)?)
    }
}

impl Cocycle2 for SignCarryCocycle {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::SignCarry
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        Ok(VectorGF::from_elems(self.module.field(), &[self.value(g, h)?]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::check_cocycle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn transposition_lift_squares_to_plus_two() {
        let t = clifford_lift(&p(4, "(1 2)"));
        assert_eq!(t.len(), 2);
        let spin = SpinCocycle::on_symmetric(4).unwrap();
        assert_eq!(spin.value(&p(4, "(1 2)"), &p(4, "(1 2)")).unwrap(), 0);
        assert_eq!(spin.value(&p(4, "(1 2)(3 4)"), &p(4, "(1 2)(3 4)")).unwrap(), 1);
    }

    #[test]
    fn normalized_and_cocycle_on_s5() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spin = SpinCocycle::on_symmetric(5).unwrap();
        check_cocycle(&spin, &mut rng, 2000).unwrap();
        let carry = SignCarryCocycle::on_symmetric(5).unwrap();
        check_cocycle(&carry, &mut rng, 500).unwrap();
    }

    #[test]
    fn carry_values() {
        let carry = SignCarryCocycle::on_symmetric(5).unwrap();
        let t = p(5, "(1 2)");
        let d = p(5, "(1 2)(3 4)");
        assert_eq!(carry.value(&t, &t).unwrap(), 1);
        assert_eq!(carry.value(&d, &d).unwrap(), 0);
        assert_eq!(carry.value(&t, &d).unwrap(), 0);
    }
}
