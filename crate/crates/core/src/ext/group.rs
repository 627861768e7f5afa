use std::fmt;

use rand::Rng;

use crate::cohom::{random_element, SharedCocycle};
use crate::error::{Error, Result};
use crate::gf::{MatrixGF, VectorGF};
use crate::gmod::GModule;
use crate::perm::Permutation;

/// An element `(m, g)` of `M ×_δ G`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub m: VectorGF,
    pub g: Permutation,
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.m, self.g)
    }
}

/// The extension `1 → M → H → G → 1` defined by a cocycle, with
/// `(m₁,g₁)(m₂,g₂) = (m₁·g₂ + m₂ + δ(g₁,g₂), g₁g₂)`.
#[derive(Clone)]
pub struct ExtGroup {
    delta: SharedCocycle,
}

impl ExtGroup {
    pub fn new(delta: SharedCocycle) -> Self {
        ExtGroup { delta }
    }

    /// Builds the group and spot-checks associativity on random triples.
    pub fn build(delta: SharedCocycle, rng: &mut impl Rng, trials: usize) -> Result<Self> {
        let h = ExtGroup::new(delta);
        h.check_associativity(rng, trials)?;
        Ok(h)
    }

    pub fn module(&self) -> &GModule {
        self.delta.module()
    }

    pub fn cocycle(&self) -> &SharedCocycle {
        &self.delta
    }

    pub fn degree(&self) -> usize {
        self.module().presentation().degree()
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement {
            m: self.module().zero(),
            g: Permutation::identity(self.degree()),
        }
    }

    pub fn lift(&self, g: &Permutation) -> ExtElement {
        ExtElement {
            m: self.module().zero(),
            g: g.clone(),
        }
    }

    pub fn from_module(&self, m: VectorGF) -> ExtElement {
        ExtElement {
            m,
            g: Permutation::identity(self.degree()),
        }
    }

    /// Lifts `(0, s_i)` of the base generators followed by `(e_j, 1)` for a basis of `M`.
    pub fn generators(&self) -> Vec<ExtElement> {
        let module = self.module();
        let mut gens: Vec<ExtElement> = module
            .presentation()
            .realization()
            .iter()
            .map(|g| self.lift(g))
            .collect();
        gens.extend((0..module.dim()).map(|j| self.from_module(VectorGF::unit(module.field(), module.dim(), j))));
        gens
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        let mut m = self.module().act(&a.m, &b.g)?;
        m.add_assign(&b.m);
        m.add_assign(&self.delta.eval(&a.g, &b.g)?);
        Ok(ExtElement { m, g: a.g.then(&b.g) })
    }

    /// `(m,g)⁻¹ = (-m·g⁻¹ - δ(g,g⁻¹), g⁻¹)`
    pub fn inverse(&self, a: &ExtElement) -> Result<ExtElement> {
        let gi = a.g.inverse();
        let mut m = self.module().act(&a.m, &gi)?.neg();
        m.sub_assign(&self.delta.eval(&a.g, &gi)?);
        Ok(ExtElement { m, g: gi })
    }

    pub fn pow(&self, a: &ExtElement, e: u64) -> Result<ExtElement> {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, a: &ExtElement) -> bool {
        a.m.is_zero() && a.g.is_identity()
    }

    /// Order of an element; capped at `4·p·|g|`.
    pub fn element_order(&self, a: &ExtElement) -> Result<u64> {
        let cap = 4 * self.module().field().p() as u64 * a.g.order();
        let mut x = a.clone();
        for n in 1..=cap {
            if self.is_identity(&x) {
                return Ok(n);
            }
            x = self.mul(&x, a)?;
        }
        Err(Error::Budget(format!("element order exceeds {cap}")))
    }

    pub fn random(&self, rng: &mut impl Rng) -> ExtElement {
        let module = self.module();
        let p = module.field().p();
        let xs: Vec<u8> = (0..module.dim()).map(|_| rng.gen_range(0..p)).collect();
        ExtElement {
            m: VectorGF::from_elems(module.field(), &xs),
            g: random_element(module.presentation(), rng),
        }
    }

    pub fn check_associativity(&self, rng: &mut impl Rng, trials: usize) -> Result<()> {
        for _ in 0..trials {
            let (a, b, c) = (self.random(rng), self.random(rng), self.random(rng));
            let left = self.mul(&self.mul(&a, &b)?, &c)?;
            let right = self.mul(&a, &self.mul(&b, &c)?)?;
            if left != right {
                return Err(Error::check(
                    "extension",
                    format!("associativity fails at {a:?}, {b:?}, {c:?}"),
                ));
            }
        }
        Ok(())
    }

    /// `(m, x)² = (m·(x+1) + δ(x,x), x²)` for an involution `x`: the squares
    /// over the coset `xM` are `im(x+1) + δ(x,x)`, so every element of the
    /// coset has order 4 iff `δ(x,x) ∉ im(x+1)`.
    pub fn coset_squares_nonzero(&self, x: &Permutation) -> Result<bool> {
        let module = self.module();
        if !x.then(x).is_identity() || x.is_identity() {
            return Err(Error::InvalidInput(format!("{x} is not an involution")));
        }
        let xm = module.element_matrix(x)?;
        let plus_one = xm.add(&MatrixGF::identity(module.field(), module.dim()));
        let image = crate::gf::SubspaceGF::span(module.field(), module.dim(), plus_one.rows().iter().cloned());
        Ok(!image.contains(&self.delta.eval(x, x)?))
    }

    /// Orders of all `p^dim M` elements of the coset `xM`, by direct
    /// enumeration; returns the set of orders found.
    pub fn sweep_coset_orders(&self, x: &Permutation, max_elements: u64) -> Result<Vec<u64>> {
        let module = self.module();
        let field = module.field();
        let p = field.p() as u64;
        let d = module.dim();
        let count = p
            .checked_pow(d as u32)
            .filter(|&c| c <= max_elements)
            .ok_or_else(|| Error::Budget(format!("coset of size {p}^{d} is too large to sweep")))?;
        let xm = module.element_matrix(x)?;
        let order_x = x.order();
        // powers of (m, x): m_{n+1} = m_n·x + m + δ(x^n, x)
        let mut deltas = Vec::new();
        let mut xn = Permutation::identity(x.degree());
        for _ in 0..order_x * p * 4 {
            deltas.push(self.delta.eval(&xn, x)?);
            xn = xn.then(x);
        }
        let mut orders: Vec<u64> = Vec::new();
        let mut m = VectorGF::zeros(field, d);
        for code in 0..count {
            let mut c = code;
            for j in 0..d {
                m.set(j, (c % p) as u8);
                c /= p;
            }
            let mut acc = m.clone();
            let mut n = 1u64;
            loop {
                if n.is_multiple_of(order_x) && acc.is_zero() {
                    break;
                }
                if n as usize >= deltas.len() {
                    return Err(Error::Budget("element order exceeds the cap".into()));
                }
                let mut next = xm.vec_mul(&acc);
                next.add_assign(&m);
                next.add_assign(&deltas[n as usize]);
                acc = next;
                n += 1;
            }
            if !orders.contains(&n) {
                orders.push(n);
            }
        }
        orders.sort_unstable();
        Ok(orders)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cohom::{RandomCoboundary, ZeroCocycle};
    use crate::gmod::natural_module;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_laws_for_a_coboundary_twist() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = natural_module(6, 3).unwrap();
        let h = ExtGroup::build(Arc::new(RandomCoboundary::new(n, 4)), &mut rng, 200).unwrap();
        for _ in 0..50 {
            let a = h.random(&mut rng);
            let inv = h.inverse(&a).unwrap();
            assert!(h.is_identity(&h.mul(&a, &inv).unwrap()));
            assert!(h.is_identity(&h.mul(&inv, &a).unwrap()));
        }
    }

    #[test]
    fn module_elements_have_order_p() {
        let n = natural_module(6, 3).unwrap();
        let h = ExtGroup::new(Arc::new(ZeroCocycle::new(n.clone())));
        let v = h.from_module(VectorGF::unit(n.field(), 6, 2));
        assert_eq!(h.element_order(&v).unwrap(), 3);
        assert_eq!(h.element_order(&h.identity()).unwrap(), 1);
    }

    #[test]
    fn split_coset_contains_involutions() {
        let n = natural_module(6, 2).unwrap();
        let h = ExtGroup::new(Arc::new(ZeroCocycle::new(n)));
        let x = Permutation::parse_cycles(6, "(1 2)(3 4)").unwrap();
        assert!(!h.coset_squares_nonzero(&x).unwrap());
        assert_eq!(h.sweep_coset_orders(&x, 1 << 10).unwrap(), vec![2, 4]);
    }
}
