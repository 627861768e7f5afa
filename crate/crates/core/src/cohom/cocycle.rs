use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::VectorGF;
use crate::gmod::GModule;
use crate::perm::{Letter, Permutation, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleKind {
    Zero,
    Spin,
    SignCarry,
    Sum,
    Induced,
    Connecting,
    Coboundary,
    Projected,
    Other,
}

/// A normalized 2-cocycle `G × G → M`, evaluated on demand.
///
/// Convention: `δ(g,h)·x + δ(gh,x) = δ(h,x) + δ(g,hx)` with `M` a right module.
pub trait Cocycle2: Send + Sync {
    fn module(&self) -> &GModule;

    fn kind(&self) -> CocycleKind;

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF>;
}

pub type SharedCocycle = Arc<dyn Cocycle2>;

/// Evaluates the cocycle identity at one triple; returns the defect.
pub fn identity_defect(c: &dyn Cocycle2, g: &Permutation, h: &Permutation, x: &Permutation) -> Result<VectorGF> {
    let m = c.module();
    let gh = g.then(h);
    let hx = h.then(x);
    let mut lhs = m.act(&c.eval(g, h)?, x)?;
    lhs.add_assign(&c.eval(&gh, x)?);
    let mut rhs = c.eval(h, x)?;
    rhs.add_assign(&c.eval(g, &hx)?);
    Ok(lhs.diff(&rhs))
}

pub fn random_element(pres: &Presentation, rng: &mut impl Rng) -> Permutation {
    let n = pres.generator_count();
    let len = 4 * n + 10;
    let word: Vec<Letter> = (0..len)
        .map(|_| Letter {
            gen: rng.gen_range(0..n),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    pres.evaluate(&word)
}

/// Checks normalization and the cocycle identity on `trials` random triples.
pub fn check_cocycle(c: &dyn Cocycle2, rng: &mut impl Rng, trials: usize) -> Result<()> {
    let pres = c.module().presentation().clone();
    let id = Permutation::identity(pres.degree());
    for _ in 0..trials {
        let g = random_element(&pres, rng);
        let h = random_element(&pres, rng);
        let x = random_element(&pres, rng);
        if !c.eval(&id, &g)?.is_zero() || !c.eval(&g, &id)?.is_zero() {
            return Err(Error::check("cocycle", format!("not normalized at {g}")));
        }
        if !identity_defect(c, &g, &h, &x)?.is_zero() {
            return Err(Error::check("cocycle", format!("identity fails at ({g}, {h}, {x})")));
        }
    }
    Ok(())
}

pub struct ZeroCocycle {
    module: GModule,
}

impl ZeroCocycle {
    pub fn new(module: GModule) -> Self {
        ZeroCocycle { module }
    }
}

impl Cocycle2 for ZeroCocycle {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Zero
    }

    fn eval(&self, _: &Permutation, _: &Permutation) -> Result<VectorGF> {
        Ok(self.module.zero())
    }
}

/// Pointwise sum of cocycles with the same coefficient module.
pub struct SumCocycle {
    parts: Vec<SharedCocycle>,
}

impl SumCocycle {
    pub fn new(parts: Vec<SharedCocycle>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("empty cocycle sum".into()))?;
        if parts.iter().any(|p| p.module().dim() != first.module().dim()) {
            return Err(Error::DimensionMismatch("cocycles with different modules".into()));
        }
        Ok(SumCocycle { parts })
    }
}

impl Cocycle2 for SumCocycle {
    fn module(&self) -> &GModule {
        self.parts[0].module()
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Sum
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        let mut acc = self.parts[0].eval(g, h)?;
        for p in &self.parts[1..] {
            acc.add_assign(&p.eval(g, h)?);
        }
        Ok(acc)
    }
}

/// The coboundary `(dc)(g,h) = c(g)·h + c(h) - c(gh)` of a pseudo-random
/// normalized cochain `c` determined by a seed.
pub struct RandomCoboundary {
    module: GModule,
    seed: u64,
}

impl RandomCoboundary {
    pub fn new(module: GModule, seed: u64) -> Self {
        RandomCoboundary { module, seed }
    }

    pub fn cochain(&self, g: &Permutation) -> VectorGF {
        if g.is_identity() {
            return self.module.zero();
        }
        let mut hasher = DefaultHasher::new();
        self.seed.hash(&mut hasher);
        g.hash(&mut hasher);
        let mut rng = ChaCha8Rng::seed_from_u64(hasher.finish());
        let p = self.module.field().p();
        let xs: Vec<u8> = (0..self.module.dim()).map(|_| rng.gen_range(0..p)).collect();
        VectorGF::from_elems(self.module.field(), &xs)
    }
}

impl Cocycle2 for RandomCoboundary {
    fn module(&self) -> &GModule {
        &self.module
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Coboundary
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        let mut v = self.module.act(&self.cochain(g), h)?;
        v.add_assign(&self.cochain(h));
        v.sub_assign(&self.cochain(&g.then(h)));
        Ok(v)
    }
}

/// A cocycle followed by a module map `v ↦ v·A` into another module.
pub struct MappedCocycle {
    inner: SharedCocycle,
    target: GModule,
    map: Arc<dyn Fn(&VectorGF) -> VectorGF + Send + Sync>,
}

impl MappedCocycle {
    pub fn new(inner: SharedCocycle, target: GModule, map: Arc<dyn Fn(&VectorGF) -> VectorGF + Send + Sync>) -> Self {
        MappedCocycle { inner, target, map }
    }
}

impl Cocycle2 for MappedCocycle {
    fn module(&self) -> &GModule {
        &self.target
    }

    fn kind(&self) -> CocycleKind {
        CocycleKind::Projected
    }

    fn eval(&self, g: &Permutation, h: &Permutation) -> Result<VectorGF> {
        Ok((self.map)(&self.inner.eval(g, h)?))
    }
}

/// Cocycle values on a list of element pairs, as `(g, h, value)` text triples.
pub fn dump_values(c: &dyn Cocycle2, pairs: &[(Permutation, Permutation)]) -> Result<Vec<(String, String, String)>> {
    pairs
        .iter()
        .map(|(g, h)| {
            Ok((
                g.to_cycle_string(),
                h.to_cycle_string(),
                c.eval(g, h)?.to_digit_string(),
            ))
        })
        .collect()
}
