use serde::{Deserialize, Serialize};

use super::{concat_cochain, fox_matrix, split_cochain, Cocycle2};
use crate::error::Result;
use crate::gf::VectorGF;
use crate::perm::{Letter, Permutation};

/// The `M`-component of each relator evaluated in the extension on the
/// lifts `(0, s_i)` of the generators.
pub fn relator_tails(delta: &dyn Cocycle2) -> Result<Vec<VectorGF>> {
    let module = delta.module();
    let pres = module.presentation().clone();
    let n = pres.degree();
    let gens = pres.realization();
    // (0,s)^{-1} = (-δ(s,s^{-1}), s^{-1})
    let inv_parts = gens
        .iter()
        .map(|s| Ok(delta.eval(s, &s.inverse())?.neg()))
        .collect::<Result<Vec<_>>>()?;
    pres.relators()
        .iter()
        .map(|rel| {
            let mut m = module.zero();
            let mut g = Permutation::identity(n);
            for &l in rel {
                let (s, base) = if l.inverse {
                    (gens[l.gen].inverse(), inv_parts[l.gen].clone())
                } else {
                    (gens[l.gen].clone(), module.zero())
                };
                // (m, g)(base, s) = (m·s + base + δ(g, s), g s)
                let mut next = module.act_letter(&m, l);
                next.add_assign(&base);
                next.add_assign(&delta.eval(&g, &s)?);
                m = next;
                g = g.then(&s);
            }
            debug_assert!(g.is_identity());
            Ok(m)
        })
        .collect()
}

/// Outcome of the complement system for one cocycle.
#[derive(Clone, Debug)]
pub struct ComplementSystem {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub tails: Vec<VectorGF>,
    /// Generator values `c_i` making every relator tail vanish, if any.
    pub solution: Option<Vec<VectorGF>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub feasible: bool,
}

impl ComplementSystem {
    pub fn is_feasible(&self) -> bool {
        self.solution.is_some()
    }

    pub fn record(&self) -> SystemRecord {
        SystemRecord {
            unknowns: self.unknowns,
            equations: self.equations,
            rank: self.rank,
            feasible: self.is_feasible(),
        }
    }
}

/// Solves for a generator cochain `c` with `tail_r + (c·F)_r = 0` for every
/// relator `r`. A solution exists iff `δ` is a coboundary, i.e. iff the
/// extension splits; the lifts `(c_i, s_i)` then generate a complement.
pub fn coboundary_test(delta: &dyn Cocycle2) -> Result<ComplementSystem> {
    let module = delta.module();
    let d = module.dim();
    let tails = relator_tails(delta)?;
    let f = fox_matrix(module);
    let rhs = concat_cochain(&tails).neg();
    let solution = f.solve_left(&rhs)?.map(|x| split_cochain(&x, d));
    Ok(ComplementSystem {
        unknowns: f.nrows(),
        equations: f.ncols(),
        rank: f.rank(),
        tails,
        solution,
    })
}

/// Re-evaluates the relators with lifts `(c_i, s_i)`; all zero iff `c` defines a complement.
pub fn tails_with_section(delta: &dyn Cocycle2, c: &[VectorGF]) -> Result<Vec<VectorGF>> {
    let module = delta.module();
    let tails = relator_tails(delta)?;
    let f = fox_matrix(module);
    let shift = f.vec_mul(&concat_cochain(c));
    let d = module.dim();
    Ok(tails
        .iter()
        .enumerate()
        .map(|(r, t)| t.sum(&shift.slice(r * d, (r + 1) * d)))
        .collect())
}

/// The lift of a word under generator values `c`: the `M`-part of
/// `prod (c_i, s_i)^{±1}` in the extension.
pub fn lift_word(delta: &dyn Cocycle2, c: &[VectorGF], word: &[Letter]) -> Result<(VectorGF, Permutation)> {
    let module = delta.module();
    let pres = module.presentation();
    let gens = pres.realization();
    let mut m = module.zero();
    let mut g = Permutation::identity(pres.degree());
    for &l in word {
        let s = &gens[l.gen];
        let (part, elt) = if l.inverse {
            // (c,s)^{-1} = (-c·s^{-1} - δ(s,s^{-1}), s^{-1})
            let si = s.inverse();
            let mut v = module.action_inverse()[l.gen].vec_mul(&c[l.gen]).neg();
            v.sub_assign(&delta.eval(s, &si)?);
            (v, si)
        } else {
            (c[l.gen].clone(), s.clone())
        };
        let mut next = module.act_letter(&m, l);
        next.add_assign(&part);
        next.add_assign(&delta.eval(&g, &elt)?);
        m = next;
        g = g.then(&elt);
    }
    Ok((m, g))
}
