use std::collections::HashMap;

use super::Cocycle2;
use crate::error::{Error, Result};
use crate::gf::{MatrixGF, VectorGF};
use crate::perm::Permutation;

/// All elements of the module's group, identity first, by breadth-first search.
pub fn enumerate_elements(gens: &[Permutation], degree: usize, cap: usize) -> Result<Vec<Permutation>> {
    let mut elems = vec![Permutation::identity(degree)];
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for s in gens {
            let x = elems[i].then(s);
            if !seen.contains_key(&x) {
                if elems.len() >= cap {
                    return Err(Error::Budget(format!("group has more than {cap} elements")));
                }
                seen.insert(x.clone(), elems.len());
                elems.push(x);
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// Decides whether `δ` is a coboundary from its full value table: solves
/// `c(g)·h + c(h) - c(gh) = δ(g,h)` over all pairs, with one unknown vector per
/// non-identity element. Independent of any presentation.
pub fn table_coboundary_test(delta: &dyn Cocycle2, cap: usize) -> Result<bool> {
    let module = delta.module();
    let field = module.field();
    let d = module.dim();
    let pres = module.presentation();
    let elems = enumerate_elements(pres.realization(), pres.degree(), cap)?;
    let n = elems.len();
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mats = elems
        .iter()
        .map(|g| module.element_matrix(g))
        .collect::<Result<Vec<_>>>()?;
    // unknown c(g_i) occupies rows (i-1)·d .. i·d; c(1) = 0
    let rows = (n - 1) * d;
    let cols = n * n * d;
    let mut a = MatrixGF::zeros(field, rows, cols);
    let mut rhs = VectorGF::zeros(field, cols);
    for (gi, g) in elems.iter().enumerate() {
        for (hi, h) in elems.iter().enumerate() {
            let col = (gi * n + hi) * d;
            let ghi = index[&g.then(h)];
            let val = delta.eval(g, h)?;
            for j in 0..d {
                rhs.set(col + j, val.get(j));
            }
            let mut add = |unk: usize, m: &MatrixGF, scale: u8| {
                if unk == 0 {
                    return;
                }
                for r in 0..d {
                    for c in m.row(r).support() {
                        let (i, j) = ((unk - 1) * d + r, col + c);
                        let x = field.add(a.get(i, j), field.mul(m.get(r, c), scale));
                        a.set(i, j, x);
                    }
                }
            };
            add(gi, &mats[hi], 1);
            add(hi, &MatrixGF::identity(field, d), 1);
            add(ghi, &MatrixGF::identity(field, d), field.neg(1));
        }
    }
    Ok(a.solve_left(&rhs)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::SpinCocycle;

    #[test]
    fn s4_has_24_elements() {
        let spin = SpinCocycle::on_symmetric(4).unwrap();
        let p = spin.module().presentation();
        assert_eq!(enumerate_elements(p.realization(), 4, 100).unwrap().len(), 24);
        assert!(enumerate_elements(p.realization(), 4, 10).is_err());
    }
}
