use rand::Rng;
use serde::{Deserialize, Serialize};

use super::even::{induced_class, lemma_elements, lemma_inner_products, select_class, ClassSelection};
use crate::cohom::{random_element, SharedCocycle};
use crate::error::{Error, Result};
use crate::gf::VectorGF;
use crate::gmod::{pair_permutation_module, PairModule};
use crate::perm::{alternating_presentation, Pairs};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaReport {
    /// The seven subsets, 1-based.
    pub subsets: Vec<Vec<usize>>,
    /// `u = Σ u(Ω_i)` coordinatewise.
    pub covering_holds: bool,
    /// `((δ(g₁,g₁), u(Ω_i)), (δ(g₂,g₂), u(Ω_i)))` for each subset.
    pub inner_products: Vec<[u8; 2]>,
    pub all_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub k_small: usize,
    /// Coordinates on pairs inside `{1..k-4}` compared at `(g_s, g_s)`.
    pub coordinates_compared: usize,
    /// Further random pairs of elements fixing the last four points.
    pub random_pairs: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub k: usize,
    pub selection: ClassSelection,
    pub inner_products: [u8; 2],
    pub omega: Option<OmegaReport>,
    pub projection: Option<ProjectionReport>,
    pub holds: bool,
}

/// The subsets `Ω_0..Ω_6` of `{1..k}` (0-based here).
pub fn omega_subsets(k: usize) -> Vec<Vec<usize>> {
    let d: Vec<usize> = (0..k - 8).collect();
    // 1-based k-7..k become 0-based k-8..k-1
    let blocks: [[usize; 4]; 6] = [
        [k - 8, k - 7, k - 6, k - 5],
        [k - 4, k - 3, k - 2, k - 1],
        [k - 8, k - 7, k - 4, k - 3],
        [k - 6, k - 5, k - 4, k - 3],
        [k - 8, k - 7, k - 2, k - 1],
        [k - 6, k - 5, k - 2, k - 1],
    ];
    let mut out: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| d.iter().chain(b.iter()).copied().collect())
        .collect();
    out.push(d);
    out
}

/// `u(Ω) = Σ e_rs` over pairs `r < s` in `Ω` with `r, s ∉ {1, 2}`.
pub fn u_of(pm: &PairModule, omega: &[usize]) -> VectorGF {
    let mut v = VectorGF::zeros(pm.module.field(), pm.module.dim());
    for &r in omega.iter().filter(|&&r| r >= 2) {
        for &s in omega.iter().filter(|&&s| s > r) {
            v.set(pm.pairs.index(r, s), 1);
        }
    }
    v
}

pub fn omega_report(pm: &PairModule, delta: &SharedCocycle) -> Result<OmegaReport> {
    let k = pm.pairs.k();
    let subsets = omega_subsets(k);
    let mut total = VectorGF::zeros(pm.module.field(), pm.module.dim());
    let mut inner_products = Vec::new();
    for s in &subsets {
        let u = u_of(pm, s);
        total.add_assign(&u);
        inner_products.push(lemma_inner_products(delta, &u)?);
    }
    Ok(OmegaReport {
        subsets: subsets.iter().map(|s| s.iter().map(|x| x + 1).collect()).collect(),
        covering_holds: total == pm.u,
        all_match: inner_products.iter().all(|ip| *ip == [1, 0]),
        inner_products,
    })
}

/// Compares `δ` at `k` on the coordinates of pairs inside `{1..k-4}` with the
/// same class induced at `k - 4`, at `(g_s, g_s)` and at random pairs of
/// elements of `A_{k-4}`.
pub fn projection_report(
    pm: &PairModule,
    delta: &SharedCocycle,
    class: &str,
    random_pairs: usize,
    rng: &mut impl Rng,
) -> Result<ProjectionReport> {
    let k = pm.pairs.k();
    let ks = k - 4;
    let small = pair_permutation_module(ks, 2)?;
    let delta_small = induced_class(&small, class)?;
    let small_pairs = Pairs::new(ks);
    let (g1, g2) = lemma_elements(k)?;
    let (s1, s2) = lemma_elements(ks)?;
    let mut tests = vec![(g1.clone(), g1, s1.clone(), s1), (g2.clone(), g2, s2.clone(), s2)];
    let small_pres = alternating_presentation(ks)?;
    for _ in 0..random_pairs {
        let (a, b) = (random_element(&small_pres, rng), random_element(&small_pres, rng));
        tests.push((a.extend(k), b.extend(k), a, b));
    }
    let mut compared = 0;
    let mut matches = true;
    for (g, h, gs, hs) in &tests {
        let big = delta.eval(g, h)?;
        let little = delta_small.eval(gs, hs)?;
        for (t, (a, b)) in small_pairs.iter().enumerate() {
            matches &= big.get(pm.pairs.index(a, b)) == little.get(t);
        }
        compared += small_pairs.len();
    }
    Ok(ProjectionReport {
        k_small: ks,
        coordinates_compared: compared,
        random_pairs,
        matches,
    })
}

/// The cocycle lemma at `k ≡ 3 (mod 4)`. The complement systems on `P₃` are
/// solved when `k ≤ reduced_limit`; above it the first candidate class is used.
pub fn verify_cocycle_lemma(k: usize, reduced_limit: usize, rng: &mut impl Rng) -> Result<LemmaReport> {
    if k % 4 != 3 || k < 7 {
        return Err(Error::InvalidInput(format!(
            "cocycle lemma needs k = 3 mod 4 and k >= 7, got {k}"
        )));
    }
    let pm = pair_permutation_module(k, 2)?;
    let selection = select_class(&pm, k <= reduced_limit)?;
    let delta = induced_class(&pm, &selection.selected)?;
    let inner_products = lemma_inner_products(&delta, &pm.u)?;
    let (omega, projection) = if k >= 15 {
        (
            Some(omega_report(&pm, &delta)?),
            Some(projection_report(&pm, &delta, &selection.selected, 20, rng)?),
        )
    } else {
        (None, None)
    };
    let holds = inner_products == [1, 0]
        && omega.as_ref().is_none_or(|o| o.covering_holds && o.all_match)
        && projection.as_ref().is_none_or(|p| p.matches);
    Ok(LemmaReport {
        k,
        selection,
        inner_products,
        omega,
        projection,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_subsets_at_15() {
        let s = omega_subsets(15);
        assert_eq!(s.len(), 7);
        assert_eq!(s[6], (0..7).collect::<Vec<_>>());
        assert_eq!(&s[0][7..], &[7, 8, 9, 10]);
        let pm = pair_permutation_module(15, 2).unwrap();
        let total = s
            .iter()
            .fold(VectorGF::zeros(pm.module.field(), pm.module.dim()), |acc, o| {
                acc.sum(&u_of(&pm, o))
            });
        assert_eq!(total, pm.u);
    }
}
