use super::{PermGroup, Permutation, Presentation};
use crate::error::{Error, Result};

fn check_degree(k: usize) -> Result<()> {
    if k < 5 {
        return Err(Error::InvalidInput(format!("need k >= 5, got {k}")));
    }
    Ok(())
}

/// `A_k` on the Carmichael generators `(1 2 i)`.
pub fn alternating_presentation(k: usize) -> Result<Presentation> {
    check_degree(k)?;
    Presentation::alternating(k, (0..k).collect())
}

/// The setwise stabilizer `Y ≅ S_{k-2}` of `{1, 2}` in `A_k`: Coxeter
/// generators on `3..k`, each multiplied by `(1 2)`.
pub fn young_pair_presentation(k: usize) -> Result<Presentation> {
    check_degree(k)?;
    Presentation::symmetric(k, (2..k).collect(), Some((0, 1)))
}

/// The pointwise stabilizer `X ≅ A_{k-2}` of 1 and 2.
pub fn pointwise_pair_presentation(k: usize) -> Result<Presentation> {
    check_degree(k)?;
    Presentation::alternating(k, (2..k).collect())
}

pub fn alternating_group(k: usize) -> Result<PermGroup> {
    Ok(alternating_presentation(k)?.group())
}

pub fn young_pair_stabilizer(k: usize) -> Result<PermGroup> {
    Ok(young_pair_presentation(k)?.group())
}

pub fn pointwise_pair_stabilizer(k: usize) -> Result<PermGroup> {
    Ok(pointwise_pair_presentation(k)?.group())
}

/// Unordered pairs `{i, j}`, `i < j`, of `0..k` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pairs {
    k: usize,
    list: Vec<(usize, usize)>,
}

impl Pairs {
    pub fn new(k: usize) -> Self {
        let list = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        Pairs { k, list }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.list[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.list.iter().copied()
    }

    /// Index of `{a, b}` in either order.
    pub fn index(&self, a: usize, b: usize) -> usize {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        debug_assert!(i != j && j < self.k);
        i * (2 * self.k - i - 1) / 2 + (j - i - 1)
    }

    /// Image of pair `idx` under `g`.
    pub fn image(&self, idx: usize, g: &Permutation) -> usize {
        let (i, j) = self.list[idx];
        self.index(g.apply(i), g.apply(j))
    }

    /// The permutation induced by `g` on pair indices.
    pub fn action(&self, g: &Permutation) -> Permutation {
        Permutation::from_images((0..self.len()).map(|t| self.image(t, g)).collect())
            .expect("pair action is a bijection")
    }

    /// 1-based label such as `{3,5}`.
    pub fn label(&self, idx: usize) -> String {
        let (i, j) = self.list[idx];
        format!("{{{},{}}}", i + 1, j + 1)
    }
}

/// Representatives `g_t` of the right cosets of `Y` in `A_k`, indexed like [`Pairs`],
/// with `{1,2}·g_t = t`.
///
/// In 1-based labels: `g_12 = 1`, `g_1j = (2 1 j)`, `g_2j = (1 2 j)` and
/// `g_ij = (1 i)(2 j)` for `2 < i < j`.
pub fn pair_coset_reps(k: usize) -> Result<Vec<Permutation>> {
    check_degree(k)?;
    Pairs::new(k)
        .iter()
        .map(|(i, j)| match (i, j) {
            (0, 1) => Ok(Permutation::identity(k)),
            (0, j) => Permutation::from_cycles(k, &[&[1, 0, j]]),
            (1, j) => Permutation::from_cycles(k, &[&[0, 1, j]]),
            (i, j) => Permutation::from_cycles(k, &[&[0, i], &[1, j]]),
        })
        .collect()
}

/// Looks up `g_ij` for a 1-based pair.
pub fn pair_coset_rep(k: usize, i: usize, j: usize) -> Result<Permutation> {
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(Error::InvalidInput(format!("{{{i},{j}}} is not a pair in 1..{k}")));
    }
    let reps = pair_coset_reps(k)?;
    Ok(reps[Pairs::new(k).index(i - 1, j - 1)].clone())
}

/// Ordered pairs `(a, b)`, `a ≠ b`, of `0..k`, indexed as `2·{a,b} + [a > b]`.
#[derive(Clone, Debug)]
pub struct OrderedPairs {
    pairs: Pairs,
}

impl OrderedPairs {
    pub fn new(k: usize) -> Self {
        OrderedPairs { pairs: Pairs::new(k) }
    }

    pub fn len(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &Pairs {
        &self.pairs
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        2 * self.pairs.index(a, b) + (a > b) as usize
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        let (i, j) = self.pairs.pair(idx / 2);
        if idx.is_multiple_of(2) {
            (i, j)
        } else {
            (j, i)
        }
    }

    pub fn image(&self, idx: usize, g: &Permutation) -> usize {
        let (a, b) = self.pair(idx);
        self.index(g.apply(a), g.apply(b))
    }

    pub fn label(&self, idx: usize) -> String {
        let (a, b) = self.pair(idx);
        format!("({},{})", a + 1, b + 1)
    }
}

/// Representatives `h_(a,b)` of the right cosets of `X` in `A_k`, indexed like
/// [`OrderedPairs`], with `1·h = a`, `2·h = b`. Each is `g_ij` or `w·g_ij`
/// with `w = (1 2)(3 4)` applied first.
pub fn ordered_pair_coset_reps(k: usize) -> Result<Vec<Permutation>> {
    let reps = pair_coset_reps(k)?;
    let w = Permutation::from_cycles(k, &[&[0, 1], &[2, 3]])?;
    let op = OrderedPairs::new(k);
    let mut out = vec![Permutation::identity(k); op.len()];
    for g in reps {
        let wg = w.then(&g);
        let (t, s) = (op.index(g.apply(0), g.apply(1)), op.index(wg.apply(0), wg.apply(1)));
        out[t] = g;
        out[s] = wg;
    }
    Ok(out)
}

/// Right-coset transversal of `Y` (unordered pairs) or `X` (ordered pairs) in
/// `A_k`, labelled by the image of `(1, 2)`.
#[derive(Clone, Debug)]
pub struct PairTransversal {
    ordered: bool,
    pairs: Pairs,
    reps: Vec<Permutation>,
    inverses: Vec<Permutation>,
}

impl PairTransversal {
    pub fn unordered(k: usize) -> Result<Self> {
        Ok(Self::from_reps(false, k, pair_coset_reps(k)?))
    }

    pub fn ordered(k: usize) -> Result<Self> {
        Ok(Self::from_reps(true, k, ordered_pair_coset_reps(k)?))
    }

    fn from_reps(ordered: bool, k: usize, reps: Vec<Permutation>) -> Self {
        let inverses = reps.iter().map(|g| g.inverse()).collect();
        PairTransversal {
            ordered,
            pairs: Pairs::new(k),
            reps,
            inverses,
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn rep(&self, t: usize) -> &Permutation {
        &self.reps[t]
    }

    /// Label of the coset containing `g`.
    pub fn label_of(&self, g: &Permutation) -> usize {
        let (a, b) = (g.apply(0), g.apply(1));
        if self.ordered {
            2 * self.pairs.index(a, b) + (a > b) as usize
        } else {
            self.pairs.index(a, b)
        }
    }

    /// Writes `g_t·g = y·g_s`; returns `(y, s)`.
    pub fn decompose(&self, t: usize, g: &Permutation) -> (Permutation, usize) {
        let tg = self.reps[t].then(g);
        let s = self.label_of(&tg);
        (tg.then(&self.inverses[s]), s)
    }

    pub fn label(&self, t: usize) -> String {
        if self.ordered {
            OrderedPairs {
                pairs: self.pairs.clone(),
            }
            .label(t)
        } else {
            self.pairs.label(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn small_degrees_rejected() {
        assert!(alternating_group(4).is_err());
        assert!(pair_coset_reps(3).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(alternating_group(5).unwrap().order(), BigUint::from(60u32));
        assert_eq!(young_pair_stabilizer(7).unwrap().order(), BigUint::from(120u32));
        assert_eq!(pointwise_pair_stabilizer(7).unwrap().order(), BigUint::from(60u32));
    }

    #[test]
    fn y_fixes_pair_setwise() {
        let y = young_pair_stabilizer(7).unwrap();
        assert_eq!(y.orbit(0).unwrap().points.len(), 2);
        assert!(y.orbit(0).unwrap().contains(1));
    }

    #[test]
    fn paper_reps() {
        assert_eq!(pair_coset_rep(7, 3, 5).unwrap().to_cycle_string(), "(1 3)(2 5)");
        assert!(pair_coset_rep(7, 1, 2).unwrap().is_identity());
        assert_eq!(pair_coset_rep(7, 1, 4).unwrap().to_cycle_string(), "(1 4 2)");
        assert!(pair_coset_rep(7, 2, 8).is_err());
    }

    #[test]
    fn reps_send_base_pair_to_label() {
        for k in 5..=9 {
            let pairs = Pairs::new(k);
            let reps = pair_coset_reps(k).unwrap();
            for (t, g) in reps.iter().enumerate() {
                assert!(g.is_even());
                assert_eq!(pairs.index(g.apply(0), g.apply(1)), t);
            }
        }
    }

    #[test]
    fn reps_lie_in_distinct_cosets() {
        let k = 7;
        let reps = pair_coset_reps(k).unwrap();
        for (a, ga) in reps.iter().enumerate() {
            for (b, gb) in reps.iter().enumerate() {
                let h = ga.then(&gb.inverse());
                let fixes = [h.apply(0), h.apply(1)].iter().all(|&x| x < 2);
                assert_eq!(fixes, a == b);
            }
        }
    }

    #[test]
    fn ordered_reps() {
        let k = 7;
        let op = OrderedPairs::new(k);
        let reps = ordered_pair_coset_reps(k).unwrap();
        for (t, h) in reps.iter().enumerate() {
            assert_eq!(op.pair(t), (h.apply(0), h.apply(1)));
            assert_eq!(op.index(h.apply(0), h.apply(1)), t);
            assert!(h.is_even());
        }
    }

    #[test]
    fn decomposition_lands_in_stabilizer() {
        let k = 7;
        let g = Permutation::parse_cycles(k, "(1 5 3)(2 4)(6 7)").unwrap();
        for tr in [
            PairTransversal::unordered(k).unwrap(),
            PairTransversal::ordered(k).unwrap(),
        ] {
            for t in 0..tr.len() {
                let (y, s) = tr.decompose(t, &g);
                if tr.is_ordered() {
                    assert_eq!((y.apply(0), y.apply(1)), (0, 1));
                } else {
                    assert!(y.apply(0) < 2 && y.apply(1) < 2);
                }
                assert_eq!(y.then(tr.rep(s)), tr.rep(t).then(&g));
            }
        }
    }

    #[test]
    fn pair_index_matches_listing() {
        let pairs = Pairs::new(9);
        for (t, (i, j)) in pairs.iter().enumerate() {
            assert_eq!(pairs.index(i, j), t);
            assert_eq!(pairs.index(j, i), t);
        }
        assert_eq!(pairs.label(pairs.index(2, 4)), "{3,5}");
    }
}
