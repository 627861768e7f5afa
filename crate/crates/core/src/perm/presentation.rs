use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverted()).collect()
}

/// Formats a word as `g1 g2^-1 ...` (1-based generator indices); the empty word is `1`.
pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|l| {
            if l.inverse {
                format!("g{}^-1", l.gen + 1)
            } else {
                format!("g{}", l.gen + 1)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_word(s: &str) -> Result<Word> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|tok| {
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx: usize = body
                .strip_prefix('g')
                .and_then(|d| d.parse().ok())
                .filter(|&i: &usize| i >= 1)
                .ok_or_else(|| Error::Parse(format!("bad word letter {tok:?}")))?;
            Ok(Letter { gen: idx - 1, inverse })
        })
        .collect()
}

/// The two registered presentation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// `A_n` on generators `t_i = (a_1, a_2, a_i)`, relators `t_i^3`, `(t_i t_j)^2`.
    AlternatingCarmichael,
    /// `S_n` on adjacent transpositions with the Coxeter relators.
    SymmetricCoxeter,
}

/// A finite presentation realized by concrete permutations.
///
/// The abstract group acts on the ordered list `points` of an ambient set of
/// size `degree`. For the symmetric family an optional `twist` transposition is
/// multiplied onto every generator, realizing `S_n` evenly inside a larger
/// alternating group (the setwise stabilizer of a pair).
#[derive(Clone, Debug)]
pub struct Presentation {
    kind: GroupKind,
    degree: usize,
    points: Vec<usize>,
    twist: Option<(usize, usize)>,
    relators: Vec<Word>,
    realization: Vec<Permutation>,
}

impl Presentation {
    /// Carmichael presentation of the alternating group on `points`.
    pub fn alternating(degree: usize, points: Vec<usize>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::InvalidInput("alternating presentation needs 3 points".into()));
        }
        let realization = (2..n)
            .map(|i| Permutation::from_cycles(degree, &[&[points[0], points[1], points[i]]]))
            .collect::<Result<Vec<_>>>()?;
        let r = n - 2;
        let mut relators = Vec::new();
        for i in 0..r {
            relators.push(vec![Letter::new(i); 3]);
        }
        for i in 0..r {
            for j in i + 1..r {
                relators.push([Letter::new(i), Letter::new(j)].repeat(2));
            }
        }
        Ok(Presentation {
            kind: GroupKind::AlternatingCarmichael,
            degree,
            points,
            twist: None,
            relators,
            realization,
        })
    }

    /// Coxeter presentation of the symmetric group on `points`, optionally twisted.
    pub fn symmetric(degree: usize, points: Vec<usize>, twist: Option<(usize, usize)>) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(Error::InvalidInput("symmetric presentation needs 2 points".into()));
        }
        if let Some((a, b)) = twist {
            if a == b || points.contains(&a) || points.contains(&b) || a >= degree || b >= degree {
                return Err(Error::InvalidInput(
                    "twist must swap two points outside the support".into(),
                ));
            }
        }
        let realization = (0..n - 1)
            .map(|i| {
                let adj = [points[i], points[i + 1]];
                match twist {
                    Some((a, b)) => Permutation::from_cycles(degree, &[&adj, &[a, b]]),
                    None => Permutation::from_cycles(degree, &[&adj]),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let r = n - 1;
        let mut relators = Vec::new();
        for i in 0..r {
            relators.push(vec![Letter::new(i); 2]);
        }
        for i in 0..r.saturating_sub(1) {
            relators.push([Letter::new(i), Letter::new(i + 1)].repeat(3));
        }
        for i in 0..r {
            for j in i + 2..r {
                relators.push([Letter::new(i), Letter::new(j)].repeat(2));
            }
        }
        Ok(Presentation {
            kind: GroupKind::SymmetricCoxeter,
            degree,
            points,
            twist,
            relators,
            realization,
        })
    }

    /// The standard presentation of `A_n` or `S_n` on `n` points.
    pub fn of(kind: GroupKind, n: usize) -> Result<Self> {
        match kind {
            GroupKind::AlternatingCarmichael => Self::alternating(n, (0..n).collect()),
            GroupKind::SymmetricCoxeter => Self::symmetric(n, (0..n).collect(), None),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// The transposition multiplied onto every generator of a twisted symmetric presentation.
    pub fn twist(&self) -> Option<(usize, usize)> {
        self.twist
    }

    pub fn generator_count(&self) -> usize {
        self.realization.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn realization(&self) -> &[Permutation] {
        &self.realization
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.realization.clone()).expect("consistent degrees")
    }

    /// Order of the abstract group, `n!/2` or `n!`.
    pub fn expected_order(&self) -> num_bigint::BigUint {
        let fact = (1..=self.points.len() as u64).fold(num_bigint::BigUint::from(1u32), |a, b| a * b);
        match self.kind {
            GroupKind::AlternatingCarmichael => fact / 2u32,
            GroupKind::SymmetricCoxeter => fact,
        }
    }

    pub fn evaluate(&self, word: &[Letter]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for l in word {
            let g = &self.realization[l.gen];
            acc = if l.inverse { acc.then(&g.inverse()) } else { acc.then(g) };
        }
        acc
    }

    /// True when every relator evaluates to the identity.
    pub fn relators_hold(&self) -> bool {
        self.relators.iter().all(|r| self.evaluate(r).is_identity())
    }

    fn not_in_group(&self, g: &Permutation) -> Error {
        Error::NotInGroup {
            element: g.to_cycle_string(),
            group: format!("{:?} on {} points", self.kind, self.points.len()),
        }
    }

    /// A word in the generators evaluating to `g`.
    pub fn factor_word(&self, g: &Permutation) -> Result<Word> {
        if g.degree() != self.degree {
            return Err(self.not_in_group(g));
        }
        let word = match self.kind {
            GroupKind::SymmetricCoxeter => self.factor_symmetric(g)?,
            GroupKind::AlternatingCarmichael => self.factor_alternating(g)?,
        };
        if self.evaluate(&word) != *g {
            return Err(self.not_in_group(g));
        }
        Ok(word)
    }

    fn factor_symmetric(&self, g: &Permutation) -> Result<Word> {
        let sigma = g.restrict(&self.points).ok_or_else(|| self.not_in_group(g))?;
        // insertion sort on positions; each swap (j, j+1) left-multiplies by s_j
        let mut arr = sigma.images();
        let mut word = Vec::new();
        for i in 1..arr.len() {
            let mut j = i;
            while j > 0 && arr[j - 1] > arr[j] {
                arr.swap(j - 1, j);
                word.push(Letter::new(j - 1));
                j -= 1;
            }
        }
        Ok(word)
    }

    fn factor_alternating(&self, g: &Permutation) -> Result<Word> {
        let n = self.points.len();
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in self.points.iter().enumerate() {
            index[p] = i;
        }
        let mut h = g.clone();
        let mut pieces: Vec<Word> = Vec::new();
        for i in (2..n).rev() {
            let b = index[h.apply(self.points[i])];
            if b == usize::MAX {
                return Err(self.not_in_group(g));
            }
            let gi = i - 2;
            let z: Word = match b {
                _ if b == i => continue,
                0 => vec![Letter::inv(gi)],
                1 => vec![Letter::new(gi)],
                _ if b < i => vec![Letter::new(b - 2), Letter::inv(gi)],
                _ => return Err(self.not_in_group(g)),
            };
            for l in &z {
                let t = &self.realization[l.gen];
                h = if l.inverse { h.then(&t.inverse()) } else { h.then(t) };
            }
            pieces.push(z);
        }
        // g · z_{n-1} ··· z_2 = 1
        let forward: Word = pieces.into_iter().flatten().collect();
        Ok(invert_word(&forward))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} on {} points: {} generators, {} relators",
            self.kind,
            self.points.len(),
            self.generator_count(),
            self.relators.len()
        )
    }
}
