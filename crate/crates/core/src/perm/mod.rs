//! Permutations, permutation groups and the registered presentations.

mod group;
mod pairs;
mod permutation;
mod presentation;
mod todd_coxeter;

pub use group::{Orbit, PermGroup, StabChain};
pub use pairs::{
    alternating_group, alternating_presentation, ordered_pair_coset_reps, pair_coset_rep, pair_coset_reps,
    pointwise_pair_presentation, pointwise_pair_stabilizer, young_pair_presentation, young_pair_stabilizer,
    OrderedPairs, PairTransversal, Pairs,
};
pub use permutation::Permutation;
pub use presentation::{invert_word, parse_word, word_to_string, GroupKind, Letter, Presentation, Word};
pub use todd_coxeter::todd_coxeter_order;
