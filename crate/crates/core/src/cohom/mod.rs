//! Explicit 2-cocycles, derivations and the complement linear system.

mod clifford;
mod cocycle;
mod complement;
mod derivation;
mod induced;
mod oracle;

pub use clifford::{clifford_lift, CliffordElement, SignCarryCocycle, SpinCocycle};
pub use cocycle::{
    check_cocycle, dump_values, identity_defect, random_element, Cocycle2, CocycleKind, MappedCocycle,
    RandomCoboundary, SharedCocycle, SumCocycle, ZeroCocycle,
};
pub use complement::{coboundary_test, lift_word, relator_tails, tails_with_section, ComplementSystem, SystemRecord};
pub use derivation::{
    concat_cochain, derivation_space, fox_matrix, split_cochain, ConnectingCocycle, Derivation, DerivationSpace,
};
pub use induced::InducedCocycle;
pub use oracle::{enumerate_elements, table_coboundary_test};
