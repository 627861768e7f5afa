//! Modules for permutation groups over GF(p) and their structure.

mod builders;
mod hom;
mod module;
mod structure;

pub use builders::{
    natural_module, pair_permutation_module, pair_permutation_module_for, sign_induced_module, standard_module_l,
    sum_zero_module, PairModule,
};
pub use hom::{hom_dimension, hom_space, ModuleMap};
pub use module::GModule;
pub use structure::{
    analyze, annihilator, are_isomorphic_irreducibles, composition_factors, distinct_factors, fixed_points, g_core,
    is_indecomposable, radical, socle, spin, spin_with, split, Factor, IrreducibilityCertificate, Socle, Split,
    StructureReport,
};
