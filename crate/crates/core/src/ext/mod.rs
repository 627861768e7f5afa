//! The extension group `H = M ×_δ G`, its pair-stabilizer coset actions and
//! the nonsplit and faithfulness certificates.

mod certify;
mod coset;
mod group;
mod restrict;

pub use certify::{nonsplit_certificate, order_four_sweep, NonsplitCertificate, Order4Sweep, SweepMethod};
pub use coset::{
    coset_action, faithfulness_certificate, kernel_on_points, splitting_over, CosetAction, CosetSpace,
    FaithfulCertificate, OrderCheck, StabilizerSection, SubgroupKind,
};
pub use group::{ExtElement, ExtGroup};
pub use restrict::{module_vector_image, restrict_to_subextension, OrbitRecord, Restriction};
