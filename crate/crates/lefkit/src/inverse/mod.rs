//! Symmetric inverse monoids, the right-translation representation into
//! partial bijections, symmetrisation of subsets, the restriction lift from
//! transformations to partial bijections, and the wrap lemma checks that
//! feed the power-semigroup embedding construction.

mod lift;
mod pb;
mod structure;
mod symmetrise;
mod wagner;
mod wrap_lemmas;

pub use lift::{ilef_lift, k_cubed, regular_rep_map, LiftReport};
pub use pb::{
    all_partial_bijections, pb_closure, pb_semigroup, symmetric_inverse_monoid, PartialBijection,
};
pub use structure::{classify_inverse, inverse_structure, InverseCheck, InverseTable};
pub use symmetrise::{
    is_symmetrised, symmetrise, symmetrise_closure, InverseAmbient, PbUniverse,
};
pub use wagner::{wagner_preston, WagnerPrestonReport};
pub use wrap_lemmas::{
    check_hmin_lemmas, check_wrap_inverse_compat, h_minimal, ilef_from_wrap, HMinimal, HminReport,
    InverseCompatReport, PowerEmbedding, PowerEmbeddingReport,
};
