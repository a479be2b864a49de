//! Partial multiplication tables, bounded embedding search, bounded wrap
//! search, and the tighten/accurate-product machinery.

mod embed;
mod table;
mod wrap;

pub use embed::{
    embed_into, embed_search, free_truncation_witness, verify_embedding, EmbedTarget,
    EmbeddingWitness, SearchBounds, SearchOutcome, SearchSpace,
};
pub use table::{CongruenceCaps, PartialAssociativity, PartialTable};
pub use wrap::{accurate_set, tighten, wrap_search, wrap_verify, WrapInstance, WrapLabel};
