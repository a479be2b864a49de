//! Words, string-rewriting systems, confluence analysis, and normal-form
//! arithmetic for the presented semigroups.

mod anf;
mod bicyclic;
pub mod presentations;
mod system;
mod word;

pub use anf::{a_idempotent_scan, a_nf, eta, wa_shape_check, ANormalForm};
pub use bicyclic::{bicyclic_mul, bicyclic_nf, BicyclicNF};
pub use system::{
    congruence_search, critical_pairs, generate_orbit, is_locally_confluent, CongruenceOutcome,
    CriticalPair, PresentationKind, RewritingSystem, Rule,
};
pub use word::Word;
