//! Desk-scale workbench for local embeddability of semigroups into finite
//! semigroups: exhaustive enumeration of small semigroups, string rewriting
//! with confluence analysis, partial multiplication tables with bounded
//! embedding and wrap search, executable finite-semigroup laws, and the
//! inverse-semigroup toolchain (Wagner-Preston, partial-bijection lifts,
//! wrap lemma checks).
//!
//! Searches over infinite families are semi-decisions by construction: a
//! `Witness` is re-verifiable, an `Exhausted` outcome certifies only the
//! traversed bounds, and nothing here proves a negative beyond them.

pub mod error;
pub mod finite;
pub mod inverse;
pub mod obstructions;
pub mod partial;
pub mod rewriting;

pub use error::{Error, Result};
