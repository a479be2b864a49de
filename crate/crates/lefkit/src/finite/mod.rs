//! Finite semigroups as concrete tables and transformation semigroups:
//! associativity checking, exhaustive enumeration, index/period arithmetic,
//! power semigroups, and the regular representation.

mod cayley;
mod enumerate;
mod transform;

pub use cayley::{
    index_period, power_semigroup, verify_associativity, AssociativityCheck, CayleyTable,
    IndexPeriod,
};
pub use enumerate::{
    enumerate_semigroups, enumerate_with_prefix, EnumBounds, EnumMode, SemigroupStream,
};
pub use transform::{
    regular_representation, transformation_closure, Transformation, TransformationSemigroup,
};
