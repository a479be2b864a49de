//! Finite-semigroup laws as executable checkers and exhaustive scanners,
//! non-embeddability pattern matchers over partial tables, the bounded T_n
//! separation check, and the power-semigroup counterexample assertions.

mod laws;
mod patterns;
mod power_check;
mod separation;

pub use laws::{scan_law, scan_law_jobs, Counterexample, Law, LawReport};
pub use patterns::{detect_obstruction, verify_certificate, ObstructionCertificate};
pub use power_check::{power_counterexample_check, PowerCheckReport};
pub use separation::{tn_separation, SeparationOutcome};
