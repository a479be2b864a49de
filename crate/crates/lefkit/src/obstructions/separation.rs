use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::presentations::{system_tn, word_ba2_abm, word_ba_abm_ba};
use crate::rewriting::{congruence_search, CongruenceOutcome, Word};

/// Outcome of the bounded separation check for (ba)(ab)^m(ba) versus
/// (ba)^2(ab)^m in T_n. `InequalityConsistent` only certifies that the
/// bounded bidirectional search found no chain; `EqualityFound` carries a
/// concrete chain and falsifies the claimed inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SeparationOutcome {
    InequalityConsistent {
        lhs: Word,
        rhs: Word,
        max_len: usize,
        max_steps: usize,
    },
    EqualityFound {
        path: Vec<Word>,
    },
}

/// Searches for a rewriting chain between (ba)(ab)^m(ba) and (ba)^2(ab)^m
/// over the T_n relation, both directions, within the given caps.
/// Requires n >= 2 and n not dividing m (otherwise the inequality claim
/// does not apply).
pub fn tn_separation(
    n: usize,
    m: usize,
    max_len: usize,
    max_steps: usize,
) -> Result<SeparationOutcome> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("separation check needs n >= 2, got {n}")));
    }
    if m == 0 || m % n == 0 {
        return Err(Error::InvalidInput(format!(
            "separation check needs n to not divide m (n = {n}, m = {m})"
        )));
    }
    let rs = system_tn(n)?;
    let lhs = word_ba_abm_ba(m);
    let rhs = word_ba2_abm(m);
    match congruence_search(&lhs, &rhs, &rs, max_len, max_steps)? {
        CongruenceOutcome::Equal { path } => Ok(SeparationOutcome::EqualityFound { path }),
        CongruenceOutcome::Unknown => Ok(SeparationOutcome::InequalityConsistent {
            lhs,
            rhs,
            max_len,
            max_steps,
        }),
    }
}
