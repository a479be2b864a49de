//! The named presentations used throughout: the bicyclic monoid B, the
//! idempotent-free semigroup A, the semigroup T and its family T_n, and the
//! order-two free-product monoid presented by abab = baba = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::system::{PresentationKind, RewritingSystem, Rule};
use crate::rewriting::word::Word;

fn rule(lhs: &str, rhs: &str) -> Rule {
    Rule {
        lhs: Word::parse(lhs),
        rhs: Word::parse(rhs),
    }
}

/// B = Mon< a, b | ab = 1 >, oriented ab -> 1.
pub fn system_b() -> RewritingSystem {
    RewritingSystem::new(
        vec!['a', 'b'],
        PresentationKind::Monoid,
        vec![rule("ab", "1")],
    )
    .unwrap()
}

/// A = Sg< a, b | aab = a >, oriented aab -> a.
pub fn system_a() -> RewritingSystem {
    RewritingSystem::new(
        vec!['a', 'b'],
        PresentationKind::Semigroup,
        vec![rule("aab", "a")],
    )
    .unwrap()
}

/// T = Sg< a, b | baab = ba >, oriented baab -> ba.
pub fn system_t() -> RewritingSystem {
    RewritingSystem::new(
        vec!['a', 'b'],
        PresentationKind::Semigroup,
        vec![rule("baab", "ba")],
    )
    .unwrap()
}

/// T_n = Sg< a, b | (ba)(ab)^n = (ba)^n >, n >= 2, oriented left-to-right.
pub fn system_tn(n: usize) -> Result<RewritingSystem> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("T_n requires n >= 2, got {n}")));
    }
    let lhs = Word::from_factors(&[("ba", 1), ("ab", n)]);
    let rhs = Word::from_factors(&[("ba", n)]);
    RewritingSystem::new(
        vec!['a', 'b'],
        PresentationKind::Semigroup,
        vec![Rule { lhs, rhs }],
    )
}

/// S = Mon< a, b | abab = 1, baba = 1 >.
pub fn system_abab() -> RewritingSystem {
    RewritingSystem::new(
        vec!['a', 'b'],
        PresentationKind::Monoid,
        vec![rule("abab", "1"), rule("baba", "1")],
    )
    .unwrap()
}

/// The free semigroup on `alphabet` (no rules; every word is irreducible).
pub fn system_free(alphabet: Vec<char>) -> Result<RewritingSystem> {
    RewritingSystem::new(alphabet, PresentationKind::Semigroup, Vec::new())
}

/// Identifier for a registered presentation, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationId {
    B,
    A,
    T,
    Tn(usize),
    SAbab,
    Free,
}

impl PresentationId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(PresentationId::B),
            "A" | "a" => Ok(PresentationId::A),
            "T" | "t" => Ok(PresentationId::T),
            "S-abab" | "s-abab" | "S_abab" => Ok(PresentationId::SAbab),
            "free" => Ok(PresentationId::Free),
            other => {
                if let Some(num) = other.strip_prefix("Tn:").or_else(|| other.strip_prefix("tn:")) {
                    let n: usize = num
                        .parse()
                        .map_err(|_| Error::ParseError(format!("bad T_n index in '{other}'")))?;
                    Ok(PresentationId::Tn(n))
                } else {
                    Err(Error::ParseError(format!("unknown presentation '{other}'")))
                }
            }
        }
    }

    pub fn system(&self) -> Result<RewritingSystem> {
        match self {
            PresentationId::B => Ok(system_b()),
            PresentationId::A => Ok(system_a()),
            PresentationId::T => Ok(system_t()),
            PresentationId::Tn(n) => system_tn(*n),
            PresentationId::SAbab => Ok(system_abab()),
            PresentationId::Free => system_free(vec!['a', 'b']),
        }
    }
}

/// (ba)(ab)^m as a word; the separation checks build their inputs through
/// these helpers rather than by hand.
pub fn word_ba_abm(m: usize) -> Word {
    Word::from_factors(&[("ba", 1), ("ab", m)])
}

/// (ba)(ab)^m(ba).
pub fn word_ba_abm_ba(m: usize) -> Word {
    Word::from_factors(&[("ba", 1), ("ab", m), ("ba", 1)])
}

/// (ba)^2(ab)^m.
pub fn word_ba2_abm(m: usize) -> Word {
    Word::from_factors(&[("ba", 2), ("ab", m)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tn_shape() {
        let t2 = system_tn(2).unwrap();
        assert_eq!(t2.rules[0].lhs.to_string(), "baabab");
        assert_eq!(t2.rules[0].rhs.to_string(), "baba");
        assert!(t2.is_length_reducing());
        assert!(system_tn(1).is_err());
    }

    #[test]
    fn id_round_trip() {
        assert_eq!(PresentationId::parse("Tn:3").unwrap(), PresentationId::Tn(3));
        assert!(PresentationId::parse("X").is_err());
    }

    #[test]
    fn helper_words() {
        assert_eq!(word_ba_abm_ba(1).to_string(), "baabba");
        assert_eq!(word_ba2_abm(1).to_string(), "babaab");
    }
}
