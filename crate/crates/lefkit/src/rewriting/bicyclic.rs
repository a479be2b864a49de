//! Closed-form arithmetic in the bicyclic monoid B = Mon< a, b | ab = 1 >.
//! Every element has a unique normal form b^i a^j.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::word::Word;

/// Normal form b^i a^j. The identity is (0, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BicyclicNF {
    /// power of b
    pub i: usize,
    /// power of a
    pub j: usize,
}

impl BicyclicNF {
    pub fn identity() -> Self {
        BicyclicNF { i: 0, j: 0 }
    }

    pub fn to_word(self) -> Word {
        let mut chars = Vec::with_capacity(self.i + self.j);
        chars.extend(std::iter::repeat('b').take(self.i));
        chars.extend(std::iter::repeat('a').take(self.j));
        Word::from_chars(chars)
    }
}

/// (b^i a^j)(b^k a^l) = b^(i+k-min(j,k)) a^(l+j-min(j,k)): the inner a^j b^k
/// cancels pairwise under ab = 1.
pub fn bicyclic_mul(x: BicyclicNF, y: BicyclicNF) -> BicyclicNF {
    let m = x.j.min(y.i);
    BicyclicNF {
        i: x.i + y.i - m,
        j: y.j + x.j - m,
    }
}

/// Folds a word over {a, b} into its normal form.
pub fn bicyclic_nf(w: &Word) -> Result<BicyclicNF> {
    let mut acc = BicyclicNF::identity();
    for &c in w.symbols() {
        let next = match c {
            'a' => BicyclicNF { i: 0, j: 1 },
            'b' => BicyclicNF { i: 1, j: 0 },
            other => {
                return Err(Error::ParseError(format!(
                    "bicyclic words use alphabet {{a, b}}, got '{other}'"
                )))
            }
        };
        acc = bicyclic_mul(acc, next);
    }
    Ok(acc)
}
