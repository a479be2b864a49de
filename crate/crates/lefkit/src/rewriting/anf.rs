//! Normal-form arithmetic for A = Sg< a, b | aab = a >: canonical shapes,
//! the a-minus-b count eta, the idempotent scan, and the shape test used by
//! the power-semigroup counterexample.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::presentations::system_a;
use crate::rewriting::word::Word;

/// Canonical shape b^b0 a b^b1 ... a b^bn a^alpha with b1..bn > 0.
/// `beta` holds [b0, b1, ..., bn].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ANormalForm {
    pub beta: Vec<usize>,
    pub alpha: usize,
}

impl ANormalForm {
    /// Number of inner `a b^bi` blocks.
    pub fn n(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn to_word(&self) -> Word {
        let mut chars = Vec::new();
        for (idx, &b) in self.beta.iter().enumerate() {
            if idx > 0 {
                chars.push('a');
            }
            chars.extend(std::iter::repeat('b').take(b));
        }
        chars.extend(std::iter::repeat('a').take(self.alpha));
        Word::from_chars(chars)
    }

    /// eta = #a - #b, an invariant of the congruence generated by aab = a.
    pub fn eta(&self) -> i64 {
        (self.n() + self.alpha) as i64 - self.beta.iter().sum::<usize>() as i64
    }
}

/// Difference between the number of a's and b's.
pub fn eta(w: &Word) -> i64 {
    w.count('a') as i64 - w.count('b') as i64
}

/// Reduces `w` in A and parses the irreducible result. A parse failure on an
/// irreducible word cannot happen for this system and signals a bug.
pub fn a_nf(w: &Word) -> Result<ANormalForm> {
    if w.is_empty() {
        return Err(Error::InvalidInput(
            "the empty word is not an element of A".into(),
        ));
    }
    w.check_alphabet(&['a', 'b'])?;
    let nf = system_a().normal_form(w, None)?;
    parse_irreducible(&nf)
}

fn parse_irreducible(w: &Word) -> Result<ANormalForm> {
    let syms = w.symbols();
    let mut beta = Vec::new();
    let mut pos = 0usize;
    // leading b-run
    let mut b0 = 0;
    while pos < syms.len() && syms[pos] == 'b' {
        b0 += 1;
        pos += 1;
    }
    beta.push(b0);
    let mut alpha = 0usize;
    while pos < syms.len() {
        // an 'a': either starts an "a b^k" block (k > 0) or the trailing a-run
        debug_assert_eq!(syms[pos], 'a');
        let mut run = 0;
        while pos < syms.len() && syms[pos] == 'a' {
            run += 1;
            pos += 1;
        }
        if pos == syms.len() {
            alpha = run;
            break;
        }
        // a b follows: an irreducible word admits no "aab", so the run is 1
        if run != 1 {
            return Err(Error::ParseError(format!(
                "word {w} is not in canonical shape (inner a-run of length {run})"
            )));
        }
        let mut bk = 0;
        while pos < syms.len() && syms[pos] == 'b' {
            bk += 1;
            pos += 1;
        }
        beta.push(bk);
    }
    Ok(ANormalForm { beta, alpha })
}

/// Scans every irreducible word of length <= max_len for a solution of
/// w*w = w; returns the first witness or None when the claim of
/// idempotent-freeness holds at this bound.
pub fn a_idempotent_scan(max_len: usize) -> Result<Option<Word>> {
    if max_len < 1 {
        return Err(Error::InvalidInput("max_len must be at least 1".into()));
    }
    let rs = system_a();
    for len in 1..=max_len {
        let mut chars = vec![b'a'; len];
        loop {
            let word = Word::from_chars(chars.iter().map(|&c| c as char).collect());
            if rs.is_irreducible(&word) {
                let square = rs.normal_form(&word.concat(&word), None)?;
                if square == word {
                    return Ok(Some(word));
                }
            }
            // advance the {a,b}^len counter
            let mut k = len;
            let mut done = true;
            while k > 0 {
                k -= 1;
                if chars[k] == b'a' {
                    chars[k] = b'b';
                    done = false;
                    break;
                }
                chars[k] = b'a';
            }
            if done {
                break;
            }
        }
    }
    Ok(None)
}

/// The a-heavy shape: every nonempty prefix has strictly more a's than b's.
///
/// This is the invariant of the orbit of "a" under a -> aab: replacing an
/// `a` (whose prefix is already strictly heavy) by `aab` keeps all prefix
/// counts positive, and deleting a balanced factor such as `abab` or `baba`
/// does too. The per-run inequality variant (first a-run longer than the
/// following b-run, later runs at least as long) is NOT orbit-invariant:
/// aaabb steps to aaababb, whose second a-run is shorter than its b-run.
/// The word aba fails this check at the prefix ab.
pub fn wa_shape_check(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut h = 0i64;
    for &c in w.symbols() {
        match c {
            'a' => h += 1,
            'b' => h -= 1,
            _ => return false,
        }
        if h <= 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&"aab".into()), 1);
        assert_eq!(eta(&"a".into()), 1);
        assert_eq!(eta(&"bb".into()), -2);
    }

    #[test]
    fn a_nf_examples() {
        assert_eq!(
            a_nf(&"aab".into()).unwrap(),
            ANormalForm {
                beta: vec![0],
                alpha: 1
            }
        );
        // baaba reduces: aab at position 1 -> baa
        assert_eq!(
            a_nf(&"baaba".into()).unwrap(),
            ANormalForm {
                beta: vec![1],
                alpha: 2
            }
        );
        let nf = a_nf(&"babba".into()).unwrap();
        assert_eq!(
            nf,
            ANormalForm {
                beta: vec![1, 2],
                alpha: 1
            }
        );
        assert_eq!(nf.to_word(), "babba".into());
        assert_eq!(nf.eta(), eta(&"babba".into()));
    }

    #[test]
    fn eta_matches_parsed_form() {
        // eta of the normal form equals eta of the input: aab <-> a preserves it
        for w in ["aab", "baaba", "aabaab", "bbaabab"] {
            let word: Word = w.into();
            assert_eq!(a_nf(&word).unwrap().eta(), eta(&word));
        }
    }

    #[test]
    fn idempotent_scan_small() {
        assert_eq!(a_idempotent_scan(1).unwrap(), None);
        assert_eq!(a_idempotent_scan(4).unwrap(), None);
    }

    #[test]
    fn shape_check_examples() {
        assert!(!wa_shape_check(&"aba".into()));
        assert!(wa_shape_check(&"a".into()));
        assert!(wa_shape_check(&"aab".into()));
        assert!(wa_shape_check(&"aabab".into()));
        assert!(wa_shape_check(&"aaabb".into()));
        assert!(!wa_shape_check(&"ba".into()));
        assert!(!wa_shape_check(&Word::empty()));
    }

    #[test]
    fn runwise_inequalities_are_not_orbit_invariant() {
        // aaabb is in the orbit of a under a -> aab, and applying the rule at
        // position 1 gives aaababb, whose maximal runs (3,1),(1,2) violate
        // the per-run inequality a_i >= b_i. The prefix form still holds.
        let from: Word = "aaabb".into();
        let to = from.splice(1, 1, &"aab".into());
        assert_eq!(to, "aaababb".into());
        assert!(wa_shape_check(&to));
        let runs_ok = {
            // the runwise variant, inlined
            let syms = to.symbols();
            let mut pairs = Vec::new();
            let mut pos = 0;
            while pos < syms.len() {
                let mut a = 0;
                while pos < syms.len() && syms[pos] == 'a' {
                    a += 1;
                    pos += 1;
                }
                let mut b = 0;
                while pos < syms.len() && syms[pos] == 'b' {
                    b += 1;
                    pos += 1;
                }
                pairs.push((a, b));
            }
            pairs[0].0 > pairs[0].1 && pairs[1..].iter().all(|&(a, b)| a >= b)
        };
        assert!(!runs_ok);
    }
}
