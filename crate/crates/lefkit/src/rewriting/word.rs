use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over a single-character alphabet. The empty word is the monoid
/// identity and prints as "1".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_chars(chars: Vec<char>) -> Self {
        Word(chars)
    }

    /// Parses "1" as the empty word, anything else as its character sequence.
    pub fn parse(s: &str) -> Self {
        if s == "1" {
            Word::empty()
        } else {
            Word(s.chars().collect())
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, c: char) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }

    /// Positions where `factor` occurs (factor must be nonempty).
    pub fn occurrences(&self, factor: &Word) -> Vec<usize> {
        let f = &factor.0;
        if f.is_empty() || f.len() > self.0.len() {
            return Vec::new();
        }
        (0..=self.0.len() - f.len())
            .filter(|&p| &self.0[p..p + f.len()] == f.as_slice())
            .collect()
    }

    pub fn matches_at(&self, factor: &Word, pos: usize) -> bool {
        let f = &factor.0;
        pos + f.len() <= self.0.len() && &self.0[pos..pos + f.len()] == f.as_slice()
    }

    /// Replaces the length-`old_len` factor at `pos` with `repl`.
    pub fn splice(&self, pos: usize, old_len: usize, repl: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - old_len + repl.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&repl.0);
        v.extend_from_slice(&self.0[pos + old_len..]);
        Word(v)
    }

    /// Builds a word from (factor, exponent) pairs, e.g. [("ba",1),("ab",3)].
    pub fn from_factors(factors: &[(&str, usize)]) -> Word {
        let mut v = Vec::new();
        for &(f, e) in factors {
            for _ in 0..e {
                v.extend(f.chars());
            }
        }
        Word(v)
    }

    /// Checks every symbol against the alphabet.
    pub fn check_alphabet(&self, alphabet: &[char]) -> Result<()> {
        for &c in &self.0 {
            if !alphabet.contains(&c) {
                return Err(Error::ParseError(format!(
                    "symbol '{c}' not in alphabet {alphabet:?}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        }
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        Ok(Word::parse(&s))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Word {
        Word::parse(s)
    }
}
