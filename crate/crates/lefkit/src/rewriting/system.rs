use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    Monoid,
    Semigroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "(String, String)", try_from = "(String, String)")]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl From<Rule> for (String, String) {
    fn from(r: Rule) -> Self {
        (r.lhs.to_string(), r.rhs.to_string())
    }
}

impl TryFrom<(String, String)> for Rule {
    type Error = String;
    fn try_from(p: (String, String)) -> std::result::Result<Self, String> {
        Ok(Rule {
            lhs: Word::parse(&p.0),
            rhs: Word::parse(&p.1),
        })
    }
}

/// An oriented string-rewriting system over a single-character alphabet.
#[derive(Debug, Clone, Serialize)]
pub struct RewritingSystem {
    pub alphabet: Vec<char>,
    pub kind: PresentationKind,
    pub rules: Vec<Rule>,
}

impl RewritingSystem {
    pub fn new(alphabet: Vec<char>, kind: PresentationKind, rules: Vec<Rule>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &c in &alphabet {
            if !seen.insert(c) {
                return Err(Error::InvalidInput(format!("duplicate alphabet symbol '{c}'")));
            }
        }
        for r in &rules {
            if r.lhs.is_empty() {
                return Err(Error::InvalidInput("rule with empty left-hand side".into()));
            }
            if kind == PresentationKind::Semigroup && r.rhs.is_empty() {
                return Err(Error::InvalidInput(
                    "semigroup presentation cannot rewrite to the empty word".into(),
                ));
            }
            r.lhs.check_alphabet(&alphabet)?;
            r.rhs.check_alphabet(&alphabet)?;
        }
        Ok(RewritingSystem {
            alphabet,
            kind,
            rules,
        })
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w = Word::parse(s);
        if w.is_empty() && self.kind == PresentationKind::Semigroup {
            return Err(Error::ParseError(
                "empty word is not an element of a semigroup presentation".into(),
            ));
        }
        w.check_alphabet(&self.alphabet)?;
        Ok(w)
    }

    /// True iff every rule strictly shortens.
    pub fn is_length_reducing(&self) -> bool {
        self.rules.iter().all(|r| r.lhs.len() > r.rhs.len())
    }

    /// One leftmost-lowest-rule-index rewriting step, if any factor matches.
    pub fn step(&self, w: &Word) -> Option<Word> {
        for pos in 0..w.len() {
            for rule in &self.rules {
                if w.matches_at(&rule.lhs, pos) {
                    return Some(w.splice(pos, rule.lhs.len(), &rule.rhs));
                }
            }
        }
        None
    }

    /// Reduces to an irreducible word with the leftmost-lowest-rule strategy.
    /// Without a step cap the system must be length-reducing.
    pub fn normal_form(&self, w: &Word, step_cap: Option<usize>) -> Result<Word> {
        if step_cap.is_none() && !self.is_length_reducing() {
            return Err(Error::NotTerminating);
        }
        let mut cur = w.clone();
        let mut steps = 0usize;
        while let Some(next) = self.step(&cur) {
            steps += 1;
            if let Some(cap) = step_cap {
                if steps > cap {
                    return Err(Error::StepCapExceeded(cap));
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.step(w).is_none()
    }

    /// All one-step successors of `w` under rules applied in the given
    /// direction, in (position, rule) order. `forward` uses lhs -> rhs.
    /// Backward rules with an empty rhs insert the lhs at every boundary.
    fn neighbors(&self, w: &Word, forward: bool) -> Vec<Word> {
        let mut out = Vec::new();
        for rule in &self.rules {
            let (from, to) = if forward {
                (&rule.lhs, &rule.rhs)
            } else {
                (&rule.rhs, &rule.lhs)
            };
            if from.is_empty() {
                for pos in 0..=w.len() {
                    out.push(w.splice(pos, 0, to));
                }
            } else {
                for pos in w.occurrences(from) {
                    out.push(w.splice(pos, from.len(), to));
                }
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for RewritingSystem {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            alphabet: Vec<char>,
            kind: PresentationKind,
            rules: Vec<Rule>,
        }
        let raw = Raw::deserialize(deserializer)?;
        RewritingSystem::new(raw.alphabet, raw.kind, raw.rules).map_err(serde::de::Error::custom)
    }
}

/// An overlap peak between two rule left-hand sides with its one-step
/// reducts and their joinability status.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalPair {
    pub peak: Word,
    pub left_reduct: Word,
    pub right_reduct: Word,
    pub left_nf: Word,
    pub right_nf: Word,
    pub joinable: bool,
}

/// All critical pairs from suffix/prefix overlaps and containments between
/// rule left-hand sides. Joinability is decided by reduction to normal form,
/// so a non-length-reducing system needs a step cap.
pub fn critical_pairs(rs: &RewritingSystem, step_cap: Option<usize>) -> Result<Vec<CriticalPair>> {
    if step_cap.is_none() && !rs.is_length_reducing() {
        return Err(Error::NotTerminating);
    }
    let mut pairs = Vec::new();
    for (i1, r1) in rs.rules.iter().enumerate() {
        for (i2, r2) in rs.rules.iter().enumerate() {
            let l1 = &r1.lhs;
            let l2 = &r2.lhs;
            // proper suffix/prefix overlap: last k symbols of l1 = first k of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1.symbols()[l1.len() - k..] == l2.symbols()[..k] {
                    let peak = l1.concat(&Word::from_chars(l2.symbols()[k..].to_vec()));
                    let left = peak.splice(0, l1.len(), &r1.rhs);
                    let right = peak.splice(l1.len() - k, l2.len(), &r2.rhs);
                    pairs.push(make_pair(rs, peak, left, right, step_cap)?);
                }
            }
            // containment: l2 occurs inside l1 (skip the identical occurrence
            // of a rule in itself)
            if l2.len() <= l1.len() {
                for pos in l1.occurrences(l2) {
                    if i1 == i2 && pos == 0 && l2.len() == l1.len() {
                        continue;
                    }
                    let peak = l1.clone();
                    let left = r1.rhs.clone();
                    let right = peak.splice(pos, l2.len(), &r2.rhs);
                    pairs.push(make_pair(rs, peak, left, right, step_cap)?);
                }
            }
        }
    }
    Ok(pairs)
}

fn make_pair(
    rs: &RewritingSystem,
    peak: Word,
    left: Word,
    right: Word,
    step_cap: Option<usize>,
) -> Result<CriticalPair> {
    let left_nf = rs.normal_form(&left, step_cap)?;
    let right_nf = rs.normal_form(&right, step_cap)?;
    let joinable = left_nf == right_nf;
    Ok(CriticalPair {
        peak,
        left_reduct: left,
        right_reduct: right,
        left_nf,
        right_nf,
        joinable,
    })
}

pub fn is_locally_confluent(rs: &RewritingSystem, step_cap: Option<usize>) -> Result<bool> {
    Ok(critical_pairs(rs, step_cap)?.iter().all(|p| p.joinable))
}

/// Outcome of a bounded bidirectional search for a rewriting chain.
/// `Unknown` proves nothing: the bounded space simply contained no chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CongruenceOutcome {
    Equal { path: Vec<Word> },
    Unknown,
}

/// Breadth-first search from `w1` over single rewriting steps in both
/// directions, pruning words longer than `max_len` (the start and target are
/// exempt) and stopping after `max_steps` generated candidates.
pub fn congruence_search(
    w1: &Word,
    w2: &Word,
    rs: &RewritingSystem,
    max_len: usize,
    max_steps: usize,
) -> Result<CongruenceOutcome> {
    if max_len == 0 || max_steps == 0 {
        return Err(Error::InvalidInput("caps must be positive".into()));
    }
    if w1 == w2 {
        return Ok(CongruenceOutcome::Equal {
            path: vec![w1.clone()],
        });
    }
    let mut parent: HashMap<Word, Word> = HashMap::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    parent.insert(w1.clone(), w1.clone());
    queue.push_back(w1.clone());
    let mut generated = 0usize;
    while let Some(cur) = queue.pop_front() {
        for forward in [true, false] {
            for next in rs.neighbors(&cur, forward) {
                generated += 1;
                if generated > max_steps {
                    return Ok(CongruenceOutcome::Unknown);
                }
                if next.len() > max_len && next != *w2 {
                    continue;
                }
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), cur.clone());
                if next == *w2 {
                    let mut path = vec![next.clone()];
                    let mut node = cur;
                    loop {
                        path.push(node.clone());
                        let p = parent[&node].clone();
                        if p == node {
                            break;
                        }
                        node = p;
                    }
                    path.reverse();
                    return Ok(CongruenceOutcome::Equal { path });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(CongruenceOutcome::Unknown)
}

/// All words reachable from `seed` by forward applications of a single rule,
/// capped by length.
pub fn generate_orbit(seed: &Word, rule: &Rule, cap_len: usize) -> Result<BTreeSet<Word>> {
    if cap_len < seed.len() {
        return Err(Error::InvalidInput(
            "cap_len smaller than the seed word".into(),
        ));
    }
    let mut orbit: BTreeSet<Word> = BTreeSet::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    orbit.insert(seed.clone());
    queue.push_back(seed.clone());
    while let Some(cur) = queue.pop_front() {
        for pos in cur.occurrences(&rule.lhs) {
            let next = cur.splice(pos, rule.lhs.len(), &rule.rhs);
            if next.len() <= cap_len && orbit.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(orbit)
}
