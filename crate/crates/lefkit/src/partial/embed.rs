use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{
    enumerate_semigroups, CayleyTable, EnumBounds, EnumMode, TransformationSemigroup,
};
use crate::partial::table::PartialTable;
use crate::rewriting::Word;

/// Search-space caps shared by the bounded searches.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchBounds {
    pub enumeration: EnumBounds,
    /// largest full transformation semigroup degree to try
    pub max_degree: usize,
    /// cap on power-semigroup base order
    pub max_power_order: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            enumeration: EnumBounds::default(),
            max_degree: 4,
            max_power_order: 12,
        }
    }
}

/// Target of an embedding: a bare table or a transformation semigroup.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum EmbedTarget {
    Table { table: CayleyTable },
    Transformations { semigroup: TransformationSemigroup },
}

impl EmbedTarget {
    pub fn order(&self) -> usize {
        match self {
            EmbedTarget::Table { table } => table.order(),
            EmbedTarget::Transformations { semigroup } => semigroup.order(),
        }
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self {
            EmbedTarget::Table { table } => table.mul(i, j),
            EmbedTarget::Transformations { semigroup } => semigroup.cayley().mul(i, j),
        }
    }
}

/// An injective, product-preserving assignment of pattern elements into a
/// finite target.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub target: EmbedTarget,
    /// assignment[i] = target element for pattern element i
    pub assignment: Vec<usize>,
}

/// Candidate space for an embedding search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "kebab-case")]
pub enum SearchSpace {
    /// every labeled semigroup of order 1..=max_order, in enumeration order
    AllOrders { max_order: usize },
    /// the full transformation semigroup of degree 1..=max_degree
    TransformationDegree { max_degree: usize },
}

/// Result of a bounded search: a re-verifiable witness, or a certificate
/// that the stated space was fully traversed. `Exhausted` never claims more
/// than the traversal.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SearchOutcome<W> {
    Witness { witness: W },
    Exhausted {
        space: String,
        targets_tried: usize,
    },
}

impl<W> SearchOutcome<W> {
    pub fn is_witness(&self) -> bool {
        matches!(self, SearchOutcome::Witness { .. })
    }
}

/// Re-checks injectivity and every defined product of a claimed witness.
pub fn verify_embedding(pt: &PartialTable, witness: &EmbeddingWitness) -> bool {
    let t = pt.len();
    if witness.assignment.len() != t {
        return false;
    }
    let order = witness.target.order();
    if witness.assignment.iter().any(|&v| v >= order) {
        return false;
    }
    for i in 0..t {
        for j in 0..i {
            if witness.assignment[i] == witness.assignment[j] {
                return false;
            }
        }
    }
    for (i, j, k) in pt.defined_products() {
        if witness.target.mul(witness.assignment[i], witness.assignment[j])
            != witness.assignment[k]
        {
            return false;
        }
    }
    true
}

/// Deterministic backtracking over (target, assignment) pairs: targets
/// ascending by order then enumeration order, assignments extended
/// element-by-element with forward checking on injectivity and defined
/// products. The first witness in this order is returned.
pub fn embed_search(
    pt: &PartialTable,
    space: SearchSpace,
    bounds: &SearchBounds,
) -> Result<SearchOutcome<EmbeddingWitness>> {
    let mut tried = 0usize;
    match space {
        SearchSpace::AllOrders { max_order } => {
            for n in 1..=max_order {
                for table in enumerate_semigroups(n, EnumMode::Labeled, &bounds.enumeration)? {
                    tried += 1;
                    if let Some(assignment) = embed_into(pt, table.order(), &|i, j| table.mul(i, j))
                    {
                        return Ok(SearchOutcome::Witness {
                            witness: EmbeddingWitness {
                                target: EmbedTarget::Table { table },
                                assignment,
                            },
                        });
                    }
                }
            }
            Ok(SearchOutcome::Exhausted {
                space: format!("all labeled semigroups of order <= {max_order}"),
                targets_tried: tried,
            })
        }
        SearchSpace::TransformationDegree { max_degree } => {
            if max_degree > bounds.max_degree {
                return Err(Error::BoundExceeded(format!(
                    "degree {max_degree} exceeds configured limit {}",
                    bounds.max_degree
                )));
            }
            for d in 1..=max_degree {
                let full = TransformationSemigroup::full(d, d.pow(d as u32))?;
                tried += 1;
                let cayley = full.cayley().clone();
                if let Some(assignment) = embed_into(pt, cayley.order(), &|i, j| cayley.mul(i, j))
                {
                    return Ok(SearchOutcome::Witness {
                        witness: EmbeddingWitness {
                            target: EmbedTarget::Transformations { semigroup: full },
                            assignment,
                        },
                    });
                }
            }
            Ok(SearchOutcome::Exhausted {
                space: format!("full transformation semigroups of degree <= {max_degree}"),
                targets_tried: tried,
            })
        }
    }
}

/// Least injective product-preserving assignment into an order-n target, or
/// None. Candidate values ascend; a pattern element whose value is forced by
/// already-assigned products only tries that value.
pub fn embed_into(
    pt: &PartialTable,
    order: usize,
    mul: &dyn Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let t = pt.len();
    if t > order {
        return None;
    }
    let mut assign: Vec<usize> = Vec::with_capacity(t);
    let mut used = vec![false; order];
    extend(pt, order, mul, &mut assign, &mut used).then_some(assign)
}

fn extend(
    pt: &PartialTable,
    order: usize,
    mul: &dyn Fn(usize, usize) -> usize,
    assign: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let e = assign.len();
    if e == pt.len() {
        return true;
    }
    // a product of assigned elements landing on e forces its value
    let mut forced: Option<usize> = None;
    for i in 0..e {
        for j in 0..e {
            if pt.product(i, j) == Some(e) {
                let v = mul(assign[i], assign[j]);
                match forced {
                    None => forced = Some(v),
                    Some(u) if u != v => return false,
                    _ => {}
                }
            }
        }
    }
    let candidates: Vec<usize> = match forced {
        Some(v) => vec![v],
        None => (0..order).collect(),
    };
    for v in candidates {
        if used[v] {
            continue;
        }
        assign.push(v);
        if consistent_with(pt, mul, assign) {
            used[v] = true;
            if extend(pt, order, mul, assign, used) {
                return true;
            }
            used[v] = false;
        }
        assign.pop();
    }
    false
}

/// Checks all defined products whose three participants are assigned and
/// involve the newest element.
fn consistent_with(
    pt: &PartialTable,
    mul: &dyn Fn(usize, usize) -> usize,
    assign: &[usize],
) -> bool {
    let e = assign.len() - 1;
    for i in 0..=e {
        for j in 0..=e {
            if let Some(k) = pt.product(i, j) {
                if k <= e && (i == e || j == e || k == e) && mul(assign[i], assign[j]) != assign[k]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Constructive witness for a set of free-semigroup words: the target is the
/// semigroup of all nonempty words of length <= max_len plus a zero, product
/// being concatenation when it fits and zero otherwise; the assignment is
/// inclusion.
pub fn free_truncation_witness(
    alphabet: &[char],
    words: &[Word],
    max_len: usize,
) -> Result<EmbeddingWitness> {
    if alphabet.is_empty() || words.is_empty() {
        return Err(Error::InvalidInput("alphabet and words must be nonempty".into()));
    }
    for w in words {
        w.check_alphabet(alphabet)?;
        if w.is_empty() {
            return Err(Error::InvalidInput(
                "free-semigroup patterns use nonempty words".into(),
            ));
        }
        if w.len() > max_len {
            return Err(Error::WordTooLong {
                word: w.to_string(),
                len: w.len(),
                limit: max_len,
            });
        }
    }
    // all words of length 1..=max_len in (length, lex) order, then the zero
    let mut all: Vec<Word> = Vec::new();
    let mut current: Vec<Word> = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &current {
            for &c in alphabet {
                next.push(w.concat(&Word::from_chars(vec![c])));
            }
        }
        all.extend(next.iter().cloned());
        current = next;
    }
    let zero = all.len();
    let order = all.len() + 1;
    let index_of = |w: &Word| all.iter().position(|u| u == w);
    let mut rows = vec![vec![zero; order]; order];
    for (i, u) in all.iter().enumerate() {
        for (j, v) in all.iter().enumerate() {
            let c = u.concat(v);
            rows[i][j] = if c.len() <= max_len {
                index_of(&c).expect("closed under short concatenation")
            } else {
                zero
            };
        }
    }
    let table = CayleyTable::new(rows)?;
    let assignment: Vec<usize> = words
        .iter()
        .map(|w| index_of(w).expect("checked length"))
        .collect();
    Ok(EmbeddingWitness {
        target: EmbedTarget::Table { table },
        assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::presentations::{system_b, system_free};

    fn free_pattern(words: &[&str]) -> PartialTable {
        let rs = system_free(vec!['a', 'b']).unwrap();
        let ws: Vec<Word> = words.iter().map(|s| Word::parse(s)).collect();
        PartialTable::induce(&rs, &ws, None).unwrap()
    }

    #[test]
    fn free_truncation_small() {
        let w = free_truncation_witness(&['a'], &[Word::parse("a")], 1).unwrap();
        assert_eq!(w.target.order(), 2);
        // a*a overflows to the zero
        assert_eq!(w.target.mul(0, 0), 1);
    }

    #[test]
    fn free_truncation_two_letters() {
        let words: Vec<Word> = ["a", "b", "ab"].iter().map(|s| Word::parse(s)).collect();
        let w = free_truncation_witness(&['a', 'b'], &words, 2).unwrap();
        assert_eq!(w.target.order(), 7);
        let pt = free_pattern(&["a", "b", "ab"]);
        assert!(verify_embedding(&pt, &w));

        let words: Vec<Word> = ["a", "b", "ab", "ba"].iter().map(|s| Word::parse(s)).collect();
        let w = free_truncation_witness(&['a', 'b'], &words, 2).unwrap();
        let pt = free_pattern(&["a", "b", "ab", "ba"]);
        assert!(verify_embedding(&pt, &w));
    }

    #[test]
    fn free_truncation_rejects_long_words() {
        assert!(matches!(
            free_truncation_witness(&['a', 'b'], &[Word::parse("aab")], 2),
            Err(Error::WordTooLong { .. })
        ));
    }

    #[test]
    fn search_finds_free_witness() {
        let pt = free_pattern(&["a", "b", "ab"]);
        let out = embed_search(
            &pt,
            SearchSpace::AllOrders { max_order: 3 },
            &SearchBounds::default(),
        )
        .unwrap();
        match out {
            SearchOutcome::Witness { witness } => {
                assert!(verify_embedding(&pt, &witness));
                // the all-zero order-3 table admits it, so the least witness
                // has order 3
                assert_eq!(witness.target.order(), 3);
            }
            SearchOutcome::Exhausted { .. } => panic!("free pattern must embed"),
        }
    }

    #[test]
    fn search_exhausts_bicyclic_at_small_orders() {
        let b = system_b();
        let words: Vec<Word> = ["1", "a", "b", "ba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&b, &words, None).unwrap();
        let out = embed_search(
            &pt,
            SearchSpace::AllOrders { max_order: 4 },
            &SearchBounds::default(),
        )
        .unwrap();
        match out {
            SearchOutcome::Exhausted { targets_tried, .. } => {
                assert_eq!(targets_tried, 1 + 8 + 113 + 3492);
            }
            SearchOutcome::Witness { .. } => panic!("bicyclic pattern embedded"),
        }
    }

    #[test]
    fn witness_verification_rejects_tampering() {
        let pt = free_pattern(&["a", "b", "ab"]);
        let words: Vec<Word> = ["a", "b", "ab"].iter().map(|s| Word::parse(s)).collect();
        let mut w = free_truncation_witness(&['a', 'b'], &words, 2).unwrap();
        assert!(verify_embedding(&pt, &w));
        let orig = w.assignment[2];
        w.assignment[2] = w.assignment[0]; // breaks injectivity
        assert!(!verify_embedding(&pt, &w));
        w.assignment[2] = orig + 1; // breaks the product a*b = ab
        assert!(!verify_embedding(&pt, &w));
    }

    #[test]
    fn subsets_of_small_semigroups_embed() {
        // positive control at order 3: every subset pattern of a finite
        // semigroup embeds into a table of its own order
        let bounds = SearchBounds::default();
        for table in enumerate_semigroups(3, EnumMode::UpToIsomorphism, &bounds.enumeration).unwrap()
        {
            for mask in 1u32..(1 << 3) {
                let subset: Vec<usize> = (0..3).filter(|&i| mask & (1 << i) != 0).collect();
                let pt = PartialTable::from_subset(&table, &subset).unwrap();
                let out = embed_search(
                    &pt,
                    SearchSpace::AllOrders { max_order: 3 },
                    &bounds,
                )
                .unwrap();
                match out {
                    SearchOutcome::Witness { witness } => assert!(verify_embedding(&pt, &witness)),
                    SearchOutcome::Exhausted { .. } => {
                        panic!("subset of a finite semigroup failed to embed")
                    }
                }
            }
        }
    }

    #[test]
    fn degree_space_finds_transformation_witness() {
        let pt = free_pattern(&["a", "b", "ab"]);
        let out = embed_search(
            &pt,
            SearchSpace::TransformationDegree { max_degree: 2 },
            &SearchBounds::default(),
        )
        .unwrap();
        match out {
            SearchOutcome::Witness { witness } => assert!(verify_embedding(&pt, &witness)),
            SearchOutcome::Exhausted { .. } => panic!("pattern embeds in T_2"),
        }
    }
}
