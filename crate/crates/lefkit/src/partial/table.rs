use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::CayleyTable;
use crate::rewriting::{
    congruence_search, is_locally_confluent, CongruenceOutcome, RewritingSystem, Word,
};

/// Caps for deciding word equality by bidirectional search when the
/// presentation is not complete.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CongruenceCaps {
    pub max_len: usize,
    pub max_steps: usize,
}

/// A finite named set with a partially defined product and, optionally, a
/// total `ambient` map recording the canonical word of every pairwise
/// product (in-set or not).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTable {
    elements: Vec<String>,
    product: Vec<Option<usize>>,
    ambient: Option<Vec<String>>,
}

/// Outcome of the partial-associativity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialAssociativity {
    Ok,
    /// Least triple (i, j, k) where both groupings are defined and disagree.
    Violation(usize, usize, usize),
}

impl PartialTable {
    pub fn new(
        elements: Vec<String>,
        product_map: &BTreeMap<(usize, usize), usize>,
        ambient_map: Option<&BTreeMap<(usize, usize), String>>,
    ) -> Result<Self> {
        let t = elements.len();
        if t == 0 {
            return Err(Error::InvalidInput("a pattern needs at least one element".into()));
        }
        {
            let mut sorted = elements.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != t {
                return Err(Error::DuplicateElement("repeated element name".into()));
            }
        }
        let mut product = vec![None; t * t];
        for (&(i, j), &k) in product_map {
            if i >= t || j >= t || k >= t {
                return Err(Error::InvalidInput(format!(
                    "product entry ({i},{j})->{k} out of range"
                )));
            }
            product[i * t + j] = Some(k);
        }
        let ambient = match ambient_map {
            None => None,
            Some(map) => {
                let mut amb = vec![String::new(); t * t];
                for i in 0..t {
                    for j in 0..t {
                        let w = map.get(&(i, j)).ok_or_else(|| {
                            Error::InvalidInput(format!(
                                "ambient map missing entry for ({i},{j})"
                            ))
                        })?;
                        amb[i * t + j] = w.clone();
                    }
                }
                Some(amb)
            }
        };
        let pt = PartialTable {
            elements,
            product,
            ambient,
        };
        pt.check_ambient_consistency()?;
        Ok(pt)
    }

    /// The ambient value of an in-set product must be that element's own
    /// name, and conversely an ambient value naming an element forces the
    /// product to be defined.
    fn check_ambient_consistency(&self) -> Result<()> {
        let Some(amb) = &self.ambient else {
            return Ok(());
        };
        let t = self.elements.len();
        for i in 0..t {
            for j in 0..t {
                let a = &amb[i * t + j];
                let named = self.elements.iter().position(|e| e == a);
                match (self.product[i * t + j], named) {
                    (Some(k), Some(m)) if k == m => {}
                    (None, None) => {}
                    (p, n) => {
                        return Err(Error::InvalidInput(format!(
                            "ambient/product mismatch at ({i},{j}): product {p:?}, ambient '{a}' names {n:?}"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i * self.elements.len() + j]
    }

    pub fn has_ambient(&self) -> bool {
        self.ambient.is_some()
    }

    pub fn ambient(&self, i: usize, j: usize) -> Option<&str> {
        self.ambient
            .as_ref()
            .map(|a| a[i * self.elements.len() + j].as_str())
    }

    /// Defined products as (i, j, k) triples in lexicographic order.
    pub fn defined_products(&self) -> Vec<(usize, usize, usize)> {
        let t = self.elements.len();
        let mut out = Vec::new();
        for i in 0..t {
            for j in 0..t {
                if let Some(k) = self.product[i * t + j] {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// Checks every triple where both groupings are fully defined in-set.
    pub fn check_partial_associativity(&self) -> PartialAssociativity {
        let t = self.elements.len();
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    let left = self
                        .product(i, j)
                        .and_then(|ij| self.product(ij, k));
                    let right = self
                        .product(j, k)
                        .and_then(|jk| self.product(i, jk));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return PartialAssociativity::Violation(i, j, k);
                        }
                    }
                }
            }
        }
        PartialAssociativity::Ok
    }

    /// The pattern induced on `words` by a presentation: the product of two
    /// listed words is defined exactly when it equals a listed word.
    ///
    /// A complete system (length-reducing and locally confluent) decides
    /// equality by normal forms and yields a total ambient map of canonical
    /// forms. Otherwise `caps` must be given and equality is semi-decided by
    /// bidirectional search: a product is recorded only when an explicit
    /// chain certifies it, two words count as distinct unless a chain proves
    /// them equal, and no ambient map is produced (reduced words are not
    /// canonical in an incomplete system). Every defined product in the
    /// capped case is therefore sound; undefined ones are only as strong as
    /// the caps.
    pub fn induce(
        rs: &RewritingSystem,
        words: &[Word],
        caps: Option<CongruenceCaps>,
    ) -> Result<PartialTable> {
        if words.is_empty() {
            return Err(Error::InvalidInput("no words given".into()));
        }
        for w in words {
            w.check_alphabet(&rs.alphabet)?;
        }
        let complete = rs.is_length_reducing() && is_locally_confluent(rs, None).unwrap_or(false);
        if complete {
            let nfs: Vec<Word> = words
                .iter()
                .map(|w| rs.normal_form(w, None))
                .collect::<Result<_>>()?;
            let elements: Vec<String> = nfs.iter().map(|w| w.to_string()).collect();
            for (i, e) in elements.iter().enumerate() {
                if elements[..i].contains(e) {
                    return Err(Error::DuplicateElement(e.clone()));
                }
            }
            let t = nfs.len();
            let mut product = BTreeMap::new();
            let mut ambient = BTreeMap::new();
            for i in 0..t {
                for j in 0..t {
                    let prod_nf = rs.normal_form(&nfs[i].concat(&nfs[j]), None)?;
                    let name = prod_nf.to_string();
                    if let Some(k) = elements.iter().position(|e| *e == name) {
                        product.insert((i, j), k);
                    }
                    ambient.insert((i, j), name);
                }
            }
            PartialTable::new(elements, &product, Some(&ambient))
        } else {
            let caps = caps.ok_or(Error::NotTerminating)?;
            let elements: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            for (i, _) in words.iter().enumerate() {
                for j in 0..i {
                    if let CongruenceOutcome::Equal { .. } =
                        congruence_search(&words[i], &words[j], rs, caps.max_len, caps.max_steps)?
                    {
                        return Err(Error::DuplicateElement(elements[i].clone()));
                    }
                }
            }
            let t = words.len();
            let mut product = BTreeMap::new();
            for i in 0..t {
                for j in 0..t {
                    let w = words[i].concat(&words[j]);
                    let mut hits = Vec::new();
                    for (k, cand) in words.iter().enumerate() {
                        if let CongruenceOutcome::Equal { .. } =
                            congruence_search(&w, cand, rs, caps.max_len, caps.max_steps)?
                        {
                            hits.push(k);
                        }
                    }
                    match hits.len() {
                        0 => {} // not provably in-set at these caps
                        1 => {
                            product.insert((i, j), hits[0]);
                        }
                        _ => {
                            // two listed words proved equal to the same product
                            return Err(Error::DuplicateElement(format!(
                                "{} and {} are congruent",
                                elements[hits[0]], elements[hits[1]]
                            )));
                        }
                    }
                }
            }
            PartialTable::new(elements, &product, None)
        }
    }

    /// The pattern carried by a subset of a finite semigroup, with the full
    /// table as ambient. Element names are `e{index}` in the big table.
    pub fn from_subset(ct: &CayleyTable, subset: &[usize]) -> Result<PartialTable> {
        if subset.is_empty() {
            return Err(Error::InvalidInput("empty subset".into()));
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::DuplicateElement("repeated subset index".into()));
        }
        if subset.iter().any(|&x| x >= ct.order()) {
            return Err(Error::InvalidInput("subset index out of range".into()));
        }
        let elements: Vec<String> = subset.iter().map(|&x| format!("e{x}")).collect();
        let mut product = BTreeMap::new();
        let mut ambient = BTreeMap::new();
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                let p = ct.mul(x, y);
                ambient.insert((i, j), format!("e{p}"));
                if let Some(k) = subset.iter().position(|&z| z == p) {
                    product.insert((i, j), k);
                }
            }
        }
        PartialTable::new(elements, &product, Some(&ambient))
    }

    /// The whole table as a (total) pattern.
    pub fn from_table(ct: &CayleyTable) -> PartialTable {
        let all: Vec<usize> = (0..ct.order()).collect();
        PartialTable::from_subset(ct, &all).expect("total pattern is well-formed")
    }
}

impl Serialize for PartialTable {
    fn serialize<S>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        #[derive(Serialize)]
        struct Raw<'a> {
            elements: &'a [String],
            products: BTreeMap<String, String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            ambient: Option<BTreeMap<String, String>>,
        }
        let t = self.elements.len();
        let mut products = BTreeMap::new();
        for i in 0..t {
            for j in 0..t {
                if let Some(k) = self.product(i, j) {
                    products.insert(
                        format!("{},{}", self.elements[i], self.elements[j]),
                        self.elements[k].clone(),
                    );
                }
            }
        }
        let ambient = self.ambient.as_ref().map(|amb| {
            let mut m = BTreeMap::new();
            for i in 0..t {
                for j in 0..t {
                    m.insert(
                        format!("{},{}", self.elements[i], self.elements[j]),
                        amb[i * t + j].clone(),
                    );
                }
            }
            m
        });
        Raw {
            elements: &self.elements,
            products,
            ambient,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartialTable {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            elements: Vec<String>,
            #[serde(default)]
            products: BTreeMap<String, String>,
            #[serde(default)]
            ambient: Option<BTreeMap<String, String>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let find = |name: &str| -> std::result::Result<usize, D::Error> {
            raw.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| serde::de::Error::custom(format!("unknown element '{name}'")))
        };
        let split_key = |key: &str| -> std::result::Result<(usize, usize), D::Error> {
            // element names contain no commas in this format
            let (l, r) = key
                .split_once(',')
                .ok_or_else(|| serde::de::Error::custom(format!("bad product key '{key}'")))?;
            Ok((find(l)?, find(r)?))
        };
        let mut product = BTreeMap::new();
        for (key, value) in &raw.products {
            let (i, j) = split_key(key)?;
            product.insert((i, j), find(value)?);
        }
        let ambient = match &raw.ambient {
            None => None,
            Some(m) => {
                let mut out = BTreeMap::new();
                for (key, value) in m {
                    let (i, j) = split_key(key)?;
                    out.insert((i, j), value.clone());
                }
                // in-set ambient entries may be omitted in input files
                for (&(i, j), &k) in &product {
                    out.entry((i, j)).or_insert_with(|| raw.elements[k].clone());
                }
                Some(out)
            }
        };
        PartialTable::new(raw.elements, &product, ambient.as_ref()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::presentations::{system_a, system_b, system_free};

    #[test]
    fn single_element_no_products() {
        let pt = PartialTable::new(vec!["x".into()], &BTreeMap::new(), None).unwrap();
        assert_eq!(pt.check_partial_associativity(), PartialAssociativity::Ok);
    }

    #[test]
    fn bicyclic_pattern_products() {
        let b = system_b();
        let words: Vec<Word> = ["1", "a", "b", "ba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&b, &words, None).unwrap();
        assert_eq!(pt.check_partial_associativity(), PartialAssociativity::Ok);
        let idx = |s: &str| pt.index_of(s).unwrap();
        // 1 is an identity on the set
        for s in ["1", "a", "b", "ba"] {
            assert_eq!(pt.product(idx("1"), idx(s)), Some(idx(s)));
            assert_eq!(pt.product(idx(s), idx("1")), Some(idx(s)));
        }
        assert_eq!(pt.product(idx("a"), idx("b")), Some(idx("1")));
        assert_eq!(pt.product(idx("b"), idx("a")), Some(idx("ba")));
        assert_eq!(pt.product(idx("ba"), idx("ba")), Some(idx("ba")));
        assert_eq!(pt.product(idx("a"), idx("ba")), Some(idx("a")));
        assert_eq!(pt.product(idx("ba"), idx("b")), Some(idx("b")));
        // out-of-set products
        assert_eq!(pt.product(idx("a"), idx("a")), None);
        assert_eq!(pt.ambient(idx("a"), idx("a")), Some("aa"));
        assert_eq!(pt.product(idx("b"), idx("b")), None);
        assert_eq!(pt.ambient(idx("b"), idx("ba")), Some("bba"));
    }

    #[test]
    fn aab_pattern_products() {
        let a = system_a();
        let words: Vec<Word> = ["a", "b", "ab", "aba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&a, &words, None).unwrap();
        let idx = |s: &str| pt.index_of(s).unwrap();
        assert_eq!(pt.product(idx("a"), idx("ab")), Some(idx("a")));
        assert_eq!(pt.product(idx("a"), idx("b")), Some(idx("ab")));
        assert_eq!(pt.product(idx("ab"), idx("a")), Some(idx("aba")));
        assert_eq!(pt.product(idx("b"), idx("a")), None);
        assert_eq!(pt.check_partial_associativity(), PartialAssociativity::Ok);
    }

    #[test]
    fn free_pattern_products() {
        let rs = system_free(vec!['a', 'b']).unwrap();
        let words: Vec<Word> = ["a", "b", "ab"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&rs, &words, None).unwrap();
        assert_eq!(pt.defined_products(), vec![(0, 1, 2)]);
    }

    #[test]
    fn induce_rejects_duplicates() {
        let b = system_b();
        let words: Vec<Word> = ["ab", "1"].iter().map(|s| Word::parse(s)).collect();
        assert!(matches!(
            PartialTable::induce(&b, &words, None),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn constructed_violation() {
        // x*y = z, y*z = w, (xy)z = u, x(yz) = v with u != v
        let mut product = BTreeMap::new();
        let names: Vec<String> = ["x", "y", "z", "w", "u", "v"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        product.insert((0, 1), 2); // xy = z
        product.insert((1, 2), 3); // yz = w
        product.insert((2, 2), 4); // (xy)z = z*z = u
        product.insert((0, 3), 5); // x(yz) = x*w = v
        let pt = PartialTable::new(names, &product, None).unwrap();
        assert_eq!(
            pt.check_partial_associativity(),
            PartialAssociativity::Violation(0, 1, 2)
        );
    }

    #[test]
    fn subset_pattern() {
        let z2 = CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let pt = PartialTable::from_subset(&z2, &[1]).unwrap();
        assert_eq!(pt.product(0, 0), None); // g*g = identity, not in subset
        assert_eq!(pt.ambient(0, 0), Some("e0"));
        let total = PartialTable::from_table(&z2);
        assert_eq!(total.defined_products().len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let b = system_b();
        let words: Vec<Word> = ["1", "a", "b", "ba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&b, &words, None).unwrap();
        let json = serde_json::to_string(&pt).unwrap();
        let back: PartialTable = serde_json::from_str(&json).unwrap();
        assert_eq!(pt, back);
    }
}
