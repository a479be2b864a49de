use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{enumerate_semigroups, CayleyTable, EnumMode};
use crate::partial::embed::{SearchBounds, SearchOutcome};
use crate::partial::table::PartialTable;

/// Label of a wrapping-semigroup element: a pattern element, or a value
/// outside the pattern. `Outside(Some(w))` pins the ambient word; the
/// symbolic `Outside(None)` records only non-membership, which is all an
/// infinite ambient semigroup lets us say about an arbitrary sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WrapLabel {
    InH { index: usize },
    Outside {
        #[serde(skip_serializing_if = "Option::is_none")]
        word: Option<String>,
    },
}

/// A finite semigroup D with a labeling into (a pattern inside) an ambient
/// semigroup: the candidate datum for a local wrap of the pattern.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WrapInstance {
    pub d: CayleyTable,
    pub labels: Vec<WrapLabel>,
    pub pattern: PartialTable,
}

impl WrapInstance {
    pub fn new(d: CayleyTable, labels: Vec<WrapLabel>, pattern: PartialTable) -> Result<Self> {
        if labels.len() != d.order() {
            return Err(Error::InvalidInput(format!(
                "{} labels for a table of order {}",
                labels.len(),
                d.order()
            )));
        }
        for l in &labels {
            match l {
                WrapLabel::InH { index } if *index >= pattern.len() => {
                    return Err(Error::InvalidInput(format!(
                        "label index {index} out of range"
                    )));
                }
                WrapLabel::Outside { word: Some(w) } if pattern.index_of(w).is_some() => {
                    return Err(Error::InvalidInput(format!(
                        "outside label '{w}' names a pattern element"
                    )));
                }
                _ => {}
            }
        }
        Ok(WrapInstance { d, labels, pattern })
    }

    /// Preimages of pattern element `h`, ascending.
    pub fn preimages(&self, h: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(x, l)| match l {
                WrapLabel::InH { index } if *index == h => Some(x),
                _ => None,
            })
            .collect()
    }

    /// All pattern-labeled elements of D, ascending.
    pub fn labeled_elements(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(x, l)| matches!(l, WrapLabel::InH { .. }).then_some(x))
            .collect()
    }

    pub fn label_index(&self, x: usize) -> Option<usize> {
        match &self.labels[x] {
            WrapLabel::InH { index } => Some(*index),
            WrapLabel::Outside { .. } => None,
        }
    }

    /// Least preimage per pattern element; errors if coverage fails.
    pub fn designated_preimages(&self) -> Result<Vec<usize>> {
        (0..self.pattern.len())
            .map(|h| {
                self.preimages(h)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::EmptyPreimage(self.pattern.name(h).to_string()))
            })
            .collect()
    }

    /// Wraps a finite semigroup around a subset of itself: the pattern is the
    /// subset, D is the semigroup, elements of K = H union H*H keep their own
    /// value as label, everything else is an anonymous sink. This realizes
    /// the constructive wrap extracted from the proof that local
    /// embeddability implies local wrappability.
    pub fn self_wrap_of_subset(ct: &CayleyTable, h: &[usize]) -> Result<WrapInstance> {
        let pattern = PartialTable::from_subset(ct, h)?;
        let mut in_k = vec![false; ct.order()];
        for &x in h {
            in_k[x] = true;
        }
        for &x in h {
            for &y in h {
                in_k[ct.mul(x, y)] = true;
            }
        }
        let labels: Vec<WrapLabel> = (0..ct.order())
            .map(|x| {
                if let Some(i) = h.iter().position(|&z| z == x) {
                    WrapLabel::InH { index: i }
                } else if in_k[x] {
                    WrapLabel::Outside {
                        word: Some(format!("e{x}")),
                    }
                } else {
                    WrapLabel::Outside { word: None }
                }
            })
            .collect();
        WrapInstance::new(ct.clone(), labels, pattern)
    }

    /// The identity wrap of a whole finite semigroup.
    pub fn self_wrap(ct: &CayleyTable) -> WrapInstance {
        let all: Vec<usize> = (0..ct.order()).collect();
        Self::self_wrap_of_subset(ct, &all).expect("total self-wrap is well-formed")
    }
}

/// Checks coverage and compatibility: every pattern element has a preimage,
/// and for every pair of pattern-labeled elements the product's label agrees
/// with the ambient product of their labels. Forced values are tracked per
/// element, so two pairs forcing different ambient words onto one
/// symbolically-labeled element also fail.
pub fn wrap_verify(wi: &WrapInstance) -> Result<bool> {
    let t = wi.pattern.len();
    if !wi.pattern.has_ambient() {
        return Err(Error::UndecidedEquality(
            "wrap verification needs a total ambient map on the pattern".into(),
        ));
    }
    for h in 0..t {
        if wi.preimages(h).is_empty() {
            return Ok(false);
        }
    }
    let n = wi.d.order();
    let mut forced: Vec<Option<String>> = vec![None; n];
    for x in 0..n {
        let Some(i) = wi.label_index(x) else { continue };
        for y in 0..n {
            let Some(j) = wi.label_index(y) else { continue };
            let amb = wi
                .pattern
                .ambient(i, j)
                .expect("ambient is total")
                .to_string();
            let p = wi.d.mul(x, y);
            match &wi.labels[p] {
                WrapLabel::InH { index } => {
                    if wi.pattern.name(*index) != amb {
                        return Ok(false);
                    }
                }
                WrapLabel::Outside { word: Some(w) } => {
                    if *w != amb {
                        return Ok(false);
                    }
                }
                WrapLabel::Outside { word: None } => {
                    // the ambient value is pinned even though the label is
                    // symbolic; it must at least stay out of the pattern and
                    // agree across all pairs that force it
                    if wi.pattern.index_of(&amb).is_some() {
                        return Ok(false);
                    }
                    match &forced[p] {
                        None => forced[p] = Some(amb),
                        Some(w) if *w != amb => return Ok(false),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Bounded wrap search: for every labeled semigroup D of order <= max_order
/// (in enumeration order), assigns labels element-by-element with forced
/// ambient values propagated onto products of labeled pairs. Candidates per
/// element run InH(0), ..., InH(t-1), Outside; the first complete labeling
/// with full coverage wins.
pub fn wrap_search(
    pattern: &PartialTable,
    max_order: usize,
    bounds: &SearchBounds,
) -> Result<SearchOutcome<WrapInstance>> {
    if !pattern.has_ambient() {
        return Err(Error::UndecidedEquality(
            "wrap search needs a total ambient map on the pattern".into(),
        ));
    }
    let mut tried = 0usize;
    for n in 1..=max_order {
        for d in enumerate_semigroups(n, EnumMode::Labeled, &bounds.enumeration)? {
            tried += 1;
            if let Some(labels) = search_labels(&d, pattern) {
                let wi = WrapInstance::new(d, labels, pattern.clone())?;
                debug_assert_eq!(wrap_verify(&wi).ok(), Some(true));
                return Ok(SearchOutcome::Witness { witness: wi });
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        space: format!("all labeled semigroups of order <= {max_order}"),
        targets_tried: tried,
    })
}

#[derive(Clone, PartialEq)]
enum Forced {
    Elem(usize),
    Out(String),
}

fn search_labels(d: &CayleyTable, pattern: &PartialTable) -> Option<Vec<WrapLabel>> {
    let n = d.order();
    let t = pattern.len();
    let mut labels: Vec<Option<usize>> = vec![None; n]; // Some(t) encodes Outside
    let mut forced: Vec<Option<Forced>> = vec![None; n];
    let mut covered = vec![0usize; t];
    if assign_label(d, pattern, 0, &mut labels, &mut forced, &mut covered) {
        let out: Vec<WrapLabel> = (0..n)
            .map(|x| match labels[x] {
                Some(i) if i < t => WrapLabel::InH { index: i },
                _ => match &forced[x] {
                    Some(Forced::Out(w)) => WrapLabel::Outside {
                        word: Some(w.clone()),
                    },
                    _ => WrapLabel::Outside { word: None },
                },
            })
            .collect();
        Some(out)
    } else {
        None
    }
}

fn assign_label(
    d: &CayleyTable,
    pattern: &PartialTable,
    x: usize,
    labels: &mut Vec<Option<usize>>,
    forced: &mut Vec<Option<Forced>>,
    covered: &mut Vec<usize>,
) -> bool {
    let n = d.order();
    let t = pattern.len();
    if x == n {
        return covered.iter().all(|&c| c > 0);
    }
    // coverage pruning: each uncovered pattern element needs a future slot
    let uncovered = covered.iter().filter(|&&c| c == 0).count();
    if uncovered > n - x {
        return false;
    }
    let candidates: Vec<usize> = match &forced[x] {
        Some(Forced::Elem(k)) => vec![*k],
        Some(Forced::Out(_)) => vec![t],
        None => (0..=t).collect(),
    };
    for cand in candidates {
        labels[x] = Some(cand);
        if cand < t {
            covered[cand] += 1;
        }
        let mut trail: Vec<usize> = Vec::new();
        if propagate(d, pattern, x, labels, forced, &mut trail)
            && assign_label(d, pattern, x + 1, labels, forced, covered)
        {
            return true;
        }
        for p in trail {
            forced[p] = None;
        }
        if cand < t {
            covered[cand] -= 1;
        }
        labels[x] = None;
    }
    false
}

/// Applies the wrap condition to every labeled pair involving the newly
/// labeled x; returns false on conflict. Newly forced cells are recorded in
/// `trail` for rollback.
fn propagate(
    d: &CayleyTable,
    pattern: &PartialTable,
    x: usize,
    labels: &mut [Option<usize>],
    forced: &mut [Option<Forced>],
    trail: &mut Vec<usize>,
) -> bool {
    let t = pattern.len();
    let Some(i) = labels[x].filter(|&v| v < t) else {
        return true; // outside labels impose nothing
    };
    for y in 0..=x {
        let Some(j) = labels[y].filter(|&v| v < t) else {
            continue;
        };
        for (u, iu, v, jv) in [(x, i, y, j), (y, j, x, i)] {
            let _ = (u, v);
            let amb = pattern.ambient(iu, jv).expect("ambient is total");
            let p = d.mul(u, v);
            let want = match pattern.index_of(amb) {
                Some(k) => Forced::Elem(k),
                None => Forced::Out(amb.to_string()),
            };
            if let Some(lbl) = labels[p] {
                // already assigned: check directly
                match (&want, lbl) {
                    (Forced::Elem(k), l) if l == *k => {}
                    (Forced::Out(w), l) if l == t => {
                        // outside slot: its pinned word must agree
                        match &forced[p] {
                            None => {
                                forced[p] = Some(Forced::Out(w.clone()));
                                trail.push(p);
                            }
                            Some(Forced::Out(prev)) if prev == w => {}
                            _ => return false,
                        }
                    }
                    _ => return false,
                }
            } else {
                match &forced[p] {
                    None => {
                        forced[p] = Some(want);
                        trail.push(p);
                    }
                    Some(prev) if *prev == want => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Least set containing the designated preimages and closed under taking
/// products that land back in the pattern's preimage.
pub fn accurate_set(wi: &WrapInstance, designated: &[usize]) -> Result<BTreeSet<usize>> {
    if designated.len() != wi.pattern.len() {
        return Err(Error::PreconditionFailed(
            "one designated preimage per pattern element".into(),
        ));
    }
    for (h, &x) in designated.iter().enumerate() {
        if wi.label_index(x) != Some(h) {
            return Err(Error::PreconditionFailed(format!(
                "designated element {x} is not a preimage of pattern element {h}"
            )));
        }
    }
    let mut acc: BTreeSet<usize> = designated.iter().copied().collect();
    loop {
        let mut added = Vec::new();
        for &u in &acc {
            for &v in &acc {
                let p = wi.d.mul(u, v);
                if !acc.contains(&p) && wi.label_index(p).is_some() {
                    added.push(p);
                }
            }
        }
        if added.is_empty() {
            return Ok(acc);
        }
        acc.extend(added);
    }
}

/// Relabels every pattern preimage outside the accurate set to the symbolic
/// sink, repeating to a fixpoint. Coverage survives because designated
/// preimages are accurate by construction; compatibility survives because
/// the accurate set is product-closed back into the preimage.
pub fn tighten(wi: &WrapInstance) -> Result<WrapInstance> {
    if wrap_verify(wi)? != true {
        return Err(Error::PreconditionFailed(
            "tighten requires a verified wrap".into(),
        ));
    }
    let designated = wi.designated_preimages()?;
    let mut cur = wi.clone();
    loop {
        let acc = accurate_set(&cur, &designated)?;
        let stale: Vec<usize> = cur
            .labeled_elements()
            .into_iter()
            .filter(|x| !acc.contains(x))
            .collect();
        if stale.is_empty() {
            return Ok(cur);
        }
        for x in stale {
            cur.labels[x] = WrapLabel::Outside { word: None };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::EnumBounds;
    use crate::partial::table::PartialTable;
    use crate::rewriting::presentations::{system_a, system_b};
    use crate::rewriting::Word;
    use std::collections::BTreeMap;

    fn z2() -> CayleyTable {
        CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn self_wrap_verifies() {
        let wi = WrapInstance::self_wrap(&z2());
        assert!(wrap_verify(&wi).unwrap());
    }

    #[test]
    fn prop_style_subset_wraps_verify() {
        let ct = z2();
        for mask in 1u32..4 {
            let h: Vec<usize> = (0..2).filter(|&i| mask & (1 << i) != 0).collect();
            let wi = WrapInstance::self_wrap_of_subset(&ct, &h).unwrap();
            assert!(wrap_verify(&wi).unwrap(), "subset {h:?}");
        }
    }

    #[test]
    fn broken_labeling_fails() {
        let mut wi = WrapInstance::self_wrap(&z2());
        // claim both elements are preimages of the identity
        wi.labels[1] = WrapLabel::InH { index: 0 };
        assert!(!wrap_verify(&wi).unwrap());
    }

    #[test]
    fn conflicting_forced_values_fail() {
        // D = Z2 x Z2-like? simpler: 3-element null semigroup, two elements
        // labeled with pattern elements whose distinct out-of-set products
        // collide on the same sink element.
        let names: Vec<String> = vec!["p".into(), "q".into()];
        let mut product = BTreeMap::new();
        product.insert((0, 0), 1); // p*p = q, say
        let mut ambient = BTreeMap::new();
        ambient.insert((0, 0), "q".to_string());
        ambient.insert((0, 1), "w1".to_string());
        ambient.insert((1, 0), "w2".to_string());
        ambient.insert((1, 1), "w3".to_string());
        let pattern = PartialTable::new(names, &product, Some(&ambient)).unwrap();
        // null semigroup of order 3: all products are element 2
        let d = CayleyTable::new(vec![vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap();
        let labels = vec![
            WrapLabel::InH { index: 0 },
            WrapLabel::InH { index: 1 },
            WrapLabel::Outside { word: None },
        ];
        // p*p should be q (pattern element), but lands on the sink
        let wi = WrapInstance::new(d, labels, pattern).unwrap();
        assert!(!wrap_verify(&wi).unwrap());
    }

    #[test]
    fn wrap_search_self_wrap_exists() {
        let ct = z2();
        let pattern = PartialTable::from_table(&ct);
        let out = wrap_search(&pattern, 2, &SearchBounds::default()).unwrap();
        match out {
            SearchOutcome::Witness { witness } => {
                assert!(wrap_verify(&witness).unwrap());
                assert_eq!(witness.d.order(), 2);
            }
            SearchOutcome::Exhausted { .. } => panic!("a finite semigroup wraps itself"),
        }
    }

    #[test]
    fn wrap_search_exhausts_bicyclic() {
        let b = system_b();
        let words: Vec<Word> = ["1", "a", "b", "ba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&b, &words, None).unwrap();
        let out = wrap_search(&pt, 3, &SearchBounds::default()).unwrap();
        assert!(!out.is_witness());
    }

    #[test]
    fn wrap_search_exhausts_aab() {
        let a = system_a();
        let words: Vec<Word> = ["a", "b", "ab", "aba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&a, &words, None).unwrap();
        let out = wrap_search(&pt, 3, &SearchBounds::default()).unwrap();
        assert!(!out.is_witness());
    }

    #[test]
    fn accurate_set_and_tighten_junk_element() {
        // D: 3-element semigroup; pattern: a single idempotent h with one
        // designated preimage 0 and a junk preimage 1 not generated by it.
        // table: x*y = x for x,y in {0,1} (left zero on {0,1}); 2 absorbing? keep
        // it associative: left-zero on all three elements.
        let d = CayleyTable::new(vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        let names: Vec<String> = vec!["h".into()];
        let mut product = BTreeMap::new();
        product.insert((0, 0), 0);
        let mut ambient = BTreeMap::new();
        ambient.insert((0, 0), "h".to_string());
        let pattern = PartialTable::new(names, &product, Some(&ambient)).unwrap();
        let labels = vec![
            WrapLabel::InH { index: 0 },
            WrapLabel::InH { index: 0 },
            WrapLabel::Outside { word: None },
        ];
        let wi = WrapInstance::new(d, labels, pattern).unwrap();
        assert!(wrap_verify(&wi).unwrap());

        let acc = accurate_set(&wi, &[0]).unwrap();
        assert_eq!(acc.into_iter().collect::<Vec<_>>(), vec![0]);

        let tight = tighten(&wi).unwrap();
        assert_eq!(tight.preimages(0), vec![0]);
        assert!(wrap_verify(&tight).unwrap());
        // idempotence
        let again = tighten(&tight).unwrap();
        assert_eq!(again.labels, tight.labels);
    }

    #[test]
    fn tighten_fixpoint_on_accurate_wraps() {
        let ct = z2();
        let wi = WrapInstance::self_wrap(&ct);
        let tight = tighten(&wi).unwrap();
        assert_eq!(tight.labels, wi.labels);
    }

    #[test]
    fn exhausted_is_reproducible() {
        let b = system_b();
        let words: Vec<Word> = ["1", "a", "b", "ba"].iter().map(|s| Word::parse(s)).collect();
        let pt = PartialTable::induce(&b, &words, None).unwrap();
        let bounds = SearchBounds {
            enumeration: EnumBounds::default(),
            ..SearchBounds::default()
        };
        let a = wrap_search(&pt, 2, &bounds).unwrap();
        let b2 = wrap_search(&pt, 2, &bounds).unwrap();
        match (a, b2) {
            (
                SearchOutcome::Exhausted {
                    targets_tried: x, ..
                },
                SearchOutcome::Exhausted {
                    targets_tried: y, ..
                },
            ) => assert_eq!(x, y),
            _ => panic!("expected exhaustion at order 2"),
        }
    }
}
