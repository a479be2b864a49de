use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::partial::{PartialAssociativity, PartialTable};

/// A non-embeddability certificate: a configuration inside a partial table
/// that contradicts a law holding in every finite semigroup, so no finite
/// semigroup of any order admits a product-preserving injection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    /// stable id: "ppq" | "six-set" | "prob" | "one-sided-unit"
    pub pattern: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// role -> element name
    pub elements: BTreeMap<String, String>,
    /// the finite-semigroup law the configuration contradicts
    pub law: String,
}

/// Runs every pattern matcher; `prob_ns` selects which exponents the prob
/// matcher tries. The least witness per pattern is reported.
pub fn detect_obstruction(pt: &PartialTable, prob_ns: &[usize]) -> Vec<ObstructionCertificate> {
    if pt.check_partial_associativity() != PartialAssociativity::Ok {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some(c) = match_ppq(pt) {
        out.push(c);
    }
    if let Some(c) = match_six_set(pt) {
        out.push(c);
    }
    for &n in prob_ns {
        if n < 2 {
            continue;
        }
        if let Some(c) = match_prob(pt, n) {
            out.push(c);
            break;
        }
    }
    if let Some(c) = match_one_sided_unit(pt) {
        out.push(c);
    }
    out
}

/// Re-checks a certificate against the table it claims to match.
pub fn verify_certificate(pt: &PartialTable, cert: &ObstructionCertificate) -> bool {
    let get = |role: &str| cert.elements.get(role).and_then(|n| pt.index_of(n));
    match cert.pattern.as_str() {
        "ppq" => {
            let (Some(x), Some(y)) = (get("x"), get("y")) else {
                return false;
            };
            ppq_fires(pt, x, y)
        }
        "six-set" => {
            let (Some(x), Some(y)) = (get("x"), get("y")) else {
                return false;
            };
            six_set_fires(pt, x, y)
        }
        "prob" => {
            let (Some(x), Some(y), Some(n)) = (get("x"), get("y"), cert.n) else {
                return false;
            };
            prob_fires(pt, x, y, n)
        }
        "one-sided-unit" => {
            let (Some(u), Some(x), Some(y)) = (get("unit"), get("x"), get("y")) else {
                return false;
            };
            one_sided_unit_fires(pt, u, x, y)
        }
        _ => false,
    }
}

fn ppq_fires(pt: &PartialTable, x: usize, y: usize) -> bool {
    let Some(xy) = pt.product(x, y) else {
        return false;
    };
    pt.product(x, xy) == Some(x)
        && matches!(pt.product(xy, x), Some(xyx) if xyx != x)
}

fn match_ppq(pt: &PartialTable) -> Option<ObstructionCertificate> {
    let t = pt.len();
    for x in 0..t {
        for y in 0..t {
            if ppq_fires(pt, x, y) {
                let xy = pt.product(x, y).unwrap();
                let xyx = pt.product(xy, x).unwrap();
                let mut elements = BTreeMap::new();
                elements.insert("x".into(), pt.name(x).to_string());
                elements.insert("y".into(), pt.name(y).to_string());
                elements.insert("xy".into(), pt.name(xy).to_string());
                elements.insert("xyx".into(), pt.name(xyx).to_string());
                return Some(ObstructionCertificate {
                    pattern: "ppq".into(),
                    n: None,
                    elements,
                    law: "in a finite semigroup, ppq = p forces pq into the cyclic part of p, \
                          so pq commutes with p and pqp = p"
                        .into(),
                });
            }
        }
    }
    None
}

fn six_set_fires(pt: &PartialTable, x: usize, y: usize) -> bool {
    let Some(yx) = pt.product(y, x) else {
        return false;
    };
    let Some(yxx) = pt.product(yx, x) else {
        return false;
    };
    let Some(yxy) = pt.product(yx, y) else {
        return false;
    };
    if pt.product(yxx, y) != Some(yx) {
        return false; // hypothesis yxxy = yx
    }
    let Some(prod) = pt.product(yxy, yxx) else {
        return false;
    };
    yxy != yx && prod != yx
}

fn match_six_set(pt: &PartialTable) -> Option<ObstructionCertificate> {
    let t = pt.len();
    for x in 0..t {
        for y in 0..t {
            if six_set_fires(pt, x, y) {
                let yx = pt.product(y, x).unwrap();
                let yxx = pt.product(yx, x).unwrap();
                let yxy = pt.product(yx, y).unwrap();
                let prod = pt.product(yxy, yxx).unwrap();
                let mut elements = BTreeMap::new();
                elements.insert("x".into(), pt.name(x).to_string());
                elements.insert("y".into(), pt.name(y).to_string());
                elements.insert("yx".into(), pt.name(yx).to_string());
                elements.insert("yxx".into(), pt.name(yxx).to_string());
                elements.insert("yxy".into(), pt.name(yxy).to_string());
                elements.insert("yxy_yxx".into(), pt.name(prod).to_string());
                return Some(ObstructionCertificate {
                    pattern: "six-set".into(),
                    n: None,
                    elements,
                    law: "in a finite semigroup, yxxy = yx forces yxy = yx or \
                          (yxy)(yxx) = yx"
                        .into(),
                });
            }
        }
    }
    None
}

fn prob_fires(pt: &PartialTable, x: usize, y: usize, n: usize) -> bool {
    let Some(xy) = pt.product(x, y) else {
        return false;
    };
    let Some(yx) = pt.product(y, x) else {
        return false;
    };
    // hypothesis (yx)(xy)^n = (yx)^n, both by left folds
    let mut lhs = yx;
    for _ in 0..n {
        match pt.product(lhs, xy) {
            Some(v) => lhs = v,
            None => return false,
        }
    }
    let mut rhs = yx;
    for _ in 1..n {
        match pt.product(rhs, yx) {
            Some(v) => rhs = v,
            None => return false,
        }
    }
    if lhs != rhs {
        return false;
    }
    // every admissible m must be present and fail the commutation equation
    let Some(mut two_side) = pt.product(yx, yx) else {
        return false;
    };
    let mut one_side = yx;
    for m in 1..(n * n + 2 * n) {
        two_side = match pt.product(two_side, xy) {
            Some(v) => v,
            None => return false,
        };
        one_side = match pt.product(one_side, xy) {
            Some(v) => v,
            None => return false,
        };
        if m % n != 0 {
            match pt.product(one_side, yx) {
                Some(closed) => {
                    if closed == two_side {
                        return false; // the conclusion holds; no obstruction
                    }
                }
                None => return false,
            }
        }
    }
    true
}

fn match_prob(pt: &PartialTable, n: usize) -> Option<ObstructionCertificate> {
    let t = pt.len();
    for x in 0..t {
        for y in 0..t {
            if prob_fires(pt, x, y, n) {
                let mut elements = BTreeMap::new();
                elements.insert("x".into(), pt.name(x).to_string());
                elements.insert("y".into(), pt.name(y).to_string());
                return Some(ObstructionCertificate {
                    pattern: "prob".into(),
                    n: Some(n),
                    elements,
                    law: format!(
                        "in a finite semigroup, (yx)(xy)^{n} = (yx)^{n} forces some m < \
                         {} with {n} not dividing m and (yx)^2(xy)^m = (yx)(xy)^m(yx)",
                        n * n + 2 * n
                    ),
                });
            }
        }
    }
    None
}

fn one_sided_unit_fires(pt: &PartialTable, u: usize, x: usize, y: usize) -> bool {
    let t = pt.len();
    let is_unit = (0..t).all(|w| pt.product(u, w) == Some(w) && pt.product(w, u) == Some(w));
    if !is_unit {
        return false;
    }
    pt.product(x, y) == Some(u) && matches!(pt.product(y, x), Some(z) if z != u)
}

fn match_one_sided_unit(pt: &PartialTable) -> Option<ObstructionCertificate> {
    let t = pt.len();
    for u in 0..t {
        for x in 0..t {
            for y in 0..t {
                if one_sided_unit_fires(pt, u, x, y) {
                    let z = pt.product(y, x).unwrap();
                    let mut elements = BTreeMap::new();
                    elements.insert("unit".into(), pt.name(u).to_string());
                    elements.insert("x".into(), pt.name(x).to_string());
                    elements.insert("y".into(), pt.name(y).to_string());
                    elements.insert("yx".into(), pt.name(z).to_string());
                    return Some(ObstructionCertificate {
                        pattern: "one-sided-unit".into(),
                        n: None,
                        elements,
                        law: "in a finite monoid a one-sided inverse is two-sided: \
                              xy = 1 forces yx = 1"
                            .into(),
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::PartialTable;
    use crate::rewriting::presentations::{system_a, system_b};
    use crate::rewriting::Word;

    fn induce(rs: &crate::rewriting::RewritingSystem, words: &[&str]) -> PartialTable {
        let ws: Vec<Word> = words.iter().map(|s| Word::parse(s)).collect();
        PartialTable::induce(rs, &ws, None).unwrap()
    }

    #[test]
    fn aab_pattern_yields_ppq() {
        let pt = induce(&system_a(), &["a", "b", "ab", "aba"]);
        let certs = detect_obstruction(&pt, &[2]);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].pattern, "ppq");
        assert_eq!(certs[0].elements["x"], "a");
        assert_eq!(certs[0].elements["y"], "b");
        assert!(verify_certificate(&pt, &certs[0]));
    }

    #[test]
    fn bicyclic_pattern_yields_one_sided_unit() {
        let pt = induce(&system_b(), &["1", "a", "b", "ba"]);
        let certs = detect_obstruction(&pt, &[2]);
        let ids: Vec<&str> = certs.iter().map(|c| c.pattern.as_str()).collect();
        assert!(ids.contains(&"one-sided-unit"), "got {ids:?}");
        let c = certs.iter().find(|c| c.pattern == "one-sided-unit").unwrap();
        assert_eq!(c.elements["unit"], "1");
        assert_eq!(c.elements["yx"], "ba");
        assert!(verify_certificate(&pt, c));
    }

    #[test]
    fn bicyclic_six_words_yield_six_set() {
        // the six roles collapse to five elements in B: yxy = bab = b is the
        // role collision, and (yxy)(yxx) = babbaa = bbaa stays distinct
        let pt = induce(&system_b(), &["a", "b", "ba", "baa", "bbaa"]);
        let certs = detect_obstruction(&pt, &[2]);
        let c = certs
            .iter()
            .find(|c| c.pattern == "six-set")
            .expect("six-set certificate");
        assert_eq!(c.elements["x"], "a");
        assert_eq!(c.elements["y"], "b");
        assert_eq!(c.elements["yxy_yxx"], "bbaa");
        assert!(verify_certificate(&pt, c));
    }

    #[test]
    fn free_pattern_yields_nothing() {
        let rs = crate::rewriting::presentations::system_free(vec!['a', 'b']).unwrap();
        let pt = induce(&rs, &["a", "b", "ab"]);
        assert!(detect_obstruction(&pt, &[2, 3]).is_empty());
    }

    #[test]
    fn prob_matcher_fires_on_synthetic_chain() {
        // Hand-built pattern realizing the n = 2 hypothesis with every
        // admissible conclusion failing. With c_m = (yx)(xy)^m, the
        // hypothesis identifies c_2 with (yx)^2, hence (yx)^2(xy)^m = c_{m+2};
        // the conclusion equations then read c_{m+2} = c_m(yx) = e_m, and all
        // e_m are fresh elements here.
        let mut names: Vec<String> = vec!["x".into(), "y".into(), "xy".into(), "yx".into()];
        let mut product: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let (x, y, xy, yx) = (0usize, 1usize, 2usize, 3usize);
        product.insert((x, y), xy);
        product.insert((y, x), yx);
        let mut c = vec![yx];
        for m in 1..=9 {
            names.push(format!("c{m}"));
            let cm = names.len() - 1;
            product.insert((c[m - 1], xy), cm);
            c.push(cm);
        }
        product.insert((yx, yx), c[2]); // the hypothesis: (yx)(xy)^2 = (yx)^2
        for m in [1usize, 3, 5, 7] {
            names.push(format!("e{m}"));
            let em = names.len() - 1;
            product.insert((c[m], yx), em);
        }
        let pt = PartialTable::new(names, &product, None).unwrap();
        assert_eq!(
            pt.check_partial_associativity(),
            crate::partial::PartialAssociativity::Ok
        );
        let certs = detect_obstruction(&pt, &[2]);
        let cert = certs.iter().find(|c| c.pattern == "prob").expect("prob fires");
        assert_eq!(cert.n, Some(2));
        assert!(verify_certificate(&pt, cert));
    }
}
