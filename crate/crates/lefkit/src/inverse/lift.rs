use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{regular_representation, Transformation};
use crate::inverse::pb::PartialBijection;
use crate::inverse::structure::InverseTable;

/// Verification record for the restriction lift. Each clause is checked on
/// every element or pair it applies to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftReport {
    /// each lifted map is a bijection from Im(f(x^-1)) onto Im(f(x))
    pub bijections_ok: bool,
    /// idempotents lift to partial identities
    pub idempotents_ok: bool,
    /// the lift is injective on K
    pub injective: bool,
    /// lift(xy) = lift(x) lift(y) whenever x, y, xy are in K
    pub multiplicative: bool,
    pub violations: Vec<String>,
}

impl LiftReport {
    pub fn pass(&self) -> bool {
        self.bijections_ok && self.idempotents_ok && self.injective && self.multiplicative
    }
}

/// K^3 = {xyz : x, y, z in K} inside the ambient table.
pub fn k_cubed(ambient: &InverseTable, k: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &x in k {
        for &y in k {
            let xy = ambient.mul(x, y);
            for &z in k {
                out.insert(ambient.mul(xy, z));
            }
        }
    }
    out
}

/// Restricts each transformation f(x) to the image of f(x^-1), producing a
/// partial bijection from Im(f(x^-1)) onto Im(f(x)).
///
/// `f` must be an injective map on K^3 preserving every product that stays
/// inside K^3; this is verified before anything is lifted and a violation
/// aborts with the failed clause. The per-element and per-pair conclusions
/// are then checked and reported.
pub fn ilef_lift(
    ambient: &InverseTable,
    k: &BTreeSet<usize>,
    f: &BTreeMap<usize, Transformation>,
) -> Result<(BTreeMap<usize, PartialBijection>, LiftReport)> {
    if k.is_empty() {
        return Err(Error::InvalidInput("empty element set".into()));
    }
    for &x in k {
        if x >= ambient.order() {
            return Err(Error::InvalidInput(format!("element {x} out of range")));
        }
        if !k.contains(&ambient.inv(x)) {
            return Err(Error::PreconditionFailed(format!(
                "set not closed under inversion: missing inverse of {x}"
            )));
        }
    }
    let k3 = k_cubed(ambient, k);
    let mut degree = None;
    for &u in &k3 {
        match f.get(&u) {
            None => {
                return Err(Error::PreconditionFailed(format!(
                    "map not defined on all of K^3: missing element {u}"
                )))
            }
            Some(t) => match degree {
                None => degree = Some(t.degree()),
                Some(d) if d != t.degree() => {
                    return Err(Error::UniverseMismatch(d, t.degree()))
                }
                _ => {}
            },
        }
    }
    let degree = degree.expect("nonempty K^3");
    // injectivity on K^3
    let k3v: Vec<usize> = k3.iter().copied().collect();
    for (a, &u) in k3v.iter().enumerate() {
        for &v in &k3v[..a] {
            if f[&u] == f[&v] {
                return Err(Error::PreconditionFailed(format!(
                    "map identifies elements {v} and {u}"
                )));
            }
        }
    }
    // multiplicativity where the product stays in K^3
    for &u in &k3 {
        for &v in &k3 {
            let uv = ambient.mul(u, v);
            if k3.contains(&uv) && f[&u].compose(&f[&v])? != f[&uv] {
                return Err(Error::PreconditionFailed(format!(
                    "map fails the product {u}*{v}"
                )));
            }
        }
    }

    let mut lift: BTreeMap<usize, PartialBijection> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut bijections_ok = true;
    for &x in k {
        let dom = f[&ambient.inv(x)].image_set();
        let tx = &f[&x];
        let map: BTreeMap<usize, usize> = dom.iter().map(|&d| (d, tx.apply(d))).collect();
        match PartialBijection::new(degree, map) {
            Ok(pb) => {
                let expected_range = tx.image_set();
                if pb.range() != expected_range {
                    bijections_ok = false;
                    violations.push(format!(
                        "lift of {x} does not map onto the image of its transformation"
                    ));
                }
                lift.insert(x, pb);
            }
            Err(_) => {
                bijections_ok = false;
                violations.push(format!(
                    "restriction of {x} is not injective on the inverse image"
                ));
                lift.insert(x, PartialBijection::empty(degree));
            }
        }
    }

    let mut idempotents_ok = true;
    for &x in k {
        if ambient.mul(x, x) == x && !lift[&x].is_partial_identity() {
            idempotents_ok = false;
            violations.push(format!("idempotent {x} does not lift to a partial identity"));
        }
    }

    let mut injective = true;
    let kv: Vec<usize> = k.iter().copied().collect();
    for (a, &x) in kv.iter().enumerate() {
        for &y in &kv[..a] {
            if lift[&x] == lift[&y] {
                injective = false;
                violations.push(format!("lift identifies {y} and {x}"));
            }
        }
    }

    let mut multiplicative = true;
    for &x in k {
        for &y in k {
            let xy = ambient.mul(x, y);
            if k.contains(&xy) && lift[&x].compose(&lift[&y])? != lift[&xy] {
                multiplicative = false;
                violations.push(format!("lift fails the product {x}*{y}"));
            }
        }
    }

    Ok((
        lift,
        LiftReport {
            bijections_ok,
            idempotents_ok,
            injective,
            multiplicative,
            violations,
        },
    ))
}

/// The regular representation of the ambient, cut down to the elements that
/// need images: the standard way to feed `ilef_lift`.
pub fn regular_rep_map(
    ambient: &InverseTable,
    elements: &BTreeSet<usize>,
) -> BTreeMap<usize, Transformation> {
    let rep = regular_representation(ambient.cayley());
    elements
        .iter()
        .map(|&x| (x, rep.elements()[x].clone()))
        .collect()
}
