use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::inverse::pb::PartialBijection;
use crate::inverse::structure::InverseTable;

/// An ambient inverse semigroup with computable products and inverses; the
/// symmetrisation helpers are generic over it.
pub trait InverseAmbient {
    type Elem: Clone + Ord;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
}

impl InverseAmbient for InverseTable {
    type Elem = usize;
    fn mul(&self, x: &usize, y: &usize) -> usize {
        InverseTable::mul(self, *x, *y)
    }
    fn inv(&self, x: &usize) -> usize {
        InverseTable::inv(self, *x)
    }
}

/// The symmetric inverse monoid on a fixed universe, used as an ambient
/// without materializing its element list.
pub struct PbUniverse {
    pub universe: usize,
}

impl InverseAmbient for PbUniverse {
    type Elem = PartialBijection;
    fn mul(&self, x: &PartialBijection, y: &PartialBijection) -> PartialBijection {
        x.compose(y).expect("common universe")
    }
    fn inv(&self, x: &PartialBijection) -> PartialBijection {
        x.invert()
    }
}

/// The one-shot candidate K = H u H^-1 u HH^-1 u H^-1H. This need not
/// satisfy the closure conditions; `is_symmetrised` tests them independently
/// and `symmetrise_closure` is the fallback that always does.
pub fn symmetrise<A: InverseAmbient>(h: &BTreeSet<A::Elem>, amb: &A) -> BTreeSet<A::Elem> {
    let mut k: BTreeSet<A::Elem> = h.clone();
    for x in h {
        k.insert(amb.inv(x));
    }
    for x in h {
        for y in h {
            k.insert(amb.mul(x, &amb.inv(y)));
            k.insert(amb.mul(&amb.inv(x), y));
        }
    }
    k
}

/// Tests K = K^-1, KK^-1 subset of K, K^-1K subset of K.
pub fn is_symmetrised<A: InverseAmbient>(k: &BTreeSet<A::Elem>, amb: &A) -> bool {
    for x in k {
        if !k.contains(&amb.inv(x)) {
            return false;
        }
    }
    for x in k {
        for y in k {
            if !k.contains(&amb.mul(x, &amb.inv(y))) {
                return false;
            }
            if !k.contains(&amb.mul(&amb.inv(x), y)) {
                return false;
            }
        }
    }
    true
}

/// Iterates the one-shot step to a fixpoint, which is always symmetrised;
/// fails if the set grows past `cap`.
pub fn symmetrise_closure<A: InverseAmbient>(
    h: &BTreeSet<A::Elem>,
    amb: &A,
    cap: usize,
) -> Result<BTreeSet<A::Elem>> {
    let mut k = h.clone();
    loop {
        let next = symmetrise(&k, amb);
        if next.len() > cap {
            return Err(Error::CapExceeded {
                found: next.len(),
                cap,
            });
        }
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}
