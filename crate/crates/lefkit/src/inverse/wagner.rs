use serde::{Deserialize, Serialize};

use crate::inverse::pb::PartialBijection;
use crate::inverse::structure::InverseTable;

/// Verification record for the right-translation representation. The
/// construction (domain {x : x a a^-1 = x}, map x -> x a) is one concrete
/// realization, so the checks are part of the contract rather than assumed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WagnerPrestonReport {
    pub injective: bool,
    pub multiplicative: bool,
    pub violations: Vec<String>,
}

impl WagnerPrestonReport {
    pub fn pass(&self) -> bool {
        self.injective && self.multiplicative
    }
}

/// Represents each element `a` by the partial bijection x -> x a with domain
/// {x : x a a^-1 = x}, on the element set as universe, and verifies that the
/// result is an injective multiplicative map into partial bijections.
pub fn wagner_preston(it: &InverseTable) -> (Vec<PartialBijection>, WagnerPrestonReport) {
    let n = it.order();
    let images: Vec<PartialBijection> = (0..n)
        .map(|a| {
            let aa1 = it.mul(a, it.inv(a));
            let map = (0..n)
                .filter(|&x| it.mul(x, aa1) == x)
                .map(|x| (x, it.mul(x, a)))
                .collect();
            PartialBijection::new(n, map).expect("right translation on S a a^-1 is injective")
        })
        .collect();

    let mut violations = Vec::new();
    let mut injective = true;
    for a in 0..n {
        for b in 0..a {
            if images[a] == images[b] {
                injective = false;
                violations.push(format!("elements {b} and {a} share an image"));
            }
        }
    }
    let mut multiplicative = true;
    for a in 0..n {
        for b in 0..n {
            let lhs = images[a].compose(&images[b]).expect("common universe");
            if lhs != images[it.mul(a, b)] {
                multiplicative = false;
                violations.push(format!("image of {a}*{b} differs from the composite"));
            }
        }
    }
    (
        images,
        WagnerPrestonReport {
            injective,
            multiplicative,
            violations,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::CayleyTable;
    use crate::inverse::pb::{pb_semigroup, symmetric_inverse_monoid};
    use crate::inverse::structure::inverse_structure;

    #[test]
    fn two_chain_semilattice() {
        // elements 0 < 1 under meet; 1 is the identity
        let meet = CayleyTable::new(vec![vec![0, 0], vec![0, 1]]).unwrap();
        let it = inverse_structure(&meet).unwrap();
        let (images, report) = wagner_preston(&it);
        assert!(report.pass());
        assert_eq!(images[1], PartialBijection::identity(2));
        assert_eq!(
            images[0],
            PartialBijection::new(2, [(0, 0)].into_iter().collect()).unwrap()
        );
    }

    #[test]
    fn z2_gives_two_permutations() {
        let z2 = CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let it = inverse_structure(&z2).unwrap();
        let (images, report) = wagner_preston(&it);
        assert!(report.pass());
        for im in &images {
            assert_eq!(im.rank(), 2);
        }
        assert_eq!(images[0], PartialBijection::identity(2));
    }

    #[test]
    fn i2_round_trips() {
        let (_, it) = symmetric_inverse_monoid(2).unwrap();
        let (images, report) = wagner_preston(&it);
        assert!(report.pass());
        // the images form a closed inverse subsemigroup of I_7 isomorphic to I_2
        let sub = pb_semigroup(&images).unwrap();
        assert_eq!(sub.order(), 7);
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(sub.mul(i, j), it.mul(i, j));
            }
        }
        assert_eq!(sub.involution(), it.involution());
    }
}
