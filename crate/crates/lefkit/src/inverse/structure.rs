use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::CayleyTable;

/// A finite inverse semigroup: a Cayley table with the involution that sends
/// each element to its unique generalized inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTable {
    cayley: CayleyTable,
    inv: Vec<usize>,
}

impl InverseTable {
    /// Validates the partner identities and the uniqueness of each partner.
    pub fn new(cayley: CayleyTable, inv: Vec<usize>) -> Result<Self> {
        let n = cayley.order();
        if inv.len() != n || inv.iter().any(|&y| y >= n) {
            return Err(Error::InvalidInput("involution has wrong shape".into()));
        }
        for x in 0..n {
            let y = inv[x];
            if cayley.mul(cayley.mul(x, y), x) != x || cayley.mul(cayley.mul(y, x), y) != y {
                return Err(Error::InvalidInput(format!(
                    "claimed inverse of {x} fails the partner identities"
                )));
            }
        }
        match check_inverse(&cayley) {
            InverseCheck::Inverse { inv: found } if found == inv => Ok(InverseTable { cayley, inv }),
            InverseCheck::Inverse { .. } => Err(Error::InvalidInput(
                "involution disagrees with the unique partners".into(),
            )),
            InverseCheck::NotInverse { element, partners } => Err(Error::InvalidInput(format!(
                "element {element} has {partners} partners; table is not inverse"
            ))),
        }
    }

    pub fn order(&self) -> usize {
        self.cayley.order()
    }

    pub fn cayley(&self) -> &CayleyTable {
        &self.cayley
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley.mul(x, y)
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn involution(&self) -> &[usize] {
        &self.inv
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.cayley.idempotent_set()
    }

    /// Natural partial order: x <= y iff x = (x x^-1) y.
    pub fn leq_natural(&self, x: usize, y: usize) -> bool {
        self.mul(self.mul(x, self.inv(x)), y) == x
    }

    /// Position of each subset element's inverse within the subset, if the
    /// subset is closed under inversion.
    pub fn subset_inverse_map(&self, subset: &[usize]) -> Result<Vec<usize>> {
        subset
            .iter()
            .map(|&x| {
                subset.iter().position(|&z| z == self.inv(x)).ok_or_else(|| {
                    Error::PreconditionFailed(format!(
                        "subset not closed under inversion: missing inverse of {x}"
                    ))
                })
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for InverseTable {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
            inv: Vec<usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.table.len() != raw.order {
            return Err(serde::de::Error::custom("order/table mismatch"));
        }
        let cayley = CayleyTable::new(raw.table).map_err(serde::de::Error::custom)?;
        InverseTable::new(cayley, raw.inv).map_err(serde::de::Error::custom)
    }
}

/// Classification of a table by the unique-partner property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum InverseCheck {
    Inverse { inv: Vec<usize> },
    NotInverse { element: usize, partners: usize },
}

fn check_inverse(cayley: &CayleyTable) -> InverseCheck {
    let n = cayley.order();
    let mut inv = vec![0usize; n];
    for x in 0..n {
        let partners: Vec<usize> = (0..n)
            .filter(|&y| {
                cayley.mul(cayley.mul(x, y), x) == x && cayley.mul(cayley.mul(y, x), y) == y
            })
            .collect();
        if partners.len() != 1 {
            return InverseCheck::NotInverse {
                element: x,
                partners: partners.len(),
            };
        }
        inv[x] = partners[0];
    }
    InverseCheck::Inverse { inv }
}

/// Finds for each element the unique partner y with xyx = x and yxy = y, or
/// reports the first element where existence or uniqueness fails.
pub fn inverse_structure(cayley: &CayleyTable) -> Result<InverseTable> {
    match check_inverse(cayley) {
        InverseCheck::Inverse { inv } => Ok(InverseTable {
            cayley: cayley.clone(),
            inv,
        }),
        InverseCheck::NotInverse { element, partners } => Err(Error::PreconditionFailed(format!(
            "not an inverse semigroup: element {element} has {partners} partners"
        ))),
    }
}

/// Non-failing variant for scans.
pub fn classify_inverse(cayley: &CayleyTable) -> InverseCheck {
    check_inverse(cayley)
}
