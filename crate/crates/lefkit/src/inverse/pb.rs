use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::CayleyTable;
use crate::inverse::structure::InverseTable;

/// A partial bijection on `0..universe`, acting on the right. Composition
/// `fg` has domain {d in dom f : d f in dom g}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    universe: usize,
    map: BTreeMap<usize, usize>,
}

impl PartialBijection {
    pub fn new(universe: usize, map: BTreeMap<usize, usize>) -> Result<Self> {
        let mut seen = vec![false; universe];
        for (&d, &v) in &map {
            if d >= universe || v >= universe {
                return Err(Error::InvalidInput(format!(
                    "entry {d} -> {v} out of universe {universe}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidInput(format!("value {v} hit twice")));
            }
            seen[v] = true;
        }
        Ok(PartialBijection { universe, map })
    }

    pub fn empty(universe: usize) -> Self {
        PartialBijection {
            universe,
            map: BTreeMap::new(),
        }
    }

    pub fn identity(universe: usize) -> Self {
        PartialBijection {
            universe,
            map: (0..universe).map(|x| (x, x)).collect(),
        }
    }

    /// The identity restricted to `points`.
    pub fn partial_identity(universe: usize, points: &[usize]) -> Result<Self> {
        Self::new(universe, points.iter().map(|&x| (x, x)).collect())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(&x).copied()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.map.keys().copied().collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.map.values().copied().collect();
        r.sort_unstable();
        r
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&d, &v)| (d, v))
    }

    pub fn is_partial_identity(&self) -> bool {
        self.map.iter().all(|(&d, &v)| d == v)
    }

    pub fn compose(&self, other: &PartialBijection) -> Result<PartialBijection> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(self.universe, other.universe));
        }
        let map: BTreeMap<usize, usize> = self
            .map
            .iter()
            .filter_map(|(&d, &mid)| other.map.get(&mid).map(|&v| (d, v)))
            .collect();
        Ok(PartialBijection {
            universe: self.universe,
            map,
        })
    }

    pub fn invert(&self) -> PartialBijection {
        PartialBijection {
            universe: self.universe,
            map: self.map.iter().map(|(&d, &v)| (v, d)).collect(),
        }
    }

    /// Natural partial order: self is a restriction of other.
    pub fn leq_natural(&self, other: &PartialBijection) -> Result<bool> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(self.universe, other.universe));
        }
        Ok(self
            .map
            .iter()
            .all(|(&d, &v)| other.map.get(&d) == Some(&v)))
    }
}

impl Serialize for PartialBijection {
    fn serialize<S>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        #[derive(Serialize)]
        struct Raw<'a> {
            universe: usize,
            map: BTreeMap<String, usize>,
            #[serde(skip)]
            _marker: &'a (),
        }
        Raw {
            universe: self.universe,
            map: self
                .map
                .iter()
                .map(|(&d, &v)| (d.to_string(), v))
                .collect(),
            _marker: &(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartialBijection {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            universe: usize,
            map: BTreeMap<String, usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut map = BTreeMap::new();
        for (k, v) in raw.map {
            let d: usize = k
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad domain point '{k}'")))?;
            map.insert(d, v);
        }
        PartialBijection::new(raw.universe, map).map_err(serde::de::Error::custom)
    }
}

/// Every partial bijection on `0..universe`, ordered by (domain bitmask,
/// image tuple). The symmetric inverse monoid I_n.
pub fn all_partial_bijections(universe: usize) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << universe) {
        let domain: Vec<usize> = (0..universe).filter(|&i| mask & (1 << i) != 0).collect();
        let mut images: Vec<usize> = Vec::new();
        emit_injections(universe, &domain, &mut images, &mut out);
    }
    out
}

fn emit_injections(
    universe: usize,
    domain: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<PartialBijection>,
) {
    if images.len() == domain.len() {
        let map: BTreeMap<usize, usize> = domain.iter().copied().zip(images.iter().copied()).collect();
        out.push(PartialBijection::new(universe, map).unwrap());
        return;
    }
    for v in 0..universe {
        if !images.contains(&v) {
            images.push(v);
            emit_injections(universe, domain, images, out);
            images.pop();
        }
    }
}

/// Builds the Cayley table and involution of a composition-closed,
/// inversion-closed list of partial bijections.
pub fn pb_semigroup(pbs: &[PartialBijection]) -> Result<InverseTable> {
    if pbs.is_empty() {
        return Err(Error::InvalidInput("empty list".into()));
    }
    let n = pbs.len();
    let index_of = |p: &PartialBijection| -> Result<usize> {
        pbs.iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::InvalidInput("list not closed under composition/inversion".into()))
    };
    let mut rows = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = index_of(&pbs[i].compose(&pbs[j])?)?;
        }
    }
    let inv: Vec<usize> = pbs
        .iter()
        .map(|p| index_of(&p.invert()))
        .collect::<Result<_>>()?;
    InverseTable::new(CayleyTable::new(rows)?, inv)
}

/// The symmetric inverse monoid on `universe` points as an inverse table,
/// paired with its elements.
pub fn symmetric_inverse_monoid(universe: usize) -> Result<(Vec<PartialBijection>, InverseTable)> {
    let pbs = all_partial_bijections(universe);
    let it = pb_semigroup(&pbs)?;
    Ok((pbs, it))
}

/// Closure of `generators` under composition and inversion, breadth-first,
/// capped.
pub fn pb_closure(generators: &[PartialBijection], cap: usize) -> Result<Vec<PartialBijection>> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let universe = generators[0].universe();
    let mut elements: Vec<PartialBijection> = Vec::new();
    for g in generators {
        if g.universe() != universe {
            return Err(Error::UniverseMismatch(universe, g.universe()));
        }
        for cand in [g.clone(), g.invert()] {
            if !elements.contains(&cand) {
                elements.push(cand);
            }
        }
    }
    let mut head = 0;
    while head < elements.len() {
        let u = elements[head].clone();
        head += 1;
        for idx in 0..elements.len() {
            for w in [elements[idx].compose(&u)?, u.compose(&elements[idx])?] {
                if !elements.contains(&w) {
                    if elements.len() + 1 > cap {
                        return Err(Error::CapExceeded {
                            found: elements.len() + 1,
                            cap,
                        });
                    }
                    elements.push(w);
                }
            }
        }
    }
    Ok(elements)
}
