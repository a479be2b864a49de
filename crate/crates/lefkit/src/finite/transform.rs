use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::cayley::CayleyTable;

/// A total map on `0..degree` points. Acts on the right, so composition is
/// `x (fg) = (x f) g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transformation {
    degree: usize,
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::InvalidInput("transformation of degree 0".into()));
        }
        if let Some(&v) = images.iter().find(|&&v| v >= degree) {
            return Err(Error::InvalidInput(format!(
                "image {v} out of range for degree {degree}"
            )));
        }
        Ok(Transformation { degree, images })
    }

    pub fn identity(degree: usize) -> Self {
        Transformation {
            degree,
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree != other.degree {
            return Err(Error::UniverseMismatch(self.degree, other.degree));
        }
        Ok(Transformation {
            degree: self.degree,
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    /// The image set, ascending and deduplicated.
    pub fn image_set(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            images: Vec<usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.images.len() != raw.degree {
            return Err(serde::de::Error::custom("images length differs from degree"));
        }
        Transformation::new(raw.images).map_err(serde::de::Error::custom)
    }
}

/// A finite set of transformations closed under composition, together with
/// the induced Cayley table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformationSemigroup {
    degree: usize,
    elements: Vec<Transformation>,
    cayley: CayleyTable,
}

impl TransformationSemigroup {
    /// Builds from an explicit closed element list; rejects non-closed input.
    pub fn from_elements(elements: Vec<Transformation>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidInput("empty transformation set".into()));
        }
        let degree = elements[0].degree();
        if elements.iter().any(|t| t.degree() != degree) {
            return Err(Error::UniverseMismatch(degree, 0));
        }
        let index_of = |t: &Transformation| elements.iter().position(|u| u == t);
        let n = elements.len();
        let mut rows = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = elements[i].compose(&elements[j])?;
                rows[i][j] = index_of(&prod).ok_or_else(|| {
                    Error::InvalidInput(format!("set not closed: product of {i} and {j} missing"))
                })?;
            }
        }
        let cayley = CayleyTable::new(rows)?;
        Ok(TransformationSemigroup {
            degree,
            elements,
            cayley,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn cayley(&self) -> &CayleyTable {
        &self.cayley
    }

    /// The full transformation semigroup on `degree` points, elements in
    /// lexicographic order of their image vectors.
    pub fn full(degree: usize, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        let total = degree.pow(degree as u32);
        if total > cap {
            return Err(Error::CapExceeded {
                found: total,
                cap,
            });
        }
        let mut elements = Vec::with_capacity(total);
        let mut images = vec![0usize; degree];
        loop {
            elements.push(Transformation::new(images.clone()).unwrap());
            let mut k = degree;
            let mut done = true;
            while k > 0 {
                k -= 1;
                images[k] += 1;
                if images[k] < degree {
                    done = false;
                    break;
                }
                images[k] = 0;
            }
            if done {
                break;
            }
        }
        Self::from_elements(elements)
    }
}

/// Breadth-first closure of `generators` under composition: elements are
/// discovered in order of shortest generator word, ties broken by generator
/// order. Fails with the partial count if the closure exceeds `cap`.
pub fn transformation_closure(
    generators: &[Transformation],
    cap: usize,
) -> Result<TransformationSemigroup> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    if cap == 0 {
        return Err(Error::InvalidInput("cap must be positive".into()));
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::UniverseMismatch(degree, 0));
    }
    let mut elements: Vec<Transformation> = Vec::new();
    for g in generators {
        if !elements.contains(g) {
            elements.push(g.clone());
        }
    }
    if elements.len() > cap {
        return Err(Error::CapExceeded {
            found: elements.len(),
            cap,
        });
    }
    let mut head = 0;
    while head < elements.len() {
        let u = elements[head].clone();
        head += 1;
        for g in generators {
            let w = u.compose(g)?;
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
    TransformationSemigroup::from_elements(elements)
}

/// Faithful right-translation representation on S^1 (a fresh identity point
/// is adjoined at index n, which separates translations even when S already
/// has an identity). Element i maps to x -> x*i, with the fresh point sent
/// to i itself; the induced Cayley table equals the input table entrywise.
pub fn regular_representation(table: &CayleyTable) -> TransformationSemigroup {
    let n = table.order();
    let elements: Vec<Transformation> = (0..n)
        .map(|a| {
            let mut images: Vec<usize> = (0..n).map(|x| table.mul(x, a)).collect();
            images.push(a);
            Transformation::new(images).unwrap()
        })
        .collect();
    TransformationSemigroup::from_elements(elements)
        .expect("right translations are closed under composition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_action() {
        let t = Transformation::new(vec![1, 0, 0]).unwrap();
        let t2 = t.compose(&t).unwrap();
        assert_eq!(t2.images(), &[0, 1, 1]);
        let t3 = t2.compose(&t).unwrap();
        assert_eq!(t3, t);
    }

    #[test]
    fn index_period_of_transformations() {
        use crate::finite::cayley::{index_period, IndexPeriod};
        let t = Transformation::new(vec![1, 0, 0]).unwrap();
        let sg = transformation_closure(&[t.clone()], 100).unwrap();
        let i = sg.elements().iter().position(|u| *u == t).unwrap();
        assert_eq!(
            index_period(sg.cayley(), i).unwrap(),
            IndexPeriod { kappa: 1, rho: 2 }
        );

        let t = Transformation::new(vec![1, 2, 3, 4, 3]).unwrap();
        let sg = transformation_closure(&[t.clone()], 100).unwrap();
        let i = sg.elements().iter().position(|u| *u == t).unwrap();
        assert_eq!(
            index_period(sg.cayley(), i).unwrap(),
            IndexPeriod { kappa: 3, rho: 2 }
        );
    }

    #[test]
    fn closure_of_idempotent_is_singleton() {
        let c0 = Transformation::new(vec![0, 0]).unwrap();
        let sg = transformation_closure(&[c0], 10).unwrap();
        assert_eq!(sg.order(), 1);
    }

    #[test]
    fn closure_of_all_maps_on_two_points() {
        let gens: Vec<Transformation> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|im| Transformation::new(im.to_vec()).unwrap())
            .collect();
        let sg = transformation_closure(&gens, 10).unwrap();
        assert_eq!(sg.order(), 4);
    }

    #[test]
    fn closure_generates_full_t3() {
        // transposition, 3-cycle, and a rank-2 idempotent generate T_3
        let gens = vec![
            Transformation::new(vec![1, 0, 2]).unwrap(),
            Transformation::new(vec![1, 2, 0]).unwrap(),
            Transformation::new(vec![0, 0, 2]).unwrap(),
        ];
        let sg = transformation_closure(&gens, 100).unwrap();
        assert_eq!(sg.order(), 27);
    }

    #[test]
    fn closure_cap() {
        let gens = vec![
            Transformation::new(vec![1, 0, 2]).unwrap(),
            Transformation::new(vec![1, 2, 0]).unwrap(),
            Transformation::new(vec![0, 0, 2]).unwrap(),
        ];
        assert!(matches!(
            transformation_closure(&gens, 10),
            Err(Error::CapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn t2_closure_constant_seed() {
        let full = TransformationSemigroup::full(2, 100).unwrap();
        let c0 = full
            .elements()
            .iter()
            .position(|t| t.images() == [0, 0])
            .unwrap();
        assert_eq!(full.cayley().subsemigroup_closure(&[c0]).unwrap(), vec![c0]);
    }

    #[test]
    fn regular_representation_is_faithful_and_matches_table() {
        let z2 = CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let rep = regular_representation(&z2);
        assert_eq!(rep.degree(), 3);
        assert_eq!(rep.order(), 2);
        // translations permute the original two points; the fresh identity
        // point goes to the translating element
        assert_eq!(rep.elements()[0].images(), &[0, 1, 0]);
        assert_eq!(rep.elements()[1].images(), &[1, 0, 1]);
        assert_eq!(rep.cayley(), &z2);

        // left-zero: translations are constant on S but separated by the
        // adjoined identity point
        let lz = CayleyTable::new(vec![vec![0, 0], vec![1, 1]]).unwrap();
        let rep = regular_representation(&lz);
        assert_eq!(rep.order(), 2);
        assert_ne!(rep.elements()[0], rep.elements()[1]);
        assert_eq!(rep.cayley(), &lz);
    }

    #[test]
    fn regular_representation_order_one() {
        let t = CayleyTable::new(vec![vec![0]]).unwrap();
        let rep = regular_representation(&t);
        assert_eq!(rep.degree(), 2);
        assert_eq!(rep.elements()[0].images(), &[0, 0]);
    }
}
