use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite semigroup as a total multiplication table over element indices
/// `0..n`. Associativity is checked on construction and on deserialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CayleyTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

/// Outcome of an associativity check over all triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociativityCheck {
    Ok,
    /// Lexicographically least triple (i, j, k) with (ij)k != i(jk).
    Violation(usize, usize, usize),
}

/// Checks a candidate table for shape, range, and associativity without
/// constructing a `CayleyTable`.
pub fn verify_associativity(table: &[Vec<usize>]) -> Result<AssociativityCheck> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    for row in table {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row length {} in table of order {n}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry {v} out of range [0,{n})")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Ok(AssociativityCheck::Violation(i, j, k));
                }
            }
        }
    }
    Ok(AssociativityCheck::Ok)
}

impl CayleyTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        match verify_associativity(&table)? {
            AssociativityCheck::Ok => Ok(CayleyTable {
                order: table.len(),
                table,
            }),
            AssociativityCheck::Violation(i, j, k) => Err(Error::MalformedTable(format!(
                "associativity fails at triple ({i}, {j}, {k})"
            ))),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Flattened row-major entries; the enumeration order is lexicographic
    /// on this sequence.
    pub fn flat(&self) -> Vec<usize> {
        self.table.iter().flatten().copied().collect()
    }

    /// n-fold power s^k for k >= 1.
    pub fn power(&self, s: usize, k: usize) -> usize {
        assert!(k >= 1);
        let mut acc = s;
        for _ in 1..k {
            acc = self.mul(acc, s);
        }
        acc
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// All e with ee = e, ascending.
    pub fn idempotent_set(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Least product-closed superset of `seed`.
    pub fn subsemigroup_closure(&self, seed: &[usize]) -> Result<Vec<usize>> {
        if seed.is_empty() {
            return Err(Error::InvalidInput("empty seed for closure".into()));
        }
        let mut member = vec![false; self.order];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if s >= self.order {
                return Err(Error::InvalidInput(format!("seed element {s} out of range")));
            }
            if !member[s] {
                member[s] = true;
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            // closure under products with everything already known, both sides
            for idx in 0..queue.len() {
                let v = queue[idx];
                for p in [self.mul(u, v), self.mul(v, u)] {
                    if !member[p] {
                        member[p] = true;
                        queue.push(p);
                    }
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&x| member[x]).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Applies the relabeling `perm` (element i becomes perm[i]).
    pub fn relabel(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut out = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i]][perm[j]] = perm[self.table[i][j]];
            }
        }
        out
    }

    /// Canonical form: the lexicographically least relabeling of the table.
    /// Intended for small orders (tries all n! permutations).
    pub fn canonical_form(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let cand = self.relabel(p);
            match &best {
                Some(b) if flat_cmp(&cand, b) == std::cmp::Ordering::Less => best = Some(cand),
                None => best = Some(cand),
                _ => {}
            }
        });
        best.unwrap()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form() == self.table
    }
}

fn flat_cmp(a: &[Vec<usize>], b: &[Vec<usize>]) -> std::cmp::Ordering {
    a.iter().flatten().cmp(b.iter().flatten())
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

impl<'de> Deserialize<'de> for CayleyTable {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.table.len() != raw.order {
            return Err(serde::de::Error::custom(format!(
                "declared order {} but table has {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        CayleyTable::new(raw.table).map_err(serde::de::Error::custom)
    }
}

/// Minimal index and period of an element: s^kappa = s^(kappa+rho) with
/// kappa minimal and rho minimal for that kappa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPeriod {
    pub kappa: usize,
    pub rho: usize,
}

/// Iterates powers of `s` until the first repeat; the repeated value marks
/// the index and the gap the period.
pub fn index_period(table: &CayleyTable, s: usize) -> Result<IndexPeriod> {
    if s >= table.order() {
        return Err(Error::InvalidInput(format!("element {s} out of range")));
    }
    let mut first_seen = vec![0usize; table.order()];
    let mut seen = vec![false; table.order()];
    let mut cur = s;
    let mut k = 1usize;
    loop {
        if seen[cur] {
            let kappa = first_seen[cur];
            return Ok(IndexPeriod {
                kappa,
                rho: k - kappa,
            });
        }
        seen[cur] = true;
        first_seen[cur] = k;
        cur = table.mul(cur, s);
        k += 1;
    }
}

/// Power semigroup P(S): elements are the nonempty subsets of S (indexed by
/// bitmask minus one), product is the setwise product.
pub fn power_semigroup(table: &CayleyTable, max_order: usize) -> Result<CayleyTable> {
    let n = table.order();
    if n > max_order {
        return Err(Error::BoundExceeded(format!(
            "power semigroup of order-{n} table (limit {max_order}) would have 2^{n}-1 elements"
        )));
    }
    let m = (1usize << n) - 1;
    // prod_single[x][j] = setwise product of subset x with the singleton {j}
    let mut prod_single = vec![vec![0u32; n]; 1 << n];
    for x in 1..(1usize << n) {
        let low = x.trailing_zeros() as usize;
        let rest = x & (x - 1);
        for j in 0..n {
            prod_single[x][j] = prod_single[rest][j] | (1u32 << table.mul(low, j));
        }
    }
    let mut out = vec![vec![0usize; m]; m];
    for x in 1..=m {
        for y in 1..=m {
            let mut z = 0u32;
            let mut rem = y;
            while rem != 0 {
                let j = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                z |= prod_single[x][j];
            }
            out[x - 1][y - 1] = z as usize - 1;
        }
    }
    CayleyTable::new(out)
}
