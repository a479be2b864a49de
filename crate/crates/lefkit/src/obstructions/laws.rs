use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{
    enumerate_semigroups, enumerate_with_prefix, CayleyTable, EnumBounds, EnumMode,
};

/// A quantified implication evaluated over all element pairs of a finite
/// semigroup. `PpqCommute` is deliberately false and serves as the
/// vacuous-scan guard: a sound scanner must find counterexamples to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum Law {
    /// ppq = p implies pqp = p
    Ppq,
    /// qppq = qp implies qpq = qp or (qpq)(qpp) = qp
    SixSet,
    /// (qp)(pq)^n = (qp)^n implies some m < n^2+2n with n not dividing m
    /// satisfies (qp)^2 (pq)^m = (qp)(pq)^m (qp)
    Prob { n: usize },
    /// ppq = p implies pq = qp (false; counterexamples expected)
    PpqCommute,
}

impl Law {
    pub fn id(&self) -> String {
        match self {
            Law::Ppq => "ppq".into(),
            Law::SixSet => "six-set".into(),
            Law::Prob { n } => format!("prob({n})"),
            Law::PpqCommute => "ppq-commute".into(),
        }
    }

    pub fn parse(s: &str, n: Option<usize>) -> Result<Law> {
        match s {
            "ppq" => Ok(Law::Ppq),
            "six-set" => Ok(Law::SixSet),
            "prob" => {
                let n = n.ok_or_else(|| Error::InvalidInput("prob needs --n".into()))?;
                if n < 2 {
                    return Err(Error::InvalidInput("prob needs n >= 2".into()));
                }
                Ok(Law::Prob { n })
            }
            "ppq-commute" => Ok(Law::PpqCommute),
            other => Err(Error::InvalidInput(format!("unknown law '{other}'"))),
        }
    }

    /// The least violating pair (p, q), if any.
    pub fn check(&self, t: &CayleyTable) -> Option<(usize, usize)> {
        let n = t.order();
        for p in 0..n {
            for q in 0..n {
                if self.violated_by(t, p, q) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// Direct re-evaluation of hypothesis and conclusion on one pair; used
    /// both by the scan and to re-verify reported counterexamples.
    pub fn violated_by(&self, t: &CayleyTable, p: usize, q: usize) -> bool {
        match self {
            Law::Ppq => {
                let ppq = t.mul(t.mul(p, p), q);
                ppq == p && t.mul(t.mul(p, q), p) != p
            }
            Law::PpqCommute => {
                let ppq = t.mul(t.mul(p, p), q);
                ppq == p && t.mul(p, q) != t.mul(q, p)
            }
            Law::SixSet => {
                let qp = t.mul(q, p);
                let qpp = t.mul(qp, p);
                let qppq = t.mul(qpp, q);
                if qppq != qp {
                    return false;
                }
                let qpq = t.mul(qp, q);
                qpq != qp && t.mul(qpq, qpp) != qp
            }
            Law::Prob { n } => {
                let qp = t.mul(q, p);
                let pq = t.mul(p, q);
                // hypothesis: (qp)(pq)^n = (qp)^n
                let mut lhs = qp;
                for _ in 0..*n {
                    lhs = t.mul(lhs, pq);
                }
                if lhs != t.power(qp, *n) {
                    return false;
                }
                // conclusion: some admissible m has (qp)^2 (pq)^m = (qp)(pq)^m (qp)
                let qp2 = t.mul(qp, qp);
                let mut left = qp2;
                let mut mid = qp;
                for m in 1..(n * n + 2 * n) {
                    left = t.mul(left, pq);
                    mid = t.mul(mid, pq);
                    if m % n != 0 && left == t.mul(mid, qp) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// One scan counterexample, with enough data to re-verify it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub table: CayleyTable,
    pub p: usize,
    pub q: usize,
}

/// Result of scanning a law over an enumerated space. An empty
/// counterexample list certifies the law over exactly the scanned space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub space: String,
    pub mode: EnumMode,
    pub scanned: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Scans the law over every enumerated semigroup of order 1..=max_order.
pub fn scan_law(
    law: Law,
    max_order: usize,
    mode: EnumMode,
    bounds: &EnumBounds,
) -> Result<LawReport> {
    let mut scanned = 0usize;
    let mut counterexamples = Vec::new();
    for n in 1..=max_order {
        for table in enumerate_semigroups(n, mode, bounds)? {
            scanned += 1;
            if let Some((p, q)) = law.check(&table) {
                counterexamples.push(Counterexample { table, p, q });
            }
        }
    }
    Ok(LawReport {
        law: law.id(),
        space: format!("orders 1..={max_order}"),
        mode,
        scanned,
        counterexamples,
    })
}

/// Parallel scan: each order is partitioned by the first table cell and the
/// partitions run on their own threads. Concatenating partition results in
/// prefix order reproduces the sequential report exactly.
pub fn scan_law_jobs(
    law: Law,
    max_order: usize,
    mode: EnumMode,
    bounds: &EnumBounds,
    jobs: usize,
) -> Result<LawReport> {
    if jobs <= 1 {
        return scan_law(law, max_order, mode, bounds);
    }
    let mut scanned = 0usize;
    let mut counterexamples = Vec::new();
    for n in 1..=max_order {
        let results: Vec<Result<(usize, Vec<Counterexample>)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..n)
                .map(|v| {
                    scope.spawn(move || {
                        let mut local_scanned = 0usize;
                        let mut local = Vec::new();
                        for table in enumerate_with_prefix(n, mode, bounds, &[v])? {
                            local_scanned += 1;
                            if let Some((p, q)) = law.check(&table) {
                                local.push(Counterexample { table, p, q });
                            }
                        }
                        Ok((local_scanned, local))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        for r in results {
            let (s, ces) = r?;
            scanned += s;
            counterexamples.extend(ces);
        }
    }
    Ok(LawReport {
        law: law.id(),
        space: format!("orders 1..={max_order}"),
        mode,
        scanned,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> CayleyTable {
        CayleyTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn left_zero2() -> CayleyTable {
        CayleyTable::new(vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn groups_satisfy_ppq() {
        assert_eq!(Law::Ppq.check(&z2()), None);
    }

    #[test]
    fn six_set_on_trivial_and_left_zero() {
        let one = CayleyTable::new(vec![vec![0]]).unwrap();
        assert_eq!(Law::SixSet.check(&one), None);
        assert_eq!(Law::SixSet.check(&left_zero2()), None);
    }

    #[test]
    fn prob_on_commutative_tables() {
        assert_eq!(Law::Prob { n: 2 }.check(&z2()), None);
        let null3 =
            CayleyTable::new(vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(Law::Prob { n: 2 }.check(&null3), None);
    }

    #[test]
    fn falsified_law_fires_and_reverifies() {
        let report = scan_law(
            Law::PpqCommute,
            3,
            EnumMode::Labeled,
            &EnumBounds::default(),
        )
        .unwrap();
        assert!(!report.counterexamples.is_empty());
        for ce in &report.counterexamples {
            assert!(Law::PpqCommute.violated_by(&ce.table, ce.p, ce.q));
        }
    }

    #[test]
    fn real_laws_clean_at_order_three() {
        for law in [Law::Ppq, Law::SixSet, Law::Prob { n: 2 }, Law::Prob { n: 3 }] {
            let report = scan_law(law, 3, EnumMode::Labeled, &EnumBounds::default()).unwrap();
            assert!(
                report.counterexamples.is_empty(),
                "law {} has counterexamples",
                report.law
            );
            assert_eq!(report.scanned, 1 + 8 + 113);
        }
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let seq = scan_law(
            Law::PpqCommute,
            3,
            EnumMode::Labeled,
            &EnumBounds::default(),
        )
        .unwrap();
        let par = scan_law_jobs(
            Law::PpqCommute,
            3,
            EnumMode::Labeled,
            &EnumBounds::default(),
            4,
        )
        .unwrap();
        assert_eq!(seq.scanned, par.scanned);
        assert_eq!(seq.counterexamples.len(), par.counterexamples.len());
        for (a, b) in seq.counterexamples.iter().zip(&par.counterexamples) {
            assert_eq!(a.table, b.table);
            assert_eq!((a.p, a.q), (b.p, b.q));
        }
    }

    #[test]
    fn labeled_and_iso_scans_agree_on_emptiness() {
        for law in [Law::Ppq, Law::SixSet, Law::PpqCommute] {
            let labeled = scan_law(law, 3, EnumMode::Labeled, &EnumBounds::default()).unwrap();
            let iso = scan_law(
                law,
                3,
                EnumMode::UpToIsomorphism,
                &EnumBounds::default(),
            )
            .unwrap();
            assert_eq!(
                labeled.counterexamples.is_empty(),
                iso.counterexamples.is_empty(),
                "law {} disagrees between modes",
                labeled.law
            );
        }
    }
}
