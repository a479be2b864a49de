use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::presentations::system_abab;
use crate::rewriting::{generate_orbit, wa_shape_check, Rule, Word};

/// Evidence that the subset S_a of the abab-monoid behaves as claimed:
/// S_a S_a S_b = S_a fails to survive reordering because aba is irreducible
/// yet outside the a-orbit shape. Four independent assertions, each recorded
/// with a witness on failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerCheckReport {
    pub orbit_cap: usize,
    pub orbit_size: usize,
    /// every orbit word other than "a" splits as w1 w2 b with w1, w2 in the orbit
    pub factorization_ok: bool,
    /// "aabab" reduces to "a" in the abab-monoid
    pub aabab_is_a: bool,
    /// every orbit word passes the a-heavy shape test
    pub shapes_ok: bool,
    /// "aba" is irreducible in the abab-monoid and fails the shape test
    pub aba_excluded: bool,
    pub failures: Vec<String>,
}

impl PowerCheckReport {
    pub fn pass(&self) -> bool {
        self.factorization_ok && self.aabab_is_a && self.shapes_ok && self.aba_excluded
    }
}

/// Runs the four assertions with orbit words capped at `orbit_cap` symbols.
pub fn power_counterexample_check(orbit_cap: usize) -> Result<PowerCheckReport> {
    if orbit_cap < 5 {
        return Err(Error::InvalidInput(
            "orbit cap below 5 leaves nothing to factor".into(),
        ));
    }
    let rule = Rule {
        lhs: Word::parse("a"),
        rhs: Word::parse("aab"),
    };
    let seed = Word::parse("a");
    let orbit = generate_orbit(&seed, &rule, orbit_cap)?;
    let mut failures = Vec::new();

    let mut factorization_ok = true;
    for w in &orbit {
        if *w == seed {
            continue;
        }
        let syms = w.symbols();
        if syms.last() != Some(&'b') {
            factorization_ok = false;
            failures.push(format!("{w} does not end in b"));
            continue;
        }
        let body = &syms[..syms.len() - 1];
        let found = (1..body.len()).any(|cut| {
            let w1 = Word::from_chars(body[..cut].to_vec());
            let w2 = Word::from_chars(body[cut..].to_vec());
            orbit.contains(&w1) && orbit.contains(&w2)
        });
        if !found {
            factorization_ok = false;
            failures.push(format!("{w} admits no orbit factorization w1 w2 b"));
        }
    }

    let rs = system_abab();
    let aabab_is_a = rs.normal_form(&Word::parse("aabab"), None)? == seed;
    if !aabab_is_a {
        failures.push("aabab does not reduce to a".into());
    }

    let mut shapes_ok = true;
    for w in &orbit {
        if !wa_shape_check(w) {
            shapes_ok = false;
            failures.push(format!("{w} fails the shape test"));
        }
    }

    let aba = Word::parse("aba");
    let aba_excluded = rs.normal_form(&aba, None)? == aba && !wa_shape_check(&aba);
    if !aba_excluded {
        failures.push("aba is not excluded".into());
    }

    Ok(PowerCheckReport {
        orbit_cap,
        orbit_size: orbit.len(),
        factorization_ok,
        aabab_is_a,
        shapes_ok,
        aba_excluded,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_at_small_caps() {
        for cap in [5, 9] {
            let report = power_counterexample_check(cap).unwrap();
            assert!(report.pass(), "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn rejects_tiny_cap() {
        assert!(power_counterexample_check(4).is_err());
    }
}
