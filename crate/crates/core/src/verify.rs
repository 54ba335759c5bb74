//! Brute-force checks of realizations and parameter sweeps over the
//! constructions.
//!
//! Length sets are always recomputed from the complete factorization list,
//! never from the dynamic program in [`crate::factorization::length_set_fast`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{Construction, Realization};
use crate::error::{Error, Result};
use crate::factorization::{factorizations, Factorization, LengthSet};
use crate::semigroup::{GeneratorSet, NumericalSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "Pass",
            Verdict::Fail => "Fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: Realization,
    pub computed_as: LengthSet,
    pub expected_as: LengthSet,
    pub atoms_minimal: bool,
    pub factorizations: Vec<Factorization>,
    pub factorization_count: u64,
    pub expected_count: Option<u64>,
    pub verdict: Verdict,
    pub details: Vec<String>,
}

/// Whether `gens` is exactly the minimal generating set of `⟨gens⟩`.
pub fn verify_atoms(gens: &GeneratorSet) -> Result<bool> {
    let s = NumericalSemigroup::new(gens)?;
    Ok(s.generator_set() == gens)
}

/// Recomputes the length set of the realization's element and checks it,
/// the minimality of the listed generators and optionally the number of
/// factorizations. A failed check is reported in the verdict, not as an
/// error.
pub fn check_realization(r: &Realization, expected_count: Option<u64>) -> Result<VerificationReport> {
    let mut details = Vec::new();

    let atoms_minimal = match verify_atoms(&r.generators) {
        Ok(true) => r.semigroup.generator_set() == &r.generators,
        Ok(false) => {
            let s = NumericalSemigroup::new(&r.generators)?;
            details.push(format!(
                "listed generators {} are not minimal; atoms are {}",
                r.generators,
                s.generator_set()
            ));
            false
        }
        Err(Error::NotNumerical { gcd }) => {
            details.push(format!("listed generators have gcd {gcd}"));
            false
        }
        Err(e) => return Err(e),
    };

    let facts = if r.element == 0 {
        details.push("element is 0".to_string());
        Vec::new()
    } else {
        let facts = factorizations(&r.semigroup, r.element)?;
        if facts.is_empty() {
            details.push(format!("{} not a member of {}", r.element, r.semigroup));
        }
        facts
    };
    let computed_as = LengthSet::new(facts.iter().map(Factorization::length))?;
    let factorization_count = facts.len() as u64;

    if computed_as != r.target {
        details.push(format!("length set is {computed_as}, expected {}", r.target));
    }
    if let Some(want) = expected_count {
        if factorization_count != want {
            details.push(format!("{factorization_count} factorizations, expected {want}"));
        }
    }
    let ok = computed_as == r.target
        && atoms_minimal
        && expected_count.is_none_or(|c| c == factorization_count);

    Ok(VerificationReport {
        subject: r.clone(),
        expected_as: r.target.clone(),
        computed_as,
        atoms_minimal,
        factorizations: facts,
        factorization_count,
        expected_count,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        details,
    })
}

/// Result of a parameter sweep, in lexicographic parameter order.
#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub reports: Vec<VerificationReport>,
    /// Tuples rejected by the construction's preconditions.
    pub skipped: Vec<Vec<(&'static str, u64)>>,
}

impl SweepOutcome {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.verdict == Verdict::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.reports.len() - self.passed()
    }
}

/// Verifies every parameter tuple in the cartesian product of `ranges`.
///
/// Every parameter of the construction needs a range, except `k` for
/// [`Construction::PairWithTwo`], which falls back to the default choice.
/// Tuples violating the construction's preconditions are skipped.
pub fn sweep_verify(
    construction: Construction,
    ranges: &BTreeMap<String, RangeInclusive<u64>>,
) -> Result<SweepOutcome> {
    let names = construction.param_names();
    if let Some(unknown) = ranges.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::InvalidParam(format!(
            "{construction} has no parameter {unknown:?}"
        )));
    }

    let mut axes: Vec<(&'static str, Vec<u64>)> = Vec::new();
    let mut default_k = false;
    for &name in names {
        match ranges.get(name) {
            Some(range) => axes.push((name, range.clone().collect())),
            None if construction == Construction::PairWithTwo && name == "k" => default_k = true,
            None => {
                return Err(Error::InvalidParam(format!(
                    "sweep over {construction} needs a range for {name}"
                )))
            }
        }
    }

    let tuples = cartesian(&axes);
    let results: Vec<Result<Option<VerificationReport>>> = tuples
        .par_iter()
        .map(|values| {
            let realized = if default_k {
                crate::constructions::realize_pair_with_two(values[0], None)
            } else {
                construction.instantiate(values)
            };
            match realized {
                Ok(r) => check_realization(&r, Some(construction.expected_factorization_count())).map(Some),
                Err(Error::InvalidParam(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();

    let mut outcome = SweepOutcome::default();
    for (values, result) in tuples.iter().zip(results) {
        match result? {
            Some(report) => outcome.reports.push(report),
            None => outcome
                .skipped
                .push(axes.iter().map(|(n, _)| *n).zip(values.iter().copied()).collect()),
        }
    }
    Ok(outcome)
}

fn cartesian(axes: &[(&'static str, Vec<u64>)]) -> Vec<Vec<u64>> {
    axes.iter().fold(vec![Vec::new()], |acc, (_, values)| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect()
    })
}
