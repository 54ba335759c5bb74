//! Serializable forms of realizations, verification reports and catalog
//! entries.
//!
//! Factorizations are written as `[atom, exponent]` pairs with zero exponents
//! omitted, atoms ascending.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{Construction, Realization};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, LengthSet};
use crate::search::CatalogEntry;
use crate::semigroup::{GeneratorSet, NumericalSemigroup};
use crate::verify::{Verdict, VerificationReport};

pub type FactorizationPairs = Vec<(u64, u64)>;

pub fn factorization_pairs(atoms: &[u64], f: &[Factorization]) -> Vec<FactorizationPairs> {
    f.iter().map(|f| f.pairs(atoms)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub computed: LengthSet,
    pub atoms_minimal: bool,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected_count: Option<u64>,
    pub verdict: Verdict,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub construction: Construction,
    pub params: BTreeMap<String, u64>,
    pub atoms: GeneratorSet,
    pub x: u64,
    pub sigma: LengthSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factorizations: Option<Vec<FactorizationPairs>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<VerificationRecord>,
}

impl RealizationRecord {
    pub fn from_realization(r: &Realization) -> Self {
        Self {
            construction: r.construction,
            params: r.params.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
            atoms: r.generators.clone(),
            x: r.element,
            sigma: r.target.clone(),
            factorizations: None,
            verification: None,
        }
    }

    pub fn from_report(report: &VerificationReport) -> Self {
        let mut rec = Self::from_realization(&report.subject);
        rec.factorizations = Some(factorization_pairs(
            report.subject.semigroup.atoms(),
            &report.factorizations,
        ));
        rec.verification = Some(VerificationRecord {
            computed: report.computed_as.clone(),
            atoms_minimal: report.atoms_minimal,
            count: report.factorization_count,
            expected_count: report.expected_count,
            verdict: report.verdict,
            details: report.details.clone(),
        });
        rec
    }

    /// Rebuilds the claimed realization. Parameters are taken as recorded;
    /// the semigroup is regenerated from `atoms`.
    pub fn into_realization(self) -> Result<Realization> {
        let names = self.construction.param_names();
        let mut params = Vec::with_capacity(names.len());
        for &name in names {
            let v = self.params.get(name).ok_or_else(|| {
                Error::InvalidInput(format!("{} record lacks parameter {name}", self.construction))
            })?;
            params.push((name, *v));
        }
        if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::InvalidInput(format!(
                "{} has no parameter {extra:?}",
                self.construction
            )));
        }
        let semigroup = NumericalSemigroup::new(&self.atoms)?;
        Ok(Realization {
            construction: self.construction,
            params,
            generators: self.atoms,
            semigroup,
            element: self.x,
            target: self.sigma,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub atoms: GeneratorSet,
    pub x: u64,
    #[serde(rename = "as")]
    pub as_set: LengthSet,
    pub genus: u64,
    pub frobenius: i64,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            atoms: e.semigroup.generator_set().clone(),
            x: e.element,
            as_set: e.as_set.clone(),
            genus: e.semigroup.genus(),
            frobenius: e.semigroup.frobenius(),
        }
    }
}
