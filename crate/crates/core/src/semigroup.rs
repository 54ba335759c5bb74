//! Numerical semigroups given by generators.
//!
//! A [`NumericalSemigroup`] is always stored by its minimal generating set
//! (its atoms) together with the Apéry set of its multiplicity, from which
//! membership, the Frobenius number, the genus and the gaps follow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, Error, Result};

/// Largest modulus for which residue tables are materialized.
pub const MAX_TABLE_MODULUS: u64 = 1 << 24;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Greatest common divisor of all generators.
pub fn gcd_all(values: &GeneratorSet) -> u64 {
    values.iter().fold(0, |a, &b| gcd(a, b))
}

/// A nonempty, strictly increasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct GeneratorSet(Vec<u64>);

impl GeneratorSet {
    /// Sorts the values; rejects zero entries, duplicates and empty input.
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut values: Vec<u64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::InvalidInput("empty generator list".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidGenerator(0));
        }
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate generator {}", w[0])));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u64> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn smallest(&self) -> u64 {
        self.0[0]
    }

    pub fn largest(&self) -> u64 {
        self.0[self.0.len() - 1]
    }
}

impl TryFrom<Vec<u64>> for GeneratorSet {
    type Error = Error;

    fn try_from(values: Vec<u64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<GeneratorSet> for Vec<u64> {
    fn from(g: GeneratorSet) -> Self {
        g.0
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    /// Parses comma-separated decimal integers, e.g. `"3,7,8"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let v: i64 = token
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {token:?}")))?;
            if v < 1 {
                return Err(Error::InvalidGenerator(v));
            }
            values.push(v as u64);
        }
        Self::new(values)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

pub(crate) fn write_joined(f: &mut fmt::Formatter<'_>, values: &[u64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

const UNREACHED: u64 = u64::MAX;

/// Residue table of the monoid generated by `modulus` and the seeded
/// generators: entry `i` is the least reachable value congruent to `i`, or
/// `UNREACHED`.
#[derive(Debug, Clone)]
pub(crate) struct ResidueTable {
    modulus: u64,
    least: Vec<u64>,
}

impl ResidueTable {
    pub(crate) fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if modulus > MAX_TABLE_MODULUS {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus} exceeds the residue table limit {MAX_TABLE_MODULUS}"
            )));
        }
        let mut least = vec![UNREACHED; modulus as usize];
        least[0] = 0;
        Ok(Self { modulus, least })
    }

    pub(crate) fn reaches(&self, v: u64) -> bool {
        let l = self.least[(v % self.modulus) as usize];
        l != UNREACHED && v >= l
    }

    /// Round-robin relaxation: each cycle of `+ generator (mod modulus)` is
    /// walked once from its current minimum, which reaches the fixed point of
    /// `least[(i + g) % m] <= least[i] + g` in a single pass.
    pub(crate) fn relax(&mut self, generator: u64) -> Result<()> {
        let m = self.modulus;
        let step = generator % m;
        if step == 0 {
            return Ok(());
        }
        let d = gcd(step, m);
        let cycle_len = m / d;
        for start in 0..d {
            let mut best = start;
            let mut q = start;
            for _ in 0..cycle_len {
                if self.least[q as usize] < self.least[best as usize] {
                    best = q;
                }
                q = (q + step) % m;
            }
            if self.least[best as usize] == UNREACHED {
                continue;
            }
            let mut cur = best;
            for _ in 1..cycle_len {
                let next = (cur + step) % m;
                let cand = checked_add(self.least[cur as usize], generator, "residue table")?;
                if cand < self.least[next as usize] {
                    self.least[next as usize] = cand;
                }
                cur = next;
            }
        }
        Ok(())
    }
}

/// A submonoid of the nonnegative integers with finite complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    atoms: GeneratorSet,
    apery: Vec<u64>,
    frobenius: i64,
    genus: u64,
}

impl NumericalSemigroup {
    /// Builds `⟨gens⟩`, reducing the generators to the minimal system.
    ///
    /// Generators are scanned in ascending order; one is kept only when it is
    /// not reachable from those already kept.
    pub fn new(gens: &GeneratorSet) -> Result<Self> {
        let g = gcd_all(gens);
        if g != 1 {
            return Err(Error::NotNumerical { gcd: g });
        }
        let m = gens.smallest();
        let mut table = ResidueTable::new(m)?;
        let mut atoms = vec![m];
        for &candidate in &gens.as_slice()[1..] {
            if !table.reaches(candidate) {
                table.relax(candidate)?;
                atoms.push(candidate);
            }
        }
        let apery = table.least;
        debug_assert!(apery.iter().all(|&v| v != UNREACHED));
        let max = *apery.iter().max().expect("nonempty table");
        let frobenius = i64::try_from(max)
            .map_err(|_| Error::ArithmeticOverflow("Frobenius number"))?
            - m as i64;
        let genus = apery.iter().map(|&v| v / m).sum();
        Ok(Self {
            atoms: GeneratorSet(atoms),
            apery,
            frobenius,
            genus,
        })
    }

    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        Self::new(&GeneratorSet::new(gens.iter().copied())?)
    }

    /// The minimal generators, ascending.
    pub fn atoms(&self) -> &[u64] {
        self.atoms.as_slice()
    }

    pub fn generator_set(&self) -> &GeneratorSet {
        &self.atoms
    }

    pub fn multiplicity(&self) -> u64 {
        self.atoms.smallest()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.atoms.len()
    }

    /// Apéry set of the multiplicity, indexed by residue.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    /// Largest integer outside the semigroup; −1 for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.apery[(x % self.multiplicity()) as usize]
    }

    /// Apéry set of an arbitrary nonzero element `m` of the semigroup.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 {
            return Err(Error::InvalidInput("Apéry set of 0 is undefined".into()));
        }
        if !self.contains(m) {
            return Err(Error::NotMember(m));
        }
        let mut table = ResidueTable::new(m)?;
        for &a in self.atoms() {
            table.relax(a)?;
        }
        Ok(table.least)
    }

    pub fn gaps(&self) -> Vec<u64> {
        self.gaps_iter().collect()
    }

    pub fn gaps_iter(&self) -> impl Iterator<Item = u64> + '_ {
        let end = u64::try_from(self.frobenius + 1).unwrap_or(0);
        (1..end).filter(move |&x| !self.contains(x))
    }

    pub fn is_atom(&self, a: u64) -> bool {
        self.atoms.as_slice().binary_search(&a).is_ok()
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.atoms)
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(&s.parse()?)
    }
}
