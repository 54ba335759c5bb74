//! Factorizations of an element into atoms and their length sets.
//!
//! The length set of `x` collects the number of addends over every way of
//! writing `x` as a sum of atoms. In a numerical semigroup every splitting
//! process into atoms terminates, so this is exactly the set of lengths of the
//! exponent vectors returned by [`factorizations`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, checked_mul, Error, Result};
use crate::semigroup::{write_joined, NumericalSemigroup, ResidueTable};

/// A finite set of positive lengths, kept ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct LengthSet(Vec<u64>);

impl LengthSet {
    /// Normalizes to a sorted set; zero lengths are rejected.
    pub fn new(lengths: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = lengths.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidInput("lengths must be at least 1".into()));
        }
        Ok(Self(set.into_iter().collect()))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }
}

impl TryFrom<Vec<u64>> for LengthSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<LengthSet> for Vec<u64> {
    fn from(s: LengthSet) -> Self {
        s.0
    }
}

impl FromStr for LengthSet {
    type Err = Error;

    /// Accepts `3,5,7` or `{3,5,7}`, in any order and with repeats.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let mut values = Vec::new();
        for token in inner.split(',') {
            let token = token.trim();
            let v: i64 = token
                .parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {token:?}")))?;
            if v < 1 {
                return Err(Error::InvalidParam(format!("length {v} is not positive")));
            }
            values.push(v as u64);
        }
        Self::new(values)
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_joined(f, &self.0)?;
        f.write_str("}")
    }
}

/// One decomposition into atoms: `exponents[i]` copies of the `i`-th atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    exponents: Vec<u64>,
    length: u64,
}

impl Factorization {
    pub fn new(exponents: Vec<u64>) -> Self {
        let length = exponents.iter().sum();
        Self { exponents, length }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Number of addends.
    pub fn length(&self) -> u64 {
        self.length
    }

    /// `Σ exponents[i]·atoms[i]`.
    pub fn evaluate(&self, atoms: &[u64]) -> Result<u64> {
        self.exponents
            .iter()
            .zip(atoms)
            .try_fold(0u64, |acc, (&e, &a)| {
                checked_add(acc, checked_mul(e, a, "factorization value")?, "factorization value")
            })
    }

    /// `(atom, exponent)` pairs with zero exponents dropped, atoms ascending.
    pub fn pairs(&self, atoms: &[u64]) -> Vec<(u64, u64)> {
        atoms
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(&a, &e)| (a, e))
            .collect()
    }

    /// Renders as `6*350 + 360`.
    pub fn display_with(&self, atoms: &[u64]) -> String {
        self.pairs(atoms)
            .iter()
            .map(|&(a, e)| if e == 1 { a.to_string() } else { format!("{e}*{a}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Tables for each prefix `atoms[0..=i]` telling whether a remainder is a
/// nonnegative combination of those atoms alone.
struct PrefixReach {
    tables: Vec<ResidueTable>,
}

impl PrefixReach {
    fn new(atoms: &[u64]) -> Result<Self> {
        let mut tables = Vec::with_capacity(atoms.len());
        let mut table = ResidueTable::new(atoms[0])?;
        tables.push(table.clone());
        for &a in &atoms[1..] {
            table.relax(a)?;
            tables.push(table.clone());
        }
        Ok(Self { tables })
    }

    fn reaches(&self, prefix_end: usize, v: u64) -> bool {
        self.tables[prefix_end].reaches(v)
    }
}

/// All factorizations of `x`, largest atom varying slowest and exponents
/// descending at each level. Empty when `x` is not in the semigroup.
pub fn factorizations(s: &NumericalSemigroup, x: u64) -> Result<Vec<Factorization>> {
    if x == 0 {
        return Err(Error::InvalidElement(0));
    }
    let atoms = s.atoms();
    let mut out = Vec::new();
    if !s.contains(x) {
        return Ok(out);
    }
    let reach = PrefixReach::new(atoms)?;
    let mut exponents = vec![0u64; atoms.len()];
    descend(atoms, &reach, atoms.len() - 1, x, &mut exponents, &mut out);
    Ok(out)
}

fn descend(
    atoms: &[u64],
    reach: &PrefixReach,
    level: usize,
    remainder: u64,
    exponents: &mut [u64],
    out: &mut Vec<Factorization>,
) {
    let atom = atoms[level];
    if level == 0 {
        debug_assert_eq!(remainder % atom, 0);
        exponents[0] = remainder / atom;
        out.push(Factorization::new(exponents.to_vec()));
        return;
    }
    for e in (0..=remainder / atom).rev() {
        let rest = remainder - e * atom;
        // Only descend where the smaller atoms can still finish the sum.
        if reach.reaches(level - 1, rest) {
            exponents[level] = e;
            descend(atoms, reach, level - 1, rest, exponents, out);
        }
    }
    exponents[level] = 0;
}

fn check_element(s: &NumericalSemigroup, x: u64) -> Result<()> {
    if x == 0 {
        return Err(Error::InvalidElement(0));
    }
    if !s.contains(x) {
        return Err(Error::NotMember(x));
    }
    Ok(())
}

/// The length set of `x`, from the full list of factorizations.
pub fn addendization_set(s: &NumericalSemigroup, x: u64) -> Result<LengthSet> {
    check_element(s, x)?;
    let lengths: BTreeSet<u64> = factorizations(s, x)?.iter().map(Factorization::length).collect();
    Ok(LengthSet(lengths.into_iter().collect()))
}

/// The length set of `x` by dynamic programming over achievable lengths.
pub fn length_set_fast(s: &NumericalSemigroup, x: u64) -> Result<LengthSet> {
    check_element(s, x)?;
    let table = LengthTable::build(s, x)?;
    Ok(table.lengths(x))
}

/// Length sets of every element `1 ≤ v ≤ bound` of the semigroup, ascending.
pub fn length_sets_upto(s: &NumericalSemigroup, bound: u64) -> Result<Vec<(u64, LengthSet)>> {
    let table = LengthTable::build(s, bound)?;
    Ok((1..=bound)
        .filter(|&v| s.contains(v))
        .map(|v| (v, table.lengths(v)))
        .collect())
}

/// For each value `v ≤ bound`, a bitset of the lengths of its factorizations.
struct LengthTable {
    rows: Vec<Vec<u64>>,
}

impl LengthTable {
    fn build(s: &NumericalSemigroup, bound: u64) -> Result<Self> {
        let len = usize::try_from(bound)
            .ok()
            .and_then(|b| b.checked_add(1))
            .ok_or(Error::ArithmeticOverflow("length table size"))?;
        let m = s.multiplicity();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(len);
        rows.push(vec![1]);
        for v in 1..=bound {
            // Lengths of v never exceed v / m.
            let words = (v / m / 64 + 1) as usize;
            let mut row = vec![0u64; words];
            for &a in s.atoms() {
                if a > v {
                    break;
                }
                shl1_or(&mut row, &rows[(v - a) as usize]);
            }
            rows.push(row);
        }
        Ok(Self { rows })
    }

    fn lengths(&self, v: u64) -> LengthSet {
        let row = &self.rows[v as usize];
        let mut out = Vec::new();
        for (w, &word) in row.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as u64;
                out.push(w as u64 * 64 + b);
                bits &= bits - 1;
            }
        }
        LengthSet(out)
    }
}

/// `dst |= src << 1`, truncated to `dst`'s width.
fn shl1_or(dst: &mut [u64], src: &[u64]) {
    let mut carry = 0u64;
    for (i, d) in dst.iter_mut().enumerate() {
        let word = src.get(i).copied().unwrap_or(0);
        *d |= (word << 1) | carry;
        carry = word >> 63;
    }
}

/// Number of factorizations of `x`, counted by the coin-change recurrence.
pub fn count_factorizations(s: &NumericalSemigroup, x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::InvalidElement(0));
    }
    if !s.contains(x) {
        return Ok(0);
    }
    let len = usize::try_from(x)
        .ok()
        .and_then(|b| b.checked_add(1))
        .ok_or(Error::ArithmeticOverflow("count table size"))?;
    let mut ways = vec![0u64; len];
    ways[0] = 1;
    for &a in s.atoms() {
        let a = a as usize;
        for v in a..len {
            ways[v] = checked_add(ways[v], ways[v - a], "factorization count")?;
        }
    }
    Ok(ways[x as usize])
}
