//! Bounded searches over numerical semigroups for elements with a given
//! length set.
//!
//! Semigroups are enumerated by their minimal generating sets in
//! lexicographic order of the ascending atom list, which also orders them by
//! multiplicity. Absence of a hit only means there is none within the bounds.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{length_sets_upto, LengthSet};
use crate::semigroup::{gcd, NumericalSemigroup};

/// Bounds delimiting a finite family of semigroups and candidate elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub max_multiplicity: u64,
    pub max_generator: u64,
    pub max_embdim: usize,
    pub max_element: u64,
}

impl SearchSpace {
    pub fn new(max_multiplicity: u64, max_generator: u64, max_embdim: usize, max_element: u64) -> Result<Self> {
        let space = Self {
            max_multiplicity,
            max_generator,
            max_embdim,
            max_element,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.max_multiplicity < 1 {
            return bad("max multiplicity must be at least 1".into());
        }
        if self.max_multiplicity > self.max_generator {
            return bad(format!(
                "max multiplicity {} exceeds max generator {}",
                self.max_multiplicity, self.max_generator
            ));
        }
        if self.max_embdim < 1 {
            return bad("max embedding dimension must be at least 1".into());
        }
        if self.max_element < self.max_generator {
            return bad(format!(
                "max element {} is below max generator {}",
                self.max_element, self.max_generator
            ));
        }
        if self.max_generator > u32::MAX as u64 || self.max_element > u32::MAX as u64 {
            return bad("search bounds must fit in 32 bits".into());
        }
        Ok(())
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "multiplicity <= {}, atoms <= {}, embedding dimension <= {}, x <= {}",
            self.max_multiplicity, self.max_generator, self.max_embdim, self.max_element
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub semigroup: NumericalSemigroup,
    pub element: u64,
    pub as_set: LengthSet,
}

struct Frame {
    prefix: Vec<u64>,
    /// `reach[v]`: `v` is a combination of `prefix`, for `v ≤ max_generator`.
    reach: Vec<bool>,
    gcd: u64,
    next: u64,
}

/// Lexicographic stream of minimal generating sets within a search space.
pub struct SemigroupEnumerator {
    max_multiplicity: u64,
    max_generator: u64,
    max_embdim: usize,
    stack: Vec<Frame>,
    start: Option<Vec<u64>>,
}

impl SemigroupEnumerator {
    pub fn new(space: &SearchSpace) -> Self {
        Self::starting_at(space, None)
    }

    /// Resumes the stream at `key`: semigroups whose atom list sorts before
    /// `key` are skipped without being visited.
    pub fn starting_at(space: &SearchSpace, key: Option<&[u64]>) -> Self {
        Self::with_bounds(space.max_multiplicity, space.max_generator, space.max_embdim, key)
    }

    fn with_bounds(max_multiplicity: u64, max_generator: u64, max_embdim: usize, key: Option<&[u64]>) -> Self {
        let mut reach = vec![false; max_generator as usize + 1];
        reach[0] = true;
        let root = Frame {
            prefix: Vec::new(),
            reach,
            gcd: 0,
            next: 1,
        };
        Self {
            max_multiplicity,
            max_generator,
            max_embdim,
            stack: vec![root],
            start: key.map(<[u64]>::to_vec),
        }
    }

    fn child(parent: &Frame, c: u64) -> Frame {
        let mut reach = parent.reach.clone();
        let c = c as usize;
        for v in c..reach.len() {
            if reach[v - c] {
                reach[v] = true;
            }
        }
        let mut prefix = parent.prefix.clone();
        prefix.push(c as u64);
        Frame {
            prefix,
            reach,
            gcd: gcd(parent.gcd, c as u64),
            next: c as u64 + 1,
        }
    }
}

impl Iterator for SemigroupEnumerator {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        loop {
            let top = self.stack.last_mut()?;
            let limit = if top.prefix.is_empty() {
                self.max_multiplicity
            } else {
                self.max_generator
            };
            let mut candidate = None;
            if top.prefix.len() < self.max_embdim {
                while top.next <= limit {
                    let c = top.next;
                    top.next += 1;
                    if !top.reach[c as usize] {
                        candidate = Some(c);
                        break;
                    }
                }
            }
            let Some(c) = candidate else {
                self.stack.pop();
                continue;
            };
            let top = self.stack.last().expect("nonempty stack");
            let mut emit = true;
            if let Some(key) = &self.start {
                let mut prefix = top.prefix.clone();
                prefix.push(c);
                match prefix.as_slice().cmp(key) {
                    Ordering::Less if key.starts_with(&prefix) => emit = false,
                    Ordering::Less => continue,
                    Ordering::Equal | Ordering::Greater => self.start = None,
                }
            }
            let child = Self::child(top, c);
            let numerical = child.gcd == 1;
            let atoms = child.prefix.clone();
            self.stack.push(child);
            if emit && numerical {
                return Some(
                    NumericalSemigroup::from_generators(&atoms)
                        .expect("minimal gcd-1 set within the table limit"),
                );
            }
        }
    }
}

/// Every numerical semigroup in the space, exactly once, ordered by
/// multiplicity and then lexicographically by atoms.
pub fn enumerate_semigroups(space: &SearchSpace) -> SemigroupEnumerator {
    SemigroupEnumerator::new(space)
}

/// `(x, AS(x))` for every element `1 ≤ x ≤ x_max`.
pub fn catalog_length_sets(s: &NumericalSemigroup, x_max: u64) -> Result<BTreeMap<u64, LengthSet>> {
    if x_max < 1 {
        return Err(Error::InvalidInput("catalog bound must be at least 1".into()));
    }
    Ok(length_sets_upto(s, x_max)?.into_iter().collect())
}

/// Elements `x ≤ max_element` of `s` with length set `target`, ascending.
///
/// Lengths of `x` lie between `x / max atom` and `x / multiplicity`, which
/// confines candidates to `[max(target)·m, min(target)·max atom]`.
fn hits_in(s: &NumericalSemigroup, target: &LengthSet, max_element: u64) -> Result<Vec<u64>> {
    let (Some(lo_len), Some(hi_len)) = (target.min(), target.max()) else {
        return Ok(Vec::new());
    };
    let largest_atom = *s.atoms().last().expect("atoms are nonempty");
    let lo = hi_len.saturating_mul(s.multiplicity());
    let hi = lo_len.saturating_mul(largest_atom).min(max_element);
    if lo > hi {
        return Ok(Vec::new());
    }
    Ok(length_sets_upto(s, hi)?
        .into_iter()
        .filter(|(x, set)| *x >= lo && set == target)
        .map(|(x, _)| x)
        .collect())
}

/// Where an interrupted search stopped: the last semigroup looked at and the
/// last element of it already scanned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchPosition {
    pub atoms: Vec<u64>,
    pub last_element: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchEvent {
    Found(CatalogEntry),
    /// Every semigroup up to and including this position has been scanned.
    Progress { position: SearchPosition, scanned: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchSummary {
    pub scanned: u64,
    pub found: usize,
    /// False when the search stopped at the hit limit.
    pub exhausted: bool,
}

const CHUNK: usize = 256;

/// Largest multiplicity that can still carry an element with length
/// `max(target)` inside the space.
fn effective_space(target: &LengthSet, space: &SearchSpace) -> SearchSpace {
    let mut s = *space;
    if let Some(hi) = target.max() {
        s.max_multiplicity = s.max_multiplicity.min((space.max_element / hi).max(1));
    }
    s
}

/// Streams realizations of `target` in semigroup order, then by element,
/// stopping after `limit` hits.
///
/// `resume` continues after a previously reported position. Semigroups are
/// processed in parallel chunks; events are delivered in canonical order.
pub fn search_realizations(
    target: &LengthSet,
    space: &SearchSpace,
    limit: usize,
    resume: Option<&SearchPosition>,
    mut sink: impl FnMut(SearchEvent),
) -> Result<SearchSummary> {
    space.validate()?;
    if limit < 1 {
        return Err(Error::InvalidInput("limit must be at least 1".into()));
    }
    let effective = effective_space(target, space);
    let mut stream = SemigroupEnumerator::starting_at(&effective, resume.map(|p| p.atoms.as_slice()));
    let mut summary = SearchSummary::default();
    loop {
        let chunk: Vec<NumericalSemigroup> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            summary.exhausted = true;
            return Ok(summary);
        }
        let hits: Vec<Result<Vec<u64>>> = chunk
            .par_iter()
            .map(|s| hits_in(s, target, space.max_element))
            .collect();
        let mut last_atoms = Vec::new();
        for (s, xs) in chunk.into_iter().zip(hits) {
            let skip_to = match resume {
                Some(p) if p.atoms == s.atoms() => p.last_element,
                _ => 0,
            };
            summary.scanned += 1;
            for x in xs? {
                if x <= skip_to {
                    continue;
                }
                sink(SearchEvent::Found(CatalogEntry {
                    semigroup: s.clone(),
                    element: x,
                    as_set: target.clone(),
                }));
                summary.found += 1;
                if summary.found == limit {
                    sink(SearchEvent::Progress {
                        position: SearchPosition {
                            atoms: s.atoms().to_vec(),
                            last_element: x,
                        },
                        scanned: summary.scanned,
                    });
                    return Ok(summary);
                }
            }
            last_atoms = s.atoms().to_vec();
        }
        sink(SearchEvent::Progress {
            position: SearchPosition {
                atoms: last_atoms,
                last_element: space.max_element,
            },
            scanned: summary.scanned,
        });
    }
}

/// Up to `limit` realizations of `target`, in semigroup order then by element.
pub fn find_realizations(target: &LengthSet, space: &SearchSpace, limit: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    search_realizations(target, space, limit, None, |e| {
        if let SearchEvent::Found(entry) = e {
            out.push(entry);
        }
    })?;
    Ok(out)
}

/// Order used to pick the smallest realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalOrder {
    /// Element, then genus, then atoms.
    #[default]
    Element,
    /// Genus, then element, then atoms.
    Genus,
    /// Atoms lexicographically, then element.
    Lex,
}

impl FromStr for MinimalOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "element" => Ok(Self::Element),
            "genus" => Ok(Self::Genus),
            "lex" => Ok(Self::Lex),
            _ => Err(Error::InvalidInput(format!("unknown order {s:?}; expected x, genus or lex"))),
        }
    }
}

impl MinimalOrder {
    pub fn compare(self, a: &CatalogEntry, b: &CatalogEntry) -> Ordering {
        let x = a.element.cmp(&b.element);
        let genus = a.semigroup.genus().cmp(&b.semigroup.genus());
        let atoms = a.semigroup.atoms().cmp(b.semigroup.atoms());
        match self {
            Self::Element => x.then(genus).then(atoms),
            Self::Genus => genus.then(x).then(atoms),
            Self::Lex => atoms.then(x),
        }
    }
}

/// The smallest in-space realization of `target` under `order`.
pub fn minimal_realization(
    target: &LengthSet,
    space: &SearchSpace,
    order: MinimalOrder,
) -> Result<Option<CatalogEntry>> {
    space.validate()?;
    let effective = effective_space(target, space);
    let mut stream = enumerate_semigroups(&effective);
    let mut best: Option<CatalogEntry> = None;
    loop {
        let chunk: Vec<NumericalSemigroup> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(best);
        }
        // Within one semigroup every order prefers the smallest element.
        let firsts: Vec<Result<Option<u64>>> = chunk
            .par_iter()
            .map(|s| Ok(hits_in(s, target, space.max_element)?.first().copied()))
            .collect();
        for (s, first) in chunk.into_iter().zip(firsts) {
            if let Some(x) = first? {
                let entry = CatalogEntry {
                    semigroup: s,
                    element: x,
                    as_set: target.clone(),
                };
                if best.as_ref().is_none_or(|b| order.compare(&entry, b) == Ordering::Less) {
                    best = Some(entry);
                }
            }
        }
    }
}
