//! Explicit semigroups and elements whose length set is a prescribed set of
//! at most three lengths.
//!
//! | construction      | generators                                          | element        | lengths      |
//! |-------------------|-----------------------------------------------------|----------------|--------------|
//! | `Singleton`       | 2, 2n−1                                             | 2n             | {n}          |
//! | `PairWithTwo`     | k, k+n, kn−(k+n)                                    | kn             | {2, n}       |
//! | `PairGeneral`     | tn², tn²+n, t²n+1                                   | t²n²+n         | {n, t}       |
//! | `TripleWithTwo`   | tn², tn²+n, t²n+1, t²n+n+1, t²n²−t²n−1              | t²n²+n         | {2, n, t}    |
//! | `TripleGeneral`   | rtn², r(tn²+n), r(t²n+1), r(t²n+n+1), t²n²−t²n−1    | r(t²n²+n)      | {r+1, n, t}  |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, checked_mul, Error, Result};
use crate::factorization::LengthSet;
use crate::semigroup::{gcd, GeneratorSet, NumericalSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Singleton,
    PairWithTwo,
    PairGeneral,
    TripleWithTwo,
    TripleGeneral,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::Singleton,
        Construction::PairWithTwo,
        Construction::PairGeneral,
        Construction::TripleWithTwo,
        Construction::TripleGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Singleton => "singleton",
            Construction::PairWithTwo => "pair-with-two",
            Construction::PairGeneral => "pair-general",
            Construction::TripleWithTwo => "triple-with-two",
            Construction::TripleGeneral => "triple-general",
        }
    }

    /// Parameter names in sweep order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Construction::Singleton => &["n"],
            Construction::PairWithTwo => &["n", "k"],
            Construction::PairGeneral | Construction::TripleWithTwo => &["n", "t"],
            Construction::TripleGeneral => &["r", "n", "t"],
        }
    }

    /// How many factorizations the element has.
    pub fn expected_factorization_count(self) -> u64 {
        match self {
            Construction::Singleton => 1,
            Construction::PairWithTwo | Construction::PairGeneral => 2,
            Construction::TripleWithTwo | Construction::TripleGeneral => 3,
        }
    }

    /// Builds the realization from parameter values given in
    /// [`param_names`](Self::param_names) order.
    pub fn instantiate(self, values: &[u64]) -> Result<Realization> {
        let expected = self.param_names().len();
        if values.len() != expected {
            return Err(Error::InvalidParam(format!(
                "{} takes {expected} parameters, got {}",
                self.name(),
                values.len()
            )));
        }
        match self {
            Construction::Singleton => realize_singleton(values[0]),
            Construction::PairWithTwo => realize_pair_with_two(values[0], Some(values[1])),
            Construction::PairGeneral => realize_pair_general(values[0], values[1]),
            Construction::TripleWithTwo => realize_triple_with_two(values[0], values[1]),
            Construction::TripleGeneral => realize_triple_general(values[0], values[1], values[2]),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown construction {s:?}")))
    }
}

/// A semigroup and element produced by one of the constructions, together
/// with the length set it is meant to have.
///
/// `generators` is the list as the construction writes it down;
/// `semigroup` is generated by it. The two agree exactly when the listed
/// generators are the atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub construction: Construction,
    pub params: Vec<(&'static str, u64)>,
    pub generators: GeneratorSet,
    pub semigroup: NumericalSemigroup,
    pub element: u64,
    pub target: LengthSet,
}

impl Realization {
    pub fn param(&self, name: &str) -> Option<u64> {
        self.params.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    fn build(
        construction: Construction,
        params: Vec<(&'static str, u64)>,
        generators: Vec<u64>,
        element: u64,
        target: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let generators = GeneratorSet::new(generators)?;
        let semigroup = NumericalSemigroup::new(&generators)?;
        Ok(Self {
            construction,
            params,
            generators,
            semigroup,
            element,
            target: LengthSet::new(target)?,
        })
    }
}

fn param_error(msg: impl Into<String>) -> Error {
    Error::InvalidParam(msg.into())
}

const CTX: &str = "construction parameters";

fn mul(a: u64, b: u64) -> Result<u64> {
    checked_mul(a, b, CTX)
}

fn add(a: u64, b: u64) -> Result<u64> {
    checked_add(a, b, CTX)
}

/// `⟨2, 2n−1⟩` and `x = 2n`, with length set `{n}`.
pub fn realize_singleton(n: u64) -> Result<Realization> {
    if n < 2 {
        return Err(param_error(format!("singleton needs n >= 2, got n = {n}")));
    }
    let x = mul(2, n)?;
    Realization::build(Construction::Singleton, vec![("n", n)], vec![2, x - 1], x, [n])
}

/// Smallest `k ≥ 7` coprime to `n`.
pub fn default_k(n: u64) -> u64 {
    (7..).find(|&k| gcd(n, k) == 1).expect("some k is coprime")
}

/// `⟨k, k+n, kn−(k+n)⟩` and `x = kn`, with length set `{2, n}`.
pub fn realize_pair_with_two(n: u64, k: Option<u64>) -> Result<Realization> {
    if n < 3 {
        return Err(param_error(format!("pair-with-two needs n >= 3, got n = {n}")));
    }
    let k = k.unwrap_or_else(|| default_k(n));
    if k < 7 {
        return Err(param_error(format!("pair-with-two needs k >= 7, got k = {k}")));
    }
    if gcd(n, k) != 1 {
        return Err(param_error(format!("pair-with-two needs gcd(n, k) = 1, got n = {n}, k = {k}")));
    }
    let gens = pair_with_two_generators(n, k)?;
    let x = mul(k, n)?;
    Realization::build(
        Construction::PairWithTwo,
        vec![("n", n), ("k", k)],
        gens.to_vec(),
        x,
        [2, n],
    )
}

pub(crate) fn pair_with_two_generators(n: u64, k: u64) -> Result<[u64; 3]> {
    let kn = mul(k, n)?;
    let k_plus_n = add(k, n)?;
    Ok([k, k_plus_n, kn - k_plus_n])
}

fn check_n_t(name: &str, n: u64, t: u64) -> Result<()> {
    if n < 3 {
        return Err(param_error(format!("{name} needs n >= 3, got n = {n}")));
    }
    if t <= n {
        return Err(param_error(format!("{name} needs t >= n + 1, got n = {n}, t = {t}")));
    }
    Ok(())
}

/// `(tn², tn²+n, t²n+1, t²n+n+1, t²n²−t²n−1, t²n²+n)`: the five generators
/// of the three-length construction followed by its element.
pub(crate) fn triple_values(n: u64, t: u64) -> Result<([u64; 5], u64)> {
    let n2 = mul(n, n)?;
    let t2 = mul(t, t)?;
    let tn2 = mul(t, n2)?;
    let t2n = mul(t2, n)?;
    let t2n2 = mul(t2, n2)?;
    let gens = [
        tn2,
        add(tn2, n)?,
        add(t2n, 1)?,
        add(add(t2n, n)?, 1)?,
        t2n2 - t2n - 1,
    ];
    Ok((gens, add(t2n2, n)?))
}

/// `⟨tn², tn²+n, t²n+1⟩` and `x = t²n²+n`, with length set `{n, t}`.
pub fn realize_pair_general(n: u64, t: u64) -> Result<Realization> {
    check_n_t("pair-general", n, t)?;
    let (gens, x) = triple_values(n, t)?;
    Realization::build(
        Construction::PairGeneral,
        vec![("n", n), ("t", t)],
        gens[..3].to_vec(),
        x,
        [n, t],
    )
}

/// Five generators and `x = t²n²+n`, with length set `{2, n, t}`.
pub fn realize_triple_with_two(n: u64, t: u64) -> Result<Realization> {
    check_n_t("triple-with-two", n, t)?;
    let (gens, x) = triple_values(n, t)?;
    Realization::build(
        Construction::TripleWithTwo,
        vec![("n", n), ("t", t)],
        gens.to_vec(),
        x,
        [2, n, t],
    )
}

pub(crate) fn triple_general_generators(r: u64, n: u64, t: u64) -> Result<([u64; 5], u64)> {
    let (g, x) = triple_values(n, t)?;
    Ok((
        [mul(r, g[0])?, mul(r, g[1])?, mul(r, g[2])?, mul(r, g[3])?, g[4]],
        mul(r, x)?,
    ))
}

/// The three-length construction with the first four generators and the
/// element scaled by `r`; length set `{r+1, n, t}`.
pub fn realize_triple_general(r: u64, n: u64, t: u64) -> Result<Realization> {
    if r < 1 {
        return Err(param_error(format!("triple-general needs r >= 1, got r = {r}")));
    }
    if n < r.saturating_add(2) {
        return Err(param_error(format!("triple-general needs n >= r + 2, got r = {r}, n = {n}")));
    }
    check_n_t("triple-general", n, t)?;
    let (gens, x) = triple_general_generators(r, n, t)?;
    Realization::build(
        Construction::TripleGeneral,
        vec![("r", r), ("n", n), ("t", t)],
        gens.to_vec(),
        x,
        [r + 1, n, t],
    )
}

/// Picks the construction matching the shape of `target`.
pub fn realize(target: &LengthSet) -> Result<Realization> {
    if target.is_empty() {
        return Err(param_error("target length set is empty"));
    }
    if target.min() < Some(2) {
        return Err(param_error(format!(
            "{target}: lengths must be at least 2 (an element with a length-1 factorization is an atom and has no other)"
        )));
    }
    match *target.as_slice() {
        [a] => realize_singleton(a),
        [2, n] => realize_pair_with_two(n, None),
        [m, n] => realize_pair_general(m, n),
        [2, b, c] => realize_triple_with_two(b, c),
        [a, b, c] => realize_triple_general(a - 1, b, c),
        _ => Err(Error::UnsupportedCardinality(target.len())),
    }
}
