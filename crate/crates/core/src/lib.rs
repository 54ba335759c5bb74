//! Length sets of factorizations in numerical semigroups.
//!
//! - [`semigroup`]: numerical semigroups, minimal generators, Apéry sets,
//!   Frobenius number and gaps.
//! - [`factorization`]: every decomposition of an element into atoms and the
//!   resulting set of lengths.
//! - [`constructions`]: explicit realizations of any set of at most three
//!   lengths, each at least 2.
//! - [`verify`]: brute-force checks of those realizations and parameter sweeps.
//! - [`record`]: JSON forms of realizations, reports and catalog entries.
//! - [`search`]: bounded enumeration of semigroups to look for realizations of
//!   arbitrary length sets and for the smallest ones.

pub mod constructions;
pub mod error;
pub mod factorization;
pub mod record;
pub mod search;
pub mod semigroup;
pub mod verify;

pub use error::{Error, Result};
pub use factorization::{
    addendization_set, count_factorizations, factorizations, length_set_fast, length_sets_upto,
    Factorization, LengthSet,
};
pub use semigroup::{gcd_all, GeneratorSet, NumericalSemigroup};
pub use constructions::{realize, Construction, Realization};
pub use verify::{check_realization, sweep_verify, verify_atoms, Verdict, VerificationReport};
pub use search::{
    catalog_length_sets, enumerate_semigroups, find_realizations, minimal_realization, CatalogEntry,
    MinimalOrder, SearchSpace,
};
