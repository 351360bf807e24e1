//! Listings of c.e. sets of rationals: injective replayable streams, the
//! built-in families, and finite-edit / shift / union transforms.

mod families;
mod listing;
pub mod oracle;
mod transforms;

pub use families::{
    build_a, build_t, builtin_dyadic, builtin_harmonic, builtin_thirds, finite_listing,
    rationals_in_interval, SetSpec,
};
pub use listing::{shift, Listing, ListingIter, RawSource, DEFAULT_MAX_SKIP};
pub use oracle::{Cardinality, GapOracle, Hull};
pub use transforms::{add_finite, interleave, remove_finite, shift_spec};

use thiserror::Error;

use crate::rational::Rational;
use crate::seqlang::EvalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListingError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("index value {0} is not a natural number")]
    NotNatural(Rational),
    #[error("listing has only {available} values, {wanted} required")]
    TooShort { wanted: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("family index must be at least 1, got {0}")]
    BadFamilyIndex(u64),
    #[error("empty interval: {a} > {b}")]
    EmptyInterval { a: Rational, b: Rational },
    #[error("duplicate value {0}")]
    Duplicate(Rational),
    #[error("{0} already belongs to the set")]
    NotDisjoint(Rational),
    #[error("union of zero sets")]
    EmptyUnion,
    #[error(transparent)]
    Listing(#[from] ListingError),
}
