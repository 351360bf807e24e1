//! Enumerations of countable sets of rationals and the co-order relations
//! between them.

#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod cli;
pub mod coorder;
pub mod experiments;
pub mod ordertype;
pub mod rational;
pub mod seqlang;
pub mod sequences;

pub use coorder::{prefix_coorder, CoorderError, CoorderVerdict, WitnessPair};
pub use ordertype::OrderType;
pub use rational::Rational;
pub use sequences::{Listing, SetSpec};
