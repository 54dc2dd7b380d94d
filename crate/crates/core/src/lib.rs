//! Intervals in the greedy and ordinary m-Tamari posets.
//!
//! The crate enumerates intervals by brute force, solves the catalytic
//! functional equations that count them as truncated power series,
//! evaluates the rational parametrizations of those series and the
//! closed-form counts, and checks all of these against each other.

pub mod closedform;
pub mod combinat;
pub mod error;
pub mod identities;
pub mod paths;
pub mod poly;
pub mod posets;
pub mod report;
pub mod series;
pub mod verify;

pub use error::{Result, TamariError};
pub use paths::{DyckWord, Limits, PathStats};
pub use poly::{Marker, Monomial, Rational, SparsePoly};

pub use posets::{CoverGraph, Flavor, IntervalRecord};
pub use report::Report;
pub use series::TSeries;
