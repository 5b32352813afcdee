//! Certified verification pipeline for the classification of integers that
//! are differences of a Padovan number and a Lucas number in more than one
//! way.
//!
//! The crate re-derives every computational ingredient of the published
//! classification with interval arithmetic that carries explicit error
//! bounds end to end: exact sequence enumeration, certified algebraic
//! constants, lower bounds for linear forms in logarithms, continued
//! fraction data, and the lattice-reduction campaigns that bring the index
//! bounds down to a finite search range. The [`certificate`] module packages
//! the comparison of every recomputed quantity against its published
//! counterpart into a machine-readable certificate.

pub mod certificate;
pub mod contfrac;
pub mod field;
pub mod logbounds;
pub mod real;
pub mod reduction;
pub mod search;
pub mod seq;
