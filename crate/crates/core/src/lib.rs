//! Finite combinatorial 2-complexes with group actions.
//!
//! The crate decides diagrammatic reducibility of small simply-connected
//! complexes, searches van Kampen fillings and reduced spherical diagrams,
//! computes fixed-point subcomplexes of finite automorphism groups, and emits
//! replayable certificates for all of it.

pub mod complex;
pub mod diagram;
pub mod homotopy;
pub mod dr;
pub mod action;
pub mod construct;
pub mod builders;
pub mod certificate;
pub mod cli;
