//! Minimal cellular resolutions of monomial ideals via discrete Morse theory.
//!
//! The crate enumerates the cells of the Taylor simplex of a monomial ideal,
//! constructs (generalized) Barile-Macchia matchings from bridges and true
//! gaps, and assembles the induced Morse resolutions with exact integer
//! differentials. Closed-form machinery for `p`-path ideals of paths and
//! cycles lives in [`path_family`], and an independent simplicial-homology
//! oracle for multigraded Betti numbers lives in [`homology`].
//!
//! Everything is `no_std` + `alloc`; IO, file formats and the command line
//! front end live in the companion `bmres` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod betti;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod matching;
pub mod morse;
pub mod order;
pub mod path_family;

pub use betti::{BettiTable, GradedBettiTable};
pub use error::Error;
pub use ideal::{lcm_of_cell, Cell, Monomial, MonomialIdeal};
pub use matching::{
    barile_macchia, bridges, classify_potentially_type2, gaps, generalized_barile_macchia,
    sbridge, true_gaps, verify_matching, CellLabel, Guard, MatchEdge, Matching, MatchingReport,
};
pub use morse::{
    betti_from_resolution, compose_check, is_minimal, minimality, morse_resolution,
    taylor_resolution, MatchedGraph, MorseResolution,
};
pub use order::{OrderMap, TotalOrder};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
