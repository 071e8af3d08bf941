//! Exact combinatorics of two-lane traffic merging.
//!
//! Cars arrive one at a time at a two-lane stoplight where the left lane
//! merges into the right. A `0` car always picks the right lane; a `1` car
//! picks the shorter lane, with ties going right. Every arrival sequence
//! deterministically produces a lattice path (the merging path) that stays
//! weakly above the diagonal.
//!
//! The crate provides:
//!
//! * [`arrival`] — the merging simulation and its derived data (lane
//!   assignments, bounces, diagonal touches, parity vectors, paths);
//! * [`counting`] — exact path counts over arbitrary-precision integers,
//!   both recursive and closed-form;
//! * [`expectation`] — exact rational expected right-lane lengths;
//! * [`bijections`] — the coin-flip map, the reflection map on bounce
//!   classes, and the two-zeros step map;
//! * [`trails`] — longest trails in the looped complete graph and their
//!   domino-snake transliteration;
//! * [`classes`] — color-blind equivalence classes of arrival sequences;
//! * [`oracle`] — brute-force enumeration and verification of everything
//!   above, plus a seeded Monte Carlo estimator.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrival;
pub mod bijections;
pub mod classes;
pub mod counting;
mod error;
pub mod expectation;
pub mod oracle;
pub mod trails;

pub use arrival::{
    merging_path, parity_vector, simulate, touch_positions, ArrivalSequence, MergeResult,
    MergingPath, ParityVector, Step,
};
pub use error::{Error, Result};
