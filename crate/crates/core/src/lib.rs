#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Computational side of the double-exponential count of bounded-diameter
//! hyperbolic manifolds.
//!
//! The lower-bound half lives in [`perm`], [`word`], [`pair`], [`census`],
//! [`family`] and [`graph`]: permutation pairs as index-`r` subgroups of the
//! free group `F₂`, the doubling family of second generators, short coset
//! representatives and the diameters of the resulting Schreier graphs.
//!
//! The upper-bound half lives in [`hyperbolic`], [`nerve`] and [`bounds`]:
//! hyperboloid-model geometry, separated nets, nerve 2-skeleta of ball covers
//! and log-space evaluation of every counting bound.
//!
//! The crate needs only `alloc`. File formats and the command line live in the
//! `hypcover` companion crate.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod census;
pub mod error;
pub mod experiments;
pub mod family;
pub mod graph;
pub mod hyperbolic;
pub mod nerve;
pub mod numeric;
pub mod pair;
pub mod perm;
pub mod rng;
pub mod word;

pub use error::{Error, Result};
pub use pair::PermutationPair;
pub use perm::Permutation;
pub use word::{GeneratorWord, Letter};
