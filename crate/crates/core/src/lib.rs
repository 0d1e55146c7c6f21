//! Exact tools for 2-modular matrices and the matroids they represent.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: integer matrices, exact determinants, subdeterminant bounds.
//! * [`normal_form`]: labeled representations, standard form `[I | X]`, duals.
//! * [`matroid`]: rank-oracle matroids and derived constructions.
//! * [`catalog`]: the named matrices and matroids.
//! * [`extension`]: modular cuts and single-element extensions.
//! * [`structure`]: isomorphism, minors, spikes and special points.
//! * [`search`]: representability search, excluded minors, rank-2 bounds.

pub mod catalog;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod matroid;
pub mod normal_form;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
