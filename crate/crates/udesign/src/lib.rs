//! Toolkit for constructing, verifying, and numerically searching for
//! unitary t-designs: finite sets of unitaries whose t-th order moments
//! reproduce Haar averages over U(d).
//!
//! The crate is organized around the pipeline
//!
//! * [`gfield`] — exact arithmetic in GF(p^m), field extensions, traces,
//!   dual bases, additive characters;
//! * [`weyl`] — discrete phase space, shift/boost and Weyl (generalized
//!   Pauli) operators, tensor factoring;
//! * [`symplectic`] — symplectic matrices over finite fields, group
//!   closures, metaplectic unitaries, Jacobi/Clifford designs and twirls;
//! * [`designs`] — frame potentials, design verification, Choi matrices,
//!   cardinality bounds, character criteria;
//! * [`mub`] — stabilizer states, mutually unbiased bases, asymptotic
//!   2-designs, entanglement averages;
//! * [`optimize`] — frame-potential minimization over tuples of unitaries;
//! * [`catalog`] — built-in designs and design-file serialization;
//! * [`linopt`] — the embedding U(d) → SpO(2d) and covariance-matrix
//!   averages for passive linear optics.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `udesign` binary for the command-line surface.

pub mod catalog;
pub mod cli;
pub mod designs;
pub mod gfield;
pub mod linalg;
pub mod linopt;
pub mod mub;
pub mod optimize;
pub mod symplectic;
pub mod weyl;

mod error;

pub use error::{Error, Result};
pub use linalg::{CMat, CVec};
