//! Computational toolkit for even Artin groups.
//!
//! Starting from a Coxeter matrix this crate builds the graded Lie ring
//! `L[M] = L_1 ⊕ L_2` that presents the lower central series of the Artin
//! group truncated at rank three, decides isomorphism of Coxeter matrices
//! through their reduced matrices, and carries the exact machinery used to
//! check the structure theory: a truncated Magnus ring, finite-field Lie
//! algebras and exhaustive search oracles.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, randomized
//! suites and the command line live in the `evenartin` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod brute;
pub mod coxeter;
mod entry;
mod error;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod magnus;
pub mod report;

pub use coxeter::{
    brute_matrix_iso, matrices_isomorphic, Classification, CoxeterMatrix, Family, IsoWitness,
    ReducedMatrix,
};
pub use entry::Entry;
pub use error::{Error, MatrixError};
pub use lie::{LieAlgebra, LieElement, Modulus, MorphismWitness, Slot};
pub use report::{Check, Report};
