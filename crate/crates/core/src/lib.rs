//! Computational kernels for warped-convolution deformations of charged
//! fermionic field nets on four-dimensional de Sitter space.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure value
//! computation: quaternionic de Sitter geometry, the spin covering group,
//! wedge predicates, a finite-mode CAR algebra in Fock representation, the
//! warped convolution itself, and the property checks built on top of them.
//! File formats, configuration and the command line live in the `dsdeform`
//! companion crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod car_fock;
pub mod deformation;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod quadrature;
pub mod rng;
pub mod spin_group;
pub mod suites;
pub mod verification;
pub mod wedges;

pub use error::{Error, Result};
