//! Verification kernel for the cohomology of special Lagrangian torus
//! fibrations and their mirrors.
//!
//! Everything except [`slag`] works over exact rationals. The crate is
//! `no_std` (it needs `alloc`); IO, file formats and the command line live in
//! the `syzkit` companion crate.
//!
//! * [`exterior`]: exterior algebra of a lattice, contraction and Poincaré
//!   duality on a torus, monodromy-invariant cohomology.
//! * [`weightfilt`]: unipotent logarithms, monodromy weight filtrations,
//!   maximally unipotent certification, nilpotent Yukawa couplings.
//! * [`k3`]: the K3 lattice model, section classes and translation monodromy.
//! * [`cy3`]: the threefold mirror-map model on even cohomology.
//! * [`slag`]: floating-point checks for the explicit fibration of
//!   `C^n - {1 + z_1 ... z_n = 0}`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cy3;
pub mod error;
pub mod exterior;
pub mod k3;
pub mod linalg;
pub mod rational;
pub mod sampling;
pub mod slag;
pub mod weightfilt;

pub use error::{Error, Result};
pub use linalg::{RationalMatrix, Subspace};
pub use rational::Q;
