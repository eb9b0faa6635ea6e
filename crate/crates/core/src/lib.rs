//! Exact computations with algebraic tori through their integral
//! representations.
//!
//! The crate is organised bottom-up:
//!
//! * [`zlattice`]: integer matrices, Smith normal form, subquotients, and
//!   bounded `GL_d(Z)` conjugacy search, generic over [`IntScalar`];
//! * [`glzfin`]: finite subgroups of `GL_d(Z)`;
//! * [`gcohom`]: cohomology of finite groups with lattice coefficients;
//! * [`torus`]: tori as Galois lattices;
//! * [`fpoly`] and [`places`]: global-field models, places and splitting data;
//! * [`sha`]: lattice-level Tate-Shafarevich kernels;
//! * [`classsets`]: Picard groups, unit groups and class groups;
//! * [`artinschreier`]: Artin-Schreier classes and the tori they define;
//! * [`residues`]: degree-1 and degree-2 residue maps over `F_p(t)`.

pub mod artinschreier;
pub mod classsets;
pub mod error;
pub mod fpoly;
pub mod gcohom;
pub mod glzfin;
pub mod places;
pub mod residues;
pub mod scalar;
pub mod sha;
pub mod torus;
pub mod zlattice;

pub use error::{Error, Result};
pub use scalar::IntScalar;

/// Arbitrary-precision integer matrix, the default matrix type.
pub type IntMatrix = zlattice::Matrix<num_bigint::BigInt>;
/// Machine-integer matrix used on hot paths (checked arithmetic).
pub type SmallMatrix = zlattice::Matrix<i64>;
/// Smith decomposition over arbitrary-precision integers.
pub type IntSmith = zlattice::SmithDecomposition<num_bigint::BigInt>;
