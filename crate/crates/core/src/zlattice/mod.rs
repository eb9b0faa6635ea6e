//! Exact linear algebra over the integers.

mod abelian;
mod conj;
mod lattice;
mod matrix;
mod modp;
mod smith;

pub use abelian::{cokernel_shape, AbelianGroupShape};
pub use conj::{
    glz_conjugate_search, glz_simultaneous_conjugate_search, intertwiner_basis, matrix_order, modular_conjugate,
    Certificate, Conjugacy, ORDER_BOUND_DIM4,
};
pub use lattice::{
    generated_subgroup, hom_kernel, kernel_basis, relation_vectors, subgroup_contained, Sublattice, Subquotient,
};
pub use matrix::Matrix;
pub use modp::{rank_mod_p, sparse_rank_at_least};
pub use smith::{smith_generic, smith_i64, smith_normal_form, smith_with, SmithDecomposition, SmithOptions};
