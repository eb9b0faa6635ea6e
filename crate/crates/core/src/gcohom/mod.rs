//! Cohomology of finite groups with coefficients in finitely generated
//! modules, through the normalized inhomogeneous bar resolution.
//!
//! Modules are [`GLattice`]s: `Z^r + Z/m_1 + ... + Z/m_t` with an action by
//! integer matrices. Cohomology classes are given by coordinates with respect
//! to canonical generators, and every generator comes with a normalized
//! representative cocycle stored as a full table.

mod bar;
mod group;
mod maps;
mod module;

pub use bar::{
    coboundary, cohomology, cohomology_with_budget, cyclic_cohomology_shape, Budget, Cochain, CohomologyGroup,
};
pub use group::{GroupTable, Subgroup};
pub use maps::{
    connecting_hom, fixed_quotient_lattice, induced_module, inflation_map, pushforward, restrict_cochain,
    restrict_cohomology, restriction_map, sha_lattice, sha_lattice_of, shapiro, CohomologyMap, InducedMap, ShaLattice,
    ShapiroWitness, ShortExactSequence,
};
pub use module::GLattice;
