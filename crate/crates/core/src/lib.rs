//! Coset posets of finite permutation groups, their homology, the Hall
//! zeta function, and generation checks for alternating groups.
//!
//! Permutations act on the right: `p * q` applies `p` first, and conjugation
//! is `x^g = g⁻¹ x g`. Points are 0-based internally and 1-based in cycle
//! notation.

pub mod a7smith;
pub mod catalog;
pub mod complexes;
pub mod coset_poset;
pub mod elements;
pub mod error;
pub mod genchecks;
pub mod group;
pub mod hallzeta;
pub mod lattice;
pub mod linalg;
pub mod perm;
pub mod poset;
pub mod products;
pub mod sylow;

pub use error::{Error, Result};
pub use group::GeneratedGroup;
pub use lattice::{Family, MoebiusTable, SubgroupLattice};
pub use perm::Permutation;
