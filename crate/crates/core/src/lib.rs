//! Computational workbench for conjugation racks of finite groups: subrack
//! lattices, their order complexes, and homology-level verification of the
//! structure theorems that govern them.

pub mod bits;
pub mod caps;
pub mod complex;
pub mod dot;
pub mod error;
pub mod group;
pub mod homology;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod partition;
pub mod perm;
pub mod poset;
pub mod rack;
pub mod suite;
pub mod theorems;

pub use bits::SubsetBits;
pub use caps::Caps;
pub use error::{Error, Result};
pub use group::{ElementSet, PermGroup};
pub use perm::Permutation;
pub use rack::FiniteRack;
