//! Finite lattices, free lattice constructions, and extensions of isotone maps
//! to free products.

pub mod algebra;
pub mod bits;
pub mod catalog;
pub mod constructions;
pub mod downset_prod;
pub mod error;
pub mod free;
pub mod lattice;
pub mod map;
pub mod partial;
pub mod poset;
pub mod text;
pub mod variety;

pub use algebra::{FreeLattice, LatticeAlgebra};
pub use error::{Error, Hypothesis, Result};
pub use lattice::FiniteLattice;
pub use map::{MapMode, MonotoneMap, Verdict};
pub use partial::PartialLattice;
pub use poset::{Order, Poset};
