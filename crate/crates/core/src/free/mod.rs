//! Free algebras: free lattices, free distributive and Boolean lattices, and
//! free products of join-semilattices.

pub mod fb;
pub mod fd;
pub mod semilattice;
pub mod term;
pub mod whitman;

pub use fb::{fb_complement, fb_enumerate, fb_from_term, fb_join, fb_lattice, fb_leq, fb_meet, prime_implicants, Cube, FBElement};
pub use fd::{fd_dual, fd_enumerate, fd_from_term, fd_join, fd_lattice, fd_leq, fd_meet, FDElement};
pub use semilattice::{free_product_jsl, FiniteJoinSemilattice, FreeProduct};
pub use term::{eval_term, parse_boolean_term, parse_term, BooleanTerm, LatticeTerm};
pub use whitman::{canonical_form, fl_eq, fl_leq, FreeLatticeOracle, Reducibility};
