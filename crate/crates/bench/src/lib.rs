//! Inputs shared by the benchmarks.

use latext_core::{FiniteLattice, MonotoneMap};

/// Isotone maps from a 3-chain and the square into N5.
pub fn n5_maps() -> Vec<MonotoneMap> {
    let n5 = FiniteLattice::n5();
    let c3 = FiniteLattice::chain(3);
    let sq = FiniteLattice::boolean(2);
    vec![
        MonotoneMap::new(c3, n5.clone(), vec![0, 3, 4]).expect("isotone"),
        MonotoneMap::new(sq, n5, vec![1, 1, 2, 4]).expect("isotone"),
    ]
}

/// The identity on the two-element chain, twice.
pub fn chain_identities() -> Vec<MonotoneMap> {
    let two = FiniteLattice::chain(2);
    vec![MonotoneMap::identity(&two), MonotoneMap::identity(&two)]
}
