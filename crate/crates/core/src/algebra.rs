//! A common interface for lattices given by tables and for the free lattice.

use std::cell::RefCell;

use crate::free::{FreeLatticeOracle, LatticeTerm};
use crate::lattice::FiniteLattice;

pub trait LatticeAlgebra {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn meet_all<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Option<Self::Elem>
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(None, |acc, x| Some(acc.map_or_else(|| x.clone(), |a| self.meet(&a, x))))
    }

    fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Option<Self::Elem>
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(None, |acc, x| Some(acc.map_or_else(|| x.clone(), |a| self.join(&a, x))))
    }
}

impl LatticeAlgebra for FiniteLattice {
    type Elem = usize;
    fn leq(&self, a: &usize, b: &usize) -> bool {
        FiniteLattice::leq(self, *a, *b)
    }
    fn meet(&self, a: &usize, b: &usize) -> usize {
        FiniteLattice::meet(self, *a, *b)
    }
    fn join(&self, a: &usize, b: &usize) -> usize {
        FiniteLattice::join(self, *a, *b)
    }
}

/// The free lattice over string generators. Elements are canonical forms;
/// comparisons go through Whitman's procedure with a shared memo.
#[derive(Default, Debug)]
pub struct FreeLattice {
    oracle: RefCell<FreeLatticeOracle>,
}

impl FreeLattice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical(&self, t: &LatticeTerm) -> LatticeTerm {
        self.oracle.borrow_mut().canonical(t)
    }
}

impl LatticeAlgebra for FreeLattice {
    type Elem = LatticeTerm;
    fn leq(&self, a: &LatticeTerm, b: &LatticeTerm) -> bool {
        self.oracle.borrow_mut().leq(a, b)
    }
    fn meet(&self, a: &LatticeTerm, b: &LatticeTerm) -> LatticeTerm {
        self.canonical(&LatticeTerm::meet(a.clone(), b.clone()))
    }
    fn join(&self, a: &LatticeTerm, b: &LatticeTerm) -> LatticeTerm {
        self.canonical(&LatticeTerm::join(a.clone(), b.clone()))
    }
}
