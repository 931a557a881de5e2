//! Free distributive lattices as antichains of generator subsets (join of meets).

use std::collections::HashMap;

use super::term::LatticeTerm;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Largest generator count accepted by [`fd_enumerate`].
pub const FD_MAX_GENERATORS: usize = 4;

/// An element of the free distributive lattice: the join, over the members,
/// of the meet of the generators in each member (bit `k` is generator `k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FDElement {
    members: Vec<u32>,
}

fn minimize(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<u32> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect();
    keep
}

impl FDElement {
    /// Builds an element from arbitrary nonempty subsets, discarding non-minimal ones.
    pub fn from_sets(sets: impl IntoIterator<Item = u32>) -> Self {
        let sets: Vec<u32> = sets.into_iter().collect();
        assert!(!sets.is_empty() && sets.iter().all(|&s| s != 0), "FD elements need nonempty sets");
        FDElement { members: minimize(sets) }
    }

    pub fn generator(k: usize) -> Self {
        FDElement { members: vec![1 << k] }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// Join-of-meets term over the given generator names.
    pub fn to_term(&self, gens: &[&str]) -> LatticeTerm {
        LatticeTerm::join_of(
            self.members
                .iter()
                .map(|&s| {
                    LatticeTerm::meet_of(
                        (0..32).filter(|k| s >> k & 1 == 1).map(|k| LatticeTerm::gen(gens[k])).collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn render(&self, gens: &[&str]) -> String {
        self.to_term(gens).render_compact()
    }
}

pub fn fd_leq(a: &FDElement, b: &FDElement) -> bool {
    a.members.iter().all(|&s| b.members.iter().any(|&t| t & !s == 0))
}

pub fn fd_join(a: &FDElement, b: &FDElement) -> FDElement {
    FDElement { members: minimize(a.members.iter().chain(&b.members).copied().collect()) }
}

pub fn fd_meet(a: &FDElement, b: &FDElement) -> FDElement {
    let mut out = Vec::with_capacity(a.members.len() * b.members.len());
    for &s in &a.members {
        for &t in &b.members {
            out.push(s | t);
        }
    }
    FDElement { members: minimize(out) }
}

/// Normal form of `t`; generator `k` is `gens[k]`.
pub fn fd_from_term(t: &LatticeTerm, gens: &[&str]) -> Result<FDElement> {
    Ok(match t {
        LatticeTerm::Gen(g) => {
            let k = gens.iter().position(|x| x == g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?;
            FDElement::generator(k)
        }
        LatticeTerm::Meet(xs) => {
            let mut acc = fd_from_term(&xs[0], gens)?;
            for x in &xs[1..] {
                acc = fd_meet(&acc, &fd_from_term(x, gens)?);
            }
            acc
        }
        LatticeTerm::Join(xs) => {
            let mut acc = fd_from_term(&xs[0], gens)?;
            for x in &xs[1..] {
                acc = fd_join(&acc, &fd_from_term(x, gens)?);
            }
            acc
        }
    })
}

/// Image under the anti-automorphism swapping meets and joins of generators.
pub fn fd_dual(a: &FDElement, n: usize) -> FDElement {
    let joins_of = |s: u32| FDElement { members: (0..n).filter(|k| s >> k & 1 == 1).map(|k| 1u32 << k).collect() };
    let mut it = a.members.iter();
    let mut acc = joins_of(*it.next().expect("nonempty antichain"));
    for &s in it {
        acc = fd_meet(&acc, &joins_of(s));
    }
    acc
}

/// All elements of the free distributive lattice on `n` generators, listed so
/// that every element precedes those strictly above it.
pub fn fd_enumerate(n: usize) -> Result<Vec<FDElement>> {
    if n > FD_MAX_GENERATORS {
        return Err(Error::SizeCapExceeded { size: n, cap: FD_MAX_GENERATORS });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let subsets: Vec<u32> = (1..(1u32 << n)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    // Each antichain is built by adding subsets in increasing index order, each
    // incomparable to all chosen so far.
    fn rec(subsets: &[u32], start: usize, current: &mut Vec<u32>, out: &mut Vec<FDElement>) {
        for i in start..subsets.len() {
            let s = subsets[i];
            if current.iter().all(|&t| t & s != t && t & s != s) {
                current.push(s);
                let mut members = current.clone();
                members.sort_unstable();
                out.push(FDElement { members });
                rec(subsets, i + 1, current, out);
                current.pop();
            }
        }
    }
    rec(&subsets, 0, &mut current, &mut out);
    let below: Vec<usize> = out.iter().map(|x| out.iter().filter(|y| fd_leq(y, x)).count()).collect();
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by(|&i, &j| below[i].cmp(&below[j]).then_with(|| out[i].cmp(&out[j])));
    Ok(order.into_iter().map(|i| out[i].clone()).collect())
}

/// The free distributive lattice on `gens` as a finite lattice, with elements
/// labelled by their join-of-meets normal form, together with those elements.
pub fn fd_lattice(gens: &[&str]) -> Result<(FiniteLattice, Vec<FDElement>)> {
    let elems = fd_enumerate(gens.len())?;
    let index: HashMap<FDElement, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let labels = elems.iter().map(|e| e.render(gens)).collect();
    let l = FiniteLattice::from_fns(
        labels,
        |a, b| fd_leq(&elems[a], &elems[b]),
        |a, b| index[&fd_meet(&elems[a], &elems[b])],
        |a, b| index[&fd_join(&elems[a], &elems[b])],
    );
    Ok((l, elems))
}
