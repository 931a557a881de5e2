//! Finite join-semilattices and their free product.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::map::MonotoneMap;
use crate::poset::{Order, Poset};

#[derive(Clone)]
pub struct FiniteJoinSemilattice(Arc<Inner>);

struct Inner {
    poset: Poset,
    join: Vec<u32>,
}

impl FiniteJoinSemilattice {
    /// Builds the join table of `poset`, failing if some pair has no least upper bound.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::InvalidOrder("empty order".into()));
        }
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let upper = poset.up_set(a).intersection(poset.up_set(b));
                let lub = upper
                    .iter()
                    .find(|&m| *poset.up_set(m) == upper)
                    .ok_or_else(|| Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "join"))?;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        Ok(FiniteJoinSemilattice(Arc::new(Inner { poset, join })))
    }

    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let n = l.len();
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = l.join(a, b) as u32;
            }
        }
        FiniteJoinSemilattice(Arc::new(Inner { poset: l.to_poset(), join }))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.0.join[a * self.len() + b] as usize
    }

    pub fn poset(&self) -> &Poset {
        &self.0.poset
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn top(&self) -> usize {
        (1..self.len()).fold(0, |acc, x| self.join(acc, x))
    }
}

impl Order for FiniteJoinSemilattice {
    fn len(&self) -> usize {
        self.0.poset.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.0.poset.leq(a, b)
    }
    fn label(&self, a: usize) -> &str {
        self.0.poset.label(a)
    }
    fn index_of(&self, label: &str) -> Option<usize> {
        self.0.poset.index_of(label)
    }
    fn upper_covers(&self, a: usize) -> &[usize] {
        self.0.poset.upper_covers(a)
    }
}

impl PartialEq for FiniteJoinSemilattice {
    fn eq(&self, other: &Self) -> bool {
        self.0.poset == other.0.poset
    }
}

impl fmt::Debug for FiniteJoinSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteJoinSemilattice").field("elements", &self.labels()).finish()
    }
}

/// The free product of join-semilattices: formal joins of elements taken from
/// distinct factors. An element is a tuple with `_` at absent coordinates.
/// Returns the product and the embedding of each factor.
pub fn free_product_jsl(factors: &[FiniteJoinSemilattice]) -> Result<(FiniteJoinSemilattice, Vec<MonotoneMap>)> {
    let fp = FreeProduct::new(factors)?;
    Ok((fp.product, fp.embeddings))
}

/// A free product of join-semilattices together with the tuple of each
/// element (`None` at absent coordinates).
#[derive(Clone, Debug)]
pub struct FreeProduct {
    pub product: FiniteJoinSemilattice,
    pub embeddings: Vec<MonotoneMap>,
    pub tuples: Vec<Vec<Option<usize>>>,
}

impl FreeProduct {
    pub fn new(factors: &[FiniteJoinSemilattice]) -> Result<Self> {
        build_free_product(factors)
    }
}

fn build_free_product(factors: &[FiniteJoinSemilattice]) -> Result<FreeProduct> {
    if factors.is_empty() {
        return Err(Error::EmptyList);
    }
    let k = factors.len();
    let mut elems: Vec<Vec<Option<usize>>> = Vec::new();
    for support in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| support >> i & 1 == 1).collect();
        let mut coords = vec![0usize; idx.len()];
        'tuples: loop {
            let mut e = vec![None; k];
            for (j, &i) in idx.iter().enumerate() {
                e[i] = Some(coords[j]);
            }
            elems.push(e);
            for j in (0..idx.len()).rev() {
                coords[j] += 1;
                if coords[j] < factors[idx[j]].len() {
                    continue 'tuples;
                }
                coords[j] = 0;
            }
            break;
        }
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|e| {
            let parts: Vec<&str> = e
                .iter()
                .enumerate()
                .map(|(i, c)| c.map_or("_", |x| factors[i].label(x)))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let leq = |a: &[Option<usize>], b: &[Option<usize>]| {
        a.iter().zip(b).enumerate().all(|(i, (x, y))| match (x, y) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => factors[i].leq(*x, *y),
        })
    };
    let poset = Poset::new(labels, |a, b| leq(&elems[a], &elems[b]))?;
    let product = FiniteJoinSemilattice::from_poset(poset)?;
    let index = |e: &[Option<usize>]| elems.iter().position(|x| x == e).expect("tuple is an element");
    let embeddings = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let image = (0..f.len())
                .map(|x| {
                    let mut e = vec![None; k];
                    e[i] = Some(x);
                    index(&e)
                })
                .collect();
            MonotoneMap::new(f.clone(), product.clone(), image)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeProduct { product, embeddings, tuples: elems })
}
