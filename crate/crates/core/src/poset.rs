//! Finite partially ordered sets over opaque string labels.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Read access to a finite order whose elements are the indices `0..len()`.
pub trait Order {
    fn len(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn label(&self, a: usize) -> &str;
    fn index_of(&self, label: &str) -> Option<usize>;
    /// Elements covering `a`, in increasing index order.
    fn upper_covers(&self, a: usize) -> &[usize];

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i).to_string()).collect()
    }

    fn lookup(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

#[derive(Clone)]
pub struct Poset(Arc<PosetInner>);

struct PosetInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    covers: OnceLock<Vec<Vec<usize>>>,
}

pub(crate) fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::InvalidOrder(format!("bad label {l:?}")));
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidOrder(format!("duplicate label {l}")));
        }
    }
    Ok(index)
}

pub(crate) fn covers_from_sets(up: &[BitSet], down: &[BitSet]) -> Vec<Vec<usize>> {
    (0..up.len())
        .map(|x| {
            up[x]
                .iter()
                .filter(|&y| y != x && up[x].intersection(&down[y]).count() == 2)
                .collect()
        })
        .collect()
}

impl Poset {
    /// Builds a poset from an explicit relation, validating the order axioms.
    pub fn new(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = labels.len();
        let index = index_labels(&labels)?;
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InvalidOrder(format!("{} is not reflexive", labels[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!(
                        "{} and {} violate antisymmetry",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidOrder(format!(
                        "transitivity fails above {} <= {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Poset(Arc::new(PosetInner { labels, index, up, down, covers: OnceLock::new() })))
    }

    /// Order generated by the given `(lower, upper)` pairs under reflexive-transitive closure.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        let mut up = vec![BitSet::new(n); n];
        for (i, u) in up.iter_mut().enumerate() {
            u.insert(i);
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidOrder(format!("cover ({a}, {b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Poset::new(labels, |i, j| up[i].contains(j))
    }

    pub fn from_cover_labels(labels: &[&str], covers: &[(&str, &str)]) -> Result<Poset> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index = index_labels(&owned)?;
        let pairs = covers
            .iter()
            .map(|(a, b)| {
                let ia = *index.get(*a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
                let ib = *index.get(*b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
                Ok((ia, ib))
            })
            .collect::<Result<Vec<_>>>()?;
        Poset::from_covers(owned, &pairs)
    }

    pub fn antichain(labels: &[&str]) -> Poset {
        Poset::from_cover_labels(labels, &[]).expect("antichain labels must be valid")
    }

    pub fn chain(labels: &[&str]) -> Poset {
        let covers: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::from_cover_labels(labels, &covers).expect("chain labels must be valid")
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.0.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.0.down[a]
    }

    pub fn is_downset(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.0.down[x].is_subset(set))
    }

    /// Elements sorted so that every element precedes everything strictly above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.0.down[i].count(), i));
        order
    }

    /// The induced order on the given elements, keeping their labels.
    pub fn restrict(&self, elems: &[usize]) -> Poset {
        let labels = elems.iter().map(|&i| self.0.labels[i].clone()).collect();
        Poset::new(labels, |a, b| self.leq(elems[a], elems[b])).expect("restriction of a poset")
    }

    pub fn dual(&self) -> Poset {
        Poset::new(self.0.labels.clone(), |a, b| self.leq(b, a)).expect("dual of a poset")
    }

    pub fn minimal_elements(&self, set: &BitSet) -> Vec<usize> {
        set.iter()
            .filter(|&x| set.iter().all(|y| y == x || !self.leq(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self, set: &BitSet) -> Vec<usize> {
        set.iter()
            .filter(|&x| set.iter().all(|y| y == x || !self.leq(x, y)))
            .collect()
    }
}

impl Order for Poset {
    fn len(&self) -> usize {
        self.0.labels.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.0.up[a].contains(b)
    }

    fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    fn upper_covers(&self, a: usize) -> &[usize] {
        &self.0.covers.get_or_init(|| covers_from_sets(&self.0.up, &self.0.down))[a]
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.0.labels == other.0.labels && self.0.up == other.0.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("elements", &self.0.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_covers() {
        let p = Poset::chain(&["0", "1", "2"]);
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p.upper_covers(0), &[1]);
        assert_eq!(p.upper_covers(2), &[] as &[usize]);
    }

    #[test]
    fn rejects_cycles_and_bad_labels() {
        assert!(Poset::from_cover_labels(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Poset::from_cover_labels(&["a", "a"], &[]).is_err());
        assert!(Poset::from_cover_labels(&["a b"], &[]).is_err());
        assert!(Poset::new(vec!["x".into(), "y".into()], |i, j| i == j || (i == 0 && j == 1)).is_ok());
        assert!(Poset::new(vec!["x".into(), "y".into()], |i, j| i != j).is_err());
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = Poset::from_cover_labels(&["c", "a", "b"], &[("a", "c"), ("b", "c")]).unwrap();
        let ext = p.linear_extension();
        let pos: Vec<usize> = (0..3).map(|i| ext.iter().position(|&e| e == i).unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                if p.lt(i, j) {
                    assert!(pos[i] < pos[j]);
                }
            }
        }
    }
}
