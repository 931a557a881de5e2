//! The catalog of small lattices, one representative per isomorphism class.

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::Poset;
use crate::variety::is_isomorphic;

pub const CATALOG_MAX_SIZE: usize = 5;

fn middle_label(i: usize) -> String {
    ["a", "b", "c", "d"][i].to_string()
}

/// All lattices with at most `max_size` elements up to isomorphism, smallest
/// first. Elements are labelled `0`, then `a`, `b`, ... in a linear extension,
/// then `1`.
pub fn lattices_up_to(max_size: usize) -> Result<Vec<FiniteLattice>> {
    if max_size > CATALOG_MAX_SIZE {
        return Err(Error::SizeCapExceeded { size: max_size, cap: CATALOG_MAX_SIZE });
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(lattices_of_size(n));
    }
    Ok(out)
}

fn lattices_of_size(n: usize) -> Vec<FiniteLattice> {
    if n == 1 {
        return vec![FiniteLattice::singleton("0")];
    }
    let m = n - 2;
    let labels: Vec<String> = std::iter::once("0".to_string())
        .chain((0..m).map(middle_label))
        .chain(std::iter::once("1".to_string()))
        .collect();
    // Strict orders on the middle elements that are upper triangular in the
    // labelling; every finite order has such a labelling.
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();
    let mut found: Vec<FiniteLattice> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| {
            i == j || (i < j && pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1))
        };
        let transitive = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if !transitive {
            continue;
        }
        let leq = |a: usize, b: usize| a == 0 || b == n - 1 || (a != n - 1 && b != 0 && rel(a - 1, b - 1));
        let Ok(poset) = Poset::new(labels.clone(), leq) else { continue };
        let Ok(l) = FiniteLattice::from_poset(&poset) else { continue };
        if !found.iter().any(|f| is_isomorphic(f, &l)) {
            found.push(l);
        }
    }
    found
}

/// A readable name: `one`, `chainK`, `bool2`, `M3`, `N5`, or `L<n>_<k>`.
pub fn catalog_name(l: &FiniteLattice, position_in_size: usize) -> String {
    let n = l.len();
    if n == 1 {
        return "one".into();
    }
    if is_isomorphic(l, &FiniteLattice::chain(n)) {
        return format!("chain{n}");
    }
    if n == 4 && is_isomorphic(l, &FiniteLattice::boolean(2)) {
        return "bool2".into();
    }
    if n == 5 && is_isomorphic(l, &FiniteLattice::m3()) {
        return "M3".into();
    }
    if n == 5 && is_isomorphic(l, &FiniteLattice::n5()) {
        return "N5".into();
    }
    format!("L{n}_{position_in_size}")
}

/// Catalog entries paired with their names.
pub fn named_catalog(max_size: usize) -> Result<Vec<(String, FiniteLattice)>> {
    let all = lattices_up_to(max_size)?;
    let mut out = Vec::with_capacity(all.len());
    for (i, l) in all.iter().enumerate() {
        let pos = all[..i].iter().filter(|x| x.len() == l.len()).count();
        out.push((catalog_name(l, pos), l.clone()));
    }
    Ok(out)
}
