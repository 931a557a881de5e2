//! Finite lattices.
//!
//! A [`FiniteLattice`] is either backed by explicit order/meet/join tables or
//! is a direct product of other lattices whose operations are evaluated
//! componentwise on mixed-radix indices. Products therefore stay cheap even
//! when they have thousands of elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::{covers_from_sets, index_labels, Order, Poset};

/// Default upper bound on the size of lattices handed to pair/triple sweeps.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Clone)]
pub struct FiniteLattice(Arc<Inner>);

struct Inner {
    labels: Vec<String>,
    index: OnceLock<HashMap<String, usize>>,
    repr: Repr,
    upper: OnceLock<Vec<Vec<usize>>>,
    lower: OnceLock<Vec<Vec<usize>>>,
    bottom: usize,
    top: usize,
}

enum Repr {
    Table { up: Vec<BitSet>, meet: Vec<u32>, join: Vec<u32> },
    Product { factors: Vec<FiniteLattice>, strides: Vec<usize> },
}

impl FiniteLattice {
    fn from_table(labels: Vec<String>, up: Vec<BitSet>, meet: Vec<u32>, join: Vec<u32>) -> Self {
        let n = labels.len();
        let bottom = (0..n).find(|&i| up[i].count() == n).expect("lattice has a bottom");
        let top = (0..n).find(|&i| (0..n).all(|j| up[j].contains(i))).expect("lattice has a top");
        FiniteLattice(Arc::new(Inner {
            labels,
            index: OnceLock::new(),
            repr: Repr::Table { up, meet, join },
            upper: OnceLock::new(),
            lower: OnceLock::new(),
            bottom,
            top,
        }))
    }

    /// Builds a table-backed lattice from trusted operations. Callers guarantee
    /// that `meet`/`join` are the glb/lub of `leq`.
    pub(crate) fn from_fns(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = labels.len();
        assert!(n > 0, "a lattice is nonempty");
        let mut up = vec![BitSet::new(n); n];
        let mut mt = vec![0u32; n * n];
        let mut jt = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up[a].insert(b);
                }
                mt[a * n + b] = meet(a, b) as u32;
                jt[a * n + b] = join(a, b) as u32;
            }
        }
        FiniteLattice::from_table(labels, up, mt, jt)
    }

    /// Derives meet and join tables from an order, failing on the first pair
    /// without a greatest lower or least upper bound.
    pub fn from_poset(poset: &Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::InvalidOrder("empty order".into()));
        }
        let ups: Vec<BitSet> = (0..n).map(|i| poset.up_set(i).clone()).collect();
        let downs: Vec<BitSet> = (0..n).map(|i| poset.down_set(i).clone()).collect();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = downs[a].intersection(&downs[b]);
                let glb = lower.iter().find(|&m| downs[m] == lower).ok_or_else(|| {
                    Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "meet")
                })?;
                let upper = ups[a].intersection(&ups[b]);
                let lub = upper.iter().find(|&m| ups[m] == upper).ok_or_else(|| {
                    Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "join")
                })?;
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        Ok(FiniteLattice::from_table(poset.labels(), ups, meet, join))
    }

    pub fn from_covers(labels: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        FiniteLattice::from_poset(&Poset::from_cover_labels(labels, covers)?)
    }

    /// Direct product with componentwise order and operations. Element labels
    /// are `(a,b,...)` tuples of factor labels; the first factor varies slowest.
    pub fn product(factors: &[FiniteLattice]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        let mut strides = vec![1usize; factors.len()];
        for k in (0..factors.len() - 1).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].len();
        }
        let n = strides[0] * factors[0].len();
        let mut labels = Vec::with_capacity(n);
        let mut coords = vec![0usize; factors.len()];
        for _ in 0..n {
            let parts: Vec<&str> = coords.iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
            labels.push(format!("({})", parts.join(",")));
            for k in (0..factors.len()).rev() {
                coords[k] += 1;
                if coords[k] < factors[k].len() {
                    break;
                }
                coords[k] = 0;
            }
        }
        let bottom = factors.iter().zip(&strides).map(|(f, s)| f.bottom() * s).sum();
        let top = factors.iter().zip(&strides).map(|(f, s)| f.top() * s).sum();
        Ok(FiniteLattice(Arc::new(Inner {
            labels,
            index: OnceLock::new(),
            repr: Repr::Product { factors: factors.to_vec(), strides },
            upper: OnceLock::new(),
            lower: OnceLock::new(),
            bottom,
            top,
        })))
    }

    /// The `n`-element chain labelled `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteLattice::from_fns(labels, |a, b| a <= b, usize::min, usize::max)
    }

    pub fn chain_labeled(labels: &[&str]) -> Result<Self> {
        FiniteLattice::from_poset(&Poset::chain(labels))
    }

    /// The one-element lattice `{e}`.
    pub fn singleton(label: &str) -> Self {
        FiniteLattice::from_fns(vec![label.to_string()], |_, _| true, |_, _| 0, |_, _| 0)
    }

    /// The Boolean lattice `2^k`, as a product of `k` two-element chains.
    pub fn boolean(k: usize) -> Self {
        let two = FiniteLattice::chain(2);
        FiniteLattice::product(&vec![two; k.max(1)]).expect("nonempty factor list")
    }

    /// The diamond: `0 < a, b, c < 1`.
    pub fn m3() -> Self {
        FiniteLattice::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("M3")
    }

    /// The pentagon: `0 < a < c < 1` and `0 < b < 1`.
    pub fn n5() -> Self {
        FiniteLattice::from_covers(
            &["0", "a", "c", "b", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .expect("N5")
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.0.bottom
    }

    pub fn top(&self) -> usize {
        self.0.top
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.0.repr {
            Repr::Table { up, .. } => up[a].contains(b),
            Repr::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .all(|(f, &s)| f.leq(a / s % f.len(), b / s % f.len())),
        }
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        match &self.0.repr {
            Repr::Table { meet, .. } => meet[a * self.len() + b] as usize,
            Repr::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.meet(a / s % f.len(), b / s % f.len()) * s)
                .sum(),
        }
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        match &self.0.repr {
            Repr::Table { join, .. } => join[a * self.len() + b] as usize,
            Repr::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.join(a / s % f.len(), b / s % f.len()) * s)
                .sum(),
        }
    }

    /// Meet of a nonempty family; `None` for an empty one.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.meet(a, b))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.join(a, b))
    }

    /// Factors of a product lattice, or `None` for a table-backed one.
    pub fn factors(&self) -> Option<&[FiniteLattice]> {
        match &self.0.repr {
            Repr::Product { factors, .. } => Some(factors),
            Repr::Table { .. } => None,
        }
    }

    /// Coordinates of `a` in a product lattice.
    pub fn coords(&self, a: usize) -> Vec<usize> {
        match &self.0.repr {
            Repr::Product { factors, strides } => {
                factors.iter().zip(strides).map(|(f, &s)| a / s % f.len()).collect()
            }
            Repr::Table { .. } => vec![a],
        }
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, coords: &[usize]) -> usize {
        match &self.0.repr {
            Repr::Product { strides, .. } => coords.iter().zip(strides).map(|(c, s)| c * s).sum(),
            Repr::Table { .. } => coords[0],
        }
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.0.lower.get_or_init(|| {
            let mut lower = vec![Vec::new(); self.len()];
            for x in self.elements() {
                for &y in self.upper_covers(x) {
                    lower[y].push(x);
                }
            }
            lower
        })[a]
    }

    fn compute_upper_covers(&self) -> Vec<Vec<usize>> {
        match &self.0.repr {
            Repr::Table { up, .. } => {
                let n = self.len();
                let mut down = vec![BitSet::new(n); n];
                for (a, row) in up.iter().enumerate() {
                    for b in row.iter() {
                        down[b].insert(a);
                    }
                }
                covers_from_sets(up, &down)
            }
            Repr::Product { factors, strides } => self
                .elements()
                .map(|x| {
                    let mut out = Vec::new();
                    for (f, &s) in factors.iter().zip(strides) {
                        let c = x / s % f.len();
                        for &u in f.upper_covers(c) {
                            out.push(x - c * s + u * s);
                        }
                    }
                    out.sort_unstable();
                    out
                })
                .collect(),
        }
    }

    /// The explicit underlying order.
    pub fn to_poset(&self) -> Poset {
        Poset::new(self.0.labels.clone(), |a, b| self.leq(a, b)).expect("lattice order is valid")
    }

    pub fn up_set(&self, a: usize) -> BitSet {
        self.elements().filter(|&b| self.leq(a, b)).collect_set(self.len())
    }

    pub fn down_set(&self, a: usize) -> BitSet {
        self.elements().filter(|&b| self.leq(b, a)).collect_set(self.len())
    }

    /// Order reversed, meet and join exchanged; labels are kept.
    pub fn dual(&self) -> FiniteLattice {
        match &self.0.repr {
            Repr::Product { factors, .. } => {
                let duals: Vec<FiniteLattice> = factors.iter().map(|f| f.dual()).collect();
                FiniteLattice::product(&duals).expect("nonempty")
            }
            Repr::Table { .. } => FiniteLattice::from_fns(
                self.0.labels.clone(),
                |a, b| self.leq(b, a),
                |a, b| self.join(a, b),
                |a, b| self.meet(a, b),
            ),
        }
    }

    /// A copy of this lattice with a fresh least element labelled `label`,
    /// placed at index 0.
    pub fn with_new_bottom(&self, label: &str) -> Result<FiniteLattice> {
        if self.index_of(label).is_some() {
            return Err(Error::LabelClash(label.to_string()));
        }
        let mut labels = vec![label.to_string()];
        labels.extend(self.0.labels.iter().cloned());
        Ok(FiniteLattice::from_fns(
            labels,
            |a, b| a == 0 || (b != 0 && self.leq(a - 1, b - 1)),
            |a, b| if a == 0 || b == 0 { 0 } else { self.meet(a - 1, b - 1) + 1 },
            |a, b| match (a, b) {
                (0, x) | (x, 0) => x,
                _ => self.join(a - 1, b - 1) + 1,
            },
        ))
    }

    /// A copy of this lattice with a fresh greatest element labelled `label`,
    /// placed at the last index.
    pub fn with_new_top(&self, label: &str) -> Result<FiniteLattice> {
        if self.index_of(label).is_some() {
            return Err(Error::LabelClash(label.to_string()));
        }
        let t = self.len();
        let mut labels = self.0.labels.clone();
        labels.push(label.to_string());
        Ok(FiniteLattice::from_fns(
            labels,
            |a, b| b == t || (a != t && self.leq(a, b)),
            |a, b| match (a == t, b == t) {
                (true, _) => b,
                (_, true) => a,
                _ => self.meet(a, b),
            },
            |a, b| if a == t || b == t { t } else { self.join(a, b) },
        ))
    }

    /// Ordinal sum: every element of `lower` lies below every element of `upper`.
    pub fn ordinal_sum(lower: &FiniteLattice, upper: &FiniteLattice) -> Result<FiniteLattice> {
        for l in lower.0.labels.iter() {
            if upper.index_of(l).is_some() {
                return Err(Error::LabelClash(l.clone()));
            }
        }
        let k = lower.len();
        let mut labels = lower.0.labels.clone();
        labels.extend(upper.0.labels.iter().cloned());
        Ok(FiniteLattice::from_fns(
            labels,
            |a, b| match (a < k, b < k) {
                (true, true) => lower.leq(a, b),
                (true, false) => true,
                (false, true) => false,
                (false, false) => upper.leq(a - k, b - k),
            },
            |a, b| match (a < k, b < k) {
                (true, true) => lower.meet(a, b),
                (true, false) => a,
                (false, true) => b,
                (false, false) => upper.meet(a - k, b - k) + k,
            },
            |a, b| match (a < k, b < k) {
                (true, true) => lower.join(a, b),
                (true, false) => b,
                (false, true) => a,
                (false, false) => upper.join(a - k, b - k) + k,
            },
        ))
    }

    /// Smallest meet- and join-closed subset containing `seed`, as sorted indices.
    pub fn closure_set(&self, seed: &[usize]) -> Result<Vec<usize>> {
        if seed.is_empty() {
            return Err(Error::EmptySeed);
        }
        let mut inside = BitSet::new(self.len());
        let mut members: Vec<usize> = Vec::new();
        for &s in seed {
            if !inside.contains(s) {
                inside.insert(s);
                members.push(s);
            }
        }
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for z in [self.meet(x, y), self.join(x, y)] {
                    if !inside.contains(z) {
                        inside.insert(z);
                        members.push(z);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Sublattice generated by `seed`, with the induced structure and labels.
    pub fn sublattice_closure(&self, seed: &[usize]) -> Result<FiniteLattice> {
        let members = self.closure_set(seed)?;
        self.sublattice(&members)
    }

    /// The induced sublattice on `members`, which must be closed under meet and join.
    pub fn sublattice(&self, members: &[usize]) -> Result<FiniteLattice> {
        if members.is_empty() {
            return Err(Error::EmptySeed);
        }
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        if pos.len() != members.len() {
            return Err(Error::Mismatch("repeated element in sublattice".into()));
        }
        for &a in members {
            for &b in members {
                for z in [self.meet(a, b), self.join(a, b)] {
                    if !pos.contains_key(&z) {
                        return Err(Error::Mismatch(format!(
                            "{} is not closed: missing {}",
                            "subset",
                            self.label(z)
                        )));
                    }
                }
            }
        }
        let labels = members.iter().map(|&m| self.0.labels[m].clone()).collect();
        Ok(FiniteLattice::from_fns(
            labels,
            |a, b| self.leq(members[a], members[b]),
            |a, b| pos[&self.meet(members[a], members[b])],
            |a, b| pos[&self.join(members[a], members[b])],
        ))
    }

    /// True iff `set` contains every element lying between two of its members.
    pub fn is_convex(&self, set: &[usize]) -> bool {
        self.convexity_witness(set).is_none()
    }

    /// An element strictly outside `set` lying between two members, if any.
    pub fn convexity_witness(&self, set: &[usize]) -> Option<(usize, usize, usize)> {
        let mut inside = BitSet::new(self.len());
        for &s in set {
            inside.insert(s);
        }
        for &a in set {
            for &b in set {
                if !self.leq(a, b) {
                    continue;
                }
                if let Some(z) = self.elements().find(|&z| {
                    !inside.contains(z) && self.leq(a, z) && self.leq(z, b)
                }) {
                    return Some((a, z, b));
                }
            }
        }
        None
    }

    /// Rejects lattices above `cap` elements before an exhaustive sweep.
    pub fn ensure_within(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::SizeCapExceeded { size: self.len(), cap })
        } else {
            Ok(())
        }
    }
}

trait CollectSet {
    fn collect_set(self, len: usize) -> BitSet;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, len: usize) -> BitSet {
        let mut s = BitSet::new(len);
        for i in self {
            s.insert(i);
        }
        s
    }
}

impl Order for FiniteLattice {
    fn len(&self) -> usize {
        self.0.labels.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        FiniteLattice::leq(self, a, b)
    }

    fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.0
            .index
            .get_or_init(|| index_labels(&self.0.labels).unwrap_or_default())
            .get(label)
            .copied()
    }

    fn upper_covers(&self, a: usize) -> &[usize] {
        &self.0.upper.get_or_init(|| self.compute_upper_covers())[a]
    }
}

impl PartialEq for FiniteLattice {
    /// Same labels in the same positions and the same order relation.
    fn eq(&self, other: &Self) -> bool {
        self.0.labels == other.0.labels
            && self.elements().all(|a| self.upper_covers(a) == other.upper_covers(a))
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("len", &self.len())
            .field("elements", &self.0.labels.iter().take(16).collect::<Vec<_>>())
            .finish()
    }
}

/// Lattice of all downward-closed subsets of `p`, ordered by inclusion.
/// Labels list the members, e.g. `{a,b}`, and `∅` for the empty downset.
pub fn downsets(p: &Poset, cap: usize) -> Result<FiniteLattice> {
    let order = p.linear_extension();
    let mut found: Vec<BitSet> = Vec::new();
    let mut current = BitSet::new(p.len());
    fn rec(
        p: &Poset,
        order: &[usize],
        k: usize,
        current: &mut BitSet,
        found: &mut Vec<BitSet>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if found.len() >= cap {
                return Err(Error::SizeCapExceeded { size: found.len() + 1, cap });
            }
            found.push(current.clone());
            return Ok(());
        }
        let x = order[k];
        rec(p, order, k + 1, current, found, cap)?;
        let below_ok = p.down_set(x).iter().all(|y| y == x || current.contains(y));
        if below_ok {
            current.insert(x);
            rec(p, order, k + 1, current, found, cap)?;
            current.remove(x);
        }
        Ok(())
    }
    rec(p, &order, 0, &mut current, &mut found, cap)?;
    found.sort_by_key(|s| (s.count(), s.iter().collect::<Vec<_>>()));
    let index: HashMap<BitSet, usize> = found.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = found
        .iter()
        .map(|s| {
            if s.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", s.iter().map(|x| p.label(x)).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    Ok(FiniteLattice::from_fns(
        labels,
        |a, b| found[a].is_subset(&found[b]),
        |a, b| index[&found[a].intersection(&found[b])],
        |a, b| {
            let mut u = found[a].clone();
            u.union_with(&found[b]);
            index[&u]
        },
    ))
}

/// Renders an `n`-bit vector as a string of coordinates, first coordinate leftmost.
fn render_vector(v: usize, n: usize) -> String {
    (0..n).map(|k| if v >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// Label of the subspace spanned by `vectors` in the `n`-dimensional space over
/// the two-element field: `0` for the zero subspace, otherwise `⟨...⟩` listing
/// all nonzero members.
pub fn subspace_label(n: usize, vectors: &[usize]) -> String {
    let members = span_f2(vectors);
    let nonzero: Vec<String> = (1..1 << n)
        .filter(|v| members >> v & 1 == 1)
        .map(|v| render_vector(v, n))
        .collect();
    if nonzero.is_empty() {
        "0".to_string()
    } else {
        format!("⟨{}⟩", nonzero.join(","))
    }
}

/// Span as a bitmask over the vectors themselves (bit `v` set iff `v` is in the span).
fn span_f2(vectors: &[usize]) -> u64 {
    let mut members: Vec<usize> = vec![0];
    for &v in vectors {
        if !members.contains(&v) {
            let shifted: Vec<usize> = members.iter().map(|m| m ^ v).collect();
            members.extend(shifted);
        }
    }
    members.iter().fold(0u64, |acc, &m| acc | 1 << m)
}

/// Lattice of all linear subspaces of the `n`-dimensional space over the
/// two-element field, `n` in `1..=3`.
pub fn subspaces_f2(n: usize) -> Result<FiniteLattice> {
    if !(1..=3).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    let size = 1usize << n;
    let mut subspaces: Vec<u64> = (0u64..1 << size)
        .filter(|&m| {
            m & 1 == 1
                && (0..size).all(|a| {
                    m >> a & 1 == 0 || (0..size).all(|b| m >> b & 1 == 0 || m >> (a ^ b) & 1 == 1)
                })
        })
        .collect();
    subspaces.sort_by_key(|m| (m.count_ones(), *m));
    let index: HashMap<u64, usize> = subspaces.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let members = |m: u64| -> Vec<usize> { (0..size).filter(|v| m >> v & 1 == 1).collect() };
    let labels = subspaces.iter().map(|&m| subspace_label(n, &members(m))).collect();
    Ok(FiniteLattice::from_fns(
        labels,
        |a, b| subspaces[a] & !subspaces[b] == 0,
        |a, b| index[&(subspaces[a] & subspaces[b])],
        |a, b| {
            let mut gens = members(subspaces[a]);
            gens.extend(members(subspaces[b]));
            index[&span_f2(&gens)]
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn absorption_holds(l: &FiniteLattice) -> bool {
        l.elements().all(|x| {
            l.elements()
                .all(|y| l.meet(x, l.join(x, y)) == x && l.join(x, l.meet(x, y)) == x)
        })
    }

    #[test]
    fn two_chain_from_order() {
        let l = FiniteLattice::from_poset(&Poset::chain(&["0", "1"])).unwrap();
        assert_eq!(l.join(0, 1), 1);
        assert_eq!(l.meet(0, 1), 0);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let err = FiniteLattice::from_poset(&Poset::antichain(&["a", "b"])).unwrap_err();
        assert_eq!(err, Error::NotALattice("a".into(), "b".into(), "meet"));
    }

    #[test]
    fn m3_from_covers_has_all_bounds() {
        let m3 = FiniteLattice::m3();
        // Oracle: brute-force glb/lub over all elements.
        for a in m3.elements() {
            for b in m3.elements() {
                let lower: Vec<usize> = m3.elements().filter(|&z| m3.leq(z, a) && m3.leq(z, b)).collect();
                let glb: Vec<usize> = lower.iter().copied().filter(|&z| lower.iter().all(|&w| m3.leq(w, z))).collect();
                assert_eq!(glb, vec![m3.meet(a, b)]);
            }
        }
        assert_eq!(m3.bottom(), m3.lookup("0").unwrap());
        assert_eq!(m3.top(), m3.lookup("1").unwrap());
        assert!(absorption_holds(&m3));
    }

    #[test]
    fn products() {
        let two = FiniteLattice::chain(2);
        let sq = FiniteLattice::product(&[two.clone(), two.clone()]).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.label(1), "(0,1)");
        let p = FiniteLattice::product(&[FiniteLattice::chain(3), two.clone()]).unwrap();
        assert_eq!(p.len(), 6);
        assert!(absorption_holds(&p));
        assert_eq!(FiniteLattice::product(&[]).unwrap_err(), Error::EmptyFactorList);
        let a = sq.lookup("(1,0)").unwrap();
        let b = sq.lookup("(0,1)").unwrap();
        assert_eq!(sq.label(sq.join(a, b)), "(1,1)");
        assert_eq!(sq.label(sq.meet(a, b)), "(0,0)");
        assert_eq!(sq.upper_covers(sq.bottom()).len(), 2);
        assert_eq!(sq.lower_covers(sq.top()).len(), 2);
    }

    #[test]
    fn product_matches_table_copy() {
        let p = FiniteLattice::product(&[FiniteLattice::n5(), FiniteLattice::chain(2)]).unwrap();
        let table = FiniteLattice::from_poset(&p.to_poset()).unwrap();
        for a in p.elements() {
            for b in p.elements() {
                assert_eq!(p.meet(a, b), table.meet(a, b));
                assert_eq!(p.join(a, b), table.join(a, b));
            }
            assert_eq!(p.upper_covers(a), table.upper_covers(a));
        }
        assert_eq!(p, table);
    }

    #[test]
    fn dual_is_an_involution() {
        for l in [FiniteLattice::n5(), FiniteLattice::m3(), FiniteLattice::boolean(3)] {
            assert_eq!(l.dual().dual(), l);
            let d = l.dual();
            assert_eq!(d.top(), l.bottom());
        }
    }

    #[test]
    fn closure_examples() {
        let l = FiniteLattice::boolean(3);
        let all: Vec<usize> = l.elements().collect();
        assert_eq!(l.closure_set(&all).unwrap(), all);
        assert_eq!(l.closure_set(&[3]).unwrap(), vec![3]);
        assert_eq!(l.closure_set(&[]).unwrap_err(), Error::EmptySeed);
        let sub = l.sublattice_closure(&[1, 2]).unwrap();
        assert_eq!(sub.len(), 4);
    }

    #[test]
    fn new_bounds_and_ordinal_sum() {
        let l = FiniteLattice::boolean(2).with_new_bottom("⊥").unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.bottom(), 0);
        let t = FiniteLattice::chain(2).with_new_top("⊤").unwrap();
        assert_eq!(t.top(), 2);
        assert!(absorption_holds(&l) && absorption_holds(&t));
        let s = FiniteLattice::ordinal_sum(
            &FiniteLattice::chain_labeled(&["p0", "p1"]).unwrap(),
            &FiniteLattice::chain_labeled(&["q0", "q1"]).unwrap(),
        )
        .unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.leq(1, 2));
        assert_eq!(s.join(1, 2), 2);
        assert!(FiniteLattice::chain(2).with_new_top("1").is_err());
    }

    #[test]
    fn downset_lattices() {
        let d = downsets(&Poset::antichain(&["a", "b"]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(d.len(), 4);
        let d = downsets(&Poset::chain(&["x", "y", "z"]), DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.elements().all(|a| d.elements().all(|b| d.comparable(a, b))));
        let v = Poset::from_cover_labels(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        // Direct enumeration: ∅, {a}, {b}, {a,b}, {a,b,c}.
        let d = downsets(&v, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(d.labels(), vec!["∅", "{a}", "{b}", "{a,b}", "{a,b,c}"]);
        assert!(downsets(&Poset::antichain(&["a", "b", "c"]), 4).is_err());
    }

    #[test]
    fn subspace_counts() {
        // Oracle: the subspaces of F2^2 are 0, the three lines, and the plane.
        assert_eq!(subspaces_f2(2).unwrap().len(), 5);
        // 1 + 7 + 7 + 1.
        let l = subspaces_f2(3).unwrap();
        assert_eq!(l.len(), 16);
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(subspaces_f2(0).unwrap_err(), Error::DimensionOutOfRange(0));
        assert_eq!(subspaces_f2(4).unwrap_err(), Error::DimensionOutOfRange(4));
        assert_eq!(subspace_label(3, &[1, 2]), "⟨100,010,110⟩");
        assert!(l.index_of(&subspace_label(3, &[1, 2])).is_some());
        assert!(absorption_holds(&l));
    }

    #[test]
    fn convexity() {
        let c = FiniteLattice::chain(3);
        assert!(!c.is_convex(&[0, 2]));
        assert_eq!(c.convexity_witness(&[0, 2]), Some((0, 1, 2)));
        assert!(c.is_convex(&[1, 2]));
    }
}
