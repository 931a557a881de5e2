//! Partial lattices: posets with partially defined meets and joins.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::map::{MapMode, MonotoneMap, Verdict};
use crate::poset::{Order, Poset};

#[derive(Clone, PartialEq, Eq)]
pub struct PartialLattice {
    poset: Poset,
    meet: Vec<Option<u32>>,
    join: Vec<Option<u32>>,
}

impl PartialLattice {
    /// Builds a partial lattice from explicit `(x, y, z)` meet and join facts.
    /// Diagonal operations are added and every fact is checked to be the glb
    /// (resp. lub) in `poset`.
    pub fn new(poset: Poset, meets: &[(usize, usize, usize)], joins: &[(usize, usize, usize)]) -> Result<Self> {
        let n = poset.len();
        let mut pl = PartialLattice { poset, meet: vec![None; n * n], join: vec![None; n * n] };
        for x in 0..n {
            pl.meet[x * n + x] = Some(x as u32);
            pl.join[x * n + x] = Some(x as u32);
        }
        for &(x, y, z) in meets {
            if pl.glb(x, y) != Some(z) {
                return Err(Error::InvalidOrder(format!(
                    "{} is not the meet of {} and {}",
                    pl.poset.label(z),
                    pl.poset.label(x),
                    pl.poset.label(y)
                )));
            }
            pl.meet[x * n + y] = Some(z as u32);
            pl.meet[y * n + x] = Some(z as u32);
        }
        for &(x, y, z) in joins {
            if pl.lub(x, y) != Some(z) {
                return Err(Error::InvalidOrder(format!(
                    "{} is not the join of {} and {}",
                    pl.poset.label(z),
                    pl.poset.label(x),
                    pl.poset.label(y)
                )));
            }
            pl.join[x * n + y] = Some(z as u32);
            pl.join[y * n + x] = Some(z as u32);
        }
        Ok(pl)
    }

    /// A lattice viewed as a partial lattice with total operations.
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let n = l.len();
        let mut meet = vec![None; n * n];
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = Some(l.meet(a, b) as u32);
                join[a * n + b] = Some(l.join(a, b) as u32);
            }
        }
        PartialLattice { poset: l.to_poset(), meet, join }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn pmeet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a * self.len() + b].map(|x| x as usize)
    }

    pub fn pjoin(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a * self.len() + b].map(|x| x as usize)
    }

    /// Greatest lower bound in the underlying poset, if any.
    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lower = self.poset.down_set(a).intersection(self.poset.down_set(b));
        let found = lower.iter().find(|&m| *self.poset.down_set(m) == lower);
        found
    }

    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let upper = self.poset.up_set(a).intersection(self.poset.up_set(b));
        let found = upper.iter().find(|&m| *self.poset.up_set(m) == upper);
        found
    }

    /// Defined meets as `(x, y, x∧y)` with `x < y` by index.
    pub fn meet_facts(&self) -> Vec<(usize, usize, usize)> {
        self.facts(&self.meet)
    }

    pub fn join_facts(&self) -> Vec<(usize, usize, usize)> {
        self.facts(&self.join)
    }

    fn facts(&self, table: &[Option<u32>]) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if let Some(z) = table[a * n + b] {
                    out.push((a, b, z as usize));
                }
            }
        }
        out
    }

    /// True when every defined operation is the glb/lub in the poset.
    pub fn operations_are_bounds(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.pmeet(a, b).is_none_or(|z| self.glb(a, b) == Some(z))
                    && self.pjoin(a, b).is_none_or(|z| self.lub(a, b) == Some(z))
                    && self.pmeet(a, b) == self.pmeet(b, a)
                    && self.pjoin(a, b) == self.pjoin(b, a)
            })
        })
    }
}

impl Order for PartialLattice {
    fn len(&self) -> usize {
        self.poset.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }
    fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }
    fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }
    fn upper_covers(&self, a: usize) -> &[usize] {
        self.poset.upper_covers(a)
    }
}

impl fmt::Debug for PartialLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialLattice")
            .field("elements", &self.poset.labels())
            .field("meets", &self.meet_facts().len())
            .field("joins", &self.join_facts().len())
            .finish()
    }
}

/// Component labels, kept as-is when globally unique and otherwise prefixed
/// with `i.` for component `i`.
fn component_labels(parts: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut seen = HashSet::new();
    let unique = parts.iter().flatten().all(|l| seen.insert(l.clone()));
    if unique {
        parts.to_vec()
    } else {
        parts
            .iter()
            .enumerate()
            .map(|(i, ls)| ls.iter().map(|l| format!("{i}.{l}")).collect())
            .collect()
    }
}

/// Builds a partial lattice from components that each carry a total lattice
/// structure on some of the elements.
fn from_components(labels: Vec<String>, components: &[(FiniteLattice, Vec<usize>)]) -> Result<PartialLattice> {
    let n = labels.len();
    let mut pairs = Vec::new();
    for (l, place) in components {
        for a in l.elements() {
            for &b in l.upper_covers(a) {
                pairs.push((place[a], place[b]));
            }
        }
    }
    let poset = Poset::from_covers(labels, &pairs)?;
    let mut pl = PartialLattice { poset, meet: vec![None; n * n], join: vec![None; n * n] };
    for x in 0..n {
        pl.meet[x * n + x] = Some(x as u32);
        pl.join[x * n + x] = Some(x as u32);
    }
    for (l, place) in components {
        for a in l.elements() {
            for b in l.elements() {
                pl.meet[place[a] * n + place[b]] = Some(place[l.meet(a, b)] as u32);
                pl.join[place[a] * n + place[b]] = Some(place[l.join(a, b)] as u32);
            }
        }
    }
    Ok(pl)
}

/// The disjoint union of lattices: no order or operations across components.
pub fn disjoint_union(ls: &[FiniteLattice]) -> Result<PartialLattice> {
    if ls.is_empty() {
        return Err(Error::EmptyList);
    }
    let labels = component_labels(&ls.iter().map(|l| l.labels()).collect::<Vec<_>>());
    let mut offset = 0;
    let components: Vec<(FiniteLattice, Vec<usize>)> = ls
        .iter()
        .map(|l| {
            let place = (offset..offset + l.len()).collect();
            offset += l.len();
            (l.clone(), place)
        })
        .collect();
    from_components(labels.concat(), &components)
}

/// The union of the `L_i` with the images of a common lattice `K` identified.
///
/// Elements of `K` come first, labelled as in `K`; the remaining elements of
/// each `L_i` follow, labelled as in `L_i` (prefixed with `i.` on a clash).
pub fn amalgamated_union(ls: &[FiniteLattice], k_embeds: &[MonotoneMap]) -> Result<PartialLattice> {
    if ls.is_empty() {
        return Err(Error::EmptyList);
    }
    if ls.len() != k_embeds.len() {
        return Err(Error::Mismatch(format!("{} lattices but {} embeddings", ls.len(), k_embeds.len())));
    }
    let k = k_embeds[0].domain().as_lattice().ok_or_else(|| Error::NotAnEmbedding("domain is not a lattice".into()))?;
    for (i, (l, e)) in ls.iter().zip(k_embeds).enumerate() {
        let same_k = e.domain().as_lattice() == Some(k);
        let into_l = e.codomain().as_lattice() == Some(l);
        if !same_k || !into_l {
            return Err(Error::NotAnEmbedding(format!("embedding {i} does not go from K into L_{i}")));
        }
        if let Verdict::Fails(a, b) = e.check(MapMode::Embedding)? {
            return Err(Error::NotAnEmbedding(format!("embedding {i} fails at ({}, {})", k.label(a), k.label(b))));
        }
    }
    let rest: Vec<Vec<usize>> = ls
        .iter()
        .zip(k_embeds)
        .map(|(l, e)| l.elements().filter(|x| !e.image().contains(x)).collect())
        .collect();
    let mut parts = vec![k.labels()];
    parts.extend(rest.iter().zip(ls).map(|(r, l)| r.iter().map(|&x| l.label(x).to_string()).collect()));
    // Shared elements stay unprefixed; only the components are renamed.
    let mut named = vec![parts[0].clone()];
    if component_labels(&parts)[0] == parts[0] {
        named = parts.clone();
    } else {
        named.extend(component_labels(&parts[1..]).into_iter().map(|c| c.into_iter().collect()));
        let mut seen = HashSet::new();
        if !named.iter().flatten().all(|l| seen.insert(l.clone())) {
            return Err(Error::LabelClash("shared and component labels collide".into()));
        }
    }
    let mut offset = k.len();
    let components: Vec<(FiniteLattice, Vec<usize>)> = ls
        .iter()
        .zip(k_embeds)
        .zip(&rest)
        .map(|((l, e), r)| {
            let mut place = vec![0; l.len()];
            for x in k.elements() {
                place[e.apply(x)] = x;
            }
            for (j, &x) in r.iter().enumerate() {
                place[x] = offset + j;
            }
            offset += r.len();
            (l.clone(), place)
        })
        .collect();
    from_components(named.concat(), &components)
}

/// Every element of `p` placed below every element of `q`, with `p∧q = p` and
/// `p∨q = q` across the two parts.
pub fn ordinal_sum(p: &PartialLattice, q: &PartialLattice) -> Result<PartialLattice> {
    if let Some(clash) = p.poset.labels().into_iter().find(|l| q.index_of(l).is_some()) {
        return Err(Error::LabelClash(clash));
    }
    let (np, nq) = (p.len(), q.len());
    let n = np + nq;
    let labels = [p.poset.labels(), q.poset.labels()].concat();
    let poset = Poset::new(labels, |a, b| match (a < np, b < np) {
        (true, true) => p.leq(a, b),
        (false, false) => q.leq(a - np, b - np),
        (true, false) => true,
        (false, true) => false,
    })?;
    let mut meet = vec![None; n * n];
    let mut join = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            let (m, j) = match (a < np, b < np) {
                (true, true) => (p.pmeet(a, b), p.pjoin(a, b)),
                (false, false) => (q.pmeet(a - np, b - np).map(|x| x + np), q.pjoin(a - np, b - np).map(|x| x + np)),
                (true, false) => (Some(a), Some(b)),
                (false, true) => (Some(b), Some(a)),
            };
            meet[a * n + b] = m.map(|x| x as u32);
            join[a * n + b] = j.map(|x| x as u32);
        }
    }
    Ok(PartialLattice { poset, meet, join })
}

/// True when `b` is a Boolean lattice: `x ↦ {atoms below x}` is an order
/// isomorphism onto the subsets of the atoms.
pub fn is_boolean(b: &FiniteLattice) -> bool {
    let atoms = b.upper_covers(b.bottom());
    if b.len() == 1 {
        return true;
    }
    if atoms.len() >= usize::BITS as usize || b.len() != 1 << atoms.len() {
        return false;
    }
    let code = |x: usize| atoms.iter().enumerate().filter(|&(_, &a)| b.leq(a, x)).fold(0usize, |s, (k, _)| s | 1 << k);
    let codes: Vec<usize> = b.elements().map(code).collect();
    let mut seen = vec![false; b.len()];
    for &c in &codes {
        if std::mem::replace(&mut seen[c], true) {
            return false;
        }
    }
    b.elements().all(|x| b.elements().all(|y| b.leq(x, y) == (codes[x] & !codes[y] == 0)))
}

pub fn complement(b: &FiniteLattice, x: usize) -> usize {
    b.elements()
        .find(|&y| b.meet(x, y) == b.bottom() && b.join(x, y) == b.top())
        .expect("complemented lattice")
}

/// `B` without its bounds, with the operations that stay inside. Elements keep
/// their labels and their relative order from `B`.
pub fn boolean_minus_bounds(b: &FiniteLattice) -> Result<PartialLattice> {
    if !is_boolean(b) {
        return Err(Error::NotBoolean);
    }
    if b.len() <= 2 {
        return Err(Error::TooSmall);
    }
    let keep: Vec<usize> = b.elements().filter(|&x| x != b.bottom() && x != b.top()).collect();
    let mut slot = vec![None; b.len()];
    for (i, &x) in keep.iter().enumerate() {
        slot[x] = Some(i);
    }
    let pos = |x: usize| slot[x];
    let poset = b.to_poset().restrict(&keep);
    let n = keep.len();
    let mut meet = vec![None; n * n];
    let mut join = vec![None; n * n];
    for (i, &x) in keep.iter().enumerate() {
        for (j, &y) in keep.iter().enumerate() {
            meet[i * n + j] = pos(b.meet(x, y)).map(|z| z as u32);
            join[i * n + j] = pos(b.join(x, y)).map(|z| z as u32);
        }
    }
    Ok(PartialLattice { poset, meet, join })
}

/// Checks that `m` is isotone and preserves every defined meet and join. A
/// failure names the pair at fault.
pub fn is_partial_hom(p: &PartialLattice, l: &FiniteLattice, m: &[usize]) -> Verdict {
    assert_eq!(m.len(), p.len(), "assignment must be total");
    for a in 0..p.len() {
        for &b in p.upper_covers(a) {
            if !l.leq(m[a], m[b]) {
                return Verdict::Fails(a, b);
            }
        }
    }
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let meet_ok = p.pmeet(a, b).is_none_or(|z| l.meet(m[a], m[b]) == m[z]);
            let join_ok = p.pjoin(a, b).is_none_or(|z| l.join(m[a], m[b]) == m[z]);
            if !meet_ok || !join_ok {
                return Verdict::Fails(a, b);
            }
        }
    }
    Verdict::Holds
}

/// All partial lattice homomorphisms `p → l`, by backtracking along a linear
/// extension of `p`. Fails once more than `cap` have been found.
pub fn partial_homs(p: &PartialLattice, l: &FiniteLattice, cap: usize) -> Result<Vec<Vec<usize>>> {
    let order = p.poset.linear_extension();
    let n = p.len();
    let mut rank = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        rank[x] = i;
    }
    // Operation facts, each checked as soon as its last element is assigned.
    let mut facts: Vec<Vec<(bool, usize, usize, usize)>> = vec![Vec::new(); n];
    for (a, b, z) in p.meet_facts() {
        facts[[a, b, z].into_iter().max_by_key(|&x| rank[x]).unwrap()].push((true, a, b, z));
    }
    for (a, b, z) in p.join_facts() {
        facts[[a, b, z].into_iter().max_by_key(|&x| rank[x]).unwrap()].push((false, a, b, z));
    }
    let below: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| y != x && p.leq(y, x)).collect()).collect();
    let mut m = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn rec(
        k: usize,
        order: &[usize],
        below: &[Vec<usize>],
        facts: &[Vec<(bool, usize, usize, usize)>],
        l: &FiniteLattice,
        m: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= cap {
                return Err(Error::SizeCapExceeded { size: out.len() + 1, cap });
            }
            out.push(m.clone());
            return Ok(());
        }
        let x = order[k];
        for v in l.elements() {
            if !below[x].iter().all(|&y| l.leq(m[y], v)) {
                continue;
            }
            m[x] = v;
            let ok = facts[x].iter().all(|&(is_meet, a, b, z)| {
                let r = if is_meet { l.meet(m[a], m[b]) } else { l.join(m[a], m[b]) };
                r == m[z]
            });
            if ok {
                rec(k + 1, order, below, facts, l, m, out, cap)?;
            }
        }
        m[x] = usize::MAX;
        Ok(())
    }
    rec(0, &order, &below, &facts, l, &mut m, &mut out, cap)?;
    Ok(out)
}

/// For a partial homomorphism `m` of `B − {0,1}` into `l`, the common value of
/// `m(a) ∨ m(b)` over all pairs with `a ∨ b = 1` in `B`.
///
/// `m` is indexed by the elements of [`boolean_minus_bounds`]`(b)`.
pub fn complement_join_constant(b: &FiniteLattice, l: &FiniteLattice, m: &[usize]) -> Result<usize> {
    let p = boolean_minus_bounds(b)?;
    if let Verdict::Fails(x, y) = is_partial_hom(&p, l, m) {
        return Err(Error::Mismatch(format!(
            "not a partial homomorphism at ({}, {})",
            p.label(x),
            p.label(y)
        )));
    }
    let in_b: Vec<usize> = (0..p.len()).map(|i| b.lookup(p.label(i)).expect("same labels")).collect();
    let in_p = |x: usize| in_b.iter().position(|&y| y == x).expect("proper element");
    let mut value = None;
    for (i, &x) in in_b.iter().enumerate() {
        let c = in_p(complement(b, x));
        let v = l.join(m[i], m[c]);
        match value {
            None => value = Some(v),
            Some(w) if w != v => {
                return Err(Error::ConstancyViolated(format!("{} ∨ its complement", p.label(i))));
            }
            _ => {}
        }
    }
    let value = value.expect("B has proper elements");
    for (i, &x) in in_b.iter().enumerate() {
        for (j, &y) in in_b.iter().enumerate() {
            if b.join(x, y) == b.top() && l.join(m[i], m[j]) != value {
                return Err(Error::ConstancyViolated(format!("{} ∨ {}", p.label(i), p.label(j))));
            }
        }
    }
    Ok(value)
}
