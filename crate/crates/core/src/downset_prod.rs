//! The lattice `L′` of closed downsets of `P ⊆ ∏(L_i + {⊤i})`, the maps
//! `ξ_i`, `π_i` and `ψ` between it and the `L_i` and `M`, and the resulting
//! factorization of join-homomorphisms.

use std::collections::{BTreeMap, HashMap};

use crate::bits::BitSet;
use crate::constructions::FactorizationResult;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::map::{map_check, MapMode, MonotoneMap, Verdict};
use crate::poset::{Order, Poset};
use crate::variety::variety_check;

/// Largest `P` accepted.
pub const P_CAP: usize = 24;
/// Largest number of downsets of `P` enumerated.
pub const DOWNSET_CAP: usize = 1 << 20;

/// An element of `P`: one coordinate per lattice, `None` for the adjoined top.
pub type PElem = Vec<Option<usize>>;

/// The order `P`: all tuples over `L_i + {⊤i}` except the all-tops tuple.
#[derive(Clone, Debug)]
pub struct PSet {
    ls: Vec<FiniteLattice>,
    elems: Vec<PElem>,
    poset: Poset,
    index: HashMap<PElem, usize>,
}

fn render_p(ls: &[FiniteLattice], e: &[Option<usize>]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .map(|(i, c)| c.map_or_else(|| format!("⊤{i}"), |x| ls[i].label(x).to_string()))
        .collect();
    format!("({})", parts.join(","))
}

pub fn build_p(ls: &[FiniteLattice]) -> Result<PSet> {
    if ls.is_empty() {
        return Err(Error::EmptyList);
    }
    let size = ls.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len() + 1)).unwrap_or(usize::MAX) - 1;
    if size > P_CAP {
        return Err(Error::SizeCapExceeded { size, cap: P_CAP });
    }
    let mut elems: Vec<PElem> = vec![Vec::new()];
    for l in ls {
        elems = elems
            .into_iter()
            .flat_map(|prefix| {
                (0..=l.len()).map(move |x| {
                    let mut e = prefix.clone();
                    e.push(if x == l.len() { None } else { Some(x) });
                    e
                })
            })
            .collect();
    }
    elems.retain(|e| e.iter().any(Option::is_some));
    let labels = elems.iter().map(|e| render_p(ls, e)).collect();
    let leq = |a: &PElem, b: &PElem| {
        a.iter().zip(b).enumerate().all(|(i, (x, y))| match (x, y) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => ls[i].leq(*x, *y),
        })
    };
    let poset = Poset::new(labels, |a, b| leq(&elems[a], &elems[b]))?;
    let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(PSet { ls: ls.to_vec(), elems, poset, index })
}

impl PSet {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn lattices(&self) -> &[FiniteLattice] {
        &self.ls
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, p: usize) -> &PElem {
        &self.elems[p]
    }

    pub fn index_of(&self, e: &[Option<usize>]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// `θ_i(x)`: `x` at `i` and `⊤j` everywhere else.
    pub fn theta(&self, i: usize, x: usize) -> usize {
        let mut e = vec![None; self.ls.len()];
        e[i] = Some(x);
        self.index[&e]
    }

    /// `Some((i, x))` when `p = θ_i(x)`.
    pub fn as_theta(&self, p: usize) -> Option<(usize, usize)> {
        let e = &self.elems[p];
        let mut present = e.iter().enumerate().filter_map(|(i, c)| c.map(|x| (i, x)));
        let first = present.next();
        if present.next().is_none() {
            first
        } else {
            None
        }
    }

    pub fn down(&self, p: usize) -> BitSet {
        self.poset.down_set(p).clone()
    }

    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for p in s.iter() {
            out.union_with(self.poset.down_set(p));
        }
        out
    }

    pub fn maximal(&self, f: &BitSet) -> Vec<usize> {
        self.poset.maximal_elements(f)
    }

    /// Lists the maximal elements, e.g. `{(e,⊤1);(⊤0,a)}`.
    pub fn render(&self, f: &BitSet) -> String {
        let parts: Vec<&str> = self.maximal(f).into_iter().map(|p| self.poset.label(p)).collect();
        format!("{{{}}}", parts.join(";"))
    }

    /// The largest `x` with `θ_i(x) ∈ f`.
    pub fn top_theta(&self, f: &BitSet, i: usize) -> Option<usize> {
        let l = &self.ls[i];
        let xs: Vec<usize> = l.elements().filter(|&x| f.contains(self.theta(i, x))).collect();
        let j = l.join_all(xs.iter().copied())?;
        xs.contains(&j).then_some(j)
    }

    /// Least downset containing `s` and closed under `θ_i(x), θ_i(y) ∈ F ⇒
    /// θ_i(x∨y) ∈ F`, by fixpoint iteration over all pairs.
    pub fn closure(&self, s: &BitSet) -> BitSet {
        let mut f = self.down_closure(s);
        loop {
            let mut grew = false;
            for (i, l) in self.ls.iter().enumerate() {
                let xs: Vec<usize> = l.elements().filter(|&x| f.contains(self.theta(i, x))).collect();
                for &x in &xs {
                    for &y in &xs {
                        let t = self.theta(i, l.join(x, y));
                        if !f.contains(t) {
                            f.union_with(self.poset.down_set(t));
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return f;
            }
        }
    }

    /// `F ∨ G` using only pairs of maximal elements: for each `i` with
    /// maximal `θ_i(x) ∈ F` and `θ_i(y) ∈ G`, adds `↓θ_i(x∨y)` to `F ∪ G`.
    pub fn join_via_maximal(&self, f: &BitSet, g: &BitSet) -> BitSet {
        let mut out = f.clone();
        out.union_with(g);
        let thetas = |s: &BitSet| -> Vec<(usize, usize)> {
            self.maximal(s).into_iter().filter_map(|p| self.as_theta(p)).collect()
        };
        for &(i, x) in &thetas(f) {
            for &(j, y) in &thetas(g) {
                if i == j {
                    out.union_with(self.poset.down_set(self.theta(i, self.ls[i].join(x, y))));
                }
            }
        }
        out
    }

    fn is_closed(&self, f: &BitSet) -> bool {
        self.closure(f) == *f
    }

    /// All downsets of `P`, including the empty one.
    fn downsets(&self) -> Result<Vec<BitSet>> {
        let order = self.poset.linear_extension();
        let mut out = Vec::new();
        let mut cur = BitSet::new(self.len());
        self.downsets_rec(&order, 0, &mut cur, &mut out)?;
        Ok(out)
    }

    fn downsets_rec(&self, order: &[usize], k: usize, cur: &mut BitSet, out: &mut Vec<BitSet>) -> Result<()> {
        if k == order.len() {
            if out.len() >= DOWNSET_CAP {
                return Err(Error::SizeCapExceeded { size: out.len() + 1, cap: DOWNSET_CAP });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let p = order[k];
        self.downsets_rec(order, k + 1, cur, out)?;
        if self.poset.down_set(p).iter().all(|q| q == p || cur.contains(q)) {
            cur.insert(p);
            self.downsets_rec(order, k + 1, cur, out)?;
            cur.remove(p);
        }
        Ok(())
    }
}

/// `L′`: the nonempty closed downsets of `P` ordered by inclusion.
#[derive(Clone, Debug)]
pub struct DownsetProduct {
    p: PSet,
    families: Vec<BitSet>,
    lattice: FiniteLattice,
}

pub fn lprime_lattice(ls: &[FiniteLattice]) -> Result<DownsetProduct> {
    let p = build_p(ls)?;
    let mut families: Vec<BitSet> = p.downsets()?.into_iter().filter(|f| !f.is_empty() && p.is_closed(f)).collect();
    families.sort_by_key(|f| (f.count(), f.clone()));
    let index: HashMap<BitSet, usize> = families.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    for f in &families {
        for i in 0..ls.len() {
            let maximal_thetas = p.maximal(f).into_iter().filter(|&q| p.as_theta(q).is_some_and(|(j, _)| j == i)).count();
            assert!(maximal_thetas <= 1, "two maximal θ_{i} elements in {}", p.render(f));
        }
    }
    let labels = families.iter().map(|f| p.render(f)).collect();
    let lattice = FiniteLattice::from_fns(
        labels,
        |a, b| families[a].is_subset(&families[b]),
        |a, b| {
            let m = families[a].intersection(&families[b]);
            assert!(!m.is_empty(), "empty intersection");
            index[&m]
        },
        |a, b| {
            let mut u = families[a].clone();
            u.union_with(&families[b]);
            index[&p.closure(&u)]
        },
    );
    Ok(DownsetProduct { p, families, lattice })
}

impl DownsetProduct {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn p(&self) -> &PSet {
        &self.p
    }

    pub fn family(&self, f: usize) -> &BitSet {
        &self.families[f]
    }

    /// Index in `L′` of a closed nonempty downset.
    pub fn lookup(&self, f: &BitSet) -> Option<usize> {
        self.families.binary_search_by_key(&(f.count(), f), |g| (g.count(), g)).ok()
    }

    /// `ξ_i(x) = ↓θ_i(x)`.
    pub fn xi(&self, i: usize, x: usize) -> usize {
        self.lookup(&self.p.down(self.p.theta(i, x))).expect("principal downsets are closed")
    }

    pub fn xi_map(&self, i: usize) -> Result<MonotoneMap> {
        let l = self.p.ls[i].clone();
        MonotoneMap::from_fn(l, self.lattice.clone(), |x| self.xi(i, x))
    }

    /// `{⊥i} + L_i`.
    pub fn pi_codomain(&self, i: usize) -> Result<FiniteLattice> {
        self.p.ls[i].with_new_bottom(&format!("⊥{i}"))
    }

    /// `π_i(F)` in `{⊥i} + L_i`: index `0` is `⊥i`, `x + 1` is `x`.
    pub fn pi(&self, i: usize, f: usize) -> usize {
        self.p.top_theta(&self.families[f], i).map_or(0, |x| x + 1)
    }

    pub fn pi_map(&self) -> Result<MonotoneMap> {
        let factors = (0..self.p.ls.len()).map(|i| self.pi_codomain(i)).collect::<Result<Vec<_>>>()?;
        let prod = FiniteLattice::product(&factors)?;
        MonotoneMap::from_fn(self.lattice.clone(), prod.clone(), |f| {
            let c: Vec<usize> = (0..factors.len()).map(|i| self.pi(i, f)).collect();
            prod.from_coords(&c)
        })
    }
}

/// Evidence that `L′` lies in `D ∘ V`: the fibres of `π` are distributive
/// sublattices on which join is union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DovReport {
    pub lprime_size: usize,
    pub pi_is_hom: bool,
    pub xi_are_homs: bool,
    pub fibers: usize,
    pub fibers_are_sublattices: bool,
    pub fibers_distributive: bool,
    pub fiber_joins_are_unions: bool,
    pub lprime_distributive: bool,
    pub lprime_modular: bool,
}

impl DovReport {
    pub fn passes(&self) -> bool {
        self.pi_is_hom
            && self.xi_are_homs
            && self.fibers_are_sublattices
            && self.fibers_distributive
            && self.fiber_joins_are_unions
    }
}

pub fn dov_membership_check(dp: &DownsetProduct) -> Result<DovReport> {
    let l = &dp.lattice;
    let pi = dp.pi_map()?;
    let pi_is_hom = map_check(&pi, MapMode::LatticeHom)?.holds();
    let mut xi_are_homs = true;
    for i in 0..dp.p.ls.len() {
        xi_are_homs &= map_check(&dp.xi_map(i)?, MapMode::Embedding)?.holds();
    }
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in l.elements() {
        fibers.entry(pi.apply(f)).or_default().push(f);
    }
    let (mut sub, mut dist, mut unions) = (true, true, true);
    for members in fibers.values() {
        for &a in members {
            for &b in members {
                let (j, m) = (l.join(a, b), l.meet(a, b));
                sub &= members.contains(&j) && members.contains(&m);
                let mut u = dp.families[a].clone();
                u.union_with(&dp.families[b]);
                unions &= dp.families[j] == u;
            }
        }
        if sub {
            dist &= variety_check(&l.sublattice(members)?, usize::MAX)?.distributive;
        }
    }
    let report = variety_check(l, usize::MAX)?;
    Ok(DovReport {
        lprime_size: l.len(),
        pi_is_hom,
        xi_are_homs,
        fibers: fibers.len(),
        fibers_are_sublattices: sub,
        fibers_distributive: sub && dist,
        fiber_joins_are_unions: unions,
        lprime_distributive: report.distributive,
        lprime_modular: report.modular,
    })
}

fn check_join_homs(phis: &[MonotoneMap]) -> Result<FiniteLattice> {
    let m = crate::constructions::common_codomain(phis)?;
    for phi in phis {
        if let Verdict::Fails(a, b) = map_check(phi, MapMode::JoinHom)? {
            let d = phi.domain();
            return Err(Error::NotJoinHom(d.label(a).into(), d.label(b).into()));
        }
    }
    Ok(m)
}

/// `ψ(F)`: the join over the maximal elements of the downset `F` of the meet
/// of the `φ_i` images of their non-top coordinates. `F` need not be closed.
pub fn psi_downset(p: &PSet, f: &BitSet, phis: &[MonotoneMap]) -> Result<usize> {
    let m = check_join_homs(phis)?;
    psi_unchecked(p, &m, f, phis)
}

fn psi_unchecked(p: &PSet, m: &FiniteLattice, f: &BitSet, phis: &[MonotoneMap]) -> Result<usize> {
    if phis.len() != p.ls.len() {
        return Err(Error::Mismatch(format!("{} maps for {} lattices", phis.len(), p.ls.len())));
    }
    let terms = p.maximal(f).into_iter().map(|q| {
        let e = p.elem(q);
        m.meet_all(e.iter().zip(phis).filter_map(|(c, phi)| c.map(|x| phi.apply(x)))).expect("not all tops")
    });
    m.join_all(terms).ok_or(Error::EmptySeed)
}

/// Factors join-homomorphisms `φ_i : L_i → M` through `L′` via `ξ_i` and `ψ`.
pub fn theorem_semilat_factorization(phis: &[MonotoneMap]) -> Result<FactorizationResult> {
    let m = check_join_homs(phis)?;
    let ls: Vec<FiniteLattice> = phis
        .iter()
        .map(|p| crate::constructions::lattice_domain(p).cloned())
        .collect::<Result<_>>()?;
    let dp = lprime_lattice(&ls)?;
    let report = dov_membership_check(&dp)?;
    if !report.passes() {
        return Err(Error::Mismatch(format!("membership check failed: {report:?}")));
    }
    let injections = (0..ls.len()).map(|i| dp.xi_map(i)).collect::<Result<Vec<_>>>()?;
    let image = dp
        .lattice
        .elements()
        .map(|f| psi_unchecked(&dp.p, &m, &dp.families[f], phis))
        .collect::<Result<Vec<_>>>()?;
    let projection = MonotoneMap::new(dp.lattice.clone(), m, image)?;
    FactorizationResult { intermediate: dp.lattice.clone(), injections, projection }.verified(phis, MapMode::JoinHom)
}

/// `L_0 = {e}` and `L_1` the four-element Boolean lattice on `a`, `b`.
pub fn nondistributive_instance() -> Result<Vec<FiniteLattice>> {
    let l0 = FiniteLattice::singleton("e");
    let l1 = FiniteLattice::from_covers(&["0", "a", "b", "a∨b"], &[("0", "a"), ("0", "b"), ("a", "a∨b"), ("b", "a∨b")])?;
    Ok(vec![l0, l1])
}

/// For [`nondistributive_instance`]: `ē ∧ (ā ∨ b̄)`, `(ē ∧ ā) ∨ (ē ∧ b̄)`, and
/// the five elements
/// `(ē∧ā)∨(ē∧b̄)∨(ā∧b̄)`, `ā∨(ē∧b̄)`, `ā∨(ē∧(ā∨b̄))`, `ā∨b̄`, `(ē∧ā)∨b̄`.
#[derive(Clone, Debug)]
pub struct NondistributiveWitness {
    pub lhs: usize,
    pub rhs: usize,
    pub pentagon: [usize; 5],
}

pub fn nondistributive_witness(dp: &DownsetProduct) -> Result<NondistributiveWitness> {
    let l = &dp.lattice;
    let l1 = &dp.p.ls[1];
    let e = dp.xi(0, 0);
    let a = dp.xi(1, l1.lookup("a")?);
    let b = dp.xi(1, l1.lookup("b")?);
    let (j, m) = (|x, y| l.join(x, y), |x, y| l.meet(x, y));
    let ab = j(a, b);
    let lhs = m(e, ab);
    let rhs = j(m(e, a), m(e, b));
    let pentagon = [j(rhs, m(a, b)), j(a, m(e, b)), j(a, m(e, ab)), ab, j(m(e, a), b)];
    Ok(NondistributiveWitness { lhs, rhs, pentagon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::join_homs;
    use crate::variety::{is_distributive_exhaustive, is_isomorphic};

    fn nondist() -> DownsetProduct {
        lprime_lattice(&nondistributive_instance().unwrap()).unwrap()
    }

    #[test]
    fn p_sizes_and_theta() {
        let ls = nondistributive_instance().unwrap();
        let p = build_p(&ls).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.poset().label(p.theta(1, 1)), "(⊤0,a)");
        assert_eq!(p.poset().label(p.theta(0, 0)), "(e,⊤1)");
        let single = build_p(&[FiniteLattice::chain(2)]).unwrap();
        assert!(is_isomorphic(single.poset(), &FiniteLattice::chain(2)));
        assert!(matches!(build_p(&[FiniteLattice::chain(5), FiniteLattice::chain(5)]), Err(Error::SizeCapExceeded { .. })));
        assert_eq!(build_p(&[]).unwrap_err(), Error::EmptyList);
    }

    #[test]
    fn closure_adds_theta_joins() {
        let ls = nondistributive_instance().unwrap();
        let p = build_p(&ls).unwrap();
        let (a, b, ab) = (ls[1].lookup("a").unwrap(), ls[1].lookup("b").unwrap(), ls[1].top());
        let mut s = p.down(p.theta(1, a));
        s.union_with(&p.down(p.theta(1, b)));
        let c = p.closure(&s);
        assert!(c.contains(p.theta(1, ab)));
        assert_eq!(p.closure(&c), c);
        let principal = p.down(p.theta(1, a));
        assert_eq!(p.closure(&principal), principal);
    }

    #[test]
    fn joins_from_maximal_pairs_match_closure() {
        let dp = nondist();
        let l = dp.lattice();
        for f in l.elements() {
            for g in l.elements() {
                let naive = dp.family(l.join(f, g));
                assert_eq!(&dp.p().closure(&dp.p().join_via_maximal(dp.family(f), dp.family(g))), naive);
                assert_eq!(&dp.p().join_via_maximal(dp.family(f), dp.family(g)), naive);
                assert_eq!(dp.family(l.meet(f, g)), &dp.family(f).intersection(dp.family(g)));
            }
        }
    }

    #[test]
    fn nondistributive_example() {
        let dp = nondist();
        let l = dp.lattice();
        let w = nondistributive_witness(&dp).unwrap();
        assert_ne!(w.lhs, w.rhs);
        assert_eq!(l.label(w.lhs), "{(e,a∨b)}");
        assert_eq!(l.label(w.rhs), "{(e,a);(e,b)}");
        assert!(!is_distributive_exhaustive(l));
        let [p1, p2, p3, p4, p5] = w.pentagon;
        assert!(l.lt(p2, p3));
        assert_eq!(l.meet(p2, p5), p1);
        assert_eq!(l.meet(p3, p5), p1);
        assert_eq!(l.join(p2, p5), p4);
        assert_eq!(l.join(p3, p5), p4);
        assert!(crate::variety::pentagons(l).contains(&[p1, p2, p3, p5, p4]));
        let r = dov_membership_check(&dp).unwrap();
        assert!(r.passes());
        assert!(!r.lprime_distributive && !r.lprime_modular);
    }

    #[test]
    fn xi_and_pi() {
        let dp = nondist();
        for i in 0..2 {
            let l = &dp.p().lattices()[i];
            for x in l.elements() {
                assert_eq!(dp.pi(i, dp.xi(i, x)), x + 1);
            }
        }
        let e = dp.xi(0, 0);
        assert_eq!(dp.pi(1, e), 0);
    }

    #[test]
    fn factorization_on_nondistributive_instance() {
        let ls = nondistributive_instance().unwrap();
        let sq = FiniteLattice::boolean(2);
        let dp = lprime_lattice(&ls).unwrap();
        for h0 in join_homs(&ls[0], &sq, 100).unwrap() {
            for h1 in join_homs(&ls[1], &sq, 1000).unwrap() {
                let phis = [
                    MonotoneMap::new(ls[0].clone(), sq.clone(), h0.clone()).unwrap(),
                    MonotoneMap::new(ls[1].clone(), sq.clone(), h1.clone()).unwrap(),
                ];
                let r = theorem_semilat_factorization(&phis).unwrap();
                assert!(r.check(&phis, MapMode::JoinHom, true).unwrap().is_none());
                let l = dp.lattice();
                for f in l.elements() {
                    for g in l.elements() {
                        let mut u = dp.family(f).clone();
                        u.union_with(dp.family(g));
                        let pu = psi_downset(dp.p(), &u, &phis).unwrap();
                        assert_eq!(pu, sq.join(r.projection.apply(f), r.projection.apply(g)));
                    }
                }
            }
        }
    }

    #[test]
    fn single_factor() {
        let n5 = FiniteLattice::n5();
        let dp = lprime_lattice(std::slice::from_ref(&n5)).unwrap();
        assert!(is_isomorphic(dp.lattice(), &n5));
        let id = MonotoneMap::identity(&n5);
        let r = theorem_semilat_factorization(&[id]).unwrap();
        for x in n5.elements() {
            assert_eq!(r.projection.apply(r.injections[0].apply(x)), x);
        }
    }
}
