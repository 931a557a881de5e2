//! Factorization for lattices amalgamated over a common convex retract.

use std::collections::HashMap;

use crate::error::{Error, Hypothesis, Result};
use crate::lattice::{subspace_label, subspaces_f2, FiniteLattice};
use crate::map::{MapMode, MonotoneMap, Verdict};
use crate::poset::Order;

use super::{common_codomain, lattice_domain, FactorizationResult};

fn violated<T>(h: Hypothesis) -> Result<T> {
    Err(Error::HypothesisViolated(h))
}

/// For a lattice-homomorphic retraction `ρ : L → L` onto a convex sublattice
/// `K`, checks that every `x` lying below some element of `K` lies below
/// `ρ(x)`. A failure is reported as `(x, r)` with `x ≤ r ∈ K` but `x ≰ ρ(x)`.
pub fn lemma_cvx_retr_check(l: &FiniteLattice, k: &[usize], rho: &MonotoneMap) -> Result<Verdict> {
    if k.is_empty() || l.closure_set(k)? != {
        let mut s = k.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    } {
        return violated(Hypothesis::Sublattice);
    }
    if !l.is_convex(k) {
        return violated(Hypothesis::Convexity);
    }
    let is_retraction = rho.domain().as_lattice() == Some(l)
        && rho.codomain().as_lattice() == Some(l)
        && rho.check(MapMode::LatticeHom)?.holds()
        && l.elements().all(|x| k.contains(&rho.apply(x)))
        && k.iter().all(|&r| rho.apply(r) == r);
    if !is_retraction {
        return violated(Hypothesis::Retraction);
    }
    for x in l.elements() {
        for &r in k {
            if l.leq(x, r) && !l.leq(x, rho.apply(x)) {
                return Ok(Verdict::Fails(x, r));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Lattices `L_i` sharing a sublattice `K` (embedded by `embeds[i]`), with
/// retractions `ρ_i : L_i → K` and isotone maps `φ_i : L_i → M`.
#[derive(Clone, Debug)]
pub struct RetractInput {
    pub k: FiniteLattice,
    pub embeds: Vec<MonotoneMap>,
    pub retractions: Vec<MonotoneMap>,
    pub phis: Vec<MonotoneMap>,
}

impl RetractInput {
    fn check_hypotheses(&self) -> Result<Vec<FiniteLattice>> {
        let n = self.phis.len();
        if n == 0 {
            return Err(Error::EmptyIndexSet);
        }
        if self.embeds.len() != n || self.retractions.len() != n {
            return Err(Error::Mismatch("one embedding and one retraction per lattice".into()));
        }
        common_codomain(&self.phis)?;
        let ls: Vec<FiniteLattice> = self.phis.iter().map(|p| lattice_domain(p).cloned()).collect::<Result<_>>()?;
        for i in 0..n {
            let (e, r, l) = (&self.embeds[i], &self.retractions[i], &ls[i]);
            if e.domain().as_lattice() != Some(&self.k)
                || e.codomain().as_lattice() != Some(l)
                || !e.check(MapMode::Embedding)?.holds()
            {
                return violated(Hypothesis::Embedding);
            }
            if !l.is_convex(e.image()) {
                return violated(Hypothesis::Convexity);
            }
            if r.domain().as_lattice() != Some(l)
                || r.codomain().as_lattice() != Some(&self.k)
                || !r.check(MapMode::LatticeHom)?.holds()
                || self.k.elements().any(|x| r.apply(e.apply(x)) != x)
            {
                return violated(Hypothesis::Retraction);
            }
        }
        for x in self.k.elements() {
            let v = self.phis[0].apply(self.embeds[0].apply(x));
            if (1..n).any(|i| self.phis[i].apply(self.embeds[i].apply(x)) != v) {
                return violated(Hypothesis::Agreement);
            }
        }
        Ok(ls)
    }
}

/// Factors the `φ_i` through the sublattice of `K × ∏ L_i` of tuples `f` with
/// `ρ_i(f(i)) = f(0)` for all `i`. The projection is the meet of the
/// `φ_i(f(i))` when every `f(i) ≤ f(0)`, and otherwise the join of those
/// `φ_i(f(i))` with `f(i) ≰ f(0)`.
pub fn retract_factorization(input: &RetractInput) -> Result<FactorizationResult> {
    let ls = input.check_hypotheses()?;
    let m = common_codomain(&input.phis)?;
    let (k, embeds, rhos) = (&input.k, &input.embeds, &input.retractions);
    let n = ls.len();
    let mut factors = vec![k.clone()];
    factors.extend(ls.iter().cloned());
    let prod = FiniteLattice::product(&factors)?;
    let members: Vec<usize> = prod
        .elements()
        .filter(|&f| {
            let c = prod.coords(f);
            (0..n).all(|i| rhos[i].apply(c[i + 1]) == c[0])
        })
        .collect();
    let inter = prod.sublattice(&members)?;
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let injections = (0..n)
        .map(|i| {
            MonotoneMap::from_fn(ls[i].clone(), inter.clone(), |x| {
                let r = rhos[i].apply(x);
                let mut c = vec![r];
                c.extend((0..n).map(|j| if j == i { x } else { embeds[j].apply(r) }));
                pos[&prod.from_coords(&c)]
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let projection = MonotoneMap::from_fn(inter.clone(), m.clone(), |f| {
        let c = prod.coords(members[f]);
        let below: Vec<bool> = (0..n).map(|i| ls[i].leq(c[i + 1], embeds[i].apply(c[0]))).collect();
        let vals = (0..n).map(|i| input.phis[i].apply(c[i + 1]));
        if below.iter().all(|&b| b) {
            m.meet_all(vals).expect("nonempty")
        } else {
            m.join_all(vals.zip(&below).filter(|(_, &b)| !b).map(|(v, _)| v)).expect("nonempty")
        }
    })?;
    FactorizationResult { intermediate: inter, injections, projection }.verified(&input.phis, MapMode::Isotone)
}

/// Tuple coordinates of an element of a [`retract_factorization`] intermediate:
/// position 0 is the `K` coordinate, position `i + 1` the `L_i` coordinate.
pub fn retract_coords(input: &RetractInput, result: &FactorizationResult, f: usize) -> Result<Vec<usize>> {
    let label = result.intermediate.label(f);
    let mut factors = vec![input.k.clone()];
    for p in &input.phis {
        factors.push(lattice_domain(p)?.clone());
    }
    let prod = FiniteLattice::product(&factors)?;
    Ok(prod.coords(prod.lookup(label)?))
}

/// The subspace example: `K = {0, a}` is a convex retract of the sublattices
/// generated by `{a, b_0}` and by `{a, b_1}`, yet `(b_0 ∨ b_1) ∧ a` lies strictly
/// between `0` and `a` in the sublattice generated by all three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    pub lattice_size: usize,
    pub a: String,
    pub b: [String; 2],
    pub middle: String,
    pub convex_in_each: [bool; 2],
    pub retract_in_each: [bool; 2],
    pub strictly_between: bool,
    pub middle_is_line_in_a: bool,
    pub convex_in_union: bool,
}

pub fn convexity_counterexample() -> Result<ConvexityReport> {
    let v = subspaces_f2(3)?;
    // Vectors are 3-bit masks with the first coordinate in the lowest bit.
    let a = v.lookup(&subspace_label(3, &[0b001, 0b010]))?;
    let b = [v.lookup(&subspace_label(3, &[0b100]))?, v.lookup(&subspace_label(3, &[0b101]))?];
    let zero = v.bottom();
    let mut convex_in_each = [false; 2];
    let mut retract_in_each = [false; 2];
    for i in 0..2 {
        let li = v.sublattice_closure(&[a, b[i]])?;
        let k = [li.lookup(v.label(zero))?, li.lookup(v.label(a))?];
        convex_in_each[i] = li.is_convex(&k);
        let a_in = k[1];
        let rho = MonotoneMap::from_fn(li.clone(), li.clone(), |x| li.meet(x, a_in))?;
        retract_in_each[i] = matches!(lemma_cvx_retr_check(&li, &k, &rho), Ok(Verdict::Holds));
    }
    let middle = v.meet(v.join(b[0], b[1]), a);
    let union = v.sublattice_closure(&[a, b[0], b[1]])?;
    let k = [union.lookup(v.label(zero))?, union.lookup(v.label(a))?];
    let strictly_between = v.lt(zero, middle) && v.lt(middle, a);
    // A line has exactly one nonzero vector.
    let middle_is_line_in_a = v.upper_covers(zero).contains(&middle) && v.leq(middle, a);
    Ok(ConvexityReport {
        lattice_size: v.len(),
        a: v.label(a).to_string(),
        b: [v.label(b[0]).to_string(), v.label(b[1]).to_string()],
        middle: v.label(middle).to_string(),
        convex_in_each,
        retract_in_each,
        strictly_between,
        middle_is_line_in_a,
        convex_in_union: union.is_convex(&k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::isotone_maps;
    use crate::variety::is_distributive_exhaustive;

    #[test]
    fn lemma_on_principal_ideals() {
        for l in crate::catalog::lattices_up_to(5).unwrap() {
            if !is_distributive_exhaustive(&l) {
                continue;
            }
            for m in l.elements() {
                let k: Vec<usize> = l.elements().filter(|&x| l.leq(x, m)).collect();
                let rho = MonotoneMap::from_fn(l.clone(), l.clone(), |x| l.meet(x, m)).unwrap();
                assert_eq!(lemma_cvx_retr_check(&l, &k, &rho).unwrap(), Verdict::Holds);
            }
            let id = MonotoneMap::identity(&l);
            let all: Vec<usize> = l.elements().collect();
            assert_eq!(lemma_cvx_retr_check(&l, &all, &id).unwrap(), Verdict::Holds);
            for kk in l.elements() {
                let c = MonotoneMap::constant(l.clone(), l.clone(), kk).unwrap();
                assert_eq!(lemma_cvx_retr_check(&l, &[kk], &c).unwrap(), Verdict::Holds);
            }
        }
        let n5 = FiniteLattice::n5();
        let id = MonotoneMap::identity(&n5);
        let (a, c) = (n5.lookup("a").unwrap(), n5.lookup("c").unwrap());
        assert_eq!(lemma_cvx_retr_check(&n5, &[0, 4], &id), Err(Error::HypothesisViolated(Hypothesis::Convexity)));
        assert_eq!(lemma_cvx_retr_check(&n5, &[a, c], &id), Err(Error::HypothesisViolated(Hypothesis::Retraction)));
        assert_eq!(lemma_cvx_retr_check(&n5, &[a, 3], &id), Err(Error::HypothesisViolated(Hypothesis::Sublattice)));
    }

    fn three_chain_instance(p0: Vec<usize>, p1: Vec<usize>) -> RetractInput {
        let l = FiniteLattice::chain_labeled(&["0", "k", "1"]).unwrap();
        let k = FiniteLattice::singleton("k");
        let n5 = FiniteLattice::n5();
        let emb = MonotoneMap::new(k.clone(), l.clone(), vec![1]).unwrap();
        let rho = MonotoneMap::constant(l.clone(), k.clone(), 0).unwrap();
        RetractInput {
            k,
            embeds: vec![emb.clone(), emb],
            retractions: vec![rho.clone(), rho],
            phis: vec![
                MonotoneMap::new(l.clone(), n5.clone(), p0).unwrap(),
                MonotoneMap::new(l, n5, p1).unwrap(),
            ],
        }
    }

    #[test]
    fn chains_over_a_point() {
        let l = FiniteLattice::chain(3);
        let n5 = FiniteLattice::n5();
        let all = isotone_maps(&l, &n5, 1000).unwrap();
        let mut runs = 0;
        for p0 in &all {
            for p1 in all.iter().filter(|p| p[1] == p0[1]) {
                let input = three_chain_instance(p0.clone(), p1.clone());
                let r = retract_factorization(&input).unwrap();
                assert_eq!(r.intermediate.len(), 9);
                assert!(r.check(&input.phis, MapMode::Isotone, true).unwrap().is_none());
                runs += 1;
            }
        }
        assert!(runs > 0);
        let bad = three_chain_instance(vec![0, 1, 4], vec![0, 2, 4]);
        assert_eq!(retract_factorization(&bad).unwrap_err(), Error::HypothesisViolated(Hypothesis::Agreement));
    }

    #[test]
    fn all_but_one_rule() {
        let input = three_chain_instance(vec![0, 1, 4], vec![1, 1, 2]);
        let r = retract_factorization(&input).unwrap();
        for f in r.intermediate.elements() {
            let c = retract_coords(&input, &r, f).unwrap();
            let k_in = |i: usize| input.embeds[i].apply(c[0]);
            for i in 0..2 {
                let j = 1 - i;
                if c[j + 1] == k_in(j) {
                    assert_eq!(r.projection.apply(f), input.phis[i].apply(c[i + 1]));
                }
            }
        }
    }

    #[test]
    fn subspace_counterexample() {
        let r = convexity_counterexample().unwrap();
        assert_eq!(r.lattice_size, 16);
        assert_eq!(r.a, "⟨100,010,110⟩");
        assert_eq!(r.b, ["⟨001⟩".to_string(), "⟨101⟩".to_string()]);
        assert_eq!(r.convex_in_each, [true, true]);
        assert_eq!(r.retract_in_each, [true, true]);
        assert!(r.strictly_between && r.middle_is_line_in_a);
        assert!(!r.convex_in_union);
        assert_eq!(r.middle, "⟨100⟩");
    }
}
