//! Distributivity and modularity tests, N5/M3 witnesses, and isomorphism search.

use crate::error::Result;
use crate::lattice::FiniteLattice;
use crate::poset::Order;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyReport {
    pub distributive: bool,
    pub modular: bool,
    /// `[bottom, a, c, b, top]` with `a < c` and `b` incomparable to both.
    pub pentagon_witness: Option<[usize; 5]>,
    /// `[bottom, x, y, z, top]` with `x, y, z` pairwise incomparable.
    pub diamond_witness: Option<[usize; 5]>,
}

impl VarietyReport {
    pub fn pentagon_labels(&self, l: &FiniteLattice) -> Option<Vec<String>> {
        self.pentagon_witness.map(|w| w.iter().map(|&i| l.label(i).to_string()).collect())
    }

    pub fn diamond_labels(&self, l: &FiniteLattice) -> Option<Vec<String>> {
        self.diamond_witness.map(|w| w.iter().map(|&i| l.label(i).to_string()).collect())
    }
}

/// True iff `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
pub fn is_distributive_exhaustive(l: &FiniteLattice) -> bool {
    distributivity_violation(l).is_none()
}

pub fn distributivity_violation(l: &FiniteLattice) -> Option<(usize, usize, usize)> {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// True iff `x ≤ z` implies `x ∨ (y ∧ z) = (x ∨ y) ∧ z` for all triples.
pub fn is_modular_exhaustive(l: &FiniteLattice) -> bool {
    l.elements().all(|x| {
        l.elements().all(|z| {
            !l.leq(x, z) || l.elements().all(|y| l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), z))
        })
    })
}

/// Every `[bottom, a, c, b, top]` forming a pentagon sublattice.
pub fn pentagons(l: &FiniteLattice) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for a in l.elements() {
        for c in l.elements() {
            if !l.lt(a, c) {
                continue;
            }
            for b in l.elements() {
                if l.comparable(b, c) || l.comparable(b, a) {
                    continue;
                }
                let (o, i) = (l.meet(a, b), l.join(a, b));
                if l.meet(c, b) == o && l.join(c, b) == i {
                    out.push([o, a, c, b, i]);
                }
            }
        }
    }
    out
}

fn first_pentagon(l: &FiniteLattice) -> Option<[usize; 5]> {
    for a in l.elements() {
        for c in l.elements() {
            if !l.lt(a, c) {
                continue;
            }
            for b in l.elements() {
                if l.comparable(b, c) || l.comparable(b, a) {
                    continue;
                }
                let (o, i) = (l.meet(a, b), l.join(a, b));
                if l.meet(c, b) == o && l.join(c, b) == i {
                    return Some([o, a, c, b, i]);
                }
            }
        }
    }
    None
}

fn first_diamond(l: &FiniteLattice) -> Option<[usize; 5]> {
    for x in l.elements() {
        for y in (x + 1)..l.len() {
            if l.comparable(x, y) {
                continue;
            }
            let (o, i) = (l.meet(x, y), l.join(x, y));
            for z in (y + 1)..l.len() {
                if l.comparable(x, z) || l.comparable(y, z) {
                    continue;
                }
                if [l.meet(x, z), l.meet(y, z)] == [o, o] && [l.join(x, z), l.join(y, z)] == [i, i] {
                    return Some([o, x, y, z, i]);
                }
            }
        }
    }
    None
}

/// Classifies `l` as distributive/modular and looks for N5 and M3 witnesses.
///
/// Table-backed lattices are checked exhaustively and must not exceed `cap`.
/// A product lies in a lattice variety exactly when each factor does (every
/// factor is both a quotient and a sublattice of the product), so products are
/// classified factor by factor and witnesses are lifted along the embedding
/// that fixes the other coordinates at their bottoms.
pub fn variety_check(l: &FiniteLattice, cap: usize) -> Result<VarietyReport> {
    if let Some(factors) = l.factors() {
        let mut report = VarietyReport {
            distributive: true,
            modular: true,
            pentagon_witness: None,
            diamond_witness: None,
        };
        let bottoms: Vec<usize> = factors.iter().map(|f| f.bottom()).collect();
        let lift = |k: usize, w: [usize; 5]| -> [usize; 5] {
            w.map(|e| {
                let mut c = bottoms.clone();
                c[k] = e;
                l.from_coords(&c)
            })
        };
        for (k, f) in factors.iter().enumerate() {
            let r = variety_check(f, cap)?;
            report.distributive &= r.distributive;
            report.modular &= r.modular;
            if report.pentagon_witness.is_none() {
                report.pentagon_witness = r.pentagon_witness.map(|w| lift(k, w));
            }
            if report.diamond_witness.is_none() {
                report.diamond_witness = r.diamond_witness.map(|w| lift(k, w));
            }
        }
        return Ok(report);
    }
    l.ensure_within(cap)?;
    let distributive = is_distributive_exhaustive(l);
    let modular = distributive || is_modular_exhaustive(l);
    Ok(VarietyReport {
        distributive,
        modular,
        pentagon_witness: if modular { None } else { first_pentagon(l) },
        diamond_witness: if distributive { None } else { first_diamond(l) },
    })
}

/// An order isomorphism `a → b` as an index map, found by backtracking.
pub fn find_isomorphism<A: Order + ?Sized, B: Order + ?Sized>(a: &A, b: &B) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sig = |o: &dyn Fn(usize, usize) -> bool, x: usize| -> (usize, usize) {
        ((0..n).filter(|&y| o(y, x)).count(), (0..n).filter(|&y| o(x, y)).count())
    };
    let sig_a: Vec<(usize, usize)> = (0..n).map(|x| sig(&|p, q| a.leq(p, q), x)).collect();
    let sig_b: Vec<(usize, usize)> = (0..n).map(|x| sig(&|p, q| b.leq(p, q), x)).collect();
    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec<A: Order + ?Sized, B: Order + ?Sized>(
        a: &A,
        b: &B,
        k: usize,
        sig_a: &[(usize, usize)],
        sig_b: &[(usize, usize)],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] || sig_a[k] != sig_b[t] {
                continue;
            }
            let consistent = (0..k).all(|j| {
                a.leq(j, k) == b.leq(assignment[j], t) && a.leq(k, j) == b.leq(t, assignment[j])
            });
            if consistent {
                assignment[k] = t;
                used[t] = true;
                if rec(a, b, k + 1, sig_a, sig_b, assignment, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    if rec(a, b, 0, &sig_a, &sig_b, &mut assignment, &mut used) {
        Some(assignment)
    } else {
        None
    }
}

pub fn is_isomorphic<A: Order + ?Sized, B: Order + ?Sized>(a: &A, b: &B) -> bool {
    find_isomorphism(a, b).is_some()
}
