//! Isotone maps out of free Boolean lattices minus their bounds, and the
//! extension probe that recovers least upper bounds from them.

use crate::error::{Error, Result};
use crate::free::{fb_enumerate, fb_lattice, prime_implicants, FBElement};
use crate::lattice::FiniteLattice;
use crate::map::{extend_isotone_complete, map_check, MapMode, MonotoneMap};
use crate::partial::{boolean_minus_bounds, ordinal_sum};
use crate::poset::Order;

fn check_x(m: &FiniteLattice, xs: &[usize]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyList);
    }
    if let Some(&x) = xs.iter().find(|&&x| x >= m.len()) {
        return Err(Error::Mismatch(format!("element index {x} outside the lattice")));
    }
    Ok(())
}

/// `φ(a)` for `a` in the free Boolean lattice on generators `g_x`, `x ∈ xs`:
/// the join over the prime implicants of `a` of the meet of the `x` whose
/// generator the implicant mentions (with either sign).
pub fn boolean_isotone_phi(m: &FiniteLattice, xs: &[usize], a: FBElement) -> Result<usize> {
    check_x(m, xs)?;
    let n = xs.len();
    if a.generators() != n {
        return Err(Error::Mismatch(format!("element over {} generators for {n} elements", a.generators())));
    }
    if a == FBElement::zero(n)? || a == FBElement::one(n)? {
        return Err(Error::BoundsElement);
    }
    let terms = prime_implicants(a)
        .into_iter()
        .map(|c| m.meet_all(c.literals(n).map(|(k, _)| xs[k])).expect("nonconstant implicant"));
    Ok(m.join_all(terms).expect("a is not 0"))
}

/// All upper bounds and all lower bounds of `ys` in `m`.
fn bounds(m: &FiniteLattice, ys: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let upper = m.elements().filter(|&u| ys.iter().all(|&y| m.leq(y, u))).collect();
    let lower = m.elements().filter(|&l| ys.iter().all(|&y| m.leq(l, y))).collect();
    (upper, lower)
}

/// True when the image of `φ` on all nonconstant elements has exactly the
/// upper and lower bounds of `xs`.
pub fn bound_equivalence_check(m: &FiniteLattice, xs: &[usize]) -> Result<bool> {
    check_x(m, xs)?;
    let n = xs.len();
    let (zero, one) = (FBElement::zero(n)?, FBElement::one(n)?);
    let image = fb_enumerate(n)?
        .into_iter()
        .filter(|&a| a != zero && a != one)
        .map(|a| boolean_isotone_phi(m, xs, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(bounds(m, &image) == bounds(m, xs))
}

/// Maps `B − {0,1}` to `m` by [`boolean_isotone_phi`], keyed by label.
fn phi_on_nonconstant(m: &FiniteLattice, b: &FiniteLattice, xs: &[usize], p: &crate::poset::Poset) -> Result<Vec<usize>> {
    (0..p.len())
        .map(|i| {
            let bits = b.lookup(p.label(i))? as u16;
            boolean_isotone_phi(m, xs, FBElement::new(xs.len(), bits)?)
        })
        .collect()
}

/// With `X2` the upper bounds of `xs`, maps `(B1 − {0,1}) + (B2 − {0,1})` to
/// `m` (`B1`, `B2` free Boolean on `xs`, `X2`), extends the map to `B1 + B2`
/// and returns the image of the top of `B1`, checked to be the join of `xs`.
pub fn theorem_complete_probe(m: &FiniteLattice, xs: &[usize]) -> Result<usize> {
    check_x(m, xs)?;
    let mut x1 = xs.to_vec();
    x1.sort_unstable();
    x1.dedup();
    let x2 = bounds(m, &x1).0;
    for n in [x1.len(), x2.len()] {
        if n > 3 {
            return Err(Error::SizeCapExceeded { size: n, cap: 3 });
        }
    }
    let b1 = fb_lattice(x1.len(), "B1.")?;
    let b2 = fb_lattice(x2.len(), "B2.")?;
    let (p1, p2) = (boolean_minus_bounds(&b1)?, boolean_minus_bounds(&b2)?);
    let mut images = phi_on_nonconstant(m, &b1, &x1, p1.poset())?;
    images.extend(phi_on_nonconstant(m, &b2, &x2, p2.poset())?);
    let p = ordinal_sum(&p1, &p2)?;
    let phi = MonotoneMap::new(p.poset().clone(), m.clone(), images)?;
    let q = FiniteLattice::ordinal_sum(&b1, &b2)?.to_poset();
    let ext = extend_isotone_complete(&phi, &q)?;
    if let Some((a, b)) = map_check(&ext, MapMode::Isotone)?.witness() {
        return Err(Error::Mismatch(format!("extension not isotone at ({}, {})", q.label(a), q.label(b))));
    }
    let value = ext.apply(q.lookup(b1.label(b1.top()))?);
    let sup = m.join_all(x1.iter().copied()).expect("nonempty");
    if value != sup {
        return Err(Error::Mismatch(format!("top of B1 goes to {}, not to {}", m.label(value), m.label(sup))));
    }
    Ok(value)
}
