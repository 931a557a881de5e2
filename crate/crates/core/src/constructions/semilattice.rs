//! Extensions for join-semilattices: isotone maps out of a free product, and
//! join-homomorphisms whose images share a lower bound.

use crate::error::{Error, Result};
use crate::free::{FiniteJoinSemilattice, FreeProduct};
use crate::lattice::FiniteLattice;
use crate::map::{map_check, Carrier, MapMode, MonotoneMap, Verdict};
use crate::poset::Order;

use super::{common_codomain, lattice_domain, FactorizationResult};

/// The free product of the factors, its embeddings, and the isotone map to
/// the common codomain.
#[derive(Clone, Debug)]
pub struct SemilatticeExtension {
    pub free_product: FreeProduct,
    pub map: MonotoneMap,
}

/// Sends the formal join `x_{i1} ∨ ⋯ ∨ x_{in}` to `φ_{i1}(x_{i1}) ∨ ⋯ ∨ φ_{in}(x_{in})`.
pub fn semilat_fp_extension(factors: &[FiniteJoinSemilattice], phis: &[MonotoneMap]) -> Result<SemilatticeExtension> {
    if factors.len() != phis.len() {
        return Err(Error::Mismatch(format!("{} maps for {} factors", phis.len(), factors.len())));
    }
    let m = phis.first().ok_or(Error::EmptyList)?.codomain().clone();
    if matches!(m, Carrier::Poset(_)) {
        return Err(Error::Mismatch("the codomain must have joins".into()));
    }
    for (phi, s) in phis.iter().zip(factors) {
        if phi.domain().len() != s.len() || (0..s.len()).any(|x| phi.domain().label(x) != s.label(x)) {
            return Err(Error::Mismatch("each map must start at its factor".into()));
        }
        if phi.codomain().labels() != m.labels() {
            return Err(Error::Mismatch("the maps must share one codomain".into()));
        }
        if let Verdict::Fails(a, b) = map_check(phi, MapMode::Isotone)? {
            let d = phi.domain();
            return Err(Error::NotIsotoneInput(d.label(a).into(), d.label(b).into()));
        }
    }
    let fp = FreeProduct::new(factors)?;
    let join = |a: usize, b: usize| m.join(a, b).expect("codomain has joins");
    let image = fp
        .tuples
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|x| phis[i].apply(x)))
                .reduce(join)
                .expect("nonempty support")
        })
        .collect();
    let map = MonotoneMap::new(fp.product.clone(), m, image)?;
    if let Verdict::Fails(a, b) = map_check(&map, MapMode::Isotone)? {
        return Err(Error::Mismatch(format!("extension not isotone at ({}, {})", fp.product.label(a), fp.product.label(b))));
    }
    for (emb, phi) in fp.embeddings.iter().zip(phis) {
        if (0..phi.domain().len()).any(|x| map.apply(emb.apply(x)) != phi.apply(x)) {
            return Err(Error::Mismatch("extension does not restrict to the given maps".into()));
        }
    }
    Ok(SemilatticeExtension { free_product: fp, map })
}

/// Join-homomorphisms `φ_i : L_i → M` whose images lie above `e`: each `L_i`
/// gets a new bottom `⊥i` sent to `e`, and a tuple of the product of the
/// enlarged lattices goes to the join of its coordinates' images.
pub fn bounded_below_extension(phis: &[MonotoneMap], e: usize) -> Result<FactorizationResult> {
    let m = common_codomain(phis)?;
    if e >= m.len() {
        return Err(Error::Mismatch(format!("element index {e} outside the codomain")));
    }
    for phi in phis {
        if let Verdict::Fails(a, b) = map_check(phi, MapMode::JoinHom)? {
            let d = phi.domain();
            return Err(Error::NotJoinHom(d.label(a).into(), d.label(b).into()));
        }
        if let Some(x) = (0..phi.domain().len()).find(|&x| !m.leq(e, phi.apply(x))) {
            return Err(Error::NotLowerBound(phi.domain().label(x).into()));
        }
    }
    let bars = phis
        .iter()
        .enumerate()
        .map(|(i, phi)| lattice_domain(phi)?.with_new_bottom(&format!("⊥{i}")))
        .collect::<Result<Vec<_>>>()?;
    let inter = FiniteLattice::product(&bars)?;
    let injections = phis
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            MonotoneMap::from_fn(lattice_domain(phi)?.clone(), inter.clone(), |x| {
                let mut c = vec![0; phis.len()];
                c[i] = x + 1;
                inter.from_coords(&c)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let projection = MonotoneMap::from_fn(inter.clone(), m.clone(), |p| {
        let c = inter.coords(p);
        m.join_all(c.iter().zip(phis).map(|(&x, phi)| if x == 0 { e } else { phi.apply(x - 1) }))
            .expect("nonempty")
    })?;
    FactorizationResult { intermediate: inter, injections, projection }.verified(phis, MapMode::JoinHom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{isotone_maps, join_homs, map_check_all_pairs};

    #[test]
    fn free_product_extension_on_chains() {
        let two = FiniteLattice::chain(2);
        let sq = FiniteLattice::boolean(2);
        let s = FiniteJoinSemilattice::from_lattice(&two);
        for p0 in isotone_maps(&two, &sq, 100).unwrap() {
            for p1 in isotone_maps(&two, &sq, 100).unwrap() {
                let phis = [
                    MonotoneMap::new(two.clone(), sq.clone(), p0.clone()).unwrap(),
                    MonotoneMap::new(two.clone(), sq.clone(), p1.clone()).unwrap(),
                ];
                let ext = semilat_fp_extension(&[s.clone(), s.clone()], &phis).unwrap();
                assert_eq!(ext.free_product.product.len(), 8);
                assert!(map_check_all_pairs(&ext.map, MapMode::Isotone).unwrap().holds());
            }
        }
    }

    #[test]
    fn points_go_to_the_join() {
        let m3 = FiniteLattice::m3();
        let pt = FiniteLattice::singleton("p");
        let s = FiniteJoinSemilattice::from_lattice(&pt);
        let phis = [
            MonotoneMap::constant(pt.clone(), m3.clone(), 1).unwrap(),
            MonotoneMap::constant(pt.clone(), m3.clone(), 2).unwrap(),
        ];
        let ext = semilat_fp_extension(&[s.clone(), s], &phis).unwrap();
        let top = ext.free_product.product.lookup("(p,p)").unwrap();
        assert_eq!(ext.map.apply(top), m3.join(1, 2));
    }

    #[test]
    fn bounded_below_on_chains() {
        let two = FiniteLattice::chain(2);
        let sq = FiniteLattice::boolean(2);
        let homs = join_homs(&two, &sq, 100).unwrap();
        for h0 in &homs {
            for h1 in &homs {
                let phis = [
                    MonotoneMap::new(two.clone(), sq.clone(), h0.clone()).unwrap(),
                    MonotoneMap::new(two.clone(), sq.clone(), h1.clone()).unwrap(),
                ];
                let r = bounded_below_extension(&phis, sq.bottom()).unwrap();
                assert!(map_check_all_pairs(&r.projection, MapMode::JoinHom).unwrap().holds());
                let bottom = r.intermediate.bottom();
                assert_eq!(r.projection.apply(bottom), sq.bottom());
            }
        }
        let bad = MonotoneMap::new(two.clone(), sq.clone(), vec![1, 3]).unwrap();
        let good = MonotoneMap::new(two.clone(), sq.clone(), vec![1, 1]).unwrap();
        assert!(matches!(bounded_below_extension(&[good.clone()], 2), Err(Error::NotLowerBound(_))));
        let not_join = MonotoneMap::new(sq.clone(), sq.clone(), vec![0, 0, 0, 3]).unwrap();
        assert!(matches!(bounded_below_extension(&[not_join], 0), Err(Error::NotJoinHom(_, _))));
        assert!(bounded_below_extension(&[bad, good], 1).is_ok());
    }
}
