//! The "sea level" construction: each `L_i` is enlarged to `L_i × 2 × 2` so
//! that a chosen `e ∈ M` lies in the range of every extended map, and the
//! product of the enlarged lattices maps to `M` by comparing against `e`.

use crate::algebra::{FreeLattice, LatticeAlgebra};
use crate::error::{Error, Result};
use crate::free::{fd_enumerate, fd_leq, FDElement, LatticeTerm};
use crate::lattice::FiniteLattice;
use crate::map::{MapMode, MonotoneMap};
use crate::variety::variety_check;

use super::{common_codomain, ensure_isotone, lattice_codomain, lattice_domain, FactorizationResult};

/// `L̄ = L × 2 × 2` with the embedding `x ↦ (x,0,1)` and the extension `φ̄`.
#[derive(Clone, Debug)]
pub struct LemmaExtension {
    pub lattice: FiniteLattice,
    pub embedding: MonotoneMap,
    pub extension: MonotoneMap,
}

/// Value of `φ̄` at `(x, s, t)` given `φ(x)`.
fn extended_value<A: LatticeAlgebra>(alg: &A, phi_x: &A::Elem, e: &A::Elem, s: usize, t: usize) -> A::Elem {
    match (s, t) {
        (0, 1) => phi_x.clone(),
        (1, 0) => e.clone(),
        (0, 0) => alg.meet(phi_x, e),
        _ => alg.join(phi_x, e),
    }
}

/// Extends the isotone `φ : L → M` to `L × 2 × 2` so that `e` is in the range:
/// `(x,0,1) ↦ φ(x)`, `(x,1,0) ↦ e`, `(x,0,0) ↦ φ(x)∧e`, `(x,1,1) ↦ φ(x)∨e`.
pub fn lemma_extension(phi: &MonotoneMap, e: usize) -> Result<LemmaExtension> {
    let l = lattice_domain(phi)?.clone();
    let m = lattice_codomain(phi)?.clone();
    ensure_isotone(phi)?;
    if e >= m.len() {
        return Err(Error::Mismatch(format!("element index {e} outside the codomain")));
    }
    let two = FiniteLattice::chain(2);
    let lattice = FiniteLattice::product(&[l.clone(), two.clone(), two])?;
    let embedding = MonotoneMap::from_fn(l, lattice.clone(), |x| lattice.from_coords(&[x, 0, 1]))?;
    let extension = MonotoneMap::from_fn(lattice.clone(), m.clone(), |p| {
        let c = lattice.coords(p);
        extended_value(&m, &phi.apply(c[0]), &e, c[1], c[2])
    })?;
    Ok(LemmaExtension { lattice, embedding, extension })
}

/// `ψ(f)`: the meet of the `f(i)` when all lie below `e`, otherwise the join
/// of those that do not.
pub fn sea_level_psi(m: &FiniteLattice, e: usize, fs: &[usize]) -> Result<usize> {
    sea_level_psi_in(m, &e, fs)
}

pub fn sea_level_psi_in<A: LatticeAlgebra>(alg: &A, e: &A::Elem, fs: &[A::Elem]) -> Result<A::Elem> {
    if fs.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let above: Vec<&A::Elem> = fs.iter().filter(|f| !alg.leq(f, e)).collect();
    Ok(if above.is_empty() {
        alg.meet_all(fs).expect("nonempty")
    } else {
        alg.join_all(above).expect("nonempty")
    })
}

/// Factors isotone maps `φ_i : L_i → M` through the product of the
/// `L_i × 2 × 2`, using sea level `e`. Off-diagonal coordinates of the
/// injections are `(first element of L_j, 1, 0)`, which every `φ̄_j` sends to `e`.
pub fn main_factorization(phis: &[MonotoneMap], e: usize) -> Result<FactorizationResult> {
    let m = common_codomain(phis)?;
    let exts = phis.iter().map(|p| lemma_extension(p, e)).collect::<Result<Vec<_>>>()?;
    let bars: Vec<FiniteLattice> = exts.iter().map(|x| x.lattice.clone()).collect();
    let inter = FiniteLattice::product(&bars)?;
    let base: Vec<usize> = bars.iter().map(|b| b.from_coords(&[0, 1, 0])).collect();
    let injections = phis
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            MonotoneMap::from_fn(phi.domain().clone(), inter.clone(), |x| {
                let mut c = base.clone();
                c[i] = exts[i].embedding.apply(x);
                inter.from_coords(&c)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut vals = vec![0; exts.len()];
    let image = inter
        .elements()
        .map(|f| {
            for (i, c) in inter.coords(f).into_iter().enumerate() {
                vals[i] = exts[i].extension.apply(c);
            }
            sea_level_psi(&m, e, &vals)
        })
        .collect::<Result<Vec<_>>>()?;
    let projection = MonotoneMap::new(inter.clone(), m, image)?;
    let result = FactorizationResult { intermediate: inter, injections, projection }.verified(phis, MapMode::Isotone)?;
    let all_distributive = phis
        .iter()
        .map(|p| variety_check(lattice_domain(p)?, usize::MAX).map(|r| r.distributive))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|d| d);
    if all_distributive && !variety_check(&result.intermediate, usize::MAX)?.distributive {
        return Err(Error::Mismatch("product of distributive lattices reported non-distributive".into()));
    }
    Ok(result)
}

/// The free distributive lattice on `gens` mapped into the free lattice on the
/// same generators through the sea level construction, with one-element `L_i`,
/// `φ_i` sending the point to the `i`-th generator, and `e` the join of all
/// generators.
#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub images: Vec<(FDElement, LatticeTerm)>,
    /// First pair `(x, y)` of FD indices with `x ≤ y` but images not comparable.
    pub isotone_violation: Option<(usize, usize)>,
    pub pairs_checked: usize,
    pub fixes_generators: bool,
    pub intermediate_size: usize,
}

pub fn corollary_free_distributive(gens: &[&str]) -> Result<CorollaryReport> {
    let n = gens.len();
    if n == 0 {
        return Err(Error::EmptyIndexSet);
    }
    let fd = fd_enumerate(n)?;
    let free = FreeLattice::new();
    let g: Vec<LatticeTerm> = gens.iter().map(|s| LatticeTerm::gen(s)).collect();
    let e = free.join_all(&g).expect("nonempty");
    let bars: Vec<FiniteLattice> = gens
        .iter()
        .map(|s| {
            let two = FiniteLattice::chain(2);
            FiniteLattice::product(&[FiniteLattice::singleton(s), two.clone(), two])
        })
        .collect::<Result<_>>()?;
    let inter = FiniteLattice::product(&bars)?;
    let base: Vec<usize> = bars.iter().map(|b| b.from_coords(&[0, 1, 0])).collect();
    let inj: Vec<usize> = (0..n)
        .map(|i| {
            let mut c = base.clone();
            c[i] = bars[i].from_coords(&[0, 0, 1]);
            inter.from_coords(&c)
        })
        .collect();
    // Lattice homomorphism FD → intermediate extending generator k ↦ inj[k].
    let into_inter = |w: &FDElement| {
        let meets = w.members().iter().map(|&s| {
            inter.meet_all((0..n).filter(|k| s >> k & 1 == 1).map(|k| inj[k])).expect("nonempty member")
        });
        inter.join_all(meets).expect("nonempty antichain")
    };
    let psi = |f: usize| {
        let vals: Vec<LatticeTerm> = inter
            .coords(f)
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let st = bars[i].coords(c);
                extended_value(&free, &g[i], &e, st[1], st[2])
            })
            .collect();
        sea_level_psi_in(&free, &e, &vals)
    };
    let images = fd
        .iter()
        .map(|w| Ok((w.clone(), psi(into_inter(w))?)))
        .collect::<Result<Vec<_>>>()?;
    let mut isotone_violation = None;
    let mut pairs_checked = 0;
    'outer: for (a, (wa, ta)) in images.iter().enumerate() {
        for (b, (wb, tb)) in images.iter().enumerate() {
            pairs_checked += 1;
            if fd_leq(wa, wb) && !free.leq(ta, tb) {
                isotone_violation = Some((a, b));
                break 'outer;
            }
        }
    }
    let fixes_generators = (0..n).all(|k| {
        let w = FDElement::generator(k);
        images.iter().find(|(x, _)| *x == w).is_some_and(|(_, t)| free.leq(t, &g[k]) && free.leq(&g[k], t))
    });
    Ok(CorollaryReport { images, isotone_violation, pairs_checked, fixes_generators, intermediate_size: inter.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::map_check_all_pairs;
    use crate::poset::Order;
    use crate::variety::is_distributive_exhaustive;

    #[test]
    fn lemma_rows() {
        let n5 = FiniteLattice::n5();
        let l = FiniteLattice::chain(3);
        let phi = MonotoneMap::new(l.clone(), n5.clone(), vec![0, 1, 2]).unwrap();
        for e in n5.elements() {
            let ext = lemma_extension(&phi, e).unwrap();
            assert!(map_check_all_pairs(&ext.extension, MapMode::Isotone).unwrap().holds());
            for x in l.elements() {
                let at = |s, t| ext.extension.apply(ext.lattice.from_coords(&[x, s, t]));
                assert_eq!(at(0, 0), n5.meet(phi.apply(x), e));
                assert_eq!(at(1, 0), e);
                assert_eq!(at(0, 1), phi.apply(x));
                assert_eq!(at(1, 1), n5.join(phi.apply(x), e));
                assert_eq!(ext.extension.apply(ext.embedding.apply(x)), phi.apply(x));
            }
            assert!(ext.extension.image().contains(&e));
        }
        let two = FiniteLattice::chain(2);
        let ext = lemma_extension(&MonotoneMap::identity(&two), 0).unwrap();
        assert_eq!(ext.lattice.len(), 8);
        assert!(map_check_all_pairs(&ext.extension, MapMode::Isotone).unwrap().holds());
        let table = FiniteLattice::from_poset(&ext.lattice.to_poset()).unwrap();
        assert!(is_distributive_exhaustive(&table));
        let bad = MonotoneMap::new(two.clone(), two, vec![1, 0]).unwrap();
        assert!(matches!(lemma_extension(&bad, 0), Err(Error::NotIsotoneInput(..))));
    }

    #[test]
    fn psi_examples() {
        let sq = FiniteLattice::boolean(2);
        let (b, x, y, t) = (0, sq.lookup("(1,0)").unwrap(), sq.lookup("(0,1)").unwrap(), 3);
        assert_eq!(sea_level_psi(&sq, b, &[x, y]).unwrap(), t);
        assert_eq!(sea_level_psi(&sq, x, &[x, x, x]).unwrap(), x);
        assert_eq!(sea_level_psi(&sq, x, &[x, y, x]).unwrap(), y);
        assert_eq!(sea_level_psi(&sq, x, &[x, b, x]).unwrap(), b);
        assert_eq!(sea_level_psi(&sq, x, &[]), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn single_factor_and_pairs() {
        let n5 = FiniteLattice::n5();
        let two = FiniteLattice::chain(2);
        let phi = MonotoneMap::new(two.clone(), n5.clone(), vec![1, 2]).unwrap();
        for e in n5.elements() {
            let r = main_factorization(&[phi.clone()], e).unwrap();
            assert_eq!(r.intermediate.len(), 8);
            assert!(r.check(&[phi.clone()], MapMode::Isotone, true).unwrap().is_none());
        }
        let phis: Vec<MonotoneMap> = crate::map::isotone_maps(&two, &n5, 100)
            .unwrap()
            .into_iter()
            .map(|img| MonotoneMap::new(two.clone(), n5.clone(), img).unwrap())
            .collect();
        for a in &phis {
            for b in &phis {
                for e in n5.elements() {
                    let pair = [a.clone(), b.clone()];
                    let r = main_factorization(&pair, e).unwrap();
                    assert!(r.check(&pair, MapMode::Isotone, true).unwrap().is_none());
                    assert!(r.projection.is_certified(MapMode::Isotone));
                }
            }
        }
    }

    #[test]
    fn corollary_on_three_generators() {
        let r = corollary_free_distributive(&["a", "b", "c"]).unwrap();
        assert_eq!(r.images.len(), 18);
        assert_eq!(r.pairs_checked, 324);
        assert_eq!(r.intermediate_size, 64);
        assert!(r.isotone_violation.is_none());
        assert!(r.fixes_generators);
    }
}
