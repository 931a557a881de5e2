//! Algebraic invariants checked on generated inputs.

use std::collections::HashMap;
use std::sync::OnceLock;

use latext_core::catalog::lattices_up_to;
use latext_core::constructions::{boolean_isotone_phi, sea_level_psi};
use latext_core::downset_prod::{lprime_lattice, nondistributive_instance, DownsetProduct};
use latext_core::free::{
    canonical_form, eval_term, fb_complement, fb_join, fb_leq, fb_meet, fd_dual, fd_enumerate, fd_join, fd_leq,
    fd_meet, fl_eq, fl_leq, prime_implicants, FBElement, FDElement, LatticeTerm,
};
use latext_core::lattice::subspaces_f2;
use latext_core::map::{map_check, map_check_all_pairs, random_isotone_map};
use latext_core::text::{parse_lattice, render_lattice};
use latext_core::{FiniteLattice, MapMode, MonotoneMap, Order};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn models() -> &'static [FiniteLattice] {
    static M: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    M.get_or_init(|| {
        let mut v = lattices_up_to(5).unwrap();
        v.push(FiniteLattice::product(&[FiniteLattice::chain(2), FiniteLattice::n5()]).unwrap());
        v.push(FiniteLattice::product(&[FiniteLattice::chain(3), FiniteLattice::m3()]).unwrap());
        v.push(subspaces_f2(3).unwrap());
        v
    })
}

fn fd3() -> &'static [FDElement] {
    static F: OnceLock<Vec<FDElement>> = OnceLock::new();
    F.get_or_init(|| fd_enumerate(3).unwrap())
}

fn downset_product() -> &'static DownsetProduct {
    static D: OnceLock<DownsetProduct> = OnceLock::new();
    D.get_or_init(|| lprime_lattice(&nondistributive_instance().unwrap()).unwrap())
}

const GENS: [&str; 3] = ["a", "b", "c"];

fn term() -> impl Strategy<Value = LatticeTerm> {
    let leaf = prop::sample::select(GENS.to_vec()).prop_map(LatticeTerm::gen);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| LatticeTerm::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| LatticeTerm::join(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lattice_laws(li in 0..models().len(), x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let l = &models()[li];
        let (a, b, c) = (x % l.len(), y % l.len(), z % l.len());
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        prop_assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
        prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
    }

    #[test]
    fn sea_level_is_monotone(
        li in 0..models().len(),
        e in any::<usize>(),
        f in prop::collection::vec(any::<usize>(), 1..5),
        r in prop::collection::vec(any::<usize>(), 5),
    ) {
        let m = &models()[li];
        let e = e % m.len();
        let f: Vec<usize> = f.iter().map(|x| x % m.len()).collect();
        let g: Vec<usize> = f.iter().zip(&r).map(|(&x, &y)| m.join(x, y % m.len())).collect();
        let (pf, pg) = (sea_level_psi(m, e, &f).unwrap(), sea_level_psi(m, e, &g).unwrap());
        prop_assert!(m.leq(pf, pg));
    }

    #[test]
    fn canonical_form_is_idempotent_and_equal(t in term()) {
        let (c, _) = canonical_form(&t);
        prop_assert!(fl_eq(&t, &c));
        prop_assert_eq!(canonical_form(&c).0, c.clone());
        prop_assert!(c.size() <= t.size());
    }

    #[test]
    fn whitman_order_laws(s in term(), t in term()) {
        let st = LatticeTerm::join(s.clone(), t.clone());
        let ts = LatticeTerm::meet(s.clone(), t.clone());
        prop_assert!(fl_leq(&s, &s));
        prop_assert!(fl_leq(&s, &st) && fl_leq(&ts, &s));
        prop_assert_eq!(fl_leq(&s, &t), fl_eq(&s, &LatticeTerm::meet(s.clone(), t.clone())));
        prop_assert_eq!(fl_leq(&s, &t) && fl_leq(&t, &s), fl_eq(&s, &t));
    }

    #[test]
    fn whitman_order_is_sound(s in term(), t in term(), li in 0..models().len(), v in prop::array::uniform3(any::<usize>())) {
        let l = &models()[li];
        let assignment: HashMap<String, usize> = GENS.iter().zip(v).map(|(g, x)| (g.to_string(), x % l.len())).collect();
        if fl_leq(&s, &t) {
            let (a, b) = (eval_term(&s, l, &assignment).unwrap(), eval_term(&t, l, &assignment).unwrap());
            prop_assert!(l.leq(a, b));
        }
    }

    #[test]
    fn free_distributive_laws(i in 0..18usize, j in 0..18usize, k in 0..18usize) {
        let f = fd3();
        prop_assume!(f.len() == 18);
        let (a, b, c) = (&f[i], &f[j], &f[k]);
        prop_assert_eq!(fd_meet(a, &fd_join(b, c)), fd_join(&fd_meet(a, b), &fd_meet(a, c)));
        prop_assert_eq!(fd_join(a, &fd_meet(a, b)), a.clone());
        prop_assert!(fd_leq(a, &fd_join(a, b)));
        prop_assert_eq!(fd_leq(a, b), fd_meet(a, b) == *a);
        prop_assert_eq!(fd_dual(&fd_dual(a, 3), 3), a.clone());
        prop_assert_eq!(fd_leq(a, b), fd_leq(&fd_dual(b, 3), &fd_dual(a, 3)));
    }

    #[test]
    fn free_boolean_laws(n in 1usize..=3, x in any::<u16>(), y in any::<u16>()) {
        let mask = ((1u32 << (1 << n)) - 1) as u16;
        let (a, b) = (FBElement::new(n, x & mask).unwrap(), FBElement::new(n, y & mask).unwrap());
        prop_assert_eq!(fb_complement(fb_complement(a)), a);
        prop_assert_eq!(fb_complement(fb_join(a, b)), fb_meet(fb_complement(a), fb_complement(b)));
        prop_assert_eq!(fb_leq(a, b), fb_meet(a, b) == a);
        let cover = prime_implicants(a).into_iter().fold(FBElement::zero(n).unwrap(), |acc, c| fb_join(acc, c.as_element(n)));
        prop_assert_eq!(cover, a);
    }

    #[test]
    fn boolean_phi_is_isotone(li in 0..models().len(), n in 1usize..=3, xs in prop::array::uniform3(any::<usize>()), a in any::<u16>(), b in any::<u16>()) {
        let m = &models()[li];
        let xs: Vec<usize> = xs[..n].iter().map(|x| x % m.len()).collect();
        let mask = ((1u32 << (1 << n)) - 1) as u16;
        let a = FBElement::new(n, a & mask).unwrap();
        let b = fb_join(a, FBElement::new(n, b & mask).unwrap());
        let (zero, one) = (FBElement::zero(n).unwrap(), FBElement::one(n).unwrap());
        prop_assume!(a != zero && b != one);
        let (fa, fb) = (boolean_isotone_phi(m, &xs, a).unwrap(), boolean_isotone_phi(m, &xs, b).unwrap());
        prop_assert!(m.leq(fa, fb));
    }

    #[test]
    fn downset_closure_and_joins(f in any::<usize>(), g in any::<usize>()) {
        let dp = downset_product();
        let (l, p) = (dp.lattice(), dp.p());
        let (f, g) = (f % l.len(), g % l.len());
        let mut union = dp.family(f).clone();
        union.union_with(dp.family(g));
        let closed = p.closure(&union);
        prop_assert!(union.is_subset(&closed));
        prop_assert_eq!(p.closure(&closed), closed.clone());
        prop_assert_eq!(&closed, dp.family(l.join(f, g)));
        prop_assert_eq!(p.join_via_maximal(dp.family(f), dp.family(g)), closed);
        prop_assert_eq!(dp.family(l.meet(f, g)), &dp.family(f).intersection(dp.family(g)));
    }

    #[test]
    fn cover_checks_match_exhaustive_checks(di in 0..models().len(), ci in 0..models().len(), image in prop::collection::vec(any::<usize>(), 16)) {
        let (d, c) = (&models()[di], &models()[ci]);
        prop_assume!(d.len() <= 16);
        let image: Vec<usize> = image[..d.len()].iter().map(|x| x % c.len()).collect();
        let m = MonotoneMap::new(d.clone(), c.clone(), image).unwrap();
        for mode in [MapMode::Isotone, MapMode::JoinHom, MapMode::MeetHom, MapMode::LatticeHom] {
            prop_assert_eq!(map_check(&m, mode).unwrap().holds(), map_check_all_pairs(&m, mode).unwrap().holds());
        }
    }

    #[test]
    fn random_isotone_maps_are_isotone(di in 0..models().len(), ci in 0..models().len(), seed in any::<u64>()) {
        let (d, c) = (&models()[di], &models()[ci]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let img = random_isotone_map(d, c, &[], &mut rng);
        for x in d.elements() {
            for y in d.elements() {
                prop_assert!(!d.leq(x, y) || c.leq(img[x], img[y]));
            }
        }
    }

    #[test]
    fn text_round_trip(li in 0..models().len()) {
        let l = &models()[li];
        let (name, back) = parse_lattice(&render_lattice("L", l)).unwrap();
        prop_assert_eq!(name, "L");
        prop_assert_eq!(back.labels(), l.labels());
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(back.leq(x, y), l.leq(x, y));
            }
        }
    }
}
