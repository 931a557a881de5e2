//! Per-section verification suites. Each suite is deterministic given the
//! seed: random choices come from one ChaCha8 stream per suite.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use latext_core::catalog::lattices_up_to;
use latext_core::constructions::{
    bound_equivalence_check, bounded_below_extension, check_neq_example, convexity_counterexample,
    corollary_free_distributive, main_factorization, median_element, prod_times_free, retract_factorization,
    sea_level_psi, semilat_fp_extension, theorem_complete_probe, two_lattice_symmetric, FactorizationResult,
    RetractInput,
};
use latext_core::downset_prod::{
    dov_membership_check, lprime_lattice, nondistributive_instance, nondistributive_witness,
    theorem_semilat_factorization,
};
use latext_core::free::{
    canonical_form, fl_eq, free_product_jsl, FiniteJoinSemilattice, LatticeTerm,
};
use latext_core::map::{isotone_maps, join_homs, map_check_all_pairs, random_isotone_map};
use latext_core::partial::{boolean_minus_bounds, complement_join_constant, partial_homs};
use latext_core::variety::{is_distributive_exhaustive, pentagons};
use latext_core::{FiniteLattice, MapMode, MonotoneMap, Order, Poset, Result, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, Entry};

pub const SECTIONS: [u8; 6] = [2, 3, 4, 5, 6, 7];

/// Sizes and sample counts for the suites.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Largest catalog lattice used as a domain or codomain (at most 5).
    pub max_size: usize,
    /// Random map tuples drawn per lattice combination.
    pub samples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_size: 4, samples: 2 }
    }
}

fn rng_for(seed: u64, section: u8, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(section) << 56) ^ suite)
}

/// Runs `body` as a named suite; a library error or panic becomes an error entry.
fn suite(name: &str, body: impl FnOnce() -> Result<Vec<Check>>) -> Entry {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(body));
    let millis = start.elapsed().as_millis() as u64;
    match out {
        Ok(Ok(checks)) => Entry::new(name, checks, millis),
        Ok(Err(e)) => Entry::failed(name, e.to_string(), millis),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Entry::failed(name, format!("panic: {}", msg.unwrap_or_default()), millis)
        }
    }
}

/// Passes with `n` instances unless `witness` is set.
fn tally(property: &str, n: usize, witness: Option<Vec<String>>) -> Check {
    Check::new(property).instances(n).outcome(true, witness.is_none(), witness)
}

fn targets() -> Vec<FiniteLattice> {
    vec![FiniteLattice::n5(), FiniteLattice::m3(), FiniteLattice::boolean(2), FiniteLattice::chain(4)]
}

fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn random_phi(l: &FiniteLattice, m: &FiniteLattice, rng: &mut ChaCha8Rng) -> Result<MonotoneMap> {
    MonotoneMap::new(l.clone(), m.clone(), random_isotone_map(l, m, &[], rng))
}

fn failure_witness(r: &FactorizationResult, phis: &[MonotoneMap], mode: MapMode) -> Result<Option<Vec<String>>> {
    Ok(r.check(phis, mode, true)?.map(|f| vec![f.to_string()]))
}

fn labels(o: &dyn Order, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| o.label(x).to_string()).collect()
}

pub fn verify_section(section: u8, seed: u64, caps: Caps) -> Vec<Entry> {
    match section {
        2 => section_2(seed, caps),
        3 => section_3(seed, caps),
        4 => section_4(caps),
        5 => section_5(seed, caps),
        6 => section_6(seed, caps),
        7 => section_7(seed, caps),
        _ => vec![Entry::failed(format!("section {section}"), "no such section", 0)],
    }
}

fn section_2(seed: u64, caps: Caps) -> Vec<Entry> {
    let sweep = suite("main_factorization_sweep", || {
        let cat = lattices_up_to(caps.max_size)?;
        let mut rng = rng_for(seed, 2, 1);
        let (mut n, mut witness) = (0, None);
        'all: for m in targets() {
            for &(i, j) in &unordered_pairs(cat.len()) {
                for _ in 0..caps.samples {
                    let phis = [random_phi(&cat[i], &m, &mut rng)?, random_phi(&cat[j], &m, &mut rng)?];
                    for e in m.elements() {
                        n += 1;
                        let r = main_factorization(&phis, e)?;
                        if let Some(w) = failure_witness(&r, &phis, MapMode::Isotone)? {
                            witness = Some(w);
                            break 'all;
                        }
                    }
                }
            }
        }
        Ok(vec![tally("isotone", n, witness).target("projection").detail("every e in M per map tuple")])
    });
    let psi = suite("sea_level_monotone", || {
        let mut cat = lattices_up_to(caps.max_size)?;
        cat.extend(targets());
        let (mut n, mut witness) = (0, None);
        'all: for m in &cat {
            let k = 3;
            let tuples: Vec<Vec<usize>> = (0..m.len().pow(k as u32))
                .map(|mut c| {
                    (0..k)
                        .map(|_| {
                            let d = c % m.len();
                            c /= m.len();
                            d
                        })
                        .collect()
                })
                .collect();
            for e in m.elements() {
                let vals = tuples.iter().map(|f| sea_level_psi(m, e, f)).collect::<Result<Vec<_>>>()?;
                for (a, f) in tuples.iter().enumerate() {
                    for (b, g) in tuples.iter().enumerate() {
                        if f.iter().zip(g).all(|(&x, &y)| m.leq(x, y)) {
                            n += 1;
                            if !m.leq(vals[a], vals[b]) {
                                witness = Some(vec![format!("e={}", m.label(e)), format!("{f:?}"), format!("{g:?}")]);
                                break 'all;
                            }
                        }
                    }
                }
            }
        }
        Ok(vec![tally("isotone", n, witness).target("sea_level_psi")])
    });
    let corollary = suite("free_distributive_into_free_lattice", || {
        let r = corollary_free_distributive(&["a", "b", "c"])?;
        let witness = r.isotone_violation.map(|(x, y)| vec![r.images[x].1.to_string(), r.images[y].1.to_string()]);
        Ok(vec![
            tally("isotone", r.pairs_checked, witness).target("FD(3)"),
            Check::new("fixes_generators").instances(3).outcome(true, r.fixes_generators, None),
        ])
    });
    vec![sweep, psi, corollary]
}

fn section_3(seed: u64, caps: Caps) -> Vec<Entry> {
    let neq = suite("product_with_free_distributive", || {
        let r = check_neq_example()?;
        let witness = (!r.reproduced()).then(|| vec![r.joinand_images[0].clone(), r.joinand_images[1].clone(), r.join_image.clone()]);
        let detail = format!("{} ∨ {} = {}", r.joinands[0], r.joinands[1], r.join);
        Ok(vec![tally("joinands_to_0_join_to_1", 1, witness).detail(detail)])
    });
    let median = suite("median_element", || {
        let med = median_element();
        Ok(vec![tally("self_dual_symmetric", 1, None).detail(med.render(&["a", "b", "c"]))])
    });
    let symmetric = suite("symmetric_factorizations", || {
        let cat = lattices_up_to(caps.max_size.min(3))?;
        let mut rng = rng_for(seed, 3, 1);
        let (mut n_sym, mut w_sym, mut n_prod, mut w_prod) = (0, None, 0, None);
        for m in targets() {
            let distributive = is_distributive_exhaustive(&m);
            for &(i, j) in &unordered_pairs(cat.len()) {
                for _ in 0..caps.samples {
                    let phis = [random_phi(&cat[i], &m, &mut rng)?, random_phi(&cat[j], &m, &mut rng)?];
                    let (e0, e1) = (rng.gen_range(0..cat[i].len()), rng.gen_range(0..cat[j].len()));
                    n_sym += 1;
                    let r = two_lattice_symmetric(&phis[0], &phis[1], e0, e1)?;
                    w_sym = w_sym.or(failure_witness(&r, &phis, MapMode::Isotone)?);
                    if distributive {
                        n_prod += 1;
                        let r = prod_times_free(&phis, &[e0, e1])?;
                        w_prod = w_prod.or(failure_witness(&r, &phis, MapMode::Isotone)?);
                    }
                }
            }
        }
        Ok(vec![
            tally("isotone", n_sym, w_sym).target("two_lattice_symmetric"),
            tally("isotone", n_prod, w_prod).target("prod_times_free"),
        ])
    });
    let canonical = suite("canonical_forms", || {
        let mut rng = rng_for(seed, 3, 2);
        let gens = ["a", "b", "c"];
        let (mut n, mut witness) = (0, None);
        for _ in 0..200 * caps.samples {
            let t = random_term(&mut rng, &gens, 3);
            let (c, _) = canonical_form(&t);
            n += 1;
            if !fl_eq(&t, &c) || canonical_form(&c).0 != c {
                witness = Some(vec![t.to_string(), c.to_string()]);
                break;
            }
        }
        Ok(vec![tally("canonical_equal_and_idempotent", n, witness)])
    });
    vec![neq, median, symmetric, canonical]
}

fn random_term(rng: &mut ChaCha8Rng, gens: &[&str], depth: usize) -> LatticeTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return LatticeTerm::gen(gens.choose(rng).expect("generators"));
    }
    let (a, b) = (random_term(rng, gens, depth - 1), random_term(rng, gens, depth - 1));
    if rng.gen_bool(0.5) {
        LatticeTerm::meet(a, b)
    } else {
        LatticeTerm::join(a, b)
    }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n)
        .filter(|s| s.count_ones() as usize <= k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn section_4(caps: Caps) -> Vec<Entry> {
    let bounds = suite("bound_equivalence", || {
        let (mut n, mut witness) = (0, None);
        for m in lattices_up_to(caps.max_size)? {
            for xs in subsets_up_to(m.len(), 3) {
                n += 1;
                if !bound_equivalence_check(&m, &xs)? {
                    witness = witness.or(Some(labels(&m, &xs)));
                }
            }
        }
        Ok(vec![tally("bounds_eq", n, witness)])
    });
    let constant = suite("complement_join_constant", || {
        let b3 = FiniteLattice::boolean(3);
        let p = boolean_minus_bounds(&b3)?;
        let mut n = 0;
        for l in lattices_up_to(caps.max_size)? {
            for h in partial_homs(&p, &l, 1_000_000)? {
                complement_join_constant(&b3, &l, &h)?;
                n += 1;
            }
        }
        Ok(vec![tally("constant", n, None)])
    });
    let probe = suite("completeness_probe", || {
        let (mut n, mut skipped, mut witness) = (0, 0, None);
        for m in lattices_up_to(caps.max_size)? {
            for xs in subsets_up_to(m.len(), 3) {
                let sup = m.join_all(xs.iter().copied()).expect("nonempty");
                if m.elements().filter(|&u| m.leq(sup, u)).count() > 3 {
                    skipped += 1;
                    continue;
                }
                n += 1;
                match theorem_complete_probe(&m, &xs) {
                    Ok(v) if v == sup => {}
                    Ok(v) => witness = witness.or(Some(vec![labels(&m, &xs).join(","), m.label(v).to_string()])),
                    Err(e) => witness = witness.or(Some(vec![labels(&m, &xs).join(","), e.to_string()])),
                }
            }
        }
        Ok(vec![tally("sup_eq", n, witness).detail(format!("{skipped} sets with more than 3 upper bounds skipped"))])
    });
    vec![bounds, constant, probe]
}

fn retract_instance(k: &FiniteLattice, cs: &[FiniteLattice], m: &FiniteLattice, rng: &mut ChaCha8Rng) -> Result<RetractInput> {
    let on_k = random_isotone_map(k, m, &[], rng);
    let (mut embeds, mut retractions, mut phis) = (Vec::new(), Vec::new(), Vec::new());
    for c in cs {
        let l = FiniteLattice::product(&[k.clone(), c.clone()])?;
        let ci = rng.gen_range(0..c.len());
        let emb = MonotoneMap::from_fn(k.clone(), l.clone(), |x| l.from_coords(&[x, ci]))?;
        let rho = MonotoneMap::from_fn(l.clone(), k.clone(), |p| l.coords(p)[0])?;
        let fixed: Vec<(usize, usize)> = k.elements().map(|x| (emb.apply(x), on_k[x])).collect();
        phis.push(MonotoneMap::new(l.clone(), m.clone(), random_isotone_map(&l, m, &fixed, rng))?);
        embeds.push(emb);
        retractions.push(rho);
    }
    Ok(RetractInput { k: k.clone(), embeds, retractions, phis })
}

fn section_5(seed: u64, caps: Caps) -> Vec<Entry> {
    let retract = suite("retract_factorization", || {
        let ks = lattices_up_to(caps.max_size.min(3))?;
        let chains = [FiniteLattice::chain(1), FiniteLattice::chain(2), FiniteLattice::chain(3)];
        let mut rng = rng_for(seed, 5, 1);
        let (mut n, mut witness) = (0, None);
        for _ in 0..50 * caps.samples {
            let k = ks.choose(&mut rng).expect("catalog");
            let cs: Vec<FiniteLattice> = (0..rng.gen_range(1..=2)).map(|_| chains.choose(&mut rng).cloned().expect("chains")).collect();
            let m = targets().choose(&mut rng).cloned().expect("targets");
            let input = retract_instance(k, &cs, &m, &mut rng)?;
            n += 1;
            let r = retract_factorization(&input)?;
            witness = witness.or(failure_witness(&r, &input.phis, MapMode::Isotone)?);
        }
        Ok(vec![tally("factorization", n, witness)])
    });
    let convexity = suite("convexity_counterexample", || {
        let r = convexity_counterexample()?;
        let holds = r.lattice_size == 16
            && r.convex_in_each == [true; 2]
            && r.retract_in_each == [true; 2]
            && r.strictly_between
            && r.middle_is_line_in_a
            && !r.convex_in_union;
        let witness = vec![r.a.clone(), r.b[0].clone(), r.b[1].clone(), r.middle.clone()];
        Ok(vec![Check::new("strictly_between").instances(1).outcome(true, holds, Some(witness))])
    });
    vec![retract, convexity]
}

fn small_join_semilattices(max_size: usize) -> Result<Vec<FiniteJoinSemilattice>> {
    let mut out: Vec<FiniteJoinSemilattice> =
        lattices_up_to(max_size.min(3))?.iter().map(FiniteJoinSemilattice::from_lattice).collect();
    let vee = Poset::from_cover_labels(&["a", "b", "t"], &[("a", "t"), ("b", "t")])?;
    out.push(FiniteJoinSemilattice::from_poset(vee)?);
    Ok(out)
}

fn section_6(seed: u64, caps: Caps) -> Vec<Entry> {
    let fp = suite("free_product_extension", || {
        let ss = small_join_semilattices(caps.max_size)?;
        let ms = [FiniteLattice::boolean(2), FiniteLattice::n5(), FiniteLattice::m3()];
        let (mut n, mut witness) = (0, None);
        for &(a, b) in &unordered_pairs(ss.len()) {
            for m in &ms {
                let fa = isotone_maps(&ss[a], m, 10_000)?;
                let fb = isotone_maps(&ss[b], m, 10_000)?;
                for ia in &fa {
                    for ib in &fb {
                        let phis = [
                            MonotoneMap::new(ss[a].clone(), m.clone(), ia.clone())?,
                            MonotoneMap::new(ss[b].clone(), m.clone(), ib.clone())?,
                        ];
                        n += 1;
                        let ext = semilat_fp_extension(&[ss[a].clone(), ss[b].clone()], &phis)?;
                        if let Verdict::Fails(x, y) = map_check_all_pairs(&ext.map, MapMode::Isotone)? {
                            witness = witness.or(Some(labels(ext.map.domain(), &[x, y])));
                        }
                        for (emb, phi) in ext.free_product.embeddings.iter().zip(&phis) {
                            if let Some(x) = (0..phi.domain().len()).find(|&x| ext.map.apply(emb.apply(x)) != phi.apply(x)) {
                                witness = witness.or(Some(vec![phi.domain().label(x).to_string()]));
                            }
                        }
                    }
                }
            }
        }
        Ok(vec![tally("isotone_and_restricts", n, witness)])
    });
    let bounded = suite("bounded_below_extension", || {
        let cat = lattices_up_to(caps.max_size.min(3))?;
        let mut rng = rng_for(seed, 6, 1);
        let (mut n, mut witness) = (0, None);
        for m in targets() {
            for &(i, j) in &unordered_pairs(cat.len()) {
                let (hi, hj) = (join_homs(&cat[i], &m, 100_000)?, join_homs(&cat[j], &m, 100_000)?);
                for _ in 0..caps.samples * 2 {
                    let phis = [
                        MonotoneMap::new(cat[i].clone(), m.clone(), hi.choose(&mut rng).cloned().expect("constant maps"))?,
                        MonotoneMap::new(cat[j].clone(), m.clone(), hj.choose(&mut rng).cloned().expect("constant maps"))?,
                    ];
                    let floor = m.meet_all(phis.iter().flat_map(|p| p.image().iter().copied())).expect("nonempty");
                    let below: Vec<usize> = m.elements().filter(|&e| m.leq(e, floor)).collect();
                    let e = *below.choose(&mut rng).expect("bottom");
                    n += 1;
                    let r = bounded_below_extension(&phis, e)?;
                    witness = witness.or(failure_witness(&r, &phis, MapMode::JoinHom)?);
                }
            }
        }
        Ok(vec![tally("join_hom", n, witness).target("projection")])
    });
    let size = suite("free_product_of_two_chains", || {
        let two = FiniteJoinSemilattice::from_lattice(&FiniteLattice::chain(2));
        let (p, _) = free_product_jsl(&[two.clone(), two])?;
        // Supports {0}, {1}, {0,1} contribute 2, 2 and 4 tuples.
        let holds = p.len() == 2 + 2 + 2 * 2;
        Ok(vec![Check::new("size").instances(1).outcome(true, holds, None).detail(format!("{} elements", p.len()))])
    });
    vec![fp, bounded, size]
}

fn section_7(seed: u64, caps: Caps) -> Vec<Entry> {
    let instance = || -> Result<_> { lprime_lattice(&nondistributive_instance()?) };
    let nondist = suite("nondistributive_example", || {
        let dp = instance()?;
        let l = dp.lattice();
        let w = nondistributive_witness(&dp)?;
        let principal = |f: usize| dp.p().maximal(dp.family(f)).len() == 1;
        let holds = w.lhs != w.rhs && principal(w.lhs) && !principal(w.rhs);
        let [p1, p2, p3, p4, p5] = w.pentagon;
        let found = pentagons(l).contains(&[p1, p2, p3, p5, p4]);
        Ok(vec![
            Check::new("inequality").instances(1).outcome(true, holds, Some(labels(l, &[w.lhs, w.rhs]))),
            Check::new("contains_n5").instances(1).outcome(true, found, Some(labels(l, &w.pentagon))),
        ])
    });
    let dov = suite("dov_membership", || {
        let dp = instance()?;
        let r = dov_membership_check(&dp)?;
        let detail = format!("|L'| = {}, {} fibres", r.lprime_size, r.fibers);
        Ok(vec![Check::new("membership").instances(r.lprime_size).outcome(true, r.passes(), None).detail(detail)])
    });
    let factor = suite("semilattice_factorization", || {
        let ls = nondistributive_instance()?;
        let mut rng = rng_for(seed, 7, 1);
        let mut ms = lattices_up_to(caps.max_size)?;
        ms.retain(|m| m.len() > 1);
        let (mut n, mut witness) = (0, None);
        for m in &ms {
            let homs: Vec<Vec<Vec<usize>>> = ls.iter().map(|l| join_homs(l, m, 100_000)).collect::<Result<_>>()?;
            for _ in 0..caps.samples * 2 {
                let phis = ls
                    .iter()
                    .zip(&homs)
                    .map(|(l, h)| MonotoneMap::new(l.clone(), m.clone(), h.choose(&mut rng).cloned().expect("constant maps")))
                    .collect::<Result<Vec<_>>>()?;
                n += 1;
                let r = theorem_semilat_factorization(&phis)?;
                witness = witness.or(failure_witness(&r, &phis, MapMode::JoinHom)?);
            }
        }
        Ok(vec![tally("join_hom", n, witness).target("projection")])
    });
    vec![nondist, dov, factor]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Report, Status};

    fn small() -> Caps {
        Caps { max_size: 3, samples: 1 }
    }

    #[test]
    fn every_section_passes_on_small_caps() {
        for s in SECTIONS {
            for e in verify_section(s, 1, small()) {
                assert_eq!(e.status, Status::Pass, "section {s}: {e:?}");
            }
        }
    }

    #[test]
    fn same_seed_same_report_apart_from_timings() {
        let render = |seed| {
            let mut entries = verify_section(3, seed, small());
            for e in &mut entries {
                e.millis = 0;
            }
            Report::new("verify", seed, entries).to_json()
        };
        assert_eq!(render(9), render(9));
    }

    #[test]
    fn unknown_section_is_an_error() {
        assert_eq!(verify_section(9, 0, small())[0].status, Status::Error);
    }
}
