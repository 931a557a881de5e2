//! Symmetric two-lattice factorization, its iteration over a finite list, and
//! the factorization through `∏ L_i × FD(I)`.

use crate::error::{Error, Result};
use crate::free::{fd_dual, fd_from_term, fd_lattice, parse_term, FDElement};
use crate::lattice::FiniteLattice;
use crate::map::{MapMode, MonotoneMap};
use crate::poset::Order;
use crate::variety::variety_check;

use super::{common_codomain, lattice_domain, FactorizationResult};

/// Factors `φ0 : L0 → M` and `φ1 : L1 → M` through `L0 × L1 × 2 × 2` with
/// injections `x ↦ (x,e1,1,0)` and `y ↦ (e0,y,0,1)`. The projection sends
/// `(x,y,1,0) ↦ φ0(x)`, `(x,y,0,1) ↦ φ1(y)`, `(x,y,0,0) ↦ φ0(x)∧φ1(y)` and
/// `(x,y,1,1) ↦ φ0(x)∨φ1(y)`.
pub fn two_lattice_symmetric(phi0: &MonotoneMap, phi1: &MonotoneMap, e0: usize, e1: usize) -> Result<FactorizationResult> {
    let phis = [phi0.clone(), phi1.clone()];
    let m = common_codomain(&phis)?;
    let (l0, l1) = (lattice_domain(phi0)?.clone(), lattice_domain(phi1)?.clone());
    if e0 >= l0.len() || e1 >= l1.len() {
        return Err(Error::Mismatch("base element outside its lattice".into()));
    }
    let two = FiniteLattice::chain(2);
    let inter = FiniteLattice::product(&[l0.clone(), l1.clone(), two.clone(), two])?;
    let inj0 = MonotoneMap::from_fn(l0, inter.clone(), |x| inter.from_coords(&[x, e1, 1, 0]))?;
    let inj1 = MonotoneMap::from_fn(l1, inter.clone(), |y| inter.from_coords(&[e0, y, 0, 1]))?;
    let projection = MonotoneMap::from_fn(inter.clone(), m.clone(), |p| {
        let c = inter.coords(p);
        let (a, b) = (phi0.apply(c[0]), phi1.apply(c[1]));
        match (c[2], c[3]) {
            (1, 0) => a,
            (0, 1) => b,
            (0, 0) => m.meet(a, b),
            _ => m.join(a, b),
        }
    })?;
    FactorizationResult { intermediate: inter, injections: vec![inj0, inj1], projection }.verified(&phis, MapMode::Isotone)
}

/// Folds [`two_lattice_symmetric`] along the list: `L'_1 = L_0` and
/// `L'_{j+1} = L'_j × L_j × 2 × 2`. `e_choices[j-1]` gives the base points
/// `(e0 ∈ L'_j, e1 ∈ L_j)` used at step `j`.
pub fn iterated_factorization(phis: &[MonotoneMap], e_choices: &[(usize, usize)]) -> Result<FactorizationResult> {
    common_codomain(phis)?;
    if e_choices.len() + 1 != phis.len() {
        return Err(Error::Mismatch(format!("{} base choices for {} maps", e_choices.len(), phis.len())));
    }
    let l0 = lattice_domain(&phis[0])?.clone();
    let mut inter = l0.clone();
    let mut injections = vec![MonotoneMap::identity(&l0)];
    let mut projection = phis[0].clone();
    for (phi, &(e0, e1)) in phis[1..].iter().zip(e_choices) {
        let step = two_lattice_symmetric(&projection, phi, e0, e1)?;
        injections = injections
            .iter()
            .map(|inj| step.injections[0].after(inj))
            .collect::<Result<Vec<_>>>()?;
        injections.push(step.injections[1].clone());
        inter = step.intermediate;
        projection = step.projection;
    }
    FactorizationResult { intermediate: inter, injections, projection }.verified(phis, MapMode::Isotone)
}

/// Factors through `∏ L_i × FD(I)` for a distributive `M`: `x ∈ L_i` goes to
/// the tuple with `x` at `i` and `base[j]` elsewhere, paired with the
/// generator `g_i`; `(x, w)` is sent to `w` evaluated at `(φ_i(x_i))`.
pub fn prod_times_free(phis: &[MonotoneMap], base: &[usize]) -> Result<FactorizationResult> {
    let m = common_codomain(phis)?;
    if !variety_check(&m, usize::MAX)?.distributive {
        return Err(Error::NotDistributiveCodomain);
    }
    let n = phis.len();
    if base.len() != n {
        return Err(Error::Mismatch(format!("{} base elements for {n} maps", base.len())));
    }
    let ls: Vec<FiniteLattice> = phis.iter().map(|p| lattice_domain(p).cloned()).collect::<Result<_>>()?;
    if base.iter().zip(&ls).any(|(&b, l)| b >= l.len()) {
        return Err(Error::Mismatch("base element outside its lattice".into()));
    }
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let gens: Vec<&str> = names.iter().map(String::as_str).collect();
    let (fd, elems) = fd_lattice(&gens)?;
    let prod = FiniteLattice::product(&ls)?;
    let inter = FiniteLattice::product(&[prod.clone(), fd.clone()])?;
    let injections = (0..n)
        .map(|i| {
            let g = elems.iter().position(|w| *w == FDElement::generator(i)).expect("generator");
            MonotoneMap::from_fn(ls[i].clone(), inter.clone(), |x| {
                let mut c = base.to_vec();
                c[i] = x;
                inter.from_coords(&[prod.from_coords(&c), g])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let projection = MonotoneMap::from_fn(inter.clone(), m.clone(), |p| {
        let c = inter.coords(p);
        let x = prod.coords(c[0]);
        let meets = elems[c[1]].members().iter().map(|&s| {
            m.meet_all((0..n).filter(|k| s >> k & 1 == 1).map(|k| phis[k].apply(x[k]))).expect("nonempty")
        });
        m.join_all(meets).expect("nonempty")
    })?;
    FactorizationResult { intermediate: inter, injections, projection }.verified(phis, MapMode::Isotone)
}

/// The two joinands, their join, and their images under the projection of
/// [`prod_times_free`] for `L_0 = L_1 = M = 2` with identity maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeqReport {
    pub joinands: [String; 2],
    pub join: String,
    pub joinand_images: [String; 2],
    pub join_image: String,
}

impl NeqReport {
    /// Joinands go to `0` and their join to `1`.
    pub fn reproduced(&self) -> bool {
        self.joinand_images == ["0", "0"] && self.join_image == "1"
    }
}

pub fn check_neq_example() -> Result<NeqReport> {
    let two = FiniteLattice::chain(2);
    let id = MonotoneMap::identity(&two);
    let r = prod_times_free(&[id.clone(), id], &[0, 0])?;
    let l = &r.intermediate;
    let left = l.lookup("((0,1),g0∧g1)")?;
    let right = l.lookup("((1,0),g0∧g1)")?;
    let join = l.join(left, right);
    let img = |x: usize| two.label(r.projection.apply(x)).to_string();
    Ok(NeqReport {
        joinands: [l.label(left).to_string(), l.label(right).to_string()],
        join: l.label(join).to_string(),
        joinand_images: [img(left), img(right)],
        join_image: img(join),
    })
}

/// The self-dual median `(a∧b)∨(b∧c)∨(c∧a)` of the free distributive lattice on
/// three generators. Panics if either defining expression, a generator
/// permutation or the dual anti-automorphism gives a different element.
pub fn median_element() -> FDElement {
    let g = ["a", "b", "c"];
    let as_fd = |s: &str| fd_from_term(&parse_term(s, &g).expect("term"), &g).expect("generators");
    let med = as_fd("(a ∧ b) ∨ (b ∧ c) ∨ (c ∧ a)");
    assert_eq!(med, as_fd("(a ∨ b) ∧ (b ∨ c) ∧ (c ∨ a)"), "the two median expressions differ");
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        let moved = FDElement::from_sets(med.members().iter().map(|&s| {
            (0..3).filter(|&k| s >> k & 1 == 1).fold(0u32, |acc, k| acc | 1 << p[k])
        }));
        assert_eq!(moved, med, "median not fixed by permutation {p:?}");
    }
    assert_eq!(fd_dual(&med, 3), med, "median not fixed by duality");
    for k in 0..3 {
        assert_ne!(med, FDElement::generator(k));
    }
    med
}
