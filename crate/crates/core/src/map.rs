//! Maps between finite orders and checks of their structural properties.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::free::FiniteJoinSemilattice;
use crate::lattice::FiniteLattice;
use crate::poset::{Order, Poset};

/// The kinds of finite ordered structure a map can go between.
#[derive(Clone, Debug)]
pub enum Carrier {
    Poset(Poset),
    Lattice(FiniteLattice),
    Semilattice(FiniteJoinSemilattice),
}

impl Carrier {
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        match self {
            Carrier::Lattice(l) => Some(l.meet(a, b)),
            _ => None,
        }
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        match self {
            Carrier::Lattice(l) => Some(l.join(a, b)),
            Carrier::Semilattice(s) => Some(s.join(a, b)),
            Carrier::Poset(_) => None,
        }
    }

    pub fn as_lattice(&self) -> Option<&FiniteLattice> {
        match self {
            Carrier::Lattice(l) => Some(l),
            _ => None,
        }
    }

    fn has_meet(&self) -> bool {
        matches!(self, Carrier::Lattice(_))
    }

    fn has_join(&self) -> bool {
        !matches!(self, Carrier::Poset(_))
    }

    fn order(&self) -> &dyn Order {
        match self {
            Carrier::Poset(p) => p,
            Carrier::Lattice(l) => l,
            Carrier::Semilattice(s) => s,
        }
    }
}

impl Order for Carrier {
    fn len(&self) -> usize {
        self.order().len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.order().leq(a, b)
    }
    fn label(&self, a: usize) -> &str {
        self.order().label(a)
    }
    fn index_of(&self, label: &str) -> Option<usize> {
        self.order().index_of(label)
    }
    fn upper_covers(&self, a: usize) -> &[usize] {
        self.order().upper_covers(a)
    }
}

impl From<FiniteLattice> for Carrier {
    fn from(l: FiniteLattice) -> Self {
        Carrier::Lattice(l)
    }
}

impl From<Poset> for Carrier {
    fn from(p: Poset) -> Self {
        Carrier::Poset(p)
    }
}

impl From<FiniteJoinSemilattice> for Carrier {
    fn from(s: FiniteJoinSemilattice) -> Self {
        Carrier::Semilattice(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapMode {
    Isotone,
    MeetHom,
    JoinHom,
    LatticeHom,
    Embedding,
}

impl MapMode {
    pub const ALL: [MapMode; 5] =
        [MapMode::Isotone, MapMode::MeetHom, MapMode::JoinHom, MapMode::LatticeHom, MapMode::Embedding];

    fn bit(self) -> u8 {
        match self {
            MapMode::Isotone => 1,
            MapMode::MeetHom => 2,
            MapMode::JoinHom => 4,
            MapMode::LatticeHom => 8,
            MapMode::Embedding => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MapMode::Isotone => "isotone",
            MapMode::MeetHom => "meet_hom",
            MapMode::JoinHom => "join_hom",
            MapMode::LatticeHom => "lattice_hom",
            MapMode::Embedding => "embedding",
        }
    }
}

/// Outcome of a property check; a failure names a pair of domain elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(usize, usize),
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn witness(self) -> Option<(usize, usize)> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(x, y) => Some((x, y)),
        }
    }
}

/// A total function between finite orders. Property flags are only ever set
/// by [`MonotoneMap::certify`], after the corresponding check has passed.
#[derive(Clone)]
pub struct MonotoneMap {
    domain: Carrier,
    codomain: Carrier,
    image: Vec<usize>,
    certified: u8,
}

impl MonotoneMap {
    pub fn new(domain: impl Into<Carrier>, codomain: impl Into<Carrier>, image: Vec<usize>) -> Result<Self> {
        let (domain, codomain) = (domain.into(), codomain.into());
        if image.len() != domain.len() {
            return Err(Error::Mismatch(format!(
                "map has {} values for a domain of {} elements",
                image.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::Mismatch(format!("image index {bad} outside codomain")));
        }
        Ok(MonotoneMap { domain, codomain, image, certified: 0 })
    }

    pub fn from_fn(
        domain: impl Into<Carrier>,
        codomain: impl Into<Carrier>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let domain = domain.into();
        let image = (0..domain.len()).map(f).collect();
        MonotoneMap::new(domain, codomain, image)
    }

    /// Builds a map from `(source, target)` label pairs covering the whole domain.
    pub fn from_labels(
        domain: impl Into<Carrier>,
        codomain: impl Into<Carrier>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let (domain, codomain) = (domain.into(), codomain.into());
        let mut image = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            image[domain.lookup(a)?] = codomain.lookup(b)?;
        }
        if let Some(missing) = image.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Mismatch(format!("no image for {}", domain.label(missing))));
        }
        MonotoneMap::new(domain, codomain, image)
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        MonotoneMap::from_fn(l.clone(), l.clone(), |x| x).expect("identity")
    }

    pub fn constant(domain: impl Into<Carrier>, codomain: impl Into<Carrier>, value: usize) -> Result<Self> {
        MonotoneMap::from_fn(domain, codomain, |_| value)
    }

    pub fn domain(&self) -> &Carrier {
        &self.domain
    }

    pub fn codomain(&self) -> &Carrier {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn check(&self, mode: MapMode) -> Result<Verdict> {
        map_check(self, mode)
    }

    /// Runs the check for `mode` and, on success, records it on the map.
    pub fn certify(mut self, mode: MapMode) -> Result<std::result::Result<Self, (usize, usize)>> {
        match map_check(&self, mode)? {
            Verdict::Holds => {
                self.certified |= mode.bit();
                if mode == MapMode::LatticeHom || mode == MapMode::Embedding {
                    self.certified |= MapMode::MeetHom.bit() | MapMode::JoinHom.bit() | MapMode::Isotone.bit();
                }
                if mode == MapMode::Embedding {
                    self.certified |= MapMode::LatticeHom.bit();
                }
                if matches!(mode, MapMode::MeetHom | MapMode::JoinHom) {
                    self.certified |= MapMode::Isotone.bit();
                }
                Ok(Ok(self))
            }
            Verdict::Fails(x, y) => Ok(Err((x, y))),
        }
    }

    pub fn is_certified(&self, mode: MapMode) -> bool {
        self.certified & mode.bit() != 0
    }

    /// `self` after `first`: `x ↦ self(first(x))`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.codomain.len() != self.domain.len() {
            return Err(Error::Mismatch("composition of incompatible maps".into()));
        }
        MonotoneMap::from_fn(first.domain.clone(), self.codomain.clone(), |x| self.apply(first.apply(x)))
    }

    /// `(source label, target label)` pairs in domain order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        (0..self.domain.len())
            .map(|x| (self.domain.label(x).to_string(), self.codomain.label(self.apply(x)).to_string()))
            .collect()
    }
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
            && self.domain.labels() == other.domain.labels()
            && self.codomain.labels() == other.codomain.labels()
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap")
            .field("pairs", &self.label_pairs().into_iter().take(16).collect::<Vec<_>>())
            .field("certified", &self.certified)
            .finish()
    }
}

fn require(cond: bool, mode: MapMode) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{} check needs the operation on both sides", mode.name())))
    }
}

fn check_isotone_covers(m: &MonotoneMap) -> Verdict {
    let (d, c) = (&m.domain, &m.codomain);
    for x in 0..d.len() {
        for &y in d.upper_covers(x) {
            if !c.leq(m.apply(x), m.apply(y)) {
                return Verdict::Fails(x, y);
            }
        }
    }
    Verdict::Holds
}

fn check_pairs(m: &MonotoneMap, ok: impl Fn(usize, usize) -> bool) -> Verdict {
    let n = m.domain.len();
    for x in 0..n {
        for y in 0..n {
            if !ok(x, y) {
                return Verdict::Fails(x, y);
            }
        }
    }
    Verdict::Holds
}

/// Checks `mode` on `m`. Isotonicity is checked on covering pairs, which by
/// transitivity decides it for all pairs; the homomorphism modes sweep all pairs.
pub fn map_check(m: &MonotoneMap, mode: MapMode) -> Result<Verdict> {
    let (d, c) = (&m.domain, &m.codomain);
    let meet_ok = |x: usize, y: usize| {
        m.apply(d.meet(x, y).unwrap()) == c.meet(m.apply(x), m.apply(y)).unwrap()
    };
    let join_ok = |x: usize, y: usize| {
        m.apply(d.join(x, y).unwrap()) == c.join(m.apply(x), m.apply(y)).unwrap()
    };
    Ok(match mode {
        MapMode::Isotone => check_isotone_covers(m),
        MapMode::MeetHom => {
            require(d.has_meet() && c.has_meet(), mode)?;
            check_pairs(m, meet_ok)
        }
        MapMode::JoinHom => {
            require(d.has_join() && c.has_join(), mode)?;
            check_pairs(m, join_ok)
        }
        MapMode::LatticeHom => {
            require(d.has_meet() && c.has_meet() && d.has_join() && c.has_join(), mode)?;
            check_pairs(m, |x, y| meet_ok(x, y) && join_ok(x, y))
        }
        MapMode::Embedding => match map_check(m, MapMode::LatticeHom)? {
            Verdict::Holds => check_pairs(m, |x, y| x == y || m.apply(x) != m.apply(y)),
            fail => fail,
        },
    })
}

/// Like [`map_check`] but tests isotonicity on every comparable pair rather
/// than on covers only.
pub fn map_check_all_pairs(m: &MonotoneMap, mode: MapMode) -> Result<Verdict> {
    if mode != MapMode::Isotone {
        return map_check(m, mode);
    }
    let (d, c) = (&m.domain, &m.codomain);
    Ok(check_pairs(m, |x, y| !d.leq(x, y) || c.leq(m.apply(x), m.apply(y))))
}

/// Extends an isotone map from a subposet `P` of `q` into a finite lattice `M`
/// to all of `q`, sending each element to the join of the images of the
/// `P`-elements below it (the bottom of `M` when there are none).
pub fn extend_isotone_complete(phi: &MonotoneMap, q: &Poset) -> Result<MonotoneMap> {
    let m = phi
        .codomain()
        .as_lattice()
        .ok_or_else(|| Error::Mismatch("codomain must be a finite lattice".into()))?
        .clone();
    let p = phi.domain();
    let embed: Vec<usize> = (0..p.len()).map(|i| q.lookup(p.label(i))).collect::<Result<_>>()?;
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.leq(a, b) != q.leq(embed[a], embed[b]) {
                return Err(Error::Mismatch(format!(
                    "order on {} and {} differs from the enclosing order",
                    p.label(a),
                    p.label(b)
                )));
            }
        }
    }
    if let Verdict::Fails(x, y) = map_check(phi, MapMode::Isotone)? {
        return Err(Error::NotIsotoneInput(p.label(x).into(), p.label(y).into()));
    }
    MonotoneMap::from_fn(q.clone(), m.clone(), |x| {
        m.join_all((0..p.len()).filter(|&a| q.leq(embed[a], x)).map(|a| phi.apply(a)))
            .unwrap_or(m.bottom())
    })
}

fn order_by_rank<O: Order + ?Sized>(o: &O) -> Vec<usize> {
    let n = o.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| ((0..n).filter(|&y| o.leq(y, x)).count(), x));
    order
}

/// All isotone maps `dom → cod` as image vectors, in lexicographic order of
/// the values assigned along a linear extension of `dom`. Stops with
/// `SizeCapExceeded` once more than `cap` maps are found.
pub fn isotone_maps<D: Order + ?Sized, C: Order + ?Sized>(dom: &D, cod: &C, cap: usize) -> Result<Vec<Vec<usize>>> {
    let order = order_by_rank(dom);
    let mut out = Vec::new();
    let mut image = vec![0usize; dom.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec<D: Order + ?Sized, C: Order + ?Sized>(
        dom: &D,
        cod: &C,
        order: &[usize],
        k: usize,
        image: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= cap {
                return Err(Error::SizeCapExceeded { size: out.len() + 1, cap });
            }
            out.push(image.clone());
            return Ok(());
        }
        let x = order[k];
        for v in 0..cod.len() {
            let ok = order[..k]
                .iter()
                .all(|&y| (!dom.leq(y, x) || cod.leq(image[y], v)) && (!dom.leq(x, y) || cod.leq(v, image[y])));
            if ok {
                image[x] = v;
                rec(dom, cod, order, k + 1, image, out, cap)?;
            }
        }
        Ok(())
    }
    rec(dom, cod, &order, 0, &mut image, &mut out, cap)?;
    Ok(out)
}

/// All join-homomorphisms between two finite lattices.
pub fn join_homs(dom: &FiniteLattice, cod: &FiniteLattice, cap: usize) -> Result<Vec<Vec<usize>>> {
    Ok(isotone_maps(dom, cod, cap)?
        .into_iter()
        .filter(|img| {
            dom.elements()
                .all(|x| dom.elements().all(|y| img[dom.join(x, y)] == cod.join(img[x], img[y])))
        })
        .collect())
}

/// A random isotone map `dom → cod` honouring the `(element, value)` pairs in
/// `fixed`, which must themselves be order-consistent. Each remaining element,
/// taken along a linear extension, gets a uniformly chosen value from the
/// interval allowed by the values already placed; that interval is never empty
/// because it contains the join of the values placed below.
pub fn random_isotone_map<D: Order + ?Sized, R: Rng + ?Sized>(
    dom: &D,
    cod: &FiniteLattice,
    fixed: &[(usize, usize)],
    rng: &mut R,
) -> Vec<usize> {
    let n = dom.len();
    let mut image = vec![usize::MAX; n];
    for &(x, v) in fixed {
        image[x] = v;
    }
    for x in order_by_rank(dom) {
        if image[x] != usize::MAX {
            continue;
        }
        let lower = cod
            .join_all((0..n).filter(|&y| image[y] != usize::MAX && dom.leq(y, x)).map(|y| image[y]))
            .unwrap_or(cod.bottom());
        let upper = cod
            .meet_all((0..n).filter(|&y| image[y] != usize::MAX && dom.leq(x, y)).map(|y| image[y]))
            .unwrap_or(cod.top());
        let choices: Vec<usize> = cod.elements().filter(|&v| cod.leq(lower, v) && cod.leq(v, upper)).collect();
        image[x] = choices[rng.gen_range(0..choices.len())];
    }
    image
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn square() -> FiniteLattice {
        FiniteLattice::boolean(2)
    }

    #[test]
    fn identity_and_constants_are_homs() {
        for l in [FiniteLattice::n5(), FiniteLattice::m3(), square()] {
            assert!(MonotoneMap::identity(&l).check(MapMode::LatticeHom).unwrap().holds());
            assert!(MonotoneMap::identity(&l).check(MapMode::Embedding).unwrap().holds());
            let c = MonotoneMap::constant(l.clone(), l.clone(), l.top()).unwrap();
            assert!(c.check(MapMode::LatticeHom).unwrap().holds());
            assert!(!c.check(MapMode::Embedding).unwrap().holds());
        }
    }

    #[test]
    fn top_indicator_is_not_join_hom() {
        let sq = square();
        let two = FiniteLattice::chain(2);
        let m = MonotoneMap::from_fn(sq.clone(), two, |x| usize::from(x == sq.top())).unwrap();
        assert!(m.check(MapMode::Isotone).unwrap().holds());
        assert!(m.check(MapMode::MeetHom).unwrap().holds());
        let (x, y) = m.check(MapMode::JoinHom).unwrap().witness().unwrap();
        assert_eq!((sq.label(x), sq.label(y)), ("(0,1)", "(1,0)"));
    }

    #[test]
    fn certify_sets_flags_only_on_success() {
        let sq = square();
        let m = MonotoneMap::identity(&sq).certify(MapMode::Embedding).unwrap().unwrap();
        assert!(m.is_certified(MapMode::Isotone) && m.is_certified(MapMode::LatticeHom));
        let bad = MonotoneMap::from_fn(sq.clone(), sq.clone(), |x| sq.top() - x).unwrap();
        assert!(bad.certify(MapMode::Isotone).unwrap().is_err());
    }

    #[test]
    fn poset_domain_rejects_hom_modes() {
        let p = Poset::antichain(&["a", "b"]);
        let m = MonotoneMap::constant(p, FiniteLattice::chain(2), 0).unwrap();
        assert!(m.check(MapMode::JoinHom).is_err());
        assert!(m.check(MapMode::Isotone).unwrap().holds());
    }

    #[test]
    fn extension_examples() {
        let m3 = FiniteLattice::m3();
        let q = Poset::from_cover_labels(&["a", "b"], &[("a", "b")]).unwrap();
        let p = q.restrict(&[0]);
        let phi = MonotoneMap::from_labels(p, m3.clone(), &[("a", "b")]).unwrap();
        let ext = extend_isotone_complete(&phi, &q).unwrap();
        assert_eq!(m3.label(ext.apply(1)), "b");

        // Element with nothing below from P goes to the bottom.
        let q = Poset::from_cover_labels(&["z", "a"], &[]).unwrap();
        let phi = MonotoneMap::from_labels(q.restrict(&[1]), m3.clone(), &[("a", "c")]).unwrap();
        let ext = extend_isotone_complete(&phi, &q).unwrap();
        assert_eq!(ext.apply(0), m3.bottom());

        let q = Poset::from_cover_labels(&["a", "b", "t"], &[("a", "t"), ("b", "t")]).unwrap();
        let phi = MonotoneMap::from_labels(q.restrict(&[0, 1]), m3.clone(), &[("a", "a"), ("b", "b")]).unwrap();
        let ext = extend_isotone_complete(&phi, &q).unwrap();
        assert_eq!(m3.label(ext.apply(2)), "1");
        assert!(ext.check(MapMode::Isotone).unwrap().holds());
    }

    #[test]
    fn extension_rejects_non_isotone_input() {
        let two = FiniteLattice::chain(2);
        let q = Poset::chain(&["a", "b"]);
        let phi = MonotoneMap::from_labels(q.clone(), two, &[("a", "1"), ("b", "0")]).unwrap();
        assert!(matches!(extend_isotone_complete(&phi, &q), Err(Error::NotIsotoneInput(..))));
    }

    #[test]
    fn enumeration_counts() {
        // Isotone self-maps of the 2-chain: 00, 01, 11.
        assert_eq!(isotone_maps(&FiniteLattice::chain(2), &FiniteLattice::chain(2), 100).unwrap().len(), 3);
        // Isotone maps 2-chain -> 3-chain: pairs a <= b in a 3-chain = 6.
        assert_eq!(isotone_maps(&FiniteLattice::chain(2), &FiniteLattice::chain(3), 100).unwrap().len(), 6);
        assert!(isotone_maps(&FiniteLattice::chain(3), &FiniteLattice::chain(3), 2).is_err());
        let homs = join_homs(&square(), &FiniteLattice::chain(2), 100).unwrap();
        assert!(homs.iter().all(|h| h[0] <= h[3]));
        assert!(!homs.contains(&vec![0, 0, 0, 1]));
    }

    #[test]
    fn random_isotone_maps_are_isotone() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let dom = FiniteLattice::boolean(3);
        let cod = FiniteLattice::n5();
        for _ in 0..50 {
            let img = random_isotone_map(&dom, &cod, &[(3, 2)], &mut rng);
            assert_eq!(img[3], 2);
            let m = MonotoneMap::new(dom.clone(), cod.clone(), img).unwrap();
            assert!(map_check_all_pairs(&m, MapMode::Isotone).unwrap().holds());
        }
    }
}
