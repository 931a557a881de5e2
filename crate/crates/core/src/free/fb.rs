//! Free Boolean lattices as sets of minterms.

use super::term::{BooleanTerm, LatticeTerm};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

pub const FB_MAX_GENERATORS: usize = 4;

/// An element of the free Boolean lattice on `n ≤ 4` generators. Bit `m` of
/// `bits` is set when the minterm `m` (bit `k` of `m` = value of generator `k`)
/// belongs to the element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FBElement {
    n: u8,
    bits: u16,
}

fn full_mask(n: usize) -> u16 {
    if n == FB_MAX_GENERATORS {
        u16::MAX
    } else {
        (1u16 << (1 << n)) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > FB_MAX_GENERATORS {
        Err(Error::SizeCapExceeded { size: n, cap: FB_MAX_GENERATORS })
    } else {
        Ok(())
    }
}

impl FBElement {
    pub fn new(n: usize, bits: u16) -> Result<Self> {
        check_n(n)?;
        Ok(FBElement { n: n as u8, bits: bits & full_mask(n) })
    }

    pub fn zero(n: usize) -> Result<Self> {
        FBElement::new(n, 0)
    }

    pub fn one(n: usize) -> Result<Self> {
        FBElement::new(n, u16::MAX)
    }

    pub fn generator(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        let bits = (0..1usize << n).filter(|m| m >> k & 1 == 1).fold(0u16, |b, m| b | 1 << m);
        Ok(FBElement { n: n as u8, bits })
    }

    pub fn generators(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn minterms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..1usize << self.n).filter(|m| self.bits >> m & 1 == 1)
    }

    /// Label listing the minterms, e.g. `{0,3}`.
    pub fn label(&self) -> String {
        let ms: Vec<String> = self.minterms().map(|m| m.to_string()).collect();
        format!("{{{}}}", ms.join(","))
    }
}

pub fn fb_leq(a: FBElement, b: FBElement) -> bool {
    a.bits & !b.bits == 0
}

pub fn fb_meet(a: FBElement, b: FBElement) -> FBElement {
    FBElement { n: a.n, bits: a.bits & b.bits }
}

pub fn fb_join(a: FBElement, b: FBElement) -> FBElement {
    FBElement { n: a.n, bits: a.bits | b.bits }
}

pub fn fb_complement(a: FBElement) -> FBElement {
    FBElement { n: a.n, bits: !a.bits & full_mask(a.n as usize) }
}

fn gen_index(g: &str, gens: &[&str]) -> Result<usize> {
    gens.iter().position(|x| *x == g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))
}

pub fn fb_from_term(t: &BooleanTerm, gens: &[&str]) -> Result<FBElement> {
    let n = gens.len();
    check_n(n)?;
    Ok(match t {
        BooleanTerm::Gen(g) => FBElement::generator(n, gen_index(g, gens)?)?,
        BooleanTerm::Not(x) => fb_complement(fb_from_term(x, gens)?),
        BooleanTerm::And(xs) => xs.iter().try_fold(FBElement::one(n)?, |acc, x| Ok::<_, Error>(fb_meet(acc, fb_from_term(x, gens)?)))?,
        BooleanTerm::Or(xs) => xs.iter().try_fold(FBElement::zero(n)?, |acc, x| Ok::<_, Error>(fb_join(acc, fb_from_term(x, gens)?)))?,
    })
}

pub fn fb_from_lattice_term(t: &LatticeTerm, gens: &[&str]) -> Result<FBElement> {
    let n = gens.len();
    check_n(n)?;
    Ok(match t {
        LatticeTerm::Gen(g) => FBElement::generator(n, gen_index(g, gens)?)?,
        LatticeTerm::Meet(xs) => xs.iter().try_fold(FBElement::one(n)?, |acc, x| Ok::<_, Error>(fb_meet(acc, fb_from_lattice_term(x, gens)?)))?,
        LatticeTerm::Join(xs) => xs.iter().try_fold(FBElement::zero(n)?, |acc, x| Ok::<_, Error>(fb_join(acc, fb_from_lattice_term(x, gens)?)))?,
    })
}

/// All `2^(2^n)` elements in increasing order of their minterm bitmask.
pub fn fb_enumerate(n: usize) -> Result<Vec<FBElement>> {
    check_n(n)?;
    let top = full_mask(n) as u32;
    Ok((0..=top).map(|b| FBElement { n: n as u8, bits: b as u16 }).collect())
}

/// The free Boolean lattice on `n ≤ 3` generators as a finite lattice labelled
/// by minterm sets (with an optional label prefix).
pub fn fb_lattice(n: usize, prefix: &str) -> Result<FiniteLattice> {
    if n > 3 {
        return Err(Error::SizeCapExceeded { size: n, cap: 3 });
    }
    let elems = fb_enumerate(n)?;
    let labels = elems.iter().map(|e| format!("{prefix}{}", e.label())).collect();
    Ok(FiniteLattice::from_fns(
        labels,
        |a, b| fb_leq(elems[a], elems[b]),
        |a, b| (elems[a].bits & elems[b].bits) as usize,
        |a, b| (elems[a].bits | elems[b].bits) as usize,
    ))
}

/// A conjunction of literals: generator `k` appears when bit `k` of `mask` is
/// set, positively when bit `k` of `values` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub mask: u8,
    pub values: u8,
}

impl Cube {
    pub fn minterms(self, n: usize) -> impl Iterator<Item = usize> {
        (0..1usize << n).filter(move |&m| (m as u8) & self.mask == self.values)
    }

    pub fn as_element(self, n: usize) -> FBElement {
        let bits = self.minterms(n).fold(0u16, |b, m| b | 1 << m);
        FBElement { n: n as u8, bits }
    }

    pub fn literals(self, n: usize) -> impl Iterator<Item = (usize, bool)> {
        (0..n).filter(move |k| self.mask >> k & 1 == 1).map(move |k| (k, self.values >> k & 1 == 1))
    }

    pub fn is_positive(self) -> bool {
        self.values == self.mask
    }
}

/// The prime implicants of `a`, found by dropping literals from minterm cubes.
pub fn prime_implicants(a: FBElement) -> Vec<Cube> {
    let n = a.n as usize;
    let full = ((1u16 << n) - 1) as u8;
    let implies = |c: Cube| fb_leq(c.as_element(n), a);
    let mut level: Vec<Cube> = a.minterms().map(|m| Cube { mask: full, values: m as u8 }).collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for &c in &level {
            let mut prime = true;
            for k in 0..n {
                if c.mask >> k & 1 == 1 {
                    let d = Cube { mask: c.mask & !(1 << k), values: c.values & !(1 << k) };
                    if implies(d) {
                        prime = false;
                        next.push(d);
                    }
                }
            }
            if prime {
                primes.push(c);
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::term::parse_boolean_term;

    #[test]
    fn sizes_and_laws() {
        assert_eq!(fb_enumerate(2).unwrap().len(), 16);
        assert_eq!(fb_enumerate(0).unwrap().len(), 2);
        assert!(fb_enumerate(5).is_err());
        let g = ["a", "b"];
        let x = fb_from_term(&parse_boolean_term("a ∧ ~a", &g).unwrap(), &g).unwrap();
        assert_eq!(x, FBElement::zero(2).unwrap());
        for e in fb_enumerate(2).unwrap() {
            assert_eq!(fb_complement(fb_complement(e)), e);
            assert_eq!(fb_join(e, fb_complement(e)), FBElement::one(2).unwrap());
        }
    }

    #[test]
    fn lattice_is_boolean() {
        let l = fb_lattice(2, "").unwrap();
        assert_eq!(l.len(), 16);
        assert!(crate::variety::is_distributive_exhaustive(&l));
    }

    #[test]
    fn prime_implicants_match_brute_force() {
        // Oracle: a cube is a prime implicant iff it implies `a` and no cube
        // obtained by dropping a literal does; check against all 3^n cubes.
        for n in 1..=3usize {
            let full = ((1u16 << n) - 1) as u8;
            let mut cubes = Vec::new();
            for mask in 0..=full {
                for values in 0..=full {
                    if values & !mask == 0 {
                        cubes.push(Cube { mask, values });
                    }
                }
            }
            for a in fb_enumerate(n).unwrap() {
                let implicants: Vec<Cube> = cubes.iter().copied().filter(|c| fb_leq(c.as_element(n), a)).collect();
                let mut expected: Vec<Cube> = implicants
                    .iter()
                    .copied()
                    .filter(|c| {
                        !implicants.iter().any(|d| d != c && fb_leq(c.as_element(n), d.as_element(n)))
                    })
                    .collect();
                expected.sort_unstable();
                assert_eq!(prime_implicants(a), expected, "{}", a.label());
            }
        }
    }
}
