//! Extension constructions: each builds an intermediate lattice through which
//! given isotone maps factor, and checks the factorization before returning it.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::map::{map_check, map_check_all_pairs, MapMode, MonotoneMap, Verdict};
use crate::poset::Order;
use crate::text::{render_lattice, render_map};

pub mod boolean;
pub mod retract;
pub mod sea_level;
pub mod semilattice;
pub mod symmetric;

pub use boolean::{bound_equivalence_check, boolean_isotone_phi, theorem_complete_probe};
pub use retract::{convexity_counterexample, lemma_cvx_retr_check, retract_factorization, ConvexityReport, RetractInput};
pub use sea_level::{
    corollary_free_distributive, lemma_extension, main_factorization, sea_level_psi, sea_level_psi_in, CorollaryReport,
    LemmaExtension,
};
pub use semilattice::{bounded_below_extension, semilat_fp_extension, SemilatticeExtension};
pub use symmetric::{
    check_neq_example, iterated_factorization, median_element, prod_times_free, two_lattice_symmetric, NeqReport,
};

/// Maps `φ_i : L_i → M` factored as `L_i → intermediate → M`.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub intermediate: FiniteLattice,
    pub injections: Vec<MonotoneMap>,
    pub projection: MonotoneMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationFailure {
    Injection { index: usize, mode: MapMode, witness: (String, String) },
    Projection { mode: MapMode, witness: (String, String) },
    Composite { index: usize, element: String },
}

impl fmt::Display for FactorizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizationFailure::Injection { index, mode, witness: (a, b) } => {
                write!(f, "injection {index} is not {} at ({a}, {b})", mode.name())
            }
            FactorizationFailure::Projection { mode, witness: (a, b) } => {
                write!(f, "projection is not {} at ({a}, {b})", mode.name())
            }
            FactorizationFailure::Composite { index, element } => {
                write!(f, "projection after injection {index} differs from the given map at {element}")
            }
        }
    }
}

impl FactorizationResult {
    /// Checks that every injection is a lattice embedding, that the projection
    /// has `projection_mode`, and that projection ∘ injection_i = φ_i.
    /// With `exhaustive` set, isotonicity is tested on all pairs instead of covers.
    pub fn check(
        &self,
        phis: &[MonotoneMap],
        projection_mode: MapMode,
        exhaustive: bool,
    ) -> Result<Option<FactorizationFailure>> {
        if phis.len() != self.injections.len() {
            return Err(Error::Mismatch(format!("{} maps for {} injections", phis.len(), self.injections.len())));
        }
        let run = |m: &MonotoneMap, mode| if exhaustive { map_check_all_pairs(m, mode) } else { map_check(m, mode) };
        for (index, inj) in self.injections.iter().enumerate() {
            if let Verdict::Fails(a, b) = run(inj, MapMode::Embedding)? {
                let d = inj.domain();
                let witness = (d.label(a).to_string(), d.label(b).to_string());
                return Ok(Some(FactorizationFailure::Injection { index, mode: MapMode::Embedding, witness }));
            }
        }
        if let Verdict::Fails(a, b) = run(&self.projection, projection_mode)? {
            let l = &self.intermediate;
            let witness = (l.label(a).to_string(), l.label(b).to_string());
            return Ok(Some(FactorizationFailure::Projection { mode: projection_mode, witness }));
        }
        for (index, (inj, phi)) in self.injections.iter().zip(phis).enumerate() {
            for x in 0..phi.domain().len() {
                if self.projection.apply(inj.apply(x)) != phi.apply(x) {
                    let element = phi.domain().label(x).to_string();
                    return Ok(Some(FactorizationFailure::Composite { index, element }));
                }
            }
        }
        Ok(None)
    }

    /// Runs [`FactorizationResult::check`] and records the verified properties
    /// on the maps; a failure means a construction is wrong.
    pub(crate) fn verified(mut self, phis: &[MonotoneMap], projection_mode: MapMode) -> Result<Self> {
        if let Some(f) = self.check(phis, projection_mode, false)? {
            return Err(Error::Mismatch(f.to_string()));
        }
        self.injections = self
            .injections
            .into_iter()
            .map(|m| m.certify(MapMode::Embedding).map(|r| r.expect("checked above")))
            .collect::<Result<_>>()?;
        self.projection = self.projection.certify(projection_mode)?.expect("checked above");
        Ok(self)
    }
}

impl FactorizationResult {
    /// Every property recorded on the maps, as `(map, property)` with maps
    /// named `inj0`, `inj1`, ... and `proj`. Only checked results carry
    /// properties, and for those `composite_eq` holds for each injection.
    pub fn manifest(&self) -> Vec<(String, &'static str)> {
        let mut out = Vec::new();
        let named = self.injections.iter().enumerate().map(|(i, m)| (format!("inj{i}"), m));
        for (name, m) in named.chain(std::iter::once(("proj".to_string(), &self.projection))) {
            out.extend(MapMode::ALL.iter().filter(|&&mode| m.is_certified(mode)).map(|mode| (name.clone(), mode.name())));
        }
        if out.iter().any(|(n, _)| n == "proj") {
            out.extend((0..self.injections.len()).map(|i| (format!("inj{i}"), "composite_eq")));
        }
        out
    }

    /// The result in the text formats: domains `L0`, `L1`, ..., codomain `M`,
    /// intermediate `I`, maps `inj<i> : L<i> -> I` and `proj : I -> M`, then
    /// one `# verified <map> <property>` comment per manifest entry.
    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for (i, inj) in self.injections.iter().enumerate() {
            let d = inj.domain().as_lattice().ok_or_else(|| Error::Mismatch("injection from a non-lattice".into()))?;
            out.push_str(&render_lattice(&format!("L{i}"), d));
        }
        out.push_str(&render_lattice("M", lattice_codomain(&self.projection)?));
        out.push_str(&render_lattice("I", &self.intermediate));
        for (i, inj) in self.injections.iter().enumerate() {
            out.push_str(&render_map(&format!("inj{i}"), &format!("L{i}"), "I", inj));
        }
        out.push_str(&render_map("proj", "I", "M", &self.projection));
        for (name, property) in self.manifest() {
            out.push_str(&format!("# verified {name} {property}\n"));
        }
        Ok(out)
    }
}

/// The codomain of `phi` as a lattice.
pub(crate) fn lattice_codomain(phi: &MonotoneMap) -> Result<&FiniteLattice> {
    phi.codomain()
        .as_lattice()
        .ok_or_else(|| Error::Mismatch("the codomain must be a finite lattice".into()))
}

pub(crate) fn lattice_domain(phi: &MonotoneMap) -> Result<&FiniteLattice> {
    phi.domain()
        .as_lattice()
        .ok_or_else(|| Error::Mismatch("the domain must be a finite lattice".into()))
}

pub(crate) fn ensure_isotone(phi: &MonotoneMap) -> Result<()> {
    match map_check(phi, MapMode::Isotone)? {
        Verdict::Holds => Ok(()),
        Verdict::Fails(a, b) => {
            let d = phi.domain();
            Err(Error::NotIsotoneInput(d.label(a).into(), d.label(b).into()))
        }
    }
}

/// Checks that all maps are isotone, come from lattices and share one
/// codomain lattice, which is returned.
pub(crate) fn common_codomain(phis: &[MonotoneMap]) -> Result<FiniteLattice> {
    let first = phis.first().ok_or(Error::EmptyIndexSet)?;
    let m = lattice_codomain(first)?.clone();
    for phi in phis {
        lattice_domain(phi)?;
        if *lattice_codomain(phi)? != m {
            return Err(Error::Mismatch("the maps must share one codomain".into()));
        }
        ensure_isotone(phi)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Document;

    #[test]
    fn render_parses_back_with_manifest() {
        let n5 = FiniteLattice::n5();
        let c = FiniteLattice::chain(2);
        let phis = [
            MonotoneMap::new(c.clone(), n5.clone(), vec![1, 2]).unwrap(),
            MonotoneMap::new(c, n5.clone(), vec![0, 3]).unwrap(),
        ];
        let r = main_factorization(&phis, 2).unwrap();
        let text = r.render().unwrap();
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.lattices.len(), 4);
        assert_eq!(doc.lattice("I").unwrap().len(), r.intermediate.len());
        let proj = &doc.maps["proj"];
        let inj1 = &doc.maps["inj1"];
        for x in 0..2 {
            assert_eq!(proj.apply(inj1.apply(x)), phis[1].apply(x));
        }
        let manifest = r.manifest();
        assert!(manifest.contains(&("proj".to_string(), "isotone")));
        assert!(manifest.contains(&("inj0".to_string(), "embedding")));
        assert!(manifest.contains(&("inj1".to_string(), "composite_eq")));
        assert!(text.contains("# verified proj isotone\n"));
    }
}
