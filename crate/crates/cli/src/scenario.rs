//! Scenario files: lattice and map definitions in the core text format, plus
//! `scenario` blocks naming a construction, its inputs and the expected
//! properties of the result.
//!
//! ```text
//! scenario neq
//! construction prod_times_free
//! input maps id2 id2
//! input base 0 0
//! expect not join_hom projection
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Instant;

use latext_core::constructions::{
    bound_equivalence_check, bounded_below_extension, main_factorization, prod_times_free, retract_factorization,
    theorem_complete_probe, FactorizationResult, RetractInput,
};
use latext_core::downset_prod::{lprime_lattice, theorem_semilat_factorization};
use latext_core::map::map_check_all_pairs;
use latext_core::text::{Document, RawBlock};
use latext_core::variety::{distributivity_violation, pentagons};
use latext_core::{FiniteLattice, MapMode, MonotoneMap, Order, Verdict};

use crate::report::{Check, Entry};

pub const CONSTRUCTIONS: &[&str] = &[
    "lattice",
    "map",
    "main_factorization",
    "prod_times_free",
    "bounded_below_extension",
    "retract_factorization",
    "downset_product",
    "boolean_bounds",
];

pub const PROPERTIES: &[&str] =
    &["isotone", "join_hom", "lattice_hom", "composite_eq", "distributive", "contains_n5", "bounds_eq", "sup_eq"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioError {
    Parse { line: usize, msg: String },
    UnknownConstruction(String),
    Construction(String),
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            ScenarioError::UnknownConstruction(c) => write!(f, "unknown construction {c:?}"),
            ScenarioError::Construction(m) => write!(f, "construction failed: {m}"),
        }
    }
}

impl From<latext_core::Error> for ScenarioError {
    fn from(e: latext_core::Error) -> Self {
        match e {
            latext_core::Error::Parse { line, msg } => ScenarioError::Parse { line, msg },
            other => ScenarioError::Construction(other.to_string()),
        }
    }
}

type SResult<T> = std::result::Result<T, ScenarioError>;

fn perr<T>(line: usize, msg: impl Into<String>) -> SResult<T> {
    Err(ScenarioError::Parse { line, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub line: usize,
    pub negated: bool,
    pub property: String,
    pub target: Option<String>,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub construction: String,
    pub inputs: BTreeMap<String, (usize, Vec<String>)>,
    pub expectations: Vec<Expectation>,
}

/// Parses a scenario file into its definitions and scenarios. Unknown
/// constructions and properties are rejected here, before anything runs.
pub fn parse_file(src: &str) -> SResult<(Document, Vec<Scenario>)> {
    let doc = Document::parse_with(src, &["scenario"])?;
    let scenarios = doc.other.iter().map(parse_block).collect::<SResult<Vec<_>>>()?;
    if scenarios.is_empty() {
        return perr(1, "no scenario block");
    }
    Ok((doc, scenarios))
}

fn parse_block(b: &RawBlock) -> SResult<Scenario> {
    let [name] = b.args.as_slice() else {
        return perr(b.line, "expected `scenario <name>`");
    };
    let mut construction = None;
    let mut inputs = BTreeMap::new();
    let mut expectations = Vec::new();
    for (line, toks) in &b.body {
        let line = *line;
        match toks[0].as_str() {
            "construction" if toks.len() == 2 => {
                if !CONSTRUCTIONS.contains(&toks[1].as_str()) {
                    return Err(ScenarioError::UnknownConstruction(toks[1].clone()));
                }
                construction = Some(toks[1].clone());
            }
            "input" if toks.len() >= 3 => {
                if inputs.insert(toks[1].clone(), (line, toks[2..].to_vec())).is_some() {
                    return perr(line, format!("input {:?} given twice", toks[1]));
                }
            }
            "expect" if toks.len() >= 2 => {
                let negated = toks[1] == "not";
                let rest = &toks[1 + usize::from(negated)..];
                let Some(property) = rest.first() else {
                    return perr(line, "missing property");
                };
                if !PROPERTIES.contains(&property.as_str()) {
                    return perr(line, format!("unknown property {property:?}"));
                }
                expectations.push(Expectation {
                    line,
                    negated,
                    property: property.clone(),
                    target: rest.get(1).cloned(),
                    elements: rest.iter().skip(2).cloned().collect(),
                });
            }
            _ => return perr(line, format!("unrecognized line {:?}", toks.join(" "))),
        }
    }
    let Some(construction) = construction else {
        return perr(b.line, "missing `construction` line");
    };
    if expectations.is_empty() {
        return perr(b.line, "no `expect` line");
    }
    Ok(Scenario { name: name.clone(), construction, inputs, expectations })
}

/// What a construction produced, addressed by name from `expect` lines.
#[derive(Default)]
struct Built {
    lattices: BTreeMap<String, FiniteLattice>,
    maps: BTreeMap<String, MonotoneMap>,
    phis: Vec<MonotoneMap>,
    factorization: Option<FactorizationResult>,
    bounds: Option<(FiniteLattice, Vec<usize>)>,
}

impl Built {
    fn with_factorization(mut self, r: FactorizationResult, phis: Vec<MonotoneMap>) -> Self {
        self.lattices.insert("intermediate".into(), r.intermediate.clone());
        self.maps.insert("projection".into(), r.projection.clone());
        for (i, inj) in r.injections.iter().enumerate() {
            self.maps.insert(format!("injection{i}"), inj.clone());
        }
        self.phis = phis;
        self.factorization = Some(r);
        self
    }
}

struct Inputs<'a> {
    doc: &'a Document,
    scenario: &'a Scenario,
}

impl Inputs<'_> {
    fn raw(&self, key: &str) -> SResult<(usize, &[String])> {
        match self.scenario.inputs.get(key) {
            Some((line, v)) => Ok((*line, v.as_slice())),
            None => perr(0, format!("scenario {:?} needs `input {key} ...`", self.scenario.name)),
        }
    }

    fn lattice(&self, line: usize, name: &str) -> SResult<FiniteLattice> {
        self.doc.lattice(name).map_or_else(|| perr(line, format!("unknown lattice {name:?}")), Ok)
    }

    fn lattices(&self, key: &str) -> SResult<Vec<FiniteLattice>> {
        let (line, names) = self.raw(key)?;
        names.iter().map(|n| self.lattice(line, n)).collect()
    }

    fn maps(&self, key: &str) -> SResult<Vec<MonotoneMap>> {
        let (line, names) = self.raw(key)?;
        names
            .iter()
            .map(|n| self.doc.maps.get(n).cloned().map_or_else(|| perr(line, format!("unknown map {n:?}")), Ok))
            .collect()
    }

    fn single(&self, key: &str) -> SResult<(usize, &str)> {
        match self.raw(key)? {
            (line, [one]) => Ok((line, one.as_str())),
            (line, _) => perr(line, format!("`input {key}` takes one value")),
        }
    }

    /// Element labels of `key`, looked up in `l`.
    fn elements_in(&self, key: &str, l: &dyn Order) -> SResult<Vec<usize>> {
        let (line, labels) = self.raw(key)?;
        labels.iter().map(|s| l.index_of(s).map_or_else(|| perr(line, format!("unknown element {s:?}")), Ok)).collect()
    }
}

fn codomain_lattice(phis: &[MonotoneMap]) -> SResult<FiniteLattice> {
    phis.first()
        .and_then(|p| p.codomain().as_lattice().cloned())
        .ok_or_else(|| ScenarioError::Construction("the maps need a lattice codomain".into()))
}

fn build(doc: &Document, s: &Scenario) -> SResult<Built> {
    let inp = Inputs { doc, scenario: s };
    let mut built = Built::default();
    match s.construction.as_str() {
        "lattice" => {
            let (line, name) = inp.single("lattice")?;
            built.lattices.insert("lattice".into(), inp.lattice(line, name)?);
        }
        "map" => {
            let m = inp.maps("map")?;
            let [m] = m.as_slice() else {
                return perr(inp.raw("map")?.0, "`input map` takes one value");
            };
            built.maps.insert("map".into(), m.clone());
        }
        "main_factorization" | "bounded_below_extension" => {
            let phis = inp.maps("maps")?;
            let m = codomain_lattice(&phis)?;
            let (line, label) = inp.single("base")?;
            let e = m.index_of(label).map_or_else(|| perr(line, format!("unknown element {label:?}")), Ok)?;
            let r = if s.construction == "main_factorization" {
                main_factorization(&phis, e)?
            } else {
                bounded_below_extension(&phis, e)?
            };
            built = built.with_factorization(r, phis);
        }
        "prod_times_free" => {
            let phis = inp.maps("maps")?;
            let (line, labels) = inp.raw("base")?;
            if labels.len() != phis.len() {
                return perr(line, "one base element per map");
            }
            let base = labels
                .iter()
                .zip(&phis)
                .map(|(s, p)| p.domain().index_of(s).map_or_else(|| perr(line, format!("unknown element {s:?}")), Ok))
                .collect::<SResult<Vec<_>>>()?;
            let r = prod_times_free(&phis, &base)?;
            built = built.with_factorization(r, phis);
        }
        "retract_factorization" => {
            let (line, k) = inp.single("k")?;
            let input = RetractInput {
                k: inp.lattice(line, k)?,
                embeds: inp.maps("embeds")?,
                retractions: inp.maps("retractions")?,
                phis: inp.maps("maps")?,
            };
            let r = retract_factorization(&input)?;
            built = built.with_factorization(r, input.phis);
        }
        "downset_product" => {
            let ls = inp.lattices("lattices")?;
            let dp = lprime_lattice(&ls)?;
            built.lattices.insert("intermediate".into(), dp.lattice().clone());
            built.maps.insert("pi".into(), dp.pi_map()?);
            for i in 0..ls.len() {
                built.maps.insert(format!("xi{i}"), dp.xi_map(i)?);
            }
            if s.inputs.contains_key("maps") {
                let phis = inp.maps("maps")?;
                if phis.len() != ls.len() || phis.iter().zip(&ls).any(|(p, l)| p.domain().as_lattice() != Some(l)) {
                    return perr(inp.raw("maps")?.0, "one map out of each listed lattice");
                }
                let r = theorem_semilat_factorization(&phis)?;
                built = built.with_factorization(r, phis);
            }
        }
        "boolean_bounds" => {
            let (line, name) = inp.single("lattice")?;
            let m = inp.lattice(line, name)?;
            let xs = inp.elements_in("elements", &m)?;
            built.bounds = Some((m, xs));
        }
        other => return Err(ScenarioError::UnknownConstruction(other.into())),
    }
    Ok(built)
}

fn pair_labels(o: &dyn Order, a: usize, b: usize) -> Vec<String> {
    vec![o.label(a).to_string(), o.label(b).to_string()]
}

fn resolve_element(built: &Built, l: &FiniteLattice, r: &str) -> Option<usize> {
    if let Some((map, rest)) = r.split_once('(') {
        let arg = rest.strip_suffix(')')?;
        let m = built.maps.get(map)?;
        if m.codomain().as_lattice() != Some(l) {
            return None;
        }
        return m.domain().index_of(arg).map(|x| m.apply(x));
    }
    l.index_of(r)
}

fn evaluate(built: &Built, x: &Expectation) -> SResult<Check> {
    let expected = !x.negated;
    let mut check = Check::new(&x.property);
    let default_map = || ["projection", "map"].into_iter().find(|k| built.maps.contains_key(*k));
    let default_lattice = || ["intermediate", "lattice"].into_iter().find(|k| built.lattices.contains_key(*k));
    let missing = |what: &str| ScenarioError::Parse { line: x.line, msg: format!("nothing named {what:?} to check") };
    match x.property.as_str() {
        "isotone" | "join_hom" | "lattice_hom" => {
            let mode = match x.property.as_str() {
                "isotone" => MapMode::Isotone,
                "join_hom" => MapMode::JoinHom,
                _ => MapMode::LatticeHom,
            };
            let name = x.target.as_deref().or_else(default_map).ok_or_else(|| missing("map"))?;
            let m = built.maps.get(name).ok_or_else(|| missing(name))?;
            check = check.target(name).instances(m.domain().len().pow(2));
            let verdict = map_check_all_pairs(m, mode)?;
            let witness = verdict.witness().map(|(a, b)| pair_labels(m.domain(), a, b));
            Ok(check.outcome(expected, verdict == Verdict::Holds, witness))
        }
        "composite_eq" => {
            let r = built.factorization.as_ref().ok_or_else(|| missing("factorization"))?;
            let mut witness = None;
            let mut n = 0;
            'outer: for (i, (inj, phi)) in r.injections.iter().zip(&built.phis).enumerate() {
                for a in 0..phi.domain().len() {
                    n += 1;
                    let (lhs, rhs) = (r.projection.apply(inj.apply(a)), phi.apply(a));
                    if lhs != rhs {
                        let cod = phi.codomain();
                        witness = Some(vec![
                            i.to_string(),
                            phi.domain().label(a).to_string(),
                            cod.label(lhs).to_string(),
                            cod.label(rhs).to_string(),
                        ]);
                        break 'outer;
                    }
                }
            }
            Ok(check.instances(n).outcome(expected, witness.is_none(), witness))
        }
        "distributive" | "contains_n5" => {
            let name = x.target.as_deref().or_else(default_lattice).ok_or_else(|| missing("lattice"))?;
            let l = built.lattices.get(name).ok_or_else(|| missing(name))?;
            check = check.target(name).instances(l.len());
            let elems = x
                .elements
                .iter()
                .map(|r| resolve_element(built, l, r).ok_or_else(|| missing(r)))
                .collect::<SResult<Vec<_>>>()?;
            let labels = |xs: &[usize]| xs.iter().map(|&i| l.label(i).to_string()).collect::<Vec<_>>();
            if x.property == "distributive" {
                let violation = match elems.as_slice() {
                    [] => distributivity_violation(l).map(|(a, b, c)| vec![a, b, c]),
                    &[a, b, c] => {
                        let (lhs, rhs) = (l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                        (lhs != rhs).then(|| vec![a, b, c, lhs, rhs])
                    }
                    _ => return perr(x.line, "distributive takes zero or three elements"),
                };
                let witness = violation.as_deref().map(labels);
                Ok(check.outcome(expected, violation.is_none(), witness))
            } else {
                let found = pentagons(l).into_iter().next();
                let witness = found.as_ref().map(|p| labels(p));
                Ok(check.outcome(expected, found.is_some(), witness))
            }
        }
        "bounds_eq" | "sup_eq" => {
            let (m, xs) = built.bounds.as_ref().ok_or_else(|| missing("boolean_bounds"))?;
            check = check.instances(xs.len());
            if x.property == "bounds_eq" {
                let holds = bound_equivalence_check(m, xs)?;
                Ok(check.outcome(expected, holds, None))
            } else {
                let sup = m.join_all(xs.iter().copied()).expect("nonempty");
                match theorem_complete_probe(m, xs) {
                    Ok(v) => Ok(check.outcome(expected, v == sup, None).detail(format!("sup = {}", m.label(v)))),
                    Err(latext_core::Error::Mismatch(msg)) => Ok(check.outcome(expected, false, None).detail(msg)),
                    Err(e) => Err(e.into()),
                }
            }
        }
        other => perr(x.line, format!("unknown property {other:?}")),
    }
}

fn emit_factorization(built: &Built, s: &Scenario, dir: &Path) -> SResult<()> {
    let Some(r) = &built.factorization else { return Ok(()) };
    let path = dir.join(format!("{}.lat", s.name));
    let write = |text: String| {
        fs::create_dir_all(dir)
            .and_then(|()| fs::write(&path, text))
            .map_err(|e| ScenarioError::Construction(format!("cannot write {}: {e}", path.display())))
    };
    write(r.render()?)
}

/// Builds and checks one scenario, writing a factorization to `emit` when
/// given. Construction and lookup errors become an error entry rather than
/// aborting the run.
pub fn run_scenario(doc: &Document, s: &Scenario, label: &str, emit: Option<&Path>) -> Entry {
    let start = Instant::now();
    let outcome = build(doc, s).and_then(|b| {
        if let Some(dir) = emit {
            emit_factorization(&b, s, dir)?;
        }
        s.expectations.iter().map(|x| evaluate(&b, x)).collect::<SResult<Vec<_>>>()
    });
    let millis = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(checks) => Entry::new(label, checks, millis),
        Err(e) => Entry::failed(label, e.to_string(), millis),
    }
}

/// Runs every scenario in `src`; a file that does not parse yields one error entry.
pub fn run_source(src: &str, path: &str, emit: Option<&Path>) -> Vec<Entry> {
    match parse_file(src) {
        Ok((doc, scenarios)) => {
            scenarios.iter().map(|s| run_scenario(&doc, s, &format!("{path}#{}", s.name), emit)).collect()
        }
        Err(e) => vec![Entry::failed(path, e.to_string(), 0)],
    }
}
