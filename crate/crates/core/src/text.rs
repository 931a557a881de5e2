//! Line-based text formats for lattices, partial lattices and maps.
//!
//! ```text
//! # comment
//! lattice N5
//! elements 0 a c b 1
//! cover 0 < a
//! ...
//! partial P
//! elements x y z
//! cover x < z
//! meet x y = z
//! join x y = z
//! map f : L -> N5
//! x -> a
//! ```
//!
//! A map may name lattices defined earlier in the document or builtins
//! (`one`, `chainK`, `boolK`, `M3`, `N5`, `subspacesN`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{subspaces_f2, FiniteLattice};
use crate::map::MonotoneMap;
use crate::partial::PartialLattice;
use crate::poset::{Order, Poset};

/// Lattices known by name without a definition.
pub fn builtin_lattice(name: &str) -> Option<FiniteLattice> {
    let suffix = |p: &str| name.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
    match name {
        "one" => Some(FiniteLattice::singleton("e")),
        "M3" => Some(FiniteLattice::m3()),
        "N5" => Some(FiniteLattice::n5()),
        _ => {
            if let Some(k) = suffix("chain").filter(|&k| (1..=64).contains(&k)) {
                Some(FiniteLattice::chain(k))
            } else if let Some(k) = suffix("bool").filter(|&k| (1..=8).contains(&k)) {
                Some(FiniteLattice::boolean(k))
            } else if let Some(k) = suffix("subspaces") {
                subspaces_f2(k).ok()
            } else {
                None
            }
        }
    }
}

/// A block whose keyword the core formats do not know; left to the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBlock {
    pub line: usize,
    pub keyword: String,
    pub args: Vec<String>,
    pub body: Vec<(usize, Vec<String>)>,
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub lattices: BTreeMap<String, FiniteLattice>,
    pub partials: BTreeMap<String, PartialLattice>,
    pub maps: BTreeMap<String, MonotoneMap>,
    pub other: Vec<RawBlock>,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn tokenize(src: &str) -> Vec<(usize, Vec<String>)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

const KEYWORDS: &[&str] = &["lattice", "partial", "map"];

impl Document {
    /// Parses every block. Blocks start at a line whose first token is not a
    /// body keyword of the current block (`elements`, `cover`, `meet`, `join`,
    /// or a `x -> y` line inside a map).
    pub fn parse(src: &str) -> Result<Document> {
        Document::parse_with(src, &[])
    }

    /// Like [`Document::parse`], additionally treating `extra` keywords as raw blocks.
    pub fn parse_with(src: &str, extra: &[&str]) -> Result<Document> {
        let lines = tokenize(src);
        let mut doc = Document::default();
        let mut i = 0;
        while i < lines.len() {
            let (line, toks) = &lines[i];
            let kw = toks[0].as_str();
            if !KEYWORDS.contains(&kw) && !extra.contains(&kw) {
                return perr(*line, format!("expected a block keyword, found {kw:?}"));
            }
            let mut j = i + 1;
            while j < lines.len() {
                let k = lines[j].1[0].as_str();
                if KEYWORDS.contains(&k) || extra.contains(&k) {
                    break;
                }
                j += 1;
            }
            let body = &lines[i + 1..j];
            match kw {
                "lattice" | "partial" => {
                    let name = block_name(*line, toks)?;
                    let (poset, meets, joins) = parse_order(*line, body, kw == "partial")?;
                    if kw == "lattice" {
                        let l = FiniteLattice::from_poset(&poset).map_err(|e| Error::Parse { line: *line, msg: e.to_string() })?;
                        doc.lattices.insert(name, l);
                    } else {
                        let p = PartialLattice::new(poset, &meets, &joins)
                            .map_err(|e| Error::Parse { line: *line, msg: e.to_string() })?;
                        doc.partials.insert(name, p);
                    }
                }
                "map" => {
                    let (name, m) = parse_map(*line, toks, body, &doc)?;
                    doc.maps.insert(name, m);
                }
                _ => doc.other.push(RawBlock {
                    line: *line,
                    keyword: kw.to_string(),
                    args: toks[1..].to_vec(),
                    body: body.to_vec(),
                }),
            }
            i = j;
        }
        Ok(doc)
    }

    /// A lattice defined in the document, or a builtin.
    pub fn lattice(&self, name: &str) -> Option<FiniteLattice> {
        self.lattices.get(name).cloned().or_else(|| builtin_lattice(name))
    }
}

fn block_name(line: usize, toks: &[String]) -> Result<String> {
    match toks {
        [_, name] => Ok(name.clone()),
        _ => perr(line, format!("expected `{} <name>`", toks[0])),
    }
}

type Facts = Vec<(usize, usize, usize)>;

fn parse_order(line: usize, body: &[(usize, Vec<String>)], partial: bool) -> Result<(Poset, Facts, Facts)> {
    let Some((el_line, el)) = body.first().filter(|(_, t)| t[0] == "elements") else {
        return perr(line, "missing `elements` line");
    };
    let labels: Vec<String> = el[1..].to_vec();
    if labels.is_empty() {
        return perr(*el_line, "no elements");
    }
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if index.len() != labels.len() {
        return perr(*el_line, "duplicate element label");
    }
    let idx = |ln: usize, s: &str| index.get(s).copied().ok_or(Error::Parse { line: ln, msg: format!("unknown element {s:?}") });
    let mut covers = Vec::new();
    let mut meets = Vec::new();
    let mut joins = Vec::new();
    for (ln, t) in &body[1..] {
        let ln = *ln;
        match (t[0].as_str(), t.len()) {
            ("cover", 4) if t[2] == "<" => covers.push((idx(ln, &t[1])?, idx(ln, &t[3])?)),
            ("meet" | "join", 5) if partial && t[3] == "=" => {
                let fact = (idx(ln, &t[1])?, idx(ln, &t[2])?, idx(ln, &t[4])?);
                if t[0] == "meet" {
                    meets.push(fact)
                } else {
                    joins.push(fact)
                }
            }
            _ => return perr(ln, format!("unrecognized line {:?}", t.join(" "))),
        }
    }
    let poset = Poset::from_covers(labels, &covers).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    Ok((poset, meets, joins))
}

fn parse_map(line: usize, toks: &[String], body: &[(usize, Vec<String>)], doc: &Document) -> Result<(String, MonotoneMap)> {
    let [_, name, colon, dom, arrow, cod] = toks else {
        return perr(line, "expected `map <name> : <lattice> -> <lattice>`");
    };
    if colon != ":" || arrow != "->" {
        return perr(line, "expected `map <name> : <lattice> -> <lattice>`");
    }
    let get = |n: &str| doc.lattice(n).ok_or(Error::Parse { line, msg: format!("unknown lattice {n:?}") });
    let (d, c) = (get(dom)?, get(cod)?);
    let mut image = vec![None; d.len()];
    for (ln, t) in body {
        if t.len() != 3 || t[1] != "->" {
            return perr(*ln, "expected `<x> -> <y>`");
        }
        let x = d.index_of(&t[0]).ok_or(Error::Parse { line: *ln, msg: format!("unknown element {:?}", t[0]) })?;
        let y = c.index_of(&t[2]).ok_or(Error::Parse { line: *ln, msg: format!("unknown element {:?}", t[2]) })?;
        image[x] = Some(y);
    }
    let image = image
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or(Error::Parse { line, msg: format!("no image for {:?}", d.label(x)) }))
        .collect::<Result<Vec<_>>>()?;
    let m = MonotoneMap::new(d, c, image).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    Ok((name.clone(), m))
}

fn render_order(out: &mut String, o: &dyn Order) {
    let labels = o.labels();
    let _ = writeln!(out, "elements {}", labels.join(" "));
    for a in 0..o.len() {
        for &b in o.upper_covers(a) {
            let _ = writeln!(out, "cover {} < {}", o.label(a), o.label(b));
        }
    }
}

pub fn render_lattice(name: &str, l: &FiniteLattice) -> String {
    let mut out = format!("lattice {name}\n");
    render_order(&mut out, l);
    out
}

pub fn render_partial(name: &str, p: &PartialLattice) -> String {
    let mut out = format!("partial {name}\n");
    render_order(&mut out, p);
    for (a, b, z) in p.meet_facts() {
        let _ = writeln!(out, "meet {} {} = {}", p.label(a), p.label(b), p.label(z));
    }
    for (a, b, z) in p.join_facts() {
        let _ = writeln!(out, "join {} {} = {}", p.label(a), p.label(b), p.label(z));
    }
    out
}

pub fn render_map(name: &str, dom: &str, cod: &str, m: &MonotoneMap) -> String {
    let mut out = format!("map {name} : {dom} -> {cod}\n");
    for (x, y) in m.label_pairs() {
        let _ = writeln!(out, "{x} -> {y}");
    }
    out
}

pub fn parse_lattice(src: &str) -> Result<(String, FiniteLattice)> {
    let doc = Document::parse(src)?;
    let mut it = doc.lattices.into_iter();
    match (it.next(), it.next()) {
        (Some(one), None) if doc.partials.is_empty() && doc.maps.is_empty() => Ok(one),
        _ => perr(1, "expected exactly one lattice block"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::boolean_minus_bounds;

    #[test]
    fn lattice_round_trip() {
        for l in [FiniteLattice::n5(), FiniteLattice::m3(), FiniteLattice::boolean(3), subspaces_f2(3).unwrap()] {
            let text = render_lattice("x", &l);
            let (name, back) = parse_lattice(&text).unwrap();
            assert_eq!(name, "x");
            assert_eq!(back.labels(), l.labels());
            for a in l.elements() {
                for b in l.elements() {
                    assert_eq!(back.leq(a, b), l.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn maps_and_partials() {
        let src = "
            # a two-element chain into N5
            lattice two
            elements lo hi
            cover lo < hi
            map f : two -> N5
            lo -> a
            hi -> 1
        ";
        let doc = Document::parse(src).unwrap();
        let f = &doc.maps["f"];
        assert_eq!(f.label_pairs(), vec![("lo".to_string(), "a".to_string()), ("hi".into(), "1".into())]);
        let p = boolean_minus_bounds(&FiniteLattice::boolean(3)).unwrap();
        let text = render_partial("p", &p);
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.partials["p"], p);
        let text = render_map("f", "two", "N5", f);
        assert!(text.starts_with("map f : two -> N5\n"));
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(Document::parse("lattice x\nelements a b\ncover a < c\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Document::parse("lattice x\nelements a b\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Document::parse("bogus\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Document::parse("map f : two -> N5\n"), Err(Error::Parse { line: 1, .. })));
        let doc = Document::parse_with("scenario s\nconstruction foo\n", &["scenario"]).unwrap();
        assert_eq!(doc.other[0].keyword, "scenario");
        assert_eq!(doc.other[0].body.len(), 1);
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_lattice("chain4").unwrap().len(), 4);
        assert_eq!(builtin_lattice("bool3").unwrap().len(), 8);
        assert_eq!(builtin_lattice("subspaces3").unwrap().len(), 16);
        assert!(builtin_lattice("nope").is_none());
    }
}
