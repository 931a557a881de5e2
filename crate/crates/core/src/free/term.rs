//! Lattice and Boolean terms, their text syntax, and evaluation.
//!
//! Grammar (∧ binds tighter than ∨; `&`, `|`, `~` are accepted aliases):
//!
//! ```text
//! join  := meet (("∨" | "|") meet)*
//! meet  := unary (("∧" | "&") unary)*
//! unary := "~" unary | atom
//! atom  := ident | "(" join ")"
//! ```
//!
//! A chain of the same operator at one level parses to a single n-ary node;
//! explicit parentheses are kept as nesting.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// A term in the language of lattices. Meet and Join carry at least two arguments.
///
/// The derived ordering (generators by label, then meets, then joins, children
/// compared lexicographically) is the fixed total order used when sorting
/// arguments of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeTerm {
    Gen(String),
    Meet(Vec<LatticeTerm>),
    Join(Vec<LatticeTerm>),
}

impl LatticeTerm {
    pub fn gen(name: &str) -> Self {
        LatticeTerm::Gen(name.to_string())
    }

    /// Meet of the arguments; a single argument is returned unchanged.
    pub fn meet_of(mut args: Vec<LatticeTerm>) -> Self {
        assert!(!args.is_empty(), "meet of no terms");
        if args.len() == 1 {
            args.pop().unwrap()
        } else {
            LatticeTerm::Meet(args)
        }
    }

    pub fn join_of(mut args: Vec<LatticeTerm>) -> Self {
        assert!(!args.is_empty(), "join of no terms");
        if args.len() == 1 {
            args.pop().unwrap()
        } else {
            LatticeTerm::Join(args)
        }
    }

    pub fn meet(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Meet(vec![a, b])
    }

    pub fn join(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Join(vec![a, b])
    }

    pub fn depth(&self) -> usize {
        match self {
            LatticeTerm::Gen(_) => 0,
            LatticeTerm::Meet(xs) | LatticeTerm::Join(xs) => 1 + xs.iter().map(|x| x.depth()).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LatticeTerm::Gen(_) => 1,
            LatticeTerm::Meet(xs) | LatticeTerm::Join(xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
        }
    }

    pub fn generators(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            LatticeTerm::Gen(g) => out.push(g),
            LatticeTerm::Meet(xs) | LatticeTerm::Join(xs) => xs.iter().for_each(|x| x.collect_generators(out)),
        }
    }

    /// Rendering without spaces, usable as a single element label.
    pub fn render_compact(&self) -> String {
        let mut s = String::new();
        self.render(&mut s, "∧", "∨", None);
        s
    }

    fn render(&self, out: &mut String, and: &str, or: &str, parent: Option<bool>) {
        // `parent`: Some(true) inside a meet, Some(false) inside a join.
        match self {
            LatticeTerm::Gen(g) => out.push_str(g),
            LatticeTerm::Meet(xs) | LatticeTerm::Join(xs) => {
                let is_meet = matches!(self, LatticeTerm::Meet(_));
                let parens = match parent {
                    None => false,
                    Some(p_meet) => p_meet || !is_meet,
                };
                if parens {
                    out.push('(');
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(if is_meet { and } else { or });
                    }
                    x.render(out, and, or, Some(is_meet));
                }
                if parens {
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(&mut s, " ∧ ", " ∨ ", None);
        f.write_str(&s)
    }
}

/// A term in the language of Boolean algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BooleanTerm {
    Gen(String),
    Not(Box<BooleanTerm>),
    And(Vec<BooleanTerm>),
    Or(Vec<BooleanTerm>),
}

#[derive(Debug)]
enum Ast {
    Ident(String),
    Not(Box<Ast>, usize),
    And(Vec<Ast>),
    Or(Vec<Ast>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, options: &[char]) -> bool {
        self.skip_ws();
        match self.peek() {
            Some(c) if options.contains(&c) => {
                self.pos += c.len_utf8();
                true
            }
            _ => false,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn join(&mut self) -> Result<Ast> {
        let mut items = vec![self.meet()?];
        while self.eat(&['∨', '|']) {
            items.push(self.meet()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Ast::Or(items) })
    }

    fn meet(&mut self) -> Result<Ast> {
        let mut items = vec![self.unary()?];
        while self.eat(&['∧', '&']) {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Ast::And(items) })
    }

    fn unary(&mut self) -> Result<Ast> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(&['~', '¬']) {
            return Ok(Ast::Not(Box::new(self.unary()?), start));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Ast> {
        self.skip_ws();
        if self.eat(&['(']) {
            let inner = self.join()?;
            if !self.eat(&[')']) {
                return self.err("expected ')'");
            }
            return Ok(inner);
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if self.pos == start {
            return self.err("expected a generator or '('");
        }
        Ok(Ast::Ident(self.src[start..self.pos].to_string()))
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let mut p = Parser { src, pos: 0 };
    let ast = p.join()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

fn check_gen(name: &str, gens: &[&str]) -> Result<()> {
    if gens.contains(&name) {
        Ok(())
    } else {
        Err(Error::UnknownGenerator(name.to_string()))
    }
}

fn to_lattice_term(ast: Ast, gens: &[&str]) -> Result<LatticeTerm> {
    Ok(match ast {
        Ast::Ident(name) => {
            check_gen(&name, gens)?;
            LatticeTerm::Gen(name)
        }
        Ast::Not(_, pos) => {
            return Err(Error::Syntax { pos, msg: "complement is only valid in Boolean terms".into() })
        }
        Ast::And(xs) => LatticeTerm::Meet(xs.into_iter().map(|x| to_lattice_term(x, gens)).collect::<Result<_>>()?),
        Ast::Or(xs) => LatticeTerm::Join(xs.into_iter().map(|x| to_lattice_term(x, gens)).collect::<Result<_>>()?),
    })
}

fn to_boolean_term(ast: Ast, gens: &[&str]) -> Result<BooleanTerm> {
    Ok(match ast {
        Ast::Ident(name) => {
            check_gen(&name, gens)?;
            BooleanTerm::Gen(name)
        }
        Ast::Not(x, _) => BooleanTerm::Not(Box::new(to_boolean_term(*x, gens)?)),
        Ast::And(xs) => BooleanTerm::And(xs.into_iter().map(|x| to_boolean_term(x, gens)).collect::<Result<_>>()?),
        Ast::Or(xs) => BooleanTerm::Or(xs.into_iter().map(|x| to_boolean_term(x, gens)).collect::<Result<_>>()?),
    })
}

/// Parses a lattice term over the generator set `gens`.
pub fn parse_term(src: &str, gens: &[&str]) -> Result<LatticeTerm> {
    to_lattice_term(parse_ast(src)?, gens)
}

/// Parses a Boolean term (complements allowed) over `gens`.
pub fn parse_boolean_term(src: &str, gens: &[&str]) -> Result<BooleanTerm> {
    to_boolean_term(parse_ast(src)?, gens)
}

/// Evaluates `t` in `l` with generators sent to the given elements.
pub fn eval_term(t: &LatticeTerm, l: &FiniteLattice, assignment: &HashMap<String, usize>) -> Result<usize> {
    Ok(match t {
        LatticeTerm::Gen(g) => *assignment.get(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?,
        LatticeTerm::Meet(xs) => {
            let vals = xs.iter().map(|x| eval_term(x, l, assignment)).collect::<Result<Vec<_>>>()?;
            l.meet_all(vals).expect("meet has arguments")
        }
        LatticeTerm::Join(xs) => {
            let vals = xs.iter().map(|x| eval_term(x, l, assignment)).collect::<Result<Vec<_>>>()?;
            l.join_all(vals).expect("join has arguments")
        }
    })
}
