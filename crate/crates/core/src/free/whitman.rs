//! The word problem for free lattices: Whitman's recursion and canonical forms.

use std::collections::HashMap;

use super::term::LatticeTerm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Gen(String),
    Meet(Vec<usize>),
    Join(Vec<usize>),
}

/// Hash-consed term store with a memo of decided `≤` queries.
///
/// Reusing one oracle across many queries shares both the interned subterms
/// and the memo.
#[derive(Default, Debug)]
pub struct FreeLatticeOracle {
    nodes: Vec<Node>,
    ids: HashMap<Node, usize>,
    memo: HashMap<(usize, usize), bool>,
}

/// Kind of the top node of a canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Generator,
    JoinReducible,
    MeetReducible,
}

impl FreeLatticeOracle {
    pub fn new() -> Self {
        Self::default()
    }

    fn node_id(&mut self, node: Node) -> usize {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.ids.insert(node, id);
        id
    }

    pub fn intern(&mut self, t: &LatticeTerm) -> usize {
        let node = match t {
            LatticeTerm::Gen(g) => Node::Gen(g.clone()),
            LatticeTerm::Meet(xs) => Node::Meet(xs.iter().map(|x| self.intern(x)).collect()),
            LatticeTerm::Join(xs) => Node::Join(xs.iter().map(|x| self.intern(x)).collect()),
        };
        self.node_id(node)
    }

    pub fn leq(&mut self, s: &LatticeTerm, t: &LatticeTerm) -> bool {
        let (s, t) = (self.intern(s), self.intern(t));
        self.leq_ids(s, t)
    }

    pub fn eq(&mut self, s: &LatticeTerm, t: &LatticeTerm) -> bool {
        let (s, t) = (self.intern(s), self.intern(t));
        self.leq_ids(s, t) && self.leq_ids(t, s)
    }

    fn leq_ids(&mut self, s: usize, t: usize) -> bool {
        if s == t {
            return true;
        }
        if let Some(&v) = self.memo.get(&(s, t)) {
            return v;
        }
        let v = self.decide(s, t);
        self.memo.insert((s, t), v);
        v
    }

    fn decide(&mut self, s: usize, t: usize) -> bool {
        let sn = self.nodes[s].clone();
        let tn = self.nodes[t].clone();
        match (&sn, &tn) {
            (Node::Gen(a), Node::Gen(b)) => a == b,
            (Node::Join(xs), _) => xs.iter().all(|&x| self.leq_ids(x, t)),
            (_, Node::Meet(ys)) => ys.iter().all(|&y| self.leq_ids(s, y)),
            (Node::Gen(_), Node::Join(ys)) => ys.iter().any(|&y| self.leq_ids(s, y)),
            (Node::Meet(xs), Node::Gen(_)) => xs.iter().any(|&x| self.leq_ids(x, t)),
            (Node::Meet(xs), Node::Join(ys)) => {
                xs.iter().any(|&x| self.leq_ids(x, t)) || ys.iter().any(|&y| self.leq_ids(s, y))
            }
        }
    }

    /// The canonical form of `t`: equal in the free lattice iff identical.
    pub fn canonical(&mut self, t: &LatticeTerm) -> LatticeTerm {
        match t {
            LatticeTerm::Gen(_) => t.clone(),
            LatticeTerm::Join(xs) => {
                let args = xs.iter().map(|x| self.canonical(x)).collect();
                self.reduce(args, false)
            }
            LatticeTerm::Meet(xs) => {
                let args = xs.iter().map(|x| self.canonical(x)).collect();
                self.reduce(args, true)
            }
        }
    }

    /// Canonical join (or, with `meet` set, meet) of canonical arguments.
    fn reduce(&mut self, args: Vec<LatticeTerm>, meet: bool) -> LatticeTerm {
        let mut cur: Vec<LatticeTerm> = Vec::new();
        for a in args {
            self.flatten_into(&mut cur, a, meet);
        }
        loop {
            cur.sort();
            cur.dedup();
            // Drop arguments absorbed by another one.
            let ids: Vec<usize> = cur.iter().map(|x| self.intern(x)).collect();
            let mut keep = vec![true; cur.len()];
            for i in 0..cur.len() {
                for j in 0..cur.len() {
                    if i != j && keep[j] {
                        let absorbed = if meet { self.leq_ids(ids[j], ids[i]) } else { self.leq_ids(ids[i], ids[j]) };
                        if absorbed {
                            keep[i] = false;
                            break;
                        }
                    }
                }
            }
            cur = cur.into_iter().zip(keep).filter_map(|(t, k)| k.then_some(t)).collect();
            if cur.len() == 1 {
                return cur.pop().unwrap();
            }
            let whole = if meet { LatticeTerm::Meet(cur.clone()) } else { LatticeTerm::Join(cur.clone()) };
            let w = self.intern(&whole);
            // A join argument that is a meet gets replaced by any of its meetands
            // lying below the whole join; dually for meets.
            let mut replaced = None;
            'outer: for (i, a) in cur.iter().enumerate() {
                let inner = match (meet, a) {
                    (false, LatticeTerm::Meet(ms)) | (true, LatticeTerm::Join(ms)) => ms,
                    _ => continue,
                };
                for m in inner {
                    let mid = self.intern(m);
                    let hit = if meet { self.leq_ids(w, mid) } else { self.leq_ids(mid, w) };
                    if hit {
                        replaced = Some((i, m.clone()));
                        break 'outer;
                    }
                }
            }
            match replaced {
                Some((i, m)) => {
                    cur.swap_remove(i);
                    self.flatten_into(&mut cur, m, meet);
                }
                None => break,
            }
        }
        if meet {
            LatticeTerm::Meet(cur)
        } else {
            LatticeTerm::Join(cur)
        }
    }

    fn flatten_into(&self, cur: &mut Vec<LatticeTerm>, t: LatticeTerm, meet: bool) {
        match t {
            LatticeTerm::Meet(xs) if meet => cur.extend(xs),
            LatticeTerm::Join(xs) if !meet => cur.extend(xs),
            other => cur.push(other),
        }
    }
}

/// Decides `s ≤ t` in the free lattice.
pub fn fl_leq(s: &LatticeTerm, t: &LatticeTerm) -> bool {
    FreeLatticeOracle::new().leq(s, t)
}

pub fn fl_eq(s: &LatticeTerm, t: &LatticeTerm) -> bool {
    FreeLatticeOracle::new().eq(s, t)
}

pub fn canonical_form(t: &LatticeTerm) -> (LatticeTerm, Reducibility) {
    let c = FreeLatticeOracle::new().canonical(t);
    let tag = reducibility(&c);
    (c, tag)
}

pub fn reducibility(t: &LatticeTerm) -> Reducibility {
    match t {
        LatticeTerm::Gen(_) => Reducibility::Generator,
        LatticeTerm::Join(_) => Reducibility::JoinReducible,
        LatticeTerm::Meet(_) => Reducibility::MeetReducible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::term::parse_term;

    const G: &[&str] = &["a", "b", "c"];

    fn t(s: &str) -> LatticeTerm {
        parse_term(s, G).unwrap()
    }

    #[test]
    fn basic_inequalities() {
        assert!(fl_leq(&t("a"), &t("a ∨ b")));
        assert!(fl_leq(&t("(a ∧ b) ∨ (a ∧ c)"), &t("a ∧ (b ∨ c)")));
        assert!(!fl_leq(&t("a ∧ (b ∨ c)"), &t("(a ∧ b) ∨ (a ∧ c)")));
        assert!(!fl_leq(&t("a"), &t("b")));
        assert!(fl_eq(&t("a ∨ (a ∧ b)"), &t("a")));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&t("a ∨ (a ∧ b)")), (t("a"), Reducibility::Generator));
        assert_eq!(canonical_form(&t("b ∨ a")).1, Reducibility::JoinReducible);
        assert_eq!(canonical_form(&t("b ∨ a")).0, t("a ∨ b"));
        assert_eq!(canonical_form(&t("(a ∨ b) ∨ c")).0, t("a ∨ b ∨ c"));
        // The meetand a∨b lies below the whole join.
        assert_eq!(canonical_form(&t("((a ∨ b) ∧ c) ∨ a ∨ b")).0, t("a ∨ b"));
        assert_eq!(canonical_form(&t("((a ∨ c) ∧ (b ∨ c)) ∨ a ∨ b")).0, t("a ∨ b ∨ c"));
    }

    #[test]
    fn canonical_is_idempotent_on_samples() {
        for s in ["(a ∧ b) ∨ (b ∧ c) ∨ (c ∧ a)", "a ∧ (b ∨ (a ∧ c))", "(a ∨ b) ∧ (a ∨ c) ∧ (b ∨ c)"] {
            let (c, _) = canonical_form(&t(s));
            assert_eq!(canonical_form(&c).0, c);
            assert!(fl_eq(&c, &t(s)));
        }
    }
}
