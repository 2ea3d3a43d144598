//! Terms over a signature of binary operations with an optional derivation.
//!
//! Terms are planar trees written as s-expressions: `(op t1 t2)`, `(d t)` and
//! `xN`. Symmetric and antisymmetric operations are identified at
//! canonicalization time, which sorts their two arguments under the total
//! order implemented by [`Term`]'s `Ord`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The operation symbols understood by the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Circ,
    Lie,
    Ast,
    Star,
    Odot,
    Mul,
    Prec,
    Succ,
}

impl Op {
    pub const ALL: [Op; 8] = [
        Op::Circ,
        Op::Lie,
        Op::Ast,
        Op::Star,
        Op::Odot,
        Op::Mul,
        Op::Prec,
        Op::Succ,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Op::Circ => "circ",
            Op::Lie => "lie",
            Op::Ast => "ast",
            Op::Star => "star",
            Op::Odot => "odot",
            Op::Mul => "mul",
            Op::Prec => "prec",
            Op::Succ => "succ",
        }
    }

    pub fn from_token(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.token() == s)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl Serialize for Op {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Op {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Op::from_token(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown operation `{s}`")))
    }
}

/// Argument symmetry of a binary operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    None,
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    pub fn parse(s: &str) -> Option<Symmetry> {
        match s {
            "none" => Some(Symmetry::None),
            "symmetric" | "sym" => Some(Symmetry::Symmetric),
            "antisymmetric" | "anti" => Some(Symmetry::Antisymmetric),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
        }
    }
}

/// Binary operations with symmetry data, plus a flag enabling `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    ops: Vec<(Op, Symmetry)>,
    has_derivation: bool,
}

impl Signature {
    pub fn new(ops: Vec<(Op, Symmetry)>, has_derivation: bool) -> Result<Signature> {
        let mut seen = BTreeSet::new();
        for (op, _) in &ops {
            if !seen.insert(*op) {
                return Err(Error::DuplicateOp(op.token().to_string()));
            }
        }
        Ok(Signature { ops, has_derivation })
    }

    /// Panicking constructor for literal signatures.
    pub fn of(ops: &[(Op, Symmetry)], has_derivation: bool) -> Signature {
        Signature::new(ops.to_vec(), has_derivation).expect("duplicate operation in literal signature")
    }

    pub fn ops(&self) -> &[(Op, Symmetry)] {
        &self.ops
    }

    pub fn op_list(&self) -> Vec<Op> {
        self.ops.iter().map(|(op, _)| *op).collect()
    }

    pub fn has_derivation(&self) -> bool {
        self.has_derivation
    }

    pub fn with_derivation(&self, flag: bool) -> Signature {
        Signature {
            ops: self.ops.clone(),
            has_derivation: flag,
        }
    }

    pub fn symmetry(&self, op: Op) -> Option<Symmetry> {
        self.ops.iter().find(|(o, _)| *o == op).map(|(_, s)| *s)
    }

    pub fn contains(&self, op: Op) -> bool {
        self.symmetry(op).is_some()
    }

    /// Replaces the symmetry of an existing operation.
    pub fn set_symmetry(&mut self, op: Op, sym: Symmetry) {
        if let Some(slot) = self.ops.iter_mut().find(|(o, _)| *o == op) {
            slot.1 = sym;
        }
    }

    /// Renders the signature as `op:symmetry,...`.
    pub fn describe(&self) -> String {
        self.ops
            .iter()
            .map(|(op, s)| format!("{}:{}", op.token(), s.name()))
            .join(",")
    }
}

/// A variable `x_i`, `i >= 1` for user input. Index 0 never appears in parsed terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A planar tree: a variable leaf, a derivation node or a binary operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    D(Box<Term>),
    Op(Op, Box<Term>, Box<Term>),
}

pub fn var(i: u32) -> Term {
    Term::Var(Var(i))
}

pub fn op(o: Op, l: Term, r: Term) -> Term {
    Term::Op(o, Box::new(l), Box::new(r))
}

pub fn d(t: Term) -> Term {
    Term::D(Box::new(t))
}

/// `d^s(x)`.
pub fn d_pow(s: u32, t: Term) -> Term {
    (0..s).fold(t, |acc, _| d(acc))
}

impl Term {
    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::D(c) => c.degree(),
            Term::Op(_, l, r) => l.degree() + r.degree(),
        }
    }

    /// Number of `d` nodes.
    pub fn d_degree(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::D(c) => 1 + c.d_degree(),
            Term::Op(_, l, r) => l.d_degree() + r.d_degree(),
        }
    }

    /// Leaf variables in left-to-right order.
    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::D(c) => c.collect_leaves(out),
            Term::Op(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn max_var(&self) -> u32 {
        self.leaves().into_iter().map(|v| v.0).max().unwrap_or(0)
    }

    /// True when every variable occurs at most once.
    pub fn is_multilinear(&self) -> bool {
        let leaves = self.leaves();
        let set: BTreeSet<_> = leaves.iter().collect();
        set.len() == leaves.len()
    }

    /// Occurrence count of each operation.
    pub fn op_counts(&self) -> BTreeMap<Op, usize> {
        let mut out = BTreeMap::new();
        self.count_ops(&mut out);
        out
    }

    fn count_ops(&self, out: &mut BTreeMap<Op, usize>) {
        match self {
            Term::Var(_) => {}
            Term::D(c) => c.count_ops(out),
            Term::Op(o, l, r) => {
                *out.entry(*o).or_insert(0) += 1;
                l.count_ops(out);
                r.count_ops(out);
            }
        }
    }

    /// Preorder node kinds: 0 leaf, 1 derivation, 2 binary node.
    fn shape(&self, out: &mut Vec<u8>) {
        match self {
            Term::Var(_) => out.push(0),
            Term::D(c) => {
                out.push(1);
                c.shape(out);
            }
            Term::Op(_, l, r) => {
                out.push(2);
                l.shape(out);
                r.shape(out);
            }
        }
    }

    fn op_sequence(&self, out: &mut Vec<Op>) {
        match self {
            Term::Var(_) => {}
            Term::D(c) => c.op_sequence(out),
            Term::Op(o, l, r) => {
                out.push(*o);
                l.op_sequence(out);
                r.op_sequence(out);
            }
        }
    }

    /// Returns the canonical representative and its sign, or `None` when
    /// antisymmetry forces the term to vanish.
    pub fn canonical(&self, sig: &Signature) -> Option<(i8, Term)> {
        match self {
            Term::Var(_) => Some((1, self.clone())),
            Term::D(c) => {
                let (s, c) = c.canonical(sig)?;
                Some((s, d(c)))
            }
            Term::Op(o, l, r) => {
                let (sl, l) = l.canonical(sig)?;
                let (sr, r) = r.canonical(sig)?;
                let sign = sl * sr;
                match sig.symmetry(*o).unwrap_or(Symmetry::None) {
                    Symmetry::None => Some((sign, op(*o, l, r))),
                    Symmetry::Symmetric => {
                        if l <= r {
                            Some((sign, op(*o, l, r)))
                        } else {
                            Some((sign, op(*o, r, l)))
                        }
                    }
                    Symmetry::Antisymmetric => match l.cmp(&r) {
                        Ordering::Less => Some((sign, op(*o, l, r))),
                        Ordering::Greater => Some((-sign, op(*o, r, l))),
                        Ordering::Equal => None,
                    },
                }
            }
        }
    }

    /// Renames variables through `f`.
    pub fn relabel(&self, f: &impl Fn(Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::D(c) => d(c.relabel(f)),
            Term::Op(o, l, r) => op(*o, l.relabel(f), r.relabel(f)),
        }
    }

    /// Simultaneous substitution of every variable.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Term>) -> Result<Term> {
        match self {
            Term::Var(v) => assignment.get(v).cloned().ok_or(Error::MissingAssignment(v.0)),
            Term::D(c) => Ok(d(c.substitute(assignment)?)),
            Term::Op(o, l, r) => Ok(op(*o, l.substitute(assignment)?, r.substitute(assignment)?)),
        }
    }

    /// Substitution that leaves unassigned variables in place.
    pub fn substitute_partial(&self, assignment: &BTreeMap<Var, Term>) -> Term {
        match self {
            Term::Var(v) => assignment.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::D(c) => d(c.substitute_partial(assignment)),
            Term::Op(o, l, r) => op(*o, l.substitute_partial(assignment), r.substitute_partial(assignment)),
        }
    }

    /// Checks that operations and derivations are allowed by `sig`.
    pub fn check_signature(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::D(c) => {
                if !sig.has_derivation() {
                    return Err(Error::DerivationNotAllowed);
                }
                c.check_signature(sig)
            }
            Term::Op(o, l, r) => {
                if !sig.contains(*o) {
                    return Err(Error::OpNotInSignature(o.token().to_string()));
                }
                l.check_signature(sig)?;
                r.check_signature(sig)
            }
        }
    }
}

/// Total order: degree, preorder shape, preorder operation sequence, leaf indices.
/// Derivation nodes take part in the shape comparison.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self, other) {
            return Ordering::Equal;
        }
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                self.shape(&mut a);
                other.shape(&mut b);
                a.cmp(&b)
            })
            .then_with(|| {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                self.op_sequence(&mut a);
                other.op_sequence(&mut b);
                a.cmp(&b)
            })
            .then_with(|| self.leaves().cmp(&other.leaves()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::D(c) => write!(f, "(d {c})"),
            Term::Op(o, l, r) => write!(f, "({o} {l} {r})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

pub(crate) struct Lexer<'a> {
    src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn sexp(&mut self) -> Result<Sexp> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(self.err("unclosed parenthesis")),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        _ => items.push(self.sexp()?),
                    }
                }
            }
            Some(')') => Err(self.err("unexpected `)`")),
            Some(_) => {
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                if self.pos == start {
                    return Err(self.err(format!("unexpected character `{}`", self.peek().unwrap_or(' '))));
                }
                Ok(Sexp::Atom(self.src[start..self.pos].to_string(), start))
            }
        }
    }
}

pub(crate) fn parse_var(atom: &str, pos: usize) -> Result<Var> {
    let digits = atom.strip_prefix('x').ok_or_else(|| Error::Syntax {
        pos,
        msg: format!("expected a variable `xN`, found `{atom}`"),
    })?;
    let bad = || Error::Syntax {
        pos,
        msg: format!("invalid variable `{atom}`"),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: u32 = digits.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(Var(n))
}

fn sexp_to_term(s: &Sexp, sig: &Signature) -> Result<Term> {
    match s {
        Sexp::Atom(a, pos) => Ok(Term::Var(parse_var(a, *pos)?)),
        Sexp::List(items, pos) => {
            let (head, args) = items.split_first().ok_or(Error::Syntax {
                pos: *pos,
                msg: "empty list".into(),
            })?;
            let name = match head {
                Sexp::Atom(a, _) => a.as_str(),
                Sexp::List(_, p) => {
                    return Err(Error::Syntax {
                        pos: *p,
                        msg: "expected an operation name".into(),
                    })
                }
            };
            if name == "d" {
                if !sig.has_derivation() {
                    return Err(Error::DerivationNotAllowed);
                }
                if args.len() != 1 {
                    return Err(Error::Arity {
                        op: "d".into(),
                        expected: 1,
                        found: args.len(),
                    });
                }
                return Ok(d(sexp_to_term(&args[0], sig)?));
            }
            let o = Op::from_token(name).ok_or_else(|| Error::UnknownOp(name.to_string()))?;
            if !sig.contains(o) {
                return Err(Error::OpNotInSignature(name.to_string()));
            }
            if args.len() != 2 {
                return Err(Error::Arity {
                    op: name.to_string(),
                    expected: 2,
                    found: args.len(),
                });
            }
            Ok(op(o, sexp_to_term(&args[0], sig)?, sexp_to_term(&args[1], sig)?))
        }
    }
}

/// Parses one s-expression term.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let mut lx = Lexer::new(text);
    let s = lx.sexp()?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    sexp_to_term(&s, sig)
}

pub(crate) fn parse_term_at(lx: &mut Lexer<'_>, sig: &Signature) -> Result<Term> {
    let s = lx.sexp()?;
    sexp_to_term(&s, sig)
}

// ---------------------------------------------------------------------------
// Enumeration

fn planar_trees(leaves: &[u32], ops: &[Op]) -> Vec<Term> {
    if leaves.len() == 1 {
        return vec![var(leaves[0])];
    }
    let mut out = Vec::new();
    for split in 1..leaves.len() {
        let left = planar_trees(&leaves[..split], ops);
        let right = planar_trees(&leaves[split..], ops);
        for l in &left {
            for r in &right {
                for o in ops {
                    out.push(op(*o, l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

/// All multilinear derivation-free terms in `x1..xn`, before symmetry
/// identification. Ordered by leaf permutation, then tree shape, then operations.
pub fn multilinear_monomials(sig: &Signature, n: usize) -> Result<Vec<Term>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let ops = sig.op_list();
    let mut out = Vec::new();
    for perm in (1..=n as u32).permutations(n) {
        out.extend(planar_trees(&perm, &ops));
    }
    Ok(out)
}

/// Canonical multilinear monomials of degree `n`, sorted and duplicate-free.
pub fn canonical_monomials(sig: &Signature, n: usize) -> Result<Vec<Term>> {
    let ops = sig.op_list();
    let ident: Vec<u32> = (1..=n as u32).collect();
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut set = BTreeSet::new();
    // Every canonical class has a representative on some permutation; with
    // symmetric ops most permutations are redundant but the set removes them.
    for perm in ident.iter().copied().permutations(n) {
        for t in planar_trees(&perm, &ops) {
            if let Some((_, c)) = t.canonical(sig) {
                set.insert(c);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
