//! Lyndon-Shirshov words over `d^w X` and the free Lie algebra on them.
//!
//! A word `U` is LS when `U > U2 U1` for every factorization `U = U1 U2`
//! into nonempty parts, comparing lexicographically with letters ordered
//! as pairs `(s, x)`. These are exactly the Lyndon words for the reversed
//! letter order, so the Chen-Fox-Lyndon machinery applies verbatim once
//! comparisons go through [`lyn_cmp`]. A basis element `[U]` is bracketed
//! by the standard factorization `U = U' U''` with `U''` the longest proper
//! LS suffix.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::{Coeff, LinComb};
use crate::term::{d_pow, op, Op, Term, Var};

/// A letter `d^s(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DLetter {
    pub s: u32,
    pub x: Var,
}

impl DLetter {
    pub fn new(s: u32, x: u32) -> DLetter {
        DLetter { s, x: Var(x) }
    }

    pub fn raised(self) -> DLetter {
        DLetter {
            s: self.s + 1,
            x: self.x,
        }
    }

    pub fn to_term(self) -> Term {
        d_pow(self.s, Term::Var(self.x))
    }

    /// Reads `d^s(x)` back from a term.
    pub fn from_term(t: &Term) -> Option<DLetter> {
        match t {
            Term::Var(v) => Some(DLetter { s: 0, x: *v }),
            Term::D(c) => DLetter::from_term(c).map(DLetter::raised),
            Term::Op(..) => None,
        }
    }
}

impl fmt::Display for DLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Comparison on words used by the Lyndon machinery: letters in reversed
/// order, proper prefixes smaller.
pub fn lyn_cmp(a: &[DLetter], b: &[DLetter]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// True iff `w` is strictly greater than each of its proper rotations.
pub fn is_ls_word(w: &[DLetter]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let rot: Vec<DLetter> = w[k..].iter().chain(&w[..k]).copied().collect();
        w > rot.as_slice()
    })
}

/// An LS word; ordered lexicographically with proper prefixes smaller.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LsWord(Vec<DLetter>);

impl LsWord {
    pub fn new(letters: Vec<DLetter>) -> Result<LsWord> {
        if is_ls_word(&letters) {
            Ok(LsWord(letters))
        } else {
            Err(Error::NotLsWord(letters.iter().join(" ")))
        }
    }

    pub fn letter(l: DLetter) -> LsWord {
        LsWord(vec![l])
    }

    pub fn letters(&self) -> &[DLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total derivation count `D(U)`.
    pub fn d_count(&self) -> u32 {
        self.0.iter().map(|l| l.s).sum()
    }

    /// Weight of `[U]`: letters contribute `s - 1`, each bracket adds 1.
    pub fn weight(&self) -> i64 {
        self.d_count() as i64 - 1
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().map(|l| l.x).all_unique()
    }

    /// Standard factorization `(U', U'')` with `U''` the longest proper LS
    /// suffix; `None` for a single letter.
    pub fn standard_factorization(&self) -> Option<(LsWord, LsWord)> {
        (1..self.0.len()).find_map(|i| {
            is_ls_word(&self.0[i..]).then(|| (LsWord(self.0[..i].to_vec()), LsWord(self.0[i..].to_vec())))
        })
    }

    /// The canonical bracketing `[U]` as a term in `lie` and `d`.
    pub fn bracketing(&self) -> Term {
        match self.standard_factorization() {
            None => self.0[0].to_term(),
            Some((u, v)) => op(Op::Lie, u.bracketing(), v.bracketing()),
        }
    }

    fn concat(&self, other: &LsWord) -> LsWord {
        LsWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for LsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bracketing())
    }
}

/// `canonical_bracketing` on a raw letter sequence.
pub fn canonical_bracketing(w: &[DLetter]) -> Result<Term> {
    Ok(LsWord::new(w.to_vec())?.bracketing())
}

/// Elements of the free Lie algebra in the LS basis.
pub type LieElem = LinComb<LsWord>;

thread_local! {
    static BRACKET_CACHE: RefCell<HashMap<(LsWord, LsWord), LieElem>> = RefCell::new(HashMap::new());
}

/// `[[u], [v]]` expanded in the LS basis.
///
/// If `u < v` (in the Lyndon order) and either `u` is a letter or the right
/// standard factor of `u` is not below `v`, then `uv` is LS with standard
/// factorization `(u, v)`. Otherwise `u = (u1, u2)` with `u2 < v` and the
/// Jacobi identity `[[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]` yields terms
/// whose words are strictly closer to standard form.
pub fn bracket_words(u: &LsWord, v: &LsWord) -> LieElem {
    match lyn_cmp(&u.0, &v.0) {
        Ordering::Equal => LieElem::zero(),
        Ordering::Greater => -bracket_words(v, u),
        Ordering::Less => {
            let key = (u.clone(), v.clone());
            if let Some(hit) = BRACKET_CACHE.with(|c| c.borrow().get(&key).cloned()) {
                return hit;
            }
            let out = match u.standard_factorization() {
                None => LieElem::monomial(u.concat(v)),
                Some((_, ref u2)) if lyn_cmp(&u2.0, &v.0) != Ordering::Less => LieElem::monomial(u.concat(v)),
                Some((u1, u2)) => {
                    let a = bracket(&LieElem::monomial(u1.clone()), &bracket_words(&u2, v));
                    let b = bracket(&bracket_words(&u1, v), &LieElem::monomial(u2));
                    a + b
                }
            };
            BRACKET_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
            out
        }
    }
}

/// Bilinear bracket on Lie elements.
pub fn bracket(a: &LieElem, b: &LieElem) -> LieElem {
    a.bilinear(b, bracket_words)
}

/// `d([U])` by the Leibniz rule through the bracketing tree.
pub fn derive_word(w: &LsWord) -> LieElem {
    match w.standard_factorization() {
        None => LieElem::monomial(LsWord::letter(w.0[0].raised())),
        Some((u, v)) => {
            let a = bracket(&derive_word(&u), &LieElem::monomial(v.clone()));
            let b = bracket(&LieElem::monomial(u), &derive_word(&v));
            a + b
        }
    }
}

pub fn derive(a: &LieElem) -> LieElem {
    a.map_linear(derive_word)
}

/// Rewrites a term built from `lie`, `d` and variables into the LS basis.
pub fn lie_normal_form(t: &Term) -> Result<LieElem> {
    if let Some(l) = DLetter::from_term(t) {
        return Ok(LieElem::monomial(LsWord::letter(l)));
    }
    match t {
        Term::D(c) => Ok(derive(&lie_normal_form(c)?)),
        Term::Op(Op::Lie, l, r) => Ok(bracket(&lie_normal_form(l)?, &lie_normal_form(r)?)),
        Term::Op(o, ..) => Err(Error::UnsupportedOp {
            op: o.token().to_string(),
            algebra: "free Lie",
        }),
        Term::Var(_) => unreachable!("variables are letters"),
    }
}

/// The term `sum c [U]` for a Lie element.
pub fn lie_elem_terms(a: &LieElem) -> Vec<(Coeff, Term)> {
    a.iter().map(|(w, c)| (c.clone(), w.bracketing())).collect()
}

/// All multilinear LS words on the given letters, by brute force over
/// permutations.
pub fn ls_words_on(letters: &[DLetter]) -> Vec<LsWord> {
    let mut sorted = letters.to_vec();
    sorted.sort();
    // An LS word starts with its greatest letter; permute the rest.
    let Some((&top, rest)) = sorted.split_last() else {
        return Vec::new();
    };
    let mut out: Vec<LsWord> = rest
        .iter()
        .copied()
        .permutations(rest.len())
        .map(|p| std::iter::once(top).chain(p).collect::<Vec<_>>())
        .filter(|w| is_ls_word(w))
        .map(LsWord)
        .collect();
    out.sort();
    out.dedup();
    out
}
