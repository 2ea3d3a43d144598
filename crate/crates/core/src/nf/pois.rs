//! The free differential Poisson algebra `PoisDer<X, d>`.
//!
//! Basis: commutative products `[X1][X2]...[Xn]` of LS basis elements over
//! `d^w X` with `X1 <= ... <= Xn`.

use std::fmt;

use itertools::Itertools;
use num::One;

use crate::error::Result;
use crate::poly::LinComb;
use crate::term::{op, Op, Term};

use super::lie::{self, DLetter, LsWord};
use super::DiffAlgebra;

/// A sorted multiset of LS words; the empty product is not a basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoisMono(Vec<LsWord>);

impl PoisMono {
    pub fn new(mut factors: Vec<LsWord>) -> PoisMono {
        factors.sort();
        PoisMono(factors)
    }

    pub fn factors(&self) -> &[LsWord] {
        &self.0
    }

    /// Total derivation count.
    pub fn d_count(&self) -> u32 {
        self.0.iter().map(LsWord::d_count).sum()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(LsWord::len).sum()
    }

    /// `wt = D - (number of factors)`.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(LsWord::weight).sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().flat_map(|w| w.letters().iter().map(|l| l.x)).all_unique()
    }

    pub fn product(&self, other: &PoisMono) -> PoisMono {
        PoisMono::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    fn without(&self, i: usize) -> Vec<LsWord> {
        self.0
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, w)| w.clone())
            .collect()
    }

    /// Left-nested `mul` term of the bracketed factors.
    pub fn to_term(&self) -> Term {
        let mut it = self.0.iter().map(LsWord::bracketing);
        let first = it.next().expect("empty Poisson monomial");
        it.fold(first, |acc, t| op(Op::Mul, acc, t))
    }
}

impl fmt::Display for PoisMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(pm")?;
        for w in &self.0 {
            write!(f, " {}", w.bracketing())?;
        }
        write!(f, ")")
    }
}

/// Product `mul` (commutative) and Poisson bracket `lie`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PoisDer;

impl DiffAlgebra for PoisDer {
    type Mono = PoisMono;

    fn name(&self) -> &'static str {
        "PoisDer"
    }

    fn supports(&self, op: Op) -> bool {
        matches!(op, Op::Mul | Op::Lie)
    }

    fn letter(&self, l: DLetter) -> LinComb<PoisMono> {
        LinComb::monomial(PoisMono(vec![LsWord::letter(l)]))
    }

    fn product(&self, op: Op, a: &PoisMono, b: &PoisMono) -> LinComb<PoisMono> {
        match op {
            Op::Mul => LinComb::monomial(a.product(b)),
            Op::Lie => {
                // Biderivation: {A1..Am, B1..Bn} = sum_ij (prod A_k, k != i)(prod B_l, l != j){Ai, Bj}.
                let mut out = LinComb::zero();
                for i in 0..a.0.len() {
                    for j in 0..b.0.len() {
                        let br = lie::bracket_words(&a.0[i], &b.0[j]);
                        if br.is_zero() {
                            continue;
                        }
                        let rest: Vec<LsWord> = a.without(i).into_iter().chain(b.without(j)).collect();
                        for (w, c) in br.iter() {
                            let mut f = rest.clone();
                            f.push(w.clone());
                            out.add_term(PoisMono::new(f), c.clone());
                        }
                    }
                }
                out
            }
            _ => panic!("PoisDer has no operation `{op}`"),
        }
    }

    fn derive(&self, a: &PoisMono) -> LinComb<PoisMono> {
        let mut out = LinComb::zero();
        for i in 0..a.0.len() {
            let rest = a.without(i);
            for (w, c) in lie::derive_word(&a.0[i]).iter() {
                let mut f = rest.clone();
                f.push(w.clone());
                out.add_term(PoisMono::new(f), c.clone());
            }
        }
        out
    }

    fn op_weight(&self, op: Op) -> i64 {
        match op {
            Op::Lie => 1,
            _ => 0,
        }
    }

    fn weight(&self, m: &PoisMono) -> i64 {
        m.weight()
    }

    fn to_term(&self, m: &PoisMono) -> Term {
        m.to_term()
    }

    fn render(&self, m: &PoisMono) -> String {
        m.to_string()
    }
}

/// Normal form of a term in `mul`, `lie` and `d`.
pub fn poisder_normal_form(t: &Term) -> Result<LinComb<PoisMono>> {
    super::normal_form(&PoisDer, t)
}

/// Parses `(pm f1 f2 ...)`, or any Poisson term, into its normal form.
pub fn parse_pois(text: &str) -> Result<LinComb<PoisMono>> {
    let sig = crate::term::Signature::of(
        &[
            (Op::Mul, crate::term::Symmetry::Symmetric),
            (Op::Lie, crate::term::Symmetry::Antisymmetric),
        ],
        true,
    );
    let trimmed = text.trim();
    if let Some(body) = trimmed.strip_prefix("(pm").and_then(|r| r.strip_suffix(')')) {
        let mut lx = crate::term::Lexer::new(body);
        let mut acc: Option<LinComb<PoisMono>> = None;
        while !lx.at_end() {
            let t = crate::term::parse_term_at(&mut lx, &sig)?;
            let nf = poisder_normal_form(&t)?;
            acc = Some(match acc {
                None => nf,
                Some(a) => super::product_poly(&PoisDer, Op::Mul, &a, &nf),
            });
        }
        return acc.ok_or_else(|| crate::error::Error::InvalidArgument("empty (pm) product".into()));
    }
    poisder_normal_form(&crate::term::parse_term(trimmed, &sig)?)
}

/// The single monomial of `p` if it is exactly `1 * m`.
pub fn as_single_monomial(p: &LinComb<PoisMono>) -> Option<PoisMono> {
    let mut it = p.iter();
    let (m, c) = it.next()?;
    (it.next().is_none() && c.is_one()).then(|| m.clone())
}
