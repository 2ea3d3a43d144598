//! The free differential BiCom algebra: two commutative associative
//! products `ast` and `odot` with `(x odot y) ast z = x odot (y ast z)`.
//!
//! A basis monomial is `l1 ast ... ast lt ast (l(t+1) odot ... odot lk)` with
//! `l1 <= ... <= lk` in the letter order on `d^w X`. It is stored as the
//! sorted letters plus the star count `t < k`; `t = 0` is a pure `odot`
//! product.

use std::fmt;

use num::One;

use crate::error::Result;
use crate::poly::{Coeff, LinComb};
use crate::term::{op, Op, Term};

use super::{DLetter, DiffAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiComMono {
    letters: Vec<DLetter>,
    stars: usize,
}

impl BiComMono {
    pub fn new(mut letters: Vec<DLetter>, stars: usize) -> BiComMono {
        assert!(stars < letters.len(), "star count must be below the length");
        letters.sort();
        BiComMono { letters, stars }
    }

    pub fn letters(&self) -> &[DLetter] {
        &self.letters
    }

    pub fn stars(&self) -> usize {
        self.stars
    }

    /// The `ast` part `x1..xt`.
    pub fn ast_part(&self) -> &[DLetter] {
        &self.letters[..self.stars]
    }

    /// The `odot` part `y1..yk`.
    pub fn odot_part(&self) -> &[DLetter] {
        &self.letters[self.stars..]
    }

    /// `wt = sum (s - 1) + t`.
    pub fn weight(&self) -> i64 {
        self.letters.iter().map(|l| l.s as i64 - 1).sum::<i64>() + self.stars as i64
    }
}

impl fmt::Display for BiComMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", BiComDer.to_term(self))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BiComDer;

impl DiffAlgebra for BiComDer {
    type Mono = BiComMono;

    fn name(&self) -> &'static str {
        "BiComDer"
    }

    fn supports(&self, op: Op) -> bool {
        matches!(op, Op::Ast | Op::Odot)
    }

    fn letter(&self, l: DLetter) -> LinComb<BiComMono> {
        LinComb::monomial(BiComMono::new(vec![l], 0))
    }

    fn product(&self, op: Op, a: &BiComMono, b: &BiComMono) -> LinComb<BiComMono> {
        let letters = a.letters.iter().chain(&b.letters).copied().collect();
        let stars = match op {
            Op::Ast => a.stars + b.stars + 1,
            Op::Odot => a.stars + b.stars,
            _ => panic!("BiComDer has no operation `{op}`"),
        };
        LinComb::monomial(BiComMono::new(letters, stars))
    }

    fn derive(&self, a: &BiComMono) -> LinComb<BiComMono> {
        let mut out = LinComb::zero();
        for i in 0..a.letters.len() {
            let mut v = a.letters.clone();
            v[i] = v[i].raised();
            out.add_term(BiComMono::new(v, a.stars), Coeff::one());
        }
        out
    }

    fn op_weight(&self, op: Op) -> i64 {
        match op {
            Op::Ast => 1,
            _ => 0,
        }
    }

    fn weight(&self, m: &BiComMono) -> i64 {
        m.weight()
    }

    /// Right-nested: `(ast x1 (ast x2 ... (odot y1 (odot y2 ...))))`.
    fn to_term(&self, m: &BiComMono) -> Term {
        let odot = m.odot_part().iter().rev().map(|l| l.to_term());
        let tail = odot.reduce(|acc, t| op(Op::Odot, t, acc)).expect("nonempty odot part");
        m.ast_part()
            .iter()
            .rev()
            .fold(tail, |acc, l| op(Op::Ast, l.to_term(), acc))
    }
}

/// Normal form of a term in `ast`, `odot` and `d`.
pub fn bicom_normal_form(t: &Term) -> Result<LinComb<BiComMono>> {
    super::normal_form(&BiComDer, t)
}
