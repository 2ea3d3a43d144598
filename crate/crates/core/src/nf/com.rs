//! The free differential commutative algebra `ComDer<X, d>`.

use crate::poly::LinComb;
use crate::term::{op, Op, Term};

use super::{DLetter, DiffAlgebra};

/// A sorted multiset of letters `d^s(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComMono(Vec<DLetter>);

impl ComMono {
    pub fn new(mut letters: Vec<DLetter>) -> ComMono {
        letters.sort();
        ComMono(letters)
    }

    pub fn letters(&self) -> &[DLetter] {
        &self.0
    }

    /// `wt = sum (s - 1)`.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|l| l.s as i64 - 1).sum()
    }
}

/// Commutative associative product `mul` with a derivation.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComDer;

impl DiffAlgebra for ComDer {
    type Mono = ComMono;

    fn name(&self) -> &'static str {
        "ComDer"
    }

    fn supports(&self, op: Op) -> bool {
        op == Op::Mul
    }

    fn letter(&self, l: DLetter) -> LinComb<ComMono> {
        LinComb::monomial(ComMono(vec![l]))
    }

    fn product(&self, _op: Op, a: &ComMono, b: &ComMono) -> LinComb<ComMono> {
        LinComb::monomial(ComMono::new(a.0.iter().chain(&b.0).copied().collect()))
    }

    fn derive(&self, a: &ComMono) -> LinComb<ComMono> {
        let mut out = LinComb::zero();
        for i in 0..a.0.len() {
            let mut v = a.0.clone();
            v[i] = v[i].raised();
            out.add_term(ComMono::new(v), crate::poly::rat(1));
        }
        out
    }

    fn op_weight(&self, _op: Op) -> i64 {
        0
    }

    fn weight(&self, m: &ComMono) -> i64 {
        m.weight()
    }

    fn to_term(&self, m: &ComMono) -> Term {
        let mut it = m.0.iter().map(|l| l.to_term());
        let first = it.next().expect("empty monomial");
        it.fold(first, |acc, t| op(Op::Mul, acc, t))
    }
}
