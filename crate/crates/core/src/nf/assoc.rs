//! The free differential associative algebra `AsDer<X, d>`: words over `d^w X`.

use crate::poly::LinComb;
use crate::term::{op, Op, Term};

use super::{DLetter, DiffAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsMono(Vec<DLetter>);

impl AsMono {
    pub fn letters(&self) -> &[DLetter] {
        &self.0
    }
}

/// Associative product `mul` with a derivation.
#[derive(Clone, Copy, Debug, Default)]
pub struct AsDer;

impl DiffAlgebra for AsDer {
    type Mono = AsMono;

    fn name(&self) -> &'static str {
        "AsDer"
    }

    fn supports(&self, op: Op) -> bool {
        op == Op::Mul
    }

    fn letter(&self, l: DLetter) -> LinComb<AsMono> {
        LinComb::monomial(AsMono(vec![l]))
    }

    fn product(&self, _op: Op, a: &AsMono, b: &AsMono) -> LinComb<AsMono> {
        LinComb::monomial(AsMono(a.0.iter().chain(&b.0).copied().collect()))
    }

    fn derive(&self, a: &AsMono) -> LinComb<AsMono> {
        let mut out = LinComb::zero();
        for i in 0..a.0.len() {
            let mut v = a.0.clone();
            v[i] = v[i].raised();
            out.add_term(AsMono(v), crate::poly::rat(1));
        }
        out
    }

    fn op_weight(&self, _op: Op) -> i64 {
        0
    }

    fn weight(&self, m: &AsMono) -> i64 {
        m.0.iter().map(|l| l.s as i64 - 1).sum()
    }

    fn to_term(&self, m: &AsMono) -> Term {
        let mut it = m.0.iter().map(|l| l.to_term());
        let first = it.next().expect("empty word");
        it.fold(first, |acc, t| op(Op::Mul, acc, t))
    }
}
