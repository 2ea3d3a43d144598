//! Free differential algebras over an arbitrary signature with no
//! identities beyond argument symmetry. Monomials are canonical terms whose
//! leaves are letters `d^s(x)`.

use num::One;

use crate::poly::{Coeff, LinComb};
use crate::term::{op, Op, Signature, Term};

use super::{DLetter, DiffAlgebra};

#[derive(Clone, Debug)]
pub struct MagDer {
    sig: Signature,
    /// When set to `N`, letters `d^s(x)` with `s >= N` vanish.
    nilpotency: Option<u32>,
}

impl MagDer {
    pub fn new(sig: Signature) -> MagDer {
        MagDer {
            sig: sig.with_derivation(true),
            nilpotency: None,
        }
    }

    /// The quotient by `d^N(x) = 0` on generators.
    pub fn truncated(sig: Signature, n: u32) -> MagDer {
        MagDer {
            sig: sig.with_derivation(true),
            nilpotency: Some(n),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn alive(&self, l: DLetter) -> bool {
        self.nilpotency.is_none_or(|n| l.s < n)
    }

    fn push(&self, out: &mut LinComb<Term>, t: &Term, c: Coeff) {
        out.add_canonical(t, c, &self.sig);
    }
}

/// Raises the `k`-th leaf (in left-to-right order) by one derivation.
fn raise_leaf(t: &Term, k: &mut usize) -> Option<Term> {
    if let Some(l) = DLetter::from_term(t) {
        if *k == 0 {
            *k = usize::MAX;
            return Some(l.raised().to_term());
        }
        *k -= 1;
        return None;
    }
    match t {
        Term::Op(o, l, r) => {
            if let Some(nl) = raise_leaf(l, k) {
                return Some(op(*o, nl, (**r).clone()));
            }
            raise_leaf(r, k).map(|nr| op(*o, (**l).clone(), nr))
        }
        _ => None,
    }
}

fn leaf_letters(t: &Term, out: &mut Vec<DLetter>) {
    if let Some(l) = DLetter::from_term(t) {
        out.push(l);
        return;
    }
    if let Term::Op(_, l, r) = t {
        leaf_letters(l, out);
        leaf_letters(r, out);
    }
}

impl DiffAlgebra for MagDer {
    type Mono = Term;

    fn name(&self) -> &'static str {
        "free magmatic"
    }

    fn supports(&self, op: Op) -> bool {
        self.sig.contains(op)
    }

    fn letter(&self, l: DLetter) -> LinComb<Term> {
        if self.alive(l) {
            LinComb::monomial(l.to_term())
        } else {
            LinComb::zero()
        }
    }

    fn product(&self, o: Op, a: &Term, b: &Term) -> LinComb<Term> {
        let mut out = LinComb::zero();
        self.push(&mut out, &op(o, a.clone(), b.clone()), Coeff::one());
        out
    }

    fn derive(&self, a: &Term) -> LinComb<Term> {
        let mut letters = Vec::new();
        leaf_letters(a, &mut letters);
        let mut out = LinComb::zero();
        for (i, l) in letters.iter().enumerate() {
            if !self.alive(l.raised()) {
                continue;
            }
            let mut k = i;
            let t = raise_leaf(a, &mut k).expect("leaf index in range");
            self.push(&mut out, &t, Coeff::one());
        }
        out
    }

    fn op_weight(&self, _op: Op) -> i64 {
        0
    }

    fn weight(&self, m: &Term) -> i64 {
        let mut letters = Vec::new();
        leaf_letters(m, &mut letters);
        letters.iter().map(|l| l.s as i64 - 1).sum()
    }

    fn to_term(&self, m: &Term) -> Term {
        m.clone()
    }
}
