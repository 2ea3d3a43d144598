//! Normal forms in free (differential) algebras.
//!
//! Each free algebra is a [`DiffAlgebra`]: a basis of normal monomials over
//! the alphabet `d^w X`, products of basis monomials and a derivation.
//! [`normal_form`] evaluates any term bottom-up (innermost first), so the
//! output is a combination of basis monomials and evaluating a basis
//! monomial's own term returns it unchanged.

pub mod assoc;
pub mod bicom;
pub mod com;
pub mod lie;
pub mod mag;
pub mod pois;

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::poly::LinComb;
use crate::term::{Op, Term};

pub use lie::{DLetter, LieElem, LsWord};

/// A free differential algebra with a distinguished monomial basis.
pub trait DiffAlgebra {
    type Mono: Clone + Ord + Debug;

    fn name(&self) -> &'static str;

    fn supports(&self, op: Op) -> bool;

    /// The generator `d^s(x)` as a combination of basis monomials.
    fn letter(&self, l: DLetter) -> LinComb<Self::Mono>;

    fn product(&self, op: Op, a: &Self::Mono, b: &Self::Mono) -> LinComb<Self::Mono>;

    fn derive(&self, a: &Self::Mono) -> LinComb<Self::Mono>;

    /// Weight increment of an operation node.
    fn op_weight(&self, op: Op) -> i64;

    fn weight(&self, m: &Self::Mono) -> i64;

    /// A term whose normal form is exactly `m`.
    fn to_term(&self, m: &Self::Mono) -> Term;

    /// The s-expression used in reports.
    fn render(&self, m: &Self::Mono) -> String {
        self.to_term(m).to_string()
    }
}

pub fn product_poly<A: DiffAlgebra>(alg: &A, op: Op, p: &LinComb<A::Mono>, q: &LinComb<A::Mono>) -> LinComb<A::Mono> {
    p.bilinear(q, |a, b| alg.product(op, a, b))
}

pub fn derive_poly<A: DiffAlgebra>(alg: &A, p: &LinComb<A::Mono>) -> LinComb<A::Mono> {
    p.map_linear(|m| alg.derive(m))
}

/// Normal form of a term built from variables, `d` and the algebra's operations.
pub fn normal_form<A: DiffAlgebra>(alg: &A, t: &Term) -> Result<LinComb<A::Mono>> {
    if let Some(l) = DLetter::from_term(t) {
        return Ok(alg.letter(l));
    }
    match t {
        Term::D(c) => Ok(derive_poly(alg, &normal_form(alg, c)?)),
        Term::Op(op, l, r) => {
            if !alg.supports(*op) {
                return Err(Error::UnsupportedOp {
                    op: op.token().to_string(),
                    algebra: alg.name(),
                });
            }
            Ok(product_poly(alg, *op, &normal_form(alg, l)?, &normal_form(alg, r)?))
        }
        Term::Var(_) => unreachable!("variables are letters"),
    }
}

/// Normal form of a linear combination of terms.
pub fn normal_form_poly<A: DiffAlgebra>(alg: &A, p: &LinComb<Term>) -> Result<LinComb<A::Mono>> {
    p.try_map_linear(|t| normal_form(alg, t))
}

/// Weight of a term computed by the recursion `wt(x) = -1`, `wt(d u) =
/// wt(u) + 1` and operation increments from `alg`.
pub fn term_weight<A: DiffAlgebra>(alg: &A, t: &Term) -> i64 {
    match t {
        Term::Var(_) => -1,
        Term::D(c) => term_weight(alg, c) + 1,
        Term::Op(op, l, r) => term_weight(alg, l) + term_weight(alg, r) + alg.op_weight(*op),
    }
}

/// Re-normalizes a combination of basis monomials through their terms.
pub fn renormalize<A: DiffAlgebra>(alg: &A, p: &LinComb<A::Mono>) -> Result<LinComb<A::Mono>> {
    p.try_map_linear(|m| normal_form(alg, &alg.to_term(m)))
}

pub use assoc::{AsDer, AsMono};
pub use bicom::{bicom_normal_form, BiComDer, BiComMono};
pub use com::{ComDer, ComMono};
pub use lie::{canonical_bracketing, is_ls_word, lie_normal_form};
pub use mag::MagDer;
pub use pois::{poisder_normal_form, PoisDer, PoisMono};
