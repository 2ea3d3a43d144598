//! The Hurwitz-type embedding of a differential algebra `A` into
//! `A (x) H`, where `H` has basis `x^(0), x^(1), ...` with
//!
//! ```text
//! x^(n) star x^(m) = C(n+m-1, m) x^(n+m-1)   (0 when n = 0)
//! x^(n) ast  x^(m) = C(n+m, m)   x^(n+m)
//! ```
//!
//! and `Phi(a) = sum_s d^s(a) (x) x^(s)`. On `A (x) H` the operations are
//! `(a f) succ (b g) = ab (f star g)`, `(a f) prec (b g) = ab (g star f)` and
//! `(a f) . (b g) = ab (f ast g)`. The check verifies that `Phi` turns the
//! derived operations `a succ b = d(a) b`, `a prec b = a d(b)` and the
//! product into these. `A` is the free differential magmatic algebra
//! truncated by `d^N(x) = 0` on generators.

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::nf::{derive_poly, DLetter, DiffAlgebra, MagDer};
use crate::poly::{Coeff, LinComb};
use crate::term::{Op, Signature, Symmetry, Term, Var};

use super::{expand_in, ExpansionMap, Target};

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Structure constants of `H` up to a truncation level.
#[derive(Clone, Copy, Debug)]
pub struct HurwitzAlgebra {
    pub level: usize,
}

impl HurwitzAlgebra {
    pub fn new(level: usize) -> HurwitzAlgebra {
        HurwitzAlgebra { level }
    }

    /// `x^(n) star x^(m)`; `None` when the product is zero.
    pub fn star(&self, n: usize, m: usize) -> Option<(Coeff, usize)> {
        if n == 0 {
            return None;
        }
        Some((BigRational::from_integer(binom(n + m - 1, m)), n + m - 1))
    }

    /// `x^(n) ast x^(m)`.
    pub fn ast(&self, n: usize, m: usize) -> Option<(Coeff, usize)> {
        Some((BigRational::from_integer(binom(n + m, m)), n + m))
    }
}

type Hat = LinComb<(Term, usize)>;

#[derive(Clone, Debug, PartialEq)]
pub enum HurwitzVerdict {
    Holds,
    Mismatch { term: String, lhs: String, rhs: String },
}

fn render(h: &Hat) -> String {
    if h.is_zero() {
        return "0".into();
    }
    h.iter()
        .map(|((t, n), c)| format!("{} {} (x) x^({n})", crate::poly::fmt_coeff(c), t))
        .collect::<Vec<_>>()
        .join(" + ")
}

struct Checker {
    alg: MagDer,
    h: HurwitzAlgebra,
}

impl Checker {
    fn phi(&self, a: &LinComb<Term>) -> Hat {
        let mut out = Hat::zero();
        let mut cur = a.clone();
        let mut s = 0usize;
        while !cur.is_zero() {
            for (t, c) in cur.iter() {
                out.add_term((t.clone(), s), c.clone());
            }
            cur = derive_poly(&self.alg, &cur);
            s += 1;
        }
        out
    }

    fn hat_product(&self, op: Op, p: &Hat, q: &Hat) -> Result<Hat> {
        let mut out = Hat::zero();
        for ((a, n), ca) in p.iter() {
            for ((b, m), cb) in q.iter() {
                let ab = self.alg.product(Op::Mul, a, b);
                if ab.is_zero() {
                    continue;
                }
                let coef = match op {
                    Op::Succ => self.h.star(*n, *m),
                    Op::Prec => self.h.star(*m, *n),
                    Op::Mul => self.h.ast(*n, *m),
                    _ => return Err(Error::UnmappedOp(op.token().to_string())),
                };
                let Some((k, level)) = coef else { continue };
                if k.is_zero() {
                    continue;
                }
                if level > self.h.level {
                    return Err(Error::TruncationTooSmall(format!(
                        "a product reaches x^({level}) above level {}",
                        self.h.level
                    )));
                }
                for (t, c) in ab.iter() {
                    out.add_term((t.clone(), level), c * ca * cb * &k);
                }
            }
        }
        Ok(out)
    }

    fn eval_hat(&self, t: &Term) -> Result<Hat> {
        match t {
            Term::Var(v) => Ok(self.phi(&self.alg.letter(DLetter { s: 0, x: *v }))),
            Term::Op(o, l, r) => self.hat_product(*o, &self.eval_hat(l)?, &self.eval_hat(r)?),
            Term::D(_) => Err(Error::InvalidArgument("sample terms may not contain d".into())),
        }
    }
}

/// Verifies `Phi(f(a, b, ...)) = f(Phi a, Phi b, ...)` for each sample term.
pub fn hurwitz_phi_check(n_vars: usize, truncation: u32, sample_terms: &[Term]) -> Result<HurwitzVerdict> {
    let sig = Signature::of(&[(Op::Mul, Symmetry::None)], true);
    let map = ExpansionMap::generalized_derived(Target::Magmatic(sig.clone()));
    let max_deg = sample_terms.iter().map(Term::degree).max().unwrap_or(1);
    let checker = Checker {
        alg: MagDer::truncated(sig, truncation),
        h: HurwitzAlgebra::new(max_deg * truncation.saturating_sub(1) as usize),
    };
    for t in sample_terms {
        for (o, _) in t.op_counts() {
            if !matches!(o, Op::Prec | Op::Succ | Op::Mul) {
                return Err(Error::UnmappedOp(o.token().to_string()));
            }
        }
        if let Some(v) = t.leaves().into_iter().find(|v| v.0 as usize > n_vars) {
            return Err(Error::InvalidArgument(format!("{v} exceeds the {n_vars} variables")));
        }
        let derivations = t
            .op_counts()
            .iter()
            .filter(|(o, _)| **o != Op::Mul)
            .map(|(_, n)| *n)
            .sum::<usize>();
        if (truncation as usize) < derivations + 1 {
            return Err(Error::TruncationTooSmall(format!(
                "N = {truncation} but `{t}` applies d up to {derivations} times"
            )));
        }
        let env = |v: Var| checker.alg.letter(DLetter { s: 0, x: v });
        let image = expand_in(&checker.alg, &map, t, &env)?;
        let lhs = checker.phi(&image);
        let rhs = checker.eval_hat(t)?;
        if lhs != rhs {
            return Ok(HurwitzVerdict::Mismatch {
                term: t.to_string(),
                lhs: render(&lhs),
                rhs: render(&rhs),
            });
        }
    }
    Ok(HurwitzVerdict::Holds)
}
