//! Pre-images of weight -1 differential Poisson monomials under
//! `phi: GD<X> -> PoisDer<X, d>`, `a circ b -> a d(b)`, `[a, b] -> {a, b}`.
//!
//! The construction follows the ejection recursion: for letters
//! `x1..xt` and an LS word `U` with `D(U) = t`, a pre-image of
//! `x1...xt [U]` is built by induction on `(D(U), |U|)`. Intermediate
//! results are plugged in for fresh variables, which is sound because
//! substitution commutes with `phi`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expand::{expand_pois, ExpansionMap};
use crate::linalg::{from_entries, RowSpace};
use crate::nf::lie::bracket_words;
use crate::nf::{DLetter, LsWord, PoisMono};
use crate::poly::{Coeff, LinComb, TermPoly};
use crate::term::{multilinear_monomials, Op, Signature, Symmetry, Term, Var};

fn gd_sig() -> Signature {
    Signature::of(&[(Op::Lie, Symmetry::Antisymmetric), (Op::Circ, Symmetry::None)], false)
}

thread_local! {
    static NOVIKOV: RefCell<HashMap<usize, TermPoly>> = RefCell::new(HashMap::new());
}

/// A Novikov polynomial `F_t(x1, ..., xt, x_{t+1})` in `circ` only with
/// `phi(F_t) = x1 ... xt d^t(x_{t+1})`, found by exact linear search over
/// `circ`-monomials.
pub fn novikov_preimage(t: usize) -> Result<TermPoly> {
    if let Some(hit) = NOVIKOV.with(|c| c.borrow().get(&t).cloned()) {
        return Ok(hit);
    }
    let n = t + 1;
    let y = n as u32;
    let mut factors: Vec<LsWord> = (1..=t as u32).map(|x| LsWord::letter(DLetter::new(0, x))).collect();
    factors.push(LsWord::letter(DLetter::new(t as u32, y)));
    let target = PoisMono::new(factors);

    let sig = Signature::of(&[(Op::Circ, Symmetry::None)], false);
    let map = ExpansionMap::gd();
    let mut columns: HashMap<PoisMono, usize> = HashMap::new();
    let mut coords = |p: &LinComb<PoisMono>| {
        let entries: Vec<(usize, Coeff)> = p
            .iter()
            .map(|(m, c)| {
                let k = columns.len();
                (*columns.entry(m.clone()).or_insert(k), c.clone())
            })
            .collect();
        from_entries(entries)
    };
    let target_vec = coords(&LinComb::monomial(target));
    let mut rs = RowSpace::tracked();
    let mut used: Vec<Term> = Vec::new();
    for m in multilinear_monomials(&sig, n)? {
        let img = expand_pois(&TermPoly::monomial(m.clone()), &map)?;
        rs.insert(coords(&img));
        used.push(m);
        if let Some(combo) = rs.express(&target_vec) {
            let f: TermPoly = combo.into_iter().map(|(i, c)| (used[i].clone(), c)).collect();
            let f = f.canonicalize(&gd_sig());
            NOVIKOV.with(|c| c.borrow_mut().insert(t, f.clone()));
            return Ok(f);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no Novikov pre-image of x1...x{t} d^{t}(y)"
    )))
}

struct Builder {
    sig: Signature,
    next: u32,
}

impl Builder {
    fn fresh(&mut self) -> Var {
        self.next += 1;
        Var(self.next)
    }

    fn lie_term(w: &LsWord) -> TermPoly {
        TermPoly::from_term(&w.bracketing(), &gd_sig())
    }

    /// Pre-image of `xs[0] ... xs[t-1] [u]` with `D(u) = t`.
    fn ejection(&mut self, xs: &[Var], u: &LsWord) -> Result<TermPoly> {
        let t = xs.len();
        debug_assert_eq!(u.d_count() as usize, t);
        if t == 0 {
            return Ok(Builder::lie_term(u));
        }
        if u.len() == 1 {
            let l = u.letters()[0];
            let f = novikov_preimage(t)?;
            let rename = |v: Var| if (v.0 as usize) <= t { xs[v.0 as usize - 1] } else { l.x };
            return Ok(substitute_vars(&f, &rename, &self.sig));
        }
        let (u1, u2) = u.standard_factorization().expect("length at least 2");
        let i = u1.d_count() as usize;
        let (head, tail) = xs.split_at(i);

        // x_{i+1}...x_t {x1...xi [u1], [u2]}, with z standing for x1...xi [u1].
        let p = self.ejection(head, &u1)?;
        let z = self.fresh();
        let mut first = TermPoly::zero();
        for (w, c) in bracket_words(&LsWord::letter(DLetter { s: 0, x: z }), &u2).iter() {
            first.add_scaled(&self.ejection(tail, w)?, c);
        }
        let mut out = first.substitute_var(z, &p, &self.sig);

        // minus sum_k (x1..^xk..xi [u1]) (x_{i+1}...x_t {xk, [u2]}).
        for k in 0..i {
            let mut pk = TermPoly::zero();
            for (w, c) in bracket_words(&LsWord::letter(DLetter { s: 0, x: head[k] }), &u2).iter() {
                pk.add_scaled(&self.ejection(tail, w)?, c);
            }
            let z = self.fresh();
            let mut rest = vec![z];
            rest.extend(head.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| *v));
            let f = self.ejection(&rest, &u1)?;
            out -= &f.substitute_var(z, &pk, &self.sig);
        }
        Ok(out)
    }

    /// Pre-image of a weight -1 basis monomial by induction on `D(a)`.
    fn monomial(&mut self, a: &PoisMono) -> Result<TermPoly> {
        let factors = a.factors();
        let Some(j) = factors.iter().position(|w| w.d_count() > 0) else {
            if factors.len() != 1 {
                return Err(Error::WrongWeight(a.weight()));
            }
            return Ok(Builder::lie_term(&factors[0]));
        };
        let k = factors[j].d_count() as usize;
        let plain: Vec<usize> = (0..factors.len())
            .filter(|&i| factors[i].d_count() == 0)
            .take(k)
            .collect();
        if plain.len() < k {
            return Err(Error::WrongWeight(a.weight()));
        }
        // Undifferentiated factors become letters; Lie words get fresh names.
        let mut xs = Vec::new();
        let mut subs = Vec::new();
        for &i in &plain {
            let w = &factors[i];
            if w.len() == 1 {
                xs.push(w.letters()[0].x);
            } else {
                let v = self.fresh();
                xs.push(v);
                subs.push((v, Builder::lie_term(w)));
            }
        }
        let mut f = self.ejection(&xs, &factors[j])?;
        for (v, q) in subs {
            f = f.substitute_var(v, &q, &self.sig);
        }
        let rest: Vec<LsWord> = (0..factors.len())
            .filter(|i| *i != j && !plain.contains(i))
            .map(|i| factors[i].clone())
            .collect();
        if rest.is_empty() {
            return Ok(f);
        }
        let y = self.fresh();
        let mut b = rest;
        b.push(LsWord::letter(DLetter { s: 0, x: y }));
        let g = self.monomial(&PoisMono::new(b))?;
        Ok(g.substitute_var(y, &f, &self.sig))
    }
}

fn substitute_vars(p: &TermPoly, f: &impl Fn(Var) -> Var, sig: &Signature) -> TermPoly {
    p.relabel(f, sig)
}

/// A GD polynomial `f` in `lie` and `circ` with `phi(f) = a`, checked by
/// expanding `f` before returning.
pub fn gd_preimage(a: &PoisMono) -> Result<TermPoly> {
    if a.weight() != -1 {
        return Err(Error::WrongWeight(a.weight()));
    }
    let top = a
        .factors()
        .iter()
        .flat_map(|w| w.letters().iter().map(|l| l.x.0))
        .max()
        .unwrap_or(0);
    let mut b = Builder {
        sig: gd_sig(),
        next: top.max(1) + 1000,
    };
    let f = b.monomial(a)?;
    let back = expand_pois(&f, &ExpansionMap::gd())?;
    if back != LinComb::monomial(a.clone()) {
        return Err(Error::Internal(format!("pre-image of {a} failed verification")));
    }
    Ok(f)
}

/// Linear extension of [`gd_preimage`] to a weight -1 combination.
pub fn gd_preimage_poly(a: &LinComb<PoisMono>) -> Result<TermPoly> {
    let mut out = TermPoly::zero();
    for (m, c) in a.iter() {
        out.add_scaled(&gd_preimage(m)?, c);
    }
    Ok(out)
}
