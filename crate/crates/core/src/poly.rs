//! Exact-rational linear combinations and polynomials of terms.

use std::collections::btree_map;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::term::{parse_term_at, Lexer, Signature, Term, Var};

pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, m: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

/// Formats a coefficient as `n` or `n/m`.
pub fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_coeff(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((n, m)) => {
            let n: BigInt = n.parse().ok()?;
            let m: BigInt = m.parse().ok()?;
            if m.is_zero() {
                None
            } else {
                Some(BigRational::new(n, m))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// A finite formal sum with nonzero exact coefficients, keyed by monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<M: Ord> {
    terms: BTreeMap<M, Coeff>,
}

impl<M: Ord> Default for LinComb<M> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<M: Ord + Clone> LinComb<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: M) -> Self {
        Self::term(m, Coeff::one())
    }

    pub fn term(m: M, c: Coeff) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn add_term(&mut self, m: M, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, M, Coeff> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &M) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear<N: Ord + Clone>(&self, mut f: impl FnMut(&M) -> LinComb<N>) -> LinComb<N> {
        let mut out = LinComb::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Same as [`map_linear`](Self::map_linear) for fallible maps.
    pub fn try_map_linear<N: Ord + Clone>(&self, mut f: impl FnMut(&M) -> Result<LinComb<N>>) -> Result<LinComb<N>> {
        let mut out = LinComb::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m)?, c);
        }
        Ok(out)
    }

    /// Bilinear extension of a map on pairs of monomials.
    pub fn bilinear<N: Ord + Clone, P: Ord + Clone>(
        &self,
        other: &LinComb<N>,
        mut f: impl FnMut(&M, &N) -> LinComb<P>,
    ) -> LinComb<P> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    }
}

impl<M: Ord> IntoIterator for LinComb<M> {
    type Item = (M, Coeff);
    type IntoIter = btree_map::IntoIter<M, Coeff>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, M: Ord> IntoIterator for &'a LinComb<M> {
    type Item = (&'a M, &'a Coeff);
    type IntoIter = btree_map::Iter<'a, M, Coeff>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<M: Ord + Clone> FromIterator<(M, Coeff)> for LinComb<M> {
    fn from_iter<I: IntoIterator<Item = (M, Coeff)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }
}

impl<M: Ord + Clone> AddAssign<&LinComb<M>> for LinComb<M> {
    fn add_assign(&mut self, rhs: &LinComb<M>) {
        self.add_scaled(rhs, &Coeff::one());
    }
}

impl<M: Ord + Clone> SubAssign<&LinComb<M>> for LinComb<M> {
    fn sub_assign(&mut self, rhs: &LinComb<M>) {
        self.add_scaled(rhs, &-Coeff::one());
    }
}

impl<M: Ord + Clone> Add for LinComb<M> {
    type Output = LinComb<M>;
    fn add(mut self, rhs: LinComb<M>) -> LinComb<M> {
        self += &rhs;
        self
    }
}

impl<M: Ord + Clone> Sub for LinComb<M> {
    type Output = LinComb<M>;
    fn sub(mut self, rhs: LinComb<M>) -> LinComb<M> {
        self -= &rhs;
        self
    }
}

impl<M: Ord + Clone> Neg for LinComb<M> {
    type Output = LinComb<M>;
    fn neg(self) -> LinComb<M> {
        self.scale(&-Coeff::one())
    }
}

impl<M: Ord + fmt::Debug> fmt::Debug for LinComb<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m, fmt_coeff(c))))
            .finish()
    }
}

/// Polynomials in terms: each key is a canonical term.
pub type TermPoly = LinComb<Term>;

impl LinComb<Term> {
    /// Adds `c * t` after canonicalizing `t`.
    pub fn add_canonical(&mut self, t: &Term, c: Coeff, sig: &Signature) {
        if let Some((s, t)) = t.canonical(sig) {
            let c = if s < 0 { -c } else { c };
            self.add_term(t, c);
        }
    }

    pub fn from_term(t: &Term, sig: &Signature) -> TermPoly {
        let mut out = TermPoly::zero();
        out.add_canonical(t, Coeff::one(), sig);
        out
    }

    /// Re-canonicalizes every term under `sig`.
    pub fn canonicalize(&self, sig: &Signature) -> TermPoly {
        let mut out = TermPoly::zero();
        for (t, c) in self.iter() {
            out.add_canonical(t, c.clone(), sig);
        }
        out
    }

    /// Common degree of all terms, or `None` if empty or mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.monomials().map(|t| t.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.monomials().flat_map(|t| t.leaves()).collect()
    }

    /// True when all terms use each of `x1..xn` exactly once.
    pub fn is_multilinear_in(&self, n: usize) -> bool {
        let want: Vec<Var> = (1..=n as u32).map(Var).collect();
        self.monomials().all(|t| {
            let mut l = t.leaves();
            l.sort();
            l == want
        })
    }

    /// Errors unless every term is multilinear in one common variable set.
    pub fn check_multilinear(&self) -> Result<()> {
        let mut sets = self.monomials().map(|t| {
            let mut l = t.leaves();
            l.sort();
            l
        });
        let first = match sets.next() {
            Some(s) => s,
            None => return Ok(()),
        };
        if first.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotMultilinear("a variable repeats".into()));
        }
        if sets.any(|s| s != first) {
            return Err(Error::NotMultilinear("terms use different variables".into()));
        }
        Ok(())
    }

    pub fn relabel(&self, f: &impl Fn(Var) -> Var, sig: &Signature) -> TermPoly {
        let mut out = TermPoly::zero();
        for (t, c) in self.iter() {
            out.add_canonical(&t.relabel(f), c.clone(), sig);
        }
        out
    }

    /// Substitutes the polynomial `q` for the variable `z` (linear in each
    /// occurrence; intended for variables that occur once per term).
    pub fn substitute_var(&self, z: Var, q: &TermPoly, sig: &Signature) -> TermPoly {
        let mut out = TermPoly::zero();
        for (t, c) in self.iter() {
            if !t.leaves().contains(&z) {
                out.add_canonical(t, c.clone(), sig);
                continue;
            }
            for (s, e) in q.iter() {
                let mut a = BTreeMap::new();
                a.insert(z, s.clone());
                out.add_canonical(&t.substitute_partial(&a), c * e, sig);
            }
        }
        out
    }

    /// Occurrence counts of operations when all terms agree, else `None`.
    pub fn op_multidegree(&self) -> Option<BTreeMap<crate::term::Op, usize>> {
        let mut it = self.monomials().map(|t| t.op_counts());
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }
}

impl fmt::Display for LinComb<Term> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} {}", fmt_coeff(c), t)?;
        }
        Ok(())
    }
}

/// Parses `coeff term [+ coeff term ...]`. Coefficients may be omitted
/// (meaning 1) and `-` may separate terms. `0` is the zero polynomial.
pub fn parse_poly(text: &str, sig: &Signature) -> Result<TermPoly> {
    let mut lx = Lexer::new(text);
    let mut out = TermPoly::zero();
    if text.trim() == "0" {
        return Ok(out);
    }
    let mut first = true;
    loop {
        if lx.at_end() {
            if first {
                return Err(lx.err("empty polynomial"));
            }
            break;
        }
        let mut negate = false;
        match lx.peek() {
            Some('+') => {
                lx.pos += 1;
            }
            Some('-') => {
                lx.pos += 1;
                negate = true;
            }
            _ if !first => return Err(lx.err("expected `+` or `-`")),
            _ => {}
        }
        lx.skip_ws();
        let mut c = Coeff::one();
        if let Some(ch) = lx.peek() {
            if ch.is_ascii_digit() || ch == '-' {
                let start = lx.pos;
                lx.pos += 1;
                while let Some(ch) = lx.peek() {
                    if ch.is_ascii_digit() || ch == '/' {
                        lx.pos += 1;
                    } else {
                        break;
                    }
                }
                let tok = &text[start..lx.pos];
                c = parse_coeff(tok).ok_or_else(|| Error::Syntax {
                    pos: start,
                    msg: format!("invalid coefficient `{tok}`"),
                })?;
                lx.skip_ws();
                if lx.peek() == Some('*') {
                    lx.pos += 1;
                }
            }
        }
        let t = parse_term_at(&mut lx, sig)?;
        if negate {
            c = -c;
        }
        out.add_canonical(&t, c, sig);
        first = false;
    }
    Ok(out)
}
