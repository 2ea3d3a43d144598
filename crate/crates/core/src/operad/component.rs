//! Multilinear components `P(n)` of a quadratically presented operad.
//!
//! The free component is spanned by canonical tree monomials of degree `n`.
//! Consequences of the relations at degree `n <= 4` are generated by the
//! symmetric group and by one-step compositions with generators, then
//! reduced to an echelon basis.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{from_entries, RowSpace, SparseVec};
use crate::perm::{act_permutation, Permutation};
use crate::poly::TermPoly;
use crate::term::{canonical_monomials, op, var, Op, Signature, Symmetry, Term, Var};

use super::Presentation;

/// A generator of the degree-2 component: an operation, possibly with its
/// arguments swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EGen {
    pub op: Op,
    pub transposed: bool,
}

impl EGen {
    pub fn apply(self, a: Term, b: Term) -> Term {
        if self.transposed {
            op(self.op, b, a)
        } else {
            op(self.op, a, b)
        }
    }

    pub fn label(self) -> String {
        if self.transposed {
            format!("{}^t", self.op)
        } else {
            self.op.to_string()
        }
    }
}

/// Basis of the degree-2 component: each operation, and for operations
/// without symmetry also its transpose.
pub fn e_basis(sig: &Signature) -> Vec<EGen> {
    let mut out = Vec::new();
    for (o, s) in sig.ops() {
        out.push(EGen {
            op: *o,
            transposed: false,
        });
        if *s == Symmetry::None {
            out.push(EGen {
                op: *o,
                transposed: true,
            });
        }
    }
    out
}

/// Coordinates on the canonical monomials of one degree.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    pub degree: usize,
    pub basis: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl MonomialIndex {
    pub fn new(sig: &Signature, n: usize, multidegree: Option<&BTreeMap<Op, usize>>) -> Result<MonomialIndex> {
        let basis: Vec<Term> = canonical_monomials(sig, n)?
            .into_iter()
            .filter(|t| multidegree.is_none_or(|m| &t.op_counts() == m))
            .collect();
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(MonomialIndex {
            degree: n,
            basis,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a canonical polynomial.
    pub fn vector(&self, p: &TermPoly) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(p.len());
        for (t, c) in p.iter() {
            let i = self
                .position(t)
                .ok_or_else(|| Error::InvalidArgument(format!("monomial `{t}` is outside the component basis")))?;
            entries.push((i, c.clone()));
        }
        Ok(from_entries(entries))
    }

    pub fn poly(&self, v: &SparseVec) -> TermPoly {
        v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())).collect()
    }
}

/// A labeled consequence of the relations.
#[derive(Clone, Debug)]
pub struct Consequence {
    pub label: String,
    pub poly: TermPoly,
}

/// `r` with `x_i` replaced by `g(x_i, x_{n+1})`.
fn compose_slot(r: &TermPoly, i: u32, g: EGen, fresh: u32, sig: &Signature) -> TermPoly {
    let q = TermPoly::from_term(&g.apply(var(i), var(fresh)), sig);
    r.substitute_var(Var(i), &q, sig)
}

/// `g(r, x_{n+1})`.
fn compose_root(r: &TermPoly, g: EGen, fresh: u32, sig: &Signature) -> TermPoly {
    let mut out = TermPoly::zero();
    for (t, c) in r.iter() {
        out.add_canonical(&g.apply(t.clone(), var(fresh)), c.clone(), sig);
    }
    out
}

fn orbit(label: &str, r: &TermPoly, n: usize, sig: &Signature, out: &mut Vec<Consequence>) -> Result<()> {
    for p in Permutation::all(n) {
        let poly = act_permutation(r, &p, sig)?;
        if !poly.is_zero() {
            out.push(Consequence {
                label: format!("{p}.{label}"),
                poly,
            });
        }
    }
    Ok(())
}

/// Generators of the degree-`n` consequences of `pres` plus `extra`
/// relations, optionally restricted to one operation multidegree.
///
/// Supported for `n <= 4` with relations of degree 3 and 4.
pub fn consequences(
    pres: &Presentation,
    extra: &[(String, TermPoly)],
    n: usize,
    multidegree: Option<&BTreeMap<Op, usize>>,
) -> Result<Vec<Consequence>> {
    if n > 4 {
        return Err(Error::UnsupportedDegree(n));
    }
    let sig = &pres.sig;
    let mut rels: Vec<(String, TermPoly)> = pres
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| (format!("r{}", i + 1), r.clone()))
        .collect();
    rels.extend(extra.iter().cloned());
    for (name, r) in &rels {
        r.check_multilinear()?;
        if multidegree.is_some() && r.op_multidegree().is_none() {
            return Err(Error::NotHomogeneous(name.clone()));
        }
        if !r.is_multilinear_in(r.degree().unwrap_or(0)) {
            return Err(Error::NotMultilinear(format!("relation {name} must use x1..xk")));
        }
    }
    let keep = |p: &TermPoly| multidegree.is_none_or(|m| p.op_multidegree().as_ref() == Some(m));
    let mut out = Vec::new();
    for (name, r) in &rels {
        match r.degree() {
            Some(d) if d == n => {
                if keep(r) {
                    orbit(name, r, n, sig, &mut out)?;
                }
            }
            Some(3) if n == 4 => {
                for g in e_basis(sig) {
                    for i in 1..=3u32 {
                        let c = compose_slot(r, i, g, 4, sig);
                        if !c.is_zero() && keep(&c) {
                            orbit(&format!("{name}o{i}{}", g.label()), &c, 4, sig, &mut out)?;
                        }
                    }
                    let c = compose_root(r, g, 4, sig);
                    if !c.is_zero() && keep(&c) {
                        orbit(&format!("{}({name},x4)", g.label()), &c, 4, sig, &mut out)?;
                    }
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// The degree-`n` component: free basis, consequence subspace and quotient
/// dimension.
#[derive(Clone, Debug)]
pub struct Component {
    pub index: MonomialIndex,
    pub space: RowSpace,
    pub generators: Vec<Consequence>,
}

impl Component {
    pub fn build(
        pres: &Presentation,
        extra: &[(String, TermPoly)],
        n: usize,
        multidegree: Option<&BTreeMap<Op, usize>>,
        tracked: bool,
    ) -> Result<Component> {
        let index = MonomialIndex::new(&pres.sig, n, multidegree)?;
        let generators = consequences(pres, extra, n, multidegree)?;
        let mut space = if tracked { RowSpace::tracked() } else { RowSpace::new() };
        for g in &generators {
            space.insert(index.vector(&g.poly)?);
        }
        Ok(Component {
            index,
            space,
            generators,
        })
    }

    pub fn free_dim(&self) -> usize {
        self.index.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.space.rank()
    }

    pub fn dim(&self) -> usize {
        self.free_dim() - self.relation_rank()
    }

    /// Normal monomials: basis elements that are not pivots of the
    /// consequence space.
    pub fn normal_monomials(&self) -> Vec<&Term> {
        (0..self.index.len())
            .filter(|i| !self.space.is_pivot(*i))
            .map(|i| &self.index.basis[i])
            .collect()
    }

    /// Residue of `p` modulo the consequences, in normal monomials.
    pub fn reduce(&self, p: &TermPoly) -> Result<TermPoly> {
        let v = self.index.vector(p)?;
        Ok(self.index.poly(&self.space.reduce(&v)))
    }
}

/// `dim P(n)` for `n <= 4`.
pub fn component_dim(pres: &Presentation, n: usize) -> Result<usize> {
    Ok(Component::build(pres, &[], n, None, false)?.dim())
}

/// The `S_n`-orbit of a list of multilinear degree-`n` polynomials as vectors.
pub fn orbit_vectors(index: &MonomialIndex, polys: &[TermPoly], sig: &Signature) -> Result<Vec<SparseVec>> {
    let mut out = Vec::new();
    for p in polys {
        for s in Permutation::all(index.degree) {
            out.push(index.vector(&act_permutation(p, &s, sig)?)?);
        }
    }
    Ok(out)
}

/// True when the `S_n`-submodules generated by `a` and `b` coincide.
pub fn span_equal(sig: &Signature, n: usize, a: &[TermPoly], b: &[TermPoly]) -> Result<bool> {
    let index = MonomialIndex::new(sig, n, None)?;
    let space = |v: Vec<SparseVec>| {
        let mut rs = RowSpace::new();
        for x in v {
            rs.insert(x);
        }
        rs
    };
    let va = orbit_vectors(&index, a, sig)?;
    let vb = orbit_vectors(&index, b, sig)?;
    let sa = space(va.clone());
    let sb = space(vb.clone());
    Ok(vb.iter().all(|v| sa.contains(v)) && va.iter().all(|v| sb.contains(v)))
}
