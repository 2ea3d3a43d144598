//! T-ideal membership at degree `n <= 4` with checkable certificates.
//!
//! Over a field of characteristic 0 a multilinear polynomial is an
//! identity of a variety iff it lies in the degree-`n` multilinear slice of
//! the T-ideal, which is the consequence subspace computed here.

use std::collections::BTreeMap;

use num::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{dot, SparseVec};
use crate::poly::{fmt_coeff, Coeff, TermPoly};
use crate::term::{Op, Term};

use super::component::Component;
use super::Presentation;

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `candidate = sum c_i g_i` over labeled consequences.
    Member {
        combination: Vec<(String, Coeff, TermPoly)>,
    },
    /// A functional on the monomial basis vanishing on every consequence but
    /// not on the candidate.
    NonMember {
        functional: Vec<(Term, Coeff)>,
        value: Coeff,
    },
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub degree: usize,
    pub multidegree: Option<BTreeMap<Op, usize>>,
    pub member: bool,
    pub basis_size: usize,
    pub generators: usize,
    pub rank: usize,
    pub certificate: Certificate,
    /// The certificate was re-verified independently of the elimination.
    pub verified: bool,
}

impl MembershipReport {
    pub fn to_json(&self) -> Value {
        let cert = match &self.certificate {
            Certificate::Member { combination } => json!({
                "kind": "combination",
                "terms": combination.iter().map(|(l, c, p)| json!({
                    "generator": l,
                    "coefficient": fmt_coeff(c),
                    "polynomial": p.to_string(),
                })).collect::<Vec<_>>(),
            }),
            Certificate::NonMember { functional, value } => json!({
                "kind": "separating-functional",
                "functional": functional.iter().map(|(t, c)| json!({
                    "monomial": t.to_string(),
                    "coefficient": fmt_coeff(c),
                })).collect::<Vec<_>>(),
                "value-on-candidate": fmt_coeff(value),
            }),
        };
        json!({
            "degree": self.degree,
            "multidegree": self.multidegree.as_ref().map(|m| m.iter().map(|(o, k)| (o.token().to_string(), *k)).collect::<BTreeMap<_, _>>()),
            "member": self.member,
            "basis-size": self.basis_size,
            "generators": self.generators,
            "rank": self.rank,
            "certificate": cert,
            "certificate-verified": self.verified,
            "note": "in characteristic 0 a multilinear polynomial is an identity iff it lies in the multilinear slice of the T-ideal",
        })
    }
}

/// Decides whether `candidate` follows from `pres` plus the `S_n`-closure of
/// `extra` at degree `n`. When every relation is homogeneous in the
/// operations the computation is restricted to the candidate's multidegree.
pub fn tideal_membership(
    candidate: &TermPoly,
    pres: &Presentation,
    extra: &[(String, TermPoly)],
    n: usize,
) -> Result<MembershipReport> {
    let candidate = candidate.canonicalize(&pres.sig);
    candidate.check_multilinear()?;
    match candidate.degree() {
        Some(d) if d != n => return Err(Error::DegreeMismatch { expected: n, found: d }),
        _ => {}
    }
    if !candidate.is_zero() && !candidate.is_multilinear_in(n) {
        return Err(Error::NotMultilinear(format!("candidate must use x1..x{n}")));
    }
    let homogeneous = pres
        .relations
        .iter()
        .chain(extra.iter().map(|(_, r)| r))
        .all(|r| r.op_multidegree().is_some());
    let multidegree = if homogeneous { candidate.op_multidegree() } else { None };
    if !candidate.is_zero() && homogeneous && multidegree.is_none() {
        // Split into homogeneous parts: member iff every part is.
        return Err(Error::NotHomogeneous("candidate mixes operation multidegrees".into()));
    }
    let comp = Component::build(pres, extra, n, multidegree.as_ref(), true)?;
    let v = comp.index.vector(&candidate)?;
    let (certificate, verified) = match comp.space.express(&v) {
        Some(combo) => {
            let combination: Vec<(String, Coeff, TermPoly)> = combo
                .into_iter()
                .map(|(i, c)| (comp.generators[i].label.clone(), c, comp.generators[i].poly.clone()))
                .collect();
            let mut sum = TermPoly::zero();
            for (_, c, p) in &combination {
                sum.add_scaled(p, c);
            }
            let ok = sum == candidate;
            (Certificate::Member { combination }, ok)
        }
        None => {
            let f = comp
                .space
                .separating_functional(&v)
                .ok_or_else(|| Error::Internal("no separating functional for a non-member".into()))?;
            let ok = verify_functional(&comp, &f, &v);
            let value = dot(&f, &v);
            let functional = f
                .iter()
                .map(|(i, c)| (comp.index.basis[*i].clone(), c.clone()))
                .collect();
            (Certificate::NonMember { functional, value }, ok)
        }
    };
    if !verified {
        return Err(Error::Internal("membership certificate failed verification".into()));
    }
    Ok(MembershipReport {
        degree: n,
        multidegree,
        member: matches!(certificate, Certificate::Member { .. }),
        basis_size: comp.index.len(),
        generators: comp.generators.len(),
        rank: comp.space.rank(),
        certificate,
        verified,
    })
}

/// `f` vanishes on every generator and not on `v`.
fn verify_functional(comp: &Component, f: &SparseVec, v: &SparseVec) -> bool {
    if dot(f, v).is_zero() {
        return false;
    }
    comp.generators.iter().all(|g| match comp.index.vector(&g.poly) {
        Ok(w) => dot(f, &w).is_zero(),
        Err(_) => false,
    })
}
