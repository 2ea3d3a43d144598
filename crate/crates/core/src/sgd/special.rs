//! Special identities of a fixed degree: multilinear GD polynomials that
//! vanish under the differential Poisson expansion, modulo the
//! consequences of the GD axioms.

use std::collections::BTreeMap;

use num::One;

use crate::builtins;
use crate::error::{Error, Result};
use crate::expand::{expand_pois, ExpansionMap};
use crate::linalg::{from_entries, RowSpace, SparseVec};
use crate::operad::component::orbit_vectors;
use crate::operad::Component;
use crate::poly::{Coeff, TermPoly};

#[derive(Clone, Debug)]
pub struct SpecialSearch {
    pub degree: usize,
    /// Multilinear GD tree monomials.
    pub free_dim: usize,
    /// `dim SGD(n)`, the rank of the expansion.
    pub image_dim: usize,
    /// Dimension of the kernel of the expansion.
    pub kernel_dim: usize,
    /// Rank of the GD consequences.
    pub consequence_rank: usize,
    /// Representatives of a basis of kernel / consequences.
    pub special: Vec<TermPoly>,
    /// Dimension of the part of the quotient covered by the `S_n`-orbits
    /// of the named identities.
    pub covered_dim: usize,
}

impl SpecialSearch {
    pub fn complete(&self) -> bool {
        self.covered_dim == self.special.len()
    }
}

/// Searches degree `n <= 4`; `known` names identities whose orbits are
/// tested against the quotient.
pub fn special_identities(n: usize, known: &[&str]) -> Result<SpecialSearch> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let gd = builtins::presentation("gd")?;
    let comp = Component::build(&gd, &[], n, None, false)?;
    let map = ExpansionMap::gd();

    let mut columns = BTreeMap::new();
    let mut images = RowSpace::tracked();
    let mut inserted = Vec::new();
    let mut kernel: Vec<SparseVec> = Vec::new();
    for (i, t) in comp.index.basis.iter().enumerate() {
        let img = expand_pois(&TermPoly::from_term(t, &gd.sig), &map)?;
        let v = from_entries(img.iter().map(|(m, c)| {
            let next = columns.len();
            (*columns.entry(m.clone()).or_insert(next), c.clone())
        }));
        if let Some(combo) = images.express(&v) {
            let mut entries = vec![(i, Coeff::one())];
            entries.extend(combo.into_iter().map(|(j, c)| (inserted[j], -c)));
            kernel.push(from_entries(entries));
        } else {
            images.insert(v);
            inserted.push(i);
        }
    }

    let mut quotient = comp.space.clone();
    let mut special = Vec::new();
    for k in &kernel {
        if quotient.insert(k.clone()) {
            special.push(comp.index.poly(k));
        }
    }
    if quotient.rank() != kernel.len() {
        return Err(Error::Internal(
            "GD consequences do not lie in the expansion kernel".into(),
        ));
    }

    let mut covered = comp.space.clone();
    let base = covered.rank();
    let polys: Vec<TermPoly> = known
        .iter()
        .map(|name| builtins::identity(name).map(|id| id.poly.canonicalize(&gd.sig)))
        .filter(|p| p.as_ref().map_or(true, |p| p.degree() == Some(n)))
        .collect::<Result<_>>()?;
    for v in orbit_vectors(&comp.index, &polys, &gd.sig)? {
        covered.insert(v);
    }

    Ok(SpecialSearch {
        degree: n,
        free_dim: comp.free_dim(),
        image_dim: images.rank(),
        kernel_dim: kernel.len(),
        consequence_rank: base,
        special,
        covered_dim: covered.rank() - base,
    })
}
