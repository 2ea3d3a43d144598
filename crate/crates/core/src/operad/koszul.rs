//! Degree-3 Koszul dual via the sign-twisted orthogonal complement.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{nullspace, RowSpace, SparseVec};
use crate::perm::{act_permutation, Permutation};
use crate::term::{Op, Signature, Symmetry};

use super::o3::O3Space;
use super::Presentation;

/// Dual operation names: `lie <-> ast`, `circ <-> star`; others keep their
/// name. Symmetric and antisymmetric swap.
pub fn dual_op(op: Op) -> Op {
    match op {
        Op::Lie => Op::Ast,
        Op::Ast => Op::Lie,
        Op::Circ => Op::Star,
        Op::Star => Op::Circ,
        o => o,
    }
}

pub fn dual_symmetry(s: Symmetry) -> Symmetry {
    match s {
        Symmetry::None => Symmetry::None,
        Symmetry::Symmetric => Symmetry::Antisymmetric,
        Symmetry::Antisymmetric => Symmetry::Symmetric,
    }
}

pub fn dual_signature(sig: &Signature) -> Result<Signature> {
    let ops: Vec<(Op, Symmetry)> = sig
        .ops()
        .iter()
        .map(|(o, s)| (dual_op(*o), dual_symmetry(*s)))
        .collect();
    let names: BTreeSet<Op> = ops.iter().map(|(o, _)| *o).collect();
    if names.len() != ops.len() {
        return Err(Error::InvalidArgument(format!(
            "dual operation names collide for signature {}",
            sig.describe()
        )));
    }
    Signature::new(ops, false)
}

#[derive(Clone, Debug)]
pub struct KoszulDual {
    pub dual: Presentation,
    /// `dim O3`.
    pub total_dim: usize,
    /// `dim U`, the S3-closure of the relations.
    pub relation_dim: usize,
    /// `dim U^perp`.
    pub orthogonal_dim: usize,
    /// Basis of `U^perp` in the dual `b` coordinates.
    pub orthogonal_basis: Vec<SparseVec>,
}

/// The S3-closure of the degree-3 relations of `pres` in `a` coordinates.
pub fn relation_space(pres: &Presentation, space: &O3Space) -> Result<RowSpace> {
    let mut rs = RowSpace::new();
    for r in &pres.relations {
        if r.degree() != Some(3) {
            return Err(Error::NonQuadratic(format!("relation `{r}` has degree other than 3")));
        }
        for p in Permutation::all(3) {
            rs.insert(space.coords(&act_permutation(r, &p, &pres.sig)?)?);
        }
    }
    Ok(rs)
}

/// `U^perp` for the pairing `<a_j, b_k> = epsilon_j delta_jk`, written as
/// relations on the dual operations.
pub fn koszul_dual_degree3(pres: &Presentation) -> Result<KoszulDual> {
    let space = O3Space::new(&pres.sig)?;
    let u = relation_space(pres, &space)?;
    let twisted: Vec<SparseVec> = u
        .rref()
        .into_values()
        .map(|row| {
            row.into_iter()
                .map(|(j, c)| (j, if space.epsilon(j) < 0 { -c } else { c }))
                .collect()
        })
        .collect();
    let n = space.dim();
    let perp = nullspace(&twisted, n);
    let dsig = dual_signature(&pres.sig)?;
    let dspace = O3Space::new(&dsig)?;
    let relations = perp.iter().map(|v| dspace.poly(v)).filter(|p| !p.is_zero()).collect();
    Ok(KoszulDual {
        dual: Presentation::new(format!("{}!", pres.name), dsig, relations),
        total_dim: n,
        relation_dim: u.rank(),
        orthogonal_dim: perp.len(),
        orthogonal_basis: perp,
    })
}
