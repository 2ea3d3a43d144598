//! The degree-3 space `O3 = kS3 (x)_{kS2} (E (x) E)` with the basis
//! `a_1..a_{3k^2}` for a `k`-dimensional generator space `E`.
//!
//! `a_{k^2 b + k o + i + 1} = beta_b . o(i(x1, x2), x3)` with `beta` running
//! over `id, (13), (23)` and `o, i` over the generator basis.

use std::collections::HashMap;

use crate::builtins;
use crate::error::{Error, Result};
use crate::linalg::{from_entries, SparseVec};
use crate::perm::Permutation;
use crate::poly::{Coeff, TermPoly};
use crate::term::{var, Signature, Term, Var};

use super::component::{e_basis, EGen};

/// Block permutations `id, (13), (23)` with their signs.
pub fn blocks() -> [(Permutation, i8); 3] {
    [
        (Permutation::identity(3), 1),
        (Permutation::transposition(3, 1, 3), -1),
        (Permutation::transposition(3, 2, 3), -1),
    ]
}

#[derive(Clone, Debug)]
pub struct O3Space {
    pub sig: Signature,
    pub e: Vec<EGen>,
    /// `a_j = sign_j * term_j` with `term_j` canonical.
    pub elems: Vec<(i8, Term)>,
    index: HashMap<Term, usize>,
}

impl O3Space {
    pub fn new(sig: &Signature) -> Result<O3Space> {
        let e = e_basis(sig);
        let mut elems = Vec::new();
        let mut index = HashMap::new();
        for (b, _) in blocks() {
            for o in &e {
                for i in &e {
                    let t = o.apply(i.apply(var(1), var(2)), var(3)).relabel(&b.as_relabeling());
                    let (s, c) = t
                        .canonical(sig)
                        .ok_or_else(|| Error::Internal(format!("{t} vanishes")))?;
                    if index.insert(c.clone(), elems.len()).is_some() {
                        return Err(Error::Internal(format!("{c} repeats in the O3 basis")));
                    }
                    elems.push((s, c));
                }
            }
        }
        Ok(O3Space {
            sig: sig.clone(),
            e,
            elems,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// The term of `a_j` (0-based `j`), uncanonicalized.
    pub fn element(&self, j: usize) -> TermPoly {
        let (s, t) = &self.elems[j];
        TermPoly::term(t.clone(), Coeff::from_integer((*s as i64).into()))
    }

    /// Coordinates of a polynomial in the `a` basis.
    pub fn coords(&self, p: &TermPoly) -> Result<SparseVec> {
        let mut entries = Vec::new();
        for (t, c) in p.iter() {
            let j = *self.index.get(t).ok_or_else(|| {
                Error::InvalidArgument(format!("`{t}` is not a degree-3 monomial over the signature"))
            })?;
            let s = self.elems[j].0;
            entries.push((j, if s < 0 { -c.clone() } else { c.clone() }));
        }
        Ok(from_entries(entries))
    }

    pub fn poly(&self, v: &SparseVec) -> TermPoly {
        let mut out = TermPoly::zero();
        for (j, c) in v {
            let (s, t) = &self.elems[*j];
            out.add_term(t.clone(), if *s < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Sign of the pairing on `a_j`: the block sign times `-1` for each
    /// transposed generator.
    pub fn epsilon(&self, j: usize) -> i8 {
        let k = self.e.len();
        let (b, r) = (j / (k * k), j % (k * k));
        let s = |g: &EGen| if g.transposed { -1 } else { 1 };
        blocks()[b].1 * s(&self.e[r / k]) * s(&self.e[r % k])
    }

    pub fn label(j: usize) -> String {
        format!("a{}", j + 1)
    }
}

/// One relation row with its origin.
#[derive(Clone, Debug)]
pub struct RelationRow {
    /// Built-in identity the row instantiates.
    pub identity: &'static str,
    /// The row is `identity(x_{args[0]}, x_{args[1]}, x_{args[2]})`.
    pub args: [u32; 3],
    pub vector: SparseVec,
}

const GD_ROWS: [(&str, [u32; 3]); 10] = [
    ("jacobi", [1, 2, 3]),
    ("rcomm", [1, 2, 3]),
    ("rcomm", [2, 1, 3]),
    ("rcomm", [3, 2, 1]),
    ("lsymm", [1, 2, 3]),
    ("lsymm", [1, 3, 2]),
    ("lsymm", [3, 2, 1]),
    ("gd1", [2, 1, 3]),
    ("gd1", [1, 2, 3]),
    ("gd1", [2, 3, 1]),
];

/// Ten relation vectors of the GD presentation in the `a` basis of its
/// O3 space. Each row is an instance of a defining identity with permuted
/// arguments.
pub fn gd_relation_vectors() -> Result<Vec<RelationRow>> {
    let pres = builtins::presentation("gd")?;
    let space = O3Space::new(&pres.sig)?;
    let mut rows = Vec::new();
    for (name, args) in GD_ROWS {
        let id = builtins::identity(name)?;
        let p = id.poly.relabel(&|v: Var| Var(args[(v.0 - 1) as usize]), &pres.sig);
        rows.push(RelationRow {
            identity: name,
            args,
            vector: space.coords(&p)?,
        });
    }
    Ok(rows)
}

/// Dense form of a sparse vector.
pub fn dense(v: &SparseVec, n: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::from_integer(0.into()); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}
