//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are sorted lists of `(column, coefficient)` pairs with no zeros.
//! A [`RowSpace`] keeps an echelon basis keyed by pivot column; rows are
//! normalized so the pivot entry is 1.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::poly::Coeff;

pub type SparseVec = Vec<(usize, Coeff)>;

/// `a - c * b`.
pub fn axpy(a: &SparseVec, c: &Coeff, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Coeff) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Coeff {
    let (mut i, mut j) = (0, 0);
    let mut acc = Coeff::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    acc
}

pub fn get(v: &SparseVec, col: usize) -> Coeff {
    match v.binary_search_by_key(&col, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Coeff::zero(),
    }
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(entries: impl IntoIterator<Item = (usize, Coeff)>) -> SparseVec {
    let mut m: BTreeMap<usize, Coeff> = BTreeMap::new();
    for (i, c) in entries {
        *m.entry(i).or_insert_with(Coeff::zero) += c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    /// Coefficients expressing `vec` through inserted generators.
    combo: Option<SparseVec>,
}

/// An echelon basis of a row space, optionally tracking how each basis row
/// is built from the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: BTreeMap<usize, Row>,
    tracking: bool,
    inserted: usize,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace::default()
    }

    /// A row space that records generator combinations for certificates.
    pub fn tracked() -> RowSpace {
        RowSpace {
            tracking: true,
            ..RowSpace::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Number of generators inserted so far (their ids are `0..inserted`).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the basis. Each step clears the smallest pivot
    /// column still present; pivot rows only touch larger columns, so the
    /// scan moves strictly to the right and terminates.
    fn reduce_inner(&self, mut v: SparseVec, mut combo: Option<SparseVec>, sign: i8) -> (SparseVec, Option<SparseVec>) {
        let mut from = 0usize;
        loop {
            let hit = v.iter().find(|(c, _)| *c >= from && self.rows.contains_key(c)).cloned();
            let Some((col, coef)) = hit else { break };
            let row = &self.rows[&col];
            v = axpy(&v, &coef, &row.vec);
            if let (Some(cb), Some(rc)) = (combo.as_mut(), row.combo.as_ref()) {
                let c = if sign > 0 { coef.clone() } else { -coef.clone() };
                *cb = axpy(cb, &c, rc);
            }
            from = col + 1;
        }
        (v, combo)
    }

    /// The residue of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_inner(v.clone(), None, 1).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a generator; returns true when it raised the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let combo = self.tracking.then(|| vec![(id, Coeff::one())]);
        let (v, combo) = self.reduce_inner(v, combo, 1);
        let Some((lead, lc)) = v.first().cloned() else {
            return false;
        };
        let inv = Coeff::one() / lc;
        let row = Row {
            vec: scale(&v, &inv),
            combo: combo.map(|c| scale(&c, &inv)),
        };
        self.rows.insert(lead, row);
        true
    }

    /// For a member `v`, coefficients `c_i` with `v = sum c_i g_i` over the
    /// inserted generators. `None` if `v` is not a member or tracking is off.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.tracking {
            return None;
        }
        // residue = v - sum coef * row, and each row is a combination of
        // generators, so v = sum coef * combo(row) when the residue vanishes.
        let (res, combo) = self.reduce_inner(v.clone(), Some(Vec::new()), -1);
        if !res.is_empty() {
            return None;
        }
        combo
    }

    /// Fully reduced rows (reduced row echelon form), keyed by pivot.
    pub fn rref(&self) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut v = row.vec.clone();
            // Clear entries at later pivots using already-reduced rows.
            let mut from = p + 1;
            loop {
                let hit = v.iter().find(|(c, _)| *c >= from && out.contains_key(c)).cloned();
                let Some((col, coef)) = hit else { break };
                v = axpy(&v, &coef, &out[&col]);
                from = col + 1;
            }
            out.insert(p, v);
        }
        out
    }

    /// A linear functional vanishing on the row space but not on `v`, given
    /// as a sparse vector over columns. `None` if `v` is in the row space.
    pub fn separating_functional(&self, v: &SparseVec) -> Option<SparseVec> {
        let res = self.reduce(v);
        let (c, _) = res.first()?;
        let c = *c;
        // lambda = e_c - sum_p b_p[c] e_p, with b_p the reduced rows.
        let rref = self.rref();
        let mut entries = vec![(c, Coeff::one())];
        for (p, row) in &rref {
            let x = get(row, c);
            if !x.is_zero() {
                entries.push((*p, -x));
            }
        }
        Some(from_entries(entries))
    }
}

/// Basis of `{ x : row . x = 0 for every row }` in dimension `ncols`.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut rs = RowSpace::new();
    for r in rows {
        rs.insert(r.clone());
    }
    nullspace_of(&rs, ncols)
}

/// Same as [`nullspace`] for an existing row space.
pub fn nullspace_of(rs: &RowSpace, ncols: usize) -> Vec<SparseVec> {
    let rref = rs.rref();
    let mut out = Vec::new();
    for f in 0..ncols {
        if rref.contains_key(&f) {
            continue;
        }
        let mut entries = vec![(f, Coeff::one())];
        for (p, row) in &rref {
            let x = get(row, f);
            if !x.is_zero() {
                entries.push((*p, -x));
            }
        }
        out.push(from_entries(entries));
    }
    out
}

/// Rank of a list of vectors.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut rs = RowSpace::new();
    for r in rows {
        rs.insert(r.clone());
    }
    rs.rank()
}
