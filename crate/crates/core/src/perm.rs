//! Permutations of `{1..n}` acting on multilinear polynomials.
//!
//! Convention: `sigma` acts by relabeling `x_i -> x_{sigma(i)}`, and
//! `a.compose(b)` is the map `i -> a(b(i))`. With these choices
//! `act(act(p, sigma), tau) == act(p, tau.compose(sigma))`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::TermPoly;
use crate::term::{Signature, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation from its images `sigma(1), ..., sigma(n)`.
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i == 0 || i > n || seen[(i - 1) as usize] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[(i - 1) as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n as u32).collect())
    }

    /// The transposition `(i j)` on `{1..n}`.
    pub fn transposition(n: usize, i: u32, j: u32) -> Permutation {
        let mut v: Vec<u32> = (1..=n as u32).collect();
        v.swap((i - 1) as usize, (j - 1) as usize);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `sigma(i)`; indices outside `1..=n` are fixed.
    pub fn apply(&self, i: u32) -> u32 {
        if i >= 1 && (i as usize) <= self.0.len() {
            self.0[(i - 1) as usize]
        } else {
            i
        }
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degrees");
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.len()];
        for (i, &img) in self.0.iter().enumerate() {
            v[(img - 1) as usize] = i as u32 + 1;
        }
        Permutation(v)
    }

    pub fn sign(&self) -> i8 {
        let mut inversions = 0usize;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{1..n}` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n as u32).permutations(n).map(Permutation).collect()
    }

    pub fn as_relabeling(&self) -> impl Fn(Var) -> Var + '_ {
        move |v| Var(self.apply(v.0))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(" "))
    }
}

/// Relabels `x_i -> x_{perm(i)}` in every term and re-canonicalizes.
pub fn act_permutation(p: &TermPoly, perm: &Permutation, sig: &Signature) -> Result<TermPoly> {
    let n = perm.len();
    for t in p.monomials() {
        if t.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: t.degree(),
            });
        }
    }
    if !p.is_multilinear_in(n) {
        return Err(Error::NotMultilinear(format!("expected each of x1..x{n} exactly once")));
    }
    Ok(p.relabel(&perm.as_relabeling(), sig))
}
