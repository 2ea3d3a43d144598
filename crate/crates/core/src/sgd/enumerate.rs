use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nf::lie::ls_words_on;
use crate::nf::{BiComDer, BiComMono, ComDer, ComMono, DLetter, DiffAlgebra, PoisMono};

/// Which weight class to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightTarget {
    /// Weight -1 monomials of `PoisDer`.
    Sgd,
    /// Weight `<= -1` monomials of `ComDer`.
    GdDual,
    /// Weight -1 monomials of `BiComDer`.
    GdDualBicom,
}

impl FromStr for WeightTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sgd" => Ok(WeightTarget::Sgd),
            "gd_dual" | "gd-dual" => Ok(WeightTarget::GdDual),
            "gd_dual_bicom" | "gd-dual-bicom" => Ok(WeightTarget::GdDualBicom),
            _ => Err(Error::InvalidArgument(format!("unknown weight target `{s}`"))),
        }
    }
}

impl fmt::Display for WeightTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightTarget::Sgd => "sgd",
            WeightTarget::GdDual => "gd_dual",
            WeightTarget::GdDualBicom => "gd_dual_bicom",
        })
    }
}

/// Largest degree accepted by the enumerators.
pub const MAX_DEGREE: usize = 7;

/// Set partitions of `0..n` into exactly `k` blocks, via restricted growth
/// strings. Blocks are listed by their smallest element.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, k: usize, rgs: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if n - i < k - used {
            return;
        }
        if i == n {
            let mut blocks = vec![Vec::new(); k];
            for (e, &b) in rgs.iter().enumerate() {
                blocks[b].push(e);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=used.min(k - 1) {
            rgs.push(b);
            go(i + 1, n, k, rgs, used.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    go(0, n, k, &mut Vec::new(), 0, &mut out);
    out
}

/// Vectors of `n` non-negative integers summing to `total`.
fn compositions(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for s in 0..=left {
            cur.push(s);
            go(n, left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Products of `k` LS words partitioning the given letters, as sorted factor
/// lists.
fn ls_factorizations(letters: &[DLetter], k: usize) -> Vec<PoisMono> {
    let mut out = Vec::new();
    for part in set_partitions(letters.len(), k) {
        let words: Vec<Vec<_>> = part
            .iter()
            .map(|b| ls_words_on(&b.iter().map(|&i| letters[i]).collect::<Vec<_>>()))
            .collect();
        let mut choice = vec![0usize; k];
        'outer: loop {
            out.push(PoisMono::new(
                choice.iter().zip(&words).map(|(&c, w)| w[c].clone()).collect(),
            ));
            for j in 0..k {
                choice[j] += 1;
                if choice[j] < words[j].len() {
                    continue 'outer;
                }
                choice[j] = 0;
            }
            break;
        }
    }
    out
}

/// Number of sorted `k`-tuples of LS words partitioning `x1..xn`, by
/// explicit enumeration.
pub fn ls_factorization_count(n: usize, k: usize) -> usize {
    let letters: Vec<DLetter> = (1..=n as u32).map(|x| DLetter::new(0, x)).collect();
    ls_factorizations(&letters, k).len()
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(())
}

/// Multilinear weight -1 monomials of `PoisDer` in `x1..xn`: `k` LS
/// factors carry `k - 1` derivations in total.
pub fn sgd_monomials(n: usize) -> Result<Vec<PoisMono>> {
    check_degree(n)?;
    let mut out = Vec::new();
    for k in 1..=n {
        for s in compositions(n, (k - 1) as u32) {
            let letters: Vec<DLetter> = s
                .iter()
                .enumerate()
                .map(|(i, &s)| DLetter::new(s, i as u32 + 1))
                .collect();
            out.extend(ls_factorizations(&letters, k));
        }
    }
    out.sort();
    Ok(out)
}

/// Multilinear `ComDer` monomials of weight `<= -1`, i.e. with at most
/// `n - 1` derivations.
pub fn gd_dual_monomials(n: usize) -> Result<Vec<ComMono>> {
    check_degree(n)?;
    let mut out = Vec::new();
    for total in 0..n as u32 {
        for s in compositions(n, total) {
            out.push(ComMono::new(
                s.iter()
                    .enumerate()
                    .map(|(i, &s)| DLetter::new(s, i as u32 + 1))
                    .collect(),
            ));
        }
    }
    debug_assert!(out.iter().all(|m| ComDer.weight(m) <= -1));
    out.sort();
    Ok(out)
}

/// Multilinear weight -1 monomials of `BiComDer`: `t` stars and `n - 1 - t`
/// derivations.
pub fn gd_dual_bicom_monomials(n: usize) -> Result<Vec<BiComMono>> {
    check_degree(n)?;
    let mut out = Vec::new();
    for t in 0..n {
        for s in compositions(n, (n - 1 - t) as u32) {
            let letters = s
                .iter()
                .enumerate()
                .map(|(i, &s)| DLetter::new(s, i as u32 + 1))
                .collect();
            out.push(BiComMono::new(letters, t));
        }
    }
    debug_assert!(out.iter().all(|m| BiComDer.weight(m) == -1));
    out.sort();
    Ok(out)
}

/// Rendered monomials of the requested class.
pub fn enumerate_weight_monomials(n: usize, target: WeightTarget) -> Result<Vec<String>> {
    Ok(match target {
        WeightTarget::Sgd => sgd_monomials(n)?.iter().map(|m| m.to_string()).collect(),
        WeightTarget::GdDual => gd_dual_monomials(n)?.iter().map(|m| ComDer.render(m)).collect(),
        WeightTarget::GdDualBicom => gd_dual_bicom_monomials(n)?.iter().map(|m| m.to_string()).collect(),
    })
}
