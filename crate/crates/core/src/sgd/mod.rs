//! Dimension theory and bases of special GD-algebras.
//!
//! The multilinear component `SGD(n)` is spanned by differential Poisson
//! monomials of weight -1, which gives
//! `dim SGD(n) = sum_k (n+k-2)!/(k-1)! * H(n,k)`.

pub mod enumerate;
mod preimage;
mod special;

pub use enumerate::{
    enumerate_weight_monomials, gd_dual_bicom_monomials, gd_dual_monomials, ls_factorization_count, set_partitions,
    sgd_monomials, WeightTarget,
};
pub use preimage::{gd_preimage, gd_preimage_poly, novikov_preimage};
pub use special::{special_identities, SpecialSearch};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `H(n,1) = 1` and `H(n,k) = sum over 1 <= d_1 < ... < d_{k-1} <= n-1 of
/// 1/(d_1 ... d_{k-1})`, i.e. the elementary symmetric polynomial
/// `e_{k-1}(1, 1/2, ..., 1/(n-1))`.
pub fn harmonic_h(n: usize, k: usize) -> Result<BigRational> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "H(n,k) needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    // e[j] after processing 1..d holds e_j(1, ..., 1/d).
    let mut e = vec![BigRational::zero(); k];
    e[0] = BigRational::one();
    for d in 1..n {
        let inv = BigRational::new(BigInt::one(), BigInt::from(d));
        for j in (1..k).rev() {
            let add = &e[j - 1] * &inv;
            e[j] += add;
        }
    }
    Ok(e[k - 1].clone())
}

/// `L(n,k) = (n-1)! H(n,k)`, the number of sorted `k`-tuples of LS words
/// partitioning `n` distinct letters.
pub fn lyndon_count_l(n: usize, k: usize) -> Result<BigInt> {
    let v = harmonic_h(n, k)? * BigRational::from_integer(factorial(n - 1));
    if !v.is_integer() {
        return Err(Error::Internal(format!("L({n},{k}) is not an integer")));
    }
    Ok(v.to_integer())
}

/// `dim SGD(n)`.
pub fn sgd_dim(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut total = BigRational::zero();
    for k in 1..=n {
        let c = BigRational::new(factorial(n + k - 2), factorial(k - 1));
        total += c * harmonic_h(n, k)?;
    }
    if !total.is_integer() {
        return Err(Error::Internal(format!("dim SGD({n}) is not an integer")));
    }
    Ok(total.to_integer())
}
