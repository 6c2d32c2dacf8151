//! Upper bounds on `A_q(l+m, l, k)`, the largest code of `l`-dimensional
//! subspaces of `F_q^{l+m}` with pairwise intersections of dimension below `k`.
//!
//! Everything is exact big-integer arithmetic.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::recursive::{cardinality, CodeParams};
use crate::kk::kk_size;
use crate::{Error, Result};

fn q_pow(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// `[n; k]_q = Π_{i<k} (q^{n-i} - 1)/(q^{k-i} - 1)`, zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q_pow(q, n - i) - 1u32;
        den *= q_pow(q, k - i) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Singleton-type bound `[m+k; k]_q`.
pub fn singleton_bound(_ell: usize, m: usize, k: usize, q: u32) -> BigUint {
    gaussian_binomial(m + k, k, q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WangBound {
    pub exact: Ratio<BigUint>,
    pub floor: BigUint,
}

/// `[m+l; k]_q / [l; k]_q`, exact and floored.
pub fn wang_bound(ell: usize, m: usize, k: usize, q: u32) -> WangBound {
    let exact = Ratio::new(gaussian_binomial(m + ell, k, q), gaussian_binomial(ell, k, q));
    let floor = exact.to_integer();
    WangBound { exact, floor }
}

/// Johnson-type bound, nested floors evaluated innermost first:
/// `⌊(q^{l+m}-1)/(q^l-1) ⌊ … ⌊(q^{l+m-k+1}-1)/(q^{l-k+1}-1)⌋ … ⌋⌋`.
pub fn johnson_bound(ell: usize, m: usize, k: usize, q: u32) -> Result<BigUint> {
    if k == 0 || k > ell {
        return Err(Error::InvalidParameters(alloc::format!(
            "Johnson bound needs 1 <= k <= l, got k={k} l={ell}"
        )));
    }
    let mut acc = BigUint::one();
    for j in (0..k).rev() {
        let num = q_pow(q, ell + m - j) - 1u32;
        let den = q_pow(q, ell - j) - 1u32;
        acc = num * acc / den;
    }
    Ok(acc)
}

/// Code size next to the bounds for one parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u32,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    /// `N(l+m, l, k)` under the parameters' schedule.
    pub size: u128,
    /// `|K| = q^{mk}`.
    pub base_size: u128,
    pub singleton: BigUint,
    pub wang: WangBound,
    pub johnson: BigUint,
}

impl BoundReport {
    /// Words gained over the lifted Gabidulin code.
    pub fn gain(&self) -> u128 {
        self.size - self.base_size
    }

    /// True when the code size respects every bound.
    pub fn within_bounds(&self) -> bool {
        let n = BigUint::from(self.size);
        n <= self.singleton && n <= self.wang.floor && n <= self.johnson
    }
}

pub fn rate_report(params: &CodeParams) -> Result<BoundReport> {
    let (q, ell, m, k) = (params.q, params.ell, params.m, params.k);
    let size = cardinality(q, ell, m, k, &params.h_schedule)?;
    Ok(BoundReport {
        q,
        ell,
        m,
        k,
        size,
        base_size: kk_size(q, m, k)?,
        singleton: singleton_bound(ell, m, k, q),
        wang: wang_bound(ell, m, k, q),
        johnson: johnson_bound(ell, m, k, q)?,
    })
}
