//! The prime field `F_q` and dense polynomials over it.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub const MAX_CHARACTERISTIC: u32 = 251;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic modulo a prime `q <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_CHARACTERISTIC || !is_prime(q) {
            return Err(Error::InvalidCharacteristic(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.q
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.q));
        self.pow(a, self.q - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Dense polynomials over `F_q`, coefficients low-to-high with no trailing zeros.
pub(crate) mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<u32>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn sub(fq: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = fq.sub(x, y);
        }
        trim(&mut out);
        out
    }

    pub fn mul(fq: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `b`.
    pub fn rem(fq: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = fq.inv(b[db]);
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = fq.mul(*r.last().unwrap(), lead_inv);
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = fq.sub(r[shift + j], fq.mul(c, bj));
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(fq: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(fq, &x, &y);
            x = y;
            y = r;
        }
        x
    }

    /// `base^exp mod modulus`.
    pub fn pow_mod(fq: PrimeField, base: &[u32], mut exp: u64, modulus: &[u32]) -> Vec<u32> {
        let mut acc = vec![1];
        let mut b = rem(fq, base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(fq, &mul(fq, &acc, &b), modulus);
            }
            b = rem(fq, &mul(fq, &b, &b), modulus);
            exp >>= 1;
        }
        acc
    }

    fn prime_factors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Rabin's irreducibility test for a monic `f` of degree `m >= 1`.
    pub fn is_irreducible(fq: PrimeField, f: &[u32]) -> bool {
        let m = f.len() - 1;
        let x = [0, 1];
        // x^(q^j) mod f for j = 0..=m
        let mut frob = Vec::with_capacity(m + 1);
        let mut cur = rem(fq, &x, f);
        frob.push(cur.clone());
        for _ in 0..m {
            cur = pow_mod(fq, &cur, u64::from(fq.q()), f);
            frob.push(cur.clone());
        }
        if frob[m] != rem(fq, &x, f) {
            return false;
        }
        prime_factors(m).into_iter().all(|p| {
            let h = sub(fq, &frob[m / p], &x);
            let g = gcd(fq, &h, f);
            g.len() == 1
        })
    }
}
