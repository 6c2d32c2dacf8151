//! Subspaces of `F_q^n`, kept in reduced row echelon form.
//!
//! The echelon basis is canonical, so two subspaces are equal exactly when
//! their stored bases are equal.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::prime::PrimeField;
use crate::{Error, Result};

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn row_reduce(fq: PrimeField, rows: &mut Vec<Vec<u32>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = fq.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = fq.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = fq.sub(*x, fq.mul(c, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// An `F_q`-subspace of `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(q: u32, n: usize) -> Result<Self> {
        PrimeField::new(q)?;
        Ok(Self { q, n, rows: Vec::new() })
    }

    pub fn full(q: u32, n: usize) -> Result<Self> {
        PrimeField::new(q)?;
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Ok(Self { q, n, rows })
    }

    /// The span of `vectors`, each of length `n`.
    pub fn from_generators<V: AsRef<[u32]>>(q: u32, n: usize, vectors: &[V]) -> Result<Self> {
        let fq = PrimeField::new(q)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let v = v.as_ref();
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: v.len() });
            }
            if let Some(&value) = v.iter().find(|&&x| x >= q) {
                return Err(Error::InvalidCoordinate { value, q });
            }
            rows.push(v.to_vec());
        }
        row_reduce(fq, &mut rows, n);
        Ok(Self { q, n, rows })
    }

    fn from_rows_unchecked(q: u32, n: usize, mut rows: Vec<Vec<u32>>) -> Self {
        let fq = PrimeField::new(q).expect("characteristic checked on construction");
        row_reduce(fq, &mut rows, n);
        Self { q, n, rows }
    }

    fn fq(&self) -> PrimeField {
        PrimeField::new(self.q).expect("characteristic checked on construction")
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The canonical (reduced echelon) basis.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("rows are nonzero"))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::CharacteristicMismatch { left: self.q, right: other.q });
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: v.len() });
        }
        let fq = self.fq();
        // reduce v against the echelon basis
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.q).collect();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            let c = w[p];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = fq.sub(*x, fq.mul(c, y));
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `U + V`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_rows_unchecked(self.q, self.n, rows))
    }

    /// `U ∩ V` by the Zassenhaus algorithm: reduce the block matrix
    /// `[U U; V 0]`; rows whose left half vanishes span the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut block: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.rows {
            let mut r = u.clone();
            r.extend_from_slice(u);
            block.push(r);
        }
        for v in &other.rows {
            let mut r = v.clone();
            r.resize(2 * n, 0);
            block.push(r);
        }
        row_reduce(self.fq(), &mut block, 2 * n);
        let rows = block
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Self::from_rows_unchecked(self.q, n, rows))
    }

    /// Subspace distance `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        let common = self.intersect(other)?.dim();
        Ok(self.dim() + other.dim() - 2 * common)
    }

    /// Projection onto the last `n - prefix_len` coordinates.
    pub fn project_onto_tail(&self, prefix_len: usize) -> Result<Self> {
        if prefix_len >= self.n {
            return Err(Error::InvalidPrefix { prefix: prefix_len, ambient: self.n });
        }
        let rows = self.rows.iter().map(|r| r[prefix_len..].to_vec()).collect();
        Ok(Self::from_rows_unchecked(self.q, self.n - prefix_len, rows))
    }

    /// `{0^prefix_len} ⊕ V` in dimension `prefix_len + n`.
    pub fn lift_zero_prefix(&self, prefix_len: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0; prefix_len];
                out.extend_from_slice(r);
                out
            })
            .collect();
        // prefixing zeros keeps the echelon form
        Self { q: self.q, n: self.n + prefix_len, rows }
    }

    /// A uniformly random `r`-dimensional subspace of `F_q^n`.
    pub fn random<R: Rng + ?Sized>(q: u32, n: usize, r: usize, rng: &mut R) -> Result<Self> {
        PrimeField::new(q)?;
        if r > n {
            return Err(Error::DimensionTooLarge { dim: r, ambient: n });
        }
        loop {
            let rows: Vec<Vec<u32>> = (0..r)
                .map(|_| (0..n).map(|_| rng.random_range(0..q)).collect())
                .collect();
            let s = Self::from_rows_unchecked(q, n, rows);
            if s.dim() == r {
                return Ok(s);
            }
        }
    }

    /// `F_q`-linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let fq = self.fq();
        let mut out = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(row) {
                *x = fq.add(*x, fq.mul(c, y));
            }
        }
        out
    }

    /// Every vector of the subspace (`q^dim` of them); intended for small checks.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let q = u64::from(self.q);
        let count = q.pow(self.dim() as u32);
        (0..count).map(move |mut idx| {
            let coeffs: Vec<u32> = (0..self.dim())
                .map(|_| {
                    let c = (idx % q) as u32;
                    idx /= q;
                    c
                })
                .collect();
            self.combine(&coeffs)
        })
    }
}
