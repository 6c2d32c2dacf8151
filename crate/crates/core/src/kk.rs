//! The lifted Gabidulin code `K[l+m, l, k]` of Kötter and Kschischang.
//!
//! A message is a linearized polynomial `f` of q-degree below `k`; its
//! codeword is the span of `(α_i, f(α_i))` for `l` evaluation points that are
//! linearly independent over `F_q`. Vectors of the ambient space `F_q^{l+m}`
//! carry the prefix in coordinates with respect to the `α`-basis and the tail
//! as the `m` coordinates of an element of `F_{q^m}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldElement, GaloisField};
use crate::linearized::LinearizedPoly;
use crate::subspace::{row_reduce, Subspace};
use crate::{Error, Result};

/// Largest code the brute-force decoder will enumerate by default.
pub const DEFAULT_ORACLE_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KkOutcome {
    Decoded { message: LinearizedPoly, codeword: Subspace },
    /// The decoder's `?`.
    Failure,
}

impl KkOutcome {
    pub fn codeword(&self) -> Option<&Subspace> {
        match self {
            KkOutcome::Decoded { codeword, .. } => Some(codeword),
            KkOutcome::Failure => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct KkCode {
    field: GaloisField,
    ell: usize,
    k: usize,
    alphas: Vec<FieldElement>,
}

impl KkCode {
    /// Requires `1 <= k <= l <= m` and `F_q`-independent `alphas`.
    pub fn new(field: GaloisField, ell: usize, k: usize, alphas: Vec<FieldElement>) -> Result<Self> {
        let m = field.m();
        if !(1 <= k && k <= ell && ell <= m) {
            return Err(Error::InvalidParameters(alloc::format!(
                "KK code needs 1 <= k <= l <= m, got k={k} l={ell} m={m}"
            )));
        }
        if alphas.len() != ell {
            return Err(Error::LengthMismatch { expected: ell, got: alphas.len() });
        }
        if let Some(a) = alphas.iter().find(|a| !field.contains(**a)) {
            return Err(Error::ElementOutOfField(a.index()));
        }
        let mut rows: Vec<Vec<u32>> = alphas.iter().map(|&a| field.expand(a)).collect();
        if row_reduce(field.prime_field(), &mut rows, m).len() != ell {
            return Err(Error::DependentAlphas);
        }
        Ok(Self { field, ell, k, alphas })
    }

    /// Uses `α_i = β^{i-1}`, the first `l` polynomial-basis elements.
    pub fn with_polynomial_basis(field: GaloisField, ell: usize, k: usize) -> Result<Self> {
        let alphas = field.polynomial_basis(ell);
        Self::new(field, ell, k, alphas)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn ambient_dim(&self) -> usize {
        self.ell + self.field.m()
    }

    /// Decoding succeeds whenever `d(U, V) < l - k + 1`.
    pub fn radius(&self) -> usize {
        self.ell - self.k + 1
    }

    /// `|K| = q^{mk}`.
    pub fn cardinality(&self) -> Result<u128> {
        kk_size(self.field.q(), self.field.m(), self.k)
    }

    /// The message whose coefficients are the base-`q^m` digits of `index`,
    /// least significant digit first.
    pub fn message_from_index(&self, index: u128) -> Result<LinearizedPoly> {
        let size = self.cardinality()?;
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
        let order = u128::from(self.field.order());
        let mut rest = index;
        let coeffs = (0..self.k)
            .map(|_| {
                let digit = (rest % order) as u64;
                rest /= order;
                self.field.element(digit).expect("digit below q^m")
            })
            .collect();
        Ok(LinearizedPoly::new(coeffs))
    }

    pub fn message_index(&self, message: &LinearizedPoly) -> Result<u128> {
        self.check_message(message)?;
        let order = u128::from(self.field.order());
        Ok(message
            .coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * order + u128::from(c.index())))
    }

    fn check_message(&self, message: &LinearizedPoly) -> Result<()> {
        match message.q_degree() {
            Some(degree) if degree >= self.k => Err(Error::MessageTooLong { degree, k: self.k }),
            _ => {
                if let Some(c) = message.coeffs().iter().find(|c| !self.field.contains(**c)) {
                    return Err(Error::ElementOutOfField(c.index()));
                }
                Ok(())
            }
        }
    }

    /// `span{(α_i, f(α_i))}`.
    pub fn encode(&self, message: &LinearizedPoly) -> Result<Subspace> {
        self.check_message(message)?;
        let n = self.ambient_dim();
        let rows: Vec<Vec<u32>> = self
            .alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut row = vec![0; self.ell];
                row[i] = 1;
                row.extend(self.field.expand(message.evaluate(&self.field, a)));
                row
            })
            .collect();
        Subspace::from_generators(self.field.q(), n, &rows)
    }

    pub fn encode_index(&self, index: u128) -> Result<Subspace> {
        self.encode(&self.message_from_index(index)?)
    }

    fn check_received(&self, received: &Subspace) -> Result<()> {
        if received.q() != self.field.q() {
            return Err(Error::CharacteristicMismatch { left: received.q(), right: self.field.q() });
        }
        if received.ambient_dim() != self.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: received.ambient_dim(),
                right: self.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Splits an ambient vector into `(x, y)` with `x = Σ a_j α_j` from the
    /// prefix and `y` from the tail.
    fn point(&self, v: &[u32]) -> (FieldElement, FieldElement) {
        let x = v[..self.ell]
            .iter()
            .zip(&self.alphas)
            .fold(FieldElement::ZERO, |acc, (&a, &alpha)| {
                self.field.add(acc, self.field.scale(a, alpha))
            });
        let y = self
            .field
            .contract(&v[self.ell..])
            .expect("tail has m coordinates in range");
        (x, y)
    }

    /// Bounded-distance interpolation decoder.
    ///
    /// For a received `U` of dimension `r`, finds a nonzero
    /// `Q(x, y) = Q0(x) + Q1(y)` with q-degrees below `τ` and `τ - k + 1`
    /// (`τ` minimal with `2τ - k + 1 > r`) vanishing on a basis of `U`, then
    /// solves `Q1 ∘ f = -Q0`. The candidate is returned only if it lies
    /// within distance `l - k` of `U`.
    pub fn decode(&self, received: &Subspace) -> Result<KkOutcome> {
        self.check_received(received)?;
        let r = received.dim();
        let tau = (r + self.k).div_ceil(2);
        if tau < self.k {
            return Ok(KkOutcome::Failure);
        }
        let n0 = tau;
        let n1 = tau - self.k + 1;
        let f = &self.field;
        let system: Vec<Vec<FieldElement>> = received
            .rows()
            .iter()
            .map(|row| {
                let (x, y) = self.point(row);
                let mut eq = Vec::with_capacity(n0 + n1);
                let mut xp = x;
                for i in 0..n0 {
                    if i > 0 {
                        xp = f.frobenius(xp, 1);
                    }
                    eq.push(xp);
                }
                let mut yp = y;
                for i in 0..n1 {
                    if i > 0 {
                        yp = f.frobenius(yp, 1);
                    }
                    eq.push(yp);
                }
                eq
            })
            .collect();
        let Some(kernel) = kernel_vector(f, system, n0 + n1) else {
            return Ok(KkOutcome::Failure);
        };
        let q0 = LinearizedPoly::new(kernel[..n0].to_vec());
        let q1 = LinearizedPoly::new(kernel[n0..].to_vec());
        if q1.is_zero() {
            return Ok(KkOutcome::Failure);
        }
        let Some(message) = q0.neg(f).left_divide(f, &q1)? else {
            return Ok(KkOutcome::Failure);
        };
        if message.q_degree().is_some_and(|d| d >= self.k) {
            return Ok(KkOutcome::Failure);
        }
        let codeword = self.encode(&message)?;
        if received.distance(&codeword)? >= self.radius() {
            return Ok(KkOutcome::Failure);
        }
        Ok(KkOutcome::Decoded { message, codeword })
    }

    /// Reference decoder: scans every codeword for one within the radius.
    pub fn decode_oracle(&self, received: &Subspace, limit: u128) -> Result<KkOutcome> {
        self.check_received(received)?;
        let size = self.cardinality()?;
        if size > limit {
            return Err(Error::EnumerationLimit { size, limit });
        }
        for index in 0..size {
            let message = self.message_from_index(index)?;
            let codeword = self.encode(&message)?;
            if received.distance(&codeword)? < self.radius() {
                return Ok(KkOutcome::Decoded { message, codeword });
            }
        }
        Ok(KkOutcome::Failure)
    }
}

/// `q^{mk}`, failing on overflow.
pub fn kk_size(q: u32, m: usize, k: usize) -> Result<u128> {
    let exp = u32::try_from(m * k).map_err(|_| Error::Overflow("q^(mk)"))?;
    u128::from(q).checked_pow(exp).ok_or(Error::Overflow("q^(mk)"))
}

/// A nonzero solution of the homogeneous system, or `None` if the system
/// has full column rank.
fn kernel_vector(field: &GaloisField, mut rows: Vec<Vec<FieldElement>>, cols: usize) -> Option<Vec<FieldElement>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![FieldElement::ZERO; cols];
    v[free] = FieldElement::ONE;
    for (row, &p) in rows.iter().zip(&pivots) {
        v[p] = field.neg(row[free]);
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4221() -> KkCode {
        let f = GaloisField::with_default_modulus(2, 2).unwrap();
        KkCode::with_polynomial_basis(f, 2, 1).unwrap()
    }

    #[test]
    fn encode_small_example() {
        let code = k4221();
        let omega = code.field().contract(&[0, 1]).unwrap();
        let v = code.encode(&LinearizedPoly::monomial(omega, 0)).unwrap();
        assert_eq!(v.rows(), [vec![1, 0, 0, 1], vec![0, 1, 1, 1]]);
        let zero = code.encode(&LinearizedPoly::zero()).unwrap();
        assert_eq!(zero.rows(), [vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    }

    #[test]
    fn message_checks() {
        let code = k4221();
        let long = LinearizedPoly::monomial(FieldElement::ONE, 1);
        assert_eq!(code.encode(&long), Err(Error::MessageTooLong { degree: 1, k: 1 }));
        assert_eq!(code.cardinality(), Ok(4));
        assert_eq!(
            code.message_from_index(4),
            Err(Error::IndexOutOfRange { index: 4, size: 4 })
        );
    }

    #[test]
    fn parameter_checks() {
        let f = GaloisField::with_default_modulus(2, 4).unwrap();
        assert!(matches!(
            KkCode::with_polynomial_basis(f.clone(), 5, 1),
            Err(Error::InvalidParameters(_))
        ));
        assert_eq!(
            KkCode::new(f.clone(), 2, 1, vec![FieldElement(3), FieldElement(3)]).err(),
            Some(Error::DependentAlphas)
        );
        assert_eq!(
            KkCode::new(f, 2, 1, vec![FieldElement(1)]).err(),
            Some(Error::LengthMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn cardinalities() {
        assert_eq!(kk_size(2, 4, 1), Ok(16));
        assert_eq!(kk_size(2, 1, 1), Ok(2));
        assert_eq!(kk_size(2, 8, 2), Ok(65536));
        assert_eq!(kk_size(2, 64, 2), Err(Error::Overflow("q^(mk)")));
    }

    #[test]
    fn ambient_mismatch() {
        let code = k4221();
        let u = Subspace::zero(2, 5).unwrap();
        assert_eq!(code.decode(&u), Err(Error::AmbientMismatch { left: 5, right: 4 }));
    }

    #[test]
    fn oracle_limit() {
        let code = k4221();
        let u = Subspace::zero(2, 4).unwrap();
        assert_eq!(
            code.decode_oracle(&u, 3),
            Err(Error::EnumerationLimit { size: 4, limit: 3 })
        );
    }
}
