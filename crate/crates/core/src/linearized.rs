//! Linearized polynomials `f(x) = Σ c_i x^{q^i}` over `F_{q^m}`.
//!
//! Composition is the ring product here: `(g ∘ f)(x) = g(f(x))`, and its
//! coefficient at `x^{q^s}` is `Σ_{i+j=s} g_i f_j^{q^i}`. Polynomials are
//! formal, so q-degrees may exceed `m`.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldElement, GaloisField};
use crate::{Error, Result};

/// Coefficient `i` multiplies `x^{q^i}`; trailing zero coefficients are trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity map `x`.
    pub fn identity() -> Self {
        Self { coeffs: vec![FieldElement::ONE] }
    }

    /// `c · x^{q^i}`.
    pub fn monomial(c: FieldElement, i: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `i` with a nonzero coefficient; `None` stands for minus infinity.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, field: &GaloisField, a: FieldElement) -> FieldElement {
        let mut power = a;
        let mut acc = FieldElement::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = field.frobenius(power, 1);
            }
            acc = field.add(acc, field.mul(c, power));
        }
        acc
    }

    pub fn add(&self, field: &GaloisField, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, field: &GaloisField) -> Self {
        Self::new(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, field: &GaloisField, inner: &Self) -> Self {
        if self.is_zero() || inner.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + inner.coeffs.len() - 1];
        for (i, &g) in self.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for (j, &f) in inner.coeffs.iter().enumerate() {
                let term = field.mul(g, field.frobenius(f, i));
                out[i + j] = field.add(out[i + j], term);
            }
        }
        Self::new(out)
    }

    /// Solves `divisor ∘ f = self` for `f`.
    ///
    /// Returns `Ok(None)` when no such `f` exists. Coefficients are recovered
    /// from the top q-degree downward; each step inverts `x ↦ x^{q^d}` where
    /// `d` is the q-degree of the divisor.
    pub fn left_divide(&self, field: &GaloisField, divisor: &Self) -> Result<Option<Self>> {
        let Some(d) = divisor.q_degree() else {
            return Err(Error::ZeroDivisor);
        };
        let Some(top) = self.q_degree() else {
            return Ok(Some(Self::zero()));
        };
        if top < d {
            return Ok(None);
        }
        let lead_inv = field.inv(divisor.coeffs[d])?;
        let deg_f = top - d;
        let mut f = vec![FieldElement::ZERO; deg_f + 1];
        for j in (0..=deg_f).rev() {
            let s = j + d;
            // contributions of already-solved f_{s-i}, i < d
            let mut residual = self.coeff(s);
            for i in 0..d {
                let jj = s - i;
                if jj > deg_f {
                    continue;
                }
                let term = field.mul(divisor.coeff(i), field.frobenius(f[jj], i));
                residual = field.sub(residual, term);
            }
            f[j] = field.frobenius_inv(field.mul(residual, lead_inv), d);
        }
        let f = Self::new(f);
        if divisor.compose(field, &f) == *self {
            Ok(Some(f))
        } else {
            Ok(None)
        }
    }
}
