//! Extension fields `F_{q^m}` over a prime `q`, in the polynomial basis
//! `1, β, …, β^{m-1}` where `β` is the class of `x` modulo the field modulus.
//!
//! Elements are packed as integers: the element with coordinates
//! `(c_0, …, c_{m-1})` has index `Σ c_i q^i`. Fields with at most `2^16`
//! elements multiply through log/antilog tables; larger ones fall back to
//! polynomial multiplication and reduction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::prime::{poly, PrimeField};
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 32;
const TABLE_LIMIT: u64 = 1 << 16;

/// Default moduli for `q ∈ {2, 3, 5}` and `m ≤ 16`: for each `(q, m)` the
/// monic irreducible polynomial whose coefficient string `c_{m-1} … c_0`
/// is smallest as a base-`q` number. Coefficients are listed low-to-high.
/// Pairs outside the table use the same rule, searched at runtime.
#[rustfmt::skip]
static DEFAULT_MODULI: &[(u32, &[u32])] = &[
    (2, &[0, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[0, 1]),
    (3, &[1, 0, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 1, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 1, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[0, 1]),
    (5, &[2, 0, 1]),
    (5, &[1, 1, 0, 1]),
    (5, &[2, 0, 0, 0, 1]),
    (5, &[1, 4, 0, 0, 0, 1]),
    (5, &[2, 1, 0, 0, 0, 0, 1]),
    (5, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
];

/// Built-in default modulus for `(q, m)`, if the table has one.
pub fn default_modulus(q: u32, m: usize) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(tq, poly)| *tq == q && poly.len() == m + 1)
        .map(|(_, poly)| *poly)
}

/// Smallest monic irreducible polynomial of degree `m` over `F_q`, in the
/// ordering used by the default table.
pub fn smallest_irreducible(q: u32, m: usize) -> Result<Vec<u32>> {
    let fq = PrimeField::new(q)?;
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::InvalidDegree(m));
    }
    let mut candidate = vec![0u32; m + 1];
    candidate[m] = 1;
    loop {
        if poly::is_irreducible(fq, &candidate) {
            return Ok(candidate);
        }
        // odometer over c_0 .. c_{m-1}
        let mut i = 0;
        loop {
            if i == m {
                // irreducible polynomials exist in every degree
                unreachable!("no irreducible polynomial of degree {m} over F_{q}");
            }
            candidate[i] += 1;
            if candidate[i] < q {
                break;
            }
            candidate[i] = 0;
            i += 1;
        }
    }
}

/// `(q, m, modulus)` for an extension field, validated at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    q: u32,
    m: usize,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(q: u32, m: usize, modulus: Vec<u32>) -> Result<Self> {
        let fq = PrimeField::new(q)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidDegree(m));
        }
        checked_order(q, m)?;
        if modulus.len() != m + 1 || modulus[m] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(Error::MalformedModulus { q, m });
        }
        if !poly::is_irreducible(fq, &modulus) {
            return Err(Error::ReducibleModulus { q, m });
        }
        Ok(Self { q, m, modulus })
    }

    /// The spec from the built-in table (or the runtime search beyond it).
    pub fn default_for(q: u32, m: usize) -> Result<Self> {
        match default_modulus(q, m) {
            Some(p) => Self::new(q, m, p.to_vec()),
            None => Self::new(q, m, smallest_irreducible(q, m)?),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

fn checked_order(q: u32, m: usize) -> Result<u64> {
    u64::from(q)
        .checked_pow(m as u32)
        .ok_or(Error::FieldTooLarge { q, m })
}

/// Per-`(q, m)` modulus overrides on top of the default table.
///
/// Entries are stored as given; [`ModulusTable::validate`] reports the first
/// entry that is not a valid modulus, and [`ModulusTable::spec`] refuses to
/// build a field from one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModulusTable {
    overrides: BTreeMap<(u32, usize), Vec<u32>>,
}

impl ModulusTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a modulus of degree `modulus.len() - 1` for characteristic `q`.
    pub fn insert(&mut self, q: u32, modulus: Vec<u32>) {
        let m = modulus.len().saturating_sub(1);
        self.overrides.insert((q, m), modulus);
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, usize, &[u32])> {
        self.overrides.iter().map(|(&(q, m), p)| (q, m, p.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.overrides.is_empty()
    }

    pub fn spec(&self, q: u32, m: usize) -> Result<FieldSpec> {
        match self.overrides.get(&(q, m)) {
            Some(p) => FieldSpec::new(q, m, p.clone()),
            None => FieldSpec::default_for(q, m),
        }
    }

    /// Checks every override, returning `(q, m, error)` for the first bad one.
    pub fn validate(&self) -> core::result::Result<(), (u32, usize, Error)> {
        for (q, m, p) in self.entries() {
            FieldSpec::new(q, m, p.to_vec()).map_err(|e| (q, m, e))?;
        }
        Ok(())
    }
}

/// An element of `F_{q^m}`, stored as its packed coordinate index.
///
/// The index is only meaningful together with the [`GaloisField`] it came
/// from; use [`GaloisField::expand`] for coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field `F_{q^m}` described by a [`FieldSpec`], with precomputed tables.
#[derive(Debug, Clone)]
pub struct GaloisField {
    spec: FieldSpec,
    fq: PrimeField,
    order: u64,
    q_pows: Vec<u64>,
    tables: Option<LogTables>,
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Self {
        let fq = PrimeField::new(spec.q).expect("validated by FieldSpec");
        let order = checked_order(spec.q, spec.m).expect("validated by FieldSpec");
        let q_pows = (0..=spec.m as u32)
            .map(|i| u64::from(spec.q).saturating_pow(i))
            .collect();
        let mut field = Self {
            spec,
            fq,
            order,
            q_pows,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        field
    }

    /// Convenience constructor from the default modulus table.
    pub fn with_default_modulus(q: u32, m: usize) -> Result<Self> {
        Ok(Self::new(FieldSpec::default_for(q, m)?))
    }

    fn build_tables(&self) -> LogTables {
        let n = self.order - 1;
        let generator = (1..self.order)
            .map(FieldElement)
            .find(|&g| self.is_generator(g))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.order as usize];
        let mut cur = FieldElement::ONE;
        for i in 0..n {
            exp.push(cur.0 as u32);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_poly(cur, generator);
        }
        LogTables { exp, log }
    }

    fn is_generator(&self, g: FieldElement) -> bool {
        let n = self.order - 1;
        let mut rest = n;
        let mut p = 2;
        let mut primes = Vec::new();
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                primes.push(p);
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        primes
            .into_iter()
            .all(|p| self.pow_poly(g, n / p) != FieldElement::ONE)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fq
    }

    /// Number of elements, `q^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.order
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index))
        } else {
            Err(Error::ElementOutOfField(index))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.order))
    }

    /// The class `β` of `x` modulo the modulus.
    pub fn beta(&self) -> FieldElement {
        if self.spec.m >= 2 {
            FieldElement(u64::from(self.spec.q))
        } else {
            // x ≡ -c_0 modulo x + c_0
            FieldElement(u64::from(self.fq.neg(self.spec.modulus[0])))
        }
    }

    /// `1, β, …, β^{count-1}`.
    pub fn polynomial_basis(&self, count: usize) -> Vec<FieldElement> {
        let beta = self.beta();
        (0..count).map(|i| self.pow(beta, i as u64)).collect()
    }

    /// Coordinates over `F_q` in the polynomial basis.
    pub fn expand(&self, a: FieldElement) -> Vec<u32> {
        let q = u64::from(self.spec.q);
        let mut v = a.0;
        (0..self.spec.m)
            .map(|_| {
                let d = (v % q) as u32;
                v /= q;
                d
            })
            .collect()
    }

    pub fn contract(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.spec.m {
            return Err(Error::LengthMismatch {
                expected: self.spec.m,
                got: coords.len(),
            });
        }
        let mut index = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.spec.q {
                return Err(Error::InvalidCoordinate {
                    value: c,
                    q: self.spec.q,
                });
            }
            index += u64::from(c) * self.q_pows[i];
        }
        Ok(FieldElement(index))
    }

    /// Checked arithmetic: both operands must belong to this field.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::ElementOutOfField(x.0));
            }
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.spec.q == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.combine(a, b, |x, y| self.fq.add(x, y))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.spec.q == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.combine(a, b, |x, y| self.fq.sub(x, y))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        self.combine(a, FieldElement::ZERO, |x, _| self.fq.mul(c, x))
    }

    fn combine(&self, a: FieldElement, b: FieldElement, f: impl Fn(u32, u32) -> u32) -> FieldElement {
        let q = u64::from(self.spec.q);
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for i in 0..self.spec.m {
            let d = f((x % q) as u32, (y % q) as u32);
            out += u64::from(d) * self.q_pows[i];
            x /= q;
            y /= q;
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = t.exp.len();
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(u64::from(t.exp[if s >= n { s - n } else { s }]))
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let pa = self.expand(a);
        let pb = self.expand(b);
        let prod = poly::mul(self.fq, &pa, &pb);
        let r = poly::rem(self.fq, &prod, &self.spec.modulus);
        let mut coords = r;
        coords.resize(self.spec.m, 0);
        self.contract(&coords).expect("reduced polynomial has m coordinates")
    }

    fn pow_poly(&self, mut base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        if exp == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = t.exp.len() as u64;
                let e = (u128::from(t.log[a.0 as usize]) * u128::from(exp % n)) % u128::from(n);
                FieldElement(u64::from(t.exp[e as usize]))
            }
            None => self.pow_poly(a, exp),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = t.exp.len();
                let l = t.log[a.0 as usize] as usize;
                FieldElement(u64::from(t.exp[(n - l) % n]))
            }
            None => self.pow_poly(a, self.order - 2),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^{q^i}`. Only `i mod m` matters.
    pub fn frobenius(&self, a: FieldElement, i: usize) -> FieldElement {
        let i = i % self.spec.m;
        if i == 0 || a.is_zero() {
            return a;
        }
        match &self.tables {
            Some(_) => self.pow(a, self.q_pows[i]),
            None => {
                let mut x = a;
                for _ in 0..i {
                    x = self.pow_poly(x, u64::from(self.spec.q));
                }
                x
            }
        }
    }

    /// Inverse of [`GaloisField::frobenius`]: the unique `b` with `b^{q^i} = a`.
    pub fn frobenius_inv(&self, a: FieldElement, i: usize) -> FieldElement {
        let m = self.spec.m;
        self.frobenius(a, (m - i % m) % m)
    }
}
