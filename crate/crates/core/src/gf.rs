//! Arithmetic in small finite fields `F_q`, `q = p^m`.
//!
//! Elements are integer indices `0..q-1` read as base-`p` digit vectors: the
//! index encodes the coefficients of a polynomial of degree `< m` over `F_p`
//! (least significant digit = constant term). Index 0 is the additive
//! identity and index 1 the multiplicative identity. All operations are
//! table-driven, which keeps the per-operation cost at a single lookup; the
//! `q x q` tables stay tiny because the supported order is capped.

use std::fmt;
use thiserror::Error;

/// Largest supported field order. Everything downstream enumerates points or
/// codewords, so larger orders only inflate search budgets.
pub const MAX_FIELD_ORDER: u64 = 27;

/// Built-in irreducible moduli, coefficient vectors in ascending degree
/// (constant term first, monic). Fixing these pins down element indexing and
/// therefore every enumeration order and output file.
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (3, 2, &[1, 0, 1]),       // x^2 + 1
    (3, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
    (5, 2, &[1, 1, 1]),       // x^2 + x + 1
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    OrderTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no built-in modulus for {p}^{m}; pass one explicitly")]
    NoBuiltinModulus { p: u64, m: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    BadModulusShape { expected: u32, p: u64 },
    #[error("modulus has root {root} in F_{p}, so it is reducible")]
    ModulusHasRoot { root: u64, p: u64 },
    #[error("modulus has a factor of degree {degree}, so it is reducible")]
    ModulusReducible { degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {index} out of range for field of order {q}")]
    ElementOutOfRange { index: u64, q: u64 },
}

/// An element of a fixed field, identified by its index. Meaningful only
/// relative to the [`Field`] that produced it; arithmetic goes through the
/// field's methods.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(pub(crate) u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field `F_q` with precomputed operation tables.
#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(q={})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over F_p on coefficient vectors, used once while
/// building the tables.
mod fp_poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a monic `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let deg_m = m.len() - 1;
        while r.len() > deg_m {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - deg_m;
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * mi) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc
    }
}

impl Field {
    /// Builds `F_{p^m}`. When `modulus` is omitted and `m >= 2`, the pair
    /// `(p, m)` must be covered by the built-in table.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(p)
                .ok_or(FieldError::OrderTooLarge(u64::MAX))?;
            if q > MAX_FIELD_ORDER {
                return Err(FieldError::OrderTooLarge(q));
            }
        }
        let modulus: Vec<u64> = if m == 1 {
            // Unused for prime fields; record x for completeness.
            vec![0, 1]
        } else {
            match modulus {
                Some(c) => c.to_vec(),
                None => BUILTIN_MODULI
                    .iter()
                    .find(|&&(bp, bm, _)| bp == p && bm == m)
                    .map(|&(_, _, c)| c.to_vec())
                    .ok_or(FieldError::NoBuiltinModulus { p, m })?,
            }
        };
        if m >= 2 {
            validate_modulus(&modulus, p, m)?;
        }
        Ok(build_field(p, m, q as usize, modulus))
    }

    /// Builds a field of the given order using built-in moduli, factoring
    /// `q = p^m` automatically.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        if q < 2 {
            return Err(FieldError::NotPrimePower(q));
        }
        let mut p = 2;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let mut m = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotPrimePower(q));
        }
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order as a usize (it is at most [`MAX_FIELD_ORDER`]).
    pub fn order(&self) -> usize {
        self.q
    }

    /// Modulus coefficients in ascending degree (constant first).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Canonical text form accepted back by the CLI: `q` for prime fields,
    /// `q:c0,c1,...,cm` otherwise.
    pub fn label(&self) -> String {
        if self.m == 1 {
            format!("{}", self.q)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
            format!("{}:{}", self.q, coeffs.join(","))
        }
    }

    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.q as u64 {
            Ok(FieldElement(index as u8))
        } else {
            Err(FieldError::ElementOutOfRange {
                index,
                q: self.q as u64,
            })
        }
    }

    /// All q elements in the frozen enumeration order 0, 1, ..., q-1.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u8).map(FieldElement)
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q as u8).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(FieldElement(self.inv[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// Monic, right degree, in-range coefficients, no root in F_p, and for
/// m >= 4 no factor of degree 2..=m/2 (trial division; the no-root check
/// already rules out linear factors, so this settles irreducibility).
fn validate_modulus(modulus: &[u64], p: u64, m: u32) -> Result<(), FieldError> {
    if modulus.len() != m as usize + 1
        || modulus.last() != Some(&1)
        || modulus.iter().any(|&c| c >= p)
    {
        return Err(FieldError::BadModulusShape { expected: m, p });
    }
    for x in 0..p {
        if fp_poly::eval(modulus, x, p) == 0 {
            return Err(FieldError::ModulusHasRoot { root: x, p });
        }
    }
    for deg in 2..=(m / 2) {
        // All monic polynomials of this degree.
        let count = p.pow(deg);
        for t in 0..count {
            let mut cand = Vec::with_capacity(deg as usize + 1);
            let mut v = t;
            for _ in 0..deg {
                cand.push(v % p);
                v /= p;
            }
            cand.push(1);
            if fp_poly::rem(modulus, &cand, p).is_empty() {
                return Err(FieldError::ModulusReducible { degree: deg });
            }
        }
    }
    Ok(())
}

fn index_to_digits(idx: usize, p: u64, m: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(m as usize);
    let mut rest = idx as u64;
    for _ in 0..m {
        v.push(rest % p);
        rest /= p;
    }
    v
}

fn digits_to_index(digits: &[u64], p: u64) -> usize {
    let mut idx = 0u64;
    for &d in digits.iter().rev() {
        idx = idx * p + d;
    }
    idx as usize
}

fn build_field(p: u64, m: u32, q: usize, modulus: Vec<u64>) -> Field {
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];

    for a in 0..q {
        let da = index_to_digits(a, p, m);
        for b in 0..q {
            let db = index_to_digits(b, p, m);
            let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[a * q + b] = digits_to_index(&sum, p) as u8;

            let prod = if m == 1 {
                vec![(da[0] * db[0]) % p]
            } else {
                let raw = fp_poly::mul(&da, &db, p);
                let mut r = fp_poly::rem(&raw, &modulus, p);
                r.resize(m as usize, 0);
                r
            };
            mul[a * q + b] = digits_to_index(&prod, p) as u8;
        }
        let negd: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
        neg[a] = digits_to_index(&negd, p) as u8;
    }
    for a in 1..q {
        for b in 1..q {
            if mul[a * q + b] == 1 {
                inv[a] = b as u8;
                break;
            }
        }
        debug_assert!(inv[a] != 0, "every nonzero element must have an inverse");
    }

    Field {
        p,
        m,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    }
}
