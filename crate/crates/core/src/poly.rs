//! Sparse multivariate polynomials over a small finite field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order
//! (and therefore printing) is deterministic. The text syntax is fixed:
//! terms joined by `+`, factors by `*`, powers by `^`, variables `X0..Xn`,
//! coefficients written as element indices. `parse` and `to_text` round-trip
//! exactly.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gf::{Field, FieldElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} variables, got {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("degree {found} exceeds the target degree {target}")]
    DegreeTooLarge { found: u32, target: u32 },
    #[error("parse error at `{at}`: {reason}")]
    Parse { at: String, reason: String },
}

/// Exponent vector; the monomial's degree is the sum of its entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// X_i as a monomial.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, FieldElement::ONE)
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    pub fn monomial(nvars: usize, mono: Monomial, c: FieldElement) -> Self {
        debug_assert_eq!(mono.nvars(), nvars);
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// X_i as a polynomial.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Polynomial::monomial(nvars, Monomial::variable(nvars, i), FieldElement::ONE)
    }

    /// `constant + sum coeffs[i] * X_i`.
    pub fn affine_linear(nvars: usize, constant: FieldElement, coeffs: &[FieldElement]) -> Self {
        debug_assert_eq!(coeffs.len(), nvars);
        let mut p = Polynomial::constant(nvars, constant);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::variable(nvars, i), c);
            }
        }
        p
    }

    /// `sum coeffs[i] * X_i` (no constant term).
    pub fn homogeneous_linear(nvars: usize, coeffs: &[FieldElement]) -> Self {
        Polynomial::affine_linear(nvars, FieldElement::ZERO, coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_exponent(&self) -> u16 {
        self.terms
            .keys()
            .flat_map(|m| m.exps.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// True when every stored monomial has degree exactly `d` (vacuously true
    /// for the zero polynomial).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, field: &Field, mono: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = field.add(*existing, c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, field: &Field, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(field, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &Polynomial) -> Polynomial {
        self.add(field, &other.scale(field, field.neg(FieldElement::ONE)))
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(field, ma.mul(mb), field.mul(ca, cb));
            }
        }
        out
    }

    /// Expanded product of the given factors; the empty product is 1.
    pub fn product(field: &Field, nvars: usize, factors: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::one(nvars);
        for f in factors {
            debug_assert_eq!(f.nvars(), nvars);
            acc = acc.mul(field, f);
        }
        acc
    }

    /// Applies `x^q -> x` to every exponent until all are at most `q - 1`,
    /// merging collided monomials. Evaluation at every affine point is
    /// unchanged.
    pub fn reduce_affine(&self, field: &Field) -> Polynomial {
        let q = field.order() as u16;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in self.terms() {
            let exps: Vec<u16> = m
                .exps
                .iter()
                .map(|&e| if e == 0 { 0 } else { (e - 1) % (q - 1) + 1 })
                .collect();
            out.add_term(field, Monomial::new(exps), c);
        }
        out
    }

    /// Evaluates at a point, with the convention 0^0 = 1.
    pub fn eval(&self, field: &Field, coords: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(coords.len(), self.nvars);
        let mut acc = FieldElement::ZERO;
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, field.pow(coords[i], e as u64));
                }
                if t.is_zero() {
                    break;
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Evaluation against a precomputed power table; this is the hot path
    /// when a polynomial is evaluated at every point of a space.
    pub fn eval_with(
        &self,
        field: &Field,
        pows: &PowTable,
        coords: &[FieldElement],
    ) -> FieldElement {
        debug_assert_eq!(coords.len(), self.nvars);
        let mut acc = FieldElement::ZERO;
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, pows.get(coords[i], e));
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    /// Each term of degree `e` is multiplied by `X0^(target - e)` and the
    /// existing variables shift up by one, producing a homogeneous polynomial
    /// of degree `target` in `nvars + 1` variables. Substituting `X0 = 1`
    /// undoes it.
    pub fn homogenize(&self, target: u32) -> Result<Polynomial, PolyError> {
        if let Some(d) = self.degree() {
            if d > target {
                return Err(PolyError::DegreeTooLarge { found: d, target });
            }
        }
        let nv = self.nvars + 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut exps = Vec::with_capacity(nv);
                exps.push((target - m.degree()) as u16);
                exps.extend_from_slice(&m.exps);
                (Monomial::new(exps), c)
            })
            .collect();
        Ok(Polynomial { nvars: nv, terms })
    }

    /// Substitutes `X0 = 1` and drops the first variable; inverse of
    /// `homogenize` on its image.
    pub fn dehomogenize(&self, field: &Field) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars - 1);
        for (m, c) in self.terms() {
            out.add_term(field, Monomial::new(m.exps[1..].to_vec()), c);
        }
        out
    }

    /// Renders in the fixed text syntax. The zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let mut factors: Vec<String> = Vec::new();
                if c != FieldElement::ONE || m.degree() == 0 {
                    factors.push(format!("{}", c.index()));
                }
                for (i, &e) in m.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("X{i}")),
                        _ => factors.push(format!("X{i}^{e}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses the fixed text syntax in `nvars` variables over `field`.
    pub fn parse(text: &str, nvars: usize, field: &Field) -> Result<Polynomial, PolyError> {
        let err = |at: &str, reason: &str| PolyError::Parse {
            at: at.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err(text, "empty input"));
        }
        let mut out = Polynomial::zero(nvars);
        for term in trimmed.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err(text, "empty term"));
            }
            let mut coeff = FieldElement::ONE;
            let mut exps = vec![0u16; nvars];
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(err(term, "empty factor"));
                }
                if let Some(rest) = factor.strip_prefix(['X', 'x']) {
                    let (var_str, exp) = match rest.split_once('^') {
                        Some((v, e)) => {
                            let exp: u16 =
                                e.trim().parse().map_err(|_| err(factor, "bad exponent"))?;
                            (v.trim(), exp)
                        }
                        None => (rest.trim(), 1),
                    };
                    let idx: usize = var_str
                        .parse()
                        .map_err(|_| err(factor, "bad variable index"))?;
                    if idx >= nvars {
                        return Err(err(
                            factor,
                            &format!("variable index out of range (nvars = {nvars})"),
                        ));
                    }
                    exps[idx] = exps[idx]
                        .checked_add(exp)
                        .ok_or_else(|| err(factor, "exponent overflow"))?;
                } else {
                    let v: u64 = factor
                        .parse()
                        .map_err(|_| err(factor, "expected coefficient or variable"))?;
                    let c = field
                        .element(v)
                        .map_err(|_| err(factor, "coefficient index out of field range"))?;
                    coeff = field.mul(coeff, c);
                }
            }
            out.add_term(field, Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `pows.get(v, e) = v^e` for every field element `v` and `e <= max_exp`,
/// with 0^0 = 1.
pub struct PowTable {
    max_exp: u16,
    table: Vec<FieldElement>,
}

impl PowTable {
    pub fn new(field: &Field, max_exp: u16) -> Self {
        let q = field.order();
        let mut table = vec![FieldElement::ONE; q * (max_exp as usize + 1)];
        for v in 0..q {
            let base = FieldElement(v as u8);
            let row = v * (max_exp as usize + 1);
            for e in 1..=max_exp as usize {
                table[row + e] = field.mul(table[row + e - 1], base);
            }
        }
        PowTable { max_exp, table }
    }

    #[inline]
    pub fn get(&self, v: FieldElement, e: u16) -> FieldElement {
        debug_assert!(e <= self.max_exp);
        self.table[v.0 as usize * (self.max_exp as usize + 1) + e as usize]
    }
}
