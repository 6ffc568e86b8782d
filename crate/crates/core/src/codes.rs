//! Evaluation codes from polynomial spaces: construction, dimension by rank,
//! and an exhaustive low-weight oracle.
//!
//! The oracle enumerates the row space of the reduced generator matrix with
//! a reflected mixed-radix Gray walk, so moving to the next codeword costs
//! one row addition instead of a full matrix-vector product, and the Hamming
//! weight is maintained incrementally. Scalar classes (messages whose first
//! nonzero entry is 1) are enumerated by default, which divides the work by
//! `q - 1` without losing any weight information.

use std::collections::BTreeMap;
use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::PointSet;
use crate::gf::{Field, FieldElement};
use crate::poly::{Monomial, Polynomial, PowTable};
use crate::space::{affine_points, AffinePoint, ProjectiveSpace};

/// Default cap on the number of codewords the exhaustive oracle will visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// Cap on evaluation-matrix size (entries), to refuse absurd parameter sets
/// before allocating.
const MATRIX_ENTRY_LIMIT: u64 = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodesError {
    #[error("polynomial has {found} variables, the code expects {expected}")]
    VariableCount { expected: usize, found: usize },
    #[error("projective encoding requires a homogeneous polynomial of degree {d}")]
    NotHomogeneous { d: u32 },
    #[error("invalid code parameters: {0}")]
    BadParameters(String),
    #[error(
        "exhaustive enumeration needs {needed} codewords, budget is {budget}; \
         use the randomized search instead"
    )]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("evaluation matrix would have {entries} entries, limit is {limit}")]
    MatrixTooLarge { entries: u128, limit: u64 },
    #[error("the code has no nonzero codewords")]
    EmptyCode,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum CodeFamily {
    #[serde(rename = "RM")]
    Rm,
    #[serde(rename = "PRM")]
    Prm,
}

impl std::fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeFamily::Rm => write!(f, "RM"),
            CodeFamily::Prm => write!(f, "PRM"),
        }
    }
}

/// A code instance: family, field, ambient dimension n and order d.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub family: CodeFamily,
    pub field: Field,
    pub n: usize,
    pub d: u32,
}

impl CodeSpec {
    pub fn new(family: CodeFamily, field: Field, n: usize, d: u32) -> Result<Self, CodesError> {
        if n < 1 {
            return Err(CodesError::BadParameters("n must be at least 1".into()));
        }
        if d < 1 {
            return Err(CodesError::BadParameters("d must be at least 1".into()));
        }
        Ok(CodeSpec {
            family,
            field,
            n,
            d,
        })
    }

    pub fn rm(field: Field, n: usize, d: u32) -> Result<Self, CodesError> {
        CodeSpec::new(CodeFamily::Rm, field, n, d)
    }

    pub fn prm(field: Field, n: usize, d: u32) -> Result<Self, CodesError> {
        CodeSpec::new(CodeFamily::Prm, field, n, d)
    }

    /// Number of evaluation points: q^n for RM, q^n + ... + 1 for PRM.
    pub fn length(&self) -> usize {
        let q = self.field.order();
        match self.family {
            CodeFamily::Rm => q.pow(self.n as u32),
            CodeFamily::Prm => crate::space::projective_count(q, self.n),
        }
    }

    /// Variable count expected of input polynomials.
    pub fn nvars(&self) -> usize {
        match self.family {
            CodeFamily::Rm => self.n,
            CodeFamily::Prm => self.n + 1,
        }
    }
}

/// Evaluation vector over the frozen point ordering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeword {
    values: Vec<FieldElement>,
}

impl Codeword {
    pub fn from_values(values: Vec<FieldElement>) -> Self {
        Codeword { values }
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> PointSet {
        PointSet::from_indices(
            self.values.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, _)| i),
        )
    }

    /// Indices of the zero entries.
    pub fn zero_set(&self) -> PointSet {
        self.support().complement()
    }
}

/// The evaluation domain of a code, built once and reused across encodings.
pub enum Domain {
    Affine(Vec<AffinePoint>),
    Projective(ProjectiveSpace),
}

impl Domain {
    pub fn build(cs: &CodeSpec) -> Domain {
        match cs.family {
            CodeFamily::Rm => Domain::Affine(affine_points(&cs.field, cs.n)),
            CodeFamily::Prm => Domain::Projective(ProjectiveSpace::new(cs.field.clone(), cs.n)),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Domain::Affine(pts) => pts.len(),
            Domain::Projective(space) => space.num_points(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn projective(&self) -> Option<&ProjectiveSpace> {
        match self {
            Domain::Projective(space) => Some(space),
            Domain::Affine(_) => None,
        }
    }
}

/// Monomials spanning the code, in ascending lexicographic order.
///
/// RM: every exponent at most q-1 and total degree at most d (representatives
/// of the quotient by the field equations). PRM: every monomial of total
/// degree exactly d; the quotient is realized by taking the row space of
/// their evaluations.
pub fn monomial_basis(cs: &CodeSpec) -> Vec<Monomial> {
    let mut out = Vec::new();
    match cs.family {
        CodeFamily::Rm => {
            let cap = (cs.field.order() - 1) as u16;
            let mut exps = vec![0u16; cs.n];
            collect_bounded(&mut out, &mut exps, 0, cap, cs.d);
        }
        CodeFamily::Prm => {
            let mut exps = vec![0u16; cs.n + 1];
            collect_exact(&mut out, &mut exps, 0, cs.d);
        }
    }
    out
}

fn collect_bounded(out: &mut Vec<Monomial>, exps: &mut Vec<u16>, var: usize, cap: u16, left: u32) {
    if var == exps.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    let max = (cap as u32).min(left) as u16;
    for e in 0..=max {
        exps[var] = e;
        collect_bounded(out, exps, var + 1, cap, left - e as u32);
    }
    exps[var] = 0;
}

fn collect_exact(out: &mut Vec<Monomial>, exps: &mut Vec<u16>, var: usize, left: u32) {
    if var == exps.len() - 1 {
        exps[var] = left as u16;
        out.push(Monomial::new(exps.clone()));
        exps[var] = 0;
        return;
    }
    for e in 0..=left {
        exps[var] = e as u16;
        collect_exact(out, exps, var + 1, left - e);
    }
    exps[var] = 0;
}

/// Evaluates a polynomial over the code's frozen point ordering.
pub fn encode(cs: &CodeSpec, poly: &Polynomial) -> Result<Codeword, CodesError> {
    let domain = Domain::build(cs);
    encode_on(cs, &domain, poly)
}

pub fn encode_on(
    cs: &CodeSpec,
    domain: &Domain,
    poly: &Polynomial,
) -> Result<Codeword, CodesError> {
    if poly.nvars() != cs.nvars() {
        return Err(CodesError::VariableCount {
            expected: cs.nvars(),
            found: poly.nvars(),
        });
    }
    let field = &cs.field;
    match (cs.family, domain) {
        (CodeFamily::Rm, Domain::Affine(points)) => {
            let reduced = poly.reduce_affine(field);
            let pows = PowTable::new(field, reduced.max_exponent());
            let values = points
                .iter()
                .map(|p| reduced.eval_with(field, &pows, &p.coords))
                .collect();
            Ok(Codeword { values })
        }
        (CodeFamily::Prm, Domain::Projective(space)) => {
            if !poly.is_homogeneous(cs.d) {
                return Err(CodesError::NotHomogeneous { d: cs.d });
            }
            let pows = PowTable::new(field, poly.max_exponent());
            let values = space
                .points()
                .iter()
                .map(|p| poly.eval_with(field, &pows, &p.coords))
                .collect();
            Ok(Codeword { values })
        }
        _ => unreachable!("domain built for a different family"),
    }
}

/// Reduced generator matrix: the row-reduced echelon form of the
/// basis-monomial evaluation matrix, plus the combination of basis monomials
/// behind each row so enumerated codewords can be mapped back to
/// polynomials.
pub struct GeneratorMatrix {
    pub basis: Vec<Monomial>,
    pub rows: Vec<Vec<FieldElement>>,
    pub combos: Vec<Vec<FieldElement>>,
}

impl GeneratorMatrix {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn length(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Polynomial whose encoding is `message x rows`.
    pub fn polynomial_for_message(
        &self,
        field: &Field,
        nvars: usize,
        message: &[FieldElement],
    ) -> Polynomial {
        debug_assert_eq!(message.len(), self.rows.len());
        let mut coeffs = vec![FieldElement::ZERO; self.basis.len()];
        for (mi, &m) in message.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (ci, &c) in self.combos[mi].iter().enumerate() {
                coeffs[ci] = field.add(coeffs[ci], field.mul(m, c));
            }
        }
        let mut poly = Polynomial::zero(nvars);
        for (ci, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly = poly.add(
                    field,
                    &Polynomial::monomial(nvars, self.basis[ci].clone(), c),
                );
            }
        }
        poly
    }
}

pub fn generator_matrix(cs: &CodeSpec, domain: &Domain) -> Result<GeneratorMatrix, CodesError> {
    let basis = monomial_basis(cs);
    let length = domain.len();
    let entries = basis.len() as u128 * length as u128;
    if entries > MATRIX_ENTRY_LIMIT as u128 {
        return Err(CodesError::MatrixTooLarge {
            entries,
            limit: MATRIX_ENTRY_LIMIT,
        });
    }
    let field = &cs.field;
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(basis.len());
    for mono in &basis {
        let poly = Polynomial::monomial(cs.nvars(), mono.clone(), FieldElement::ONE);
        // Monomials of either family pass the encode checks by construction.
        rows.push(encode_on(cs, domain, &poly)?.values);
    }
    // Gauss-Jordan over F_q, carrying the identity to record combinations.
    let mut combos: Vec<Vec<FieldElement>> = (0..basis.len())
        .map(|i| {
            let mut row = vec![FieldElement::ZERO; basis.len()];
            row[i] = FieldElement::ONE;
            row
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..length {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        combos.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        scale_row(field, &mut rows[rank], inv);
        scale_row(field, &mut combos[rank], inv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = field.neg(rows[r][col]);
                add_scaled(field, &mut rows, r, rank, factor);
                add_scaled(field, &mut combos, r, rank, factor);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    combos.truncate(rank);
    Ok(GeneratorMatrix {
        basis,
        rows,
        combos,
    })
}

fn scale_row(field: &Field, row: &mut [FieldElement], c: FieldElement) {
    for v in row.iter_mut() {
        *v = field.mul(*v, c);
    }
}

fn add_scaled(
    field: &Field,
    rows: &mut [Vec<FieldElement>],
    dst: usize,
    src: usize,
    factor: FieldElement,
) {
    debug_assert_ne!(dst, src);
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, &y) in a.iter_mut().zip(b.iter()) {
        *x = field.add(*x, field.mul(factor, y));
    }
}

/// Code dimension, computed as the rank of the evaluation matrix.
pub fn dimension(cs: &CodeSpec) -> Result<usize, CodesError> {
    let domain = Domain::build(cs);
    Ok(generator_matrix(cs, &domain)?.rank())
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Refuse to run if the code has more than this many codewords.
    pub budget: u64,
    /// Worker count; 0 picks min(available parallelism, 8). The result does
    /// not depend on the choice.
    pub threads: usize,
    /// Also return the full weight distribution of the nonzero codewords.
    pub collect_spectrum: bool,
    /// Enumerate one representative per scalar class (weights are invariant
    /// under scalar multiplication).
    pub scalar_classes: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_ENUMERATION_BUDGET,
            threads: 0,
            collect_spectrum: false,
            scalar_classes: true,
        }
    }
}

/// Result of an exhaustive enumeration: the two smallest distinct nonzero
/// weights, witnesses for both, and optionally the whole spectrum.
pub struct WeightSurvey {
    pub dim: usize,
    pub length: usize,
    pub w1: usize,
    pub w2: Option<usize>,
    pub w1_witness: Polynomial,
    pub w2_witness: Option<Polynomial>,
    /// Weight -> number of nonzero codewords of that weight (scalar multiples
    /// included even when classes were skipped).
    pub spectrum: Option<BTreeMap<usize, u64>>,
    /// Codewords actually visited (scalar-class representatives when
    /// skipping is on).
    pub visited: u64,
}

/// Enumerates every nonzero codeword and returns the smallest and
/// second-smallest distinct weights with witnesses.
pub fn exhaustive_low_weights(
    cs: &CodeSpec,
    opts: &OracleOptions,
) -> Result<WeightSurvey, CodesError> {
    let domain = Domain::build(cs);
    let gen = generator_matrix(cs, &domain)?;
    let k = gen.rank();
    if k == 0 {
        return Err(CodesError::EmptyCode);
    }
    let q = cs.field.order();
    let codewords = checked_pow(q as u128, k).ok_or(CodesError::BudgetExceeded {
        needed: u128::MAX,
        budget: opts.budget,
    })?;
    if codewords > opts.budget as u128 {
        return Err(CodesError::BudgetExceeded {
            needed: codewords,
            budget: opts.budget,
        });
    }

    let plans = GroupPlan::build(q, k, opts.scalar_classes);
    let total: u64 = plans.iter().map(|p| p.size).sum();
    let engine = Engine::new(&cs.field, &gen.rows);

    let threads = resolve_threads(opts.threads, total);
    let mut merged = if threads <= 1 {
        let mut collector = Collector::new(opts.collect_spectrum);
        engine.run_range(&plans, 0, total, &mut collector);
        collector
    } else {
        let chunk = total.div_ceil(threads as u64);
        let mut results: Vec<Collector> = Vec::with_capacity(threads);
        thread::scope(|scope| {
            let mut handles = Vec::with_capacity(threads);
            for w in 0..threads as u64 {
                let lo = w * chunk;
                let hi = (lo + chunk).min(total);
                let engine = &engine;
                let plans = &plans;
                let collect_spectrum = opts.collect_spectrum;
                handles.push(scope.spawn(move || {
                    let mut collector = Collector::new(collect_spectrum);
                    if lo < hi {
                        engine.run_range(plans, lo, hi, &mut collector);
                    }
                    collector
                }));
            }
            for h in handles {
                results.push(h.join().expect("enumeration worker panicked"));
            }
        });
        let mut it = results.into_iter();
        let first = it.next().expect("at least one worker");
        it.fold(first, Collector::merge)
    };

    if opts.scalar_classes {
        if let Some(spec) = merged.spectrum.as_mut() {
            for count in spec.values_mut() {
                *count *= (q - 1) as u64;
            }
        }
    }

    let Some((w1, i1)) = merged.best[0] else {
        return Err(CodesError::EmptyCode);
    };
    let rebuild = |idx: u64| {
        let message = message_at(&plans, q, k, idx);
        gen.polynomial_for_message(&cs.field, cs.nvars(), &message)
    };
    let w1_witness = rebuild(i1);
    let (w2, w2_witness) = match merged.best[1] {
        Some((w2, i2)) => (Some(w2), Some(rebuild(i2))),
        None => (None, None),
    };
    Ok(WeightSurvey {
        dim: k,
        length: gen.length(),
        w1,
        w2,
        w1_witness,
        w2_witness,
        spectrum: merged.spectrum.take(),
        visited: merged.visited,
    })
}

fn resolve_threads(requested: usize, total: u64) -> usize {
    if total < 4096 {
        return 1;
    }
    let t = if requested == 0 {
        thread::available_parallelism().map_or(1, |n| n.get().min(8))
    } else {
        requested
    };
    t.max(1)
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// One block of the message enumeration: `base_row` fixed to coefficient 1
/// (or absent in full mode), the rows in `free` swept in Gray order.
struct GroupPlan {
    base_row: Option<usize>,
    free: Vec<usize>,
    size: u64,
}

impl GroupPlan {
    fn build(q: usize, k: usize, scalar_classes: bool) -> Vec<GroupPlan> {
        if scalar_classes {
            (0..k)
                .map(|j| GroupPlan {
                    base_row: Some(j),
                    free: (j + 1..k).collect(),
                    size: (q as u64).pow((k - 1 - j) as u32),
                })
                .collect()
        } else {
            vec![GroupPlan {
                base_row: None,
                free: (0..k).collect(),
                size: (q as u64).pow(k as u32),
            }]
        }
    }
}

/// Reflected mixed-radix Gray digits for local index `t`: plain base-q
/// digits (most significant first), each reflected when the numeric value of
/// the digits above it is odd.
fn gray_digits(q: usize, digits: usize, t: u64) -> Vec<usize> {
    let mut b = vec![0usize; digits];
    let mut rest = t;
    for i in (0..digits).rev() {
        b[i] = (rest % q as u64) as usize;
        rest /= q as u64;
    }
    let mut par = 0u8;
    let mut g = vec![0usize; digits];
    for i in 0..digits {
        g[i] = if par == 0 { b[i] } else { q - 1 - b[i] };
        par = parity_step(q, par, b[i]);
    }
    g
}

#[inline]
fn parity_step(q: usize, par: u8, digit: usize) -> u8 {
    if q.is_multiple_of(2) {
        (digit % 2) as u8
    } else {
        (par + (digit % 2) as u8) % 2
    }
}

/// Message vector at a global enumeration index.
fn message_at(plans: &[GroupPlan], q: usize, k: usize, mut idx: u64) -> Vec<FieldElement> {
    for plan in plans {
        if idx >= plan.size {
            idx -= plan.size;
            continue;
        }
        let g = gray_digits(q, plan.free.len(), idx);
        let mut m = vec![FieldElement::ZERO; k];
        if let Some(j) = plan.base_row {
            m[j] = FieldElement::ONE;
        }
        for (slot, &row) in plan.free.iter().enumerate() {
            m[row] = FieldElement(g[slot] as u8);
        }
        return m;
    }
    unreachable!("index out of range");
}

/// Sparse view of one generator row together with all of its nonzero scalar
/// multiples, so a Gray step can add `(new - old) * row` with one lookup.
/// Stepping a message digit from index v to v+1 changes the coefficient by
/// `elem(v+1) - elem(v)`, which is not the field's 1 in extension fields.
struct RowSupport {
    positions: Vec<u32>,
    /// `scaled[lambda - 1][slot]` = lambda * row[positions[slot]].
    scaled: Vec<Vec<FieldElement>>,
}

struct Engine<'a> {
    field: &'a Field,
    rows: &'a [Vec<FieldElement>],
    supports: Vec<RowSupport>,
    length: usize,
    q: usize,
}

impl<'a> Engine<'a> {
    fn new(field: &'a Field, rows: &'a [Vec<FieldElement>]) -> Self {
        let supports = rows
            .iter()
            .map(|row| {
                let positions: Vec<u32> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, _)| i as u32)
                    .collect();
                let scaled = field
                    .units()
                    .map(|lambda| {
                        positions
                            .iter()
                            .map(|&i| field.mul(lambda, row[i as usize]))
                            .collect()
                    })
                    .collect();
                RowSupport { positions, scaled }
            })
            .collect();
        Engine {
            field,
            rows,
            supports,
            length: rows.first().map_or(0, Vec::len),
            q: field.order(),
        }
    }

    fn run_range(&self, plans: &[GroupPlan], lo: u64, hi: u64, collector: &mut Collector) {
        let mut offset = 0u64;
        for plan in plans {
            let next = offset + plan.size;
            if hi > offset && lo < next {
                let t0 = lo.saturating_sub(offset);
                let t1 = (hi - offset).min(plan.size);
                self.run_group(plan, t0, t1, offset, collector);
            }
            offset = next;
        }
    }

    fn run_group(
        &self,
        plan: &GroupPlan,
        t0: u64,
        t1: u64,
        offset: u64,
        collector: &mut Collector,
    ) {
        let q = self.q;
        let digits = plan.free.len();

        // Seed the plain digits, parities, Gray digits and the codeword.
        let mut b = vec![0usize; digits];
        let mut rest = t0;
        for i in (0..digits).rev() {
            b[i] = (rest % q as u64) as usize;
            rest /= q as u64;
        }
        let mut par = vec![0u8; digits];
        for i in 1..digits {
            par[i] = parity_step(q, par[i - 1], b[i - 1]);
        }
        let mut g = vec![0usize; digits];
        for i in 0..digits {
            g[i] = if par[i] == 0 { b[i] } else { q - 1 - b[i] };
        }

        let mut v = vec![FieldElement::ZERO; self.length];
        if let Some(j) = plan.base_row {
            v.copy_from_slice(&self.rows[j]);
        }
        for (slot, &row) in plan.free.iter().enumerate() {
            if g[slot] != 0 {
                let s = FieldElement(g[slot] as u8);
                for (pos, x) in v.iter_mut().enumerate() {
                    *x = self.field.add(*x, self.field.mul(s, self.rows[row][pos]));
                }
            }
        }
        let mut weight = v.iter().filter(|x| !x.is_zero()).count();
        collector.record(weight, offset + t0);

        for t in t0 + 1..t1 {
            // Advance the plain counter; the Gray digit at the carry top is
            // the only one whose value changes, by exactly +/-1.
            let mut i = digits - 1;
            while b[i] == q - 1 {
                b[i] = 0;
                i -= 1;
            }
            b[i] += 1;
            let old_digit = g[i];
            g[i] = if par[i] == 0 { b[i] } else { q - 1 - b[i] };
            for j in i + 1..digits {
                par[j] = parity_step(q, par[j - 1], b[j - 1]);
            }

            // The message coefficient moves between the field elements with
            // consecutive indices; the applied difference is taken in the
            // field, not on the indices.
            let delta = self
                .field
                .sub(FieldElement(g[i] as u8), FieldElement(old_digit as u8));
            debug_assert!(!delta.is_zero());
            let support = &self.supports[plan.free[i]];
            let scaled = &support.scaled[delta.index() as usize - 1];
            for (&pos, &val) in support.positions.iter().zip(scaled) {
                let pos = pos as usize;
                let old = v[pos];
                let new = self.field.add(old, val);
                if old.is_zero() {
                    if !new.is_zero() {
                        weight += 1;
                    }
                } else if new.is_zero() {
                    weight -= 1;
                }
                v[pos] = new;
            }
            collector.record(weight, offset + t);
        }
    }
}

struct Collector {
    /// Two smallest distinct weights with the smallest enumeration index
    /// achieving each.
    best: [Option<(usize, u64)>; 2],
    spectrum: Option<BTreeMap<usize, u64>>,
    visited: u64,
}

impl Collector {
    fn new(collect_spectrum: bool) -> Self {
        Collector {
            best: [None, None],
            spectrum: collect_spectrum.then(BTreeMap::new),
            visited: 0,
        }
    }

    fn record(&mut self, weight: usize, idx: u64) {
        if weight == 0 {
            // Only the zero codeword, which is skipped by definition.
            return;
        }
        self.visited += 1;
        if let Some(spec) = self.spectrum.as_mut() {
            *spec.entry(weight).or_insert(0) += 1;
        }
        self.offer(weight, idx);
    }

    fn offer(&mut self, weight: usize, idx: u64) {
        match self.best[0] {
            None => self.best[0] = Some((weight, idx)),
            Some((w1, i1)) => {
                if weight < w1 {
                    self.best[1] = self.best[0];
                    self.best[0] = Some((weight, idx));
                } else if weight == w1 {
                    if idx < i1 {
                        self.best[0] = Some((weight, idx));
                    }
                } else {
                    match self.best[1] {
                        None => self.best[1] = Some((weight, idx)),
                        Some((w2, i2)) => {
                            if weight < w2 || (weight == w2 && idx < i2) {
                                self.best[1] = Some((weight, idx));
                            }
                        }
                    }
                }
            }
        }
    }

    fn merge(mut self, other: Collector) -> Collector {
        for entry in other.best.into_iter().flatten() {
            self.offer(entry.0, entry.1);
        }
        self.visited += other.visited;
        match (self.spectrum.as_mut(), other.spectrum) {
            (Some(a), Some(b)) => {
                for (w, c) in b {
                    *a.entry(w).or_insert(0) += c;
                }
            }
            (None, _) => {}
            (Some(_), None) => unreachable!("workers share the spectrum flag"),
        }
        self
    }
}
