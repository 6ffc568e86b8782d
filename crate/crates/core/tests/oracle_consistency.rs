//! Cross-checks the optimized exhaustive enumerator against a deliberately
//! naive oracle: evaluate every spanning monomial once, then walk every
//! coefficient vector with plain matrix-vector products and collect the
//! distinct codewords. No echelon form, no Gray stepping, no scalar-class
//! skipping, no incremental weights — if the two disagree, the fast path is
//! wrong.

use std::collections::{BTreeMap, BTreeSet};

use prm_core::codes::{monomial_basis, Domain};
use prm_core::gf::FieldElement;
use prm_core::poly::Polynomial;
use prm_core::{dimension, exhaustive_low_weights, CodeSpec, Field, OracleOptions};

struct NaiveSurvey {
    dim: usize,
    w1: usize,
    w2: Option<usize>,
    /// weight -> count over distinct nonzero codewords.
    spectrum: BTreeMap<usize, u64>,
}

fn naive_survey(cs: &CodeSpec) -> NaiveSurvey {
    let field = &cs.field;
    let q = field.order();
    let basis = monomial_basis(cs);
    let domain = Domain::build(cs);

    // Row per monomial, evaluated with the plain (table-free) eval path.
    let rows: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|m| {
            let poly = Polynomial::monomial(cs.nvars(), m.clone(), FieldElement::ONE);
            match &domain {
                Domain::Affine(points) => {
                    points.iter().map(|p| poly.eval(field, &p.coords)).collect()
                }
                Domain::Projective(space) => space
                    .points()
                    .iter()
                    .map(|p| poly.eval(field, &p.coords))
                    .collect(),
            }
        })
        .collect();
    let length = domain.len();

    let total = (q as u64).pow(basis.len() as u32);
    let mut distinct: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut coeffs = vec![FieldElement::ZERO; basis.len()];
    for t in 0..total {
        let mut rest = t;
        for c in coeffs.iter_mut() {
            *c = field.element(rest % q as u64).unwrap();
            rest /= q as u64;
        }
        let mut v = vec![FieldElement::ZERO; length];
        for (ci, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (pos, x) in v.iter_mut().enumerate() {
                *x = field.add(*x, field.mul(c, rows[ci][pos]));
            }
        }
        distinct.insert(v.iter().map(|x| x.index()).collect());
    }

    let mut spectrum: BTreeMap<usize, u64> = BTreeMap::new();
    for cw in &distinct {
        let w = cw.iter().filter(|&&x| x != 0).count();
        if w > 0 {
            *spectrum.entry(w).or_insert(0) += 1;
        }
    }
    let mut weights = spectrum.keys().copied();
    let w1 = weights.next().expect("code has nonzero codewords");
    let w2 = weights.next();

    // |code| = q^dim.
    let mut dim = 0;
    let mut size = distinct.len();
    while size > 1 {
        assert_eq!(size % q, 0, "code size must be a power of q");
        size /= q;
        dim += 1;
    }

    NaiveSurvey {
        dim,
        w1,
        w2,
        spectrum,
    }
}

fn check(cs: CodeSpec, expect: (usize, Option<usize>)) {
    let naive = naive_survey(&cs);
    let fast = exhaustive_low_weights(
        &cs,
        &OracleOptions {
            collect_spectrum: true,
            ..OracleOptions::default()
        },
    )
    .unwrap();
    assert_eq!(
        (naive.w1, naive.w2),
        expect,
        "naive oracle vs frozen values"
    );
    assert_eq!((fast.w1, fast.w2), expect, "fast oracle vs frozen values");
    assert_eq!(naive.dim, fast.dim);
    assert_eq!(naive.dim, dimension(&cs).unwrap());
    assert_eq!(naive.spectrum, fast.spectrum.unwrap());
}

#[test]
fn rm_2_1_over_f3() {
    let cs = CodeSpec::rm(Field::of_order(3).unwrap(), 2, 1).unwrap();
    check(cs, (6, Some(9)));
}

#[test]
fn prm_2_2_over_f3() {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 2, 2).unwrap();
    check(cs, (6, Some(9)));
}

#[test]
fn prm_1_2_over_f3() {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 1, 2).unwrap();
    check(cs, (2, Some(3)));
}

#[test]
fn rm_2_2_over_f2_is_the_full_space() {
    let cs = CodeSpec::rm(Field::of_order(2).unwrap(), 2, 2).unwrap();
    check(cs, (1, Some(2)));
}

#[test]
fn prm_2_2_over_f2() {
    let cs = CodeSpec::prm(Field::of_order(2).unwrap(), 2, 2).unwrap();
    check(cs, (2, Some(4)));
}

#[test]
fn prm_2_3_over_f3() {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 2, 3).unwrap();
    check(cs, (3, Some(4)));
}

// Extension fields: element indices are base-p digit vectors, so index
// arithmetic and field arithmetic disagree; these cases pin the Gray-step
// deltas to the field subtraction (the prime-field cases cannot tell the
// difference).

#[test]
fn rm_1_2_over_f4() {
    let cs = CodeSpec::rm(Field::of_order(4).unwrap(), 1, 2).unwrap();
    // Weight 3 comes from linear factors and double-root quadratics.
    check(cs, (2, Some(3)));
}

#[test]
fn prm_2_2_over_f4() {
    let cs = CodeSpec::prm(Field::of_order(4).unwrap(), 2, 2).unwrap();
    check(cs, (12, Some(16)));
}

#[test]
fn prm_1_2_over_f4() {
    let cs = CodeSpec::prm(Field::of_order(4).unwrap(), 1, 2).unwrap();
    check(cs, (3, Some(4)));
}

#[test]
fn rm_1_2_over_f8() {
    let cs = CodeSpec::rm(Field::of_order(8).unwrap(), 1, 2).unwrap();
    check(cs, (6, Some(7)));
}

#[test]
fn rm_1_3_over_f9() {
    let cs = CodeSpec::rm(Field::of_order(9).unwrap(), 1, 3).unwrap();
    check(cs, (6, Some(7)));
}

#[test]
fn prm_3_2_over_f3() {
    let cs = CodeSpec::prm(Field::of_order(3).unwrap(), 3, 2).unwrap();
    check(cs, (18, Some(24)));
}

/// Rank sanity for a case too large for the naive oracle: an independent
/// textbook elimination on the evaluation matrix and its transpose.
#[test]
fn prm_2_4_over_f3_rank_is_12() {
    let field = Field::of_order(3).unwrap();
    let cs = CodeSpec::prm(field.clone(), 2, 4).unwrap();
    let basis = monomial_basis(&cs);
    assert_eq!(basis.len(), 15);
    let domain = Domain::build(&cs);
    let rows: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|m| {
            let poly = Polynomial::monomial(3, m.clone(), FieldElement::ONE);
            match &domain {
                Domain::Projective(space) => space
                    .points()
                    .iter()
                    .map(|p| poly.eval(&field, &p.coords))
                    .collect(),
                Domain::Affine(_) => unreachable!(),
            }
        })
        .collect();

    fn rank_by_elimination(field: &Field, mut m: Vec<Vec<FieldElement>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row: Vec<FieldElement> = m[rank][col..].to_vec();
            let pivot_inv = field.inv(pivot_row[0]).unwrap();
            for row in m.iter_mut().skip(rank + 1) {
                if !row[col].is_zero() {
                    let factor = field.mul(row[col], pivot_inv);
                    for (x, &pv) in row[col..].iter_mut().zip(&pivot_row) {
                        *x = field.sub(*x, field.mul(factor, pv));
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    let transpose: Vec<Vec<FieldElement>> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    assert_eq!(rank_by_elimination(&field, rows), 12);
    assert_eq!(rank_by_elimination(&field, transpose), 12);
    assert_eq!(dimension(&cs).unwrap(), 12);
}
