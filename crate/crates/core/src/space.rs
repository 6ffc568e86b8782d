//! Enumeration of affine and projective spaces over a small field, plus the
//! geometric searches used to analyse codeword supports: avoiding
//! hyperplanes, avoiding linear subspaces, and exact hyperplane-union
//! decompositions of zero sets.
//!
//! Orderings are frozen so codeword vectors are bit-stable: affine points in
//! lexicographic order (first coordinate most significant), projective
//! points grouped by the position of the leading 1 and lexicographic within
//! a group. Hyperplanes reuse the projective enumeration via duality.

use std::sync::OnceLock;

use thiserror::Error;

use crate::bitset::PointSet;
use crate::gf::{Field, FieldElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("wrong coordinate count: expected {expected}, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("subspace dimension {r} out of range 0..={max}")]
    SubspaceDimension { r: usize, max: usize },
    #[error("hyperplane-union search needs {needed} combinations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePoint {
    pub coords: Vec<FieldElement>,
}

/// A point of P^n in standard form: first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePoint {
    pub coords: Vec<FieldElement>,
}

/// Dual coordinates, normalized like a point; `P` lies on the hyperplane iff
/// `sum coeffs[i] * P[i] = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    pub coeffs: Vec<FieldElement>,
}

/// A projective linear subspace of dimension `basis.len() - 1`, represented
/// by the reduced row echelon basis of its cone, which is the canonical
/// representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSubspace {
    pub basis: Vec<Vec<FieldElement>>,
}

impl LinearSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }
}

/// All `q^n` points of A^n in lexicographic order; the origin comes first.
pub fn affine_points(field: &Field, n: usize) -> Vec<AffinePoint> {
    let q = field.order();
    let total = q.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut coords = vec![FieldElement::ZERO; n];
    for idx in 0..total {
        let mut rest = idx;
        for i in (0..n).rev() {
            coords[i] = FieldElement((rest % q) as u8);
            rest /= q;
        }
        out.push(AffinePoint {
            coords: coords.clone(),
        });
    }
    out
}

/// `N = q^n + ... + q + 1`.
pub fn projective_count(q: usize, n: usize) -> usize {
    (0..=n).map(|i| q.pow(i as u32)).sum()
}

/// P^n(F_q) with its frozen point order and cached hyperplane incidences.
pub struct ProjectiveSpace {
    field: Field,
    n: usize,
    points: Vec<ProjectivePoint>,
    hyperplane_cache: OnceLock<Vec<(Hyperplane, PointSet)>>,
}

impl ProjectiveSpace {
    pub fn new(field: Field, n: usize) -> Self {
        assert!(n >= 1, "projective dimension must be at least 1");
        let q = field.order();
        let mut points = Vec::with_capacity(projective_count(q, n));
        // Leading 1 at position `lead`, remaining coordinates lexicographic.
        for lead in 0..=n {
            let free = n - lead;
            let group = q.pow(free as u32);
            for idx in 0..group {
                let mut coords = vec![FieldElement::ZERO; n + 1];
                coords[lead] = FieldElement::ONE;
                let mut rest = idx;
                for i in (lead + 1..=n).rev() {
                    coords[i] = FieldElement((rest % q) as u8);
                    rest /= q;
                }
                points.push(ProjectivePoint { coords });
            }
        }
        ProjectiveSpace {
            field,
            n,
            points,
            hyperplane_cache: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Scales a nonzero vector so its first nonzero entry is 1.
    pub fn normalize(&self, raw: &[FieldElement]) -> Result<ProjectivePoint, SpaceError> {
        if raw.len() != self.n + 1 {
            return Err(SpaceError::CoordinateCount {
                expected: self.n + 1,
                found: raw.len(),
            });
        }
        let lead = raw
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SpaceError::ZeroVector)?;
        let scale = self.field.inv(raw[lead]).expect("nonzero leading entry");
        Ok(ProjectivePoint {
            coords: raw.iter().map(|&c| self.field.mul(c, scale)).collect(),
        })
    }

    /// Position of a normalized point in the frozen order, computed
    /// arithmetically from the leading-one structure.
    pub fn index_of(&self, point: &ProjectivePoint) -> usize {
        let q = self.field.order();
        let lead = point
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized point is nonzero");
        debug_assert_eq!(point.coords[lead], FieldElement::ONE);
        let mut offset = 0usize;
        for g in 0..lead {
            offset += q.pow((self.n - g) as u32);
        }
        let mut rank = 0usize;
        for i in lead + 1..=self.n {
            rank = rank * q + point.coords[i].index() as usize;
        }
        offset + rank
    }

    /// All N hyperplanes, in the same enumeration order as points.
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        self.points
            .iter()
            .map(|p| Hyperplane {
                coeffs: p.coords.clone(),
            })
            .collect()
    }

    pub fn on_hyperplane(&self, point: &ProjectivePoint, h: &Hyperplane) -> bool {
        let mut acc = FieldElement::ZERO;
        for (&c, &x) in h.coeffs.iter().zip(&point.coords) {
            acc = self.field.add(acc, self.field.mul(c, x));
        }
        acc.is_zero()
    }

    /// Point set of a hyperplane, as indices into the frozen order.
    pub fn hyperplane_members(&self, h: &Hyperplane) -> PointSet {
        let mut s = PointSet::empty(self.num_points());
        for (i, p) in self.points.iter().enumerate() {
            if self.on_hyperplane(p, h) {
                s.insert(i);
            }
        }
        s
    }

    fn hyperplanes_with_members(&self) -> &[(Hyperplane, PointSet)] {
        self.hyperplane_cache.get_or_init(|| {
            self.hyperplanes()
                .into_iter()
                .map(|h| {
                    let m = self.hyperplane_members(&h);
                    (h, m)
                })
                .collect()
        })
    }

    /// First hyperplane (in enumeration order) disjoint from `support`, if
    /// any.
    pub fn find_avoiding_hyperplane(&self, support: &PointSet) -> Option<Hyperplane> {
        self.hyperplanes_with_members()
            .iter()
            .find(|(_, members)| members.is_disjoint(support))
            .map(|(h, _)| h.clone())
    }

    /// Points of the subspace spanned by `basis`, via scalar classes of
    /// nonzero combinations.
    pub fn subspace_points(&self, sub: &LinearSubspace) -> PointSet {
        let mut s = PointSet::empty(self.num_points());
        self.for_each_subspace_point(&sub.basis, &mut |idx| {
            s.insert(idx);
            true
        });
        s
    }

    /// Visits the index of every point in the span; the callback returns
    /// false to stop early.
    fn for_each_subspace_point(
        &self,
        basis: &[Vec<FieldElement>],
        visit: &mut impl FnMut(usize) -> bool,
    ) -> bool {
        let q = self.field.order();
        let rows = basis.len();
        // Combinations with first nonzero scalar equal to 1 cover each
        // projective point of the span exactly once.
        for lead in 0..rows {
            let free = rows - lead - 1;
            let total = q.pow(free as u32);
            for idx in 0..total {
                let mut combo = basis[lead].clone();
                let mut rest = idx;
                for r in (lead + 1..rows).rev() {
                    let c = FieldElement((rest % q) as u8);
                    rest /= q;
                    if !c.is_zero() {
                        for (acc, &v) in combo.iter_mut().zip(&basis[r]) {
                            *acc = self.field.add(*acc, self.field.mul(c, v));
                        }
                    }
                }
                let p = self.normalize(&combo).expect("independent rows");
                if !visit(self.index_of(&p)) {
                    return false;
                }
            }
        }
        true
    }

    /// Searches canonical reduced-row-echelon bases for a projective
    /// subspace of dimension `r` disjoint from `support`; returns the first
    /// hit in canonical order.
    pub fn find_avoiding_subspace(
        &self,
        support: &PointSet,
        r: usize,
    ) -> Result<Option<LinearSubspace>, SpaceError> {
        if r > self.n - 1 {
            return Err(SpaceError::SubspaceDimension { r, max: self.n - 1 });
        }
        let rows = r + 1;
        let cols = self.n + 1;
        let q = self.field.order();

        // Pivot columns in lexicographic order.
        let mut pivots: Vec<usize> = (0..rows).collect();
        loop {
            // Free positions: (row, col) with col > pivot(row) and col not a
            // pivot column, filled in row-major order.
            let free: Vec<(usize, usize)> = (0..rows)
                .flat_map(|i| {
                    let pivots = &pivots;
                    (pivots[i] + 1..cols)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let total = (q as u128).pow(free.len() as u32);
            let mut fill = vec![FieldElement::ZERO; free.len()];
            for t in 0..total {
                let mut rest = t;
                for slot in (0..free.len()).rev() {
                    fill[slot] = FieldElement((rest % q as u128) as u8);
                    rest /= q as u128;
                }
                let mut basis = vec![vec![FieldElement::ZERO; cols]; rows];
                for (i, &p) in pivots.iter().enumerate() {
                    basis[i][p] = FieldElement::ONE;
                }
                for (slot, &(i, c)) in free.iter().enumerate() {
                    basis[i][c] = fill[slot];
                }
                let disjoint =
                    self.for_each_subspace_point(&basis, &mut |idx| !support.contains(idx));
                if disjoint {
                    return Ok(Some(LinearSubspace { basis }));
                }
            }
            if !next_combination(&mut pivots, cols) {
                return Ok(None);
            }
        }
    }

    /// Largest `r` (up to n-1) for which an avoiding subspace exists; `None`
    /// when even a single point cannot avoid the support.
    pub fn max_avoiding_subspace_dim(&self, support: &PointSet) -> Option<usize> {
        for r in (0..self.n).rev() {
            if let Ok(Some(_)) = self.find_avoiding_subspace(support, r) {
                return Some(r);
            }
        }
        None
    }

    /// Looks for at most `max_planes` hyperplanes whose union is exactly
    /// `zeros`. Only hyperplanes fully contained in `zeros` are candidates.
    pub fn hyperplane_union(
        &self,
        zeros: &PointSet,
        max_planes: usize,
        budget: u64,
    ) -> Result<Option<Vec<Hyperplane>>, SpaceError> {
        if zeros.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let candidates: Vec<&(Hyperplane, PointSet)> = self
            .hyperplanes_with_members()
            .iter()
            .filter(|(_, members)| members.is_subset(zeros))
            .collect();
        let mut needed: u128 = 0;
        for size in 1..=max_planes.min(candidates.len()) {
            needed = needed.saturating_add(binomial(candidates.len() as u128, size as u128));
        }
        if needed > budget as u128 {
            return Err(SpaceError::BudgetExceeded { needed, budget });
        }
        for size in 1..=max_planes.min(candidates.len()) {
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                let mut union = PointSet::empty(self.num_points());
                for &i in &pick {
                    union.union_with(&candidates[i].1);
                }
                if union == *zeros {
                    return Ok(Some(
                        pick.iter().map(|&i| candidates[i].0.clone()).collect(),
                    ));
                }
                if !next_combination(&mut pick, candidates.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Splits a point set by chart: members on `X0 = 0` versus members with
    /// leading coordinate 1.
    pub fn chart_split(&self, s: &PointSet) -> (usize, usize) {
        let mut at_infinity = 0;
        let mut affine = 0;
        for i in s.iter() {
            if self.points[i].coords[0].is_zero() {
                at_infinity += 1;
            } else {
                affine += 1;
            }
        }
        (at_infinity, affine)
    }
}

/// Advances `comb` to the next k-combination of `0..n` in lexicographic
/// order; returns false after the last one.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - (k - i) {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8) -> FieldElement {
        FieldElement(i)
    }

    #[test]
    fn affine_enumeration_lex() {
        let f2 = Field::of_order(2).unwrap();
        let pts = affine_points(&f2, 2);
        let flat: Vec<Vec<u8>> = pts
            .iter()
            .map(|p| p.coords.iter().map(|c| c.index()).collect())
            .collect();
        assert_eq!(flat, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        let f3 = Field::of_order(3).unwrap();
        assert_eq!(affine_points(&f3, 3).len(), 27);
        assert!(affine_points(&f3, 3)[0].coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn projective_counts_and_order() {
        let f3 = Field::of_order(3).unwrap();
        let p2 = ProjectiveSpace::new(f3, 2);
        assert_eq!(p2.num_points(), 13);
        assert_eq!(
            p2.points()[0].coords,
            vec![e(1), e(0), e(0)],
            "first point is (1:0:...:0)"
        );

        let f2 = Field::of_order(2).unwrap();
        let p3 = ProjectiveSpace::new(f2, 3);
        assert_eq!(p3.num_points(), 15);
    }

    #[test]
    fn index_of_agrees_with_scan() {
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q).unwrap();
            let space = ProjectiveSpace::new(f, 2);
            for (i, p) in space.points().iter().enumerate() {
                assert_eq!(space.index_of(p), i);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 2);
        let p = space.normalize(&[e(0), e(2), e(1)]).unwrap();
        assert_eq!(p.coords, vec![e(0), e(1), e(2)]);
        let p = space.normalize(&[e(1), e(2), e(0)]).unwrap();
        assert_eq!(p.coords, vec![e(1), e(2), e(0)]);
        assert_eq!(
            space.normalize(&[e(0), e(0), e(0)]),
            Err(SpaceError::ZeroVector)
        );

        let f4 = Field::of_order(4).unwrap();
        let space = ProjectiveSpace::new(f4, 1);
        let p = space.normalize(&[e(2), e(2)]).unwrap();
        assert_eq!(p.coords, vec![e(1), e(1)]);
    }

    #[test]
    fn normalize_is_idempotent_and_canonical() {
        let f4 = Field::of_order(4).unwrap();
        let space = ProjectiveSpace::new(f4, 2);
        // Every nonzero raw vector normalizes to exactly one enumerated point.
        let mut seen = vec![0usize; space.num_points()];
        let q = 4;
        for raw_idx in 1..q * q * q {
            let raw = [
                e((raw_idx / (q * q)) as u8),
                e(((raw_idx / q) % q) as u8),
                e((raw_idx % q) as u8),
            ];
            let p = space.normalize(&raw).unwrap();
            let again = space.normalize(&p.coords).unwrap();
            assert_eq!(again, p);
            seen[space.index_of(&p)] += 1;
        }
        // Each point is hit by exactly q - 1 raw vectors.
        assert!(seen.iter().all(|&c| c == 3));
    }

    #[test]
    fn hyperplane_duality_counts() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 2);
        let planes = space.hyperplanes();
        assert_eq!(planes.len(), 13);
        for h in &planes {
            // Each line of P^2 has q + 1 points.
            assert_eq!(space.hyperplane_members(h).cardinality(), 4);
        }
        // Each point lies on exactly (q^n - 1)/(q - 1) hyperplanes.
        for p in space.points() {
            let on = planes.iter().filter(|h| space.on_hyperplane(p, h)).count();
            assert_eq!(on, 4);
        }

        let f2 = Field::of_order(2).unwrap();
        let space = ProjectiveSpace::new(f2, 3);
        assert_eq!(space.hyperplanes().len(), 15);
        for h in space.hyperplanes() {
            assert_eq!(space.hyperplane_members(&h).cardinality(), 7);
        }
    }

    #[test]
    fn avoiding_hyperplane_simple() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 2);
        // A single point is avoided by some line.
        let s = PointSet::from_indices(13, [0]);
        let h = space.find_avoiding_hyperplane(&s).unwrap();
        assert!(space.hyperplane_members(&h).is_disjoint(&s));
        // The whole plane is not.
        let all = PointSet::empty(13).complement();
        assert!(space.find_avoiding_hyperplane(&all).is_none());
    }

    #[test]
    fn avoiding_subspace_first_in_canonical_order() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 3);
        let empty = PointSet::empty(space.num_points());
        let sub = space.find_avoiding_subspace(&empty, 1).unwrap().unwrap();
        // First canonical echelon basis: rows e0, e1.
        assert_eq!(
            sub.basis,
            vec![vec![e(1), e(0), e(0), e(0)], vec![e(0), e(1), e(0), e(0)],]
        );
        assert_eq!(space.subspace_points(&sub).cardinality(), 4);
        assert!(space.find_avoiding_subspace(&empty, 3).is_err());
    }

    #[test]
    fn subspace_point_counts() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 3);
        // A projective r-subspace over F_q has (q^(r+1)-1)/(q-1) points.
        let line = LinearSubspace {
            basis: vec![vec![e(1), e(0), e(1), e(2)], vec![e(0), e(1), e(2), e(1)]],
        };
        assert_eq!(space.subspace_points(&line).cardinality(), 4);
    }

    #[test]
    fn hyperplane_union_simple_cases() {
        let f3 = Field::of_order(3).unwrap();
        let space = ProjectiveSpace::new(f3, 2);
        // One hyperplane's point set decomposes as itself.
        let h = &space.hyperplanes()[5];
        let z = space.hyperplane_members(h);
        let found = space.hyperplane_union(&z, 1, 1 << 20).unwrap().unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(&found[0], h);
        // The empty zero set is the empty union.
        let none = space
            .hyperplane_union(&PointSet::empty(13), 2, 1 << 20)
            .unwrap()
            .unwrap();
        assert!(none.is_empty());
        // In the plane, two lines always meet, so no line avoids another:
        // the complement of a line has no candidate hyperplanes at all.
        assert_eq!(
            space.hyperplane_union(&z.complement(), 2, 1 << 20),
            Ok(None)
        );
        // A tiny budget is rejected when every hyperplane is a candidate.
        let all = PointSet::empty(13).complement();
        assert!(matches!(
            space.hyperplane_union(&all, 3, 1),
            Err(SpaceError::BudgetExceeded { .. })
        ));
    }
}
