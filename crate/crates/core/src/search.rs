//! Seeded randomized search for low-weight codewords above the minimum
//! weight. This is the probe for the open prediction cells: it only ever
//! produces upper bounds, never proofs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{encode_on, CodeFamily, CodeSpec, CodesError, Domain};
use crate::gf::{Field, FieldElement};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Products of d random linear forms.
    LinearProducts,
    /// A random quadric times d-2 random linear forms.
    QuadricLinear,
    /// Random sparse affine polynomials of degree < d, lifted into the
    /// projective code.
    EmbedAffine,
    /// Sums of two codewords already found at the minimum weight.
    MinWeightCombos,
}

impl SearchStrategy {
    pub const ALL: [SearchStrategy; 4] = [
        SearchStrategy::LinearProducts,
        SearchStrategy::QuadricLinear,
        SearchStrategy::EmbedAffine,
        SearchStrategy::MinWeightCombos,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchStrategy::LinearProducts => "linear-products",
            SearchStrategy::QuadricLinear => "quadric-linear",
            SearchStrategy::EmbedAffine => "embed-affine",
            SearchStrategy::MinWeightCombos => "min-weight-combos",
        }
    }
}

impl std::str::FromStr for SearchStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear-products" => Ok(SearchStrategy::LinearProducts),
            "quadric-linear" => Ok(SearchStrategy::QuadricLinear),
            "embed-affine" => Ok(SearchStrategy::EmbedAffine),
            "min-weight-combos" => Ok(SearchStrategy::MinWeightCombos),
            other => Err(format!(
                "unknown strategy `{other}` (expected linear-products, quadric-linear, \
                 embed-affine or min-weight-combos)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub strategies: Vec<SearchStrategy>,
    /// Number of random candidates to draw.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategies: SearchStrategy::ALL.to_vec(),
            budget: 2000,
            seed: 0,
        }
    }
}

/// The best candidate found strictly above the known minimum weight.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub weight: usize,
    pub poly: Polynomial,
    /// `None` when the hit came from a caller-supplied seed polynomial.
    pub strategy: Option<SearchStrategy>,
    pub sample_index: u64,
}

#[derive(Debug)]
pub struct SearchReport {
    pub best: Option<SearchHit>,
    pub samples: u64,
    pub seed: u64,
}

/// Draws random candidate polynomials and reports the smallest codeword
/// weight found strictly above `known_min`. `seed_polys` are deterministic
/// candidates evaluated before any sampling (the affine embedding of a
/// next-to-minimal witness belongs here). Fully reproducible for a fixed
/// seed.
pub fn randomized_low_weight_search(
    cs: &CodeSpec,
    opts: &SearchOptions,
    known_min: usize,
    seed_polys: &[Polynomial],
) -> Result<SearchReport, CodesError> {
    let domain = Domain::build(cs);
    let field = &cs.field;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<SearchHit> = None;
    // Pool of minimum-weight codewords for the combination strategy.
    let mut pool: Vec<(Polynomial, Vec<FieldElement>)> = Vec::new();

    let consider = |poly: Polynomial,
                    strategy: Option<SearchStrategy>,
                    sample_index: u64,
                    pool: &mut Vec<(Polynomial, Vec<FieldElement>)>,
                    best: &mut Option<SearchHit>|
     -> Result<(), CodesError> {
        let codeword = encode_on(cs, &domain, &poly)?;
        let weight = codeword.weight();
        if weight == known_min && pool.len() < 32 {
            pool.push((poly.clone(), codeword.values().to_vec()));
        }
        if weight > known_min && best.as_ref().is_none_or(|b| weight < b.weight) {
            *best = Some(SearchHit {
                weight,
                poly,
                strategy,
                sample_index,
            });
        }
        Ok(())
    };

    for (i, poly) in seed_polys.iter().enumerate() {
        consider(poly.clone(), None, i as u64, &mut pool, &mut best)?;
    }

    let strategies = if opts.strategies.is_empty() {
        SearchStrategy::ALL.to_vec()
    } else {
        opts.strategies.clone()
    };
    let mut samples = 0u64;
    for i in 0..opts.budget {
        let strategy = strategies[(i % strategies.len() as u64) as usize];
        samples += 1;
        let candidate = match strategy {
            SearchStrategy::LinearProducts => Some(random_linear_product(&mut rng, cs)),
            SearchStrategy::QuadricLinear => random_quadric_linear(&mut rng, cs),
            SearchStrategy::EmbedAffine => random_embedded_affine(&mut rng, cs),
            SearchStrategy::MinWeightCombos => random_pool_combo(&mut rng, field, &pool),
        };
        if let Some(poly) = candidate {
            consider(poly, Some(strategy), i, &mut pool, &mut best)?;
        }
    }

    Ok(SearchReport {
        best,
        samples,
        seed: opts.seed,
    })
}

fn random_element(rng: &mut ChaCha8Rng, field: &Field) -> FieldElement {
    FieldElement(rng.random_range(0..field.order()) as u8)
}

fn random_nonzero_vector(rng: &mut ChaCha8Rng, field: &Field, len: usize) -> Vec<FieldElement> {
    loop {
        let v: Vec<FieldElement> = (0..len).map(|_| random_element(rng, field)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn random_linear_form(rng: &mut ChaCha8Rng, field: &Field, cs: &CodeSpec) -> Polynomial {
    let nvars = cs.nvars();
    match cs.family {
        CodeFamily::Prm => {
            Polynomial::homogeneous_linear(nvars, &random_nonzero_vector(rng, field, nvars))
        }
        CodeFamily::Rm => {
            let coeffs = random_nonzero_vector(rng, field, nvars);
            Polynomial::affine_linear(nvars, random_element(rng, field), &coeffs)
        }
    }
}

fn random_linear_product(rng: &mut ChaCha8Rng, cs: &CodeSpec) -> Polynomial {
    let field = &cs.field;
    let factors: Vec<Polynomial> = (0..cs.d)
        .map(|_| random_linear_form(rng, field, cs))
        .collect();
    Polynomial::product(field, cs.nvars(), &factors)
}

fn random_quadric(rng: &mut ChaCha8Rng, field: &Field, nvars: usize) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(nvars);
        for i in 0..nvars {
            for j in i..nvars {
                let c = random_element(rng, field);
                if !c.is_zero() {
                    let mut exps = vec![0u16; nvars];
                    exps[i] += 1;
                    exps[j] += 1;
                    p = p.add(field, &Polynomial::monomial(nvars, Monomial::new(exps), c));
                }
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_quadric_linear(rng: &mut ChaCha8Rng, cs: &CodeSpec) -> Option<Polynomial> {
    if cs.d < 2 {
        return None;
    }
    let field = &cs.field;
    let mut acc = random_quadric(rng, field, cs.nvars());
    for _ in 0..cs.d - 2 {
        acc = acc.mul(field, &random_linear_form(rng, field, cs));
    }
    Some(acc)
}

/// A sparse random affine polynomial of degree at most d-1, homogenized into
/// the degree-d projective code.
fn random_embedded_affine(rng: &mut ChaCha8Rng, cs: &CodeSpec) -> Option<Polynomial> {
    if cs.family != CodeFamily::Prm || cs.d < 2 {
        return None;
    }
    let field = &cs.field;
    let n = cs.n;
    let max_deg = cs.d - 1;
    let terms = rng.random_range(1..=4usize);
    let mut g = Polynomial::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0u16; n];
        let mut left = rng.random_range(0..=max_deg);
        for e in exps.iter_mut() {
            if left == 0 {
                break;
            }
            let take = rng.random_range(0..=left.min(field.order() as u32 - 1));
            *e = take as u16;
            left -= take;
        }
        let c = FieldElement(rng.random_range(1..field.order()) as u8);
        g = g.add(field, &Polynomial::monomial(n, Monomial::new(exps), c));
    }
    if g.is_zero() {
        g = Polynomial::one(n);
    }
    Some(g.homogenize(cs.d).expect("degree bounded by construction"))
}

fn random_pool_combo(
    rng: &mut ChaCha8Rng,
    field: &Field,
    pool: &[(Polynomial, Vec<FieldElement>)],
) -> Option<Polynomial> {
    if pool.len() < 2 {
        return None;
    }
    let i = rng.random_range(0..pool.len());
    let mut j = rng.random_range(0..pool.len() - 1);
    if j >= i {
        j += 1;
    }
    let lambda = FieldElement(rng.random_range(1..field.order()) as u8);
    Some(pool[i].0.add(field, &pool[j].0.scale(field, lambda)))
}
