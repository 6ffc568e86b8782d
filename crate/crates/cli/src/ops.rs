//! The operations behind the CLI subcommands, returning serializable
//! records. Rendering stays in `render`; process-exit policy stays in
//! `main`. Every record is fully deterministic for fixed inputs, seed and
//! thread count; wall-clock timing goes to stderr only.

use serde::Serialize;

use prm_core::codes::{self, CodeFamily, CodeSpec, OracleOptions};
use prm_core::gf::Field;
use prm_core::poly::Polynomial;
use prm_core::search::{randomized_low_weight_search, SearchOptions, SearchStrategy};
use prm_core::space::ProjectiveSpace;
use prm_core::weights::{self, PredictionStatus, WeightSource};
use prm_core::witnesses::{
    embed_witness, min_weight_affine, quadric_witness, second_weight_affine, verify_witness,
    Witness, WitnessError,
};

/// Errors that map onto process exit codes: usage problems exit 1,
/// discrepancies exit 2, exhausted budgets without a result exit 3.
#[derive(Debug)]
pub enum OpError {
    Usage(String),
    Discrepancy(String),
    BudgetNoResult(String),
}

impl std::fmt::Display for OpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpError::Usage(msg) => write!(f, "{msg}"),
            OpError::Discrepancy(msg) => write!(f, "discrepancy: {msg}"),
            OpError::BudgetNoResult(msg) => write!(f, "budget exceeded without a result: {msg}"),
        }
    }
}

impl std::error::Error for OpError {}

fn usage<E: std::fmt::Display>(e: E) -> OpError {
    OpError::Usage(e.to_string())
}

/// Parses `--field` syntax: `q`, `p^m`, `q:c0,c1,...,cm` or `p^m:c0,...,cm`
/// with modulus coefficients in ascending degree.
pub fn parse_field_spec(s: &str) -> Result<Field, OpError> {
    let (head, coeffs) =
        match s.split_once(':') {
            Some((h, c)) => {
                let coeffs: Result<Vec<u64>, _> =
                    c.split(',').map(|t| t.trim().parse::<u64>()).collect();
                (
                    h.trim(),
                    Some(coeffs.map_err(|_| {
                        OpError::Usage(format!("bad modulus coefficients in `{s}`"))
                    })?),
                )
            }
            None => (s.trim(), None),
        };
    let (p, m) = if let Some((ps, ms)) = head.split_once('^') {
        let p: u64 = ps
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad field `{s}`")))?;
        let m: u32 = ms
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad field `{s}`")))?;
        (p, m)
    } else {
        let q: u64 = head
            .parse()
            .map_err(|_| usage(format!("bad field `{s}`")))?;
        factor_prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power")))?
    };
    Field::new(p, m, coeffs.as_deref()).map_err(usage)
}

pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
        if p * p > q {
            p = q;
            break;
        }
    }
    let mut m = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Field resolution for subcommands that do arithmetic: `--field` wins,
/// otherwise `--q` with built-in moduli.
pub fn resolve_field(q: Option<u64>, field: Option<&str>) -> Result<Field, OpError> {
    match (field, q) {
        (Some(spec), _) => parse_field_spec(spec),
        (None, Some(q)) => Field::of_order(q).map_err(usage),
        (None, None) => Err(OpError::Usage("pass --q or --field".into())),
    }
}

// ---------------------------------------------------------------------------
// predict

#[derive(Clone, Serialize)]
pub struct PredictRecord {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
    pub rm_clamped: bool,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub prm_top_of_range: Option<bool>,
    #[serde(rename = "W1_RM")]
    pub w1_rm: u64,
    #[serde(rename = "W2_RM")]
    pub w2_rm: u64,
    #[serde(rename = "W1_PRM")]
    pub w1_prm: Option<u64>,
    #[serde(rename = "W2_PRM")]
    pub w2_prm: Option<u64>,
    pub status: Option<PredictionStatus>,
    pub source: Option<WeightSource>,
    pub bounds: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prm_note: Option<String>,
}

/// All four closed-form predictions at (q, n, d). The projective side is
/// absent outside its degree range (in particular at d = 1, where the
/// next-to-minimal weight is not modeled).
pub fn run_predict(q: u64, n: u32, d: u32) -> Result<PredictRecord, OpError> {
    factor_prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power")))?;
    let affine = weights::decompose_affine(q, n, d).map_err(usage)?;
    let w1_rm = weights::w1_rm(q, n, d).map_err(usage)?;
    let w2_rm = weights::w2_rm(q, n, d).map_err(usage)?;
    let mut record = PredictRecord {
        q,
        n,
        d,
        a: affine.a,
        b: affine.b,
        rm_clamped: affine.clamped,
        k: None,
        l: None,
        prm_top_of_range: None,
        w1_rm,
        w2_rm,
        w1_prm: None,
        w2_prm: None,
        status: None,
        source: None,
        bounds: None,
        prm_note: None,
    };
    match weights::decompose_projective(q, n, d) {
        Ok(proj) => {
            let prediction = weights::w2_prm(q, n, d).map_err(usage)?;
            record.k = Some(proj.k);
            record.l = Some(proj.ell);
            record.prm_top_of_range = Some(proj.top_of_range);
            record.w1_prm = Some(weights::w1_prm(q, n, d).map_err(usage)?);
            record.w2_prm = Some(prediction.value);
            record.status = Some(prediction.status);
            record.source = Some(prediction.source);
            record.bounds = prediction.bounds;
        }
        Err(_) => {
            record.prm_note = Some(if d == 1 {
                "projective next-to-minimal weight at degree 1 is not modeled".into()
            } else {
                format!(
                    "degree {d} outside the projective range 2..={}",
                    n * (q as u32 - 1) + 1
                )
            });
        }
    }
    Ok(record)
}

// ---------------------------------------------------------------------------
// verify

/// Oracle result in the fixed record layout.
#[derive(Clone, Serialize)]
pub struct OracleRecord {
    pub family: CodeFamily,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub dim: usize,
    pub length: usize,
    #[serde(rename = "W1")]
    pub w1: usize,
    #[serde(rename = "W2")]
    pub w2: Option<usize>,
    pub method: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Serialize)]
pub struct WitnessRecord {
    pub kind: &'static str,
    pub poly: String,
    pub claimed_weight: u64,
    pub verified: bool,
}

#[derive(Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub field: String,
    pub family: &'static str,
    pub prediction: PredictRecord,
    pub prm_oracle: Option<OracleRecord>,
    pub rm_oracle: Option<OracleRecord>,
    pub skipped: Vec<String>,
    pub witnesses: Vec<WitnessRecord>,
    pub checks: Vec<CheckRecord>,
    pub status: &'static str,
}

impl VerifyRecord {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyFamily {
    /// The projective code at d together with its affine partner at d-1.
    Pair,
    /// The affine code at d only.
    Rm,
    /// The projective code at d only.
    Prm,
}

pub struct VerifyArgs {
    pub q: Option<u64>,
    pub field: Option<String>,
    pub n: u32,
    pub d: u32,
    pub budget: u64,
    pub threads: usize,
    pub family: Option<VerifyFamily>,
}

fn run_oracle(
    family: CodeFamily,
    field: &Field,
    n: u32,
    d: u32,
    budget: u64,
    threads: usize,
    skipped: &mut Vec<String>,
) -> Result<Option<(OracleRecord, Option<Polynomial>)>, OpError> {
    let cs = CodeSpec::new(family, field.clone(), n as usize, d).map_err(usage)?;
    let opts = OracleOptions {
        budget,
        threads,
        ..OracleOptions::default()
    };
    match codes::exhaustive_low_weights(&cs, &opts) {
        Ok(survey) => Ok(Some((
            OracleRecord {
                family,
                q: field.order() as u64,
                n,
                d,
                dim: survey.dim,
                length: survey.length,
                w1: survey.w1,
                w2: survey.w2,
                method: "exhaustive-scalar-classes".into(),
                seed: None,
            },
            survey.w2_witness,
        ))),
        Err(e @ codes::CodesError::BudgetExceeded { .. })
        | Err(e @ codes::CodesError::MatrixTooLarge { .. }) => {
            skipped.push(format!("{family} oracle skipped: {e}"));
            Ok(None)
        }
        Err(e) => Err(usage(e)),
    }
}

/// Cross-checks formulas, oracle and witnesses at one parameter point. Any
/// exact-prediction/oracle mismatch or witness failure marks the record as a
/// discrepancy; the caller turns that into a nonzero exit.
pub fn run_verify(args: &VerifyArgs) -> Result<VerifyRecord, OpError> {
    let field = resolve_field(args.q, args.field.as_deref())?;
    let q = field.order() as u64;
    let (n, d) = (args.n, args.d);
    let family = args.family.unwrap_or(if d >= 2 {
        VerifyFamily::Pair
    } else {
        VerifyFamily::Rm
    });
    let prediction = run_predict(q, n, d)?;

    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut witnesses: Vec<WitnessRecord> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();
    let check = |checks: &mut Vec<CheckRecord>, name: String, passed: bool, detail: String| {
        checks.push(CheckRecord {
            name,
            passed,
            detail,
        });
    };

    // -- affine side ------------------------------------------------------
    let rm_d = match family {
        VerifyFamily::Rm => Some(d),
        VerifyFamily::Pair => (d >= 2).then(|| d - 1),
        VerifyFamily::Prm => None,
    };
    let mut rm_oracle = None;
    if let Some(rm_d) = rm_d {
        if rm_d >= 1 && rm_d <= n * (q as u32 - 1) {
            if let Some((record, _)) = run_oracle(
                CodeFamily::Rm,
                &field,
                n,
                rm_d,
                args.budget,
                args.threads,
                &mut skipped,
            )? {
                let w1 = weights::w1_rm(q, n, rm_d).map_err(usage)?;
                let w2 = weights::w2_rm(q, n, rm_d).map_err(usage)?;
                check(
                    &mut checks,
                    format!("rm-w1(d={rm_d})"),
                    record.w1 as u64 == w1,
                    format!("formula {w1}, oracle {}", record.w1),
                );
                check(
                    &mut checks,
                    format!("rm-w2(d={rm_d})"),
                    record.w2.map(|w| w as u64) == Some(w2),
                    format!(
                        "formula {w2}, oracle {}",
                        record.w2.map_or("-".into(), |w| w.to_string())
                    ),
                );
                rm_oracle = Some(record);
            }
            // Affine witnesses at the same degree.
            let rm_cs = CodeSpec::rm(field.clone(), n as usize, rm_d).map_err(usage)?;
            for witness in [
                min_weight_affine(&field, n, rm_d),
                second_weight_affine(&field, n, rm_d, args.budget),
            ] {
                push_witness(&rm_cs, witness, &mut witnesses, &mut checks);
            }
        }
    }

    // -- projective side ---------------------------------------------------
    let mut prm_oracle = None;
    if let (true, Some(w1)) = (family != VerifyFamily::Rm, prediction.w1_prm) {
        if let Some((record, _)) = run_oracle(
            CodeFamily::Prm,
            &field,
            n,
            d,
            args.budget,
            args.threads,
            &mut skipped,
        )? {
            check(
                &mut checks,
                "prm-w1".into(),
                record.w1 as u64 == w1,
                format!("formula {w1}, oracle {}", record.w1),
            );
            match prediction.status {
                Some(PredictionStatus::Exact) => {
                    let w2 = prediction.w2_prm.unwrap();
                    check(
                        &mut checks,
                        "prm-w2".into(),
                        record.w2.map(|w| w as u64) == Some(w2),
                        format!(
                            "prediction {w2}, oracle {}",
                            record.w2.map_or("-".into(), |w| w.to_string())
                        ),
                    );
                }
                Some(_) => {
                    let (lo, hi) = prediction.bounds.unwrap();
                    let inside = record
                        .w2
                        .map(|w| lo <= w as u64 && w as u64 <= hi)
                        .unwrap_or(false);
                    check(
                        &mut checks,
                        "prm-w2-open-cell".into(),
                        inside,
                        format!(
                            "oracle {} inside bounds {lo}..={hi}",
                            record.w2.map_or("-".into(), |w| w.to_string())
                        ),
                    );
                }
                None => {}
            }
            if let Some(rm) = &rm_oracle {
                check(
                    &mut checks,
                    "minimum-relation".into(),
                    record.w1 == rm.w1,
                    format!("prm W1 {}, rm(d-1) W1 {}", record.w1, rm.w1),
                );
                if let (Some(pw2), Some(rw2)) = (record.w2, rm.w2) {
                    check(
                        &mut checks,
                        "embedding-inequality".into(),
                        pw2 <= rw2,
                        format!("prm W2 {pw2} <= rm(d-1) W2 {rw2}"),
                    );
                }
            }
            prm_oracle = Some(record);
        }

        // Projective witnesses: embedded affine pair, plus the quadric
        // family when it applies.
        let prm_cs = CodeSpec::prm(field.clone(), n as usize, d).map_err(usage)?;
        if d >= 2 && d - 1 <= n * (q as u32 - 1) {
            let lifted_min = min_weight_affine(&field, n, d - 1).and_then(|w| embed_witness(d, &w));
            push_witness(&prm_cs, lifted_min, &mut witnesses, &mut checks);
            let lifted_second = second_weight_affine(&field, n, d - 1, args.budget)
                .and_then(|w| embed_witness(d, &w));
            push_witness(&prm_cs, lifted_second, &mut witnesses, &mut checks);
        }
        if let (Some(k), Some(1)) = (prediction.k, prediction.l) {
            if k + 3 <= n {
                push_witness(
                    &prm_cs,
                    quadric_witness(&field, n, k),
                    &mut witnesses,
                    &mut checks,
                );
            }
        }
    }

    let all_ok = checks.iter().all(|c| c.passed);
    Ok(VerifyRecord {
        command: "verify",
        q,
        n,
        d,
        field: field.label(),
        family: match family {
            VerifyFamily::Pair => "pair",
            VerifyFamily::Rm => "rm",
            VerifyFamily::Prm => "prm",
        },
        prediction,
        prm_oracle,
        rm_oracle,
        skipped,
        witnesses,
        checks,
        status: if all_ok { "ok" } else { "discrepancy" },
    })
}

fn push_witness(
    cs: &CodeSpec,
    witness: Result<Witness, WitnessError>,
    records: &mut Vec<WitnessRecord>,
    checks: &mut Vec<CheckRecord>,
) {
    match witness.and_then(|w| verify_witness(w, cs)) {
        Ok(w) => {
            checks.push(CheckRecord {
                name: format!("witness-{}", w.kind.as_str()),
                passed: true,
                detail: format!("weight {}", w.claimed_weight),
            });
            records.push(WitnessRecord {
                kind: w.kind.as_str(),
                poly: w.poly.to_text(),
                claimed_weight: w.claimed_weight,
                verified: w.verified,
            });
        }
        Err(e) => {
            checks.push(CheckRecord {
                name: "witness".into(),
                passed: false,
                detail: e.to_string(),
            });
        }
    }
}

// ---------------------------------------------------------------------------
// tables

#[derive(Clone, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub l: u32,
    /// Affine next-to-minimal weight one degree down.
    #[serde(rename = "W2_RM_prev")]
    pub w2_rm_prev: u64,
    /// Projective next-to-minimal value or, for open cells, the upper bound.
    #[serde(rename = "W2_PRM")]
    pub w2_prm: u64,
    pub status: PredictionStatus,
    pub source: WeightSource,
    pub bounds: Option<(u64, u64)>,
}

#[derive(Clone, Serialize)]
pub struct TablesRecord {
    pub command: &'static str,
    pub q: u64,
    pub n_max: u32,
    pub rows: Vec<TableRow>,
}

/// Next-to-minimal weight table for a fixed q: one row per (n, k, l) class
/// over `n <= n_max` and every valid degree, open cells rendered as bounds.
pub fn run_tables(q: u64, n_max: u32) -> Result<TablesRecord, OpError> {
    factor_prime_power(q).ok_or_else(|| usage(format!("{q} is not a prime power")))?;
    if n_max < 1 {
        return Err(OpError::Usage("--n-max must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for d in 2..=n * (q as u32 - 1) + 1 {
            let proj = weights::decompose_projective(q, n, d).map_err(usage)?;
            let prediction = weights::w2_prm(q, n, d).map_err(usage)?;
            rows.push(TableRow {
                n,
                d,
                k: proj.k,
                l: proj.ell,
                w2_rm_prev: weights::w2_rm(q, n, d - 1).map_err(usage)?,
                w2_prm: prediction.value,
                status: prediction.status,
                source: prediction.source,
                bounds: prediction.bounds,
            });
        }
    }
    Ok(TablesRecord {
        command: "tables",
        q,
        n_max,
        rows,
    })
}

// ---------------------------------------------------------------------------
// witness

#[derive(Clone, Serialize)]
pub struct WitnessesRecord {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub field: String,
    pub witnesses: Vec<WitnessRecord>,
    pub failures: Vec<String>,
    pub status: &'static str,
}

impl WitnessesRecord {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Builds and verifies every applicable witness at (q, n, d): the affine
/// minimum and next-to-minimal constructions, their projective embeddings,
/// and the quadric family when the parameters admit it. A verification
/// failure is fatal for the run: it falsifies a construction.
pub fn run_witness(
    q: Option<u64>,
    field: Option<&str>,
    n: u32,
    d: u32,
    budget: u64,
) -> Result<WitnessesRecord, OpError> {
    let field = resolve_field(q, field)?;
    let q = field.order() as u64;
    let max_affine = n * (q as u32 - 1);
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let mut push = |cs: &CodeSpec, w: Result<Witness, WitnessError>| match w
        .and_then(|w| verify_witness(w, cs))
    {
        Ok(w) => witnesses.push(WitnessRecord {
            kind: w.kind.as_str(),
            poly: w.poly.to_text(),
            claimed_weight: w.claimed_weight,
            verified: w.verified,
        }),
        Err(e) => failures.push(e.to_string()),
    };

    if (1..=max_affine).contains(&d) {
        let rm_cs = CodeSpec::rm(field.clone(), n as usize, d).map_err(usage)?;
        push(&rm_cs, min_weight_affine(&field, n, d));
        push(&rm_cs, second_weight_affine(&field, n, d, budget));
    }
    if d >= 2 && d <= max_affine + 1 {
        let prm_cs = CodeSpec::prm(field.clone(), n as usize, d).map_err(usage)?;
        push(
            &prm_cs,
            min_weight_affine(&field, n, d - 1).and_then(|w| embed_witness(d, &w)),
        );
        push(
            &prm_cs,
            second_weight_affine(&field, n, d - 1, budget).and_then(|w| embed_witness(d, &w)),
        );
        let proj = weights::decompose_projective(q, n, d).map_err(usage)?;
        if proj.ell == 1 && proj.k + 3 <= n {
            push(&prm_cs, quadric_witness(&field, n, proj.k));
        }
    }
    if witnesses.is_empty() && failures.is_empty() {
        return Err(OpError::Usage(format!(
            "no witness construction applies at q={q}, n={n}, d={d}"
        )));
    }
    let ok = failures.is_empty();
    Ok(WitnessesRecord {
        command: "witness",
        q,
        n,
        d,
        field: field.label(),
        witnesses,
        failures,
        status: if ok { "ok" } else { "discrepancy" },
    })
}

// ---------------------------------------------------------------------------
// explore

#[derive(Clone, Serialize)]
pub struct ExploreHit {
    pub weight: usize,
    pub poly: String,
    /// Sampling strategy, or "seed-witness" for the deterministic embedded
    /// candidate.
    pub strategy: String,
    pub sample_index: u64,
}

#[derive(Clone, Serialize)]
pub struct ExploreRecord {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub field: String,
    #[serde(rename = "W1_PRM")]
    pub w1_prm: u64,
    pub bounds: (u64, u64),
    pub best: Option<ExploreHit>,
    pub samples: u64,
    pub seed: u64,
    pub within_bounds: bool,
    pub status: &'static str,
}

pub struct ExploreArgs {
    pub q: Option<u64>,
    pub field: Option<String>,
    pub n: u32,
    pub d: u32,
    pub strategies: Vec<SearchStrategy>,
    pub budget: u64,
    pub seed: u64,
}

/// Randomized upper-bound probe for an open prediction cell. The embedded
/// affine next-to-minimal witness is seeded in first, so the report always
/// lands inside the proved bounds; random sampling can only improve on it.
pub fn run_explore(args: &ExploreArgs) -> Result<ExploreRecord, OpError> {
    let field = resolve_field(args.q, args.field.as_deref())?;
    let q = field.order() as u64;
    let (n, d) = (args.n, args.d);
    let prediction = weights::w2_prm(q, n, d).map_err(usage)?;
    if prediction.is_exact() {
        return Err(OpError::Usage(format!(
            "the next-to-minimal weight at q={q}, n={n}, d={d} is exactly {} ({}); \
             explore only applies to open cells",
            prediction.value,
            prediction.source.as_str(),
        )));
    }
    let bounds = prediction
        .bounds
        .expect("non-exact predictions carry bounds");
    let w1 = weights::w1_prm(q, n, d).map_err(usage)?;

    let mut seeds = Vec::new();
    if let Ok(w) = second_weight_affine(&field, n, d - 1, codes::DEFAULT_ENUMERATION_BUDGET) {
        if let Ok(lifted) = embed_witness(d, &w) {
            seeds.push(lifted.poly);
        }
    }
    let cs = CodeSpec::prm(field.clone(), n as usize, d).map_err(usage)?;
    let opts = SearchOptions {
        strategies: args.strategies.clone(),
        budget: args.budget,
        seed: args.seed,
    };
    let report = randomized_low_weight_search(&cs, &opts, w1 as usize, &seeds).map_err(usage)?;

    let best = report.best.as_ref().map(|hit| ExploreHit {
        weight: hit.weight,
        poly: hit.poly.to_text(),
        strategy: hit
            .strategy
            .map_or_else(|| "seed-witness".to_string(), |s| s.as_str().to_string()),
        sample_index: hit.sample_index,
    });
    let within = best
        .as_ref()
        .map(|b| bounds.0 <= b.weight as u64 && b.weight as u64 <= bounds.1)
        .unwrap_or(false);
    let record = ExploreRecord {
        command: "explore",
        q,
        n,
        d,
        field: field.label(),
        w1_prm: w1,
        bounds,
        best,
        samples: report.samples,
        seed: report.seed,
        within_bounds: within,
        status: "ok",
    };
    if record.best.is_none() {
        return Err(OpError::BudgetNoResult(format!(
            "no codeword above weight {w1} found in {} samples",
            record.samples
        )));
    }
    Ok(record)
}

// ---------------------------------------------------------------------------
// geometry

#[derive(Clone, Serialize)]
pub struct GeometryRecord {
    pub command: &'static str,
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub field: String,
    pub poly: String,
    pub support_size: usize,
    pub zero_set_size: usize,
    /// Coefficient form of the first avoiding hyperplane, if one exists.
    pub avoiding_hyperplane: Option<String>,
    /// Largest dimension of a linear subspace disjoint from the support.
    pub max_avoiding_subspace_dim: Option<usize>,
    /// The zero set as a union of at most d hyperplanes, if it is one.
    pub hyperplane_union: Option<Vec<String>>,
    pub union_search: &'static str,
    /// Threshold-based guarantees evaluated at the support size, paired
    /// with what the search actually found.
    pub checks: Vec<CheckRecord>,
    pub status: &'static str,
}

impl GeometryRecord {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

pub struct GeometryArgs {
    pub q: Option<u64>,
    pub field: Option<String>,
    pub n: u32,
    pub d: Option<u32>,
    pub poly: String,
    pub budget: u64,
}

/// Support geometry of one homogeneous polynomial: avoiding hyperplane,
/// best avoiding subspace dimension, and the hyperplane-union
/// classification of its zero set.
pub fn run_geometry(args: &GeometryArgs) -> Result<GeometryRecord, OpError> {
    let field = resolve_field(args.q, args.field.as_deref())?;
    let q = field.order() as u64;
    let n = args.n;
    if n < 1 {
        return Err(OpError::Usage("--n must be at least 1".into()));
    }
    let poly = Polynomial::parse(&args.poly, n as usize + 1, &field).map_err(usage)?;
    let d = match (args.d, poly.degree()) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => {
            return Err(OpError::Usage(
                "the zero polynomial needs an explicit --d".into(),
            ))
        }
    };
    if !poly.is_homogeneous(d) {
        return Err(OpError::Usage(format!(
            "polynomial is not homogeneous of degree {d}"
        )));
    }

    let cs = CodeSpec::prm(field.clone(), n as usize, d).map_err(usage)?;
    let codeword = codes::encode(&cs, &poly).map_err(usage)?;
    let support = codeword.support();
    let zeros = codeword.zero_set();
    let space = ProjectiveSpace::new(field.clone(), n as usize);

    let avoiding = space.find_avoiding_hyperplane(&support);
    let max_r = space.max_avoiding_subspace_dim(&support);
    let (union, union_search) = match space.hyperplane_union(&zeros, d as usize, args.budget) {
        Ok(Some(planes)) => (
            Some(
                planes
                    .iter()
                    .map(|h| Polynomial::homogeneous_linear(n as usize + 1, &h.coeffs).to_text())
                    .collect(),
            ),
            "found",
        ),
        Ok(None) => (None, "none"),
        Err(e) => {
            eprintln!("hyperplane-union search skipped: {e}");
            (None, "budget-exceeded")
        }
    };

    // When the support size is below the guarantee thresholds, the searches
    // must succeed; a miss falsifies the thresholds.
    let mut checks = Vec::new();
    if let Ok(proj) = weights::decompose_projective(q, n, d) {
        let s = support.cardinality() as u64;
        if s > 0 {
            if weights::avoiding_hyperplane_guarantee(q, n, d, s).map_err(usage)? {
                checks.push(CheckRecord {
                    name: "avoiding-hyperplane-guarantee".into(),
                    passed: avoiding.is_some(),
                    detail: format!("support {s} below threshold, found: {}", avoiding.is_some()),
                });
            }
            if weights::avoiding_subspace_guarantee(q, n, d, s).map_err(usage)? {
                let passed = max_r.map(|r| r >= proj.k as usize).unwrap_or(false);
                checks.push(CheckRecord {
                    name: "avoiding-subspace-guarantee".into(),
                    passed,
                    detail: format!(
                        "support {s} below threshold, best avoiding dimension {}, need >= {}",
                        max_r.map_or("-".into(), |r| r.to_string()),
                        proj.k
                    ),
                });
            }
        }
    }

    let ok = checks.iter().all(|c| c.passed);
    Ok(GeometryRecord {
        command: "geometry",
        q,
        n,
        d,
        field: field.label(),
        poly: poly.to_text(),
        support_size: support.cardinality(),
        zero_set_size: zeros.cardinality(),
        avoiding_hyperplane: avoiding
            .map(|h| Polynomial::homogeneous_linear(n as usize + 1, &h.coeffs).to_text()),
        max_avoiding_subspace_dim: max_r,
        hyperplane_union: union,
        union_search,
        checks,
        status: if ok { "ok" } else { "discrepancy" },
    })
}
