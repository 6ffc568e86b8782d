//! Deterministic rendering of the operation records as JSON, CSV or
//! Markdown. Field order is fixed by the struct definitions, so repeated
//! runs produce byte-identical output.

use serde::Serialize;

use prm_core::weights::PredictionStatus;

use crate::ops::{
    ExploreRecord, GeometryRecord, PredictRecord, TablesRecord, VerifyRecord, WitnessesRecord,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(format!(
                "unknown format `{other}` (expected md, csv or json)"
            )),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn status_str(status: PredictionStatus) -> &'static str {
    match status {
        PredictionStatus::Exact => "exact",
        PredictionStatus::UpperBoundOnly => "upper-bound-only",
        PredictionStatus::Unknown => "unknown",
    }
}

fn bounds_str(bounds: Option<(u64, u64)>) -> String {
    bounds.map_or(String::new(), |(lo, hi)| format!("{lo}..{hi}"))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

pub fn predict_csv(r: &PredictRecord) -> String {
    let mut out = String::from("q,n,d,a,b,k,l,W1_RM,W2_RM,W1_PRM,W2_PRM,status,source,bounds\n");
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.q,
        r.n,
        r.d,
        r.a,
        r.b,
        opt(&r.k),
        opt(&r.l),
        r.w1_rm,
        r.w2_rm,
        opt(&r.w1_prm),
        opt(&r.w2_prm),
        r.status.map_or(String::new(), |s| status_str(s).into()),
        r.source.map_or(String::new(), |s| s.as_str().into()),
        bounds_str(r.bounds),
    ));
    out
}

pub fn predict_md(r: &PredictRecord) -> String {
    let mut out = format!(
        "## Weight predictions for q={}, n={}, d={}\n\n",
        r.q, r.n, r.d
    );
    out.push_str(&format!(
        "- affine decomposition: a={}, b={}{}\n",
        r.a,
        r.b,
        if r.rm_clamped {
            " (degree clamped)"
        } else {
            ""
        }
    ));
    out.push_str(&format!("- W1_RM = {}\n- W2_RM = {}\n", r.w1_rm, r.w2_rm));
    match (r.k, r.l) {
        (Some(k), Some(l)) => {
            out.push_str(&format!("- projective decomposition: k={k}, l={l}\n"));
            out.push_str(&format!("- W1_PRM = {}\n", r.w1_prm.unwrap()));
            let status = r.status.unwrap();
            match status {
                PredictionStatus::Exact => {
                    out.push_str(&format!(
                        "- W2_PRM = {} (exact, {})\n",
                        r.w2_prm.unwrap(),
                        r.source.unwrap().as_str()
                    ));
                }
                _ => {
                    let (lo, hi) = r.bounds.unwrap();
                    out.push_str(&format!(
                        "- W2_PRM: {} in {lo}..{hi} ({})\n",
                        status_str(status),
                        r.source.unwrap().as_str()
                    ));
                }
            }
            if r.prm_top_of_range == Some(true) {
                out.push_str("- note: d is at the top of the projective degree range\n");
            }
        }
        _ => {
            if let Some(note) = &r.prm_note {
                out.push_str(&format!("- projective side: {note}\n"));
            }
        }
    }
    out
}

pub fn tables_csv(r: &TablesRecord) -> String {
    let mut out = String::from("q,n,d,k,l,W2_RM_prev,W2_PRM,status,source,bounds\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.q,
            row.n,
            row.d,
            row.k,
            row.l,
            row.w2_rm_prev,
            row.w2_prm,
            status_str(row.status),
            row.source.as_str(),
            bounds_str(row.bounds),
        ));
    }
    out
}

pub fn tables_md(r: &TablesRecord) -> String {
    let mut out = format!(
        "## Next-to-minimal weights over F_{} (n up to {})\n\n",
        r.q, r.n_max
    );
    out.push_str("| n | d | k | l | W2_RM(n,d-1) | W2_PRM(n,d) | source |\n");
    out.push_str("|---|---|---|---|--------------|-------------|--------|\n");
    for row in &r.rows {
        let prm = match row.status {
            PredictionStatus::Exact => row.w2_prm.to_string(),
            _ => format!("{} (open)", bounds_str(row.bounds)),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            row.n,
            row.d,
            row.k,
            row.l,
            row.w2_rm_prev,
            prm,
            row.source.as_str(),
        ));
    }
    out
}

pub fn verify_csv(r: &VerifyRecord) -> String {
    let mut out = String::from(
        "q,n,d,field,family,prm_dim,prm_W1,prm_W2,rm_dim,rm_W1,rm_W2,witnesses,checks_failed,status\n",
    );
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.q,
        r.n,
        r.d,
        r.field,
        r.family,
        opt(&r.prm_oracle.as_ref().map(|o| o.dim)),
        opt(&r.prm_oracle.as_ref().map(|o| o.w1)),
        opt(&r.prm_oracle.as_ref().and_then(|o| o.w2)),
        opt(&r.rm_oracle.as_ref().map(|o| o.dim)),
        opt(&r.rm_oracle.as_ref().map(|o| o.w1)),
        opt(&r.rm_oracle.as_ref().and_then(|o| o.w2)),
        r.witnesses.len(),
        failed,
        r.status,
    ));
    out
}

pub fn verify_md(r: &VerifyRecord) -> String {
    let mut out = format!(
        "## Verification at q={}, n={}, d={} ({})\n\n",
        r.q, r.n, r.d, r.family
    );
    for oracle in [&r.prm_oracle, &r.rm_oracle].into_iter().flatten() {
        out.push_str(&format!(
            "- {} oracle (d={}): dim {}, length {}, W1 {}, W2 {}\n",
            oracle.family,
            oracle.d,
            oracle.dim,
            oracle.length,
            oracle.w1,
            oracle.w2.map_or("-".into(), |w| w.to_string()),
        ));
    }
    for s in &r.skipped {
        out.push_str(&format!("- {s}\n"));
    }
    for w in &r.witnesses {
        out.push_str(&format!(
            "- witness {} (weight {}): `{}`\n",
            w.kind, w.claimed_weight, w.poly
        ));
    }
    out.push('\n');
    out.push_str("| check | result | detail |\n|-------|--------|--------|\n");
    for c in &r.checks {
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        ));
    }
    out.push_str(&format!("\nstatus: {}\n", r.status));
    out
}

pub fn witnesses_csv(r: &WitnessesRecord) -> String {
    let mut out = String::from("q,n,d,kind,claimed_weight,verified,poly\n");
    for w in &r.witnesses {
        out.push_str(&format!(
            "{},{},{},{},{},{},\"{}\"\n",
            r.q, r.n, r.d, w.kind, w.claimed_weight, w.verified, w.poly
        ));
    }
    out
}

pub fn witnesses_md(r: &WitnessesRecord) -> String {
    let mut out = format!("## Witnesses at q={}, n={}, d={}\n\n", r.q, r.n, r.d);
    for w in &r.witnesses {
        out.push_str(&format!(
            "- {} (weight {}, verified): `{}`\n",
            w.kind, w.claimed_weight, w.poly
        ));
    }
    for f in &r.failures {
        out.push_str(&format!("- FAILED: {f}\n"));
    }
    out.push_str(&format!("\nstatus: {}\n", r.status));
    out
}

pub fn explore_csv(r: &ExploreRecord) -> String {
    let mut out = String::from(
        "q,n,d,W1_PRM,bound_lo,bound_hi,best_weight,strategy,sample_index,samples,seed,within_bounds\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.q,
        r.n,
        r.d,
        r.w1_prm,
        r.bounds.0,
        r.bounds.1,
        opt(&r.best.as_ref().map(|b| b.weight)),
        r.best
            .as_ref()
            .map_or(String::new(), |b| b.strategy.clone()),
        opt(&r.best.as_ref().map(|b| b.sample_index)),
        r.samples,
        r.seed,
        r.within_bounds,
    ));
    out
}

pub fn explore_md(r: &ExploreRecord) -> String {
    let mut out = format!(
        "## Open-cell exploration at q={}, n={}, d={}\n\n",
        r.q, r.n, r.d
    );
    out.push_str(&format!(
        "- W1_PRM = {}, open bounds {}..{}\n",
        r.w1_prm, r.bounds.0, r.bounds.1
    ));
    match &r.best {
        Some(b) => out.push_str(&format!(
            "- best found: weight {} via {} (sample {}): `{}`\n",
            b.weight, b.strategy, b.sample_index, b.poly
        )),
        None => out.push_str("- nothing found above the minimum weight\n"),
    }
    out.push_str(&format!(
        "- samples {}, seed {}, within bounds: {}\n",
        r.samples, r.seed, r.within_bounds
    ));
    out
}

pub fn geometry_csv(r: &GeometryRecord) -> String {
    let mut out = String::from(
        "q,n,d,support_size,zero_set_size,avoiding_hyperplane,max_avoiding_subspace_dim,union_search,status\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},\"{}\",{},{},{}\n",
        r.q,
        r.n,
        r.d,
        r.support_size,
        r.zero_set_size,
        r.avoiding_hyperplane.clone().unwrap_or_default(),
        opt(&r.max_avoiding_subspace_dim),
        r.union_search,
        r.status,
    ));
    out
}

pub fn geometry_md(r: &GeometryRecord) -> String {
    let mut out = format!(
        "## Support geometry of `{}` over F_{} in P^{}\n\n",
        r.poly, r.q, r.n
    );
    out.push_str(&format!("- degree d = {}\n", r.d));
    out.push_str(&format!(
        "- support size {}, zero set size {}\n",
        r.support_size, r.zero_set_size
    ));
    match &r.avoiding_hyperplane {
        Some(h) => out.push_str(&format!("- avoiding hyperplane: `{h} = 0`\n")),
        None => out.push_str("- no hyperplane avoids the support\n"),
    }
    match r.max_avoiding_subspace_dim {
        Some(dim) => out.push_str(&format!("- largest avoiding subspace dimension: {dim}\n")),
        None => out.push_str("- no point avoids the support\n"),
    }
    match &r.hyperplane_union {
        Some(planes) => {
            let list: Vec<String> = planes.iter().map(|p| format!("`{p} = 0`")).collect();
            out.push_str(&format!(
                "- zero set is the union of {} hyperplane(s): {}\n",
                planes.len(),
                list.join(", ")
            ));
        }
        None => out.push_str(&format!(
            "- zero set is not a union of at most d hyperplanes ({})\n",
            r.union_search
        )),
    }
    for c in &r.checks {
        out.push_str(&format!(
            "- {}: {} ({})\n",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        ));
    }
    out.push_str(&format!("\nstatus: {}\n", r.status));
    out
}
