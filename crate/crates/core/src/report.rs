//! JSON reports for single computations. Every report carries the exact
//! inputs, so its claims can be re-checked from the report alone.

use serde_json::{json, Map, Value};

use crate::algebra::matrix::combinations;
use crate::algebra::rational::to_ratio_string;
use crate::algebra::ExactMatrix;
use crate::charvar::charvar_trivial;
use crate::derham1d::{h1_basis, h1_rank_truncated};
use crate::derham_r::{hr_rank_truncated, verify_wedge_pullback};
use crate::error::{Error, Result};
use crate::partition::StratumMatrix;
use crate::schur::{schur_basis, schur_routes_agree};
use crate::theta::CharacterParams;
use crate::veronese::{check_generating_identity, check_pullback_theta_identity, veronese_lambda};

pub const SCHEMA: &str = "hgf-report/1";

/// A report body and the names of the checks it failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub body: Value,
    pub failures: Vec<String>,
}

impl Report {
    fn new(kind: &str, mut fields: Map<String, Value>, failures: Vec<String>) -> Self {
        fields.insert("schema".into(), json!(SCHEMA));
        fields.insert("kind".into(), json!(kind));
        fields.insert("passed".into(), json!(failures.is_empty()));
        Report { body: Value::Object(fields), failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("reports serialize")
    }
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(to_ratio_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

pub fn sample_report(z: &StratumMatrix, seed: u64, bound: u64) -> Report {
    let fields = object(json!({
        "lambda": z.partition().parts(),
        "r": z.r(),
        "seed": seed,
        "bound": bound,
        "z": z.to_json(),
        "generic": z.is_generic_stratum(),
    }));
    let failures = if z.is_generic_stratum() { vec![] } else { vec!["generic_stratum".into()] };
    Report::new("sample", fields, failures)
}

pub fn veronese_report(z: &StratumMatrix, r: usize) -> Result<Report> {
    let img = veronese_lambda(z, r)?;
    let mut failures = Vec::new();
    let generic = img.is_generic_stratum();
    if !generic {
        failures.push("image_generic_stratum".into());
    }
    let mut generating = Vec::new();
    let mut theta = Vec::new();
    for k in 0..z.partition().len() {
        let c = check_generating_identity(&z.block_matrix(k), r);
        if !c.holds() {
            failures.push(format!("generating_identity block {}", k + 1));
        }
        generating.push(json!({"block": k + 1, "holds": c.holds(), "mismatch_order": c.mismatch}));
        for i in 0..z.partition().parts()[k] {
            let ok = check_pullback_theta_identity(z, r, k, i)?;
            if !ok {
                failures.push(format!("theta_pullback block {} order {i}", k + 1));
            }
            theta.push(json!({"block": k + 1, "order": i, "holds": ok}));
        }
    }
    let fields = object(json!({
        "lambda": z.partition().parts(),
        "r": r,
        "z": z.to_json(),
        "w": matrix_json(&img.target),
        "image_generic": generic,
        "generating_identity": generating,
        "theta_pullback": theta,
    }));
    Ok(Report::new("veronese", fields, failures))
}

/// Smallest `d ≥ start` (up to `start + 8`) at which the truncated ranks stabilize.
pub fn h1_report(z: &StratumMatrix, params: &CharacterParams, start: usize) -> Result<Report> {
    let n = z.n_total();
    let mut d = start.max(1);
    let mut rank = h1_rank_truncated(z, params, d)?;
    while !rank.stabilized && d < start + 8 {
        d += 1;
        rank = h1_rank_truncated(z, params, d)?;
    }
    let basis = h1_basis(z, params)?;
    let mut failures = Vec::new();
    if !rank.stabilized {
        failures.push("h1_stabilized".into());
    }
    if rank.h1_rank != n - 2 {
        failures.push(format!("h1_rank = {} (expected {})", rank.h1_rank, n - 2));
    }
    if rank.h0_rank != 0 {
        failures.push(format!("h0_rank = {}", rank.h0_rank));
    }
    let fields = object(json!({
        "lambda": z.partition().parts(),
        "N": n,
        "r": 1,
        "z": z.to_json(),
        "alpha": params.to_json(),
        "d_star": d,
        "h1_rank": rank.h1_rank,
        "h0_rank": rank.h0_rank,
        "stabilized": rank.stabilized,
        "within_hypotheses": rank.within_hypotheses,
        "basis": basis.forms.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
        "members": basis.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "omitted": basis.omitted.to_string(),
    }));
    Ok(Report::new("h1", fields, failures))
}

/// Wedge pullback checks for every index set at `Φ_λ(z)`, plus the truncated
/// rank when `rank_bound` is given (`r = 2` only).
pub fn hr_report(z: &StratumMatrix, r: usize, params: &CharacterParams, rank_bound: Option<usize>) -> Result<Report> {
    let n = z.n_total();
    if r + 2 > n {
        return Err(Error::Invalid(format!("need r ≤ N − 2, got r = {r}, N = {n}")));
    }
    let img = veronese_lambda(z, r)?;
    let mut failures = Vec::new();
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    for idx in combinations(n - 2, r) {
        let c = verify_wedge_pullback(z, r, params, &idx)?;
        if !c.holds {
            failures.push(format!("wedge_pullback {:?}", c.indices));
            witnesses.push(json!({"indices": c.indices, "mismatch": c.mismatch}));
        }
        checks.push(json!({"indices": c.indices, "holds": c.holds}));
    }
    let mut fields = object(json!({
        "lambda": z.partition().parts(),
        "r": r,
        "N": n,
        "z": z.to_json(),
        "w": matrix_json(&img.target),
        "alpha": params.to_json(),
        "veronese": true,
        "result": {"all_hold": failures.is_empty(), "checks": checks},
        "witnesses": witnesses,
    }));
    if let Some(d) = rank_bound {
        let w = img.target_stratum()?;
        let h = hr_rank_truncated(&w, params, d)?;
        if !h.stabilized {
            failures.push("hr_rank_stabilized".into());
        }
        if h.rank != h.expected {
            failures.push(format!("hr_rank = {} (expected {})", h.rank, h.expected));
        }
        fields.insert("hr_rank".into(), json!({"kind": "hr_rank", "veronese": true, "result": h}));
    }
    Ok(Report::new("wedge_pullback", fields, failures))
}

pub fn schur_report(n: usize, r: usize) -> Result<Report> {
    let basis = schur_basis(n, r)?;
    let expected = crate::algebra::rational::binomial((n - 2) as u64, r as u64);
    let mut failures = Vec::new();
    if crate::algebra::rational::int(basis.len() as i64) != expected {
        failures.push(format!("schur_count = {} (expected {expected})", basis.len()));
    }
    let mut shapes = Vec::new();
    for f in &basis {
        let agree = schur_routes_agree(&f.shape, r);
        if !agree {
            failures.push(format!("schur_routes {}", f.shape));
        }
        shapes.push(json!({"shape": f.shape.rows(), "coefficient": f.coefficient.to_string(), "routes_agree": agree}));
    }
    let fields = object(json!({"N": n, "r": r, "count": basis.len(), "result": shapes}));
    Ok(Report::new("schur_basis", fields, failures))
}

/// `expect_trivial` states which verdict counts as a pass; a nontrivial
/// verdict always needs a validated witness.
pub fn charvar_report(z: &StratumMatrix, expect_trivial: bool) -> Report {
    let v = charvar_trivial(z);
    let mut failures = Vec::new();
    if v.trivial != expect_trivial {
        failures.push(format!("charvar trivial = {}", v.trivial));
    }
    if !v.trivial && v.witness.is_none() {
        failures.push("charvar_witness".into());
    }
    let mut fields = object(v.to_json(z));
    fields.insert("z".into(), z.to_json());
    Report::new("charvar", fields, failures)
}
