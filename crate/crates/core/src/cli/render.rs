//! JSON documents for every command, and their text projections.

use serde_json::{json, Value};

use crate::catalog::{CatalogEntry, ExpectedReport};
use crate::exact::{GaussianRational, Rational};
use crate::format::rational_string;
use crate::harness::HarnessSummary;
use crate::jet::{BlockDegrees, DegreeBoundReport, SolutionSpace, TruncationReport};
use crate::nondegeneracy::ClassificationReport;
use crate::relations::SesquiStatus;

fn rationals(v: &[Rational]) -> Value {
    v.iter().map(rational_string).collect()
}

fn complexes(v: &[GaussianRational]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

fn opt(v: Option<usize>) -> Value {
    v.map_or(Value::Null, Value::from)
}

pub fn classification(r: &ClassificationReport) -> Value {
    let (certificate, certificate_degree) = match &r.sesqui_status {
        SesquiStatus::NotDominant(c) => (Value::String(c.to_string()), Value::from(c.degree)),
        _ => (Value::Null, Value::Null),
    };
    let witnesses = r.witnesses.as_ref().map_or(Value::Null, |w| {
        json!({
            "lambda": w.lambda.as_deref().map_or(Value::Null, rationals),
            "kernel_vector": w.kernel_vector.as_deref().map_or(Value::Null, complexes),
        })
    });
    json!({
        "n": r.n,
        "d": r.d,
        "condition_a": r.condition_a,
        "condition_b": r.condition_b,
        "tumanov": {
            "holds": r.tumanov.holds,
            "witness": r.tumanov.witness.as_ref().map_or(Value::Null, |w| {
                w.iter().map(|x| Value::String(x.to_string())).collect()
            }),
        },
        "cone_generating": r.cone_generating,
        "finite_type_two": r.finite_type_two,
        "sesqui_status": {
            "verdict": r.sesqui_status.label(),
            "certificate": certificate,
            "certificate_degree": certificate_degree,
        },
        "beloshapka_nondegenerate": r.beloshapka_nondegenerate,
        "holomorphically_nondegenerate": r.holomorphically_nondegenerate,
        "witnesses": witnesses,
    })
}

fn tuple(v: &Value) -> String {
    let parts: Vec<String> = v
        .as_array()
        .map(|a| a.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect())
        .unwrap_or_default();
    format!("({})", parts.join(", "))
}

pub fn classification_text(v: &Value) -> String {
    let b = |k: &str| v[k].as_bool().unwrap_or(false).to_string();
    let mut out = vec![
        format!("model: n = {}, d = {}", v["n"], v["d"]),
        format!("condition (a): {}", b("condition_a")),
        format!("condition (b): {}", b("condition_b")),
    ];
    let t = &v["tumanov"];
    out.push(match t["witness"].is_null() {
        true => format!("tumanov: {}", t["holds"]),
        false => format!("tumanov: {} (invertible at lambda = {})", t["holds"], tuple(&t["witness"])),
    });
    out.push(format!("cone-generating: {}", b("cone_generating")));
    out.push(format!("finite type two: {}", b("finite_type_two")));
    let s = &v["sesqui_status"];
    let verdict = s["verdict"].as_str().unwrap_or_default();
    out.push(match s["certificate"].as_str() {
        Some(c) => format!("sesquilinear image: {verdict}, relation of degree {}: {c} = 0", s["certificate_degree"]),
        None => format!("sesquilinear image: {verdict}"),
    });
    out.push(format!("beloshapka nondegenerate: {}", b("beloshapka_nondegenerate")));
    out.push(format!(
        "holomorphically nondegenerate: {}",
        if v["holomorphically_nondegenerate"].is_null() { "undecided" } else { "true" }
    ));
    let w = &v["witnesses"];
    if !w.is_null() {
        if !w["lambda"].is_null() {
            out.push(format!("witness: sum lambda_j A_j = 0 for lambda = {}", tuple(&w["lambda"])));
        }
        if !w["kernel_vector"].is_null() {
            out.push(format!("witness: A_j z = 0 for all j at z = {}", tuple(&w["kernel_vector"])));
        }
    }
    out.join("\n")
}

fn degrees(d: &BlockDegrees) -> Value {
    json!({
        "f0_u_degree": opt(d.f0),
        "f1_u_degree": opt(d.f1),
        "f2_u_degree": opt(d.f2),
        "g0_u_degree": opt(d.g0),
        "g1_u_degree": opt(d.g1),
        "f_z_degree": opt(d.f_max_z_degree),
        "g_z_degree": opt(d.g_max_z_degree),
        "max_weight": opt(d.max_weight),
        "max_total_degree": opt(d.max_total_degree),
    })
}

pub struct AutReport<'a> {
    pub space: &'a SolutionSpace,
    pub bounds: &'a DegreeBoundReport,
    pub stabilization: &'a [(usize, usize)],
    pub truncation: &'a TruncationReport,
    pub two_jet_kernel: usize,
}

impl AutReport<'_> {
    pub fn stable(&self) -> bool {
        self.stabilization.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

pub fn aut(r: &AutReport) -> Value {
    json!({
        "route": r.space.route.to_string(),
        "cap": r.space.cap,
        "dimension": r.space.dimension,
        "basis": r.space.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "degrees": degrees(&r.space.degrees),
        "degree_bounds": {
            "pass": r.bounds.passes(),
            "checks": r.bounds.entries().iter().map(|(name, ok)| json!({"name": name, "pass": ok})).collect::<Vec<_>>(),
        },
        "stabilization": {
            "stable": r.stable(),
            "dimensions": r.stabilization.iter().map(|(c, k)| json!({"cap": c, "dimension": k})).collect::<Vec<_>>(),
        },
        "truncation_clean": r.truncation.is_clean(),
        "two_jet_kernel_dimension": r.two_jet_kernel,
    })
}

pub fn aut_text(v: &Value) -> String {
    let mut out = vec![format!(
        "solution space (route {}, cap {}): dimension {}",
        v["route"].as_str().unwrap_or_default(),
        v["cap"],
        v["dimension"]
    )];
    for (k, p) in v["basis"].as_array().into_iter().flatten().enumerate() {
        out.push(format!("  [{}] {}", k + 1, p.as_str().unwrap_or_default()));
    }
    let deg = |k: &str| match &v["degrees"][k] {
        Value::Null => "-".to_string(),
        x => x.to_string(),
    };
    out.push(format!(
        "u-degrees: f0 {}, f1 {}, f2 {}, g0 {}, g1 {}; max weight {}; max total degree {}",
        deg("f0_u_degree"),
        deg("f1_u_degree"),
        deg("f2_u_degree"),
        deg("g0_u_degree"),
        deg("g1_u_degree"),
        deg("max_weight"),
        deg("max_total_degree")
    ));
    for c in v["degree_bounds"]["checks"].as_array().into_iter().flatten() {
        let verdict = if c["pass"].as_bool() == Some(true) { "pass" } else { "FAIL" };
        out.push(format!("  {:<20} {verdict}", c["name"].as_str().unwrap_or_default()));
    }
    let verdict = if v["degree_bounds"]["pass"].as_bool() == Some(true) { "pass" } else { "FAILED" };
    out.push(format!("degree bounds: {verdict}"));
    let dims: Vec<String> = v["stabilization"]["dimensions"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| format!("cap {} -> {}", e["cap"], e["dimension"]))
        .collect();
    let stable = v["stabilization"]["stable"].as_bool() == Some(true);
    out.push(format!(
        "stabilization: {} ({})",
        if stable { "stable" } else { "FAILED (dimension grew)" },
        dims.join(", ")
    ));
    out.push(format!("truncation clean: {}", v["truncation_clean"]));
    out.push(format!("solutions with zero 2-jet: {}", v["two_jet_kernel_dimension"]));
    out.join("\n")
}

pub fn charvar(zeta: &[GaussianRational], characteristic: bool) -> Value {
    json!({ "zeta": complexes(zeta), "characteristic": characteristic })
}

pub fn charvar_text(v: &Value) -> String {
    let verdict = if v["characteristic"].as_bool() == Some(true) {
        "characteristic"
    } else {
        "non-characteristic"
    };
    format!("zeta = {}: {verdict}", tuple(&v["zeta"]))
}

fn expected(e: &ExpectedReport) -> Value {
    json!({
        "condition_a": e.condition_a,
        "condition_b": e.condition_b,
        "tumanov": e.tumanov,
        "sesqui_status": e.sesqui,
    })
}

pub fn catalog_list(entries: &[CatalogEntry]) -> Value {
    entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "n": e.model.n(),
                "d": e.model.d(),
                "provenance": e.provenance,
                "expected": expected(&e.expected),
            })
        })
        .collect()
}

pub fn catalog_list_text(v: &Value) -> String {
    v.as_array()
        .into_iter()
        .flatten()
        .map(|e| {
            format!(
                "{:<22} n={} d={}  {}",
                e["name"].as_str().unwrap_or_default(),
                e["n"],
                e["d"],
                e["provenance"].as_str().unwrap_or_default()
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn harness(s: &HarnessSummary) -> Value {
    let c = &s.config;
    json!({
        "config": {"count": c.count, "n_max": c.n_max, "d_max": c.d_max, "bound": c.bound, "seed": c.seed},
        "condition_a_true": s.condition_a_true,
        "implications": s.implications.iter().map(|i| json!({
            "name": i.name,
            "hypothesis_held": i.hypothesis_held,
            "violations": i.violations,
            "first_violation": i.first_violation,
        })).collect::<Vec<_>>(),
        "total_violations": s.total_violations(),
    })
}
