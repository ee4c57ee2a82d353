use std::fmt::Write;

use serde_json::{json, Value};

use super::certificate::Certificate;
use super::tower::{StageStatus, Tower};
use crate::permcalc::BranchInventory;

pub const REPORT_SCHEMA: &str = "covercalc.tower/1";

fn colors(tower: &Tower) -> String {
    tower.colors.iter().map(|c| c.as_char()).collect()
}

fn components_json(inv: &BranchInventory) -> Value {
    inv.components()
        .iter()
        .map(|c| {
            let tags: Vec<&str> = c.tags.iter().map(|t| t.as_str()).collect();
            json!({ "label": c.label, "type": c.branching.to_string(), "tags": tags })
        })
        .collect()
}

/// The versioned JSON report.
///
/// Fields: `schema`, `variant`, `m`, `n`, `colors`, `total_degree`,
/// `stages[] {name, degree, status, reason, inventory_degree, components[] {label, type, tags}}`,
/// `certificate {passed, claims[] {id, status, evidence}}`.
pub fn report_json(tower: &Tower, cert: &Certificate) -> Value {
    let stages: Vec<Value> = tower
        .stages
        .iter()
        .map(|s| {
            let (status, reason) = match &s.status {
                StageStatus::Done => ("DONE", Value::Null),
                StageStatus::Skipped(r) => ("SKIPPED", Value::String(r.clone())),
            };
            json!({
                "name": s.name,
                "degree": s.degree,
                "status": status,
                "reason": reason,
                "inventory_degree": s.inventory.degree,
                "components": components_json(&s.inventory),
            })
        })
        .collect();
    let claims: Vec<Value> = cert
        .claims
        .iter()
        .map(|c| json!({ "id": c.id, "status": c.status.as_str(), "evidence": c.evidence }))
        .collect();
    json!({
        "schema": REPORT_SCHEMA,
        "variant": tower.variant.as_str(),
        "m": tower.m,
        "n": tower.n,
        "colors": colors(tower),
        "total_degree": tower.total_degree(),
        "stages": stages,
        "certificate": { "passed": cert.passed(), "claims": claims },
    })
}

/// Human-readable counterpart of [`report_json`].
pub fn report_text(tower: &Tower, cert: &Certificate) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "tower variant={} m={} n={} colors={}", tower.variant.as_str(), tower.m, tower.n, colors(tower)).ok();
    for s in &tower.stages {
        match &s.status {
            StageStatus::Done => writeln!(w, "stage {} degree={} composite={}", s.name, s.degree, s.inventory.degree),
            StageStatus::Skipped(r) => writeln!(w, "stage {} SKIPPED ({r})", s.name),
        }
        .ok();
        for c in s.inventory.components() {
            writeln!(w, "  {} {}", c.label, c.branching).ok();
        }
    }
    writeln!(w, "total degree={}", tower.total_degree()).ok();
    writeln!(w, "certificate {}", if cert.passed() { "PASS" } else { "FAIL" }).ok();
    for c in &cert.claims {
        writeln!(w, "  {} {} {}", c.status, c.id, c.evidence).ok();
    }
    out
}
