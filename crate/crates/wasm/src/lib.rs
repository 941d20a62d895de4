//! Browser bindings. Each export returns a JSON string: either the
//! requested document or {"error": "..."} so the page never has to catch
//! exceptions across the wasm boundary. The crate also compiles natively,
//! which is how its tests run.

use wasm_bindgen::prelude::*;

use fixity_core::report::{build_analysis, default_stage, to_json_string, PropagationSummary};
use fixity_core::stiefel::{
    bott_order, chi_tor_composite, poincare_series, propagation_report, sphere_dims,
};
use fixity_core::{families, Representation, Result};

fn build_family(name: &str, p: u64, n: u32, lambda: u64) -> Result<Representation> {
    match name {
        "heisenberg" => families::heisenberg(p),
        "modular" => families::modular_metacyclic(p, n),
        "excep2" => families::exceptional_family_two(p, n),
        "excep3" => families::exceptional_family_three(p, n, lambda),
        "gp" => families::g_p(p),
        "wreath" => families::wreath(p),
        other => Err(fixity_core::Error::FamilyParameter(format!(
            "unknown family '{other}'"
        ))),
    }
}

fn error_json(e: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": e.to_string() }).to_string()
}

/// Full analysis of a built-in family at its default stage k = n - f - 1.
#[wasm_bindgen]
pub fn family_analysis(name: &str, p: u32, n: u32, lambda: u32) -> String {
    let run = || -> Result<String> {
        let rep = build_family(name, u64::from(p), n, u64::from(lambda))?;
        let stage = default_stage(rep.degree(), rep.fixity()?.fixity);
        let doc = build_analysis(&rep, &[stage], false)?;
        to_json_string(&doc)
    };
    run().unwrap_or_else(error_json)
}

/// Sphere dimensions, Poincare series, obstruction order, and composite
/// torsion Euler characteristic of U(n)/U(k).
#[wasm_bindgen]
pub fn stiefel_info(n: u32, k: u32) -> String {
    let run = || -> Result<String> {
        let dims = sphere_dims(n, k)?;
        let series = poincare_series(n, k)?;
        let chi = if k >= 1 && n >= 2 {
            Some(chi_tor_composite(n, k)?.to_string())
        } else {
            None
        };
        Ok(serde_json::json!({
            "sphere_dims": dims,
            "poincare": series.to_string(),
            "coefficients": series.coeffs(),
            "total_rank": series.eval_at_one(),
            "top_degree": series.degree(),
            "bott_order": bott_order(n)?.to_string(),
            "chi_tor": chi,
        })
        .to_string())
    };
    run().unwrap_or_else(error_json)
}

/// Eligibility report for a built-in family at a chosen stage.
#[wasm_bindgen]
pub fn propagation(name: &str, p: u32, n: u32, lambda: u32, k: u32) -> String {
    let run = || -> Result<String> {
        let rep = build_family(name, u64::from(p), n, u64::from(lambda))?;
        let report = propagation_report(&rep, k)?;
        let summary = PropagationSummary::from_report(&report);
        Ok(serde_json::json!({
            "group_order": report.group_order,
            "degree": report.degree,
            "stage": summary.stage,
            "free": summary.free,
            "coprime": summary.coprime,
            "chi_tor": summary.chi_tor,
            "swan_unit": summary.swan_unit,
            "tier": summary.tier,
            "target": summary.target,
            "notes": summary.notes,
        })
        .to_string())
    };
    run().unwrap_or_else(error_json)
}
