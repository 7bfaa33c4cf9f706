//! Browser bindings: symmetrized group determinants, filling ranks of a
//! specialized boundary matrix, and the `PSL(2, Z_p)` eigenvalue. Every
//! export takes and returns JSON text so the page stays framework-free.

use serde_json::{json, Value};
use symcoset::coset_matrix::{sym_coset_matrix, sym_group_determinant};
use symcoset::repr::psl2_lambda;
use symcoset::slope::{filling_ranks, FillingSpec};
use symcoset::{GroupSpec, VariableLegend, DEFAULT_SEED};
use wasm_bindgen::prelude::*;

fn legend_json(legend: &VariableLegend) -> Value {
    legend
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| json!({ "name": n, "members": legend.members(i) }))
        .collect()
}

/// `det^sym(G)` and the legend for a GroupSpec.
pub fn sym_det_report(spec: &str) -> symcoset::Result<String> {
    let group = GroupSpec::from_json(spec)?.build()?;
    if group.order() > 12 {
        return Err(symcoset::Error::Precondition("the demo expands determinants for |G| <= 12".into()));
    }
    let (det, legend) = sym_group_determinant(&group)?;
    Ok(json!({ "determinant": legend.format(&det), "legend": legend_json(&legend) }).to_string())
}

/// The class variables that a FillingSpec for `(G, H)` must assign.
pub fn class_legend_report(spec: &str, subgroup: &str) -> symcoset::Result<String> {
    let group = GroupSpec::from_json(spec)?.build()?;
    let h = symcoset::SubgroupSpec::from_json(subgroup)?.resolve(&group)?;
    let s = sym_coset_matrix(&group, &h);
    Ok(json!({ "k": s.matrix.rows(), "legend": legend_json(&s.legend) }).to_string())
}

/// Slopes with filling ranks for a FillingSpec.
pub fn fill_rank_report(spec: &str) -> symcoset::Result<String> {
    let spec = FillingSpec::from_json(spec)?;
    let report = filling_ranks(&spec)?;
    Ok(serde_json::to_string(&report).expect("reports serialize"))
}

/// `λ` for `PSL(2, Z_p)` with eigenspace dimensions at `points` seeded
/// specializations.
pub fn psl2_report(p: u32, points: u32) -> symcoset::Result<String> {
    if p > 13 {
        return Err(symcoset::Error::Precondition("the demo stops at p = 13".into()));
    }
    let lambda = psl2_lambda(p.into())?;
    let dims = lambda.eigenspace_dims(points as usize, DEFAULT_SEED)?;
    Ok(json!({
        "p": p,
        "lambda": lambda.legend.format(&lambda.form),
        "k": lambda.subgroup.index(),
        "multiplicity_bound": lambda.multiplicity_bound,
        "eigenspace_dims": dims,
    })
    .to_string())
}

fn to_js(r: symcoset::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = symDet)]
pub fn sym_det(spec: &str) -> Result<String, JsError> {
    to_js(sym_det_report(spec))
}

#[wasm_bindgen(js_name = classLegend)]
pub fn class_legend(spec: &str, subgroup: &str) -> Result<String, JsError> {
    to_js(class_legend_report(spec, subgroup))
}

#[wasm_bindgen(js_name = fillRanks)]
pub fn fill_ranks(spec: &str) -> Result<String, JsError> {
    to_js(fill_rank_report(spec))
}

#[wasm_bindgen(js_name = psl2Lambda)]
pub fn psl2(p: u32, points: u32) -> Result<String, JsError> {
    to_js(psl2_report(p, points))
}
