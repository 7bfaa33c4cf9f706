use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;
use symcoset::coset_matrix::{element_legend, group_determinant, sym_coset_matrix, sym_group_determinant};
use symcoset::goldens::{check_lambda, check_sym_det, check_z3_group_det, sym_det_goldens, LAMBDA_TABLE};
use symcoset::repr::psl2_lambda;
use symcoset::slope::{
    eigen_route, filling_ranks, slope_polynomial, slopes_with_positive_rank, verify_boundary_identities, FillingSpec,
    SlopePolynomial, SubspacePair, ValueText,
};
use symcoset::spectral::{find_linear_eigenforms, linear_factor_residual, SamplerConfig, Verification, VerificationMode};
use symcoset::{Error, GroupSpec, RationalMatrix, Result, SubgroupSpec, VariableLegend};

use crate::report::Report;

/// Inline JSON if the argument starts with `{` or `[`, a file path otherwise.
pub fn read_input(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))
}

fn parse_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    serde_json::from_str(&read_input(arg)?).map_err(|e| Error::Parse(e.to_string()))
}

fn subgroup_spec(arg: Option<&str>) -> Result<SubgroupSpec> {
    arg.map(parse_json).unwrap_or_else(|| Ok(SubgroupSpec::trivial()))
}

pub fn group_det(spec: &str, sym: bool, seed: u64) -> Result<Report> {
    let group: GroupSpec = parse_json(spec)?;
    let g = group.build()?;
    let (det, legend, command) = if sym {
        let (det, legend) = sym_group_determinant(&g)?;
        (det, legend, "group det --sym")
    } else {
        (group_determinant(&g)?, element_legend(&g), "group det")
    };
    let text = legend.format(&det);
    Ok(Report::new(command, seed, &legend)
        .result(json!({ "order": g.order(), "symmetrized": sym, "determinant": text }))
        .line(text))
}

pub fn coset_matrix(spec: &str, subgroup: Option<&str>, seed: u64) -> Result<Report> {
    let g = parse_json::<GroupSpec>(spec)?.build()?;
    let h = subgroup_spec(subgroup)?.resolve(&g)?;
    let sym = sym_coset_matrix(&g, &h);
    let rows: Vec<Vec<String>> = (0..sym.matrix.rows())
        .map(|i| sym.matrix.row(i).iter().map(|e| sym.legend.format(e)).collect())
        .collect();
    let reps: Vec<String> = sym.cosets.reps().iter().map(|&r| g.label(r).to_string()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let lines = rows
        .iter()
        .map(|r| r.iter().map(|e| format!("{e:>width$}")).collect::<Vec<_>>().join(" "));
    Ok(Report::new("group coset-matrix", seed, &sym.legend)
        .result(json!({ "k": rows.len(), "subgroup_order": h.order(), "coset_representatives": reps, "matrix": rows }))
        .line(format!("k = {}, |H| = {}", rows.len(), h.order()))
        .lines(lines))
}

#[derive(Serialize)]
struct FormOut {
    form: String,
    multiplicity: usize,
    verification: Verification,
}

pub fn eig_linear(spec: &str, subgroup: Option<&str>, mode: VerificationMode, residual: bool, seed: u64) -> Result<Report> {
    let g = parse_json::<GroupSpec>(spec)?.build()?;
    let h = subgroup_spec(subgroup)?.resolve(&g)?;
    let sym = sym_coset_matrix(&g, &h);
    let cfg = SamplerConfig {
        mode,
        ..SamplerConfig::with_seed(seed)
    };
    let forms = find_linear_eigenforms(&sym.matrix, &sym.legend, &cfg)?;
    let out: Vec<FormOut> = forms
        .iter()
        .map(|f| FormOut {
            form: sym.legend.format(&f.form),
            multiplicity: f.multiplicity,
            verification: f.verification.clone(),
        })
        .collect();
    let mut lines: Vec<String> = out
        .iter()
        .map(|f| {
            let how = match &f.verification {
                Verification::Symbolic => "symbolic".to_string(),
                Verification::Probabilistic { points, failure_bound } => {
                    format!("sampled at {points} points, failure bound {failure_bound:e}")
                }
            };
            format!("{}  multiplicity {}  [{how}]", f.form, f.multiplicity)
        })
        .collect();
    let residual_text = if residual {
        let r = linear_factor_residual(&sym.matrix, &forms)?;
        let text = sym.legend.format(&r);
        lines.push(format!("residual: {text}"));
        Some(text)
    } else {
        None
    };
    Ok(Report::new("eig linear", seed, &sym.legend)
        .result(json!({ "k": sym.matrix.rows(), "forms": out, "residual": residual_text }))
        .lines(lines))
}

pub fn psl2(p: u64, points: usize, seed: u64) -> Result<Report> {
    let lambda = psl2_lambda(p)?;
    let dims = lambda.eigenspace_dims(points, seed)?;
    let bound = lambda.multiplicity_bound;
    let text = lambda.legend.format(&lambda.form);
    let k = lambda.subgroup.index();
    let short = dims.iter().any(|&d| d < bound);
    Ok(Report::new(&format!("psl2 lambda --p {p}"), seed, &lambda.legend)
        .result(json!({
            "p": p,
            "group_order": lambda.group.order(),
            "k": k,
            "lambda": text,
            "multiplicity_bound": bound,
            "eigenspace_dims": dims,
        }))
        .line(format!("lambda = {text}"))
        .line(format!("k = {k}, multiplicity >= {bound}"))
        .line(format!("eigenspace dims at {points} specializations: {dims:?}"))
        .fail_if(short, "an eigenspace is smaller than the bound"))
}

pub fn fillrank(input: &str, seed: u64) -> Result<Report> {
    let spec = FillingSpec::from_json(&read_input(input)?)?;
    let (_, _, _, legend) = spec.resolve()?;
    let report = filling_ranks(&spec)?;
    let lines = std::iter::once(format!("k = {}", report.k))
        .chain(
            report
                .slopes
                .iter()
                .map(|s| format!("({}, {})  fillrank {}", s.slope.m, s.slope.n, s.fillrank)),
        )
        .chain((!report.residual_degrees.is_empty()).then(|| format!("residual degrees {:?}", report.residual_degrees)));
    Ok(Report::new("fillrank", seed, &legend).result(&report).lines(lines))
}

#[derive(Deserialize)]
struct PairInput {
    a: Vec<Vec<ValueText>>,
    b: Vec<Vec<ValueText>>,
}

fn matrix_of(rows: &[Vec<ValueText>]) -> Result<RationalMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(ValueText::parse).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(&parsed)
}

pub fn slope_poly(input: &str, seed: u64) -> Result<Report> {
    let raw: PairInput = parse_json(input)?;
    let u = SubspacePair::new(matrix_of(&raw.a)?, matrix_of(&raw.b)?)?;
    let legend = SlopePolynomial::legend();
    let p = slope_polynomial(&u)?;
    let text = legend.format(&p.to_mpoly());
    let scan = slopes_with_positive_rank(&u)?;
    let route = match eigen_route(&u) {
        Ok(s) => Some(s),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let mut lines = vec![format!("p(x, y) = {text}")];
    lines.extend(scan.slopes.iter().map(|s| format!("[{}:{}]  dim {}", s.slope.m, s.slope.n, s.dim)));
    if !scan.residual_degrees.is_empty() {
        lines.push(format!("residual degrees {:?}", scan.residual_degrees));
    }
    Ok(Report::new("slope poly", seed, &legend)
        .result(json!({ "p": text, "slopes": scan.slopes, "residual_degrees": scan.residual_degrees, "eigen_route": route }))
        .lines(lines))
}

#[derive(Deserialize)]
struct IdentityInput {
    group: GroupSpec,
    #[serde(default = "SubgroupSpec::trivial")]
    subgroup: SubgroupSpec,
    matrix: Vec<Vec<ValueText>>,
}

pub fn verify_identities(input: &str, seed: u64) -> Result<Report> {
    let raw: IdentityInput = parse_json(input)?;
    let g = raw.group.build()?;
    let h = raw.subgroup.resolve(&g)?;
    let b = matrix_of(&raw.matrix)?;
    let legend = sym_coset_matrix(&g, &h).legend;
    let report = verify_boundary_identities(&b, &g, &h)?;
    let status = |name: &str, c: &symcoset::slope::IdentityCheck| match &c.witness {
        None => format!("{name}: pass"),
        Some(w) => format!("{name}: FAIL witness {w:?}"),
    };
    let mut lines = vec![
        status("invariance", &report.invariance),
        status("symmetry", &report.symmetry),
        status("inversion", &report.inversion),
    ];
    if let Some(values) = &report.induced {
        let pairs: Vec<String> = legend.names().iter().zip(values).map(|(n, v)| format!("{n} = {v}")).collect();
        lines.push(format!("induced: {}", pairs.join(", ")));
    }
    let failed = !report.passed();
    Ok(Report::new("verify identities", seed, &legend)
        .result(&report)
        .lines(lines)
        .fail_if(failed, "boundary identities do not hold"))
}

pub fn paper_examples(extended: bool, points: usize, seed: u64) -> Result<Report> {
    let mut lines = Vec::new();
    let mut all = true;
    let mut dets = Vec::new();
    for (name, spec, factored) in sym_det_goldens() {
        let outcome = check_sym_det(name, &spec, factored)?;
        all &= outcome.passed;
        lines.push(format!("{} det^sym {}", if outcome.passed { "PASS" } else { "FAIL" }, name));
        dets.push(outcome);
    }
    let z3 = check_z3_group_det()?;
    all &= z3.passed;
    lines.push(format!("{} det Z3", if z3.passed { "PASS" } else { "FAIL" }));
    dets.push(z3);
    let mut lambdas = Vec::new();
    for &(p, row) in LAMBDA_TABLE.iter().filter(|(p, _)| extended || *p <= 13) {
        let outcome = check_lambda(p, row, points, seed)?;
        all &= outcome.passed;
        lines.push(format!(
            "{} lambda p = {p}: {} (eigenspace dims {:?})",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.lambda,
            outcome.eigenspace_dims
        ));
        lambdas.push(outcome);
    }
    Ok(Report::new("verify paper-examples", seed, &VariableLegend::letters(0))
        .result(json!({ "determinants": dets, "lambda": lambdas, "passed": all }))
        .lines(lines)
        .fail_if(!all, "a reference value did not match"))
}
