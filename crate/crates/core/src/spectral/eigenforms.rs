use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eigs::rational_eigs;
use super::matrix::RationalMatrix;
use crate::error::{Error, Result};
use crate::poly::{MPoly, Monomial, PolyMatrix, Rational, VariableLegend};
use crate::DEFAULT_SEED;

/// How candidate eigenforms are proven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerificationMode {
    /// Symbolic when the matrix size is at most the threshold, sampled above.
    #[default]
    Auto,
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Number of large-range points used by sampled verification.
    pub sample_count: usize,
    /// Coordinates of the discovery point are drawn from `[-r, r]`.
    pub discovery_range: i64,
    /// Verification coordinates are drawn from `[-2^bits, 2^bits]`.
    pub verification_bits: u32,
    pub symbolic_threshold: usize,
    pub mode: VerificationMode,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: DEFAULT_SEED,
            sample_count: 6,
            discovery_range: 1 << 20,
            verification_bits: 40,
            symbolic_threshold: 12,
            mode: VerificationMode::Auto,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig {
            seed,
            ..Self::default()
        }
    }

    fn uses_symbolic(&self, k: usize) -> bool {
        match self.mode {
            VerificationMode::Auto => k <= self.symbolic_threshold,
            VerificationMode::Symbolic => true,
            VerificationMode::Sampled => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verification {
    /// `det(M - λI)` expanded to the zero polynomial.
    Symbolic,
    /// `M - λI` was singular at `points` independent points; the chance that
    /// a nonzero determinant vanishes at all of them is at most
    /// `failure_bound`.
    Probabilistic { points: usize, failure_bound: f64 },
}

/// A form `λ = c_0 + Σ c_s·Y_s` that is an eigenvalue of the symbolic matrix
/// at every specialization, with its generic eigenspace dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEigenform {
    pub form: MPoly,
    pub multiplicity: usize,
    pub verification: Verification,
}

const DISCOVERY_ATTEMPTS: usize = 6;
const RECONFIRM_POINTS: usize = 3;

fn random_point(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(rng.random_range(-range..=range).into()))
        .collect()
}

fn check_linear_symmetric(m: &PolyMatrix) -> Result<()> {
    if !m.is_symmetric() {
        return Err(Error::Precondition("eigenform search needs a symmetric matrix".into()));
    }
    for i in 0..m.rows() {
        for e in m.row(i) {
            if e.total_degree().unwrap_or(0) > 1 {
                return Err(Error::Precondition("matrix entries must have degree at most one".into()));
            }
        }
    }
    Ok(())
}

/// `Wᵀ D W` for the columns `W`.
fn compress(d: &RationalMatrix, basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let images: Vec<Vec<Rational>> = basis.iter().map(|w| d.mul_vec(w)).collect();
    basis
        .iter()
        .map(|v| images.iter().map(|dw| v.iter().zip(dw).map(|(a, b)| a * b).sum()).collect())
        .collect()
}

/// Candidate forms read off one generic point. For a linear eigenform with
/// eigenspace `E` at `u`, first-order perturbation along `Y_s` acts on `E`
/// as `c_s` times the identity, so `c_s` is the ratio of the compressions
/// of `∂M/∂Y_s` and of the identity to `E`. `None` means two distinct forms
/// (or a form and a non-linear branch) collided at `u`.
fn candidates_at(
    m: &PolyMatrix,
    derivatives: &[RationalMatrix],
    u: &[Rational],
) -> Result<Option<Vec<(MPoly, usize)>>> {
    let mu = m.evaluate(u)?;
    let spectrum = rational_eigs(&mu)?;
    let nvars = m.nvars();
    let mut out = Vec::new();
    for e in &spectrum.eigenvalues {
        let basis = mu.sub_scalar(&e.value)?.nullspace();
        let gram = compress(&RationalMatrix::identity(mu.rows()), &basis);
        let mut coeffs = Vec::with_capacity(nvars);
        for d in derivatives {
            let c = compress(d, &basis);
            let ratio = &c[0][0] / &gram[0][0];
            let scalar = c
                .iter()
                .zip(&gram)
                .all(|(cr, gr)| cr.iter().zip(gr).all(|(x, g)| *x == &ratio * g));
            if !scalar {
                return Ok(None);
            }
            coeffs.push(ratio);
        }
        let at_u: Rational = coeffs.iter().zip(u).map(|(c, x)| c * x).sum();
        let mut form = MPoly::linear(&coeffs);
        let c0 = &e.value - at_u;
        if !c0.is_zero() {
            form = &form + &MPoly::constant(nvars, c0);
        }
        out.push((form, e.geometric));
    }
    Ok(Some(out))
}

fn eigen_dim(m: &PolyMatrix, form: &MPoly, point: &[Rational]) -> Result<usize> {
    let value = form.evaluate(point)?;
    Ok(m.evaluate(point)?.sub_scalar(&value)?.nullity())
}

/// Rational linear eigenvalue forms of a symmetric matrix whose entries
/// have degree at most one, i.e. the linear factors of `det(M)` together
/// with their multiplicities. Sorted by multiplicity (descending), then by
/// canonical text under `legend`. Deterministic for a fixed seed.
pub fn find_linear_eigenforms(m: &PolyMatrix, legend: &VariableLegend, cfg: &SamplerConfig) -> Result<Vec<LinearEigenform>> {
    check_linear_symmetric(m)?;
    if legend.len() != m.nvars() {
        return Err(Error::ArityMismatch {
            expected: m.nvars(),
            found: legend.len(),
        });
    }
    let n = m.nvars();
    let k = m.rows();
    let derivatives: Vec<RationalMatrix> = (0..n)
        .map(|s| {
            let mono = Monomial::var(n, s);
            RationalMatrix::from_fn(k, k, |(i, j)| m.get(i, j).coefficient(&mono))
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut found = None;
    for _ in 0..DISCOVERY_ATTEMPTS {
        let u = random_point(&mut rng, n, cfg.discovery_range);
        if let Some(c) = candidates_at(m, &derivatives, &u)? {
            found = Some(c);
            break;
        }
    }
    let candidates = found.ok_or_else(|| {
        Error::Inconsistency(format!(
            "eigenvalue branches collided at {DISCOVERY_ATTEMPTS} random points"
        ))
    })?;

    let range = 1i64 << cfg.verification_bits;
    let symbolic = cfg.uses_symbolic(k);
    let mut out = Vec::new();
    for (form, dim_at_u) in candidates {
        let mut multiplicity = dim_at_u;
        let verification = if symbolic {
            let shifted = m.sub_scalar_identity(&form)?;
            if !shifted.det_bareiss()?.is_zero() {
                continue;
            }
            Verification::Symbolic
        } else {
            let mut ok = true;
            for _ in 0..cfg.sample_count {
                let p = random_point(&mut rng, n, range);
                let d = eigen_dim(m, &form, &p)?;
                if d == 0 {
                    ok = false;
                    break;
                }
                multiplicity = multiplicity.min(d);
            }
            if !ok {
                continue;
            }
            let per_point = k as f64 / (2.0 * range as f64 + 1.0);
            Verification::Probabilistic {
                points: cfg.sample_count,
                failure_bound: per_point.powi(cfg.sample_count as i32),
            }
        };
        for _ in 0..RECONFIRM_POINTS {
            let p = random_point(&mut rng, n, range);
            let d = eigen_dim(m, &form, &p)?;
            if d < multiplicity {
                return Err(Error::Inconsistency(format!(
                    "eigenform {} has multiplicity {multiplicity} at the sample points but {d} on resampling",
                    legend.format(&form)
                )));
            }
        }
        out.push(LinearEigenform {
            form,
            multiplicity,
            verification,
        });
    }
    out.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then_with(|| legend.format(&a.form).cmp(&legend.format(&b.form)))
    });
    Ok(out)
}

/// `det(M) / Π λ^mult`, checked by re-multiplication.
pub fn linear_factor_residual(m: &PolyMatrix, forms: &[LinearEigenform]) -> Result<MPoly> {
    let det = m.det_bareiss()?;
    let mut residual = det.clone();
    let mut product = MPoly::one(m.nvars());
    for f in forms {
        let power = f.form.pow(f.multiplicity as u32);
        residual = residual.exact_div(&power).map_err(|_| {
            Error::Verification(format!(
                "a claimed linear factor does not divide the determinant to multiplicity {}",
                f.multiplicity
            ))
        })?;
        product = &product * &power;
    }
    if &residual * &product != det {
        return Err(Error::Verification("residual times linear factors is not the determinant".into()));
    }
    Ok(residual)
}

impl LinearEigenform {
    /// The form as a coefficient vector over the variables, plus constant.
    pub fn coefficients(&self) -> (Vec<Rational>, Rational) {
        let n = self.form.nvars();
        let coeffs = (0..n).map(|s| self.form.coefficient(&Monomial::var(n, s))).collect();
        (coeffs, self.form.constant_term())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.form.constant_term().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat};

    fn circulant_sym(n: usize) -> (PolyMatrix, VariableLegend) {
        // symmetric circulant over classes {0}, {1, n-1}, ...
        let classes = n / 2 + 1;
        let legend = VariableLegend::letters(classes);
        let m = PolyMatrix::from_fn(n, n, classes, |i, j| {
            let d = (j + n - i) % n;
            MPoly::var(classes, d.min(n - d))
        })
        .unwrap();
        (m, legend)
    }

    fn summary(forms: &[LinearEigenform], l: &VariableLegend) -> Vec<(String, usize)> {
        forms.iter().map(|f| (l.format(&f.form), f.multiplicity)).collect()
    }

    #[test]
    fn cyclic_three() {
        let (m, l) = circulant_sym(3);
        let forms = find_linear_eigenforms(&m, &l, &SamplerConfig::default()).unwrap();
        assert_eq!(summary(&forms, &l), vec![("a - b".to_string(), 2), ("a + 2*b".to_string(), 1)]);
        assert!(forms.iter().all(|f| f.verification == Verification::Symbolic));
        assert!(linear_factor_residual(&m, &forms).unwrap() == MPoly::one(2));
    }

    #[test]
    fn cyclic_five_has_one_linear_form() {
        let (m, l) = circulant_sym(5);
        let forms = find_linear_eigenforms(&m, &l, &SamplerConfig::default()).unwrap();
        assert_eq!(summary(&forms, &l), vec![("a + 2*b + 2*c".to_string(), 1)]);
        let q = parse_poly("a^2 - a*b - b^2 - a*c + 3*b*c - c^2", &l).unwrap();
        assert_eq!(linear_factor_residual(&m, &forms).unwrap(), q.pow(2));
    }

    #[test]
    fn sampled_mode_agrees() {
        let (m, l) = circulant_sym(6);
        let symbolic = find_linear_eigenforms(&m, &l, &SamplerConfig::default()).unwrap();
        let cfg = SamplerConfig {
            mode: VerificationMode::Sampled,
            ..SamplerConfig::with_seed(11)
        };
        let sampled = find_linear_eigenforms(&m, &l, &cfg).unwrap();
        assert_eq!(summary(&symbolic, &l), summary(&sampled, &l));
        assert!(matches!(sampled[0].verification, Verification::Probabilistic { failure_bound, .. } if failure_bound < 1e-60));
    }

    #[test]
    fn affine_forms_are_found() {
        // [[a, 1], [1, a]] has eigenvalues a + 1 and a - 1
        let l = VariableLegend::letters(1);
        let m = PolyMatrix::from_fn(2, 2, 1, |i, j| if i == j { MPoly::var(1, 0) } else { MPoly::one(1) }).unwrap();
        let forms = find_linear_eigenforms(&m, &l, &SamplerConfig::default()).unwrap();
        assert_eq!(summary(&forms, &l), vec![("a + 1".to_string(), 1), ("a - 1".to_string(), 1)]);
        assert!(!forms[0].is_homogeneous());
        assert_eq!(forms[0].coefficients(), (vec![rat(1)], rat(1)));
    }

    #[test]
    fn rejects_non_symmetric() {
        let l = VariableLegend::letters(2);
        let m = PolyMatrix::from_fn(2, 2, 2, |i, j| if i <= j { MPoly::var(2, 0) } else { MPoly::var(2, 1) }).unwrap();
        assert!(matches!(find_linear_eigenforms(&m, &l, &SamplerConfig::default()), Err(Error::Precondition(_))));
    }
}
