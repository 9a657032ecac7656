//! Closed-form spectral zeta assembly, evaluation, the derivative at zero,
//! and cut-to-cut comparison of determinants.
//!
//! The determinant is `det A = exp(-zeta_A'(0))`, with the derivative read
//! off analytically from the closed form. Shifting the branch cut changes
//! only the phase angles carried by each term, which is exactly where the
//! cut dependence of the determinant lives.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::branchlog::{log_branch, BranchCut, ON_CUT_TOL};
use crate::error::{Error, Result};
use crate::spectrum::{classify, Classification, ClassificationTag, Spectrum, SpectrumComponent};
use crate::zetafuncs::{hurwitz_zeta, hurwitz_zeta_ds, riemann_zeta, EMParams};

/// Angular guard around the accumulation directions of a shifted line.
const LINE_ACCUMULATION_TOL: f64 = 1e-6;
const POLE_GUARD: f64 = 1e-10;

/// Special-function factor of one closed-form term.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `zeta_R(c2 * s)`, pole at `s = 1/c2`.
    Riemann { c2: f64 },
    /// `zeta_H(s, a)`, pole at `s = 1`.
    Hurwitz { a: Complex64 },
    /// `1 / (e^{c2 s} - 1)`, pole at `s = 0`.
    Geometric { c2: f64 },
    /// Direct finite sum `sum_j exp(-s * log lambda_j)` over stored branch
    /// logarithms.
    Monomial { logs: Vec<Complex64> },
}

/// One term `exp(-s (log_scale + i theta)) * kernel(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub log_scale: f64,
    pub theta: f64,
    pub kernel: Kernel,
}

impl Term {
    fn phase_exponent(&self) -> Complex64 {
        Complex64::new(self.log_scale, self.theta)
    }
}

/// Symbolic assembly of the spectral zeta function for one spectrum and
/// one branch cut.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaClosedForm {
    terms: Vec<Term>,
    cut: BranchCut,
}

impl ZetaClosedForm {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn cut(&self) -> &BranchCut {
        &self.cut
    }
}

/// Existence report for one spectrum and cut.
#[derive(Debug, Clone)]
pub struct DeterminantReport {
    pub classification: Classification,
    pub zeta_prime_at_zero: Option<Complex64>,
    pub determinant: Option<Complex64>,
    pub error_estimate: f64,
    pub cut: BranchCut,
}

fn check_angle_off_cut(alpha: f64, cut: &BranchCut) -> Result<()> {
    if cut.distance_to_cut(alpha) < ON_CUT_TOL {
        return Err(Error::OnBranchCut { beta: cut.beta() });
    }
    Ok(())
}

/// Assembles the closed-form zeta for `spec` with the branch fixed by
/// `cut`. Each component contributes terms whose phase angles are the
/// component's ray angles lifted into `(beta, beta + 2pi]`.
pub fn build_zeta(spec: &Spectrum, cut: &BranchCut) -> Result<ZetaClosedForm> {
    if classify(spec).tag == ClassificationTag::ZetaUndefined {
        return Err(Error::UndefinedZeta);
    }
    let mut terms = Vec::new();
    for comp in spec.components() {
        match comp {
            SpectrumComponent::PowerRays { c1, c2, angles } => {
                for &alpha in angles {
                    check_angle_off_cut(alpha, cut)?;
                    terms.push(Term {
                        log_scale: c1.ln(),
                        theta: cut.lift(alpha),
                        kernel: Kernel::Riemann { c2: *c2 },
                    });
                }
            }
            SpectrumComponent::ExponentialRay { c1, c2, alpha } => {
                check_angle_off_cut(*alpha, cut)?;
                terms.push(Term {
                    log_scale: c1.ln(),
                    theta: cut.lift(*alpha),
                    kernel: Kernel::Geometric { c2: *c2 },
                });
            }
            SpectrumComponent::ShiftedLine { b } => {
                // Arguments accumulate at +-pi/2; a cut there hits
                // infinitely many near-ray directions.
                for dir in [FRAC_PI_2, -FRAC_PI_2] {
                    if cut.distance_to_cut(dir) < LINE_ACCUMULATION_TOL {
                        return Err(Error::OnBranchCut { beta: cut.beta() });
                    }
                }
                terms.push(Term {
                    log_scale: 0.0,
                    theta: cut.lift(FRAC_PI_2),
                    kernel: Kernel::Hurwitz {
                        a: Complex64::new(1.0, -b),
                    },
                });
                terms.push(Term {
                    log_scale: 0.0,
                    theta: cut.lift(-FRAC_PI_2),
                    kernel: Kernel::Hurwitz {
                        a: Complex64::new(1.0, *b),
                    },
                });
            }
            SpectrumComponent::FiniteSet { eigenvalues } => {
                let logs = eigenvalues
                    .iter()
                    .map(|&z| log_branch(z, cut))
                    .collect::<Result<Vec<_>>>()?;
                terms.push(Term {
                    log_scale: 0.0,
                    theta: 0.0,
                    kernel: Kernel::Monomial { logs },
                });
            }
            SpectrumComponent::LogarithmicRay { .. } => unreachable!("classified above"),
        }
    }
    Ok(ZetaClosedForm { terms, cut: *cut })
}

fn kernel_pole(kernel: &Kernel) -> Option<Complex64> {
    match kernel {
        Kernel::Riemann { c2 } => Some(Complex64::new(1.0 / c2, 0.0)),
        Kernel::Hurwitz { .. } => Some(Complex64::new(1.0, 0.0)),
        Kernel::Geometric { .. } => Some(Complex64::new(0.0, 0.0)),
        Kernel::Monomial { .. } => None,
    }
}

/// Evaluates the closed form at `s` with explicit Euler-Maclaurin
/// parameters.
pub fn eval_zeta_with(form: &ZetaClosedForm, s: Complex64, params: &EMParams) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for term in form.terms() {
        if let Some(pole) = kernel_pole(&term.kernel) {
            let dist = (s - pole).norm();
            if dist <= POLE_GUARD {
                return Err(Error::NearPole { s, pole, dist });
            }
        }
        let kernel_value = match &term.kernel {
            Kernel::Riemann { c2 } => riemann_zeta(c2 * s, params)?,
            Kernel::Hurwitz { a } => hurwitz_zeta(s, *a, params)?,
            Kernel::Geometric { c2 } => 1.0 / ((c2 * s).exp() - 1.0),
            Kernel::Monomial { logs } => logs.iter().map(|&l| (-s * l).exp()).sum(),
        };
        total += (-s * term.phase_exponent()).exp() * kernel_value;
    }
    Ok(total)
}

/// Evaluates the closed form at `s` with default parameters.
pub fn eval_zeta(form: &ZetaClosedForm, s: Complex64) -> Result<Complex64> {
    eval_zeta_with(form, s, &EMParams::default())
}

/// `zeta_A'(0)` by term-wise product rule, with explicit parameters for
/// the Hurwitz kernels.
pub fn zeta_prime_at_zero_with(form: &ZetaClosedForm, params: &EMParams) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for term in form.terms() {
        let c = term.phase_exponent();
        // f(s) = e^{-s c} K(s), so f'(0) = -c K(0) + K'(0).
        let (k0, dk0) = match &term.kernel {
            Kernel::Riemann { c2 } => (
                Complex64::new(-0.5, 0.0),
                Complex64::new(-0.5 * c2 * (2.0 * std::f64::consts::PI).ln(), 0.0),
            ),
            Kernel::Hurwitz { a } => (
                hurwitz_zeta(zero, *a, params)?,
                hurwitz_zeta_ds(zero, *a, params)?,
            ),
            Kernel::Geometric { .. } => return Err(Error::DivergentAtZero),
            Kernel::Monomial { logs } => (
                Complex64::new(logs.len() as f64, 0.0),
                -logs.iter().sum::<Complex64>(),
            ),
        };
        total += -c * k0 + dk0;
    }
    Ok(total)
}

/// `zeta_A'(0)` with default parameters.
pub fn zeta_prime_at_zero(form: &ZetaClosedForm) -> Result<Complex64> {
    zeta_prime_at_zero_with(form, &EMParams::default())
}

/// Classifies the spectrum and, when the determinant exists, computes it
/// as `exp(-zeta_A'(0))`.
pub fn determinant_with(
    spec: &Spectrum,
    cut: &BranchCut,
    params: &EMParams,
) -> Result<DeterminantReport> {
    let classification = classify(spec);
    match classification.tag {
        ClassificationTag::ZetaUndefined => Err(Error::UndefinedZeta),
        ClassificationTag::DeterminantDivergent => {
            // Validate the cut against the spectrum even though no finite
            // value exists.
            build_zeta(spec, cut)?;
            Ok(DeterminantReport {
                classification,
                zeta_prime_at_zero: None,
                determinant: None,
                error_estimate: 0.0,
                cut: *cut,
            })
        }
        ClassificationTag::DeterminantDefined => {
            let form = build_zeta(spec, cut)?;
            let zp = zeta_prime_at_zero_with(&form, params)?;
            let refined = EMParams {
                m: params.m * 2,
                k: params.k,
            };
            let zp_refined = zeta_prime_at_zero_with(&form, &refined)?;
            let det = (-zp).exp();
            let error_estimate = (zp - zp_refined).norm() + 1e-13 * (1.0 + zp.norm());
            Ok(DeterminantReport {
                classification,
                zeta_prime_at_zero: Some(zp),
                determinant: Some(det),
                error_estimate,
                cut: *cut,
            })
        }
    }
}

/// [`determinant_with`] at default parameters.
pub fn determinant(spec: &Spectrum, cut: &BranchCut) -> Result<DeterminantReport> {
    determinant_with(spec, cut, &EMParams::default())
}

/// Ratio `det(cut1) / det(cut2) = exp(-zeta_1'(0) + zeta_2'(0))`.
pub fn compare_cuts_with(
    spec: &Spectrum,
    cut1: &BranchCut,
    cut2: &BranchCut,
    params: &EMParams,
) -> Result<Complex64> {
    match classify(spec).tag {
        ClassificationTag::ZetaUndefined => return Err(Error::UndefinedZeta),
        ClassificationTag::DeterminantDivergent => return Err(Error::DivergentAtZero),
        ClassificationTag::DeterminantDefined => {}
    }
    let zp1 = zeta_prime_at_zero_with(&build_zeta(spec, cut1)?, params)?;
    let zp2 = zeta_prime_at_zero_with(&build_zeta(spec, cut2)?, params)?;
    Ok((-zp1 + zp2).exp())
}

/// [`compare_cuts_with`] at default parameters.
pub fn compare_cuts(spec: &Spectrum, cut1: &BranchCut, cut2: &BranchCut) -> Result<Complex64> {
    compare_cuts_with(spec, cut1, cut2, &EMParams::default())
}
