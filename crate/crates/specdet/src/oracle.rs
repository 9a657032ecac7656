//! Independent numerical verification of the closed-form engine.
//!
//! Values here come from the defining eigenvalue sums via branch powers,
//! with Euler-Maclaurin tail acceleration applied to the raw sums, never
//! through the Riemann/Hurwitz identities the engine uses. Derivatives are
//! checked by Richardson-extrapolated central differences.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::branchlog::{pow_branch, BranchCut};
use crate::determinant::{eval_zeta_with, ZetaClosedForm};
use crate::error::{Error, Result};
use crate::spectrum::{Spectrum, SpectrumComponent};
use crate::zetafuncs::{rising_factorial, EMParams, B2K_OVER_FACTORIAL};

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Eigenvalues summed directly per family before tail acceleration.
    pub truncation: usize,
    /// Bernoulli terms in the Euler-Maclaurin tail.
    pub tail_terms: usize,
    /// Step for central finite differences.
    pub fd_step: f64,
    /// Target relative tolerance of the comparison.
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            truncation: 1000,
            tail_terms: 10,
            fd_step: 1e-6,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleValue {
    pub value: Complex64,
    /// Relative error estimate (absolute when the value is near zero).
    pub error_estimate: f64,
}

/// `sum_{j>=0} (j + a0)^{-w}` for a large offset `a0` by the
/// Euler-Maclaurin formula with zero direct terms. Applied to the raw
/// eigenvalue sums only; the continuation engine never calls this.
fn em_offset_sum(w: Complex64, a0: Complex64, tail_terms: usize) -> (Complex64, f64) {
    let lq = a0.ln();
    let mut sum = ((1.0 - w) * lq).exp() / (w - 1.0) + 0.5 * (-w * lq).exp();
    let mut last = 0.0;
    for k in 1..=tail_terms.min(30) {
        let n = 2 * k - 1;
        let (r, _) = rising_factorial(w, n);
        let term = B2K_OVER_FACTORIAL[k - 1] * r * ((-w - n as f64) * lq).exp();
        sum += term;
        last = term.norm();
    }
    (sum, last)
}

fn convergence_threshold(comp: &SpectrumComponent) -> f64 {
    match comp {
        SpectrumComponent::FiniteSet { .. } => f64::NEG_INFINITY,
        SpectrumComponent::PowerRays { c2, .. } => 1.0 / c2,
        SpectrumComponent::ExponentialRay { .. } => 0.0,
        SpectrumComponent::LogarithmicRay { .. } => f64::INFINITY,
        SpectrumComponent::ShiftedLine { .. } => 1.0,
    }
}

/// The defining sum `sum_j lambda_j^{-s}` evaluated inside its convergence
/// region: the first `truncation` eigenvalues of each family via branch
/// powers, plus a tail estimate.
pub fn direct_zeta(
    spec: &Spectrum,
    cut: &BranchCut,
    s: Complex64,
    cfg: &OracleConfig,
) -> Result<OracleValue> {
    let threshold = spec
        .components()
        .iter()
        .map(convergence_threshold)
        .fold(f64::NEG_INFINITY, f64::max);
    if s.re <= threshold {
        return Err(Error::OutsideConvergenceRegion(s.re, threshold));
    }

    let n = cfg.truncation;
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;

    for comp in spec.components() {
        match comp {
            SpectrumComponent::FiniteSet { eigenvalues } => {
                for &z in eigenvalues {
                    total += pow_branch(z, -s, cut)?;
                }
            }
            SpectrumComponent::PowerRays { c1, c2, angles } => {
                for &alpha in angles {
                    for j in 1..=n {
                        let z = Complex64::from_polar(c1 * (j as f64).powf(*c2), alpha);
                        total += pow_branch(z, -s, cut)?;
                    }
                    let theta = cut.lift(alpha);
                    let phase = (-s * Complex64::new(c1.ln(), theta)).exp();
                    let (tail, last) = em_offset_sum(
                        c2 * s,
                        Complex64::new((n + 1) as f64, 0.0),
                        cfg.tail_terms,
                    );
                    total += phase * tail;
                    abs_err += phase.norm() * last;
                }
            }
            SpectrumComponent::ShiftedLine { b } => {
                for j in 1..=n {
                    total += pow_branch(Complex64::new(*b, j as f64), -s, cut)?;
                    total += pow_branch(Complex64::new(*b, -(j as f64)), -s, cut)?;
                }
                // Tails along the asymptotic directions +-i: the upper
                // family behaves like e^{i pi/2} (j - ib), the lower like
                // e^{-i pi/2} (j + ib).
                for (dir, a_im) in [(FRAC_PI_2, -b), (-FRAC_PI_2, *b)] {
                    let theta = cut.lift(dir);
                    let phase = (-s * Complex64::new(0.0, theta)).exp();
                    let a0 = Complex64::new((n + 1) as f64, a_im);
                    let (tail, last) = em_offset_sum(s, a0, cfg.tail_terms);
                    total += phase * tail;
                    abs_err += phase.norm() * last;
                }
            }
            SpectrumComponent::ExponentialRay { c1, c2, alpha } => {
                // Moduli overflow f64 quickly, so the branch power is
                // formed in log space: log lambda_j = ln c1 + c2 j + i theta.
                let theta = cut.lift(*alpha);
                for j in 1..=n {
                    let log = Complex64::new(c1.ln() + c2 * j as f64, theta);
                    total += (-s * log).exp();
                }
                let phase = (-s * Complex64::new(c1.ln(), theta)).exp();
                let ratio = (-c2 * s).exp();
                let tail = phase * (-c2 * (n + 1) as f64 * s).exp() / (1.0 - ratio);
                total += tail;
                abs_err += f64::EPSILON * tail.norm();
            }
            SpectrumComponent::LogarithmicRay { .. } => {
                return Err(Error::OutsideConvergenceRegion(s.re, f64::INFINITY));
            }
        }
    }

    let scale = total.norm().max(1e-30);
    Ok(OracleValue {
        value: total,
        error_estimate: abs_err / scale + 1e3 * f64::EPSILON,
    })
}

/// Central-difference derivative of the closed form at `s0`, Richardson
/// extrapolated over step sizes `h` and `h/2`.
pub fn fd_zeta_prime(
    form: &ZetaClosedForm,
    s0: Complex64,
    cfg: &OracleConfig,
) -> Result<Complex64> {
    let params = EMParams::default();
    let diff = |h: f64| -> Result<Complex64> {
        let hi = eval_zeta_with(form, s0 + h, &params)?;
        let lo = eval_zeta_with(form, s0 - h, &params)?;
        Ok((hi - lo) / (2.0 * h))
    };
    let d1 = diff(cfg.fd_step)?;
    let d2 = diff(cfg.fd_step / 2.0)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Partial sums `sum_{j<=N} omega_j^{-s}` of a logarithmic family at the
/// given checkpoints. The sums keep growing: that is the divergence
/// witness for the integral criterion.
pub fn divergence_witness(spec: &Spectrum, s: f64, checkpoints: &[usize]) -> Result<Vec<f64>> {
    if s < 0.0 {
        return Err(Error::ValidationError(
            "divergence witness requires s >= 0".into(),
        ));
    }
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ValidationError(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    let comp = spec
        .components()
        .iter()
        .find(|c| matches!(c, SpectrumComponent::LogarithmicRay { .. }))
        .ok_or_else(|| {
            Error::ValidationError("spectrum has no logarithmic component".into())
        })?;
    let (c1, c2, start) = match comp {
        SpectrumComponent::LogarithmicRay { c1, c2, .. } => (*c1, *c2, comp.start_index()),
        _ => unreachable!(),
    };

    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut acc = 0.0;
    let mut next = 0;
    let last = *checkpoints.last().unwrap();
    for j in start..=last as i64 {
        acc += (c1 * (c2 * j as f64).ln()).powf(-s);
        while next < checkpoints.len() && j == checkpoints[next] as i64 {
            sums.push(acc);
            next += 1;
        }
    }
    Ok(sums)
}

/// `|zeta_A'(s)|` of the exponential closed form along a path of real
/// `s` descending toward zero, exposing the blow-up of the derivative.
pub fn exp_blowup_witness(spec: &Spectrum, s_values: &[f64]) -> Result<Vec<f64>> {
    if s_values.iter().any(|&s| s <= 0.0) {
        return Err(Error::ValidationError(
            "blow-up witness requires positive s values".into(),
        ));
    }
    let comp = spec
        .components()
        .iter()
        .find(|c| matches!(c, SpectrumComponent::ExponentialRay { .. }))
        .ok_or_else(|| {
            Error::ValidationError("spectrum has no exponential component".into())
        })?;
    let (c1, c2, alpha) = match comp {
        SpectrumComponent::ExponentialRay { c1, c2, alpha } => (*c1, *c2, *alpha),
        _ => unreachable!(),
    };
    // zeta(s) = e^{-s c} / (e^{c2 s} - 1) with c = ln c1 + i alpha;
    // zeta'(s) = e^{-s c} [ -c/(e^{c2 s}-1) - c2 e^{c2 s}/(e^{c2 s}-1)^2 ].
    let c = Complex64::new(c1.ln(), alpha);
    Ok(s_values
        .iter()
        .map(|&s| {
            let g = (c2 * s).exp();
            let d = g - 1.0;
            let deriv = (-c * s).exp() * (-c / d - c2 * g / (d * d));
            deriv.norm()
        })
        .collect())
}
