//! Eigenvalue distribution model and the classifier deciding whether the
//! spectral zeta function and the determinant exist.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};

/// One family of eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumComponent {
    /// A finite list of nonzero eigenvalues.
    FiniteSet { eigenvalues: Vec<Complex64> },
    /// `lambda_j = c1 * j^c2 * e^{i alpha}` for each listed angle, `j >= 1`.
    PowerRays { c1: f64, c2: f64, angles: Vec<f64> },
    /// `lambda_j = c1 * e^{c2 j} * e^{i alpha}`, `j >= 1`.
    ExponentialRay { c1: f64, c2: f64, alpha: f64 },
    /// `lambda_j = c1 * log(c2 j) * e^{i alpha}`, starting at the first
    /// index with positive modulus.
    LogarithmicRay { c1: f64, c2: f64, alpha: f64 },
    /// `lambda_j = b + ij`, `j` ranging over the nonzero integers.
    ShiftedLine { b: f64 },
}

impl SpectrumComponent {
    fn validate(&self) -> Result<()> {
        let err = |msg: &str| Err(Error::ValidationError(msg.into()));
        match self {
            SpectrumComponent::FiniteSet { eigenvalues } => {
                if eigenvalues.is_empty() {
                    return err("finite component needs at least one eigenvalue");
                }
                if eigenvalues.iter().any(|z| z.re == 0.0 && z.im == 0.0) {
                    return err("finite component contains a zero eigenvalue");
                }
                if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return err("finite component contains a non-finite eigenvalue");
                }
            }
            SpectrumComponent::PowerRays { c1, c2, angles } => {
                if !(*c1 > 0.0) {
                    return err("c1 must be positive");
                }
                if !(*c2 > 0.0) {
                    return err("c2 must be positive");
                }
                if angles.is_empty() {
                    return err("power_rays needs at least one angle");
                }
                let in_range = angles.iter().all(|a| (0.0..TAU).contains(a));
                let increasing = angles.windows(2).all(|w| w[0] < w[1]);
                if !in_range || !increasing {
                    return err("angles must be strictly increasing within [0, 2pi)");
                }
            }
            SpectrumComponent::ExponentialRay { c1, c2, alpha } => {
                if !(*c1 > 0.0) {
                    return err("c1 must be positive");
                }
                if !(*c2 > 0.0) {
                    return err("c2 must be positive");
                }
                if !alpha.is_finite() {
                    return err("alpha must be finite");
                }
            }
            SpectrumComponent::LogarithmicRay { c1, c2, alpha } => {
                if !(*c1 > 0.0) {
                    return err("c1 must be positive");
                }
                if !(*c2 >= 1.0) {
                    return err("log_ray c2 must be >= 1");
                }
                if !alpha.is_finite() {
                    return err("alpha must be finite");
                }
            }
            SpectrumComponent::ShiftedLine { b } => {
                if !(*b >= 0.0) {
                    return err("shifted_line b must be nonnegative");
                }
            }
        }
        Ok(())
    }

    /// First index with a strictly positive modulus. Only the logarithmic
    /// family with `c2 = 1` starts late (its `j = 1` modulus is zero).
    pub fn start_index(&self) -> i64 {
        match self {
            SpectrumComponent::LogarithmicRay { c2, .. } if *c2 <= 1.0 => 2,
            _ => 1,
        }
    }
}

/// A spectrum: the disjoint union of its component families.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    components: Vec<SpectrumComponent>,
}

impl Spectrum {
    pub fn new(components: Vec<SpectrumComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ValidationError(
                "spectrum must contain at least one component".into(),
            ));
        }
        for c in &components {
            c.validate()?;
        }
        let lines = components
            .iter()
            .filter(|c| matches!(c, SpectrumComponent::ShiftedLine { .. }))
            .count();
        if lines > 1 {
            return Err(Error::ValidationError(
                "at most one shifted_line component is allowed".into(),
            ));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[SpectrumComponent] {
        &self.components
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassificationTag {
    DeterminantDefined,
    DeterminantDivergent,
    ZetaUndefined,
}

impl std::fmt::Display for ClassificationTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassificationTag::DeterminantDefined => "DeterminantDefined",
            ClassificationTag::DeterminantDivergent => "DeterminantDivergent",
            ClassificationTag::ZetaUndefined => "ZetaUndefined",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub tag: ClassificationTag,
    pub reason: String,
}

/// Decides existence. Undefined dominates divergent dominates defined when
/// components of several kinds coexist.
pub fn classify(spec: &Spectrum) -> Classification {
    let has_log = spec
        .components()
        .iter()
        .any(|c| matches!(c, SpectrumComponent::LogarithmicRay { .. }));
    if has_log {
        return Classification {
            tag: ClassificationTag::ZetaUndefined,
            reason: "eigenvalue moduli grow logarithmically or slower, so the defining \
                     sum converges in no half-plane: the spectral zeta function is not defined"
                .into(),
        };
    }
    let has_exp = spec
        .components()
        .iter()
        .any(|c| matches!(c, SpectrumComponent::ExponentialRay { .. }));
    if has_exp {
        return Classification {
            tag: ClassificationTag::DeterminantDivergent,
            reason: "an exponential eigenvalue ray makes the zeta derivative blow up at \
                     s = 0: the spectral determinant diverges to +infinity"
                .into(),
        };
    }
    Classification {
        tag: ClassificationTag::DeterminantDefined,
        reason: "all components have power growth, shifted-line, or finite form: the \
                 spectral determinant is defined"
            .into(),
    }
}

/// Materializes the first `count` eigenvalues of one component in index
/// order. Shifted lines interleave: `j = 1, -1, 2, -2, ...`.
pub fn enumerate(spec: &Spectrum, count: usize, component_index: usize) -> Result<Vec<Complex64>> {
    let comps = spec.components();
    let comp = comps.get(component_index).ok_or(Error::IndexOutOfRange {
        index: component_index,
        len: comps.len(),
    })?;
    let mut out = Vec::new();
    match comp {
        SpectrumComponent::FiniteSet { eigenvalues } => {
            out.extend(eigenvalues.iter().take(count).copied());
        }
        SpectrumComponent::PowerRays { c1, c2, angles } => {
            'outer: for j in 1.. {
                let modulus = c1 * (j as f64).powf(*c2);
                for &alpha in angles {
                    if out.len() == count {
                        break 'outer;
                    }
                    out.push(Complex64::from_polar(modulus, alpha));
                }
            }
        }
        SpectrumComponent::ExponentialRay { c1, c2, alpha } => {
            for j in 1..=count {
                out.push(Complex64::from_polar(c1 * (c2 * j as f64).exp(), *alpha));
            }
        }
        SpectrumComponent::LogarithmicRay { c1, c2, alpha } => {
            let start = comp.start_index();
            for j in start..start + count as i64 {
                out.push(Complex64::from_polar(c1 * (c2 * j as f64).ln(), *alpha));
            }
        }
        SpectrumComponent::ShiftedLine { b } => {
            for j in 1.. {
                for sign in [1.0, -1.0] {
                    if out.len() == count {
                        break;
                    }
                    out.push(Complex64::new(*b, sign * j as f64));
                }
                if out.len() == count {
                    break;
                }
            }
        }
    }
    Ok(out)
}

const RAY_TOL: f64 = 1e-12;

/// Counts the power-growth eigenvalue rays swept when the branch cut
/// rotates from `beta_from` to `beta_to`. Finite eigenvalues are never
/// counted. Sweeps through the argument arc of a shifted line are refused:
/// the sign-flip rule does not apply there.
pub fn rays_crossed(spec: &Spectrum, beta_from: f64, beta_to: f64) -> Result<usize> {
    let (lo, hi) = if beta_from <= beta_to {
        (beta_from, beta_to)
    } else {
        (beta_to, beta_from)
    };

    for comp in spec.components() {
        if let SpectrumComponent::ShiftedLine { .. } = comp {
            // Arguments of b + ij fill (-pi/2, pi/2) and accumulate at
            // its endpoints; any sweep touching that arc is refused.
            let m_lo = ((lo - FRAC_PI_2) / TAU).floor() as i64 - 1;
            let m_hi = ((hi + FRAC_PI_2) / TAU).ceil() as i64 + 1;
            for m in m_lo..=m_hi {
                let arc_lo = -FRAC_PI_2 + TAU * m as f64;
                let arc_hi = FRAC_PI_2 + TAU * m as f64;
                if arc_lo < hi && arc_hi > lo {
                    return Err(Error::UnsupportedSweep);
                }
            }
        }
    }

    let mut count = 0;
    for comp in spec.components() {
        let angles: &[f64] = match comp {
            SpectrumComponent::PowerRays { angles, .. } => angles,
            _ => continue,
        };
        for &alpha in angles {
            let m_lo = ((lo - alpha) / TAU).floor() as i64 - 1;
            let m_hi = ((hi - alpha) / TAU).ceil() as i64 + 1;
            for m in m_lo..=m_hi {
                let t = alpha + TAU * m as f64;
                if (t - lo).abs() < RAY_TOL || (t - hi).abs() < RAY_TOL {
                    return Err(Error::CutOnRay(alpha));
                }
                if lo < t && t < hi {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
