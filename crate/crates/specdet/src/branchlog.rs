//! Branch-cut-aware complex argument, logarithm, and power.
//!
//! Every place in the crate where the multivaluedness of the complex
//! logarithm matters goes through this module. A [`BranchCut`] fixes the
//! branch: arguments are taken from the half-open interval `(β, β + 2π]`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Angular tolerance for deciding that a point sits on the cut itself.
pub const ON_CUT_TOL: f64 = 1e-12;

/// A branch cut of the logarithm along the ray `arg z = β`.
///
/// `β` is kept exactly as given and is *not* reduced mod 2π: cuts on the
/// same geometric ray but with angles differing by 2π select different
/// sheets and are distinct objects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCut {
    beta: f64,
}

impl BranchCut {
    pub fn new(beta: f64) -> Self {
        assert!(beta.is_finite(), "branch cut angle must be finite");
        Self { beta }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Shift the given angle by a multiple of 2π into `(β, β + 2π]`.
    pub fn lift(&self, angle: f64) -> f64 {
        let k = ((self.beta - angle) / TAU).ceil();
        let mut theta = angle + TAU * k;
        if theta <= self.beta {
            theta += TAU;
        } else if theta > self.beta + TAU {
            theta -= TAU;
        }
        theta
    }

    /// Angular distance mod 2π between `angle` and the cut ray.
    pub fn distance_to_cut(&self, angle: f64) -> f64 {
        let d = (angle - self.beta).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// Argument of `z` taken from `(β, β + 2π]`.
pub fn arg_in_branch(z: Complex64, cut: &BranchCut) -> Result<f64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let principal = z.arg();
    if cut.distance_to_cut(principal) < ON_CUT_TOL {
        return Err(Error::OnBranchCut { beta: cut.beta() });
    }
    Ok(cut.lift(principal))
}

/// Logarithm of `z` on the branch fixed by `cut`.
pub fn log_branch(z: Complex64, cut: &BranchCut) -> Result<Complex64> {
    let theta = arg_in_branch(z, cut)?;
    Ok(Complex64::new(z.norm().ln(), theta))
}

/// `z^w` computed as `exp(w · log_branch(z))`.
pub fn pow_branch(z: Complex64, w: Complex64, cut: &BranchCut) -> Result<Complex64> {
    let log = log_branch(z, cut)?;
    Ok((w * log).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arg_examples() {
        let principal = BranchCut::new(-PI);
        assert!((arg_in_branch(I, &principal).unwrap() - PI / 2.0).abs() < 1e-15);

        // -i seen from the positive-axis cut sits at 3π/2.
        let positive = BranchCut::new(0.0);
        assert!((arg_in_branch(-I, &positive).unwrap() - 3.0 * PI / 2.0).abs() < 1e-15);

        // Same point from the negative-axis cut sits at -π/2.
        assert!((arg_in_branch(-I, &principal).unwrap() + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn arg_rejects_zero_and_on_cut() {
        let cut = BranchCut::new(0.3);
        assert!(matches!(
            arg_in_branch(c(0.0, 0.0), &cut),
            Err(Error::ZeroArgument)
        ));
        let on_cut = Complex64::from_polar(2.0, 0.3);
        assert!(matches!(
            arg_in_branch(on_cut, &cut),
            Err(Error::OnBranchCut { .. })
        ));
    }

    #[test]
    fn log_examples() {
        let principal = BranchCut::new(-PI);
        let l = log_branch(c(1.0, 0.0), &principal).unwrap();
        assert!(l.norm() < 1e-15);

        let l = log_branch(c(0.0, 2.0), &principal).unwrap();
        assert!((l.re - 2f64.ln()).abs() < 1e-15);
        assert!((l.im - PI / 2.0).abs() < 1e-15);
        assert!((l.exp() - c(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn pow_examples() {
        let principal = BranchCut::new(-PI);
        let positive = BranchCut::new(0.0);

        // i^{-1} = -i on the principal branch.
        let p = pow_branch(I, c(-1.0, 0.0), &principal).unwrap();
        assert!((p - c(0.0, -1.0)).norm() < 1e-14);

        // (-i)^{-1} with arguments from (0, 2π]: (e^{3iπ/2})^{-1} = i.
        let p = pow_branch(-I, c(-1.0, 0.0), &positive).unwrap();
        assert!((p - I).norm() < 1e-14);

        // e^{iπ} = -1.
        let p = pow_branch(c(std::f64::consts::E, 0.0), c(0.0, PI), &principal).unwrap();
        assert!((p - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn crossing_the_cut_jumps_by_two_pi() {
        let z = Complex64::from_polar(1.5, 1.0);
        let below = arg_in_branch(z, &BranchCut::new(1.0 - 1e-6)).unwrap();
        let above = arg_in_branch(z, &BranchCut::new(1.0 + 1e-6)).unwrap();
        assert!((below - 1.0).abs() < 1e-12);
        assert!((above - below - TAU).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn exp_inverts_log(re in -50.0f64..50.0, im in -50.0f64..50.0, beta in -10.0f64..10.0) {
            let z = c(re, im);
            let cut = BranchCut::new(beta);
            prop_assume!(z.norm() > 1e-6);
            prop_assume!(cut.distance_to_cut(z.arg()) > 1e-6);
            let l = log_branch(z, &cut).unwrap();
            prop_assert!((l.exp() - z).norm() <= 1e-13 * z.norm());
        }

        #[test]
        fn sheet_shift_adds_two_pi_i(re in -50.0f64..50.0, im in -50.0f64..50.0, beta in -10.0f64..10.0) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-6);
            let cut = BranchCut::new(beta);
            prop_assume!(cut.distance_to_cut(z.arg()) > 1e-6);
            let lo = log_branch(z, &cut).unwrap();
            let hi = log_branch(z, &BranchCut::new(beta + TAU)).unwrap();
            prop_assert!((hi - lo - Complex64::new(0.0, TAU)).norm() < 1e-9);
        }

        #[test]
        fn principal_window_is_identity(re in -50.0f64..50.0, im in -50.0f64..50.0, off in 1e-3f64..6.0) {
            // β inside (θ_p - 2π, θ_p) leaves the principal argument unchanged.
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-6);
            let theta_p = z.arg();
            prop_assume!(off < TAU - 1e-3);
            let cut = BranchCut::new(theta_p - off);
            let theta = arg_in_branch(z, &cut).unwrap();
            prop_assert!((theta - theta_p).abs() < 1e-12);
        }

        #[test]
        fn zeroth_power_is_one(re in -50.0f64..50.0, im in -50.0f64..50.0, beta in -10.0f64..10.0) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-6);
            let cut = BranchCut::new(beta);
            prop_assume!(cut.distance_to_cut(z.arg()) > 1e-6);
            let p = pow_branch(z, c(0.0, 0.0), &cut).unwrap();
            prop_assert!((p - c(1.0, 0.0)).norm() < 1e-15);
        }
    }
}
