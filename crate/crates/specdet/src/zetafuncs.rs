//! Riemann and Hurwitz zeta functions for complex arguments, their
//! s-derivatives, and the Bernoulli numbers driving the Euler-Maclaurin
//! continuation.
//!
//! The continuation engine is Euler-Maclaurin: the defining sum is cut off
//! after `M` terms and corrected by an integral term, a boundary term, and
//! `K` even Bernoulli terms. All terms are elementary in `s`, so the
//! s-derivative is computed analytically term by term.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_BERNOULLI: usize = 60;

/// Exact rational Bernoulli numbers `B_0 ... B_upto`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &BigRational {
        &self.values[n]
    }

    pub fn get_f64(&self, n: usize) -> f64 {
        self.values[n].to_f64().expect("Bernoulli number fits f64")
    }
}

/// Generates `B_0 ... B_upto` from the defining recurrence
/// `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
pub fn bernoulli(upto: usize) -> Result<BernoulliTable> {
    if upto > MAX_BERNOULLI {
        return Err(Error::LimitExceeded(upto));
    }
    let mut values: Vec<BigRational> = Vec::with_capacity(upto + 1);
    values.push(BigRational::one());
    for n in 1..=upto {
        // B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (k, b) in values.iter().enumerate() {
            if k > 0 {
                // C(n+1,k) = C(n+1,k-1) * (n+2-k) / k
                binom = &binom * BigInt::from(n + 2 - k) / BigInt::from(k);
            }
            acc += BigRational::from_integer(binom.clone()) * b;
        }
        values.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    Ok(BernoulliTable { values })
}

/// `B_{2k} / (2k)!` for `k = 1..=30`, shared by the continuation code and
/// the oracle's tail acceleration.
pub(crate) static B2K_OVER_FACTORIAL: Lazy<Vec<f64>> = Lazy::new(|| {
    let table = bernoulli(MAX_BERNOULLI).expect("within limit");
    let mut out = Vec::with_capacity(30);
    let mut factorial = BigInt::from(2); // (2k)! starting at k = 1
    for k in 1..=30usize {
        if k > 1 {
            factorial *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
        }
        let coeff = table.get(2 * k) / BigRational::from_integer(factorial.clone());
        out.push(coeff.to_f64().expect("coefficient fits f64"));
    }
    out
});

/// Euler-Maclaurin truncation parameters: `m` direct terms, `k` Bernoulli
/// correction terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EMParams {
    pub m: usize,
    pub k: usize,
}

impl EMParams {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::ValidationError("EM cutoff M must be >= 1".into()));
        }
        if !(1..=30).contains(&k) {
            return Err(Error::ValidationError(
                "EM correction count K must be in 1..=30".into(),
            ));
        }
        Ok(Self { m, k })
    }
}

impl Default for EMParams {
    fn default() -> Self {
        Self { m: 30, k: 12 }
    }
}

/// Rising factorial `(s)_n = s (s+1) ... (s+n-1)` and its s-derivative.
pub(crate) fn rising_factorial(s: Complex64, n: usize) -> (Complex64, Complex64) {
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let f = s + i as f64;
        dp = dp * f + p;
        p *= f;
    }
    (p, dp)
}

const POLE_GUARD: f64 = 1e-12;

fn check_args(s: Complex64, a: Complex64) -> Result<()> {
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::PoleAtOne);
    }
    if a.re <= 0.0 {
        return Err(Error::DomainError(a));
    }
    Ok(())
}

/// Euler-Maclaurin evaluation of `zeta_H(s, a)` together with its
/// s-derivative. Both come from the same term list, differentiated
/// analytically.
fn hurwitz_em(s: Complex64, a: Complex64, params: &EMParams) -> Result<(Complex64, Complex64)> {
    check_args(s, a)?;
    EMParams::new(params.m, params.k)?;

    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);

    for j in 0..params.m {
        let t = a + j as f64;
        let lt = t.ln();
        let e = (-s * lt).exp();
        value += e;
        deriv -= lt * e;
    }

    let q = a + params.m as f64;
    let lq = q.ln();

    // Integral term (M+a)^{1-s}/(s-1).
    let integral = ((1.0 - s) * lq).exp() / (s - 1.0);
    value += integral;
    deriv += integral * (-lq - 1.0 / (s - 1.0));

    // Boundary term (M+a)^{-s}/2.
    let half = 0.5 * (-s * lq).exp();
    value += half;
    deriv -= lq * half;

    // Bernoulli corrections.
    for k in 1..=params.k {
        let n = 2 * k - 1;
        let (r, dr) = rising_factorial(s, n);
        let e = ((-s - n as f64) * lq).exp();
        let coeff = B2K_OVER_FACTORIAL[k - 1];
        value += coeff * r * e;
        deriv += coeff * (dr * e - r * lq * e);
    }

    Ok((value, deriv))
}

/// Hurwitz zeta `zeta_H(s, a) = sum_{j>=0} (j+a)^{-s}`, meromorphically
/// continued past the `Re s > 1` half-plane.
pub fn hurwitz_zeta(s: Complex64, a: Complex64, params: &EMParams) -> Result<Complex64> {
    hurwitz_em(s, a, params).map(|(v, _)| v)
}

/// Analytic s-derivative of [`hurwitz_zeta`].
pub fn hurwitz_zeta_ds(s: Complex64, a: Complex64, params: &EMParams) -> Result<Complex64> {
    hurwitz_em(s, a, params).map(|(_, d)| d)
}

/// Riemann zeta `zeta_R(s) = zeta_H(s, 1)`.
pub fn riemann_zeta(s: Complex64, params: &EMParams) -> Result<Complex64> {
    hurwitz_zeta(s, Complex64::new(1.0, 0.0), params)
}

/// Analytic s-derivative of [`riemann_zeta`].
pub fn riemann_zeta_ds(s: Complex64, params: &EMParams) -> Result<Complex64> {
    hurwitz_zeta_ds(s, Complex64::new(1.0, 0.0), params)
}

/// Upper integration limit for the Hermite integral. The integrand is
/// damped by `e^{2πx} - 1`, so the tail beyond this point is below 1e-14
/// for every `(s, a)` accepted here.
const HERMITE_CUTOFF: f64 = 8.0;
const HERMITE_TOL: f64 = 1e-13;

/// Hermite integral representation of the Hurwitz zeta function:
///
/// `zeta_H(s,a) = a^{-s}/2 + a^{1-s}/(s-1)
///              + 2 * int_0^inf sin(s atan(x/a)) / ((a^2+x^2)^{s/2} (e^{2πx}-1)) dx`.
///
/// Used as an independent cross-check of the Euler-Maclaurin path.
pub fn hermite_check(s: Complex64, a: Complex64) -> Result<Complex64> {
    check_args(s, a)?;
    let la = a.ln();
    let head = 0.5 * (-s * la).exp() + ((1.0 - s) * la).exp() / (s - 1.0);

    let integrand = |x: f64| -> Complex64 {
        if x == 0.0 {
            // sin(s atan(x/a)) ~ s x / a and e^{2πx} - 1 ~ 2πx.
            return s * ((-s - 1.0) * la).exp() / (2.0 * PI);
        }
        let t = (Complex64::new(x, 0.0) / a).atan();
        let num = (s * t).sin();
        let den = ((a * a + x * x).powc(s / 2.0)) * (2.0 * PI * x).exp_m1();
        num / den
    };

    let integral = adaptive_simpson(&integrand, 0.0, HERMITE_CUTOFF, HERMITE_TOL)?;
    Ok(head + 2.0 * integral)
}

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

fn adaptive_simpson<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, b - a);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let err = (left + right - whole).norm();
    if err <= 15.0 * tol {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure {
            tol,
            best: err / 15.0,
        });
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
    Ok(l + r)
}

// Odd Bernoulli numbers beyond B_1 vanish, so the rational table only ever
// carries signed values at even indices; expose that check for tests.
#[allow(dead_code)]
pub(crate) fn is_exact_zero(r: &BigRational) -> bool {
    r.is_zero() || (!r.is_positive() && !r.is_negative())
}
