//! The analytic machinery of the Geman-Yor transform: moments of the
//! exponential accumulation functional, the generalized first Weber integral
//! `D_ν(a, z)` in both its integral and closed (Kummer) representations, and
//! the Laplace transform `F(z) = D_ν(a, z) / (z (z − 2(ν+1)))` of the
//! auxiliary constant-strike option value family, with explicit
//! domain-of-validity gating.
//!
//! The transform identity is established for drift index ν ≥ 0 on
//! `Re(z) > 2(ν+1)` by the classical Bessel-process argument, and extends to
//! ν < 0 by analytic continuation on `Re(z) > 4`. The evaluator refuses any
//! `z` outside its validity half-plane: the closed-form expression continues
//! to exist there, but it is no longer the Laplace transform of anything.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{kummer_phi, log_gamma, mu_param, KernelConfig};
use crate::quadrature::{integrate_adaptive, QuadratureConfig};

/// Radius around the removable singularities (ν = −1 for the first moment,
/// additionally ν = −2, −3 for the second) inside which series branches
/// replace the closed-form quotients. At this radius both branches carry
/// more than twelve significant digits, so the seam is invisible at the
/// tested tolerances.
pub const MOMENT_SERIES_RADIUS: f64 = 1e-4;

/// Entire function `φ(y) = (e^y − 1)/y = Σ_{n≥0} yⁿ/(n+1)!`.
fn expm1_over_arg(y: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 1..64 {
        term = term * y / (n as f64 + 1.0);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `e^y − 1` without cancellation for small `|y|`.
fn cexpm1(y: Complex64) -> Complex64 {
    if y.norm() < 0.5 {
        y * expm1_over_arg(y)
    } else {
        y.exp() - 1.0
    }
}

/// First moment `E[A_x^{(ν)}] = (e^{2x(ν+1)} − 1) / (2(ν+1))`.
///
/// Analytic in ν on the whole plane; the apparent pole at ν = −1 is
/// removable (value x) and is evaluated through the entire series
/// `x Σ (2x(ν+1))ⁿ/(n+1)!` inside [`MOMENT_SERIES_RADIUS`].
pub fn first_moment(x: f64, nu: Complex64) -> Complex64 {
    let s = nu + 1.0;
    if s.norm() > MOMENT_SERIES_RADIUS {
        cexpm1(2.0 * x * s) / (2.0 * s)
    } else {
        x * expm1_over_arg(2.0 * x * s)
    }
}

/// `(e^{4x(ν+2)} − 1) / (4(ν+2))`, the second-moment ingredient with its own
/// removable singularity at ν = −2, handled by the same series device.
fn second_moment_ingredient(x: f64, nu: Complex64) -> Complex64 {
    let u = nu + 2.0;
    if u.norm() > MOMENT_SERIES_RADIUS {
        cexpm1(4.0 * x * u) / (4.0 * u)
    } else {
        x * expm1_over_arg(4.0 * x * u)
    }
}

/// `∫_0^x s^m e^{cs} ds` for the local expansion of the second moment around
/// ν = −3 (there c = 2(ν+1) ≈ −4, so both routes below are stable).
fn power_exp_integral(m: u32, x: f64, c: Complex64) -> Complex64 {
    if (c * x).norm() <= 1.0 {
        // x^{m+1} Σ_k (cx)^k / (k! (m+k+1))
        let cx = c * x;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term / (m as f64 + 1.0);
        for k in 1..64 {
            term = term * cx / k as f64;
            let contrib = term / (m as f64 + k as f64 + 1.0);
            sum += contrib;
            if contrib.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        sum * x.powi(m as i32 + 1)
    } else {
        // Upward recursion J_m = (x^m e^{cx} − m J_{m-1})/c, stable for
        // Re(cx) < 0 where the boundary term stays small.
        let ecx = (c * x).exp();
        let mut j = (ecx - 1.0) / c;
        for k in 1..=m {
            j = (x.powi(k as i32) * ecx - k as f64 * j) / c;
        }
        j
    }
}

/// Second moment `E[(A_x^{(ν)})²]`.
///
/// Evaluated as `(g(ν) − e_{1,x}(ν)) / (ν+3)` with
/// `g(ν) = (e^{4x(ν+2)} − 1)/(4(ν+2))`, which is the standard quotient form
/// rearranged so that the removable singularities at ν = −1 and ν = −2 sit
/// inside the two first-moment-type factors (where the series device already
/// handles them). The remaining 0/0 at ν = −3 is expanded locally:
/// `e_{2,x} = 2 Σ_n (2(ν+3))ⁿ/(n+1)! ∫_0^x s^{n+1} e^{2(ν+1)s} ds`.
pub fn second_moment(x: f64, nu: Complex64) -> Complex64 {
    let p3 = nu + 3.0;
    if p3.norm() > MOMENT_SERIES_RADIUS {
        (second_moment_ingredient(x, nu) - first_moment(x, nu)) / p3
    } else {
        let c = 2.0 * (nu + 1.0);
        let y = 2.0 * p3;
        let mut factorial = 1.0;
        let mut y_pow = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 0..16u32 {
            factorial *= (n + 1) as f64;
            let term = y_pow / factorial * power_exp_integral(n + 1, x, c);
            sum += term;
            if term.norm() <= 1e-17 * sum.norm().max(f64::MIN_POSITIVE) {
                break;
            }
            y_pow *= y;
        }
        2.0 * sum
    }
}

/// The generalized first Weber integral in closed form,
///
/// `D_ν(a, z) = Γ((ν+4+μ)/2)/Γ(μ+1) · Φ((ν+4+μ)/2, μ+1; 1/(2a))
///              · e^{−1/(2a)} · (2a)^{(ν+2−μ)/2}`,    `μ = √(2z+ν²)`,
///
/// valid for `Re(z) ≥ 2` and `|Im(ν)| ≤ 1` (which keeps `Re(μ) > |Re(ν)|`
/// and thus every gamma argument in the right half-plane). The gamma ratio
/// and the complex power are combined in log space so that large `|Im(z)|`
/// on a Bromwich contour cannot overflow intermediates; `(2a)^w` is computed
/// as `exp(w·ln(2a))` with the real logarithm of the positive base, so the
/// power carries no branch ambiguity.
pub fn weber_d_closed(a: f64, nu: Complex64, z: Complex64, cfg: &KernelConfig) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Validation(format!(
            "weber_d_closed: a = {a} must be positive"
        )));
    }
    if z.re < 2.0 {
        return Err(Error::Domain(format!(
            "weber_d_closed: Re(z) = {} below the validity bound 2",
            z.re
        )));
    }
    if nu.im.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "weber_d_closed: |Im(nu)| = {} outside the validity band [-1, 1]",
            nu.im.abs()
        )));
    }
    let mu = mu_param(z, nu)?;
    let alpha = (nu + 4.0 + mu) / 2.0;
    let x = 1.0 / (2.0 * a);
    let phi = kummer_phi(alpha, mu + 1.0, x, cfg)?;
    let log_d = log_gamma(alpha)? - log_gamma(mu + 1.0)?
        + phi.value.ln()
        + (nu + 2.0 - mu) / 2.0 * (2.0 * a).ln()
        - x;
    let d = log_d.exp();
    if !d.re.is_finite() || !d.im.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "weber_d_closed: non-finite value at a={a}, nu={nu}, z={z}"
        )));
    }
    Ok(d)
}

/// The generalized first Weber integral by direct adaptive quadrature,
///
/// `D_ν(a, z) = e^{−1/(2a)}/a ∫_0^∞ e^{−x²/(2a)} x^{ν+3} I_μ(x/a) dx`.
///
/// Serves as the independent oracle for [`weber_d_closed`]. The integrand
/// behaves like `x^{ν+3+μ}` near zero and is crushed by the Gaussian factor
/// at infinity; since `I_μ(ξ) ≈ e^ξ/√(2πξ)` for large ξ, the effective
/// envelope is `exp(−(x−1)²/(2a))`, so the upper limit truncates where that
/// shifted Gaussian falls below the configured cutoff.
pub fn weber_d_quadrature(
    a: f64,
    nu: Complex64,
    z: Complex64,
    quad: &QuadratureConfig,
    kernel: &KernelConfig,
) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Validation(format!(
            "weber_d_quadrature: a = {a} must be positive"
        )));
    }
    let mu = mu_param(z, nu)?;
    // Integrability at the origin: x^{Re(ν)+3+Re(μ)} must beat 1/x.
    if nu.re + 3.0 + mu.re <= -1.0 {
        return Err(Error::Domain(format!(
            "weber_d_quadrature: integrand not integrable at 0 (Re(nu)+3+Re(mu) = {})",
            nu.re + 3.0 + mu.re
        )));
    }
    let x_max = 1.0 + (2.0 * a * (1.0 / quad.envelope_cutoff).ln()).sqrt();
    let xi_max = x_max / a;
    if xi_max > 700.0 {
        return Err(Error::Domain(format!(
            "weber_d_quadrature: Bessel argument up to {xi_max:.1} would overflow (a = {a})"
        )));
    }
    // The oracle legitimately needs Bessel arguments up to x_max/a, which can
    // exceed the production-path cap; widen the cap for its own evaluations.
    let mut wide = kernel.clone();
    wide.bessel_arg_cap = wide.bessel_arg_cap.max(xi_max * 1.001);

    let integrand = |x: f64| -> Result<Complex64> {
        if x <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let gauss = (-x * x / (2.0 * a)).exp();
        let power = ((nu + 3.0) * x.ln()).exp();
        let bessel = crate::kernel::bessel_i(mu, x / a, &wide)?;
        Ok(gauss * power * bessel)
    };

    // Seed panels at the shifted-Gaussian peak so the first refinements land
    // where the mass is.
    let w = a.sqrt();
    let seeds = [
        (1.0 - 5.0 * w).max(x_max * 1e-3),
        1.0_f64.min(x_max * 0.5),
        (1.0 + 5.0 * w).min(x_max * 0.999),
    ];
    let integral = integrate_adaptive(integrand, 0.0, x_max, &seeds, quad)?;
    Ok((-1.0 / (2.0 * a)).exp() / a * integral)
}

/// A bound transform instance: the auxiliary-option "strike" `a`, the drift
/// index ν, and the two abscissae that gate evaluation.
///
/// * `finiteness_abscissa` — the integral defining the transform is finite
///   for `Re(z)` above `max{0, Im²(ν)/2 + 2(Re(ν)+1)}`.
/// * `identity_abscissa` — the closed form is proven equal to the transform
///   for `Re(z) > 2(ν+1)` when ν is real ≥ 0, and for `Re(z) > 4` when
///   ν is real < 0 (the continued regime). Complex ν carries the finiteness
///   bound with the same floor of 4.
///
/// The two bounds are independent; evaluation requires `Re(z)` above both.
#[derive(Debug, Clone)]
pub struct TransformEvaluator {
    a: f64,
    nu: Complex64,
    finiteness_abscissa: f64,
    identity_abscissa: f64,
    kernel: KernelConfig,
}

impl TransformEvaluator {
    /// Binds `(a, ν)` with default kernel tolerances.
    pub fn new(a: f64, nu: Complex64) -> Result<Self> {
        Self::with_config(a, nu, KernelConfig::default())
    }

    /// Binds `(a, ν)` with explicit kernel tolerances.
    pub fn with_config(a: f64, nu: Complex64, kernel: KernelConfig) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Validation(format!(
                "TransformEvaluator: a = {a} must be positive"
            )));
        }
        if !nu.re.is_finite() || !nu.im.is_finite() {
            return Err(Error::Validation("TransformEvaluator: nu must be finite".into()));
        }
        let finiteness = (nu.im * nu.im / 2.0 + 2.0 * (nu.re + 1.0)).max(0.0);
        let identity = if nu.im == 0.0 {
            if nu.re >= 0.0 {
                2.0 * (nu.re + 1.0)
            } else {
                4.0
            }
        } else {
            finiteness.max(4.0)
        };
        Ok(TransformEvaluator {
            a,
            nu,
            finiteness_abscissa: finiteness,
            identity_abscissa: identity,
            kernel,
        })
    }

    /// The auxiliary strike `a`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// The drift index ν.
    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    /// Abscissa above which the defining integral is finite.
    pub fn finiteness_abscissa(&self) -> f64 {
        self.finiteness_abscissa
    }

    /// Abscissa above which the closed form is proven to equal the transform.
    pub fn identity_abscissa(&self) -> f64 {
        self.identity_abscissa
    }

    /// The evaluation gate: `Re(z)` must exceed both abscissae.
    pub fn validity_abscissa(&self) -> f64 {
        self.finiteness_abscissa.max(self.identity_abscissa)
    }

    /// Evaluates `F(z) = D_ν(a, z) / (z (z − 2(ν+1)))`.
    ///
    /// Hard-gated on the validity half-plane: outside it the closed form is
    /// a perfectly good analytic expression with no relation to the Laplace
    /// transform, so evaluation is refused rather than silently wrong.
    pub fn laplace_f(&self, z: Complex64) -> Result<Complex64> {
        if z.re <= self.validity_abscissa() {
            return Err(Error::Domain(format!(
                "laplace_f: Re(z) = {} must exceed both the finiteness abscissa {} and the identity abscissa {} (nu = {})",
                z.re, self.finiteness_abscissa, self.identity_abscissa, self.nu
            )));
        }
        let d = weber_d_closed(self.a, self.nu, z, &self.kernel)?;
        Ok(d / (z * (z - 2.0 * (self.nu + 1.0))))
    }
}
