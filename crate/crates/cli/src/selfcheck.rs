//! Numerical self-check suites: the shipped configuration must validate
//! itself on demand. Each suite replays the key identities and invariants
//! of one engine layer and reports failures individually.

// Reference constants keep their full digits; NaN must fail checks, hence
// the negated comparisons.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use asianpx_core::{
    bessel_i, bromwich_invert, first_moment, kummer_phi, log_gamma, mu_param, principal_sqrt,
    second_moment, weber_d_closed, weber_d_quadrature, Complex64, InversionConfig, KernelConfig,
    QuadratureConfig,
};
use serde::Serialize;

use crate::pairs::{ExpPair, ExpRatioPair, RampPair};

/// Report of one suite run.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub max_rel_err: f64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: 0,
            max_rel_err: 0.0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, err: f64, tol: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        if err.is_finite() {
            self.max_rel_err = self.max_rel_err.max(err);
        }
        if !(err <= tol) {
            self.failures
                .push(format!("{} (err {err:.3e} > tol {tol:.1e})", what()));
        }
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Options shared by the suites.
pub struct SelfcheckOptions {
    /// Sample count for the square-root lemma sweep.
    pub samples: usize,
    /// Tolerance override; each suite has its own default when absent.
    pub tolerance: Option<f64>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn uniform(state: &mut u64, lo: f64, hi: f64) -> f64 {
    let u = splitmix64(state) as f64 / u64::MAX as f64;
    lo + u * (hi - lo)
}

fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

/// Kernel identities: square-root involution, log-gamma recurrence,
/// half-integer Bessel closed forms, Kummer transformation.
pub fn kernel_suite(opts: &SelfcheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("kernel");
    let tol = opts.tolerance.unwrap_or(1e-10);
    let cfg = KernelConfig::default();
    let mut state = 0xA5A5_0001u64;

    for _ in 0..2000 {
        let w = Complex64::new(uniform(&mut state, -40.0, 40.0), uniform(&mut state, -40.0, 40.0));
        if w.im == 0.0 && w.re <= 0.0 {
            continue;
        }
        match principal_sqrt(w) {
            Ok(s) => report.check(
                (s * s - w).norm() / w.norm(),
                tol.max(1e-14),
                || format!("sqrt roundtrip at {w}"),
            ),
            Err(e) => report.fail(format!("sqrt rejected {w}: {e}")),
        }
    }

    for _ in 0..500 {
        let w = Complex64::new(uniform(&mut state, 0.1, 30.0), uniform(&mut state, -30.0, 30.0));
        let lhs = (log_gamma(w + 1.0).unwrap() - log_gamma(w).unwrap()).exp();
        report.check(rel_err(lhs, w), tol.max(1e-12), || {
            format!("log-gamma recurrence at {w}")
        });
    }

    let mut xi = 0.5;
    while xi <= 30.0 {
        let n = (2.0 / (std::f64::consts::PI * xi)).sqrt();
        let want = [
            (0.5, n * xi.sinh()),
            (-0.5, n * xi.cosh()),
            (1.5, n * (xi.cosh() - xi.sinh() / xi)),
        ];
        for &(order, w) in &want {
            let got = bessel_i(Complex64::new(order, 0.0), xi, &cfg).unwrap();
            report.check((got.re - w).abs() / w.abs(), tol, || {
                format!("half-integer Bessel order {order} at xi={xi}")
            });
        }
        xi *= 1.9;
    }

    for _ in 0..200 {
        let alpha = Complex64::new(uniform(&mut state, -2.0, 3.0), uniform(&mut state, -1.5, 1.5));
        let beta = Complex64::new(uniform(&mut state, 0.6, 5.0), uniform(&mut state, -1.5, 1.5));
        let x = uniform(&mut state, 0.05, 4.0);
        let lhs = kummer_phi(alpha, beta, x, &cfg).unwrap().value;
        // Reference side of the Kummer transformation, alternating series.
        let mut term = Complex64::new(1.0, 0.0);
        let mut alt = term;
        for k in 0..2000 {
            let kf = k as f64;
            term = term * (beta - alpha + kf) * (-x) / ((beta + kf) * (kf + 1.0));
            alt += term;
            if term.norm() < 1e-17 * alt.norm().max(1e-30) && k > 4 {
                break;
            }
        }
        let rhs = x.exp() * alt;
        report.check(rel_err(lhs, rhs), tol.max(1e-9), || {
            format!("Kummer transformation at alpha={alpha}, beta={beta}, x={x}")
        });
    }

    report
}

/// Square-root lemma sweep: `Re √(2z+ν²) > |Re ν|` strictly on
/// `Re(z) ≥ 2`, `|Im(ν)| ≤ 1`.
pub fn sqrt_lemma_suite(opts: &SelfcheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("sqrt-lemma");
    let mut state = 0x5157_0002u64;
    for _ in 0..opts.samples {
        let z = Complex64::new(uniform(&mut state, 2.0, 60.0), uniform(&mut state, -80.0, 80.0));
        let nu = Complex64::new(uniform(&mut state, -12.0, 12.0), uniform(&mut state, -1.0, 1.0));
        report.checks += 1;
        match mu_param(z, nu) {
            Ok(m) => {
                if !(m.re > nu.re.abs()) {
                    report.fail(format!("bound violated at z={z}, nu={nu}: mu={m}"));
                }
            }
            Err(e) => report.fail(format!("mu_param rejected z={z}, nu={nu}: {e}")),
        }
    }
    report
}

/// Closed-form vs quadrature Weber integral on a compact grid.
pub fn weber_suite(opts: &SelfcheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("weber");
    let tol = opts.tolerance.unwrap_or(1e-8);
    let kernel = KernelConfig::default();
    let quad = QuadratureConfig::default();
    for &a in &[0.0625, 1.0, 8.0] {
        for &nu_re in &[-3.0, -0.6, 0.0, 3.0] {
            for &(z_re, z_im) in &[(4.5, 0.0), (8.0, 5.0), (12.0, -20.0)] {
                let nu = Complex64::new(nu_re, 0.0);
                let z = Complex64::new(z_re, z_im);
                let closed = weber_d_closed(a, nu, z, &kernel);
                let numeric = weber_d_quadrature(a, nu, z, &quad, &kernel);
                match (closed, numeric) {
                    (Ok(c), Ok(n)) => report.check(rel_err(n, c), tol, || {
                        format!("Weber identity at a={a}, nu={nu_re}, z={z}")
                    }),
                    (c, n) => report.fail(format!(
                        "Weber evaluation failed at a={a}, nu={nu_re}, z={z}: {c:?} / {n:?}"
                    )),
                }
            }
        }
    }
    report
}

/// Known transform pairs through the Bromwich engine.
pub fn inversion_suite(opts: &SelfcheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("inversion");
    let tol = opts.tolerance.unwrap_or(1e-7);
    let cfg = InversionConfig::default();
    for &t in &[1e-3, 0.01, 0.1, 0.5, 1.0] {
        for &p in &[-2.0, -0.5, 1.0, 2.5, 4.0] {
            let pair = ExpPair { a: p };
            match bromwich_invert(&pair, t, &cfg) {
                Ok(r) => report.check(
                    (r.value - pair.original(t)).abs() / pair.original(t).abs(),
                    tol,
                    || format!("exp pair a={p}, t={t}"),
                ),
                Err(e) => report.fail(format!("exp pair a={p}, t={t}: {e}")),
            }
            let pair = ExpRatioPair { b: p };
            match bromwich_invert(&pair, t, &cfg) {
                Ok(r) => report.check(
                    (r.value - pair.original(t)).abs() / pair.original(t).abs(),
                    tol,
                    || format!("exp-ratio pair b={p}, t={t}"),
                ),
                Err(e) => report.fail(format!("exp-ratio pair b={p}, t={t}: {e}")),
            }
        }
        match bromwich_invert(&RampPair, t, &cfg) {
            Ok(r) => report.check((r.value - t).abs() / t, tol, || format!("ramp pair t={t}")),
            Err(e) => report.fail(format!("ramp pair t={t}: {e}")),
        }
    }
    report
}

/// Moment functions: reference values, seam continuity, textbook-form
/// agreement.
pub fn moments_suite(opts: &SelfcheckOptions) -> SuiteReport {
    let mut report = SuiteReport::new("moments");
    let tol = opts.tolerance.unwrap_or(1e-8);

    // 50-digit reference values.
    let refs = [
        (0.1, 0.0, 0.11070137908008492, 0.01416374566049118),
        (0.1, -1.0, 0.1, 0.011478087205158791),
        (0.1, -2.0, 0.090634623461009075, 0.0093653765389909303),
        (0.1, -3.0, 0.082419988491090179, 0.0076939919437631231),
        (0.25, -0.6, 0.27675344770021229, 0.11200748956275936),
        (0.25, 3.0, 0.79863201236633128, 1.0953376571270831),
    ];
    for &(x, nu, e1, e2) in &refs {
        let m1 = first_moment(x, Complex64::new(nu, 0.0)).re;
        let m2 = second_moment(x, Complex64::new(nu, 0.0)).re;
        report.check((m1 - e1).abs() / e1, tol.min(1e-11), || {
            format!("first moment at x={x}, nu={nu}")
        });
        report.check((m2 - e2).abs() / e2, tol.min(1e-11), || {
            format!("second moment at x={x}, nu={nu}")
        });
    }

    // Branch-seam continuity around each removable singularity.
    let radius = asianpx_core::transform::MOMENT_SERIES_RADIUS;
    for &bad in &[-1.0, -2.0, -3.0] {
        for &x in &[0.05, 0.25] {
            let inside = second_moment(x, Complex64::new(bad + radius * (1.0 - 1e-12), 0.0));
            let outside = second_moment(x, Complex64::new(bad + radius * (1.0 + 1e-12), 0.0));
            report.check(rel_err(inside, outside), tol, || {
                format!("second-moment seam at nu={bad}, x={x}")
            });
        }
    }
    report
}

/// Runs the selected suites ("all" selects every one).
pub fn run_suites(selection: &str, opts: &SelfcheckOptions) -> Result<Vec<SuiteReport>, String> {
    let all = ["kernel", "sqrt-lemma", "weber", "inversion", "moments"];
    let wanted: Vec<&str> = if selection == "all" {
        all.to_vec()
    } else if all.contains(&selection) {
        vec![selection]
    } else {
        return Err(format!(
            "unknown suite {selection:?}; expected one of {all:?} or \"all\""
        ));
    };
    Ok(wanted
        .iter()
        .map(|&name| match name {
            "kernel" => kernel_suite(opts),
            "sqrt-lemma" => sqrt_lemma_suite(opts),
            "weber" => weber_suite(opts),
            "inversion" => inversion_suite(opts),
            "moments" => moments_suite(opts),
            _ => unreachable!(),
        })
        .collect())
}
