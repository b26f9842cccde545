//! Command implementations: single-contract pricing, the benchmark harness,
//! transform diagnostics, and known-pair inversion tests.

use std::path::PathBuf;
use std::time::Instant;

use asianpx_core::benchmark::BENCHMARK_CASES;
use asianpx_core::{
    bromwich_invert, mc_price_asian, normalize, price_asian, weber_d_closed, weber_d_quadrature,
    Complex64, Error as CoreError, InversionConfig, KernelConfig, MarketInputs,
    McConfig, QuadratureConfig, TransformEvaluator,
};
use serde::Serialize;

use crate::output::{csv_opt, emit, OutputFormat};
use crate::pairs::{ExpPair, ExpRatioPair, RampPair};

/// Failure with the process exit code it maps to.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    pub fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::Validation(_) => CliError { code: 2, message: e.to_string() },
            _ => CliError { code: 3, message: e.to_string() },
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError { code: 3, message: format!("i/o error: {e}") }
    }
}

#[derive(Debug, Serialize)]
struct PriceReport {
    price: f64,
    normalized_price: f64,
    nu: f64,
    h: f64,
    k: f64,
    q_star: f64,
    q: f64,
    path: String,
    error_indicator: f64,
}

/// Prices one contract and renders the report.
pub fn run_price(
    market: MarketInputs,
    inversion: InversionConfig,
    format: OutputFormat,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let result = price_asian(&market, &inversion).map_err(CliError::from_core)?;
    let report = PriceReport {
        price: result.price,
        normalized_price: result.normalized_price,
        nu: result.problem.nu,
        h: result.problem.h,
        k: result.problem.k,
        q_star: result.problem.q_star,
        q: result.problem.q,
        path: result.path.to_string(),
        error_indicator: result.error_indicator,
    };
    let text = match format {
        OutputFormat::Text => format!(
            "price              {}\nnormalized_price   {}\nnu                 {}\nh                  {}\nk                  {}\nq_star             {}\nq                  {}\npath               {}\nerror_indicator    {}\n",
            report.price,
            report.normalized_price,
            report.nu,
            report.h,
            report.k,
            report.q_star,
            report.q,
            report.path,
            report.error_indicator,
        ),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => format!(
            "price,normalized_price,nu,h,k,q_star,q,path,error_indicator\n{},{},{},{},{},{},{},{},{}\n",
            report.price,
            report.normalized_price,
            report.nu,
            report.h,
            report.k,
            report.q_star,
            report.q,
            report.path,
            report.error_indicator,
        ),
    };
    emit(output, &text).map_err(CliError::io)
}

#[derive(Debug, Serialize, Clone)]
struct BenchmarkRow {
    case: usize,
    r: f64,
    sigma: f64,
    #[serde(rename = "T")]
    maturity: f64,
    #[serde(rename = "S0")]
    spot: f64,
    nu: f64,
    h: f64,
    q: f64,
    price_transform: f64,
    price_mc: Option<f64>,
    mc_stderr: Option<f64>,
    abs_dev_vs_paper: f64,
}

#[derive(Debug, Serialize)]
struct BenchmarkReport {
    rows: Vec<BenchmarkRow>,
    max_abs_dev_vs_paper: f64,
}

const BENCHMARK_CSV_HEADER: &str =
    "case,r,sigma,T,S0,nu,h,q,price_transform,price_mc,mc_stderr,abs_dev_vs_paper\n";

fn render_benchmark(rows: &[BenchmarkRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = String::from(BENCHMARK_CSV_HEADER);
            for row in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    row.case,
                    row.r,
                    row.sigma,
                    row.maturity,
                    row.spot,
                    row.nu,
                    row.h,
                    row.q,
                    row.price_transform,
                    csv_opt(row.price_mc),
                    csv_opt(row.mc_stderr),
                    row.abs_dev_vs_paper,
                ));
            }
            s
        }
        OutputFormat::Json => {
            let report = BenchmarkReport {
                rows: rows.to_vec(),
                max_abs_dev_vs_paper: rows
                    .iter()
                    .map(|r| r.abs_dev_vs_paper)
                    .fold(0.0, f64::max),
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::from(
                "case      r  sigma    T   S0      price  reported    mc_price   mc_stderr\n",
            );
            for row in rows {
                let reported = BENCHMARK_CASES[row.case - 1].reported_price;
                s.push_str(&format!(
                    "{:>4} {:>6} {:>6} {:>4} {:>4} {:>10.6} {:>9.3} {:>11} {:>11}\n",
                    row.case,
                    row.r,
                    row.sigma,
                    row.maturity,
                    row.spot,
                    row.price_transform,
                    reported,
                    row.price_mc.map(|v| format!("{v:.6}")).unwrap_or_default(),
                    row.mc_stderr.map(|v| format!("{v:.2e}")).unwrap_or_default(),
                ));
            }
            let max_dev = rows.iter().map(|r| r.abs_dev_vs_paper).fold(0.0, f64::max);
            s.push_str(&format!(
                "max abs deviation vs reported prices: {max_dev:.6}\n"
            ));
            s
        }
    }
}

/// Runs the built-in benchmark table. On a numerical failure the rows priced
/// so far are still emitted before the error propagates.
pub fn run_benchmark(
    case: Option<usize>,
    with_mc: bool,
    mc: McConfig,
    inversion: InversionConfig,
    format: OutputFormat,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    if let Some(c) = case {
        if !(1..=BENCHMARK_CASES.len()).contains(&c) {
            return Err(CliError::validation(format!(
                "case {c} out of range 1..={}",
                BENCHMARK_CASES.len()
            )));
        }
    }
    let selected: Vec<_> = BENCHMARK_CASES
        .iter()
        .filter(|bc| case.is_none_or(|c| c == bc.index))
        .collect();

    let mut rows = Vec::new();
    for bc in selected {
        let market = bc.market_inputs();
        let problem = normalize(&market).map_err(CliError::from_core)?;
        let priced = match price_asian(&market, &inversion) {
            Ok(p) => p,
            Err(e) => {
                // Emit the partial table, then report the failure.
                let text = render_benchmark(&rows, format);
                emit(output, &text).map_err(CliError::io)?;
                return Err(CliError::from_core(e));
            }
        };
        let (price_mc, mc_stderr) = if with_mc {
            let est = mc_price_asian(&market, &mc).map_err(CliError::from_core)?;
            (Some(est.mean_re()), Some(est.std_error))
        } else {
            (None, None)
        };
        rows.push(BenchmarkRow {
            case: bc.index,
            r: bc.rate,
            sigma: bc.sigma,
            maturity: bc.maturity,
            spot: bc.spot,
            nu: problem.nu,
            h: problem.h,
            q: problem.q,
            price_transform: priced.price,
            price_mc,
            mc_stderr,
            abs_dev_vs_paper: (priced.price - bc.reported_price).abs(),
        });
    }
    emit(output, &render_benchmark(&rows, format)).map_err(CliError::io)
}

#[derive(Debug, Serialize)]
struct TransformReport {
    a: f64,
    nu_re: f64,
    nu_im: f64,
    z_re: f64,
    z_im: f64,
    finiteness_abscissa: f64,
    identity_abscissa: f64,
    in_validity_domain: bool,
    d_closed_re: f64,
    d_closed_im: f64,
    laplace_f_re: Option<f64>,
    laplace_f_im: Option<f64>,
    d_quadrature_re: Option<f64>,
    d_quadrature_im: Option<f64>,
    closed_vs_quadrature_rel: Option<f64>,
}

/// Evaluates the transform machinery at one point, optionally cross-checking
/// the Weber integral against adaptive quadrature.
pub fn run_transform(
    a: f64,
    nu: Complex64,
    z: Complex64,
    with_quadrature: bool,
    format: OutputFormat,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let kernel = KernelConfig::default();
    let evaluator = TransformEvaluator::new(a, nu).map_err(CliError::from_core)?;
    let d = weber_d_closed(a, nu, z, &kernel).map_err(CliError::from_core)?;
    let in_domain = z.re > evaluator.validity_abscissa();
    let f = if in_domain {
        Some(evaluator.laplace_f(z).map_err(CliError::from_core)?)
    } else {
        None
    };
    let quad = if with_quadrature {
        Some(
            weber_d_quadrature(a, nu, z, &QuadratureConfig::default(), &kernel)
                .map_err(CliError::from_core)?,
        )
    } else {
        None
    };
    let report = TransformReport {
        a,
        nu_re: nu.re,
        nu_im: nu.im,
        z_re: z.re,
        z_im: z.im,
        finiteness_abscissa: evaluator.finiteness_abscissa(),
        identity_abscissa: evaluator.identity_abscissa(),
        in_validity_domain: in_domain,
        d_closed_re: d.re,
        d_closed_im: d.im,
        laplace_f_re: f.map(|v| v.re),
        laplace_f_im: f.map(|v| v.im),
        d_quadrature_re: quad.map(|v| v.re),
        d_quadrature_im: quad.map(|v| v.im),
        closed_vs_quadrature_rel: quad.map(|q| (q - d).norm() / d.norm().max(1e-300)),
    };
    let text = match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = format!(
                "a                    {}\nnu                   {} + {}i\nz                    {} + {}i\nfiniteness_abscissa  {}\nidentity_abscissa    {}\nin_validity_domain   {}\nD_closed             {} + {}i\n",
                report.a,
                report.nu_re,
                report.nu_im,
                report.z_re,
                report.z_im,
                report.finiteness_abscissa,
                report.identity_abscissa,
                report.in_validity_domain,
                report.d_closed_re,
                report.d_closed_im,
            );
            if let (Some(re), Some(im)) = (report.laplace_f_re, report.laplace_f_im) {
                s.push_str(&format!("laplace_F            {re} + {im}i\n"));
            }
            if let (Some(re), Some(im)) = (report.d_quadrature_re, report.d_quadrature_im) {
                s.push_str(&format!(
                    "D_quadrature         {re} + {im}i\nclosed_vs_quadrature {}\n",
                    report.closed_vs_quadrature_rel.unwrap()
                ));
            }
            s
        }
    };
    emit(output, &text).map_err(CliError::io)
}

#[derive(Debug, Serialize)]
struct InvertTestReport {
    pair: String,
    parameter: f64,
    t: f64,
    inverted: f64,
    analytic: f64,
    rel_err: f64,
    error_indicator: f64,
    imag_residual: f64,
    elapsed_ms: f64,
}

/// Inverts one analytically known pair and compares against the original.
pub fn run_invert_test(
    pair: &str,
    parameter: f64,
    t: f64,
    tolerance: f64,
    inversion: InversionConfig,
    format: OutputFormat,
    output: &Option<PathBuf>,
) -> Result<(), CliError> {
    let started = Instant::now();
    let (inverted, analytic): (asianpx_core::InversionResult, f64) = match pair {
        "exp" => {
            let p = ExpPair { a: parameter };
            (
                bromwich_invert(&p, t, &inversion).map_err(CliError::from_core)?,
                p.original(t),
            )
        }
        "ramp" => {
            let p = RampPair;
            (
                bromwich_invert(&p, t, &inversion).map_err(CliError::from_core)?,
                p.original(t),
            )
        }
        "expratio" => {
            let p = ExpRatioPair { b: parameter };
            (
                bromwich_invert(&p, t, &inversion).map_err(CliError::from_core)?,
                p.original(t),
            )
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown pair {other:?}; expected exp, ramp or expratio"
            )))
        }
    };
    let rel_err = (inverted.value - analytic).abs() / analytic.abs().max(1e-300);
    let report = InvertTestReport {
        pair: pair.to_string(),
        parameter,
        t,
        inverted: inverted.value,
        analytic,
        rel_err,
        error_indicator: inverted.error_indicator,
        imag_residual: inverted.imag_residual,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let text = match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        _ => format!(
            "pair            {}\nparameter       {}\nt               {}\ninverted        {}\nanalytic        {}\nrel_err         {:.3e}\nerror_indicator {:.3e}\nimag_residual   {:.3e}\n",
            report.pair,
            report.parameter,
            report.t,
            report.inverted,
            report.analytic,
            report.rel_err,
            report.error_indicator,
            report.imag_residual,
        ),
    };
    emit(output, &text).map_err(CliError::io)?;
    if rel_err > tolerance {
        return Err(CliError::numerical(format!(
            "inversion misses the analytic original: rel_err {rel_err:.3e} > tolerance {tolerance:.1e}"
        )));
    }
    Ok(())
}
