//! `asianpx` — arithmetic-average Asian option pricing on the command line.
//!
//! Exit codes: 0 success, 1 self-check failure, 2 input validation,
//! 3 numerical failure.

mod commands;
mod config;
mod output;
mod pairs;
mod selfcheck;

use std::path::PathBuf;
use std::process::ExitCode;

use asianpx_core::{Complex64, InversionConfig, MarketInputs, McConfig};
use clap::{Args, Parser, Subcommand};

use commands::CliError;
use config::ConfigFile;
use output::{emit, OutputFormat};

#[derive(Parser)]
#[command(
    name = "asianpx",
    version,
    about = "Arithmetic-average Asian option pricing via Laplace transform inversion",
    after_help = "Exit codes: 0 success, 1 selfcheck failure, 2 input validation, 3 numerical failure."
)]
struct Cli {
    /// Output format (also via ASIANPX_FORMAT).
    #[arg(long, global = true, env = "ASIANPX_FORMAT", value_enum, default_value = "text")]
    format: OutputFormat,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// JSON config file: a flat object whose keys mirror the long flags.
    /// Explicit flags override the file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct InversionArgs {
    /// Trapezoid terms summed before acceleration (default 200).
    #[arg(long)]
    terms: Option<usize>,
    /// Euler acceleration stages (default 25).
    #[arg(long)]
    euler_stages: Option<usize>,
    /// Contour margin above the validity abscissa (default 1).
    #[arg(long)]
    abscissa_margin: Option<f64>,
    /// Target relative tolerance of the inversion (default 1e-7).
    #[arg(long)]
    rel_tol: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct McArgs {
    /// Monte Carlo paths (default 200000).
    #[arg(long)]
    paths: Option<usize>,
    /// Time steps per unit time (default 2000).
    #[arg(long)]
    steps_per_unit: Option<usize>,
    /// Seed of the path generator family (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Antithetic pairing (default true).
    #[arg(long)]
    antithetic: Option<bool>,
}

#[derive(Subcommand)]
enum Command {
    /// Price a single fixed-strike arithmetic-average Asian call.
    #[command(allow_negative_numbers = true)]
    Price {
        /// Continuously compounded interest rate.
        #[arg(long)]
        rate: Option<f64>,
        /// Continuous dividend yield (default 0).
        #[arg(long = "div")]
        dividend_yield: Option<f64>,
        /// Volatility per square-root year.
        #[arg(long)]
        sigma: Option<f64>,
        /// Spot price at the valuation date.
        #[arg(long)]
        spot: Option<f64>,
        /// Strike.
        #[arg(long)]
        strike: Option<f64>,
        /// Maturity in years.
        #[arg(long)]
        maturity: Option<f64>,
        /// Write date of the averaging window (default 0).
        #[arg(long)]
        write_time: Option<f64>,
        /// Valuation date (default = write date).
        #[arg(long)]
        valuation_time: Option<f64>,
        /// Accrued averaging integral for seasoned contracts (default 0).
        #[arg(long)]
        running_integral: Option<f64>,
        #[command(flatten)]
        inversion: InversionArgs,
    },
    /// Price the built-in seven-case benchmark table.
    #[command(allow_negative_numbers = true)]
    Benchmark {
        /// Restrict to one case (1-7).
        #[arg(long)]
        case: Option<usize>,
        /// Add a Monte Carlo column.
        #[arg(long)]
        with_mc: bool,
        #[command(flatten)]
        mc: McArgs,
        #[command(flatten)]
        inversion: InversionArgs,
    },
    /// Evaluate the Weber integral and the transform at one point.
    #[command(allow_negative_numbers = true)]
    Transform {
        /// Auxiliary strike a > 0.
        #[arg(long)]
        a: f64,
        /// Real part of the drift index.
        #[arg(long)]
        nu: f64,
        /// Imaginary part of the drift index (default 0).
        #[arg(long, default_value_t = 0.0)]
        nu_im: f64,
        /// Real part of z.
        #[arg(long)]
        z_re: f64,
        /// Imaginary part of z (default 0).
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        /// Also run the adaptive-quadrature oracle and report the gap.
        #[arg(long)]
        with_quadrature: bool,
    },
    /// Invert an analytically known transform pair and compare.
    #[command(allow_negative_numbers = true)]
    InvertTest {
        /// Which pair: exp (1/(z-a)), ramp (1/z^2), expratio (1/(z(z-b))).
        #[arg(long, default_value = "exp")]
        pair: String,
        /// Pair parameter (a or b; ignored for ramp).
        #[arg(long, default_value_t = 1.0)]
        parameter: f64,
        /// Inversion time t > 0.
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Relative tolerance that decides pass/fail.
        #[arg(long, default_value_t = 1e-7)]
        tolerance: f64,
        #[command(flatten)]
        inversion: InversionArgs,
    },
    /// Run the numerical self-check suites.
    #[command(allow_negative_numbers = true)]
    Selfcheck {
        /// Suite to run: kernel, sqrt-lemma, weber, inversion, moments, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Sample count for the sqrt-lemma sweep (default 100000).
        #[arg(long)]
        samples: Option<usize>,
        /// Tolerance override for the suites.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile, CliError> {
    match path {
        Some(p) => ConfigFile::load(p).map_err(CliError::validation),
        None => Ok(ConfigFile::default()),
    }
}

fn require(name: &str, cli: Option<f64>, cfg: &ConfigFile) -> Result<f64, CliError> {
    match cli {
        Some(v) => Ok(v),
        None => cfg
            .number(name)
            .map_err(CliError::validation)?
            .ok_or_else(|| CliError::validation(format!("missing required value --{name}"))),
    }
}

fn optional(name: &str, cli: Option<f64>, cfg: &ConfigFile, default: f64) -> Result<f64, CliError> {
    match cli {
        Some(v) => Ok(v),
        None => Ok(cfg.number(name).map_err(CliError::validation)?.unwrap_or(default)),
    }
}

fn build_inversion(args: &InversionArgs, cfg: &ConfigFile) -> Result<InversionConfig, CliError> {
    let defaults = InversionConfig::default();
    let terms = match args.terms {
        Some(v) => v,
        None => cfg
            .integer("terms")
            .map_err(CliError::validation)?
            .map(|v| v as usize)
            .unwrap_or(defaults.terms),
    };
    let euler_stages = match args.euler_stages {
        Some(v) => v,
        None => cfg
            .integer("euler-stages")
            .map_err(CliError::validation)?
            .map(|v| v as usize)
            .unwrap_or(defaults.euler_stages),
    };
    let abscissa_margin = optional(
        "abscissa-margin",
        args.abscissa_margin,
        cfg,
        defaults.abscissa_margin,
    )?;
    let target_rel_tol = optional("rel-tol", args.rel_tol, cfg, defaults.target_rel_tol)?;
    let config = InversionConfig {
        abscissa_margin,
        terms,
        euler_stages,
        target_rel_tol,
    };
    config.validate().map_err(CliError::from_core)?;
    Ok(config)
}

fn build_mc(args: &McArgs, cfg: &ConfigFile) -> Result<McConfig, CliError> {
    let defaults = McConfig::default();
    Ok(McConfig {
        paths: match args.paths {
            Some(v) => v,
            None => cfg
                .integer("paths")
                .map_err(CliError::validation)?
                .map(|v| v as usize)
                .unwrap_or(defaults.paths),
        },
        steps_per_unit_time: match args.steps_per_unit {
            Some(v) => v,
            None => cfg
                .integer("steps-per-unit")
                .map_err(CliError::validation)?
                .map(|v| v as usize)
                .unwrap_or(defaults.steps_per_unit_time),
        },
        seed: match args.seed {
            Some(v) => v,
            None => cfg
                .integer("seed")
                .map_err(CliError::validation)?
                .unwrap_or(defaults.seed),
        },
        antithetic: match args.antithetic {
            Some(v) => v,
            None => cfg
                .boolean("antithetic")
                .map_err(CliError::validation)?
                .unwrap_or(defaults.antithetic),
        },
    })
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(&cli.config)?;
    match cli.command {
        Command::Price {
            rate,
            dividend_yield,
            sigma,
            spot,
            strike,
            maturity,
            write_time,
            valuation_time,
            running_integral,
            inversion,
        } => {
            let write_time = optional("write-time", write_time, &cfg, 0.0)?;
            let market = MarketInputs {
                rate: require("rate", rate, &cfg)?,
                dividend_yield: optional("div", dividend_yield, &cfg, 0.0)?,
                sigma: require("sigma", sigma, &cfg)?,
                spot: require("spot", spot, &cfg)?,
                strike: require("strike", strike, &cfg)?,
                write_time,
                valuation_time: optional("valuation-time", valuation_time, &cfg, write_time)?,
                maturity: require("maturity", maturity, &cfg)?,
                running_integral: optional("running-integral", running_integral, &cfg, 0.0)?,
            };
            let inversion = build_inversion(&inversion, &cfg)?;
            commands::run_price(market, inversion, cli.format, &cli.output)
        }
        Command::Benchmark {
            case,
            with_mc,
            mc,
            inversion,
        } => {
            let case = match case {
                Some(c) => Some(c),
                None => cfg
                    .integer("case")
                    .map_err(CliError::validation)?
                    .map(|v| v as usize),
            };
            let with_mc = with_mc
                || cfg
                    .boolean("with-mc")
                    .map_err(CliError::validation)?
                    .unwrap_or(false);
            let mc = build_mc(&mc, &cfg)?;
            let inversion = build_inversion(&inversion, &cfg)?;
            commands::run_benchmark(case, with_mc, mc, inversion, cli.format, &cli.output)
        }
        Command::Transform {
            a,
            nu,
            nu_im,
            z_re,
            z_im,
            with_quadrature,
        } => commands::run_transform(
            a,
            Complex64::new(nu, nu_im),
            Complex64::new(z_re, z_im),
            with_quadrature,
            cli.format,
            &cli.output,
        ),
        Command::InvertTest {
            pair,
            parameter,
            t,
            tolerance,
            inversion,
        } => {
            let inversion = build_inversion(&inversion, &cfg)?;
            commands::run_invert_test(
                &pair,
                parameter,
                t,
                tolerance,
                inversion,
                cli.format,
                &cli.output,
            )
        }
        Command::Selfcheck {
            suite,
            samples,
            tolerance,
        } => {
            let opts = selfcheck::SelfcheckOptions {
                samples: match samples {
                    Some(v) => v,
                    None => cfg
                        .integer("samples")
                        .map_err(CliError::validation)?
                        .map(|v| v as usize)
                        .unwrap_or(100_000),
                },
                tolerance: match tolerance {
                    Some(v) => Some(v),
                    None => cfg.number("tolerance").map_err(CliError::validation)?,
                },
            };
            let reports = selfcheck::run_suites(&suite, &opts).map_err(CliError::validation)?;
            let all_passed = reports.iter().all(|r| r.passed());
            let text = match cli.format {
                OutputFormat::Json => {
                    #[derive(serde::Serialize)]
                    struct Summary<'a> {
                        passed: bool,
                        suites: &'a [selfcheck::SuiteReport],
                    }
                    let mut s = serde_json::to_string_pretty(&Summary {
                        passed: all_passed,
                        suites: &reports,
                    })
                    .expect("serializable");
                    s.push('\n');
                    s
                }
                _ => {
                    let mut s = String::new();
                    for r in &reports {
                        s.push_str(&format!(
                            "{:<11} {}  checks={} max_rel_err={:.3e}\n",
                            r.name,
                            if r.passed() { "PASS" } else { "FAIL" },
                            r.checks,
                            r.max_rel_err,
                        ));
                        for f in &r.failures {
                            s.push_str(&format!("    {f}\n"));
                        }
                    }
                    s.push_str(if all_passed { "selfcheck: PASS\n" } else { "selfcheck: FAIL\n" });
                    s
                }
            };
            emit(&cli.output, &text).map_err(CliError::io)?;
            if all_passed {
                Ok(())
            } else {
                Err(CliError { code: 1, message: "selfcheck failed".into() })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("asianpx: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
