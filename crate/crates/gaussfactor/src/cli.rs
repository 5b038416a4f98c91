//! Command-line surface.
//!
//! Exit codes: 0 success, 2 validation error, 3 refused scan, 4 failed
//! verification suite. `GAUSSFACTOR_THREADS` caps scan parallelism.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::PossibleValue;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gauss::{DampingRate, TargetNumber, TrialFactor, Truncation};
use crate::output;
use crate::scan::{classify, contrast_curve, scan, ScanConfig, ScanVariant};
use crate::spin::{damped_trace, EchoTrace, Polarization, PulseSchedule, DEFAULT_T2, DEFAULT_TAU};
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "gaussfactor", version, about = "Factor integers with truncated Gauss sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    A,
    C,
    Damped,
}

impl ValueEnum for VariantArg {
    fn value_variants<'a>() -> &'a [Self] {
        &[VariantArg::A, VariantArg::C, VariantArg::Damped]
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        Some(match self {
            VariantArg::A => PossibleValue::new("A").alias("a"),
            VariantArg::C => PossibleValue::new("C").alias("c"),
            VariantArg::Damped => PossibleValue::new("damped"),
        })
    }
}

impl From<VariantArg> for ScanVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::A => ScanVariant::AMagnitude,
            VariantArg::C => ScanVariant::CReal,
            VariantArg::Damped => ScanVariant::Damped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl ValueEnum for Format {
    fn value_variants<'a>() -> &'a [Self] {
        &[Format::Csv, Format::Json]
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        Some(match self {
            Format::Csv => PossibleValue::new("csv"),
            Format::Json => PossibleValue::new("json"),
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full interference-pattern scan over l = 1..=n0.
    Factor {
        /// Number to factor, as a decimal string of any length.
        #[arg(long)]
        n: String,
        /// Truncation order M; the sum carries M+1 terms.
        #[arg(long)]
        m: u32,
        /// Which sum to record per trial factor.
        #[arg(long, value_enum, default_value = "A")]
        variant: VariantArg,
        /// Per-cycle damping exponent; overrides the tau/T2-derived value.
        #[arg(long)]
        gamma: Option<f64>,
        /// Half cycle time in seconds.
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
        /// Transverse relaxation time in seconds.
        #[arg(long, default_value_t = DEFAULT_T2)]
        t2: f64,
        /// Detection threshold used with --report.
        #[arg(long, default_value_t = 0.9)]
        threshold: f64,
        /// Run full scans past the n0 refusal limit.
        #[arg(long)]
        force: bool,
        /// Emit a classification report instead of the pattern.
        #[arg(long)]
        report: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the echo train for one trial factor.
    Simulate {
        #[arg(long)]
        n: String,
        /// Trial factor l.
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        m: u32,
        /// Rotating-frame detuning in rad/s.
        #[arg(long, default_value_t = 0.0)]
        detuning: f64,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
        #[arg(long, default_value_t = DEFAULT_T2)]
        t2: f64,
        /// Add a damped echo column; implied by --gamma.
        #[arg(long)]
        damped: bool,
        /// Per-cycle damping exponent; overrides the tau/T2-derived value.
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pattern visibility as a function of the truncation order.
    Contrast {
        #[arg(long)]
        n: String,
        /// Truncation orders to scan, e.g. --m-list 2,4,10.
        #[arg(long = "m-list", value_delimiter = ',', required = true)]
        m_list: Vec<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Windowed scan around a candidate factor of a large target.
    Neighborhood {
        #[arg(long)]
        n: String,
        /// Window center.
        #[arg(long)]
        center: u64,
        /// Window half width; the scan covers center +/- halfwidth.
        #[arg(long)]
        halfwidth: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "A")]
        variant: VariantArg,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a cross-check suite and emit a JSON report.
    Verify {
        /// One of: equivalence, refocusing, telescoping, damping.
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse-and-run with output directed at `sink` (stdout in `main`).
pub fn run<W: Write + Send>(cli: Cli, sink: &mut W) -> Result<(), Error> {
    match thread_pool()? {
        Some(pool) => pool.install(|| dispatch(cli.command, sink)),
        None => dispatch(cli.command, sink),
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, Error> {
    match std::env::var("GAUSSFACTOR_THREADS") {
        Ok(raw) => {
            let workers: usize = raw
                .parse()
                .ok()
                .filter(|&w| w >= 1)
                .ok_or_else(|| Error::InvalidThreadCount(raw.clone()))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            Ok(Some(pool))
        }
        Err(_) => Ok(None),
    }
}

fn dispatch<W: Write>(command: Command, sink: &mut W) -> Result<(), Error> {
    match command {
        Command::Factor {
            n,
            m,
            variant,
            gamma,
            tau,
            t2,
            threshold,
            force,
            report,
            format,
            out,
        } => {
            let target = TargetNumber::from_decimal(&n)?;
            let rate = effective_gamma(gamma, tau, t2)?;
            let config = ScanConfig::new(target, Truncation::new(m), variant.into())
                .with_gamma(rate)
                .with_threshold(threshold)?
                .with_force(force);
            let pattern = scan(&config)?;
            let text = if report {
                let rep = classify(&pattern, threshold)?;
                output::report_json(&rep, &n, m, threshold)
            } else {
                match format {
                    Format::Csv => output::pattern_csv(&pattern),
                    Format::Json => output::pattern_json(&pattern),
                }
            };
            emit(sink, out.as_deref(), &text)
        }
        Command::Simulate {
            n,
            ell,
            m,
            detuning,
            tau,
            t2,
            damped,
            gamma,
            format,
            out,
        } => {
            let target = TargetNumber::from_decimal(&n)?;
            let tf = TrialFactor::new(ell)?;
            let schedule = PulseSchedule::for_gauss_sum(&target, tf, Truncation::new(m))
                .with_timing(tau, Some(t2))?
                .with_detuning(detuning);
            let trace = EchoTrace::simulate(schedule, Polarization::default());
            let damped_view = if damped || gamma.is_some() {
                let rate = effective_gamma(gamma, tau, t2)?;
                Some(damped_trace(&trace, rate))
            } else {
                None
            };
            let text = match format {
                Format::Csv => output::trace_csv(&trace, damped_view.as_ref()),
                Format::Json => output::trace_json(&trace, damped_view.as_ref()),
            };
            emit(sink, out.as_deref(), &text)
        }
        Command::Contrast { n, m_list, format, out } => {
            let target = TargetNumber::from_decimal(&n)?;
            let m_values: Vec<Truncation> = m_list.into_iter().map(Truncation::new).collect();
            let curve = contrast_curve(&target, &m_values)?;
            let text = match format {
                Format::Csv => output::contrast_csv(&curve),
                Format::Json => output::contrast_json(&curve),
            };
            emit(sink, out.as_deref(), &text)
        }
        Command::Neighborhood { n, center, halfwidth, m, variant, gamma, format, out } => {
            let target = TargetNumber::from_decimal(&n)?;
            let rate = effective_gamma(gamma, DEFAULT_TAU, DEFAULT_T2)?;
            let config = ScanConfig::new(target, Truncation::new(m), variant.into())
                .with_gamma(rate)
                .with_window(center, halfwidth)?;
            let pattern = scan(&config)?;
            let text = match format {
                Format::Csv => output::pattern_csv(&pattern),
                Format::Json => output::pattern_json(&pattern),
            };
            emit(sink, out.as_deref(), &text)
        }
        Command::Verify { suite, out } => {
            let suite: Suite = suite.parse()?;
            let report = crate::verify::run_suite(suite);
            emit(sink, out.as_deref(), &report.to_json())?;
            if report.passed {
                Ok(())
            } else {
                Err(Error::VerificationFailed(report.suite.to_string()))
            }
        }
    }
}

/// `--gamma` wins; otherwise the rate is derived from the timing flags.
fn effective_gamma(gamma: Option<f64>, tau: f64, t2: f64) -> Result<DampingRate, Error> {
    match gamma {
        Some(g) => DampingRate::new(g),
        None => DampingRate::from_timing(tau, t2),
    }
}

fn emit<W: Write>(sink: &mut W, out: Option<&std::path::Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut file = File::create(path)?;
            file.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            sink.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> Result<String, Error> {
        let cli = Cli::try_parse_from(args).expect("arguments parse");
        let mut buf = Vec::new();
        run(cli, &mut buf).map(|()| String::from_utf8(buf).unwrap())
    }

    #[test]
    fn factor_command_emits_flagship_pattern() {
        let out = run_to_string(&[
            "gaussfactor", "factor", "--n", "157573", "--m", "10", "--variant", "A",
        ])
        .unwrap();
        assert_eq!(out.lines().count(), 398);
        assert_eq!(out.lines().next().unwrap(), "ell,re,im,magnitude,is_factor");
        assert!(out
            .lines()
            .any(|l| l == "17,1.000000000000,0.000000000000,1.000000000000,true"));
    }

    #[test]
    fn simulate_command_emits_trace() {
        let out = run_to_string(&[
            "gaussfactor", "simulate", "--n", "157573", "--ell", "18", "--m", "10",
        ])
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 12);
        assert_eq!(lines[0], "m,s_m");
        assert_eq!(lines[4], "3,-1.000000000000");
    }

    #[test]
    fn simulate_with_gamma_adds_damped_column() {
        let out = run_to_string(&[
            "gaussfactor", "simulate", "--n", "157573", "--ell", "17", "--m", "10",
            "--gamma", "0.2",
        ])
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "m,s_m,s_m_damped");
        let last: Vec<&str> = lines[11].split(',').collect();
        let damped: f64 = last[2].parse().unwrap();
        assert!((damped - (-2.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn neighborhood_command_hits_the_planted_factor() {
        let out = run_to_string(&[
            "gaussfactor", "neighborhood", "--n", "1062885837863046188098307",
            "--center", "790645490053", "--halfwidth", "10", "--m", "200",
        ])
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 22);
        let center: Vec<&str> = lines[11].split(',').collect();
        assert_eq!(center[0], "790645490053");
        assert_eq!(center[3], "1.000000000000");
        assert_eq!(center[4], "true");
    }

    #[test]
    fn contrast_command_lists_requested_orders() {
        let out = run_to_string(&[
            "gaussfactor", "contrast", "--n", "157573", "--m-list", "10,2",
        ])
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "m,v");
        assert!(lines[1].starts_with("2,"));
        assert!(lines[2].starts_with("10,"));
    }

    #[test]
    fn verify_commands_pass_and_unknown_suite_errors() {
        let out = run_to_string(&["gaussfactor", "verify", "telescoping"]).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["passed"], serde_json::Value::Bool(true));

        let err = run_to_string(&["gaussfactor", "verify", "bogus"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn validation_errors_map_to_exit_codes() {
        let err = run_to_string(&["gaussfactor", "factor", "--n", "abc", "--m", "10"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);

        let err = run_to_string(&["gaussfactor", "factor", "--n", "1", "--m", "10"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);

        // n0 for a 30-digit number is far beyond the full-scan limit
        let err = run_to_string(&[
            "gaussfactor", "factor", "--n", "100000000000000000000000000003", "--m", "10",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);

        let err = run_to_string(&[
            "gaussfactor", "simulate", "--n", "157573", "--ell", "0", "--m", "3",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let args = ["gaussfactor", "factor", "--n", "157573", "--m", "10"];
        assert_eq!(run_to_string(&args).unwrap(), run_to_string(&args).unwrap());
    }
}
