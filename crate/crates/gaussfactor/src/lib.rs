//! Factoring integers with truncated Gauss sums.
//!
//! The library evaluates the normalized quadratic exponential sum
//!
//! ```text
//! A(l) = 1/(M+1) * sum_{m=0}^{M} exp(-2 pi i m^2 N / l)
//! ```
//!
//! over trial factors `l`. Whenever `l` divides `N` every phase is a
//! multiple of 2 pi and the terms add up to exactly 1; for non-factors the
//! quadratic phases interfere destructively and the sum stays small, so a
//! handful of terms separates factors from non-factors.
//!
//! All phase arithmetic is exact: the residue `m^2 N mod l` is reduced in
//! integer arithmetic before anything is converted to a float, which keeps
//! the scheme honest for targets far beyond the 53-bit mantissa of an `f64`.
//!
//! The same sum is realized dynamically by [`spin`], which propagates a
//! single spin-1/2 density matrix through a phase-modulated multi-echo
//! pulse train and recovers the cosine sum from the echo heights.
//!
//! - [`gauss`] - exact phase reduction and the Gauss sums themselves
//! - [`spin`] - two-level density-matrix simulation of the pulse sequence
//! - [`mod@scan`] - trial-factor sweeps, classification, contrast curves
//! - [`cli`] / [`output`] - command-line front end and CSV/JSON emission
//! - [`verify`] - end-to-end cross-check suites exposed on the CLI

pub mod cli;
mod error;
pub mod gauss;
pub mod mat;
pub mod output;
pub mod scan;
pub mod spin;
pub mod verify;

pub use error::Error;
pub use gauss::{
    contrast, damped_gauss_sum, gauss_sum_a, gauss_sum_c, odd_sum, reduce_phase, triangular_sum,
    DampingRate, GaussValue, ReducedPhase, TargetNumber, TrialFactor, Truncation,
};
pub use scan::{
    classify, contrast_curve, resource_estimate, scan, trial_division_oracle, FactorReport,
    InterferencePattern, PatternRecord, ResourceEstimate, ScanConfig, ScanRange, ScanVariant,
};
pub use spin::{
    alternating_phase_sum, alternating_phase_sum_exact, cycle_unitary, cycle_unitary_analytic,
    damped_trace, echo_signal, phase_schedule, phase_schedule_exact, prepare_initial, propagate,
    rotation, signal_sum, thermal_state, Axis, DensityMatrix, EchoTrace, Polarization,
    PulseSchedule,
};
