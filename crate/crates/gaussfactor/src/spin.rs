//! Single spin-1/2 realization of the cosine Gauss sum.
//!
//! A spin prepared with transverse polarization is driven by a train of
//! pi-pulses, one per cycle of length `2 tau`, where the k-th pulse is
//! phase shifted by `phi_k` about the rotating-frame x-axis. Because each
//! pi-pulse refocuses the free evolution, the echo height measured after
//! cycle m depends only on the pulse phases, as the alternating sum
//! `s_m = cos(sum_k (-1)^k 2 phi_k)`. Choosing
//!
//! ```text
//! phi_k = (-1)^k (2k - 1) pi N / l   (phi_0 = 0)
//! ```
//!
//! telescopes that alternating sum into the quadratic `2 pi m^2 N / l`,
//! so the averaged echoes reproduce the cosine Gauss sum of [`crate::gauss`].
//!
//! Phases are folded into `[0, 2 pi)` by exact integer reduction before
//! they ever become floats; the folded numerators are kept around so the
//! telescoping can also be checked in pure integer arithmetic.

use num_complex::Complex64;

use crate::error::Error;
use crate::gauss::{DampingRate, ReducedPhase, TargetNumber, TrialFactor, Truncation};
use crate::mat::Mat2;

/// Half cycle time used by default, in seconds.
pub const DEFAULT_TAU: f64 = 50e-6;
/// Default transverse relaxation time, in seconds.
pub const DEFAULT_T2: f64 = 0.2;
/// Default thermal polarization; the echo normalization cancels it anyway.
pub const DEFAULT_EPSILON: f64 = 1e-5;

/// Rotation axis in the rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `exp(-i alpha I_j) = cos(alpha/2) 1 - i sin(alpha/2) sigma_j`.
pub fn rotation(axis: Axis, alpha: f64) -> Mat2 {
    let c = (alpha / 2.0).cos();
    let s = (alpha / 2.0).sin();
    let zero = Complex64::new(0.0, 0.0);
    match axis {
        Axis::X => Mat2::new(
            Complex64::new(c, 0.0),
            Complex64::new(0.0, -s),
            Complex64::new(0.0, -s),
            Complex64::new(c, 0.0),
        ),
        Axis::Y => Mat2::new(
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ),
        Axis::Z => Mat2::new(
            Complex64::new(c, -s),
            zero,
            zero,
            Complex64::new(c, s),
        ),
    }
}

/// Thermal-equilibrium polarization, `0 < epsilon < 0.5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization(f64);

impl Polarization {
    pub fn new(epsilon: f64) -> Result<Self, Error> {
        if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::InvalidPolarization(epsilon));
        }
        Ok(Polarization(epsilon))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Polarization {
    fn default() -> Self {
        Polarization(DEFAULT_EPSILON)
    }
}

/// A 2x2 density matrix; Hermitian with unit trace up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    mat: Mat2,
}

impl DensityMatrix {
    pub fn mat(&self) -> &Mat2 {
        &self.mat
    }

    /// `U rho U^dagger`.
    pub fn conjugated_by(&self, u: &Mat2) -> DensityMatrix {
        DensityMatrix { mat: *u * self.mat * u.adjoint() }
    }

    /// `Tr(I_x rho)`, real for Hermitian input.
    pub fn x_polarization(&self) -> f64 {
        0.5 * (self.mat.b + self.mat.c).re
    }

    /// Entrywise distance from the conjugate transpose.
    pub fn hermiticity_error(&self) -> f64 {
        self.mat.max_abs_diff(&self.mat.adjoint())
    }

    /// Distance of the trace from 1.
    pub fn trace_error(&self) -> f64 {
        (self.mat.trace() - Complex64::new(1.0, 0.0)).norm()
    }
}

/// Boltzmann state `1/2 - epsilon I_z`.
pub fn thermal_state(epsilon: Polarization) -> DensityMatrix {
    let e = epsilon.get();
    DensityMatrix {
        mat: Mat2::diag(
            Complex64::new(0.5 - e / 2.0, 0.0),
            Complex64::new(0.5 + e / 2.0, 0.0),
        ),
    }
}

/// State after the preparation pulse: `1/2 - epsilon I_x`. Identical to
/// conjugating the thermal state by a pi/2 rotation about y.
pub fn prepare_initial(epsilon: Polarization) -> DensityMatrix {
    let e = epsilon.get();
    let half = Complex64::new(0.5, 0.0);
    let off = Complex64::new(-e / 2.0, 0.0);
    DensityMatrix { mat: Mat2::new(half, off, off, half) }
}

/// Pulse phases `phi_k` for `k = 0..=m_max`, exactly folded into
/// `[0, 2 pi)` and represented as `2 pi r / (2 l)`.
///
/// For `k >= 1` the unfolded phase is `(-1)^k (2k - 1) pi N / l`; the fold
/// computes `(2k - 1) N mod 2l` in integer arithmetic and flips the
/// residue for odd `k`. `phi_0 = 0`.
pub fn phase_schedule_exact(
    n: &TargetNumber,
    ell: TrialFactor,
    trunc: Truncation,
) -> Vec<ReducedPhase> {
    let e = ell.get();
    assert!(e <= u64::MAX / 2, "trial factor too large to fold phases");
    let d = 2 * e;
    let n_mod = n.residue(d);
    let mut phases = Vec::with_capacity(trunc.terms());
    phases.push(ReducedPhase::new(0, d));
    for k in 1..=u64::from(trunc.m_max()) {
        let odd = (2 * (k as u128) - 1) % d as u128;
        let s = (odd * n_mod as u128 % d as u128) as u64;
        let folded = if k % 2 == 1 && s != 0 { d - s } else { s };
        phases.push(ReducedPhase::new(folded, d));
    }
    phases
}

/// Float view of [`phase_schedule_exact`], in radians in `[0, 2 pi)`.
pub fn phase_schedule(n: &TargetNumber, ell: TrialFactor, trunc: Truncation) -> Vec<f64> {
    phase_schedule_exact(n, ell, trunc).into_iter().map(ReducedPhase::radians).collect()
}

/// Timing, phases and relaxation of one pulse train.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    /// Half cycle time in seconds; pulse k acts at `(2k + 1) tau`.
    pub tau: f64,
    pub m_max: Truncation,
    /// One phase per pulse, `m_max + 1` entries, radians.
    pub phases: Vec<f64>,
    /// Rotating-frame detuning in rad/s. Zero in production; the pulse
    /// train refocuses it, which the verification suites sweep.
    pub detuning: f64,
    /// Transverse relaxation time in seconds, if damping is modeled.
    pub t2: Option<f64>,
}

impl PulseSchedule {
    pub fn new(
        tau: f64,
        m_max: Truncation,
        phases: Vec<f64>,
        detuning: f64,
        t2: Option<f64>,
    ) -> Result<Self, Error> {
        if !(tau.is_finite() && tau > 0.0) || !detuning.is_finite() {
            return Err(Error::InvalidTiming);
        }
        if let Some(t2) = t2 {
            if !(t2.is_finite() && t2 > 0.0) {
                return Err(Error::InvalidTiming);
            }
        }
        if phases.len() != m_max.terms() {
            return Err(Error::MalformedSchedule {
                m_max: m_max.m_max(),
                need: m_max.terms(),
                got: phases.len(),
            });
        }
        Ok(PulseSchedule { tau, m_max, phases, detuning, t2 })
    }

    /// Schedule whose echoes realize the cosine Gauss sum for `(N, l)`,
    /// with default timing and no detuning.
    pub fn for_gauss_sum(n: &TargetNumber, ell: TrialFactor, trunc: Truncation) -> Self {
        PulseSchedule {
            tau: DEFAULT_TAU,
            m_max: trunc,
            phases: phase_schedule(n, ell, trunc),
            detuning: 0.0,
            t2: None,
        }
    }

    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn with_timing(mut self, tau: f64, t2: Option<f64>) -> Result<Self, Error> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidTiming);
        }
        if let Some(t2) = t2 {
            if !(t2.is_finite() && t2 > 0.0) {
                return Err(Error::InvalidTiming);
            }
        }
        self.tau = tau;
        self.t2 = t2;
        Ok(self)
    }

    /// Per-cycle decay exponent `2 tau / T2`, zero when no `T2` is set.
    pub fn gamma(&self) -> DampingRate {
        match self.t2 {
            Some(t2) => DampingRate::from_timing(self.tau, t2).expect("validated timing"),
            None => DampingRate::ZERO,
        }
    }
}

/// One full cycle: free evolution, phase-shifted pi-pulse, free evolution.
///
/// `U_z(dwt) U_z(phi) U_x(pi) U_z(phi)^dagger U_z(dwt)` with
/// `dwt = detuning * tau`. The detuning halves cancel against the central
/// pi-pulse, which is the refocusing at the heart of the sequence.
pub fn cycle_unitary(phi: f64, delta_omega_tau: f64) -> Mat2 {
    let free = rotation(Axis::Z, delta_omega_tau);
    let shift = rotation(Axis::Z, phi);
    let flip = rotation(Axis::X, std::f64::consts::PI);
    free * shift * flip * shift.adjoint() * free
}

/// Closed form of the same cycle: `(-i) [[0, e^{-i phi}], [e^{i phi}, 0]]`,
/// independent of the detuning. Used as the analytic cross-check.
pub fn cycle_unitary_analytic(phi: f64) -> Mat2 {
    let minus_i = Complex64::new(0.0, -1.0);
    let zero = Complex64::new(0.0, 0.0);
    Mat2::new(
        zero,
        minus_i * Complex64::new(phi.cos(), -phi.sin()),
        minus_i * Complex64::new(phi.cos(), phi.sin()),
        zero,
    )
}

/// States `rho_m` after each cycle, `m = 0..=M`. Cycle k = 0 acts first,
/// so each new cycle multiplies the accumulated propagator from the left.
pub fn propagate(rho_in: &DensityMatrix, schedule: &PulseSchedule) -> Vec<DensityMatrix> {
    let dwt = schedule.detuning * schedule.tau;
    let mut acc = Mat2::identity();
    let mut states = Vec::with_capacity(schedule.phases.len());
    for &phi in &schedule.phases {
        acc = cycle_unitary(phi, dwt) * acc;
        let rho = rho_in.conjugated_by(&acc);
        debug_assert!(rho.hermiticity_error() < 1e-12);
        debug_assert!(rho.trace_error() < 1e-12);
        states.push(rho);
    }
    states
}

/// Normalized echo height `Tr(I_x rho_m) / Tr(I_x rho_in)`; independent of
/// the polarization by construction.
pub fn echo_signal(rho_m: &DensityMatrix, rho_in: &DensityMatrix) -> Result<f64, Error> {
    let denom = rho_in.x_polarization();
    if denom == 0.0 {
        return Err(Error::NoTransversePolarization);
    }
    Ok(rho_m.x_polarization() / denom)
}

/// Echo heights `s_m` of one simulated pulse train.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoTrace {
    pub values: Vec<f64>,
    pub schedule: PulseSchedule,
}

impl EchoTrace {
    /// Propagate the prepared state through the schedule and read out
    /// every echo.
    pub fn simulate(schedule: PulseSchedule, epsilon: Polarization) -> EchoTrace {
        let rho_in = prepare_initial(epsilon);
        let values: Vec<f64> = propagate(&rho_in, &schedule)
            .iter()
            .map(|rho| {
                echo_signal(rho, &rho_in).expect("prepared state has transverse polarization")
            })
            .collect();
        debug_assert!(values.iter().all(|s| s.abs() <= 1.0 + 1e-12));
        EchoTrace { values, schedule }
    }
}

/// `sum_m s_m`; dividing by `M + 1` reproduces the cosine Gauss sum when
/// the schedule came from [`phase_schedule`].
pub fn signal_sum(trace: &EchoTrace) -> f64 {
    trace.values.iter().sum()
}

/// Running alternating phase sum `sum_{k=0}^{m} (-1)^k 2 phi_k`.
pub fn alternating_phase_sum(phases: &[f64], m: usize) -> Result<f64, Error> {
    if m >= phases.len() {
        return Err(Error::PhaseIndexOutOfRange { index: m, len: phases.len() });
    }
    let mut sum = 0.0;
    for (k, &phi) in phases.iter().take(m + 1).enumerate() {
        let signed = if k % 2 == 0 { 2.0 * phi } else { -2.0 * phi };
        sum += signed;
    }
    Ok(sum)
}

/// The same alternating sum in exact integer arithmetic, reduced modulo
/// one turn. All phases must share a denominator (one schedule).
pub fn alternating_phase_sum_exact(
    phases: &[ReducedPhase],
    m: usize,
) -> Result<ReducedPhase, Error> {
    if m >= phases.len() {
        return Err(Error::PhaseIndexOutOfRange { index: m, len: phases.len() });
    }
    let d = phases[0].denominator();
    let mut sum: i128 = 0;
    for (k, phase) in phases.iter().take(m + 1).enumerate() {
        if phase.denominator() != d {
            return Err(Error::MixedPhaseDenominators(d, phase.denominator()));
        }
        let term = 2 * phase.numerator() as i128;
        sum += if k % 2 == 0 { term } else { -term };
    }
    Ok(ReducedPhase::new(sum.rem_euclid(d as i128) as u64, d))
}

/// Apply per-cycle exponential decay `s_m -> s_m exp(-m gamma)`.
pub fn damped_trace(trace: &EchoTrace, gamma: DampingRate) -> EchoTrace {
    let values = trace
        .values
        .iter()
        .enumerate()
        .map(|(m, &s)| s * (-(m as f64) * gamma.get()).exp())
        .collect();
    EchoTrace { values, schedule: trace.schedule.clone() }
}
