//! Exact-arithmetic evaluation of truncated Gauss sums.
//!
//! The factorization signal lives entirely in the residue `m^2 N mod l`.
//! For a 24-digit target and a few hundred terms the raw exponent
//! `m^2 N / l` is far beyond what an `f64` can hold, so every reduction
//! here happens in integer arithmetic; a phase only becomes a float as
//! `2 pi r / d` with `0 <= r < d` already reduced. That bounds the phase
//! error by a couple of ulps of `2 pi` no matter how large `N` is.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::scan::InterferencePattern;

/// The number being factored. Arbitrary precision, always >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetNumber(BigUint);

impl TargetNumber {
    pub fn new(value: BigUint) -> Result<Self, Error> {
        if value < BigUint::from(2u32) {
            return Err(Error::InvalidTargetNumber(value.to_string()));
        }
        Ok(TargetNumber(value))
    }

    /// Parse a decimal string of arbitrary length.
    pub fn from_decimal(s: &str) -> Result<Self, Error> {
        let value = BigUint::from_str(s.trim())
            .map_err(|_| Error::InvalidTargetNumber(s.to_string()))?;
        TargetNumber::new(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Exact residue of the target modulo a machine-sized integer.
    pub fn residue(&self, modulus: u64) -> u64 {
        debug_assert!(modulus >= 1);
        (&self.0 % modulus).to_u64().expect("residue below a u64 modulus")
    }

    /// Closest integer to the square root (ties round up), the natural
    /// upper bound for a trial-factor scan.
    pub fn closest_sqrt(&self) -> BigUint {
        let s = self.0.sqrt();
        // round up exactly when N - s^2 > s, i.e. sqrt(N) > s + 1/2
        if &self.0 - &s * &s > s {
            s + 1u32
        } else {
            s
        }
    }

    /// `closest_sqrt` narrowed to a machine word, erring when the target
    /// is too large to scan at all.
    pub fn closest_sqrt_u64(&self) -> Result<u64, Error> {
        let n0 = self.closest_sqrt();
        n0.to_u64().ok_or(Error::ScanBoundOverflow { n0: n0.to_string() })
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for TargetNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for TargetNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TargetNumber::from_decimal(s)
    }
}

impl From<u64> for TargetNumber {
    /// Convenience for literals; panics below 2.
    fn from(v: u64) -> Self {
        TargetNumber::new(BigUint::from(v)).expect("target literal >= 2")
    }
}

/// A candidate divisor `l >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrialFactor(u64);

impl TrialFactor {
    pub fn new(ell: u64) -> Result<Self, Error> {
        if ell == 0 {
            return Err(Error::InvalidTrialFactor);
        }
        Ok(TrialFactor(ell))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Truncation order `M`; the sum carries `M + 1` terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Truncation(u32);

impl Truncation {
    pub fn new(m_max: u32) -> Self {
        Truncation(m_max)
    }

    pub fn m_max(self) -> u32 {
        self.0
    }

    pub fn terms(self) -> usize {
        self.0 as usize + 1
    }
}

/// An exactly reduced phase `2 pi r / d` with `0 <= r < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedPhase {
    r: u64,
    d: u64,
}

impl ReducedPhase {
    pub fn new(r: u64, d: u64) -> Self {
        debug_assert!(d >= 1 && r < d, "reduced phase needs 0 <= r < d");
        ReducedPhase { r, d }
    }

    pub fn numerator(self) -> u64 {
        self.r
    }

    pub fn denominator(self) -> u64 {
        self.d
    }

    /// The only place a phase turns into a float.
    pub fn radians(self) -> f64 {
        TAU * (self.r as f64 / self.d as f64)
    }
}

/// Per-cycle exponential decay exponent `gamma = 2 tau / T2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingRate(f64);

impl DampingRate {
    pub const ZERO: DampingRate = DampingRate(0.0);

    pub fn new(gamma: f64) -> Result<Self, Error> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidDamping(gamma));
        }
        Ok(DampingRate(gamma))
    }

    /// Derive the rate from a half cycle time and a transverse
    /// relaxation time, both in seconds.
    pub fn from_timing(tau: f64, t2: f64) -> Result<Self, Error> {
        if !(tau.is_finite() && tau > 0.0 && t2.is_finite() && t2 > 0.0) {
            return Err(Error::InvalidTiming);
        }
        DampingRate::new(2.0 * tau / t2)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Complex value of a normalized truncated sum; `|value| <= 1` up to rounding.
pub type GaussValue = Complex64;

/// `(m^2 N) mod l` with `n_mod = N mod l` already reduced.
///
/// `(m mod l)^2 * (N mod l)` stays below 2^128 for every u64 modulus, so
/// the reduction is exact without touching big integers in the hot loop.
fn residue_mod(m: u64, n_mod: u64, ell: u64) -> u64 {
    if ell == 1 {
        return 0;
    }
    let e = ell as u128;
    let m_sq = {
        let mm = (m % ell) as u128;
        mm * mm % e
    };
    (m_sq * (n_mod as u128) % e) as u64
}

/// Exact reduction of the quadratic phase exponent: returns `(r, l)` with
/// `r = (m^2 N) mod l`, representing the angle `2 pi r / l`.
pub fn reduce_phase(m: u64, n: &TargetNumber, ell: TrialFactor) -> ReducedPhase {
    let e = ell.get();
    ReducedPhase::new(residue_mod(m, n.residue(e), e), e)
}

/// Truncated Gauss sum `1/(M+1) * sum_m exp(-2 pi i m^2 N / l)`.
///
/// Terms are accumulated in ascending `m` with plain summation so that a
/// given input always produces the same bits.
pub fn gauss_sum_a(n: &TargetNumber, ell: TrialFactor, trunc: Truncation) -> GaussValue {
    let e = ell.get();
    let n_mod = n.residue(e);
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..=u64::from(trunc.m_max()) {
        let theta = ReducedPhase::new(residue_mod(m, n_mod, e), e).radians();
        // minus sign in the exponent: exp(-i theta)
        sum += Complex64::new(theta.cos(), -theta.sin());
    }
    sum / trunc.terms() as f64
}

/// Real (cosine) Gauss sum; identical to `gauss_sum_a(..).re` bit for bit.
pub fn gauss_sum_c(n: &TargetNumber, ell: TrialFactor, trunc: Truncation) -> f64 {
    gauss_sum_a(n, ell, trunc).re
}

/// Cosine sum with per-term decay `exp(-m gamma)`.
///
/// With `gamma = 0` this reproduces `gauss_sum_c` to the last bit: the
/// weights are exactly 1.0 and the summation order is the same.
pub fn damped_gauss_sum(
    n: &TargetNumber,
    ell: TrialFactor,
    trunc: Truncation,
    gamma: DampingRate,
) -> f64 {
    let e = ell.get();
    let n_mod = n.residue(e);
    let mut sum = 0.0;
    for m in 0..=u64::from(trunc.m_max()) {
        let theta = ReducedPhase::new(residue_mod(m, n_mod, e), e).radians();
        sum += (-(m as f64) * gamma.get()).exp() * theta.cos();
    }
    sum / trunc.terms() as f64
}

/// Visibility `V = (1 - a) / (1 + a)` of an interference pattern, where
/// `a` averages the magnitudes at all scanned arguments that are *not* in
/// `true_divisors`, divided by the full scan bound `n0` (the divisor slots
/// count toward the denominator even though they are excluded from the
/// sum). Callers normally pass the exact divisor set including 1.
pub fn contrast(
    pattern: &InterferencePattern,
    true_divisors: &BTreeSet<u64>,
) -> Result<f64, Error> {
    let n0 = pattern.config().n.closest_sqrt_u64()?;
    let records = pattern.records();
    let covers = records.len() >= n0 as usize && records.first().map(|r| r.ell) == Some(1);
    if !covers {
        return Err(Error::IncompletePattern { needed: n0, got: records.len() });
    }
    let mut sum = 0.0;
    for rec in &records[..n0 as usize] {
        if !true_divisors.contains(&rec.ell) {
            sum += rec.magnitude;
        }
    }
    let a = sum / n0 as f64;
    Ok((1.0 - a) / (1.0 + a))
}

/// `m (m + 1) / 2` in exact integer arithmetic.
pub fn triangular_sum(m: u64) -> u128 {
    let m = m as u128;
    m * (m + 1) / 2
}

/// `sum_{k=1}^{m} (2k - 1) = m^2`, the identity that telescopes the
/// alternating pulse phases into a quadratic.
pub fn odd_sum(m: u64) -> u128 {
    let m = m as u128;
    m * m
}
