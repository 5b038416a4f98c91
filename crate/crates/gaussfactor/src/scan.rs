//! Trial-factor sweeps and their classification.
//!
//! A scan evaluates the configured sum at every integer in the range and
//! tags each argument with ground truth from exact division. Evaluation
//! is embarrassingly parallel over the trial factors; records are merged
//! back in argument order, so the output is identical no matter how many
//! worker threads run it.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::Error;
use crate::gauss::{
    contrast, damped_gauss_sum, gauss_sum_a, gauss_sum_c, DampingRate, TargetNumber, TrialFactor,
    Truncation,
};

/// Full scans beyond this bound are refused unless forced; the sweep cost
/// grows with sqrt(N), which is the whole bottleneck of the scheme.
pub const FULL_SCAN_LIMIT: u64 = 100_000_000;

/// Which value a scan records per trial factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanVariant {
    /// Complex sum; magnitude column carries `|A|`.
    AMagnitude,
    /// Real cosine sum.
    CReal,
    /// Cosine sum with per-cycle damping.
    Damped,
}

/// Scan interval: everything up to the square-root bound, or a window
/// around a candidate factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanRange {
    Full,
    Window { center: u64, halfwidth: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub n: TargetNumber,
    pub m_max: Truncation,
    pub variant: ScanVariant,
    /// Used only by the damped variant.
    pub gamma: DampingRate,
    pub range: ScanRange,
    /// Detection threshold for classification, in (0, 1).
    pub threshold: f64,
    /// Run full scans past [`FULL_SCAN_LIMIT`] anyway.
    pub force: bool,
    /// Refusal bound for full scans; configurable for testing.
    pub full_scan_limit: u64,
}

impl ScanConfig {
    pub fn new(n: TargetNumber, m_max: Truncation, variant: ScanVariant) -> Self {
        ScanConfig {
            n,
            m_max,
            variant,
            gamma: DampingRate::ZERO,
            range: ScanRange::Full,
            threshold: 0.9,
            force: false,
            full_scan_limit: FULL_SCAN_LIMIT,
        }
    }

    pub fn with_gamma(mut self, gamma: DampingRate) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_window(mut self, center: u64, halfwidth: u64) -> Result<Self, Error> {
        self.range = ScanRange::Window { center, halfwidth };
        self.resolve_range()?;
        Ok(self)
    }

    pub fn with_threshold(mut self, threshold: f64) -> Result<Self, Error> {
        if !(threshold.is_finite() && threshold > 0.0 && threshold < 1.0) {
            return Err(Error::InvalidThreshold(threshold));
        }
        self.threshold = threshold;
        Ok(self)
    }

    pub fn with_force(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    /// Inclusive scan bounds, after all range validation.
    pub fn resolve_range(&self) -> Result<(u64, u64), Error> {
        match self.range {
            ScanRange::Full => {
                let n0 = self.n.closest_sqrt_u64()?;
                if n0 > self.full_scan_limit && !self.force {
                    return Err(Error::RefusedScan { n0, limit: self.full_scan_limit });
                }
                Ok((1, n0))
            }
            ScanRange::Window { center, halfwidth } => {
                let lo = center.checked_sub(halfwidth).filter(|&lo| lo >= 1);
                let hi = center
                    .checked_add(halfwidth)
                    .filter(|&hi| BigUint::from(hi) < *self.n.value());
                match (lo, hi) {
                    (Some(lo), Some(hi)) => Ok((lo, hi)),
                    _ => Err(Error::WindowOutOfRange {
                        lo: center
                            .checked_sub(halfwidth)
                            .map_or_else(|| "<1".into(), |v| v.to_string()),
                        hi: center
                            .checked_add(halfwidth)
                            .map_or_else(|| ">N-1".into(), |v| v.to_string()),
                    }),
                }
            }
        }
    }
}

/// One scanned argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternRecord {
    pub ell: u64,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    /// Ground truth from exact division, not from the magnitude.
    pub is_factor: bool,
}

/// Ordered scan output; records ascend in `ell` without gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferencePattern {
    records: Vec<PatternRecord>,
    config: ScanConfig,
}

impl InterferencePattern {
    pub fn records(&self) -> &[PatternRecord] {
        &self.records
    }

    #[cfg(test)]
    pub(crate) fn records_mut(&mut self) -> &mut Vec<PatternRecord> {
        &mut self.records
    }

    pub fn config(&self) -> &ScanConfig {
        &self.config
    }
}

/// Sweep the configured range. Deterministic for a given config,
/// independent of the rayon worker count.
pub fn scan(config: &ScanConfig) -> Result<InterferencePattern, Error> {
    let (lo, hi) = config.resolve_range()?;
    let records: Vec<PatternRecord> = (lo..=hi)
        .into_par_iter()
        .map(|ell| {
            let tf = TrialFactor::new(ell).expect("ranges start at 1");
            let is_factor = config.n.residue(ell) == 0;
            let (re, im, magnitude) = match config.variant {
                ScanVariant::AMagnitude => {
                    let a = gauss_sum_a(&config.n, tf, config.m_max);
                    (a.re, a.im, a.norm())
                }
                ScanVariant::CReal => {
                    let c = gauss_sum_c(&config.n, tf, config.m_max);
                    (c, 0.0, c.abs())
                }
                ScanVariant::Damped => {
                    let v = damped_gauss_sum(&config.n, tf, config.m_max, config.gamma);
                    (v, 0.0, v.abs())
                }
            };
            PatternRecord { ell, re, im, magnitude, is_factor }
        })
        .collect();
    Ok(InterferencePattern { records, config: config.clone() })
}

/// Ground truth: every divisor `d` of `n` with `2 <= d <= bound`, by exact
/// division.
pub fn trial_division_oracle(n: &TargetNumber, bound: u64) -> BTreeSet<u64> {
    let mut divisors = BTreeSet::new();
    if let Some(small) = n.value().to_u64() {
        for d in 2..=bound.min(small) {
            if small % d == 0 {
                divisors.insert(d);
            }
        }
    } else {
        for d in 2..=bound {
            if n.residue(d) == 0 {
                divisors.insert(d);
            }
        }
    }
    divisors
}

/// Scan summary: detection outcome against ground truth plus pattern
/// figures of merit.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub detected: BTreeSet<u64>,
    pub missed: BTreeSet<u64>,
    pub false_positives: BTreeSet<u64>,
    /// Visibility of the pattern; only defined for full scans.
    pub contrast_v: Option<f64>,
    pub scan_size: u64,
    /// sqrt(N), the number of points a full scan needs.
    pub resource_estimate: f64,
}

/// Threshold the pattern magnitudes and compare against exact division.
///
/// `l = 1` is never counted as detected. On window scans the ground truth
/// covers the window only (full trial division would cost as much as the
/// scan the window avoided) and no contrast is reported.
pub fn classify(pattern: &InterferencePattern, threshold: f64) -> Result<FactorReport, Error> {
    if !(threshold.is_finite() && threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let n = &pattern.config().n;
    let detected: BTreeSet<u64> = pattern
        .records()
        .iter()
        .filter(|r| r.ell > 1 && r.magnitude >= threshold)
        .map(|r| r.ell)
        .collect();
    let (oracle, contrast_v) = match pattern.config().range {
        ScanRange::Full => {
            let oracle = trial_division_oracle(n, n.closest_sqrt_u64()?);
            let mut excluded = oracle.clone();
            excluded.insert(1);
            let v = contrast(pattern, &excluded)?;
            (oracle, Some(v))
        }
        ScanRange::Window { .. } => {
            let oracle = pattern
                .records()
                .iter()
                .map(|r| r.ell)
                .filter(|&ell| ell >= 2 && n.residue(ell) == 0)
                .collect();
            (oracle, None)
        }
    };
    Ok(FactorReport {
        missed: oracle.difference(&detected).copied().collect(),
        false_positives: detected.difference(&oracle).copied().collect(),
        detected,
        contrast_v,
        scan_size: pattern.records().len() as u64,
        resource_estimate: resource_estimate(n).sqrt_n,
    })
}

/// Visibility as a function of the truncation order: one full scan per
/// requested `M`, sorted by `M`.
pub fn contrast_curve(
    n: &TargetNumber,
    m_values: &[Truncation],
) -> Result<Vec<(u32, f64)>, Error> {
    let n0 = n.closest_sqrt_u64()?;
    let mut excluded = trial_division_oracle(n, n0);
    excluded.insert(1);
    let mut curve = Vec::with_capacity(m_values.len());
    for &m in m_values {
        if m.m_max() < 1 {
            return Err(Error::InvalidContrastTruncation(m.m_max()));
        }
        let config = ScanConfig::new(n.clone(), m, ScanVariant::AMagnitude);
        let pattern = scan(&config)?;
        curve.push((m.m_max(), contrast(&pattern, &excluded)?));
    }
    curve.sort_by_key(|&(m, _)| m);
    Ok(curve)
}

/// Cost figures of a full sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceEstimate {
    /// sqrt(N): how many arguments a full scan visits.
    pub sqrt_n: f64,
    /// ln(N), so that sqrt(N) = exp(log_n / 2).
    pub log_n: f64,
}

pub fn resource_estimate(n: &TargetNumber) -> ResourceEstimate {
    let x = n.to_f64();
    ResourceEstimate { sqrt_n: x.sqrt(), log_n: x.ln() }
}
