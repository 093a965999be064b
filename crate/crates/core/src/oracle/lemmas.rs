use serde::Serialize;

use super::{
    enumerate_configurations, expected_convergence_exact, HittingTimeTable, MAX_EXACT_LEN,
};
use crate::dyck::{phi_lower_bound, phi_upper_bound, variant_bound, variant_phi, VariantParams};
use crate::error::{Error, Result};
use crate::flip::{allowed_flips, apply_flip};
use crate::word::Configuration;

/// Slack allowed when comparing an exact drift to the guaranteed decrease.
pub const DRIFT_TOLERANCE: f64 = 1e-9;
const EQUALITY_TOLERANCE: f64 = 1e-12;
const MAX_BOUNDS_LEN: usize = 16;
const MAX_ARGMAX_LEN: usize = 12;

/// Exact one-step expected change of the variant under the cooling process,
/// or `None` on ground states.
pub fn drift_at(w: &Configuration, params: VariantParams) -> Result<Option<f64>> {
    if w.energy() == 0 {
        return Ok(None);
    }
    let here = variant_phi(w, params)?;
    let flips = allowed_flips(w);
    let mut sum = 0.0;
    for f in &flips {
        let next = apply_flip(w, f.position)?;
        sum += variant_phi(&next, params)?;
    }
    Ok(Some(sum / flips.len() as f64 - here))
}

#[derive(Debug, Clone, Serialize)]
pub struct DriftReport {
    pub len: usize,
    pub alpha: f64,
    /// The guaranteed decrease `alpha(1-alpha)/2 * (L/2)^(alpha-2)`.
    pub threshold: f64,
    pub checked: usize,
    /// Largest (least negative) drift seen, with the configuration attaining it.
    pub worst_drift: Option<f64>,
    pub worst_config: Option<Configuration>,
    /// Configurations whose drift exceeds `-threshold + DRIFT_TOLERANCE`.
    pub violations: Vec<(Configuration, f64)>,
    pub all_strictly_negative: bool,
}

impl DriftReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Margin by which the worst drift beats the guaranteed decrease.
    pub fn margin(&self) -> Option<f64> {
        self.worst_drift.map(|d| -self.threshold - d)
    }
}

/// Checks the drift inequality on every configuration of length `len` with
/// positive energy. Violations are collected, not raised.
pub fn verify_drift_lemma(len: usize, params: VariantParams) -> Result<DriftReport> {
    if len > MAX_EXACT_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_EXACT_LEN,
        });
    }
    let threshold = params.drift_constant((len / 2).max(1));
    let mut report = DriftReport {
        len,
        alpha: params.alpha(),
        threshold,
        checked: 0,
        worst_drift: None,
        worst_config: None,
        violations: Vec::new(),
        all_strictly_negative: true,
    };
    for w in enumerate_configurations(len)? {
        let Some(d) = drift_at(&w, params)? else {
            continue;
        };
        report.checked += 1;
        if report.worst_drift.is_none_or(|m| d > m) {
            report.worst_drift = Some(d);
            report.worst_config = Some(w.clone());
        }
        if d >= 0.0 {
            report.all_strictly_negative = false;
        }
        if d > -threshold + DRIFT_TOLERANCE {
            report.violations.push((w, d));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub len: usize,
    pub alpha: f64,
    pub checked: usize,
    pub lower: f64,
    pub upper: f64,
    pub min_phi: f64,
    pub max_phi: f64,
    /// Configurations attaining the lower bound.
    pub equality_configs: Vec<Configuration>,
}

/// Exhaustively checks `(1 + L/2)^a <= phi_a(w) <= L^(a+1)` and that the lower
/// bound is attained exactly on the mismatch-free words.
pub fn verify_variant_bounds(len: usize, params: VariantParams) -> Result<BoundsReport> {
    if len > MAX_BOUNDS_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_BOUNDS_LEN,
        });
    }
    if len < 2 {
        return Err(Error::LengthTooSmall { len, min: 2 });
    }
    let n = len / 2;
    let lower = phi_lower_bound(n, params);
    let upper = phi_upper_bound(n, params);
    let mut report = BoundsReport {
        len,
        alpha: params.alpha(),
        checked: 0,
        lower,
        upper,
        min_phi: f64::INFINITY,
        max_phi: f64::NEG_INFINITY,
        equality_configs: Vec::new(),
    };
    for w in enumerate_configurations(len)? {
        let phi = variant_phi(&w, params)?;
        report.checked += 1;
        report.min_phi = report.min_phi.min(phi);
        report.max_phi = report.max_phi.max(phi);
        if phi < lower - EQUALITY_TOLERANCE || phi > upper + EQUALITY_TOLERANCE {
            return Err(Error::VerificationFailed(format!(
                "phi({w}) = {phi} outside [{lower}, {upper}] at alpha {}",
                params.alpha()
            )));
        }
        let at_lower = (phi - lower).abs() <= EQUALITY_TOLERANCE;
        if at_lower != w.is_ground_state() {
            return Err(Error::VerificationFailed(format!(
                "lower bound equality mismatch at {w}: phi = {phi}, energy = {}",
                w.energy()
            )));
        }
        if at_lower {
            report.equality_configs.push(w);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub len: usize,
    pub alpha: f64,
    pub checked: usize,
    /// Smallest `V(w) - phi_a(w)`.
    pub min_slack: f64,
    /// Largest `phi_a(w) / V(w)` and a configuration attaining it.
    pub max_ratio: f64,
    pub max_ratio_config: Option<Configuration>,
    /// Configurations with `phi_a(w) > V(w)`, with the (negative) slack.
    pub violations: Vec<(Configuration, f64)>,
}

impl VolumeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether `phi_a(w) <= 2^a V(w)` held everywhere. Words built from
    /// `12`/`21` blocks alone reach this ratio exactly.
    pub fn holds_with_factor(&self) -> bool {
        self.max_ratio <= 2f64.powf(self.alpha) + EQUALITY_TOLERANCE
    }
}

/// Exhaustively checks `phi_a(w) <= V(w)`.
pub fn verify_volume_dominates(len: usize, params: VariantParams) -> Result<VolumeReport> {
    if len < 2 {
        return Err(Error::LengthTooSmall { len, min: 2 });
    }
    let mut report = VolumeReport {
        len,
        alpha: params.alpha(),
        checked: 0,
        min_slack: f64::INFINITY,
        max_ratio: 0.0,
        max_ratio_config: None,
        violations: Vec::new(),
    };
    for w in enumerate_configurations(len)? {
        let volume = w.volume().as_f64();
        let phi = variant_phi(&w, params)?;
        let slack = volume - phi;
        report.checked += 1;
        report.min_slack = report.min_slack.min(slack);
        if phi / volume > report.max_ratio {
            report.max_ratio = phi / volume;
            report.max_ratio_config = Some(w.clone());
        }
        if slack < -EQUALITY_TOLERANCE {
            report.violations.push((w, slack));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct TimeBoundReport {
    pub len: usize,
    pub alpha: f64,
    pub checked: usize,
    /// Smallest `bound(w) - t(w)`.
    pub min_slack: f64,
    pub violations: Vec<(Configuration, f64, f64)>,
}

impl TimeBoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the variant-based bound with exact expected convergence times.
pub fn verify_time_bound(
    table: &HittingTimeTable,
    params: VariantParams,
) -> Result<TimeBoundReport> {
    if table.len() < 2 {
        return Err(Error::LengthTooSmall {
            len: table.len(),
            min: 2,
        });
    }
    let mut report = TimeBoundReport {
        len: table.len(),
        alpha: params.alpha(),
        checked: 0,
        min_slack: f64::INFINITY,
        violations: Vec::new(),
    };
    for (w, t) in table.iter() {
        let bound = variant_bound(w, params)?;
        report.checked += 1;
        report.min_slack = report.min_slack.min(bound - t);
        if t > bound {
            report.violations.push((w.clone(), t, bound));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ArgmaxReport {
    pub len: usize,
    pub value: f64,
    pub argmax: Vec<Configuration>,
    /// Whether `1^{L/2} 2^{L/2}` is among the maximizers.
    pub staircase_attains: bool,
}

/// Configurations maximizing the exact expected convergence time.
pub fn worst_case_argmax(len: usize) -> Result<ArgmaxReport> {
    if len > MAX_ARGMAX_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_ARGMAX_LEN,
        });
    }
    let table = expected_convergence_exact(len)?;
    let value = table.worst();
    let tol = 1e-9 * value.max(1.0);
    let argmax: Vec<_> = table
        .iter()
        .filter(|(_, t)| (value - t).abs() <= tol)
        .map(|(w, _)| w.clone())
        .collect();
    let staircase = Configuration::staircase(len / 2);
    Ok(ArgmaxReport {
        len,
        value,
        staircase_attains: argmax.contains(&staircase),
        argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    fn half() -> VariantParams {
        VariantParams::new(0.5).unwrap()
    }

    #[test]
    fn drift_examples() {
        let d = drift_at(&w("1122"), half()).unwrap().unwrap();
        assert!((d + 2f64.sqrt()).abs() < 1e-12);
        // both successors of 112122 have phi = 2 + sqrt 2
        let d = drift_at(&w("112122"), half()).unwrap().unwrap();
        assert!((d - (2f64.sqrt() - 3f64.sqrt())).abs() < 1e-12);
        assert!(d <= -half().drift_constant(3));
        assert_eq!(drift_at(&w("1212"), half()).unwrap(), None);
    }

    #[test]
    fn drift_report_small() {
        let r = verify_drift_lemma(4, half()).unwrap();
        assert_eq!(r.checked, 4);
        assert!(r.holds());
        assert!(r.all_strictly_negative);
        let r2 = verify_drift_lemma(2, half()).unwrap();
        assert_eq!(r2.checked, 0);
        assert!(r2.holds());
        assert!(verify_drift_lemma(16, half()).is_err());
    }

    #[test]
    fn bounds_small() {
        let r = verify_variant_bounds(4, half()).unwrap();
        assert_eq!(r.checked, 6);
        let eq: Vec<_> = r.equality_configs.iter().map(|c| c.to_string()).collect();
        assert_eq!(eq, vec!["1212", "2121"]);
        assert!(verify_variant_bounds(2, half()).is_ok());
        assert!(verify_variant_bounds(18, half()).is_err());
    }

    #[test]
    fn volume_fails_on_short_blocks() {
        // phi(12) = 2^a exceeds V(12) = 1
        let r = verify_volume_dominates(2, half()).unwrap();
        assert_eq!(r.violations.len(), 2);
        assert!((r.max_ratio - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.holds_with_factor());
        let r = verify_volume_dominates(12, half()).unwrap();
        assert_eq!(r.max_ratio_config.unwrap().to_string(), "122112211221");
    }

    #[test]
    fn argmax_small() {
        let r = worst_case_argmax(4).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let names: Vec<_> = r.argmax.iter().map(|c| c.to_string()).collect();
        assert!(names.contains(&"1122".to_string()));
        assert!(names.contains(&"2211".to_string()));
        assert!(r.staircase_attains);
        let r2 = worst_case_argmax(2).unwrap();
        assert_eq!(r2.value, 0.0);
        assert_eq!(r2.argmax.len(), 2);
    }
}
