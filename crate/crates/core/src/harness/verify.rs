//! One-shot run of every exact verifier up to a maximal length.

use std::fmt;

use serde::Serialize;

use crate::cooling::CoolingState;
use crate::dyck::VariantParams;
use crate::error::{Error, Result};
use crate::oracle::{
    enumerate_configurations, expected_convergence_exact, flip_count_identity,
    flip_volume_identity, natural_volume_asymptotic, verify_drift_lemma, verify_time_bound,
    verify_variant_bounds, verify_volume_dominates, worst_case_argmax, MAX_EXACT_LEN,
    MAX_IDENTITY_N,
};
use crate::word::{Configuration, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A stated constant or claim is not met while the property the
    /// artifact relies on still holds.
    Discrepancy,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Discrepancy => "DISCREPANCY",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_len: usize,
    pub alphas: Vec<f64>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", c.status, c.name, c.detail)?;
        }
        write!(
            f,
            "{} checks: {} pass, {} discrepancy, {} fail",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Discrepancy),
            self.count(Status::Fail)
        )
    }
}

/// Lengths checked for the argmax and the exact-time bound.
const MAX_TABLE_CHECK_LEN: usize = 12;

pub fn run_verification(max_len: usize, alphas: &[f64]) -> Result<VerifyReport> {
    if max_len > MAX_EXACT_LEN {
        return Err(Error::LengthTooLarge {
            len: max_len,
            max: MAX_EXACT_LEN,
        });
    }
    let params = alphas
        .iter()
        .map(|&a| VariantParams::new(a))
        .collect::<Result<Vec<_>>>()?;
    let lengths: Vec<usize> = (2..=max_len).step_by(2).collect();
    let mut checks = Vec::new();
    let mut push = |name: String, status: Status, detail: String| {
        checks.push(CheckResult {
            name,
            status,
            detail,
        })
    };

    for &len in &lengths {
        let words = enumerate_configurations(len)?;
        let grounds = [
            Configuration::alternating(len / 2, Letter::One),
            Configuration::alternating(len / 2, Letter::Two),
        ];
        let bad_ground = words
            .iter()
            .find(|w| w.is_ground_state() != grounds.contains(w));
        let stuck = words
            .iter()
            .find(|w| w.energy() > 0 && CoolingState::new((*w).clone()).allowed().is_empty());
        let status = if bad_ground.is_none() && stuck.is_none() {
            Status::Pass
        } else {
            Status::Fail
        };
        push(
            format!("ground-states L={len}"),
            status,
            match (bad_ground, stuck) {
                (Some(w), _) => format!("energy-zero characterization fails at {w}"),
                (_, Some(w)) => format!("{w} has a mismatch but no allowed flip"),
                _ => format!(
                    "{} words: E=0 exactly on (12)^k, (21)^k; allowed flips exist whenever E>0",
                    words.len()
                ),
            },
        );
    }

    for &p in &params {
        let a = p.alpha();
        for &len in &lengths {
            let drift = verify_drift_lemma(len, p)?;
            let status = if drift.holds() {
                Status::Pass
            } else if drift.all_strictly_negative {
                Status::Discrepancy
            } else {
                Status::Fail
            };
            let detail = match (&drift.worst_drift, &drift.worst_config) {
                (Some(d), Some(w)) => format!(
                    "{} words with E>0, worst drift {d:.6} at {w}, required <= {:.6}, {} violations",
                    drift.checked,
                    -drift.threshold,
                    drift.violations.len()
                ),
                _ => "vacuous: no word with E>0".to_string(),
            };
            push(format!("drift alpha={a} L={len}"), status, detail);

            match verify_variant_bounds(len, p) {
                Ok(r) => push(
                    format!("variant-bounds alpha={a} L={len}"),
                    Status::Pass,
                    format!(
                        "phi in [{:.6}, {:.6}] within [{:.6}, {:.6}], equality at {} words",
                        r.min_phi,
                        r.max_phi,
                        r.lower,
                        r.upper,
                        r.equality_configs.len()
                    ),
                ),
                Err(e) => push(
                    format!("variant-bounds alpha={a} L={len}"),
                    Status::Fail,
                    e.to_string(),
                ),
            }

            let vol = verify_volume_dominates(len, p)?;
            let status = if vol.holds() {
                Status::Pass
            } else if vol.holds_with_factor() {
                Status::Discrepancy
            } else {
                Status::Fail
            };
            push(
                format!("phi<=volume alpha={a} L={len}"),
                status,
                format!(
                    "min slack {:.6}, {} violations, max phi/V {:.6} (2^alpha = {:.6})",
                    vol.min_slack,
                    vol.violations.len(),
                    vol.max_ratio,
                    2f64.powf(a)
                ),
            );
        }
    }

    for &len in lengths.iter().filter(|&&l| l <= MAX_TABLE_CHECK_LEN) {
        let table = expected_convergence_exact(len)?;
        for &p in &params {
            let r = verify_time_bound(&table, p)?;
            push(
                format!("exact-T<=bound alpha={} L={len}", p.alpha()),
                if r.holds() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                format!(
                    "min slack {:.4}, {} violations",
                    r.min_slack,
                    r.violations.len()
                ),
            );
        }
        let am = worst_case_argmax(len)?;
        let names: Vec<String> = am.argmax.iter().map(|w| w.to_string()).collect();
        push(
            format!("worst-case-argmax L={len}"),
            if am.staircase_attains {
                Status::Pass
            } else {
                Status::Discrepancy
            },
            format!("max E(T) = {:.6} at {}", am.value, names.join(",")),
        );
    }

    for n in 1..=(max_len / 2).min(MAX_IDENTITY_N) {
        for (name, r) in [
            ("flip-count-identity", flip_count_identity(n)),
            ("flip-volume-identity", flip_volume_identity(n)),
        ] {
            match r {
                Ok(pair) => push(
                    format!("{name} n={n}"),
                    Status::Pass,
                    format!("brute {} = closed {}", pair.brute, pair.closed),
                ),
                Err(e) => push(format!("{name} n={n}"), Status::Fail, e.to_string()),
            }
        }
    }

    let grid = [10usize, 50, 100, 200];
    let devs = grid
        .iter()
        .map(|&n| natural_volume_asymptotic(n).map(|r| r.relative_deviation))
        .collect::<Result<Vec<_>>>()?;
    let shrinking = devs.windows(2).all(|p| p[1] < p[0]);
    let last = *devs.last().expect("grid is nonempty");
    push(
        "natural-volume-asymptotic".to_string(),
        if shrinking && last < 0.10 {
            Status::Pass
        } else {
            Status::Fail
        },
        format!(
            "relative deviation at n={:?}: {:?}",
            grid,
            devs.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>()
        ),
    );

    Ok(VerifyReport {
        max_len,
        alphas: alphas.to_vec(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bundle_passes() {
        let r = run_verification(8, &[0.25, 0.5, 0.75]).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.count(Status::Fail), 0);
    }

    #[test]
    fn length_two_is_vacuous() {
        let r = run_verification(2, &[0.5]).unwrap();
        assert!(r.passed());
        let drift = r
            .checks
            .iter()
            .find(|c| c.name.starts_with("drift"))
            .unwrap();
        assert!(drift.detail.contains("vacuous"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(run_verification(16, &[0.5]).is_err());
        assert!(run_verification(4, &[1.0]).is_err());
    }
}
