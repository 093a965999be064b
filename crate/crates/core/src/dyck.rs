//! Maximal Dyck factors and the variant built on them.
//!
//! A positive Dyck factor of height `h >= 0` is a nonempty balanced factor
//! whose path starts at height `h` and never goes below it; negative factors
//! are the mirror image at heights `h <= 0`. A factor is maximal when no
//! factor at the same height contains it. Maximal factors nest: the ones at
//! height `h + 1` sit strictly inside those at height `h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Configuration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// A maximal Dyck factor occupying letters `start..end` (0-based, half-open).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyckFactor {
    pub start: usize,
    pub end: usize,
    pub height: i64,
    pub sign: Sign,
    pub ones: usize,
}

impl DyckFactor {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn contains(&self, other: &DyckFactor) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Weight `(1 + ones)^alpha` of this factor in the variant.
    pub fn weight(&self, params: VariantParams) -> f64 {
        (1.0 + self.ones as f64).powf(params.alpha())
    }
}

/// All maximal Dyck factors of `w`, ordered by start position and then by
/// distance of the height from the axis.
///
/// Single left-to-right scan keeping a stack of open factors: a factor at
/// height `h` opens at the first step leaving `h` away from the axis, and
/// closes at the last visit to `h` before the path crosses back past `h`
/// towards the axis (or at the end of the word).
pub fn dyck_decompose(w: &Configuration) -> Vec<DyckFactor> {
    let mut open: Vec<(usize, i64, Sign)> = Vec::new();
    let mut out = Vec::new();
    let close =
        |(start, height, sign): (usize, i64, Sign), end: usize, out: &mut Vec<DyckFactor>| {
            out.push(DyckFactor {
                start,
                end,
                height,
                sign,
                ones: (end - start) / 2,
            });
        };

    let mut cur = 0i64;
    for (k, letter) in w.letters().iter().enumerate() {
        let step = letter.step();
        // the side of the axis this step explores from `cur`
        let sign = if step > 0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        let away = (step > 0 && cur >= 0) || (step < 0 && cur <= 0);
        if away {
            match open.last() {
                Some(&(_, h, s)) if h == cur && s == sign => {}
                Some(&top) if top.1 == cur => {
                    // height 0 with the opposite sign: that block ends here
                    open.pop();
                    close(top, k, &mut out);
                    open.push((k, cur, sign));
                }
                _ => open.push((k, cur, sign)),
            }
        } else if let Some(&top) = open.last() {
            if top.1 == cur {
                open.pop();
                close(top, k, &mut out);
            }
        }
        cur += step;
    }
    debug_assert_eq!(cur, 0);
    while let Some(top) = open.pop() {
        debug_assert_eq!(top.1, 0);
        close(top, w.len(), &mut out);
    }

    out.sort_by_key(|f| (f.start, f.height.abs()));
    out
}

/// Parameter of the variant, validated to lie strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct VariantParams {
    alpha: f64,
}

impl VariantParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
            Ok(VariantParams { alpha })
        } else {
            Err(Error::InvalidAlpha(alpha))
        }
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// `alpha = 1 - 1/ln(n)`, minimizing the uniform-average bound at
    /// half-length `n`. Only valid for `n >= 3`, where it falls in `(0, 1)`.
    pub fn for_uniform_bound(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::LengthTooSmall { len: n, min: 3 });
        }
        VariantParams::new(1.0 - 1.0 / (n as f64).ln())
    }

    /// Guaranteed one-step decrease `alpha(1-alpha)/2 * n^(alpha-2)` of the
    /// variant's expectation at half-length `n`.
    pub fn drift_constant(self, n: usize) -> f64 {
        let a = self.alpha;
        a * (1.0 - a) / 2.0 * (n as f64).powf(a - 2.0)
    }
}

/// `phi_alpha(w)`: sum of `(1 + ones)^alpha` over all maximal Dyck factors.
pub fn variant_phi(w: &Configuration, params: VariantParams) -> Result<f64> {
    if w.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    Ok(phi_of_factors(&dyck_decompose(w), params))
}

pub fn phi_of_factors(factors: &[DyckFactor], params: VariantParams) -> f64 {
    factors.iter().map(|f| f.weight(params)).sum()
}

/// Upper bound on the expected convergence time from `w0`: the initial
/// variant value divided by the guaranteed drift.
pub fn variant_bound(w0: &Configuration, params: VariantParams) -> Result<f64> {
    let phi = variant_phi(w0, params)?;
    Ok(phi / params.drift_constant(w0.half_len()))
}

/// Lower bound `(1 + n)^alpha` on the variant at half-length `n`, attained
/// exactly on ground states.
pub fn phi_lower_bound(n: usize, params: VariantParams) -> f64 {
    (1.0 + n as f64).powf(params.alpha())
}

/// Upper bound `(2n)^(alpha + 1)` on the variant at half-length `n`.
pub fn phi_upper_bound(n: usize, params: VariantParams) -> f64 {
    (2.0 * n as f64).powf(params.alpha() + 1.0)
}
