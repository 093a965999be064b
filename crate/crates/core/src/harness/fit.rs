//! Scaling fits `mean T ~ c * f(n)` by least squares through the origin.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::simulate::{summarize, RunRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `c * n^3`
    Cubic,
    /// `c * n^(5/2) * ln n`
    N52log,
}

impl Model {
    pub fn predictor(self, n: f64) -> f64 {
        match self {
            Model::Cubic => n.powi(3),
            Model::N52log => n.powf(2.5) * n.ln(),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Cubic => "cubic",
            Model::N52log => "n52log",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubic" => Ok(Model::Cubic),
            "n52log" => Ok(Model::N52log),
            other => Err(Error::InvalidArgument(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub model: Model,
    pub c: f64,
    /// `(n, mean T)` pairs used by the fit.
    pub points: Vec<(f64, f64)>,
    /// `sqrt(mean(((y - c x) / y)^2))` over the points.
    pub residual: f64,
    /// Unconstrained slope of `ln y` against `ln n`, as a diagnostic.
    pub loglog_slope: f64,
}

impl ScalingFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.c * self.model.predictor(n)
    }
}

/// Fits `y = c * f(n)`. Points with `y = 0` carry no scaling information and
/// are dropped; at least three distinct `n` must remain.
pub fn fit_scaling(points: &[(f64, f64)], model: Model) -> Result<ScalingFit> {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(n, y)| y > 0.0 && model.predictor(n) > 0.0)
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut distinct: Vec<f64> = pts.iter().map(|p| p.0).collect();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 distinct n with positive mean T, got {}",
            distinct.len()
        )));
    }

    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(sxy, sxx), &(n, y)| {
        let x = model.predictor(n);
        (sxy + x * y, sxx + x * x)
    });
    let c = sxy / sxx;
    let residual = (pts
        .iter()
        .map(|&(n, y)| ((y - c * model.predictor(n)) / y).powi(2))
        .sum::<f64>()
        / pts.len() as f64)
        .sqrt();

    let k = pts.len() as f64;
    let lx: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();

    Ok(ScalingFit {
        model,
        c,
        points: pts,
        residual,
        loglog_slope: cov / var,
    })
}

/// Fits per-`n` mean convergence times from simulation records.
pub fn fit_records(records: &[RunRecord], model: Model) -> Result<ScalingFit> {
    let points: Vec<(f64, f64)> = summarize(records)
        .iter()
        .map(|s| (s.n as f64, s.mean_t))
        .collect();
    fit_scaling(&points, model)
}
