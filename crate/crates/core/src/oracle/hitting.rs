use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;

use super::enumerate_configurations;
use crate::error::{Error, Result};
use crate::flip::{allowed_flips, apply_flip, flip_count};
use crate::word::Configuration;

/// Largest length for which exact hitting times are computed.
pub const MAX_EXACT_LEN: usize = 14;

const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Exact expected convergence time `E(T | w0 = w)` for every `w` of a given
/// length.
#[derive(Debug, Clone)]
pub struct HittingTimeTable {
    len: usize,
    words: Vec<Configuration>,
    times: Vec<f64>,
    index: HashMap<Configuration, usize>,
    max_residual: f64,
}

impl HittingTimeTable {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, w: &Configuration) -> Option<f64> {
        self.index.get(w).map(|&i| self.times[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, f64)> {
        self.words.iter().zip(self.times.iter().copied())
    }

    /// Largest `|A t - b|` over all per-level solves.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    /// Worst expected convergence time over the whole length.
    pub fn worst(&self) -> f64 {
        self.times.iter().copied().fold(0.0, f64::max)
    }

    /// Uniformly averaged expected convergence time.
    pub fn uniform_average(&self) -> f64 {
        self.times.iter().sum::<f64>() / self.times.len() as f64
    }

    /// Average weighted by the number of performable flips.
    pub fn natural_average(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (w, t) in self.iter() {
            let k = flip_count(w) as f64;
            num += k * t;
            den += k;
        }
        num / den
    }
}

/// The cooling transitions out of `w`: successors paired with their exact
/// probabilities. Empty on ground states.
pub fn level_transitions(w: &Configuration) -> Vec<(Configuration, Ratio<u64>)> {
    if w.energy() == 0 {
        return Vec::new();
    }
    let flips = allowed_flips(w);
    let k = flips.len() as u64;
    flips
        .iter()
        .map(|f| {
            let next = apply_flip(w, f.position).expect("enumerated flip is valid");
            (next, Ratio::new(1, k))
        })
        .collect()
}

/// Solves `t(w) = 1 + mean over allowed flips of t(flip(w))` with `t = 0` on
/// ground states.
///
/// Cooling transitions never raise the energy, so the states are solved one
/// energy level at a time, lowest first; each level only needs a dense solve
/// over its own states.
pub fn expected_convergence_exact(len: usize) -> Result<HittingTimeTable> {
    if len > MAX_EXACT_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_EXACT_LEN,
        });
    }
    let words = enumerate_configurations(len)?;
    let index: HashMap<Configuration, usize> = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let energies: Vec<usize> = words.iter().map(|w| w.energy()).collect();
    let top = energies.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); top + 1];
    for (i, &e) in energies.iter().enumerate() {
        levels[e].push(i);
    }

    let mut times = vec![0.0; words.len()];
    let mut max_residual = 0.0f64;
    for (level, members) in levels.iter().enumerate().skip(1) {
        if members.is_empty() {
            continue;
        }
        let local: HashMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(li, &gi)| (gi, li))
            .collect();
        let m = members.len();
        let mut a = DMatrix::<f64>::identity(m, m);
        let mut b = DVector::<f64>::from_element(m, 1.0);
        for (li, &gi) in members.iter().enumerate() {
            let w = &words[gi];
            let flips = allowed_flips(w);
            assert!(!flips.is_empty(), "no allowed flip from {w}");
            let p = 1.0 / flips.len() as f64;
            for f in flips {
                let next = apply_flip(w, f.position).expect("enumerated flip is valid");
                let gj = index[&next];
                match energies[gj] {
                    e if e == level => a[(li, local[&gj])] -= p,
                    e if e < level => b[li] += p * times[gj],
                    _ => unreachable!("cooling flip increased the energy"),
                }
            }
        }
        let x = a
            .clone()
            .lu()
            .solve(&b)
            .ok_or(Error::SingularLevel { level })?;
        let residual = (&a * &x - &b).amax();
        if residual.is_nan() || residual > RESIDUAL_TOLERANCE {
            return Err(Error::ResidualTooLarge {
                level,
                residual,
                tolerance: RESIDUAL_TOLERANCE,
            });
        }
        max_residual = max_residual.max(residual);
        for (li, &gi) in members.iter().enumerate() {
            times[gi] = x[li];
        }
    }

    Ok(HittingTimeTable {
        len,
        words,
        times,
        index,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let t4 = expected_convergence_exact(4).unwrap();
        assert_eq!(t4.get(&w("1212")), Some(0.0));
        assert!((t4.get(&w("1122")).unwrap() - 1.0).abs() < 1e-12);
        assert!((t4.get(&w("1221")).unwrap() - 1.0).abs() < 1e-12);
        let t2 = expected_convergence_exact(2).unwrap();
        assert!(t2.iter().all(|(_, t)| t == 0.0));
    }

    #[test]
    fn table_invariants() {
        for len in [6, 8, 10] {
            let t = expected_convergence_exact(len).unwrap();
            assert!(t.max_residual() <= 1e-10);
            for (x, v) in t.iter() {
                assert!(v.is_finite());
                assert_eq!(v == 0.0, x.is_ground_state());
                // letter-swap symmetry
                let s = t.get(&x.swap_letters()).unwrap();
                assert!((v - s).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn one_step_equation_holds() {
        let t = expected_convergence_exact(8).unwrap();
        for (x, v) in t.iter() {
            if x.is_ground_state() {
                continue;
            }
            let rhs: f64 = 1.0
                + level_transitions(x)
                    .iter()
                    .map(|(y, p)| t.get(y).unwrap() * (*p.numer() as f64 / *p.denom() as f64))
                    .sum::<f64>();
            assert!((v - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_long() {
        assert!(expected_convergence_exact(16).is_err());
    }
}
