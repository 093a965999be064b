//! Initial-configuration distributions.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flip::flip_count;
use crate::oracle::enumerate_configurations;
use crate::word::{Configuration, Letter};

/// Largest length for which the natural distribution is tabulated exactly.
pub const MAX_TABLE_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SamplerKind {
    WorstCase,
    GroundState,
    Uniform,
    Natural,
    NaturalExactTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    pub len: usize,
    pub seed: u64,
}

impl SamplerSpec {
    pub fn new(kind: SamplerKind, len: usize, seed: u64) -> Result<Self> {
        check_len(len)?;
        if kind == SamplerKind::NaturalExactTable && len > MAX_TABLE_LEN {
            return Err(Error::LengthTooLarge {
                len,
                max: MAX_TABLE_LEN,
            });
        }
        Ok(SamplerSpec { kind, len, seed })
    }

    /// Draws one configuration. Deterministic kinds ignore `rng`.
    ///
    /// `NaturalExactTable` rebuilds the table on every call; use
    /// [`NaturalTable::sample`] directly for repeated draws.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Configuration> {
        match self.kind {
            SamplerKind::WorstCase => worst_case_config(self.len),
            SamplerKind::GroundState => ground_state(self.len),
            SamplerKind::Uniform => sample_uniform_bridge(self.len, rng),
            SamplerKind::Natural => sample_natural(self.len, rng),
            SamplerKind::NaturalExactTable => {
                Ok(exact_natural_distribution(self.len)?.sample(rng).clone())
            }
        }
    }
}

fn check_len(len: usize) -> Result<()> {
    if !len.is_multiple_of(2) {
        return Err(Error::OddLength(len));
    }
    if len < 2 {
        return Err(Error::LengthTooSmall { len, min: 2 });
    }
    Ok(())
}

/// `1^{L/2} 2^{L/2}`, the configuration of maximal energy.
pub fn worst_case_config(len: usize) -> Result<Configuration> {
    check_len(len)?;
    Ok(Configuration::staircase(len / 2))
}

/// `(12)^{L/2}`.
pub fn ground_state(len: usize) -> Result<Configuration> {
    check_len(len)?;
    Ok(Configuration::alternating(len / 2, Letter::One))
}

/// Uniform draw from all balanced words of length `len`, by shuffling the
/// multiset of letters.
pub fn sample_uniform_bridge<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Configuration> {
    check_len(len)?;
    let mut letters = Configuration::staircase(len / 2).letters().to_vec();
    letters.shuffle(rng);
    Ok(Configuration::from_letters_unchecked(letters))
}

/// Draw from the natural distribution (probability proportional to the
/// number of performable flips), by rejection from the uniform distribution.
pub fn sample_natural<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Configuration> {
    sample_natural_counted(len, rng).map(|(w, _)| w)
}

/// Like [`sample_natural`], also returning the number of uniform proposals.
///
/// A proposal `w` is accepted with probability `flips(w) / (L - 1)`, which is
/// at most one, so the accepted word follows the natural law exactly.
pub fn sample_natural_counted<R: Rng + ?Sized>(
    len: usize,
    rng: &mut R,
) -> Result<(Configuration, u64)> {
    check_len(len)?;
    let slots = (len - 1) as u64;
    let mut rounds = 0u64;
    loop {
        rounds += 1;
        let w = sample_uniform_bridge(len, rng)?;
        if rng.gen_range(0..slots) < flip_count(&w) as u64 {
            return Ok((w, rounds));
        }
    }
}

/// The natural distribution tabulated over all of `W_L`, with exact weights.
#[derive(Debug, Clone)]
pub struct NaturalTable {
    entries: Vec<(Configuration, u64)>,
    total: u64,
}

impl NaturalTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the flip counts over all configurations.
    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Configuration, Ratio<u64>)> {
        self.entries
            .iter()
            .map(move |(w, k)| (w, Ratio::new(*k, self.total)))
    }

    pub fn probability(&self, w: &Configuration) -> Ratio<u64> {
        self.entries
            .iter()
            .find(|(x, _)| x == w)
            .map_or(Ratio::from_integer(0), |(_, k)| Ratio::new(*k, self.total))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Configuration {
        let mut target = rng.gen_range(0..self.total);
        for (w, k) in &self.entries {
            if target < *k {
                return w;
            }
            target -= k;
        }
        unreachable!("weights sum to total")
    }
}

pub fn exact_natural_distribution(len: usize) -> Result<NaturalTable> {
    check_len(len)?;
    if len > MAX_TABLE_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_TABLE_LEN,
        });
    }
    let entries: Vec<_> = enumerate_configurations(len)?
        .into_iter()
        .map(|w| {
            let k = flip_count(&w) as u64;
            (w, k)
        })
        .collect();
    let total = entries.iter().map(|(_, k)| k).sum();
    Ok(NaturalTable { entries, total })
}
