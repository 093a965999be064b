//! Flips: exchanging two adjacent different letters.
//!
//! Positions are 1-based: the flip at position `i` exchanges letters `i` and
//! `i + 1`, matching how positions are reported to users.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Configuration, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlipClass {
    Irreversible,
    Reversible,
    Forbidden,
}

impl FlipClass {
    pub fn from_delta(delta_e: i32) -> FlipClass {
        match delta_e {
            d if d < 0 => FlipClass::Irreversible,
            0 => FlipClass::Reversible,
            _ => FlipClass::Forbidden,
        }
    }

    /// Whether the cooling process may perform a flip of this class.
    pub fn is_allowed(self) -> bool {
        self != FlipClass::Forbidden
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipMove {
    /// 1-based position `i`; the flip exchanges letters `i` and `i + 1`.
    pub position: usize,
    /// Height of the path just before letter `i`.
    pub height: i64,
    pub delta_e: i32,
}

impl FlipMove {
    pub fn class(&self) -> FlipClass {
        FlipClass::from_delta(self.delta_e)
    }
}

/// Energy change of the flip exchanging `letters[j]` and `letters[j + 1]`
/// (0-based `j`), assuming those two letters differ.
///
/// Only the adjacencies `(j-1, j)` and `(j+1, j+2)` can change; each one
/// either gains or loses a mismatch.
#[inline]
pub(crate) fn local_delta(letters: &[Letter], j: usize) -> i32 {
    debug_assert!(letters[j] != letters[j + 1]);
    let mut d = 0;
    if j > 0 {
        d += if letters[j - 1] != letters[j] { 1 } else { -1 };
    }
    if j + 2 < letters.len() {
        d += if letters[j + 2] != letters[j + 1] {
            1
        } else {
            -1
        };
    }
    d
}

fn check_position(w: &Configuration, position: usize) -> Result<usize> {
    if position == 0 || position >= w.len() {
        return Err(Error::PositionOutOfRange {
            position,
            len: w.len(),
        });
    }
    let j = position - 1;
    if w.letters()[j] == w.letters()[j + 1] {
        return Err(Error::EqualLetters { position });
    }
    Ok(j)
}

/// Every position where a flip can be performed, whatever its class.
pub fn enumerate_flips(w: &Configuration) -> Vec<FlipMove> {
    let letters = w.letters();
    let mut height = 0i64;
    let mut out = Vec::new();
    for j in 0..letters.len().saturating_sub(1) {
        if letters[j] != letters[j + 1] {
            out.push(FlipMove {
                position: j + 1,
                height,
                delta_e: local_delta(letters, j),
            });
        }
        height += letters[j].step();
    }
    out
}

/// Number of performable flips, `(L - 1) - E(w)`.
pub fn flip_count(w: &Configuration) -> usize {
    w.letters().windows(2).filter(|p| p[0] != p[1]).count()
}

pub fn apply_flip(w: &Configuration, position: usize) -> Result<Configuration> {
    let j = check_position(w, position)?;
    let mut out = w.clone();
    out.letters_mut().swap(j, j + 1);
    Ok(out)
}

pub fn classify_flip(w: &Configuration, position: usize) -> Result<FlipClass> {
    let j = check_position(w, position)?;
    Ok(FlipClass::from_delta(local_delta(w.letters(), j)))
}

/// The flips the cooling process may perform on `w` (delta E <= 0).
pub fn allowed_flips(w: &Configuration) -> Vec<FlipMove> {
    enumerate_flips(w)
        .into_iter()
        .filter(|f| f.class().is_allowed())
        .collect()
}
