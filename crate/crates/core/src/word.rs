//! Balanced words over `{1, 2}` and their geometric representation.
//!
//! A [`Configuration`] is a word with as many `1`s as `2`s. Reading a `1` as
//! an up-step and a `2` as a down-step turns it into a lattice path from
//! height 0 back to height 0 (a bridge), described by [`PathProfile`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Letter {
    One = 1,
    Two = 2,
}

impl Letter {
    #[inline]
    pub fn swapped(self) -> Letter {
        match self {
            Letter::One => Letter::Two,
            Letter::Two => Letter::One,
        }
    }

    /// Height increment contributed by the letter.
    #[inline]
    pub fn step(self) -> i64 {
        match self {
            Letter::One => 1,
            Letter::Two => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
        }
    }
}

/// A balanced word over `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    letters: Vec<Letter>,
}

impl Configuration {
    /// Builds a configuration, checking even length and balance.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if !letters.len().is_multiple_of(2) {
            return Err(Error::OddLength(letters.len()));
        }
        let ones = letters.iter().filter(|&&l| l == Letter::One).count();
        let twos = letters.len() - ones;
        if ones != twos {
            return Err(Error::Unbalanced { ones, twos });
        }
        Ok(Configuration { letters })
    }

    /// Caller guarantees the balance invariant.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(Configuration::from_letters(letters.clone()).is_ok());
        Configuration { letters }
    }

    pub fn empty() -> Self {
        Configuration {
            letters: Vec::new(),
        }
    }

    /// `(12)^k`, one of the two ground states of length `2k`.
    pub fn alternating(half: usize, first: Letter) -> Self {
        let letters = (0..2 * half)
            .map(|i| if i % 2 == 0 { first } else { first.swapped() })
            .collect();
        Configuration { letters }
    }

    /// `1^k 2^k`.
    pub fn staircase(half: usize) -> Self {
        let mut letters = vec![Letter::One; half];
        letters.extend(std::iter::repeat_n(Letter::Two, half));
        Configuration { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of `1`s, which is also half the length.
    pub fn half_len(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [Letter] {
        &mut self.letters
    }

    /// Exchanges the letters `1` and `2` everywhere.
    pub fn swap_letters(&self) -> Configuration {
        Configuration {
            letters: self.letters.iter().map(|l| l.swapped()).collect(),
        }
    }

    /// Number of mismatches, i.e. adjacent equal letters.
    pub fn energy(&self) -> usize {
        self.letters.windows(2).filter(|p| p[0] == p[1]).count()
    }

    pub fn is_ground_state(&self) -> bool {
        self.energy() == 0
    }

    pub fn path_profile(&self) -> PathProfile {
        let mut heights = Vec::with_capacity(self.letters.len() + 1);
        let mut h = 0i64;
        heights.push(h);
        for l in &self.letters {
            h += l.step();
            heights.push(h);
        }
        PathProfile { heights }
    }

    /// Unsigned area between the path and the horizontal axis.
    pub fn volume(&self) -> Volume {
        let mut doubled = 0u64;
        let mut prev = 0i64;
        for l in &self.letters {
            let next = prev + l.step();
            doubled += (prev + next).unsigned_abs();
            prev = next;
        }
        Volume { doubled }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let letters = text
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '1' => Ok(Letter::One),
                '2' => Ok(Letter::Two),
                other => Err(Error::InvalidLetter {
                    position: i + 1,
                    found: other,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::from_letters(letters)
    }
}

/// Parses a configuration from its textual form, e.g. `"1212"`.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    text.parse()
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Heights `h_0..h_L` of the lattice path of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathProfile {
    heights: Vec<i64>,
}

impl PathProfile {
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn min_height(&self) -> i64 {
        self.heights.iter().copied().min().unwrap_or(0)
    }
}

/// Volume of a configuration, stored as twice the area so that it stays an
/// exact integer.
///
/// `h_{k-1} + h_k` is odd for every step, and a bridge has an even number of
/// steps, so the doubled value is always even and the area itself is an
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Volume {
    doubled: u64,
}

impl Volume {
    pub fn doubled(self) -> u64 {
        self.doubled
    }

    pub fn value(self) -> u64 {
        debug_assert_eq!(self.doubled % 2, 0);
        self.doubled / 2
    }

    pub fn to_ratio(self) -> Ratio<u64> {
        Ratio::new(self.doubled, 2)
    }

    pub fn as_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIG1: &str = "11211121222112212222211222112111211212";

    fn w(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn parse_accepts_balanced_words() {
        assert_eq!(w("1212").len(), 4);
        assert_eq!(w(FIG1).len(), 38);
        assert!(w("").is_empty());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(parse_configuration("112"), Err(Error::OddLength(3)));
        assert_eq!(
            parse_configuration("1112"),
            Err(Error::Unbalanced { ones: 3, twos: 1 })
        );
        assert_eq!(
            parse_configuration("12a2"),
            Err(Error::InvalidLetter {
                position: 3,
                found: 'a'
            })
        );
    }

    #[test]
    fn energy_examples() {
        assert_eq!(w(FIG1).energy(), 18);
        assert_eq!(w("1212").energy(), 0);
        assert_eq!(w("1122").energy(), 2);
        assert_eq!(Configuration::staircase(5).energy(), 8);
        assert_eq!(Configuration::empty().energy(), 0);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(w("1122").path_profile().heights(), &[0, 1, 2, 1, 0]);
        assert_eq!(w("1221").path_profile().heights(), &[0, 1, 0, -1, 0]);
        assert_eq!(Configuration::empty().path_profile().heights(), &[0]);
    }

    #[test]
    fn volume_examples() {
        assert_eq!(w("111222").volume().value(), 9);
        assert_eq!(w("1212").volume().value(), 2);
        assert_eq!(w("1212").volume().to_ratio(), Ratio::from_integer(2));
        let total: u64 = ["1122", "1212", "1221", "2112", "2121", "2211"]
            .iter()
            .map(|s| w(s).volume().value())
            .sum();
        // mean over W_4 is 16/6 = 8/3
        assert_eq!(Ratio::new(total, 6), Ratio::new(8, 3));
    }

    #[test]
    fn constructors() {
        assert_eq!(
            Configuration::alternating(3, Letter::One).to_string(),
            "121212"
        );
        assert_eq!(
            Configuration::alternating(2, Letter::Two).to_string(),
            "2121"
        );
        assert_eq!(Configuration::staircase(3).to_string(), "111222");
        assert_eq!(w("1122").swap_letters().to_string(), "2211");
    }
}
