//! Exact ground truth at small lengths: exhaustive enumeration, expected
//! hitting times, exhaustive checks of the variant's properties and exact
//! generating-function coefficients.

mod hitting;
mod lemmas;
mod series;

pub use hitting::{expected_convergence_exact, level_transitions, HittingTimeTable, MAX_EXACT_LEN};
pub use lemmas::{
    drift_at, verify_drift_lemma, verify_time_bound, verify_variant_bounds,
    verify_volume_dominates, worst_case_argmax, ArgmaxReport, BoundsReport, DriftReport,
    TimeBoundReport, VolumeReport, DRIFT_TOLERANCE,
};
pub use series::{
    binomial_series, closed_flip_count, closed_flip_volume, coeff_inv_cube, coeff_inv_three_halves,
    flip_count_identity, flip_volume_identity, geometric_cube_series, natural_volume_asymptotic,
    CoefficientPair, NaturalVolumeAsymptotic, MAX_IDENTITY_N,
};

use crate::error::{Error, Result};
use crate::word::{Configuration, Letter};

/// Largest length accepted by [`enumerate_configurations`]; `C(20, 10)` is
/// 184756 words.
pub const MAX_ENUM_LEN: usize = 20;

/// All balanced words of length `len`, in lexicographic order (`1 < 2`).
pub fn enumerate_configurations(len: usize) -> Result<Vec<Configuration>> {
    if !len.is_multiple_of(2) {
        return Err(Error::OddLength(len));
    }
    if len > MAX_ENUM_LEN {
        return Err(Error::LengthTooLarge {
            len,
            max: MAX_ENUM_LEN,
        });
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(len);
    extend(&mut buf, len / 2, len / 2, &mut out);
    Ok(out)
}

fn extend(buf: &mut Vec<Letter>, ones: usize, twos: usize, out: &mut Vec<Configuration>) {
    if ones == 0 && twos == 0 {
        out.push(Configuration::from_letters_unchecked(buf.clone()));
        return;
    }
    if ones > 0 {
        buf.push(Letter::One);
        extend(buf, ones - 1, twos, out);
        buf.pop();
    }
    if twos > 0 {
        buf.push(Letter::Two);
        extend(buf, ones, twos - 1, out);
        buf.pop();
    }
}
