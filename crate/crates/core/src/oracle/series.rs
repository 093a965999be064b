//! Exact coefficients of the flip-count and flip-weighted-volume generating
//! functions over all configurations of length `2n`:
//!
//! ```text
//! D(z) = 2z / (1 - 4z)^(3/2)
//! N(z) = (16z^3 + 4z^2 + 2z) / (1 - 4z)^3
//! ```
//!
//! Coefficients use `[z^k](1-4z)^(-3/2) = (2k+1) C(2k, k)` and
//! `[z^k](1-4z)^(-3) = C(k+2, 2) 4^k`, cross-checked against truncated series
//! computed in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::enumerate_configurations;
use crate::error::{Error, Result};
use crate::flip::flip_count;

/// Largest `n` for which the brute-force sums over `W_{2n}` are computed.
pub const MAX_IDENTITY_N: usize = 10;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `[z^k] (1 - 4z)^(-3/2)`.
pub fn coeff_inv_three_halves(k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let k = k as u64;
    BigInt::from(2 * k + 1) * binomial(2 * k, k)
}

/// `[z^k] (1 - 4z)^(-3)`.
pub fn coeff_inv_cube(k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let k = k as u64;
    binomial(k + 2, 2) * BigInt::from(4).pow(k as u32)
}

/// `[z^n] D(z) = 2 (2n-1) C(2n-2, n-1)`.
pub fn closed_flip_count(n: usize) -> BigInt {
    BigInt::from(2) * coeff_inv_three_halves(n as i64 - 1)
}

/// `[z^n] N(z)`.
pub fn closed_flip_volume(n: usize) -> BigInt {
    let n = n as i64;
    BigInt::from(2) * coeff_inv_cube(n - 1)
        + BigInt::from(4) * coeff_inv_cube(n - 2)
        + BigInt::from(16) * coeff_inv_cube(n - 3)
}

/// First `terms` coefficients of `(1 + scale z)^exponent` from the
/// generalized binomial series.
pub fn binomial_series(exponent: Ratio<BigInt>, scale: i64, terms: usize) -> Vec<Ratio<BigInt>> {
    let mut out = Vec::with_capacity(terms);
    let mut c = Ratio::<BigInt>::one();
    let scale = Ratio::from_integer(BigInt::from(scale));
    for k in 0..terms {
        out.push(c.clone());
        let k = Ratio::from_integer(BigInt::from(k as u64));
        let kp1 = &k + Ratio::<BigInt>::one();
        c = c * (&exponent - &k) / kp1 * &scale;
    }
    out
}

/// First `terms` coefficients of `(1 - 4z)^(-3)` as the cube of the
/// geometric series, by truncated multiplication.
pub fn geometric_cube_series(terms: usize) -> Vec<BigInt> {
    let geo: Vec<BigInt> = (0..terms).map(|k| BigInt::from(4).pow(k as u32)).collect();
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        (0..terms)
            .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
            .collect()
    };
    let sq = mul(&geo, &geo);
    mul(&sq, &geo)
}

/// Brute-force value next to the closed-form coefficient for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientPair {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub brute: BigInt,
    #[serde(serialize_with = "as_string")]
    pub closed: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn check_identity_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::LengthTooSmall { len: n, min: 1 });
    }
    if n > MAX_IDENTITY_N {
        return Err(Error::LengthTooLarge {
            len: n,
            max: MAX_IDENTITY_N,
        });
    }
    Ok(())
}

fn settle(pair: CoefficientPair) -> Result<CoefficientPair> {
    if pair.brute == pair.closed {
        Ok(pair)
    } else {
        Err(Error::CoefficientMismatch {
            n: pair.n,
            brute: pair.brute.to_string(),
            closed: pair.closed.to_string(),
        })
    }
}

/// `sum over W_{2n} of flips(w)` against `[z^n] D(z)`.
pub fn flip_count_identity(n: usize) -> Result<CoefficientPair> {
    check_identity_n(n)?;
    let brute: u64 = enumerate_configurations(2 * n)?
        .iter()
        .map(|w| flip_count(w) as u64)
        .sum();
    settle(CoefficientPair {
        n,
        brute: BigInt::from(brute),
        closed: closed_flip_count(n),
    })
}

/// `sum over W_{2n} of flips(w) V(w)` against `[z^n] N(z)`.
pub fn flip_volume_identity(n: usize) -> Result<CoefficientPair> {
    check_identity_n(n)?;
    let doubled: u64 = enumerate_configurations(2 * n)?
        .iter()
        .map(|w| flip_count(w) as u64 * w.volume().doubled())
        .sum();
    debug_assert_eq!(doubled % 2, 0);
    settle(CoefficientPair {
        n,
        brute: BigInt::from(doubled / 2),
        closed: closed_flip_volume(n),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NaturalVolumeAsymptotic {
    pub n: usize,
    /// `[z^n] N / [z^n] D`, the exact naturally weighted volume over `W_{2n}`.
    #[serde(skip)]
    pub exact: Ratio<BigInt>,
    pub exact_value: f64,
    /// `(sqrt(pi) / 2) n^(3/2)`.
    pub asymptotic: f64,
    pub relative_deviation: f64,
    /// Same quantity by enumeration, when `n <= MAX_IDENTITY_N`.
    #[serde(skip)]
    pub enumerated: Option<Ratio<BigInt>>,
}

impl NaturalVolumeAsymptotic {
    pub fn enumeration_agrees(&self) -> Option<bool> {
        self.enumerated.as_ref().map(|e| *e == self.exact)
    }
}

pub fn natural_volume_asymptotic(n: usize) -> Result<NaturalVolumeAsymptotic> {
    if n == 0 {
        return Err(Error::LengthTooSmall { len: n, min: 1 });
    }
    let exact = Ratio::new(closed_flip_volume(n), closed_flip_count(n));
    let exact_value = exact
        .to_f64()
        .ok_or_else(|| Error::InvalidArgument(format!("ratio at n={n} not representable")))?;
    let asymptotic = std::f64::consts::PI.sqrt() / 2.0 * (n as f64).powf(1.5);
    let enumerated = if n <= MAX_IDENTITY_N {
        let mut num = 0u64;
        let mut den = 0u64;
        for w in enumerate_configurations(2 * n)? {
            let k = flip_count(&w) as u64;
            num += k * w.volume().doubled();
            den += 2 * k;
        }
        Some(Ratio::new(BigInt::from(num), BigInt::from(den)))
    } else {
        None
    };
    Ok(NaturalVolumeAsymptotic {
        n,
        exact,
        exact_value,
        asymptotic,
        relative_deviation: (exact_value - asymptotic).abs() / asymptotic,
        enumerated,
    })
}
