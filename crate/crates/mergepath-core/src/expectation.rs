//! Exact rational expected right-lane lengths and right-lane sums.
//!
//! Everything here is computed over arbitrary-precision rationals; floating
//! point only ever appears at a presentation layer.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::counting::binomial;
use crate::error::{Error, Result};

/// A reduced exact rational.
pub type Rational = Ratio<BigInt>;

fn ratio(num: BigUint, den: BigUint) -> Rational {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e as usize
}

/// Expected right-lane length over all `2^len` arrival sequences:
///
/// * odd `len`: `len/2^len * (2^(len-1) + C(len-1, (len-1)/2))`,
/// * even `len`: `len/2^(len+1) * (2^len + C(len, len/2))`,
/// * `len = 0`: 0.
pub fn expected_length(len: u64) -> Rational {
    if len == 0 {
        return Rational::zero();
    }
    ratio(right_lane_sum(len), pow2(len))
}

/// Sum of right-lane lengths over all arrival sequences of length `len`;
/// equals `expected_length(len) * 2^len` as an exact integer.
pub fn right_lane_sum(len: u64) -> BigUint {
    if len == 0 {
        return BigUint::zero();
    }
    if len % 2 == 1 {
        let half = (len - 1) / 2;
        BigUint::from(len) * (pow2(len - 1) + binomial(len - 1, half as i64))
    } else {
        BigUint::from(len) * (pow2(len) + binomial(len, (len / 2) as i64)) / 2u32
    }
}

/// Integer numerator `sum r(b)` over sequences with exactly `k` zeros,
/// before dividing by `C(len, k)`. Three cases by the shape of `(len, k)`.
fn lane_sum_k_numerator(len: u64, k: u64) -> BigUint {
    if len % 2 == 1 && len > 2 * k {
        // odd, at least as many greens as reds plus one
        let mut acc = BigUint::from(len.div_ceil(2)) * binomial(len, k as i64);
        let mut i = 0i64;
        while k as i64 - 2 * i - 2 >= 0 {
            acc += binomial(len, k as i64 - 2 * i - 2);
            i += 1;
        }
        acc
    } else if len.is_multiple_of(2) && len >= 2 * k {
        let mut acc = BigUint::from(len / 2) * binomial(len, k as i64);
        let mut i = 0i64;
        while k as i64 - 2 * i > 0 {
            acc += binomial(len, k as i64 - 2 * i - 1);
            i += 1;
        }
        acc
    } else {
        // len < 2k: reds dominate
        let mut acc = BigUint::from(k) * binomial(len, k as i64);
        let mut i = 0i64;
        while 2 * i < len as i64 - k as i64 {
            acc += binomial(len, k as i64 + 2 * i + 1);
            i += 1;
        }
        acc
    }
}

/// Expected right-lane length over the `C(len, k)` sequences with exactly
/// `k` zeros.
pub fn expected_length_k(len: u64, k: u64) -> Result<Rational> {
    if len == 0 {
        return Err(Error::Domain("expected length needs at least one car".into()));
    }
    if k > len {
        return Err(Error::Domain(format!(
            "cannot place {k} zeros in a length-{len} sequence"
        )));
    }
    Ok(ratio(lane_sum_k_numerator(len, k), binomial(len, k as i64)))
}

/// Sum of right-lane lengths over sequences with exactly `k` zeros; equals
/// `expected_length_k(len, k) * C(len, k)` as an exact integer.
pub fn right_lane_sum_k(len: u64, k: u64) -> Result<BigUint> {
    if k > len {
        return Err(Error::Domain(format!(
            "cannot place {k} zeros in a length-{len} sequence"
        )));
    }
    if len == 0 {
        return Ok(BigUint::zero());
    }
    Ok(lane_sum_k_numerator(len, k))
}

/// How the zero count scales with the sequence length in [`ratio_trace`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KRule {
    /// Average over all sequences (no zero-count restriction).
    All,
    /// Fix the zero fraction at `zeros_per / cars_per`, i.e. walk
    /// `len = cars_per * r`, `k = zeros_per * r`.
    Fixed { zeros_per: u64, cars_per: u64 },
}

/// Exact ratio sequence `E/len` for checking the limit behavior: tends to
/// 1/2 when greens are at least half the cars, and to the zero fraction
/// otherwise.
pub fn ratio_trace(len_max: u64, rule: KRule) -> Result<Vec<(u64, Rational)>> {
    if len_max == 0 {
        return Err(Error::Domain("need len_max >= 1".into()));
    }
    match rule {
        KRule::All => Ok((1..=len_max)
            .map(|len| {
                let e = expected_length(len);
                (len, e / BigInt::from(len))
            })
            .collect()),
        KRule::Fixed { zeros_per, cars_per } => {
            if cars_per == 0 || zeros_per > cars_per {
                return Err(Error::Domain(format!(
                    "zero fraction must satisfy 0 <= {zeros_per}/{cars_per} <= 1"
                )));
            }
            let mut out = Vec::new();
            let mut r = 1;
            while cars_per * r <= len_max {
                let len = cars_per * r;
                let k = zeros_per * r;
                let e = expected_length_k(len, k)?;
                out.push((len, e / BigInt::from(len)));
                r += 1;
            }
            Ok(out)
        }
    }
}
