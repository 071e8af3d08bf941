//! Exact counts of merging paths over arbitrary-precision integers.
//!
//! `M(n, m)` counts merging paths from the origin to `(n, m)` (left-lane
//! length `n`, right-lane length `m`); `M(n, m, k)` additionally fixes the
//! number of zeros `k` in the arrival sequence. Both come in a recursive
//! flavor (total, memoized, 0 outside the feasible region) and a closed
//! flavor (which enforces its hypotheses and errors outside them).

use alloc::collections::BTreeMap;
use alloc::format;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient with the convention `C(n, k) = 0` for `k < 0` or
/// `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Inclusive bounds on the number of bounces over all sequences of length
/// `len` with exactly `k` zeros.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BounceBounds {
    pub lo: u64,
    pub hi: u64,
}

/// Number of merging paths ending at `(n, m)`, by the four-branch
/// recurrence. Returns 0 for `m < n`.
pub fn m_count_recursive(n: u64, m: u64) -> BigUint {
    let mut memo = BTreeMap::new();
    m_rec(n, m, &mut memo)
}

fn m_rec(n: u64, m: u64, memo: &mut BTreeMap<(u64, u64), BigUint>) -> BigUint {
    if m < n {
        return BigUint::zero();
    }
    if n == 0 {
        return if m == 0 {
            BigUint::one()
        } else {
            BigUint::from(2u32)
        };
    }
    if let Some(v) = memo.get(&(n, m)) {
        return v.clone();
    }
    let v = if m == n {
        m_rec(n - 1, m, memo)
    } else if m == n + 1 {
        m_rec(n - 1, m, memo) + BigUint::from(2u32) * m_rec(n, m - 1, memo)
    } else {
        m_rec(n - 1, m, memo) + m_rec(n, m - 1, memo)
    };
    memo.insert((n, m), v.clone());
    v
}

/// Closed form for the number of merging paths ending at `(n, m)`:
/// `2 C(m+n, n)` strictly above the diagonal, `C(2n, n)` on it.
pub fn m_count_closed(n: u64, m: u64) -> Result<BigUint> {
    if m < n {
        return Err(Error::Domain(format!(
            "paths never end below the diagonal: need m >= n, got n={n}, m={m}"
        )));
    }
    Ok(if m == n {
        binomial(2 * n, n as i64)
    } else {
        BigUint::from(2u32) * binomial(m + n, n as i64)
    })
}

/// Number of merging paths ending at `(n, m)` with exactly `k` zeros, by
/// the five-branch recurrence. Returns 0 outside the feasible region.
pub fn m_count_k_recursive(n: u64, m: u64, k: u64) -> BigUint {
    let mut memo = BTreeMap::new();
    mk_rec(n, m, k, &mut memo)
}

fn mk_rec(n: u64, m: u64, k: u64, memo: &mut BTreeMap<(u64, u64, u64), BigUint>) -> BigUint {
    if m < n || k > m {
        return BigUint::zero();
    }
    if n == 0 {
        // Lane-0 paths are 0^k (m = k) and 1 0^(k) (m = k + 1); the empty
        // path at (0, 0) is excluded by the recurrence's base case.
        let hit = (k >= 1 && (m == k || m == k + 1)) || (k == 0 && m == 1);
        return if hit { BigUint::one() } else { BigUint::zero() };
    }
    if let Some(v) = memo.get(&(n, m, k)) {
        return v.clone();
    }
    let v = if m == n {
        mk_rec(n - 1, m, k, memo)
    } else if m == n + 1 {
        let mut acc = mk_rec(n - 1, m, k, memo) + mk_rec(n, m - 1, k, memo);
        if k > 0 {
            acc += mk_rec(n, m - 1, k - 1, memo);
        }
        acc
    } else {
        let mut acc = mk_rec(n - 1, m, k, memo);
        if k > 0 {
            acc += mk_rec(n, m - 1, k - 1, memo);
        }
        acc
    };
    memo.insert((n, m, k), v.clone());
    v
}

/// Closed forms for `M(n, m, k)`, split over three regions:
///
/// * `m > k` and `m > n`: `C(m+n, n-(m-k)+1) - C(m+n, n-(m-k)-1)`;
/// * `m = n >= k`: `C(2n, k) - C(2n, k-1)`;
/// * `m = k`: the ballot number `C(k+n, n) - C(k+n, n-1)`.
///
/// Queries outside all three regions are domain errors.
pub fn m_count_k_closed(n: u64, m: u64, k: u64) -> Result<BigUint> {
    let n_i = n as i64;
    let k_i = k as i64;
    if m > k && m > n {
        let shift = (m - k) as i64;
        Ok(binomial(m + n, n_i - shift + 1) - binomial(m + n, n_i - shift - 1))
    } else if m == n && n >= k {
        Ok(binomial(2 * n, k_i) - binomial(2 * n, k_i - 1))
    } else if m == k {
        Ok(binomial(k + n, n_i) - binomial(k + n, n_i - 1))
    } else {
        Err(Error::Domain(format!(
            "no closed form at n={n}, m={m}, k={k}: need (m > k and m > n), (m = n >= k), or (m = k)"
        )))
    }
}

/// `|T|`: number of sequences of length `len` with exactly `k` zeros whose
/// paths have at least `bounces_at_least` bounces. With
/// `m = k + bounces_at_least` and `n = len - m`, requires `m > k` and
/// `m > n`; the count is `C(m+n, n-(m-k)+1)`.
pub fn t_count(len: u64, bounces_at_least: u64, k: u64) -> Result<BigUint> {
    let m = k + bounces_at_least;
    if m > len {
        return Err(Error::Domain(format!(
            "k + bounces exceeds the sequence length: len={len}, k={k}, bounces={bounces_at_least}"
        )));
    }
    let n = len - m;
    if m <= k {
        return Err(Error::Domain(format!(
            "need at least one required bounce (m > k): len={len}, k={k}, bounces={bounces_at_least}"
        )));
    }
    if m <= n {
        return Err(Error::Domain(format!(
            "need m > n: len={len} gives m={m}, n={n}"
        )));
    }
    Ok(binomial(m + n, n as i64 - (m - k) as i64 + 1))
}

/// Bounce-count bounds for sequences of length `len` with `k` zeros:
/// `lo = max(0, ceil((len - 2k)/2))`, `hi = floor((len - k + 1)/2)`.
pub fn bounce_bounds(len: u64, k: u64) -> Result<BounceBounds> {
    if k > len {
        return Err(Error::Domain(format!(
            "cannot place {k} zeros in a length-{len} sequence"
        )));
    }
    let lo_raw = len as i64 - 2 * k as i64;
    let lo = if lo_raw > 0 { ((lo_raw + 1) / 2) as u64 } else { 0 };
    let hi = (len - k).div_ceil(2);
    Ok(BounceBounds { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn m_recursive_base_cases() {
        assert_eq!(m_count_recursive(0, 0), big(1));
        assert_eq!(m_count_recursive(1, 2), big(6));
        assert_eq!(m_count_recursive(3, 5), big(112));
        assert_eq!(m_count_recursive(4, 2), big(0));
    }

    #[test]
    fn m_closed_values() {
        assert_eq!(m_count_closed(4, 4).unwrap(), big(70));
        assert_eq!(m_count_closed(5, 5).unwrap(), big(252));
        assert_eq!(m_count_closed(0, 3).unwrap(), big(2));
        assert!(m_count_closed(3, 2).is_err());
    }

    #[test]
    fn m_k_recursive_values() {
        assert_eq!(m_count_k_recursive(2, 3, 1), big(5));
        assert_eq!(m_count_k_recursive(1, 4, 2), big(1));
        assert_eq!(m_count_k_recursive(0, 1, 0), big(1));
        assert_eq!(m_count_k_recursive(0, 0, 0), big(0));
    }

    #[test]
    fn m_k_closed_values() {
        assert_eq!(m_count_k_closed(4, 5, 2).unwrap(), big(35));
        assert_eq!(m_count_k_closed(5, 5, 3).unwrap(), big(75));
        assert_eq!(m_count_k_closed(6, 6, 6).unwrap(), big(132));
        assert_eq!(m_count_k_closed(7, 7, 6).unwrap(), big(1001));
        // Outside all three regions.
        assert!(m_count_k_closed(3, 2, 1).is_err());
    }

    #[test]
    fn closed_regions_agree_on_overlap() {
        // m = n = k lies in both the diagonal and the ballot region.
        for n in 0..8u64 {
            let diag = binomial(2 * n, n as i64) - binomial(2 * n, n as i64 - 1);
            assert_eq!(m_count_k_closed(n, n, n).unwrap(), diag);
        }
    }

    #[test]
    fn t_count_values() {
        // len=9, >=3 bounces, k=2 -> m=5, n=4 -> C(9,2) = 36.
        assert_eq!(t_count(9, 3, 2).unwrap(), big(36));
        assert!(t_count(8, 0, 4).is_err()); // m = k
        assert!(t_count(6, 2, 1).is_err()); // m = n
    }

    #[test]
    fn bounce_bounds_values() {
        assert_eq!(bounce_bounds(8, 4).unwrap(), BounceBounds { lo: 0, hi: 2 });
        assert_eq!(bounce_bounds(5, 1).unwrap(), BounceBounds { lo: 2, hi: 2 });
        assert_eq!(bounce_bounds(6, 0).unwrap(), BounceBounds { lo: 3, hi: 3 });
        assert_eq!(bounce_bounds(6, 6).unwrap(), BounceBounds { lo: 0, hi: 0 });
        assert!(bounce_bounds(3, 4).is_err());
    }
}
