//! Brute-force ground truth: exhaustive enumeration of all arrival
//! sequences of a given length, independent recounts of every claim the
//! closed formulas make, and seeded Monte Carlo estimation past the
//! exhaustive range.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arrival::{right_lane_len, simulate, ArrivalSequence, MergeResult};
use crate::bijections::{max_heads_tails, phi, phi_inverse, psi, step_map, step_map_inverse};
use crate::classes::partition_capped;
use crate::counting::{
    bounce_bounds, m_count_closed, m_count_k_closed, m_count_k_recursive, m_count_recursive,
    t_count,
};
use crate::error::{Error, Result};
use crate::expectation::{expected_length, right_lane_sum, right_lane_sum_k};
use crate::trails::{longest_trail, rho_image, Edge};

/// Largest length [`enumerate`] will walk (2^24 sequences).
pub const ENUMERATION_CAP: u32 = 24;

/// Deterministic walk over all sequences of one length, numeric ascending
/// (bit `i` of the code is car `i + 1`).
pub struct Enumeration {
    len: u32,
    next: u64,
    end: u64,
}

impl Iterator for Enumeration {
    type Item = (ArrivalSequence, MergeResult);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let b = ArrivalSequence::from_code(self.len, self.next);
        self.next += 1;
        let result = simulate(&b);
        Some((b, result))
    }
}

/// All `2^len` sequences with their simulation results.
pub fn enumerate(len: u32) -> Result<Enumeration> {
    if len > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "enumerating 2^{len} sequences exceeds the cap of 2^{ENUMERATION_CAP}"
        )));
    }
    Ok(Enumeration {
        len,
        next: 0,
        end: 1u64 << len,
    })
}

/// One of `2^shard_bits` equal slices of [`enumerate`], keyed by the
/// high-order bits of the code. The shards' multiset union is the full
/// enumeration.
pub fn enumerate_shard(len: u32, shard_bits: u32, shard_index: u64) -> Result<Enumeration> {
    if len > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "enumerating 2^{len} sequences exceeds the cap of 2^{ENUMERATION_CAP}"
        )));
    }
    if shard_bits > len {
        return Err(Error::Invalid(format!(
            "cannot split {len} bits into 2^{shard_bits} shards"
        )));
    }
    if shard_index >= 1u64 << shard_bits {
        return Err(Error::Invalid(format!(
            "shard index {shard_index} out of range for {shard_bits} shard bits"
        )));
    }
    let width = 1u64 << (len - shard_bits);
    Ok(Enumeration {
        len,
        next: shard_index * width,
        end: (shard_index + 1) * width,
    })
}

/// Outcome of one verified claim.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub params: String,
    pub pass: bool,
    pub counterexample: Option<String>,
    pub compared: u64,
}

impl VerificationReport {
    fn pass(claim: &str, params: String, compared: u64) -> Self {
        VerificationReport {
            claim: String::from(claim),
            params,
            pass: true,
            counterexample: None,
            compared,
        }
    }

    fn fail(claim: &str, params: String, counterexample: String, compared: u64) -> Self {
        VerificationReport {
            claim: String::from(claim),
            params,
            pass: false,
            counterexample: Some(counterexample),
            compared,
        }
    }
}

struct Tally {
    by_endpoint: BTreeMap<(u64, u64), BigUint>,
    by_endpoint_k: BTreeMap<(u64, u64, u64), BigUint>,
    lane_sum: BigUint,
    lane_sum_k: BTreeMap<u64, BigUint>,
    bounce_range_k: BTreeMap<u64, (u64, u64)>,
}

fn tally(len: u32) -> Result<Tally> {
    let mut t = Tally {
        by_endpoint: BTreeMap::new(),
        by_endpoint_k: BTreeMap::new(),
        lane_sum: BigUint::zero(),
        lane_sum_k: BTreeMap::new(),
        bounce_range_k: BTreeMap::new(),
    };
    for (b, result) in enumerate(len)? {
        let (n, m) = result.endpoint;
        let (n, m) = (n as u64, m as u64);
        let k = b.zeros() as u64;
        let one = BigUint::from(1u32);
        *t.by_endpoint.entry((n, m)).or_default() += &one;
        *t.by_endpoint_k.entry((n, m, k)).or_default() += &one;
        let r = BigUint::from(result.r());
        t.lane_sum += &r;
        *t.lane_sum_k.entry(k).or_default() += &r;
        let bounces = result.bounce_positions.len() as u64;
        t.bounce_range_k
            .entry(k)
            .and_modify(|(lo, hi)| {
                *lo = (*lo).min(bounces);
                *hi = (*hi).max(bounces);
            })
            .or_insert((bounces, bounces));
    }
    Ok(t)
}

/// Recounts every path-count, lane-sum, tail-count, and bounce-bound claim
/// against raw enumeration for all endpoints with `n <= n_max`,
/// `m <= m_max`, `k <= k_max`.
pub fn verify_counts(n_max: u64, m_max: u64, k_max: u64) -> Result<Vec<VerificationReport>> {
    let len_max = (n_max + m_max).min(ENUMERATION_CAP as u64) as u32;
    let tallies: Vec<Tally> = (0..=len_max).map(tally).collect::<Result<_>>()?;

    let params = format!("n <= {n_max}, m <= {m_max}, k <= {k_max}");
    let mut reports = Vec::new();

    // Endpoint counts: brute = recursive = closed.
    let mut compared = 0u64;
    let mut bad = None;
    'mn: for n in 0..=n_max {
        for m in n..=m_max.max(n) {
            if m < n || m > m_max || n + m > len_max as u64 {
                continue;
            }
            let brute = tallies[(n + m) as usize]
                .by_endpoint
                .get(&(n, m))
                .cloned()
                .unwrap_or_default();
            let rec = m_count_recursive(n, m);
            let closed = m_count_closed(n, m)?;
            compared += 1;
            if brute != rec || rec != closed {
                bad = Some(format!("(n={n}, m={m}): brute {brute}, recursive {rec}, closed {closed}"));
                break 'mn;
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("endpoint-counts", params.clone(), compared),
        Some(c) => VerificationReport::fail("endpoint-counts", params.clone(), c, compared),
    });

    // Endpoint counts by zero count: brute = recursive, = closed in-region.
    let mut compared = 0u64;
    let mut bad = None;
    'mnk: for n in 0..=n_max {
        for m in n..=m_max {
            if n + m > len_max as u64 {
                continue;
            }
            for k in 0..=k_max.min(m) {
                if (n, m) == (0, 0) {
                    // The per-k recurrence deliberately excludes the empty path.
                    continue;
                }
                let brute = tallies[(n + m) as usize]
                    .by_endpoint_k
                    .get(&(n, m, k))
                    .cloned()
                    .unwrap_or_default();
                let rec = m_count_k_recursive(n, m, k);
                compared += 1;
                if brute != rec {
                    bad = Some(format!("(n={n}, m={m}, k={k}): brute {brute}, recursive {rec}"));
                    break 'mnk;
                }
                if let Ok(closed) = m_count_k_closed(n, m, k) {
                    if closed != rec {
                        bad = Some(format!("(n={n}, m={m}, k={k}): recursive {rec}, closed {closed}"));
                        break 'mnk;
                    }
                }
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("endpoint-zero-counts", params.clone(), compared),
        Some(c) => VerificationReport::fail("endpoint-zero-counts", params.clone(), c, compared),
    });

    // Summing the per-k counts recovers the endpoint count (the empty path
    // is counted by the plain recurrence only).
    let mut compared = 0u64;
    let mut bad = None;
    for n in 0..=n_max {
        for m in n..=m_max {
            if (n, m) == (0, 0) {
                continue;
            }
            let total: BigUint = (0..=m).map(|k| m_count_k_recursive(n, m, k)).sum();
            compared += 1;
            if total != m_count_recursive(n, m) {
                bad = Some(format!("(n={n}, m={m}): sum over k gives {total}"));
                break;
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("zero-count-sum", params.clone(), compared),
        Some(c) => VerificationReport::fail("zero-count-sum", params.clone(), c, compared),
    });

    // Tail counts: |T| as a telescoping sum of endpoint counts, and the
    // endpoint count as a difference of consecutive tail counts.
    let mut compared = 0u64;
    let mut bad = None;
    'tail: for len in 1..=len_max as u64 {
        for k in 0..=k_max.min(len) {
            for s in 1..=len {
                let m = k + s;
                if m > len || m <= len - m {
                    continue;
                }
                let n = len - m;
                let direct = t_count(len, s, k)?;
                let summed: BigUint = (0..=n)
                    .map(|i| m_count_k_recursive(n - i, m + i, k))
                    .sum();
                compared += 1;
                if direct != summed {
                    bad = Some(format!(
                        "t_count({len}, {s}, {k}) = {direct}, telescoped {summed}"
                    ));
                    break 'tail;
                }
                if let Ok(next) = t_count(len, s + 1, k) {
                    // "at least s" minus "at least s + 1" is "exactly s".
                    let diff = direct - next;
                    if diff != m_count_k_recursive(n, m, k) {
                        bad = Some(format!(
                            "t_count difference at (len={len}, s={s}, k={k}) gives {diff}"
                        ));
                        break 'tail;
                    }
                }
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("tail-counts", params.clone(), compared),
        Some(c) => VerificationReport::fail("tail-counts", params.clone(), c, compared),
    });

    // Lane sums against the formula module, overall and per zero count.
    let mut compared = 0u64;
    let mut bad = None;
    'sums: for len in 0..=len_max as u64 {
        let t = &tallies[len as usize];
        compared += 1;
        if t.lane_sum != right_lane_sum(len) {
            bad = Some(format!(
                "len {len}: enumerated lane sum {} vs formula {}",
                t.lane_sum,
                right_lane_sum(len)
            ));
            break;
        }
        for k in 0..=len {
            let brute = t.lane_sum_k.get(&k).cloned().unwrap_or_default();
            compared += 1;
            if brute != right_lane_sum_k(len, k)? {
                bad = Some(format!("len {len}, k {k}: enumerated lane sum {brute}"));
                break 'sums;
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("lane-sums", params.clone(), compared),
        Some(c) => VerificationReport::fail("lane-sums", params.clone(), c, compared),
    });

    // Observed bounce counts hit the predicted inclusive bounds exactly.
    let mut compared = 0u64;
    let mut bad = None;
    'bounds: for len in 1..=len_max as u64 {
        let t = &tallies[len as usize];
        for k in 0..=len {
            let want = bounce_bounds(len, k)?;
            let &(lo, hi) = t.bounce_range_k.get(&k).expect("every k occurs");
            compared += 1;
            if (lo, hi) != (want.lo, want.hi) {
                bad = Some(format!(
                    "len {len}, k {k}: observed bounce range [{lo}, {hi}], predicted [{}, {}]",
                    want.lo, want.hi
                ));
                break 'bounds;
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("bounce-bounds", params, compared),
        Some(c) => VerificationReport::fail("bounce-bounds", params, c, compared),
    });

    Ok(reports)
}

/// Exhaustively certifies the coin-flip map, the reflection map, the step
/// map, the edge map, and the class-size law for every length up to
/// `len_max`.
pub fn verify_bijections(len_max: u32) -> Result<Vec<VerificationReport>> {
    let params = format!("len <= {len_max}");
    let mut reports = Vec::new();

    // Coin-flip map: a bijection that turns r(b) into max(heads, tails).
    let mut compared = 0u64;
    let mut bad = None;
    'coin: for len in 0..=len_max {
        let mut seen = BTreeSet::new();
        for (b, result) in enumerate(len)? {
            let c = phi(&b);
            compared += 1;
            if max_heads_tails(&c) != result.r() {
                bad = Some(format!("{b}: r = {} but flips {c}", result.r()));
                break 'coin;
            }
            if phi_inverse(&c) != b {
                bad = Some(format!("{b}: round trip through {c} fails"));
                break 'coin;
            }
            if !seen.insert(c) {
                bad = Some(format!("collision at {b}"));
                break 'coin;
            }
        }
        if seen.len() as u64 != 1u64 << len {
            bad = Some(format!("length {len}: image has {} flips", seen.len()));
            break;
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("coin-flip-map", params.clone(), compared),
        Some(c) => VerificationReport::fail("coin-flip-map", params.clone(), c, compared),
    });

    // Reflection map: for every (s, k), splitting after bounce s maps the
    // k-zero sequences with at least s bounces bijectively onto the
    // sequences with len - k - 2s + 1 zeros.
    let mut compared = 0u64;
    let mut bad = None;
    'refl: for len in 1..=len_max as u64 {
        for k in 0..len {
            for s in 1..=len {
                let m = k + s;
                if m > len || 2 * m <= len {
                    continue; // needs m > k and m > n
                }
                let target_zeros = (len + 1).checked_sub(k + 2 * s);
                let Some(target_zeros) = target_zeros else {
                    continue;
                };
                let mut image = BTreeSet::new();
                let mut domain = 0u64;
                for (b, result) in enumerate(len as u32)? {
                    if b.zeros() as u64 != k || (result.bounce_positions.len() as u64) < s {
                        continue;
                    }
                    domain += 1;
                    let out = psi(&b, s as usize)?;
                    compared += 1;
                    if out.zeros() as u64 != target_zeros {
                        bad = Some(format!(
                            "psi({b}, {s}) = {out} has {} zeros, want {target_zeros}",
                            out.zeros()
                        ));
                        break 'refl;
                    }
                    if psi(&out, s as usize)? != b {
                        bad = Some(format!("psi({b}, {s}) does not fold back"));
                        break 'refl;
                    }
                    if !image.insert(out.code()) {
                        bad = Some(format!("psi collision from {b} at s = {s}"));
                        break 'refl;
                    }
                }
                let codomain = crate::counting::binomial(len, target_zeros as i64);
                if BigUint::from(domain) != codomain {
                    bad = Some(format!(
                        "len {len}, k {k}, s {s}: domain {domain} vs codomain {codomain}"
                    ));
                    break 'refl;
                }
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("reflection-map", params.clone(), compared),
        Some(c) => VerificationReport::fail("reflection-map", params.clone(), c, compared),
    });

    // Step map: a bijection from paths at (n, m) with k zeros (m > k+1,
    // m > n > 0) to paths at (n-1, m+1) with k+2 zeros.
    let mut compared = 0u64;
    let mut bad = None;
    'step: for len in 2..=len_max as u64 {
        let mut sources: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
        let mut images: BTreeMap<(usize, usize, usize), BTreeSet<u64>> = BTreeMap::new();
        for (b, result) in enumerate(len as u32)? {
            let (n, m) = result.endpoint;
            let k = b.zeros();
            if !(m > k + 1 && m > n && n > 0) {
                continue;
            }
            let out = step_map(&b)?;
            let out_result = simulate(&out);
            compared += 1;
            if out_result.endpoint != (n - 1, m + 1) || out.zeros() != k + 2 {
                bad = Some(format!("step_map({b}) = {out} lands at the wrong endpoint"));
                break 'step;
            }
            if step_map_inverse(&out)? != b {
                bad = Some(format!("step_map({b}) does not invert"));
                break 'step;
            }
            *sources.entry((n, m, k)).or_default() += 1;
            if !images.entry((n - 1, m + 1, k + 2)).or_default().insert(out.code()) {
                bad = Some(format!("step_map collision from {b}"));
                break 'step;
            }
        }
        if bad.is_some() {
            break;
        }
        for ((n, m, k), count) in &sources {
            let image_size = images
                .get(&(n - 1, m + 1, k + 2))
                .map(BTreeSet::len)
                .unwrap_or(0) as u64;
            let target = m_count_k_recursive((n - 1) as u64, (m + 1) as u64, (k + 2) as u64);
            if *count != image_size || BigUint::from(*count) != target {
                bad = Some(format!(
                    "classes ({n}, {m}, {k}) -> ({}, {}, {}): {count} sources, {image_size} images, {target} targets",
                    n - 1, m + 1, k + 2
                ));
                break 'step;
            }
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("step-map", params.clone(), compared),
        Some(c) => VerificationReport::fail("step-map", params.clone(), c, compared),
    });

    // Edge map: the per-zero-position images are disjoint and together
    // cover exactly the canonical longest trail's edge set.
    let mut compared = 0u64;
    let mut bad = None;
    'edges: for len in 1..=len_max as usize {
        let mut union: BTreeSet<Edge> = BTreeSet::new();
        let mut total = 0usize;
        for p in 1..=len {
            let mut bits = alloc::vec![1u8; len];
            bits[p - 1] = 0;
            let b = ArrivalSequence::from_bits(bits).expect("bits stay 0/1");
            let edges = rho_image(&b)?;
            total += edges.len();
            compared += edges.len() as u64;
            if !union.is_disjoint(&edges) {
                bad = Some(format!("length {len}: images overlap at p = {p}"));
                break 'edges;
            }
            union.extend(edges);
        }
        let trail_edges = longest_trail(len).edge_set();
        if union != trail_edges || total != trail_edges.len() {
            bad = Some(format!(
                "length {len}: image union has {total} edges, trail has {}",
                trail_edges.len()
            ));
            break;
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("edge-map", params.clone(), compared),
        Some(c) => VerificationReport::fail("edge-map", params.clone(), c, compared),
    });

    // Class sizes: the color-blind partition covers everything with
    // power-of-two, even class sizes of the predicted exponent.
    let mut compared = 0u64;
    let mut bad = None;
    'classes: for len in 1..=len_max as usize {
        let classes = partition_capped(len, len)?;
        let mut covered = 0u64;
        for class in &classes {
            compared += 1;
            let t = class.touch_vector.len();
            if class.members.len() != 1 << t || class.members.len() % 2 != 0 {
                bad = Some(format!(
                    "length {len}: class of {} has size {}",
                    class.representative,
                    class.members.len()
                ));
                break 'classes;
            }
            covered += class.members.len() as u64;
        }
        if covered != 1u64 << len {
            bad = Some(format!("length {len}: classes cover {covered} sequences"));
            break;
        }
    }
    reports.push(match bad {
        None => VerificationReport::pass("class-sizes", params, compared),
        Some(c) => VerificationReport::fail("class-sizes", params, c, compared),
    });

    Ok(reports)
}

/// A seeded sample-mean estimate of the expected right-lane length.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    /// Distance from the exact expectation in standard errors.
    pub fn sigmas_from(&self, exact: f64) -> f64 {
        if self.std_error == 0.0 {
            return if self.mean == exact { 0.0 } else { f64::INFINITY };
        }
        libm::fabs(self.mean - exact) / self.std_error
    }
}

/// Samples `samples` uniform arrival sequences of length `len` with a
/// ChaCha12 generator seeded from `seed` and averages the right-lane
/// length. Identical inputs reproduce identical estimates.
pub fn monte_carlo_expected(len: u32, samples: u64, seed: u64) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::Invalid("need at least one sample".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut bytes = alloc::vec![0u8; (len as usize).div_ceil(8)];
    let mut bits = alloc::vec![0u8; len as usize];
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        rng.fill_bytes(&mut bytes);
        for (i, bit) in bits.iter_mut().enumerate() {
            *bit = (bytes[i / 8] >> (i % 8)) & 1;
        }
        let r = right_lane_len(&bits) as f64;
        sum += r;
        sum_sq += r * r;
    }
    let n = samples as f64;
    let mean = sum / n;
    let std_error = if samples > 1 {
        let variance = (sum_sq - n * mean * mean) / (n - 1.0);
        libm::sqrt(variance.max(0.0) / n)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_error,
        samples,
        seed,
    })
}

/// Exact expectation as a float, for comparing against estimates.
pub fn exact_expected_f64(len: u64) -> f64 {
    use num_traits::ToPrimitive;
    expected_length(len).to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_complete() {
        let items: Vec<_> = enumerate(2).unwrap().collect();
        assert_eq!(items.len(), 4);
        let rs: Vec<usize> = items.iter().map(|(_, res)| res.r()).collect();
        assert_eq!(rs, alloc::vec![2, 2, 1, 1]);

        let empty: Vec<_> = enumerate(0).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].0.is_empty());

        assert!(enumerate(25).is_err());
    }

    #[test]
    fn shards_cover_everything() {
        let mut codes = BTreeSet::new();
        for shard in 0..4u64 {
            for (b, _) in enumerate_shard(5, 2, shard).unwrap() {
                assert!(codes.insert(b.code()));
            }
        }
        assert_eq!(codes.len(), 32);
        assert!(enumerate_shard(5, 6, 0).is_err());
        assert!(enumerate_shard(5, 2, 4).is_err());
    }

    #[test]
    fn small_count_verification_passes() {
        for report in verify_counts(5, 5, 5).unwrap() {
            assert!(report.pass, "{report:?}");
            assert!(report.compared > 0, "{report:?}");
        }
    }

    #[test]
    fn small_bijection_verification_passes() {
        for report in verify_bijections(7).unwrap() {
            assert!(report.pass, "{report:?}");
            assert!(report.compared > 0, "{report:?}");
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = monte_carlo_expected(12, 2000, 99).unwrap();
        let b = monte_carlo_expected(12, 2000, 99).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_expected(12, 2000, 100).unwrap();
        assert_ne!(a.mean, c.mean);
        assert!(a.sigmas_from(exact_expected_f64(12)) < 4.0, "{a:?}");
        assert!(monte_carlo_expected(12, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_wide_sequences() {
        // Lengths past 64 bits exercise the byte-filling path.
        let est = monte_carlo_expected(100, 4000, 7).unwrap();
        assert!(est.sigmas_from(exact_expected_f64(100)) < 4.0, "{est:?}");
    }
}
