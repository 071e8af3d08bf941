//! Structure-preserving maps between arrival sequences and other objects:
//! the coin-flip map, the suffix-reflection map on bounce classes, and the
//! step map that trades a late bounce for two zeros.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arrival::{parity_vector, simulate, ArrivalSequence};
use crate::error::{Error, Result};

/// A sequence of coin flips. `H` encodes 0 and `T` encodes 1 in arithmetic
/// contexts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoinSequence {
    flips: Vec<u8>,
}

impl CoinSequence {
    pub fn from_flips(flips: Vec<u8>) -> Result<Self> {
        if let Some(&b) = flips.iter().find(|&&b| b > 1) {
            return Err(Error::Invalid(format!("flip value {b} is not 0 (H) or 1 (T)")));
        }
        Ok(CoinSequence { flips })
    }

    pub fn flips(&self) -> &[u8] {
        &self.flips
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn heads(&self) -> usize {
        self.flips.iter().filter(|&&f| f == 0).count()
    }

    pub fn tails(&self) -> usize {
        self.len() - self.heads()
    }
}

impl FromStr for CoinSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'H' => Ok(0),
                'T' => Ok(1),
                other => Err(Error::Invalid(format!(
                    "coin sequences are strings over H/T, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|flips| CoinSequence { flips })
    }
}

impl fmt::Display for CoinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.flips {
            write!(f, "{}", if b == 0 { 'H' } else { 'T' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoinSequence({self})")
    }
}

/// The larger of the head count and the tail count.
pub fn max_heads_tails(c: &CoinSequence) -> usize {
    c.heads().max(c.tails())
}

/// Maps an arrival sequence to coin flips by adding its parity vector
/// mod 2. The image's max head/tail count equals the right-lane length.
pub fn phi(b: &ArrivalSequence) -> CoinSequence {
    let p = parity_vector(b);
    let flips = b
        .bits()
        .iter()
        .zip(p.bits())
        .map(|(&bi, &pi)| bi ^ pi)
        .collect();
    CoinSequence { flips }
}

/// Inverts [`phi`] by reconstructing the parity vector from the flips
/// alone: the parity toggles each time the running tail count first
/// outnumbers the heads, then back when heads first outnumber tails, and
/// so on.
pub fn phi_inverse(c: &CoinSequence) -> ArrivalSequence {
    let mut bits = Vec::with_capacity(c.len());
    let mut parity = 0u8;
    let mut diff = 0i64; // tails minus heads over the scanned prefix
    for &flip in c.flips() {
        bits.push(flip ^ parity);
        diff += if flip == 1 { 1 } else { -1 };
        if (parity == 0 && diff > 0) || (parity == 1 && diff < 0) {
            parity ^= 1;
        }
    }
    ArrivalSequence::from_bits(bits).expect("bits are 0/1 by construction")
}

/// Splits `b` right after its `s`-th bounce and complements the suffix.
/// On the intended domain (sequences with at least `s = m - k` bounces,
/// `m > k`, `m > n`) this is the reflection bijection onto the sequences
/// with `n - (m - k) + 1` zeros.
pub fn psi(b: &ArrivalSequence, s: usize) -> Result<ArrivalSequence> {
    if s == 0 {
        return Err(Error::Domain("the split index s must be positive".into()));
    }
    let bounces = simulate(b).bounce_positions;
    let Some(&split) = bounces.get(s - 1) else {
        return Err(Error::Domain(format!(
            "sequence {b} has only {} bounces, needs at least {s}",
            bounces.len()
        )));
    };
    let mut bits = b.bits().to_vec();
    for bit in &mut bits[split..] {
        *bit = 1 - *bit;
    }
    Ok(ArrivalSequence::from_bits(bits).expect("bits stay 0/1"))
}

/// The inverse direction of [`psi`]: the same split-and-complement
/// construction, which is an involution at a fixed split index on the
/// intended domains.
pub fn psi_inverse(b: &ArrivalSequence, s: usize) -> Result<ArrivalSequence> {
    psi(b, s)
}

/// Replaces the two consecutive 1s feeding the last off-origin bounce with
/// 0s, sending a path ending at `(n, m)` with `k` zeros to one ending at
/// `(n - 1, m + 1)` with `k + 2` zeros. Requires `m > k + 1` and
/// `m > n > 0`.
pub fn step_map(b: &ArrivalSequence) -> Result<ArrivalSequence> {
    let result = simulate(b);
    let (n, m) = result.endpoint;
    let k = b.zeros();
    if !(m > k + 1 && m > n && n > 0) {
        return Err(Error::Domain(format!(
            "step map needs m > k+1 and m > n > 0; {b} ends at ({n}, {m}) with k={k}"
        )));
    }
    let &last = result
        .bounce_positions
        .iter()
        .rfind(|&&pos| pos > 1)
        .expect("m - k > 1 forces a bounce after position 1");
    debug_assert_eq!(b.bit(last - 1), 1, "a non-origin bounce is preceded by a 1");
    let mut bits = b.bits().to_vec();
    bits[last - 2] = 0;
    bits[last - 1] = 0;
    Ok(ArrivalSequence::from_bits(bits).expect("bits stay 0/1"))
}

/// Undoes [`step_map`]: finds the last lattice point at distance one above
/// the diagonal, requires the next two entries to be 0s, and turns them
/// back into 1s.
pub fn step_map_inverse(b: &ArrivalSequence) -> Result<ArrivalSequence> {
    let mut diff = 0i64; // right minus left
    let mut last_at_one = None;
    for (i, &bit) in b.bits().iter().enumerate() {
        let goes_right = bit == 0 || diff == 0;
        diff += if goes_right { 1 } else { -1 };
        if diff == 1 {
            last_at_one = Some(i + 1); // cars consumed so far
        }
    }
    let Some(j) = last_at_one else {
        return Err(Error::Domain(format!(
            "{b} never sits at distance one above the diagonal"
        )));
    };
    let bits = b.bits();
    if j + 2 > bits.len() || bits[j] != 0 || bits[j + 1] != 0 {
        return Err(Error::Domain(format!(
            "{b}: the last distance-one visit is not followed by two 0s"
        )));
    }
    let mut restored = bits.to_vec();
    restored[j] = 1;
    restored[j + 1] = 1;
    let candidate = ArrivalSequence::from_bits(restored).expect("bits stay 0/1");
    // The candidate must actually map back; anything else is outside the image.
    match step_map(&candidate) {
        Ok(image) if image == *b => Ok(candidate),
        _ => Err(Error::Domain(format!("{b} is not in the image of the step map"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn seq(s: &str) -> ArrivalSequence {
        s.parse().unwrap()
    }

    fn coins(s: &str) -> CoinSequence {
        s.parse().unwrap()
    }

    #[test]
    fn phi_table_rows() {
        assert_eq!(phi(&seq("0110")).to_string(), "HTTT");
        assert_eq!(phi(&seq("1110")).to_string(), "THHH");
        assert_eq!(phi(&seq("0101")).to_string(), "HTHT");
        assert_eq!(max_heads_tails(&phi(&seq("0110"))), 3);
    }

    #[test]
    fn phi_inverse_rows() {
        assert_eq!(phi_inverse(&coins("HTHT")), seq("0101"));
        assert_eq!(phi_inverse(&coins("THHT")), seq("1111"));
        assert_eq!(phi_inverse(&coins("HHHH")), seq("0000"));
    }

    #[test]
    fn max_counts() {
        assert_eq!(max_heads_tails(&coins("HHTT")), 2);
        assert_eq!(max_heads_tails(&coins("")), 0);
        assert_eq!(max_heads_tails(&coins("TTTT")), 4);
    }

    #[test]
    fn psi_needs_enough_bounces() {
        assert!(psi(&seq("0000"), 1).is_err());
        assert!(psi(&seq("1100"), 2).is_err());
        assert!(psi(&seq("1100"), 0).is_err());
    }

    #[test]
    fn psi_fixed_point_on_trailing_bounce() {
        // Single green car: bounce at 1, empty suffix to complement.
        let b = seq("1");
        assert_eq!(psi(&b, 1).unwrap(), b);
    }

    #[test]
    fn psi_double_application_is_identity() {
        let b = seq("110110");
        let s = 2;
        let once = psi(&b, s).unwrap();
        // The suffix complement may change later bounces, but re-splitting at
        // the same bounce index restores the original.
        assert_eq!(psi(&once, s).unwrap(), b);
    }

    #[test]
    fn step_map_figure_pair() {
        let b = seq("01101110");
        let image = step_map(&b).unwrap();
        assert_eq!(image, seq("01101000"));
        assert_eq!(simulate(&image).endpoint, (2, 6));
        assert_eq!(image.zeros(), b.zeros() + 2);
        assert_eq!(step_map_inverse(&image).unwrap(), b);
    }

    #[test]
    fn step_map_rejections() {
        assert!(step_map(&seq("0011")).is_err()); // m = n
        assert!(step_map(&seq("0000")).is_err()); // n = 0
        assert!(step_map_inverse(&seq("0000")).is_err());
    }
}
