//! Arrival sequences and the deterministic merging simulation.
//!
//! An arrival sequence is a binary string: `0` is a car that always chooses
//! the right lane, `1` is a car that chooses the shorter lane with ties
//! going right. Car positions are 1-based everywhere.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A binary string of car choices. Positions are 1-based in all interfaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrivalSequence {
    bits: Vec<u8>,
}

impl ArrivalSequence {
    /// The empty sequence (no cars).
    pub fn empty() -> Self {
        ArrivalSequence { bits: Vec::new() }
    }

    /// Builds a sequence from raw bits; every element must be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Invalid(format!("bit value {b} is not 0 or 1")));
        }
        Ok(ArrivalSequence { bits })
    }

    /// Decodes a sequence of length `len` from an integer, with bit `i`
    /// (least significant first) holding the choice of car `i + 1`.
    pub fn from_code(len: u32, code: u64) -> Self {
        let bits = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
        ArrivalSequence { bits }
    }

    /// The integer encoding inverse to [`ArrivalSequence::from_code`].
    /// Only defined for lengths up to 64.
    pub fn code(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    /// Number of cars.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The choice of car `pos` (1-based).
    pub fn bit(&self, pos: usize) -> u8 {
        self.bits[pos - 1]
    }

    /// Number of zeros (red cars), written `k` throughout.
    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    /// Number of ones (green cars).
    pub fn ones(&self) -> usize {
        self.len() - self.zeros()
    }

    /// The bitwise complement.
    pub fn complement(&self) -> Self {
        ArrivalSequence {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }
}

impl FromStr for ArrivalSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Invalid(format!(
                    "arrival sequences are strings over 0/1, found {other:?}"
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| ArrivalSequence { bits })
    }
}

impl fmt::Display for ArrivalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ArrivalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArrivalSequence({self})")
    }
}

/// The parity vector of an arrival sequence: starts at 0 and toggles
/// immediately after every bounce.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParityVector {
    bits: Vec<u8>,
}

impl ParityVector {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The parity seen by car `pos` (1-based).
    pub fn bit(&self, pos: usize) -> u8 {
        self.bits[pos - 1]
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityVector({self})")
    }
}

/// One step of a merging path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    /// A car entering the left lane (x += 1).
    Right,
    /// A car entering the right lane (y += 1).
    Up,
    /// A green car forced into the right lane from the diagonal (y += 1).
    UpBounce,
}

/// The decorated lattice path of an arrival sequence, starting at (0, 0).
/// x counts the left lane, y the right lane; the path never crosses below
/// the diagonal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MergingPath {
    pub steps: Vec<Step>,
}

impl MergingPath {
    /// The final lattice point `(n, m)`: left-lane length, right-lane length.
    pub fn endpoint(&self) -> (usize, usize) {
        let n = self.steps.iter().filter(|s| matches!(s, Step::Right)).count();
        (n, self.steps.len() - n)
    }
}

/// Full outcome of simulating one arrival sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MergeResult {
    /// 1-based indices of cars that ended in the right lane, in order.
    pub right_lane: Vec<usize>,
    /// 1-based indices of cars that ended in the left lane, in order.
    pub left_lane: Vec<usize>,
    /// Indices of green cars forced into the right lane from the diagonal.
    pub bounce_positions: Vec<usize>,
    /// Indices `i` such that the lanes were equal just before car `i` chose.
    pub touch_positions: Vec<usize>,
    /// Parity vector: toggles right after each bounce.
    pub parity: ParityVector,
    /// Final `(n, m)`: left-lane length, right-lane length.
    pub endpoint: (usize, usize),
}

impl MergeResult {
    /// Right-lane length, written `r(b)`.
    pub fn r(&self) -> usize {
        self.right_lane.len()
    }
}

/// Runs the merging rule over an arrival sequence.
///
/// Car `i` goes right when its bit is 0, or when its bit is 1 and the lanes
/// are equal (a bounce); a green car goes left exactly when the left lane is
/// strictly shorter.
pub fn simulate(b: &ArrivalSequence) -> MergeResult {
    let len = b.len();
    let mut right_lane = Vec::new();
    let mut left_lane = Vec::new();
    let mut bounce_positions = Vec::new();
    let mut touch_positions = Vec::new();
    let mut parity = Vec::with_capacity(len);
    let mut p = 0u8;
    let mut right = 0usize;
    let mut left = 0usize;

    for (i, &bit) in b.bits().iter().enumerate() {
        let pos = i + 1;
        let on_diagonal = left == right;
        if on_diagonal {
            touch_positions.push(pos);
        }
        parity.push(p);
        if bit == 0 || on_diagonal {
            right += 1;
            right_lane.push(pos);
            if bit == 1 {
                bounce_positions.push(pos);
                p ^= 1;
            }
        } else {
            left += 1;
            left_lane.push(pos);
        }
    }

    MergeResult {
        right_lane,
        left_lane,
        bounce_positions,
        touch_positions,
        parity: ParityVector { bits: parity },
        endpoint: (left, right),
    }
}

/// The parity vector of `b` (starts at 0, toggles after every bounce).
pub fn parity_vector(b: &ArrivalSequence) -> ParityVector {
    simulate(b).parity
}

/// The decorated lattice path of `b`.
pub fn merging_path(b: &ArrivalSequence) -> MergingPath {
    let mut steps = Vec::with_capacity(b.len());
    let mut right = 0usize;
    let mut left = 0usize;
    for &bit in b.bits() {
        let on_diagonal = left == right;
        if bit == 0 || on_diagonal {
            steps.push(if bit == 1 { Step::UpBounce } else { Step::Up });
            right += 1;
        } else {
            steps.push(Step::Right);
            left += 1;
        }
    }
    MergingPath { steps }
}

///// The touch vector `t(b)`: positions where the path rests on the diagonal
/// just before the car chooses. Position 1 is always a touch when cars exist.
pub fn touch_positions(b: &ArrivalSequence) -> Vec<usize> {
    simulate(b).touch_positions
}

/// Right-lane length without materializing the full result.
pub(crate) fn right_lane_len(bits: &[u8]) -> usize {
    let mut right = 0usize;
    let mut left = 0usize;
    for &bit in bits {
        if bit == 0 || left == right {
            right += 1;
        } else {
            left += 1;
        }
    }
    right
}

/// Parses an arrival sequence, rejecting anything outside '0'/'1'.
pub fn parse(s: &str) -> Result<ArrivalSequence> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(s: &str) -> ArrivalSequence {
        s.parse().unwrap()
    }

    #[test]
    fn figure_one_sequence() {
        let r = simulate(&seq("00111001"));
        assert_eq!(r.right_lane, vec![1, 2, 5, 6, 7]);
        assert_eq!(r.left_lane, vec![3, 4, 8]);
        assert_eq!(r.r(), 5);
        assert_eq!(r.bounce_positions, vec![5]);
        assert_eq!(r.endpoint, (3, 5));
    }

    #[test]
    fn empty_sequence() {
        let r = simulate(&ArrivalSequence::empty());
        assert!(r.right_lane.is_empty());
        assert!(r.left_lane.is_empty());
        assert!(r.bounce_positions.is_empty());
        assert!(r.touch_positions.is_empty());
        assert!(r.parity.is_empty());
        assert_eq!(r.endpoint, (0, 0));
    }

    #[test]
    fn all_green_alternates() {
        let r = simulate(&seq("11110"));
        assert_eq!(r.right_lane, vec![1, 3, 5]);
    }

    #[test]
    fn replayed_by_hand() {
        // 110100: bounce at 1; rights at 1,3,5,6; touches where lanes tie.
        let r = simulate(&seq("110100"));
        assert_eq!(r.right_lane, vec![1, 3, 5, 6]);
        assert_eq!(r.left_lane, vec![2, 4]);
        assert_eq!(r.bounce_positions, vec![1]);
        assert_eq!(r.touch_positions, vec![1, 3, 5]);
        assert_eq!(r.endpoint, (2, 4));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_vector(&seq("01110111")).to_string(), "00011110");
        assert_eq!(parity_vector(&seq("1001110011")).to_string(), "0111111111");
        assert_eq!(parity_vector(&seq("0000000")).to_string(), "0000000");
    }

    #[test]
    fn path_figure_one() {
        use Step::*;
        let p = merging_path(&seq("00111001"));
        assert_eq!(p.steps, vec![Up, Up, Right, Right, UpBounce, Up, Up, Right]);
        assert_eq!(p.endpoint(), (3, 5));
    }

    #[test]
    fn path_single_red_car() {
        let p = merging_path(&seq("0"));
        assert_eq!(p.steps, vec![Step::Up]);
    }

    #[test]
    fn path_bounce_sources() {
        // Bounces at cars 7 and 11, leaving the diagonal at (3,3) and (5,5).
        let p = merging_path(&seq("010011101111"));
        let mut x = 0usize;
        let mut y = 0usize;
        let mut bounce_sources = vec![];
        for s in &p.steps {
            match s {
                Step::Right => x += 1,
                Step::Up => y += 1,
                Step::UpBounce => {
                    bounce_sources.push((x, y));
                    y += 1;
                }
            }
        }
        assert_eq!(bounce_sources, vec![(3, 3), (5, 5)]);
    }

    #[test]
    fn touch_examples() {
        assert_eq!(touch_positions(&seq("111100")), vec![1, 3, 5]);
        assert_eq!(touch_positions(&seq("001100")), vec![1, 5]);
        assert_eq!(touch_positions(&seq("0000")), vec![1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("0102").is_err());
        assert!(ArrivalSequence::from_bits(vec![0, 2]).is_err());
    }

    #[test]
    fn code_round_trip() {
        let b = seq("011010");
        assert_eq!(ArrivalSequence::from_code(6, b.code()), b);
    }
}
