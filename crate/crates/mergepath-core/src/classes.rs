//! Color-blind equivalence classes: sequences grouped by their right-lane
//! vector. A class frees exactly the bits at diagonal-touch positions and
//! therefore has size `2^t`.

use alloc::format;
use alloc::vec::Vec;

use crate::arrival::{simulate, touch_positions, ArrivalSequence};
use crate::error::{Error, Result};

/// Largest `len` that [`partition`] will materialize eagerly.
pub const PARTITION_CAP: usize = 20;

/// One equivalence class under "same right-lane vector".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorBlindClass {
    /// Lexicographically smallest member (all touch bits 0).
    pub representative: ArrivalSequence,
    /// 1-based positions of the right-lane cars, shared by every member.
    pub right_lane_vector: Vec<usize>,
    /// 1-based positions where the path leaves the diagonal; the free bits.
    pub touch_vector: Vec<usize>,
    /// All members, in ascending numeric code order.
    pub members: Vec<ArrivalSequence>,
}

impl ColorBlindClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Builds the class of `b` by ranging over all bit choices at its touch
/// positions. Every member simulates to the same right lane.
pub fn class_of(b: &ArrivalSequence) -> ColorBlindClass {
    let touches = touch_positions(b);
    let result = simulate(b);
    let mut members = Vec::with_capacity(1 << touches.len());
    for mask in 0u64..(1 << touches.len()) {
        let mut bits = b.bits().to_vec();
        for (idx, &pos) in touches.iter().enumerate() {
            bits[pos - 1] = ((mask >> idx) & 1) as u8;
        }
        members.push(ArrivalSequence::from_bits(bits).expect("bits stay 0/1"));
    }
    members.sort_unstable_by_key(ArrivalSequence::code);
    let mut representative_bits = b.bits().to_vec();
    for &pos in &touches {
        representative_bits[pos - 1] = 0;
    }
    ColorBlindClass {
        representative: ArrivalSequence::from_bits(representative_bits).expect("bits stay 0/1"),
        right_lane_vector: result.right_lane,
        touch_vector: touches,
        members,
    }
}

/// `2^t(b)`, the size of the class of `b`; even for every nonempty
/// sequence because position 1 is always a touch.
pub fn class_size(b: &ArrivalSequence) -> u64 {
    1u64 << touch_positions(b).len()
}

/// Splits all `2^len` sequences into color-blind classes, ordered by the
/// numeric code of each class representative.
pub fn partition(len: usize) -> Result<Vec<ColorBlindClass>> {
    partition_capped(len, PARTITION_CAP)
}

/// [`partition`] with an explicit length cap.
pub fn partition_capped(len: usize, cap: usize) -> Result<Vec<ColorBlindClass>> {
    if len > cap {
        return Err(Error::Resource(format!(
            "partition of 2^{len} sequences exceeds the cap of {cap}"
        )));
    }
    let total: u64 = 1 << len;
    let mut seen = alloc::vec![false; total as usize];
    let mut classes = Vec::new();
    for code in 0..total {
        if seen[code as usize] {
            continue;
        }
        let class = class_of(&ArrivalSequence::from_code(len as u32, code));
        for member in &class.members {
            seen[member.code() as usize] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn seq(s: &str) -> ArrivalSequence {
        s.parse().unwrap()
    }

    #[test]
    fn table_blocks() {
        let c = class_of(&seq("010100"));
        assert_eq!(c.size(), 8);
        assert_eq!(c.right_lane_vector, vec![1, 3, 5, 6]);

        let c = class_of(&seq("000000"));
        assert_eq!(c.size(), 2);
        assert_eq!(c.members, vec![seq("000000"), seq("100000")]);

        assert_eq!(class_of(&seq("001100")).size(), 4);
        assert_eq!(class_of(&seq("001100")).touch_vector, vec![1, 5]);
    }

    #[test]
    fn sizes() {
        assert_eq!(class_size(&seq("010101")), 8);
        assert_eq!(class_size(&seq("010010")), 4);
        assert_eq!(class_size(&seq("0")), 2);
        assert_eq!(class_size(&seq("1")), 2);
    }

    #[test]
    fn representative_is_smallest() {
        for code in 0..64u64 {
            let c = class_of(&ArrivalSequence::from_code(6, code));
            assert_eq!(c.representative, c.members[0]);
            assert!(c
                .members
                .iter()
                .all(|m| m.code() >= c.representative.code()));
        }
    }

    #[test]
    fn members_share_right_lane() {
        for code in 0..128u64 {
            let c = class_of(&ArrivalSequence::from_code(7, code));
            for m in &c.members {
                assert_eq!(simulate(m).right_lane, c.right_lane_vector);
            }
            assert_eq!(c.size() as u64, class_size(&c.representative));
        }
    }

    #[test]
    fn six_car_partition() {
        let classes = partition(6).unwrap();
        assert_eq!(classes.len(), 20);
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &classes {
            *histogram.entry(c.size()).or_default() += 1;
        }
        assert_eq!(histogram, BTreeMap::from([(2, 12), (4, 6), (8, 2)]));
        let total: usize = classes.iter().map(ColorBlindClass::size).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn trivial_partitions() {
        let classes = partition(1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].size(), 2);

        let classes = partition(0).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].size(), 1);
    }

    #[test]
    fn ten_car_partition_sums() {
        let classes = partition(10).unwrap();
        let total: usize = classes.iter().map(ColorBlindClass::size).sum();
        assert_eq!(total, 1024);
        assert!(classes.iter().all(|c| c.size().is_power_of_two()));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(partition_capped(5, 4).is_err());
    }
}
