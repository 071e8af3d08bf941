//! Randomized invariants over arrival sequences and count queries.

use proptest::prelude::*;

use mergepath_core::bijections::{max_heads_tails, phi, phi_inverse, step_map, step_map_inverse};
use mergepath_core::classes::class_size;
use mergepath_core::counting::{bounce_bounds, m_count_closed, m_count_recursive};
use mergepath_core::expectation::expected_length_k;
use mergepath_core::{simulate, ArrivalSequence};

fn arrival_sequence(max_len: usize) -> impl Strategy<Value = ArrivalSequence> {
    proptest::collection::vec(0u8..=1, 0..=max_len)
        .prop_map(|bits| ArrivalSequence::from_bits(bits).unwrap())
}

proptest! {
    #[test]
    fn simulation_invariants(b in arrival_sequence(64)) {
        let res = simulate(&b);
        let (n, m) = res.endpoint;
        prop_assert!(m >= n);
        prop_assert_eq!(n + m, b.len());
        prop_assert_eq!(res.right_lane.len(), m);
        prop_assert_eq!(res.left_lane.len(), n);

        // Lanes partition the cars in order.
        let mut all: Vec<usize> = res.right_lane.iter().chain(&res.left_lane).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (1..=b.len()).collect::<Vec<_>>());

        // Bounces are green cars in the right lane at touch positions.
        for &pos in &res.bounce_positions {
            prop_assert_eq!(b.bit(pos), 1);
            prop_assert!(res.right_lane.contains(&pos));
            prop_assert!(res.touch_positions.contains(&pos));
        }

        // The bounce count sits inside the predicted bounds.
        let bounds = bounce_bounds(b.len() as u64, b.zeros() as u64).unwrap();
        let count = res.bounce_positions.len() as u64;
        prop_assert!(bounds.lo <= count && count <= bounds.hi);
    }

    #[test]
    fn coin_map_round_trip(b in arrival_sequence(64)) {
        let c = phi(&b);
        prop_assert_eq!(max_heads_tails(&c), simulate(&b).r());
        prop_assert_eq!(phi_inverse(&c), b);
    }

    #[test]
    fn step_map_round_trip(b in arrival_sequence(32)) {
        if let Ok(image) = step_map(&b) {
            let (n, m) = simulate(&b).endpoint;
            prop_assert_eq!(simulate(&image).endpoint, (n - 1, m + 1));
            prop_assert_eq!(image.zeros(), b.zeros() + 2);
            prop_assert_eq!(step_map_inverse(&image).unwrap(), b);
        }
    }

    #[test]
    fn class_size_is_an_even_power_of_two(b in arrival_sequence(40)) {
        prop_assume!(!b.is_empty());
        let size = class_size(&b);
        prop_assert!(size.is_power_of_two());
        prop_assert_eq!(size % 2, 0);
    }

    #[test]
    fn count_formulas_agree(n in 0u64..24, extra in 0u64..24) {
        let m = n + extra;
        prop_assert_eq!(m_count_recursive(n, m), m_count_closed(n, m).unwrap());
    }

    #[test]
    fn expectation_dispatch_is_total(len in 1u64..60, k_frac in 0.0f64..=1.0) {
        let k = (len as f64 * k_frac) as u64;
        let e = expected_length_k(len, k).unwrap();
        // E is between len/2 and len: at least half the cars go right.
        let len_r = mergepath_core::expectation::Rational::from(num_bigint::BigInt::from(len));
        let half = len_r.clone() / num_bigint::BigInt::from(2);
        prop_assert!(e >= half && e <= len_r);
    }

    #[test]
    fn code_round_trip(len in 0u32..=20, code in 0u64..) {
        let code = code % (1u64 << len);
        let b = ArrivalSequence::from_code(len, code);
        prop_assert_eq!(b.code(), code);
        prop_assert_eq!(b.len(), len as usize);
    }
}
