//! The partition of `[1, 2)` into sixteen half-open slots of width `1/16`.
//!
//! Slot `i` (for `1 <= i <= 16`) is `J_i = [1 + (i-1)/16, 1 + i/16)`.  The
//! seed pair of the square-root construction translates blocks of these slots
//! by exactly four positions, and the planted maps live in the interiors of
//! individual slots, so everything downstream is phrased in terms of this
//! partition.

use crate::interval::IntervalQ;
use crate::rat::{rat_int, Rat};

/// Number of slots.
pub const SLOT_COUNT: usize = 16;

/// Left endpoint of slot `i`: `1 + (i-1)/16`.
pub fn slot_inf(i: usize) -> Rat {
    assert!((1..=SLOT_COUNT).contains(&i), "slot index out of range: {i}");
    rat_int(1) + Rat::new((i as i64 - 1).into(), 16.into())
}

/// Right endpoint of slot `i`: `1 + i/16`.
pub fn slot_sup(i: usize) -> Rat {
    assert!((1..=SLOT_COUNT).contains(&i), "slot index out of range: {i}");
    rat_int(1) + Rat::new((i as i64).into(), 16.into())
}

/// Slot `J_i` as a half-open interval `[1 + (i-1)/16, 1 + i/16)`.
pub fn slot(i: usize) -> IntervalQ {
    IntervalQ::half_open(slot_inf(i), slot_sup(i))
}

/// Closure of slot `i`.
pub fn slot_closed(i: usize) -> IntervalQ {
    IntervalQ::closed(slot_inf(i), slot_sup(i))
}

/// Interior of slot `i`.
pub fn slot_open(i: usize) -> IntervalQ {
    IntervalQ::open(slot_inf(i), slot_sup(i))
}

/// Half-open hull `[inf J_lo, sup J_hi)` of the consecutive run of slots
/// `J_lo, ..., J_hi`.
pub fn slot_run(lo: usize, hi: usize) -> IntervalQ {
    assert!(lo <= hi, "empty slot run {lo}..{hi}");
    IntervalQ::half_open(slot_inf(lo), slot_sup(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn slots_tile_the_unit_interval_from_one() {
        assert_eq!(slot_inf(1), rat_int(1));
        assert_eq!(slot_sup(SLOT_COUNT), rat_int(2));
        for i in 1..SLOT_COUNT {
            assert_eq!(slot_sup(i), slot_inf(i + 1));
        }
        for i in 1..=SLOT_COUNT {
            assert_eq!(slot_sup(i) - slot_inf(i), rat(1, 16));
            assert!(slot(i).contains(&slot_inf(i)));
            assert!(!slot(i).contains(&slot_sup(i)));
        }
    }

    #[test]
    fn named_slots_used_by_the_construction() {
        assert_eq!(slot(6), IntervalQ::half_open(rat(21, 16), rat(22, 16)));
        assert_eq!(slot(10), IntervalQ::half_open(rat(25, 16), rat(26, 16)));
        assert_eq!(slot(14), IntervalQ::half_open(rat(29, 16), rat(30, 16)));
        assert_eq!(slot_run(1, 11), IntervalQ::half_open(rat_int(1), rat(27, 16)));
        assert_eq!(slot_run(2, 12), IntervalQ::half_open(rat(17, 16), rat(28, 16)));
    }

    #[test]
    fn translating_by_a_quarter_carries_slots_four_positions() {
        for i in 1..=12usize {
            assert_eq!(slot_inf(i) + rat(1, 4), slot_inf(i + 4));
            assert_eq!(slot_sup(i) + rat(1, 4), slot_sup(i + 4));
        }
    }

    #[test]
    #[should_panic(expected = "slot index out of range")]
    fn slot_zero_is_rejected() {
        let _ = slot(0);
    }
}
