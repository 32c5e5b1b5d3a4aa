//! Intervals with rational (or infinite) endpoints.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{PlError, Result};
use crate::rat::{fmt_rat, Rat};

/// An extended-rational endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Bound {
    pub fn fin(&self) -> Option<&Rat> {
        match self {
            Bound::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Fin(_))
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Fin(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

/// A nonempty, nondegenerate interval: lo < hi strictly, and an infinite end is
/// never closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalQ {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl IntervalQ {
    pub fn new(lo: Bound, hi: Bound, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo >= hi {
            return Err(PlError::InvalidInterval(format!(
                "need lo < hi, got [{lo}, {hi}]"
            )));
        }
        if (lo_closed && !lo.is_finite()) || (hi_closed && !hi.is_finite()) {
            return Err(PlError::InvalidInterval(
                "an infinite end cannot be closed".into(),
            ));
        }
        Ok(IntervalQ {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn open(a: Rat, b: Rat) -> Self {
        Self::new(Bound::Fin(a), Bound::Fin(b), false, false).expect("open interval")
    }

    pub fn closed(a: Rat, b: Rat) -> Self {
        Self::new(Bound::Fin(a), Bound::Fin(b), true, true).expect("closed interval")
    }

    /// `[a, b)`.
    pub fn half_open(a: Rat, b: Rat) -> Self {
        Self::new(Bound::Fin(a), Bound::Fin(b), true, false).expect("half-open interval")
    }

    pub fn all() -> Self {
        IntervalQ {
            lo: Bound::NegInf,
            hi: Bound::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Finite endpoints, or an error for unbounded intervals.
    pub fn finite_ends(&self) -> Result<(&Rat, &Rat)> {
        match (&self.lo, &self.hi) {
            (Bound::Fin(a), Bound::Fin(b)) => Ok((a, b)),
            _ => Err(PlError::UnboundedInterval(self.to_string())),
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above_lo = match &self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Fin(a) => {
                if self.lo_closed {
                    x >= a
                } else {
                    x > a
                }
            }
        };
        let below_hi = match &self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Fin(b) => {
                if self.hi_closed {
                    x <= b
                } else {
                    x < b
                }
            }
        };
        above_lo && below_hi
    }

    pub fn interior(&self) -> IntervalQ {
        IntervalQ {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closure(&self) -> IntervalQ {
        IntervalQ {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_closed: self.lo.is_finite(),
            hi_closed: self.hi.is_finite(),
        }
    }

    pub fn interior_contains(&self, x: &Rat) -> bool {
        self.interior().contains(x)
    }

    pub fn closure_contains(&self, x: &Rat) -> bool {
        self.closure().contains(x)
    }

    /// Set containment (respecting endpoint flags).
    pub fn is_subset_of(&self, other: &IntervalQ) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => other.lo_closed || !self.lo_closed || !self.lo.is_finite(),
        };
        let hi_ok = match self.hi.cmp(&other.hi) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => other.hi_closed || !self.hi_closed || !self.hi.is_finite(),
        };
        lo_ok && hi_ok
    }

    pub fn is_disjoint_from(&self, other: &IntervalQ) -> bool {
        // self entirely left of other?
        let left = match self.hi.cmp(&other.lo) {
            Ordering::Less => true,
            Ordering::Equal => !(self.hi_closed && other.lo_closed),
            Ordering::Greater => false,
        };
        let right = match other.hi.cmp(&self.lo) {
            Ordering::Less => true,
            Ordering::Equal => !(other.hi_closed && self.lo_closed),
            Ordering::Greater => false,
        };
        left || right
    }

    /// Same underlying point set as `other` (flag-aware only through the
    /// infinite-end convention; intervals are nondegenerate so flags matter).
    pub fn same_set(&self, other: &IntervalQ) -> bool {
        self == other
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn containment_and_flags() {
        let j = IntervalQ::half_open(rat(1, 1), rat(17, 16));
        assert!(j.contains(&rat(1, 1)));
        assert!(!j.contains(&rat(17, 16)));
        assert!(j.interior_contains(&rat(33, 32)));
        assert!(!j.interior_contains(&rat(1, 1)));
        assert!(j.closure_contains(&rat(17, 16)));
    }

    #[test]
    fn subset_and_disjoint() {
        let a = IntervalQ::open(rat(0, 1), rat(2, 1));
        let b = IntervalQ::closed(rat(0, 1), rat(2, 1));
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        let c = IntervalQ::half_open(rat(2, 1), rat(3, 1));
        assert!(a.is_disjoint_from(&c));
        assert!(!b.is_disjoint_from(&c));
        assert!(a.is_subset_of(&IntervalQ::all()));
    }

    #[test]
    fn invalid_intervals_rejected() {
        assert!(IntervalQ::new(Bound::Fin(rat(1, 1)), Bound::Fin(rat(1, 1)), true, true).is_err());
        assert!(IntervalQ::new(Bound::NegInf, Bound::Fin(rat(0, 1)), true, true).is_err());
    }
}
