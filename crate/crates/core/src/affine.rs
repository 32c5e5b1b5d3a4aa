//! Orientation-preserving affine maps of the line, used for conjugation and for
//! transporting maps between intervals.

use num_traits::{One, Zero};

use crate::error::{PlError, Result};
use crate::interval::{Bound, IntervalQ};
use crate::rat::Rat;

/// x ↦ slope·x + offset with slope > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    slope: Rat,
    offset: Rat,
}

impl Affine {
    pub fn new(slope: Rat, offset: Rat) -> Result<Self> {
        if slope <= Rat::zero() {
            return Err(PlError::InvalidMap(format!(
                "affine slope must be positive, got {slope}"
            )));
        }
        Ok(Affine { slope, offset })
    }

    pub fn identity() -> Self {
        Affine {
            slope: Rat::one(),
            offset: Rat::zero(),
        }
    }

    pub fn translation(t: Rat) -> Self {
        Affine {
            slope: Rat::one(),
            offset: t,
        }
    }

    /// The unique orientation-preserving affine map sending [a,b] onto [c,d].
    pub fn between(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<Self> {
        if a >= b || c >= d {
            return Err(PlError::InvalidMap(
                "affine transport needs nondegenerate intervals".into(),
            ));
        }
        let slope = (d - c) / (b - a);
        let offset = c - &slope * a;
        Affine::new(slope, offset)
    }

    /// Transport between the interiors of two bounded intervals.
    pub fn between_intervals(from: &IntervalQ, to: &IntervalQ) -> Result<Self> {
        let (a, b) = from.finite_ends()?;
        let (c, d) = to.finite_ends()?;
        Affine::between(a, b, c, d)
    }

    pub fn slope(&self) -> &Rat {
        &self.slope
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.offset
    }

    pub fn apply_bound(&self, b: &Bound) -> Bound {
        match b {
            Bound::Fin(x) => Bound::Fin(self.apply(x)),
            other => other.clone(),
        }
    }

    pub fn apply_interval(&self, j: &IntervalQ) -> IntervalQ {
        IntervalQ {
            lo: self.apply_bound(&j.lo),
            hi: self.apply_bound(&j.hi),
            lo_closed: j.lo_closed,
            hi_closed: j.hi_closed,
        }
    }

    pub fn inverse(&self) -> Affine {
        let slope = Rat::one() / &self.slope;
        let offset = -(&self.offset / &self.slope);
        Affine { slope, offset }
    }

    /// `self` followed by `other` (left-to-right: x ↦ other(self(x))).
    pub fn then(&self, other: &Affine) -> Affine {
        Affine {
            slope: &other.slope * &self.slope,
            offset: &other.slope * &self.offset + &other.offset,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.offset.is_zero()
    }

    pub fn is_translation(&self) -> Option<&Rat> {
        self.slope.is_one().then_some(&self.offset)
    }
}
