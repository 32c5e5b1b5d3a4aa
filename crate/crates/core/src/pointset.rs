//! Finite unions of closed intervals (possibly degenerate points or rays),
//! used for exact fixed-point sets; complements yield open support components.

use crate::interval::{Bound, IntervalQ};
use crate::rat::Rat;

/// A finite union of closed sets of the forms [a,b], {a}, (-inf,a], [a,+inf),
/// or all of R, kept sorted, disjoint and non-touching.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedChunks {
    chunks: Vec<(Bound, Bound)>,
}

impl ClosedChunks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all() -> Self {
        ClosedChunks {
            chunks: vec![(Bound::NegInf, Bound::PosInf)],
        }
    }

    pub fn push(&mut self, lo: Bound, hi: Bound) {
        debug_assert!(lo <= hi);
        self.chunks.push((lo, hi));
    }

    pub fn push_point(&mut self, x: Rat) {
        let b = Bound::Fin(x);
        self.chunks.push((b.clone(), b));
    }

    pub fn extend_from(&mut self, other: &ClosedChunks) {
        self.chunks.extend(other.chunks.iter().cloned());
    }

    /// Sorts and merges overlapping or touching chunks.
    pub fn normalize(&mut self) {
        self.chunks.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut out: Vec<(Bound, Bound)> = Vec::with_capacity(self.chunks.len());
        for (lo, hi) in self.chunks.drain(..) {
            match out.last_mut() {
                // closed sets touching at a point merge
                Some((_, phi)) if *phi >= lo => {
                    if hi > *phi {
                        *phi = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        self.chunks = out;
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.chunks == [(Bound::NegInf, Bound::PosInf)]
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let b = Bound::Fin(x.clone());
        self.chunks.iter().any(|(lo, hi)| *lo <= b && b <= *hi)
    }

    pub fn chunks(&self) -> &[(Bound, Bound)] {
        &self.chunks
    }

    /// Open complement, as maximal open intervals left to right.
    /// Call only on a normalized value.
    pub fn complement(&self) -> Vec<IntervalQ> {
        let mut out = Vec::new();
        let mut cursor = Bound::NegInf;
        for (lo, hi) in &self.chunks {
            if cursor < *lo {
                out.push(IntervalQ {
                    lo: cursor,
                    hi: lo.clone(),
                    lo_closed: false,
                    hi_closed: false,
                });
            }
            cursor = hi.clone();
        }
        if cursor < Bound::PosInf {
            out.push(IntervalQ {
                lo: cursor,
                hi: Bound::PosInf,
                lo_closed: false,
                hi_closed: false,
            });
        }
        out
    }
}
