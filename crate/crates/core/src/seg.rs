//! Piecewise-linear segment maps: strictly increasing PL bijections between
//! two bounded closed intervals, stored as node lists.

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::rat::Rat;

/// A strictly increasing PL bijection [a, b] → [c, d], given by at least two
/// nodes (x, y) with both coordinates strictly increasing. Canonical form has
/// no collinear interior node, so equality of node lists is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSeg {
    pts: Vec<(Rat, Rat)>,
}

fn slope(a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PlSeg {
    pub fn from_points(pts: Vec<(Rat, Rat)>) -> Result<Self> {
        if pts.len() < 2 {
            return Err(PlError::InvalidMap(
                "a segment map needs at least two nodes".into(),
            ));
        }
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PlError::InvalidMap(format!(
                    "segment nodes must increase strictly in both coordinates: ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(Self::canonical(pts))
    }

    fn canonical(pts: Vec<(Rat, Rat)>) -> Self {
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(pts.len());
        for p in pts {
            while out.len() >= 2
                && slope(&out[out.len() - 2], &out[out.len() - 1])
                    == slope(&out[out.len() - 1], &p)
            {
                out.pop();
            }
            out.push(p);
        }
        PlSeg { pts: out }
    }

    pub fn identity_on(a: Rat, b: Rat) -> Result<Self> {
        Self::from_points(vec![(a.clone(), a), (b.clone(), b)])
    }

    pub fn affine_on(a: &Affine, lo: Rat, hi: Rat) -> Result<Self> {
        let ylo = a.apply(&lo);
        let yhi = a.apply(&hi);
        Self::from_points(vec![(lo, ylo), (hi, yhi)])
    }

    pub fn points(&self) -> &[(Rat, Rat)] {
        &self.pts
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (&self.pts[0].0, &self.pts[self.pts.len() - 1].0)
    }

    pub fn image(&self) -> (&Rat, &Rat) {
        (&self.pts[0].1, &self.pts[self.pts.len() - 1].1)
    }

    pub fn evaluate(&self, x: &Rat) -> Result<Rat> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return Err(PlError::InvalidMap(format!(
                "point {x} is outside the segment domain [{a}, {b}]"
            )));
        }
        // x ≥ a, so at least one node is ≤ x; clamp so x = b lands in the last segment
        let i = (self.pts.partition_point(|p| p.0 <= *x) - 1).min(self.pts.len() - 2);
        let (x0, y0) = &self.pts[i];
        let (x1, y1) = &self.pts[i + 1];
        Ok(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
    }

    pub fn evaluate_inverse(&self, y: &Rat) -> Result<Rat> {
        self.inverse().evaluate(y)
    }

    /// The segment followed by an everywhere-defined PL map.
    pub fn then_etpl(&self, e: &Etpl) -> PlSeg {
        let (c, d) = self.image();
        let mut xs: Vec<Rat> = self.pts.iter().map(|p| p.0.clone()).collect();
        for (bx, _) in e.breakpoints() {
            if bx > c && bx < d {
                xs.push(self.inverse().evaluate(bx).expect("breakpoint inside image"));
            }
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = e.evaluate(&self.evaluate(&x).expect("node inside domain"));
                (x, y)
            })
            .collect();
        PlSeg::canonical(pts)
    }

    pub fn then_affine(&self, a: &Affine) -> PlSeg {
        let pts = self
            .pts
            .iter()
            .map(|(x, y)| (x.clone(), a.apply(y)))
            .collect();
        PlSeg::canonical(pts)
    }

    pub fn before_affine(&self, a: &Affine) -> PlSeg {
        let inv = a.inverse();
        let pts = self
            .pts
            .iter()
            .map(|(x, y)| (inv.apply(x), y.clone()))
            .collect();
        PlSeg::canonical(pts)
    }

    /// The segment followed by another segment map whose domain contains this
    /// segment's image.
    pub fn then_seg(&self, other: &PlSeg) -> Result<PlSeg> {
        let (c, d) = self.image();
        let (a, b) = other.domain();
        if a > c || b < d {
            return Err(PlError::InvalidMap(format!(
                "segment composition: image [{c}, {d}] is not inside the next domain [{a}, {b}]"
            )));
        }
        let mut xs: Vec<Rat> = self.pts.iter().map(|p| p.0.clone()).collect();
        let inv = self.inverse();
        for (bx, _) in &other.pts {
            if bx > c && bx < d {
                xs.push(inv.evaluate(bx)?);
            }
        }
        xs.sort();
        xs.dedup();
        let mut pts = Vec::with_capacity(xs.len());
        for x in xs {
            let y = other.evaluate(&self.evaluate(&x)?)?;
            pts.push((x, y));
        }
        Ok(PlSeg::canonical(pts))
    }

    /// Joins two segment maps sharing an endpoint node into one.
    pub fn glue(&self, next: &PlSeg) -> Result<PlSeg> {
        let last = &self.pts[self.pts.len() - 1];
        let first = &next.pts[0];
        if last != first {
            return Err(PlError::InvalidMap(format!(
                "segments cannot be glued: ({}, {}) then ({}, {})",
                last.0, last.1, first.0, first.1
            )));
        }
        let mut pts = self.pts.clone();
        pts.extend(next.pts[1..].iter().cloned());
        PlSeg::from_points(pts)
    }

    pub fn inverse(&self) -> PlSeg {
        let pts = self.pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        PlSeg::canonical(pts)
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2 && self.pts.iter().all(|(x, y)| x == y)
    }

    pub fn is_affine(&self) -> Option<Affine> {
        if self.pts.len() != 2 {
            return None;
        }
        Affine::between(&self.pts[0].0, &self.pts[1].0, &self.pts[0].1, &self.pts[1].1).ok()
    }

    /// The map equal to this segment on its domain and the identity outside
    /// (requires the two endpoints to be fixed).
    pub fn extend_by_identity(&self) -> Result<Etpl> {
        let (a, b) = self.domain();
        let (c, d) = self.image();
        if a != c || b != d {
            return Err(PlError::Restriction(format!(
                "segment endpoints are not fixed: [{a}, {b}] → [{c}, {d}]"
            )));
        }
        Etpl::from_breakpoints(self.pts.clone(), crate::rat::zero(), crate::rat::zero())
    }

    pub fn restrict(&self, a: &Rat, b: &Rat) -> Result<PlSeg> {
        let (lo, hi) = self.domain();
        if a < lo || b > hi || a >= b {
            return Err(PlError::InvalidInterval(format!("[{a}, {b}]")));
        }
        let mut pts = vec![(a.clone(), self.evaluate(a)?)];
        for (x, y) in &self.pts {
            if x > a && x < b {
                pts.push((x.clone(), y.clone()));
            }
        }
        pts.push((b.clone(), self.evaluate(b)?));
        Ok(PlSeg::canonical(pts))
    }
}
