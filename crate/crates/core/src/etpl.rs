//! Eventually-translation piecewise-linear homeomorphisms of the line.
//!
//! A map is stored as a finite list of breakpoints (x, y), strictly increasing
//! in both coordinates, together with the translation offsets it applies to the
//! left of the first breakpoint and to the right of the last. The stored form
//! is canonical — no breakpoint is redundant — so structural equality decides
//! functional equality.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::interval::{Bound, IntervalQ};
use crate::pointset::ClosedChunks;
use crate::rat::Rat;
use crate::seg::PlSeg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Etpl {
    bps: Vec<(Rat, Rat)>,
    left: Rat,
    right: Rat,
}

fn slope(a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl Etpl {
    pub fn identity() -> Self {
        Etpl {
            bps: Vec::new(),
            left: Rat::zero(),
            right: Rat::zero(),
        }
    }

    pub fn translation(t: Rat) -> Self {
        Etpl {
            bps: Vec::new(),
            left: t.clone(),
            right: t,
        }
    }

    /// Builds a map from raw breakpoints and end offsets, validating the
    /// homeomorphism invariants and reducing to canonical form.
    pub fn from_breakpoints(bps: Vec<(Rat, Rat)>, left: Rat, right: Rat) -> Result<Self> {
        if bps.is_empty() {
            if left != right {
                return Err(PlError::InvalidMap(
                    "a breakpoint-free map is a translation; offsets must agree".into(),
                ));
            }
            return Ok(Etpl {
                bps,
                left,
                right,
            });
        }
        for w in bps.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PlError::InvalidMap(format!(
                    "breakpoints must increase strictly in both coordinates: ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let first = &bps[0];
        let last = &bps[bps.len() - 1];
        if first.1 != &first.0 + &left {
            return Err(PlError::InvalidMap(format!(
                "first breakpoint ({}, {}) is inconsistent with left offset {left}",
                first.0, first.1
            )));
        }
        if last.1 != &last.0 + &right {
            return Err(PlError::InvalidMap(format!(
                "last breakpoint ({}, {}) is inconsistent with right offset {right}",
                last.0, last.1
            )));
        }
        Ok(Self::canonical(bps, left, right))
    }

    /// A map equal to the identity outside [a, b], with the given interior
    /// breakpoints on (a, b).
    pub fn supported_on(a: Rat, b: Rat, interior: Vec<(Rat, Rat)>) -> Result<Self> {
        let mut bps = Vec::with_capacity(interior.len() + 2);
        bps.push((a.clone(), a));
        bps.extend(interior);
        bps.push((b.clone(), b));
        Self::from_breakpoints(bps, Rat::zero(), Rat::zero())
    }

    fn canonical(bps: Vec<(Rat, Rat)>, left: Rat, right: Rat) -> Self {
        // remove interior breakpoints with equal incident slopes
        let mut pts: Vec<(Rat, Rat)> = Vec::with_capacity(bps.len());
        for p in bps {
            while pts.len() >= 2
                && slope(&pts[pts.len() - 2], &pts[pts.len() - 1])
                    == slope(&pts[pts.len() - 1], &p)
            {
                pts.pop();
            }
            pts.push(p);
        }
        // an end breakpoint whose incident slope is 1 continues the translation
        while pts.len() >= 2 && slope(&pts[0], &pts[1]).is_one() {
            pts.remove(0);
        }
        while pts.len() >= 2 && slope(&pts[pts.len() - 2], &pts[pts.len() - 1]).is_one() {
            pts.pop();
        }
        if pts.len() == 1 {
            // every slope was 1, so the map is the translation by `left`
            debug_assert_eq!(left, right);
            pts.clear();
        }
        Etpl {
            bps: pts,
            left,
            right,
        }
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.bps
    }

    pub fn left_offset(&self) -> &Rat {
        &self.left
    }

    pub fn right_offset(&self) -> &Rat {
        &self.right
    }

    pub fn is_identity(&self) -> bool {
        self.bps.is_empty() && self.left.is_zero()
    }

    pub fn as_translation(&self) -> Option<&Rat> {
        self.bps.is_empty().then_some(&self.left)
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        if self.bps.is_empty() {
            return x + &self.left;
        }
        if *x <= self.bps[0].0 {
            return x + &self.left;
        }
        let n = self.bps.len();
        if *x >= self.bps[n - 1].0 {
            return x + &self.right;
        }
        // index of the segment start: last breakpoint with bp.x <= x
        let i = self.bps.partition_point(|p| p.0 <= *x) - 1;
        let (x0, y0) = &self.bps[i];
        let (x1, y1) = &self.bps[i + 1];
        y0 + (x - x0) * (y1 - y0) / (x1 - x0)
    }

    pub fn evaluate_inverse(&self, y: &Rat) -> Rat {
        if self.bps.is_empty() {
            return y - &self.left;
        }
        if *y <= self.bps[0].1 {
            return y - &self.left;
        }
        let n = self.bps.len();
        if *y >= self.bps[n - 1].1 {
            return y - &self.right;
        }
        let i = self.bps.partition_point(|p| p.1 <= *y) - 1;
        let (x0, y0) = &self.bps[i];
        let (x1, y1) = &self.bps[i + 1];
        x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    }

    pub fn evaluate_bound(&self, b: &Bound) -> Bound {
        match b {
            Bound::Fin(x) => Bound::Fin(self.evaluate(x)),
            other => other.clone(),
        }
    }

    /// `self` followed by `other`: the word "self · other", so
    /// `compose(f, g).evaluate(x) == g.evaluate(f.evaluate(x))`.
    pub fn compose(&self, other: &Etpl) -> Etpl {
        let mut xs: Vec<Rat> = Vec::with_capacity(self.bps.len() + other.bps.len());
        xs.extend(self.bps.iter().map(|p| p.0.clone()));
        xs.extend(other.bps.iter().map(|p| self.evaluate_inverse(&p.0)));
        xs.sort();
        xs.dedup();
        let bps: Vec<(Rat, Rat)> = xs
            .into_iter()
            .map(|x| {
                let y = other.evaluate(&self.evaluate(&x));
                (x, y)
            })
            .collect();
        let left = &self.left + &other.left;
        let right = &self.right + &other.right;
        if bps.is_empty() {
            debug_assert_eq!(left, right);
            return Etpl::translation(left);
        }
        Etpl::canonical(bps, left, right)
    }

    pub fn inverse(&self) -> Etpl {
        let bps = self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        Etpl::canonical(bps, -&self.left, -&self.right)
    }

    pub fn power(&self, n: i64) -> Etpl {
        if n < 0 {
            return self.inverse().power(-n);
        }
        let mut acc = Etpl::identity();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Conjugation by an affine map: returns A⁻¹∘f∘A as a function, whose
    /// support is the A-preimage of the support of f.
    pub fn affine_conjugate(&self, a: &Affine) -> Etpl {
        let inv = a.inverse();
        let bps = self
            .bps
            .iter()
            .map(|(x, y)| (inv.apply(x), inv.apply(y)))
            .collect();
        Etpl::canonical(bps, &self.left / a.slope(), &self.right / a.slope())
    }

    /// The exact fixed-point set, a finite union of closed pieces.
    pub fn fixed_chunks(&self) -> ClosedChunks {
        let mut out = ClosedChunks::new();
        if self.bps.is_empty() {
            if self.left.is_zero() {
                return ClosedChunks::all();
            }
            return out;
        }
        if self.left.is_zero() {
            out.push(Bound::NegInf, Bound::Fin(self.bps[0].0.clone()));
        }
        if self.right.is_zero() {
            out.push(
                Bound::Fin(self.bps[self.bps.len() - 1].0.clone()),
                Bound::PosInf,
            );
        }
        for (x, y) in &self.bps {
            if x == y {
                out.push_point(x.clone());
            }
        }
        for w in self.bps.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, _) = &w[1];
            let s = slope(&w[0], &w[1]);
            if s.is_one() {
                if y0 == x0 {
                    out.push(Bound::Fin(x0.clone()), Bound::Fin(x1.clone()));
                }
            } else {
                // solve y0 + s (x - x0) = x
                let fx = (y0 - &s * x0) / (Rat::one() - &s);
                if fx > *x0 && fx < *x1 {
                    out.push_point(fx);
                }
            }
        }
        out.normalize();
        out
    }

    /// Maximal open intervals on which f(x) ≠ x.
    pub fn support(&self) -> Vec<IntervalQ> {
        self.fixed_chunks().complement()
    }

    /// True when f(x) ≥ x everywhere.
    pub fn is_above_identity(&self) -> bool {
        !self.left.is_negative()
            && !self.right.is_negative()
            && self.bps.iter().all(|(x, y)| y >= x)
    }

    /// True when f(x) > x for every x, with no fixed points at all.
    pub fn is_strictly_above_everywhere(&self) -> bool {
        self.left.is_positive()
            && self.right.is_positive()
            && self.bps.iter().all(|(x, y)| y > x)
    }

    /// True when f(x) > x for every x in the interior of the bounded interval
    /// [a, b] (equality is allowed at the two endpoints themselves).
    pub fn is_strictly_above_interior(&self, a: &Rat, b: &Rat) -> Result<bool> {
        if a >= b {
            return Err(PlError::InvalidInterval(format!("[{a}, {b}]")));
        }
        let fa = self.evaluate(a);
        let fb = self.evaluate(b);
        if fa < *a || fb < *b {
            return Ok(false);
        }
        let interior_ok = self
            .bps
            .iter()
            .filter(|(x, _)| x > a && x < b)
            .all(|(x, y)| y > x);
        if !interior_ok {
            return Ok(false);
        }
        // with no interior breakpoint the map is affine on [a,b]; both
        // endpoint displacements zero would make it the identity there
        let has_interior = self.bps.iter().any(|(x, _)| x > a && x < b);
        Ok(has_interior || fa > *a || fb > *b)
    }

    /// Structural agreement of two maps on an interval: both are refined by
    /// their breakpoints inside the closure and compared at every node.
    pub fn agree_on(&self, other: &Etpl, j: &IntervalQ) -> bool {
        let mut pts: Vec<Rat> = Vec::new();
        match &j.lo {
            Bound::Fin(a) => pts.push(a.clone()),
            Bound::NegInf => {
                if self.left != other.left {
                    return false;
                }
                if let Some((x, _)) = self.bps.first().or(other.bps.first()) {
                    pts.push(x.clone());
                }
            }
            Bound::PosInf => unreachable!(),
        }
        match &j.hi {
            Bound::Fin(b) => pts.push(b.clone()),
            Bound::PosInf => {
                if self.right != other.right {
                    return false;
                }
                if let Some((x, _)) = self.bps.last().or(other.bps.last()) {
                    pts.push(x.clone());
                }
            }
            Bound::NegInf => unreachable!(),
        }
        for (x, _) in self.bps.iter().chain(other.bps.iter()) {
            if j.closure_contains(x) {
                pts.push(x.clone());
            }
        }
        pts.sort();
        pts.dedup();
        pts.iter().all(|x| self.evaluate(x) == other.evaluate(x))
    }

    /// The map equal to `self` on the bounded region (whose endpoints must be
    /// fixed) and to the identity elsewhere.
    pub fn restrict_to_region(&self, region: &IntervalQ) -> Result<Etpl> {
        let (a, b) = region.finite_ends()?;
        if self.evaluate(a) != *a || self.evaluate(b) != *b {
            return Err(PlError::Restriction(format!(
                "region {region} is not invariant: its endpoints move"
            )));
        }
        let interior: Vec<(Rat, Rat)> = self
            .bps
            .iter()
            .filter(|(x, _)| x > a && x < b)
            .cloned()
            .collect();
        Etpl::supported_on(a.clone(), b.clone(), interior)
    }

    /// The graph of `self` over [a, b] as a segment map.
    pub fn seg_on(&self, a: &Rat, b: &Rat) -> Result<PlSeg> {
        let mut pts = vec![(a.clone(), self.evaluate(a))];
        for (x, y) in &self.bps {
            if x > a && x < b {
                pts.push((x.clone(), y.clone()));
            }
        }
        pts.push((b.clone(), self.evaluate(b)));
        PlSeg::from_points(pts)
    }
}

impl fmt::Display for Etpl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL{{")?;
        for (i, (x, y)) in self.bps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "; left={}, right={}}}", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn pl(bps: &[(i64, i64, i64, i64)], left: Rat, right: Rat) -> Etpl {
        let pts = bps
            .iter()
            .map(|(xn, xd, yn, yd)| (rat(*xn, *xd), rat(*yn, *yd)))
            .collect();
        Etpl::from_breakpoints(pts, left, right).unwrap()
    }

    /// The default first chain map: supported on (0,2), slope 5/4 then an
    /// isometric middle then slope 1/5.
    pub(crate) fn sample_f() -> Etpl {
        pl(
            &[(0, 1, 0, 1), (1, 1, 5, 4), (27, 16, 31, 16), (2, 1, 2, 1)],
            rat_int(0),
            rat_int(0),
        )
    }

    pub(crate) fn sample_g() -> Etpl {
        pl(
            &[(1, 1, 1, 1), (17, 16, 21, 16), (7, 4, 2, 1), (3, 1, 3, 1)],
            rat_int(0),
            rat_int(0),
        )
    }

    #[test]
    fn evaluate_matches_hand_values() {
        let f = sample_f();
        let g = sample_g();
        assert_eq!(f.evaluate(&rat_int(1)), rat(5, 4));
        assert_eq!(f.evaluate(&rat(5, 4)), rat(3, 2));
        assert_eq!(g.evaluate(&rat(7, 4)), rat_int(2));
        assert_eq!(g.evaluate(&rat(3, 2)), rat(7, 4));
        assert_eq!(f.evaluate(&rat_int(-5)), rat_int(-5));
        assert_eq!(f.evaluate(&rat_int(7)), rat_int(7));
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let f = sample_f();
        let g = sample_g();
        let fg = f.compose(&g);
        // g(f(1)) = g(5/4) = 3/2
        assert_eq!(fg.evaluate(&rat_int(1)), rat(3, 2));
        let x = rat(22, 7);
        assert_eq!(fg.evaluate(&x), g.evaluate(&f.evaluate(&x)));
    }

    #[test]
    fn translations_compose_additively() {
        let a = Etpl::translation(rat(1, 2));
        let b = a.compose(&Etpl::translation(rat(1, 2)));
        assert_eq!(b, Etpl::translation(rat_int(1)));
        assert_eq!(a.power(2), Etpl::translation(rat_int(1)));
        assert_eq!(a.power(-3), Etpl::translation(rat(-3, 2)));
    }

    #[test]
    fn inverse_swaps_coordinates() {
        let e = pl(
            &[(0, 1, 0, 1), (1, 1, 2, 1), (3, 1, 3, 1)],
            rat_int(0),
            rat_int(0),
        );
        let inv = e.inverse();
        assert_eq!(
            inv.breakpoints(),
            &[
                (rat_int(0), rat_int(0)),
                (rat_int(2), rat_int(1)),
                (rat_int(3), rat_int(3))
            ]
        );
        assert!(e.compose(&inv).is_identity());
        assert!(inv.compose(&e).is_identity());
    }

    #[test]
    fn canonical_form_drops_collinear_points() {
        let e = Etpl::from_breakpoints(
            vec![
                (rat_int(0), rat_int(0)),
                (rat_int(1), rat_int(1)),
                (rat_int(2), rat_int(2)),
            ],
            rat_int(0),
            rat_int(0),
        )
        .unwrap();
        assert!(e.is_identity());
        assert_eq!(e.breakpoints().len(), 0);

        // interior collinear point on a non-identity map
        let e2 = Etpl::from_breakpoints(
            vec![
                (rat_int(0), rat_int(0)),
                (rat_int(1), rat_int(2)),
                (rat_int(2), rat_int(4)),
                (rat_int(5), rat_int(5)),
            ],
            rat_int(0),
            rat_int(0),
        )
        .unwrap();
        assert_eq!(e2.breakpoints().len(), 3);
        assert_eq!(e2.evaluate(&rat_int(1)), rat_int(2));
    }

    #[test]
    fn invalid_breakpoints_rejected() {
        assert!(Etpl::from_breakpoints(
            vec![(rat_int(0), rat_int(0)), (rat_int(1), rat_int(0))],
            rat_int(0),
            rat_int(-1),
        )
        .is_err());
        assert!(Etpl::from_breakpoints(vec![(rat_int(0), rat_int(1))], rat_int(0), rat_int(0)).is_err());
    }

    #[test]
    fn support_of_sample_maps() {
        let f = sample_f();
        assert_eq!(f.support(), vec![IntervalQ::open(rat_int(0), rat_int(2))]);
        let g = sample_g();
        assert_eq!(g.support(), vec![IntervalQ::open(rat_int(1), rat_int(3))]);
        assert!(Etpl::identity().support().is_empty());
        assert_eq!(
            Etpl::translation(rat_int(1)).support(),
            vec![IntervalQ::all()]
        );
    }

    #[test]
    fn word_g_f_inverse_has_two_support_components() {
        let f = sample_f();
        let g = sample_g();
        let gf_inv = g.compose(&f.inverse());
        assert_eq!(
            gf_inv.support(),
            vec![
                IntervalQ::open(rat_int(0), rat(17, 16)),
                IntervalQ::open(rat(27, 16), rat_int(3)),
            ]
        );
    }

    #[test]
    fn agree_on_detects_the_common_translation_piece() {
        let f = sample_f();
        let g = sample_g();
        let j = IntervalQ::closed(rat(17, 16), rat(27, 16));
        assert!(f.agree_on(&g, &j));
        assert!(!f.agree_on(&g, &IntervalQ::closed(rat_int(0), rat_int(1))));
        let t = Etpl::translation(rat(1, 4));
        assert!(f.agree_on(&t, &IntervalQ::closed(rat_int(1), rat(27, 16))));
    }

    #[test]
    fn affine_conjugate_rescales_support() {
        let e = Etpl::supported_on(
            rat_int(0),
            rat_int(1),
            vec![(rat(1, 2), rat(3, 4))],
        )
        .unwrap();
        let a = Affine::new(rat_int(2), rat_int(0)).unwrap();
        let c = e.affine_conjugate(&a);
        assert_eq!(c.support(), vec![IntervalQ::open(rat_int(0), rat(1, 2))]);
        // conjugation identity at a sample point: c = A⁻¹∘e∘A
        let x = rat(1, 3);
        assert_eq!(c.evaluate(&x), e.evaluate(&(x.clone() * rat_int(2))) / rat_int(2));
    }

    #[test]
    fn restriction_to_invariant_region() {
        let f = sample_f();
        let r = f.restrict_to_region(&IntervalQ::closed(rat_int(0), rat_int(2))).unwrap();
        assert_eq!(r, f);
        assert!(f
            .restrict_to_region(&IntervalQ::closed(rat_int(0), rat_int(1)))
            .is_err());
    }

    #[test]
    fn orientation_checks() {
        let f = sample_f();
        assert!(f.is_above_identity());
        assert!(!f.inverse().is_above_identity());
        assert!(f
            .is_strictly_above_interior(&rat_int(0), &rat_int(2))
            .unwrap());
        assert!(!f
            .is_strictly_above_interior(&rat_int(0), &rat_int(3))
            .unwrap());
        assert!(!Etpl::identity()
            .is_strictly_above_interior(&rat_int(0), &rat_int(1))
            .unwrap());
    }
}
