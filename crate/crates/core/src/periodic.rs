//! Piecewise-linear homeomorphisms commuting with a fixed translation.
//!
//! A map F here satisfies F(x + p) = F(x) + p for a rational period p > 0, so
//! it is determined by one period of data: a nonempty node list with
//! x-coordinates in [0, p). The stored node list is canonical (no node is a
//! removable kink, and a pure translation is anchored at x = 0), so structural
//! equality decides functional equality for maps with equal declared periods.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{PlError, Result};
use crate::rat::Rat;
use crate::seg::PlSeg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPl {
    period: Rat,
    bps: Vec<(Rat, Rat)>,
}

fn slope(a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PeriodicPl {
    pub fn translation(period: Rat, t: Rat) -> Result<Self> {
        if !period.is_positive() {
            return Err(PlError::InvalidMap(format!("period must be positive: {period}")));
        }
        Ok(PeriodicPl {
            period,
            bps: vec![(Rat::zero(), t)],
        })
    }

    pub fn identity(period: Rat) -> Result<Self> {
        Self::translation(period, Rat::zero())
    }

    pub fn from_breakpoints(period: Rat, bps: Vec<(Rat, Rat)>) -> Result<Self> {
        if !period.is_positive() {
            return Err(PlError::InvalidMap(format!("period must be positive: {period}")));
        }
        if bps.is_empty() {
            return Err(PlError::InvalidMap(
                "a periodic map needs at least one node".into(),
            ));
        }
        for (x, _) in &bps {
            if x.is_negative() || *x >= period {
                return Err(PlError::InvalidMap(format!(
                    "node position {x} is outside the fundamental window [0, {period})"
                )));
            }
        }
        for w in bps.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PlError::InvalidMap(format!(
                    "nodes must increase strictly in both coordinates: ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let span = &bps[bps.len() - 1].1 - &bps[0].1;
        if bps.len() > 1 && span >= period {
            return Err(PlError::InvalidMap(format!(
                "node values span {span}, at least one period {period}; the wrapped map would not increase"
            )));
        }
        Ok(Self::canonical(period, bps))
    }

    fn canonical(period: Rat, mut bps: Vec<(Rat, Rat)>) -> Self {
        loop {
            if bps.len() == 1 {
                break;
            }
            let n = bps.len();
            let mut removed = false;
            for i in 0..n {
                let prev = if i == 0 {
                    (&bps[n - 1].0 - &period, &bps[n - 1].1 - &period)
                } else {
                    bps[i - 1].clone()
                };
                let next = if i == n - 1 {
                    (&bps[0].0 + &period, &bps[0].1 + &period)
                } else {
                    bps[i + 1].clone()
                };
                if slope(&prev, &bps[i]) == slope(&bps[i], &next) {
                    bps.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        if bps.len() == 1 {
            // one node means a single slope over the period, which must be 1:
            // the map is the translation by y₀ − x₀, anchored at 0
            let t = &bps[0].1 - &bps[0].0;
            bps = vec![(Rat::zero(), t)];
        }
        PeriodicPl { period, bps }
    }

    pub fn period(&self) -> &Rat {
        &self.period
    }

    pub fn nodes(&self) -> &[(Rat, Rat)] {
        &self.bps
    }

    pub fn as_translation(&self) -> Option<Rat> {
        (self.bps.len() == 1).then(|| &self.bps[0].1 - &self.bps[0].0)
    }

    pub fn is_identity(&self) -> bool {
        self.as_translation().is_some_and(|t| t.is_zero())
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        let x0 = &self.bps[0].0;
        let k = ((x - x0) / &self.period).floor();
        let shift = &k * &self.period;
        let xr = x - &shift; // in [x0, x0 + p)
        let n = self.bps.len();
        let i = self.bps.partition_point(|p| p.0 <= xr) - 1;
        let (ax, ay) = &self.bps[i];
        let (bx, by) = if i + 1 < n {
            (self.bps[i + 1].0.clone(), self.bps[i + 1].1.clone())
        } else {
            (&self.bps[0].0 + &self.period, &self.bps[0].1 + &self.period)
        };
        let y = ay + (&xr - ax) * (&by - ay) / (&bx - ax);
        y + shift
    }

    pub fn inverse(&self) -> PeriodicPl {
        let mut nodes: Vec<(Rat, Rat)> = Vec::with_capacity(self.bps.len());
        for (x, y) in &self.bps {
            let k = (y / &self.period).floor();
            let shift = &k * &self.period;
            nodes.push((y - &shift, x - &shift));
        }
        nodes.sort_by(|a, b| a.0.cmp(&b.0));
        Self::canonical(self.period.clone(), nodes)
    }

    pub fn evaluate_inverse(&self, y: &Rat) -> Rat {
        self.inverse().evaluate(y)
    }

    /// `self` followed by `other`; both maps must share the declared period.
    pub fn compose(&self, other: &PeriodicPl) -> Result<PeriodicPl> {
        if self.period != other.period {
            return Err(PlError::PeriodMismatch(
                self.period.to_string(),
                other.period.to_string(),
            ));
        }
        let inv = self.inverse();
        let mut xs: Vec<Rat> = self.bps.iter().map(|p| p.0.clone()).collect();
        for (bx, _) in &other.bps {
            let x = inv.evaluate(bx);
            let k = (&x / &self.period).floor();
            xs.push(x - k * &self.period);
        }
        xs.sort();
        xs.dedup();
        let bps: Vec<(Rat, Rat)> = xs
            .into_iter()
            .map(|x| {
                let y = other.evaluate(&self.evaluate(&x));
                (x, y)
            })
            .collect();
        Ok(Self::canonical(self.period.clone(), bps))
    }

    pub fn power(&self, n: i64) -> Result<PeriodicPl> {
        if n < 0 {
            return self.inverse().power(-n);
        }
        let mut acc = PeriodicPl::identity(self.period.clone())?;
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// The moved set within one period, or None when every point moves.
    ///
    /// When the map has a fixed point x_f, the support is the periodic
    /// repetition of finitely many open intervals inside [x_f, x_f + p];
    /// anchoring the window at a fixed point keeps the components from
    /// wrapping around the period boundary.
    pub fn moved_window(&self) -> Option<Vec<crate::interval::IntervalQ>> {
        use crate::interval::IntervalQ;
        let p = &self.period;
        let x0 = &self.bps[0].0;
        let window_nodes = |lo: &Rat, hi: &Rat| -> Vec<Rat> {
            let mut xs = vec![lo.clone(), hi.clone()];
            for (x, _) in &self.bps {
                let mut k = ((lo - x) / p).floor();
                loop {
                    let cand = x + &k * p;
                    if cand > *hi {
                        break;
                    }
                    if cand >= *lo {
                        xs.push(cand);
                    }
                    k += Rat::from_integer(1.into());
                }
            }
            xs.sort();
            xs.dedup();
            xs
        };
        let fixed_chunks_in = |lo: &Rat, hi: &Rat| -> Vec<(Rat, Rat)> {
            let xs = window_nodes(lo, hi);
            let mut chunks: Vec<(Rat, Rat)> = Vec::new();
            let mut push = |a: Rat, b: Rat| {
                if let Some(last) = chunks.last_mut() {
                    if a <= last.1 {
                        if b > last.1 {
                            last.1 = b;
                        }
                        return;
                    }
                }
                chunks.push((a, b));
            };
            for w in xs.windows(2) {
                let (u, v) = (&w[0], &w[1]);
                let fu = self.evaluate(u);
                let fv = self.evaluate(v);
                if fu == *u && fv == *v {
                    // single linear segment fixing both ends is the identity
                    push(u.clone(), v.clone());
                    continue;
                }
                if fu == *u {
                    push(u.clone(), u.clone());
                }
                if fv == *v {
                    push(v.clone(), v.clone());
                }
                let s = (&fv - &fu) / (v - u);
                if !num_traits::One::is_one(&s) {
                    let cross = (&fu - &s * u) / (Rat::from_integer(1.into()) - &s);
                    if cross > *u && cross < *v {
                        push(cross.clone(), cross);
                    }
                }
            }
            chunks
        };
        let anchor = fixed_chunks_in(x0, &(x0 + p)).first()?.0.clone();
        let hi = &anchor + p;
        let chunks = fixed_chunks_in(&anchor, &hi);
        let mut moved = Vec::new();
        let mut start = anchor;
        for (clo, chi) in chunks {
            if clo > start {
                moved.push(IntervalQ::open(start.clone(), clo));
            }
            if chi > start {
                start = chi;
            }
        }
        if start < hi {
            moved.push(IntervalQ::open(start, hi));
        }
        Some(moved)
    }

    /// The graph over [a, b] as a segment map.
    pub fn seg_on(&self, a: &Rat, b: &Rat) -> Result<PlSeg> {
        if a >= b {
            return Err(PlError::InvalidInterval(format!("[{a}, {b}]")));
        }
        let mut xs = vec![a.clone(), b.clone()];
        for (x, _) in &self.bps {
            // translates x + k·p inside (a, b)
            let mut k = ((a - x) / &self.period).floor();
            loop {
                let cand = x + &k * &self.period;
                if cand >= *b {
                    break;
                }
                if cand > *a {
                    xs.push(cand);
                }
                k += Rat::from_integer(1.into());
            }
        }
        xs.sort();
        xs.dedup();
        let pts = xs.into_iter().map(|x| {
            let y = self.evaluate(&x);
            (x, y)
        });
        PlSeg::from_points(pts.collect())
    }
}

/// A degree-n root of the translation by `period`, assembled from n−1 free
/// segment pieces. Piece j must be an increasing PL bijection from the j-th
/// division interval onto the (j+1)-st; the final piece is forced by the
/// requirement that the n-th power be the translation. With no pieces the
/// translation itself is returned (degree 1).
pub fn root_of_translation(period: Rat, pieces: &[PlSeg]) -> Result<PeriodicPl> {
    if !period.is_positive() {
        return Err(PlError::InvalidMap(format!("period must be positive: {period}")));
    }
    if pieces.is_empty() {
        return PeriodicPl::translation(period.clone(), period);
    }
    let zero = Rat::zero();
    if *pieces[0].domain().0 != zero {
        return Err(PlError::InvalidMap(
            "the first piece of a translation root must start at 0".into(),
        ));
    }
    for p in pieces {
        if p.image().0 != p.domain().1 {
            return Err(PlError::InvalidMap(format!(
                "each translation-root piece must carry its division onto the next: \
                 domain ends at {} but image starts at {}",
                p.domain().1,
                p.image().0
            )));
        }
    }
    for w in pieces.windows(2) {
        let (ia, ib) = w[0].image();
        let (da, db) = w[1].domain();
        if ia != da || ib != db {
            return Err(PlError::InvalidMap(format!(
                "translation-root pieces must chain: image [{ia}, {ib}] then domain [{da}, {db}]"
            )));
        }
    }
    let last = &pieces[pieces.len() - 1];
    if *last.image().1 != period {
        return Err(PlError::InvalidMap(format!(
            "the last free piece must end at the period {period}, not {}",
            last.image().1
        )));
    }
    // forced final piece: y ↦ Φ⁻¹(y) + period on [s_{n−1}, period], where Φ
    // is the composite of the free pieces
    let mut phi = pieces[0].clone();
    for p in &pieces[1..] {
        phi = phi.then_seg(p)?;
    }
    let trans = crate::affine::Affine::translation(period.clone());
    let forced = phi.inverse().then_affine(&trans);
    let mut bps: Vec<(Rat, Rat)> = Vec::new();
    for piece in pieces.iter().chain(std::iter::once(&forced)) {
        let pts = piece.points();
        // drop each piece's final node: the next piece starts there
        for (x, y) in &pts[..pts.len() - 1] {
            bps.push((x.clone(), y.clone()));
        }
    }
    PeriodicPl::from_breakpoints(period, bps)
}

impl fmt::Display for PeriodicPl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Periodic{{p={}; ", self.period)?;
        for (i, (x, y)) in self.bps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn translations_compose_and_power() {
        let half = PeriodicPl::translation(rat_int(1), rat(1, 2)).unwrap();
        let full = half.compose(&half).unwrap();
        assert_eq!(full, PeriodicPl::translation(rat_int(1), rat_int(1)).unwrap());
        assert_eq!(half.power(2).unwrap(), full);
        assert_eq!(
            half.power(-1).unwrap(),
            PeriodicPl::translation(rat_int(1), rat(-1, 2)).unwrap()
        );
        assert!(half.compose(&half.inverse()).unwrap().is_identity());
    }

    #[test]
    fn period_mismatch_is_rejected() {
        let a = PeriodicPl::translation(rat_int(1), rat(1, 2)).unwrap();
        let b = PeriodicPl::translation(rat_int(2), rat(1, 2)).unwrap();
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn evaluation_is_equivariant() {
        // kink at 0 and at 1/2 inside each period
        let m = PeriodicPl::from_breakpoints(
            rat_int(1),
            vec![(rat_int(0), rat_int(0)), (rat(1, 2), rat(3, 4))],
        )
        .unwrap();
        assert_eq!(m.evaluate(&rat(1, 4)), rat(3, 8));
        assert_eq!(m.evaluate(&rat(21, 4)), rat(3, 8) + rat_int(5));
        assert_eq!(m.evaluate(&rat(-3, 4)), rat(3, 8) - rat_int(1));
        // second segment has slope 1/2: m(7/8) = 3/4 + (3/8)·(1/2)
        assert_eq!(m.evaluate(&rat(7, 8)), rat(15, 16));
        let inv = m.inverse();
        for x in [rat(1, 3), rat(-22, 7), rat(13, 5)] {
            assert_eq!(inv.evaluate(&m.evaluate(&x)), x);
        }
    }

    #[test]
    fn fake_kinks_are_removed() {
        let m = PeriodicPl::from_breakpoints(
            rat_int(1),
            vec![(rat_int(0), rat(1, 4)), (rat(1, 2), rat(3, 4))],
        )
        .unwrap();
        assert_eq!(m.as_translation(), Some(rat(1, 4)));
        assert_eq!(m.nodes(), &[(rat_int(0), rat(1, 4))]);
    }

    #[test]
    fn square_root_of_translation() {
        // free piece [0, 1/2] → [1/2, 1] with a kink
        let piece = PlSeg::from_points(vec![
            (rat_int(0), rat(1, 2)),
            (rat(1, 4), rat(7, 8)),
            (rat(1, 2), rat_int(1)),
        ])
        .unwrap();
        let t = root_of_translation(rat_int(1), &[piece.clone()]).unwrap();
        assert_eq!(
            t.power(2).unwrap(),
            PeriodicPl::translation(rat_int(1), rat_int(1)).unwrap()
        );
        // the root agrees with the free piece on its domain
        assert_eq!(t.seg_on(&rat_int(0), &rat(1, 2)).unwrap(), piece);
        // sample the forced piece: t(7/8) = Φ⁻¹(7/8) + 1 = 1/4 + 1
        assert_eq!(t.evaluate(&rat(7, 8)), rat(5, 4));
        // equivariance across periods
        assert_eq!(t.evaluate(&rat(9, 8)), t.evaluate(&rat(1, 8)) + rat_int(1));
    }

    #[test]
    fn cube_root_of_translation() {
        let p0 = PlSeg::from_points(vec![(rat_int(0), rat(1, 3)), (rat(1, 3), rat(2, 3))]).unwrap();
        let p1 = PlSeg::from_points(vec![
            (rat(1, 3), rat(2, 3)),
            (rat(1, 2), rat(5, 6)),
            (rat(2, 3), rat_int(1)),
        ])
        .unwrap();
        let t = root_of_translation(rat_int(1), &[p0, p1]).unwrap();
        assert_eq!(
            t.power(3).unwrap(),
            PeriodicPl::translation(rat_int(1), rat_int(1)).unwrap()
        );
        assert!(t
            .power(2)
            .unwrap()
            .compose(&t)
            .unwrap()
            .compose(&PeriodicPl::translation(rat_int(1), rat_int(-1)).unwrap())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn degree_one_root_is_the_translation() {
        let t = root_of_translation(rat(3, 2), &[]).unwrap();
        assert_eq!(t.as_translation(), Some(rat(3, 2)));
    }

    #[test]
    fn seg_window_spanning_periods() {
        let piece = PlSeg::from_points(vec![
            (rat_int(0), rat(1, 2)),
            (rat(1, 4), rat(7, 8)),
            (rat(1, 2), rat_int(1)),
        ])
        .unwrap();
        let t = root_of_translation(rat_int(1), &[piece]).unwrap();
        let s = t.seg_on(&rat(-1, 2), &rat(3, 2)).unwrap();
        for x in [rat(-1, 3), rat(0, 1), rat(1, 8), rat(1, 1), rat(10, 7)] {
            assert_eq!(s.evaluate(&x).unwrap(), t.evaluate(&x));
        }
    }
}
