//! Exact n-th roots of one-bump maps, built by orbit equivariance.
//!
//! The base map must move every point of a single bounded support component
//! upward. Choosing an anchor s₀ inside the bump, the interval
//! [s₀, g(s₀)] is a fundamental domain for the forward orbit of the base g.
//! A degree-n root is specified by n−1 free segment pieces laddering
//! [s₀, s₁] → [s₁, s₂] → … → [s_{n−1}, s_n = g(s₀)]; the final piece is
//! forced by requiring the n-th power to be g, and the root extends to the
//! whole bump by commuting with g. Evaluation walks the g-orbit back into the
//! fundamental domain; the root is not eventually linear near the bump's
//! endpoints, so those two points are not in its exact domain.

use std::fmt;

use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::rat::Rat;
use crate::seg::PlSeg;

/// Hard cap on orbit-walk length during evaluation.
pub const ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPl {
    base: Etpl,
    /// Bump endpoints of the base's single support component.
    bump: (Rat, Rat),
    /// Division points s₀ < s₁ < … < s_n with s_n = base(s₀).
    divisions: Vec<Rat>,
    /// The n−1 free pieces followed by the forced final piece.
    pieces: Vec<PlSeg>,
}

/// Result of raising a root to an integer power that stays in the calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootPower {
    Pl(Etpl),
    Root(RootPl),
}

impl RootPl {
    /// Builds a degree-(pieces.len() + 1) root of `base` from its free pieces.
    pub fn new(base: Etpl, free_pieces: Vec<PlSeg>) -> Result<Self> {
        if free_pieces.is_empty() {
            return Err(PlError::InvalidMap(
                "a root needs at least one free piece (degree at least 2)".into(),
            ));
        }
        let supp = base.support();
        if supp.len() != 1 {
            return Err(PlError::MultiComponentSupport(supp.len()));
        }
        let (a, b) = {
            let (lo, hi) = supp[0].finite_ends().map_err(|_| {
                PlError::InvalidMap("the base bump must be bounded".into())
            })?;
            (lo.clone(), hi.clone())
        };
        if !base.is_above_identity() {
            return Err(PlError::InvalidMap(
                "the base must move its bump upward; take roots of the inverse instead".into(),
            ));
        }
        for p in &free_pieces {
            if p.image().0 != p.domain().1 {
                return Err(PlError::InvalidMap(format!(
                    "each root piece must carry its division onto the next: \
                     domain ends at {} but image starts at {}",
                    p.domain().1,
                    p.image().0
                )));
            }
        }
        for w in free_pieces.windows(2) {
            let (ia, ib) = w[0].image();
            let (da, db) = w[1].domain();
            if ia != da || ib != db {
                return Err(PlError::InvalidMap(format!(
                    "root pieces must chain: image [{ia}, {ib}] then domain [{da}, {db}]"
                )));
            }
        }
        let s0 = free_pieces[0].domain().0.clone();
        if s0 <= a || s0 >= b {
            return Err(PlError::InvalidMap(format!(
                "the anchor {s0} must lie strictly inside the bump ({a}, {b})"
            )));
        }
        let sn = free_pieces[free_pieces.len() - 1].image().1.clone();
        let gs0 = base.evaluate(&s0);
        if sn != gs0 {
            return Err(PlError::InvalidMap(format!(
                "the last free piece must end at base(anchor) = {gs0}, not {sn}"
            )));
        }
        // forced final piece: Φ⁻¹ then g, on [s_{n−1}, s_n]
        let mut phi = free_pieces[0].clone();
        for p in &free_pieces[1..] {
            phi = phi.then_seg(p)?;
        }
        let forced = phi.inverse().then_etpl(&base);
        let mut divisions: Vec<Rat> = free_pieces
            .iter()
            .map(|p| p.domain().0.clone())
            .collect();
        divisions.push(free_pieces[free_pieces.len() - 1].domain().1.clone());
        divisions.push(sn);
        let mut pieces = free_pieces;
        pieces.push(forced);
        Ok(RootPl {
            base,
            bump: (a, b),
            divisions,
            pieces,
        })
    }

    pub fn degree(&self) -> usize {
        self.pieces.len()
    }

    pub fn base(&self) -> &Etpl {
        &self.base
    }

    pub fn anchor(&self) -> &Rat {
        &self.divisions[0]
    }

    pub fn divisions(&self) -> &[Rat] {
        &self.divisions
    }

    pub fn pieces(&self) -> &[PlSeg] {
        &self.pieces
    }

    pub fn support(&self) -> Vec<IntervalQ> {
        vec![IntervalQ::open(self.bump.0.clone(), self.bump.1.clone())]
    }

    fn fundamental_ends(&self) -> (&Rat, &Rat) {
        (
            &self.divisions[0],
            &self.divisions[self.divisions.len() - 1],
        )
    }

    /// Walks x into [s₀, s_n) along the base orbit; returns (reduced, k) with
    /// baseᵏ(x) = reduced.
    fn reduce(&self, x: &Rat) -> Result<(Rat, i64)> {
        let (s0, sn) = self.fundamental_ends();
        let mut y = x.clone();
        let mut k: i64 = 0;
        let mut steps = 0usize;
        while y < *s0 {
            y = self.base.evaluate(&y);
            k += 1;
            steps += 1;
            if steps > ORBIT_CAP {
                return Err(PlError::OrbitCap);
            }
        }
        while y >= *sn {
            y = self.base.evaluate_inverse(&y);
            k -= 1;
            steps += 1;
            if steps > ORBIT_CAP {
                return Err(PlError::OrbitCap);
            }
        }
        Ok((y, k))
    }

    fn unreduce(&self, mut y: Rat, k: i64) -> Rat {
        // apply base^{−k}
        let mut m = k;
        while m > 0 {
            y = self.base.evaluate_inverse(&y);
            m -= 1;
        }
        while m < 0 {
            y = self.base.evaluate(&y);
            m += 1;
        }
        y
    }

    pub fn evaluate(&self, x: &Rat) -> Result<Rat> {
        let (a, b) = &self.bump;
        if x == a || x == b {
            return Err(PlError::OrbitEndpoint);
        }
        if x < a || x > b {
            return Ok(x.clone());
        }
        let (y, k) = self.reduce(x)?;
        // y ∈ [s_j, s_{j+1}) for some j < degree
        let j = self.divisions.partition_point(|s| *s <= y) - 1;
        let fy = self.pieces[j].evaluate(&y)?;
        Ok(self.unreduce(fy, k))
    }

    pub fn evaluate_inverse(&self, x: &Rat) -> Result<Rat> {
        let (a, b) = &self.bump;
        if x == a || x == b {
            return Err(PlError::OrbitEndpoint);
        }
        if x < a || x > b {
            return Ok(x.clone());
        }
        let (y, k) = self.reduce(x)?;
        let j = self.divisions.partition_point(|s| *s <= y) - 1;
        let fy = if j >= 1 {
            self.pieces[j - 1].evaluate_inverse(&y)?
        } else {
            // y ∈ [s₀, s₁): pull back through the base-conjugate of the
            // final piece
            let gy = self.base.evaluate(&y);
            let z = self.pieces[self.degree() - 1].evaluate_inverse(&gy)?;
            self.base.evaluate_inverse(&z)
        };
        Ok(self.unreduce(fy, k))
    }

    /// The base-conjugate of a piece: nodes map through the base in both
    /// coordinates, including any kinks the base contributes.
    fn conjugate_piece(&self, p: &PlSeg) -> Result<PlSeg> {
        let (d0, d1) = p.domain();
        let g0 = self.base.evaluate(d0);
        let g1 = self.base.evaluate(d1);
        let back = self.base.inverse().seg_on(&g0, &g1)?;
        back.then_seg(p).map(|s| s.then_etpl(&self.base))
    }

    /// Certifies the defining identity and returns the base: composing the n
    /// consecutive pieces starting at each division reproduces the base there.
    pub fn power_full(&self) -> Result<Etpl> {
        let n = self.degree();
        let mut extended: Vec<PlSeg> = self.pieces.clone();
        for j in 0..n - 1 {
            let conj = self.conjugate_piece(&extended[j])?;
            extended.push(conj);
        }
        for j in 0..n {
            let mut acc = extended[j].clone();
            for piece in &extended[j + 1..j + n] {
                acc = acc.then_seg(piece)?;
            }
            let target = self
                .base
                .seg_on(&self.divisions[j], &self.divisions[j + 1])?;
            if acc != target {
                return Err(PlError::InvalidMap(format!(
                    "root certification failed on division {j}: the composed pieces \
                     do not reproduce the base"
                )));
            }
        }
        Ok(self.base.clone())
    }

    /// Raises the root to an integer power, staying inside the calculus:
    /// 0 gives the identity, the degree gives the certified base, and a
    /// proper divisor d of the degree gives the degree-(n/d) root whose
    /// pieces are d-fold composites.
    pub fn power(&self, m: i64) -> Result<RootPower> {
        let n = self.degree() as i64;
        if m == 0 {
            return Ok(RootPower::Pl(Etpl::identity()));
        }
        if m == 1 {
            return Ok(RootPower::Root(self.clone()));
        }
        if m == n {
            return Ok(RootPower::Pl(self.power_full()?));
        }
        if m > 0 && m < n && n % m == 0 {
            // the d-th power ladders the divisions d at a time: over the old
            // interval [s_q, s_{q+1}] it is the composite of pieces q…q+d−1,
            // and the new free piece on [s_{id}, s_{(i+1)d}] glues those
            // composites side by side
            let d = m as usize;
            let composite = |q: usize| -> Result<PlSeg> {
                let mut acc = self.pieces[q].clone();
                for piece in &self.pieces[q + 1..q + d] {
                    acc = acc.then_seg(piece)?;
                }
                Ok(acc)
            };
            let new_count = (n as usize) / d - 1;
            let mut free: Vec<PlSeg> = Vec::new();
            for i in 0..new_count {
                let mut acc = composite(i * d)?;
                for r in 1..d {
                    acc = acc.glue(&composite(i * d + r)?)?;
                }
                free.push(acc);
            }
            return Ok(RootPower::Root(RootPl::new(self.base.clone(), free)?));
        }
        Err(PlError::UnsupportedRootPower {
            degree: self.degree() as u32,
            power: m,
        })
    }
}

impl fmt::Display for RootPl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Root{{degree {} of {} anchored at {}}}",
            self.degree(),
            self.base,
            self.anchor()
        )
    }
}
