//! Copies of line maps squeezed onto bounded open intervals.
//!
//! The squashing map ρ(x) = x/(1+|x|) is an increasing homeomorphism from the
//! line onto (−1, 1) that is a rational function in each half, so it preserves
//! exact rational arithmetic. Composing with the unique increasing affine map
//! (−1, 1) → J gives a homeomorphism ρ_J: ℝ → J, and any line map g induces a
//! squeezed copy supported in J: u ↦ ρ_J(g(ρ_J⁻¹(u))), extended by the
//! identity outside J. The copy is stored symbolically as the pair
//! (target J, inner g): it is not piecewise linear, but evaluation, algebra,
//! and equality all reduce exactly to the inner representative.

use std::fmt;

use num_traits::Signed;

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::interval::{Bound, IntervalQ};
use crate::etpl::Etpl;
use crate::rat::{one, Rat};

/// ρ(x) = x / (1 + |x|), an increasing bijection ℝ → (−1, 1).
pub fn rho(x: &Rat) -> Rat {
    x / (one() + x.abs())
}

/// ρ⁻¹(u) = u / (1 − |u|) for |u| < 1.
pub fn rho_inv(u: &Rat) -> Result<Rat> {
    if u.abs() >= one() {
        return Err(PlError::InvalidMap(format!(
            "squashing inverse needs |u| < 1, got {u}"
        )));
    }
    Ok(u / (one() - u.abs()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactifiedMap {
    target: IntervalQ,
    inner: Etpl,
}

impl CompactifiedMap {
    pub fn new(target: IntervalQ, inner: Etpl) -> Result<Self> {
        let (lo, hi) = target.finite_ends()?;
        if target.contains(lo) || target.contains(hi) {
            return Err(PlError::InvalidInterval(format!(
                "squeeze target must be a bounded open interval, got {target}"
            )));
        }
        Ok(CompactifiedMap { target, inner })
    }

    pub fn target(&self) -> &IntervalQ {
        &self.target
    }

    pub fn inner(&self) -> &Etpl {
        &self.inner
    }

    /// The unique increasing affine map (−1, 1) → target.
    pub fn frame(&self) -> Affine {
        let (lo, hi) = self.target.finite_ends().expect("target is bounded");
        Affine::between(&-one(), &one(), lo, hi).expect("target is a genuine interval")
    }

    /// ρ_J applied to a line point: lands strictly inside the target.
    pub fn squash_point(&self, x: &Rat) -> Rat {
        self.frame().apply(&rho(x))
    }

    pub fn unsquash_point(&self, u: &Rat) -> Result<Rat> {
        rho_inv(&self.frame().inverse().apply(u))
    }

    /// ρ_J extended to ±∞, which land on the target's endpoints.
    pub fn squash_bound(&self, b: &Bound) -> Rat {
        let (lo, hi) = self.target.finite_ends().expect("target is bounded");
        match b {
            Bound::NegInf => lo.clone(),
            Bound::PosInf => hi.clone(),
            Bound::Fin(x) => self.squash_point(x),
        }
    }

    pub fn evaluate(&self, u: &Rat) -> Rat {
        if !self.target.contains(u) {
            return u.clone();
        }
        let x = self.unsquash_point(u).expect("u is strictly inside the target");
        self.squash_point(&self.inner.evaluate(&x))
    }

    pub fn inverse(&self) -> CompactifiedMap {
        CompactifiedMap {
            target: self.target.clone(),
            inner: self.inner.inverse(),
        }
    }

    /// `self` followed by `other`; both copies must share the target.
    pub fn compose(&self, other: &CompactifiedMap) -> Result<CompactifiedMap> {
        if !self.target.same_set(&other.target) {
            return Err(PlError::TargetMismatch(
                self.target.to_string(),
                other.target.to_string(),
            ));
        }
        Ok(CompactifiedMap {
            target: self.target.clone(),
            inner: self.inner.compose(&other.inner),
        })
    }

    pub fn power(&self, n: i64) -> CompactifiedMap {
        CompactifiedMap {
            target: self.target.clone(),
            inner: self.inner.power(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// The same inner map squeezed onto a different target.
    pub fn retarget(&self, target: IntervalQ) -> Result<CompactifiedMap> {
        CompactifiedMap::new(target, self.inner.clone())
    }

    /// Conjugation by an affine map: A⁻¹∘c∘A is the same inner map squeezed
    /// onto the A-preimage of the target.
    pub fn affine_conjugate(&self, a: &Affine) -> CompactifiedMap {
        let target = a.inverse().apply_interval(&self.target);
        CompactifiedMap {
            target,
            inner: self.inner.clone(),
        }
    }

    /// Maximal open intervals of non-fixed points; all lie inside the target.
    pub fn support(&self) -> Vec<IntervalQ> {
        self.inner
            .support()
            .iter()
            .map(|j| {
                IntervalQ::open(
                    self.squash_bound(&j.lo),
                    self.squash_bound(&j.hi),
                )
            })
            .collect()
    }

    /// The smallest closed interval containing the support, if nonempty.
    pub fn support_hull(&self) -> Option<(Rat, Rat)> {
        let supp = self.support();
        let lo = supp.first()?.lo.fin().expect("support is bounded").clone();
        let hi = supp.last()?.hi.fin().expect("support is bounded").clone();
        Some((lo, hi))
    }
}

impl fmt::Display for CompactifiedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Squeeze{{{} <- {}}}", self.target, self.inner)
    }
}
