//! Homeomorphisms assembled from a PL line map and squeezed copies.
//!
//! Every map certified in this crate that is not purely piecewise linear
//! decomposes as: finitely many squeezed copies with pairwise disjoint
//! targets, times a PL map that is the identity on every target. That
//! decomposition is unique once identity copies are dropped and the copies
//! are ordered by target, so structural equality again decides functional
//! equality.

use std::fmt;

use crate::compactified::CompactifiedMap;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseHomeo {
    pl: Etpl,
    comps: Vec<CompactifiedMap>,
}

impl PiecewiseHomeo {
    pub fn new(pl: Etpl, comps: Vec<CompactifiedMap>) -> Result<Self> {
        let mut comps: Vec<CompactifiedMap> =
            comps.into_iter().filter(|c| !c.is_identity()).collect();
        comps.sort_by(|a, b| a.target().lo.cmp(&b.target().lo));
        for w in comps.windows(2) {
            if !w[0].target().is_disjoint_from(w[1].target()) {
                return Err(PlError::InvalidMap(format!(
                    "squeeze targets overlap: {} and {}",
                    w[0].target(),
                    w[1].target()
                )));
            }
        }
        for c in &comps {
            if !pl.agree_on(&Etpl::identity(), &c.target().closure()) {
                return Err(PlError::InvalidMap(format!(
                    "the PL part must fix the target {} pointwise",
                    c.target()
                )));
            }
        }
        Ok(PiecewiseHomeo { pl, comps })
    }

    pub fn from_etpl(pl: Etpl) -> Self {
        PiecewiseHomeo {
            pl,
            comps: Vec::new(),
        }
    }

    pub fn from_comp(c: CompactifiedMap) -> Self {
        PiecewiseHomeo {
            pl: Etpl::identity(),
            comps: if c.is_identity() { Vec::new() } else { vec![c] },
        }
    }

    pub fn pl_part(&self) -> &Etpl {
        &self.pl
    }

    pub fn comp_parts(&self) -> &[CompactifiedMap] {
        &self.comps
    }

    /// The squeezed copy acting on the given region, if any.
    pub fn comp_on(&self, region: &IntervalQ) -> Option<&CompactifiedMap> {
        self.comps.iter().find(|c| c.target().same_set(region))
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        for c in &self.comps {
            if c.target().contains(x) {
                return c.evaluate(x);
            }
        }
        self.pl.evaluate(x)
    }

    pub fn inverse(&self) -> PiecewiseHomeo {
        PiecewiseHomeo {
            pl: self.pl.inverse(),
            comps: self.comps.iter().map(|c| c.inverse()).collect(),
        }
    }

    pub fn power(&self, n: i64) -> PiecewiseHomeo {
        PiecewiseHomeo {
            pl: self.pl.power(n),
            comps: self
                .comps
                .iter()
                .map(|c| c.power(n))
                .filter(|c| !c.is_identity())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.pl.is_identity() && self.comps.is_empty()
    }

    /// All support components, in increasing order.
    pub fn support(&self) -> Vec<IntervalQ> {
        let mut out = self.pl.support();
        for c in &self.comps {
            out.extend(c.support());
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Restricts to a region disjoint from every squeeze target; the result
    /// is plain PL.
    pub fn restrict_to_etpl(&self, region: &IntervalQ) -> Result<Etpl> {
        for c in &self.comps {
            if !c.target().is_disjoint_from(region) {
                return Err(PlError::Restriction(format!(
                    "region {region} meets the squeeze target {}",
                    c.target()
                )));
            }
        }
        self.pl.restrict_to_region(region)
    }
}

impl fmt::Display for PiecewiseHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Piecewise{{pl: {}", self.pl)?;
        for c in &self.comps {
            write!(f, "; {c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{one, rat, rat_int, zero};

    fn squeeze(lo: Rat, hi: Rat) -> CompactifiedMap {
        CompactifiedMap::new(IntervalQ::open(lo, hi), Etpl::translation(one())).unwrap()
    }

    #[test]
    fn canonical_ordering_and_identity_drop() {
        let a = squeeze(rat_int(2), rat_int(3));
        let b = squeeze(zero(), one());
        let trivial =
            CompactifiedMap::new(IntervalQ::open(rat_int(5), rat_int(6)), Etpl::identity())
                .unwrap();
        let p = PiecewiseHomeo::new(Etpl::identity(), vec![a.clone(), trivial, b.clone()]).unwrap();
        assert_eq!(p.comp_parts(), &[b, a]);
        assert!(!p.is_identity());
        assert!(PiecewiseHomeo::from_etpl(Etpl::identity()).is_identity());
    }

    #[test]
    fn overlapping_targets_rejected() {
        let a = squeeze(zero(), rat_int(2));
        let b = squeeze(one(), rat_int(3));
        assert!(PiecewiseHomeo::new(Etpl::identity(), vec![a, b]).is_err());
        // shared endpoints are fine
        let a = squeeze(zero(), one());
        let b = squeeze(one(), rat_int(2));
        assert!(PiecewiseHomeo::new(Etpl::identity(), vec![a, b]).is_ok());
    }

    #[test]
    fn pl_part_must_fix_targets() {
        let c = squeeze(zero(), one());
        let moving = Etpl::supported_on(zero(), rat_int(2), vec![(one(), rat(3, 2))]).unwrap();
        assert!(PiecewiseHomeo::new(moving, vec![c.clone()]).is_err());
        let elsewhere =
            Etpl::supported_on(rat_int(2), rat_int(3), vec![(rat(5, 2), rat(11, 4))]).unwrap();
        let p = PiecewiseHomeo::new(elsewhere.clone(), vec![c.clone()]).unwrap();
        // evaluation routes through the right part
        assert_eq!(p.evaluate(&rat(1, 2)), c.evaluate(&rat(1, 2)));
        assert_eq!(p.evaluate(&rat(5, 2)), rat(11, 4));
        assert_eq!(p.evaluate(&rat(7, 2)), rat(7, 2));
    }

    #[test]
    fn inverse_and_power_act_partwise() {
        let c = squeeze(zero(), one());
        let p = PiecewiseHomeo::new(Etpl::identity(), vec![c.clone()]).unwrap();
        let x = rat(1, 3);
        assert_eq!(p.inverse().evaluate(&p.evaluate(&x)), x);
        assert_eq!(p.power(2).evaluate(&x), p.evaluate(&p.evaluate(&x)));
        assert!(p.power(0).is_identity());
    }

    #[test]
    fn restriction_away_from_targets() {
        let c = squeeze(zero(), one());
        let elsewhere =
            Etpl::supported_on(rat_int(2), rat_int(3), vec![(rat(5, 2), rat(11, 4))]).unwrap();
        let p = PiecewiseHomeo::new(elsewhere.clone(), vec![c]).unwrap();
        assert_eq!(
            p.restrict_to_etpl(&IntervalQ::closed(rat_int(2), rat_int(3)))
                .unwrap(),
            elsewhere
        );
        assert!(p
            .restrict_to_etpl(&IntervalQ::closed(zero(), rat_int(3)))
            .is_err());
    }
}
