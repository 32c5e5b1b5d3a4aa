//! A single enum over the map classes, with the cross-class algebra that is
//! exactly decidable.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::compactified::CompactifiedMap;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::periodic::PeriodicPl;
use crate::piecewise::PiecewiseHomeo;
use crate::rat::Rat;
use crate::root::{RootPl, RootPower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Map {
    Pl(Etpl),
    Periodic(PeriodicPl),
    Comp(CompactifiedMap),
    Root(RootPl),
    Piecewise(PiecewiseHomeo),
}

/// Where a map moves points: finitely many components, optionally repeating
/// with a period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSupport {
    pub components: Vec<IntervalQ>,
    pub period: Option<Rat>,
}

fn rat_lcm(a: &Rat, b: &Rat) -> Rat {
    // lcm(p/q, r/s) in lowest terms is lcm(p, r) / gcd(q, s)
    let n = a.numer().lcm(b.numer());
    let d = a.denom().gcd(b.denom());
    Rat::new(n, d)
}

impl Map {
    pub fn class_name(&self) -> &'static str {
        match self {
            Map::Pl(_) => "pl",
            Map::Periodic(_) => "periodic",
            Map::Comp(_) => "squeezed",
            Map::Root(_) => "root",
            Map::Piecewise(_) => "piecewise",
        }
    }

    pub fn evaluate(&self, x: &Rat) -> Result<Rat> {
        Ok(match self {
            Map::Pl(m) => m.evaluate(x),
            Map::Periodic(m) => m.evaluate(x),
            Map::Comp(m) => m.evaluate(x),
            Map::Root(m) => m.evaluate(x)?,
            Map::Piecewise(m) => m.evaluate(x),
        })
    }

    pub fn evaluate_inverse(&self, y: &Rat) -> Result<Rat> {
        Ok(match self {
            Map::Pl(m) => m.evaluate_inverse(y),
            Map::Periodic(m) => m.evaluate_inverse(y),
            Map::Comp(m) => m.inverse().evaluate(y),
            Map::Root(m) => m.evaluate_inverse(y)?,
            Map::Piecewise(m) => m.inverse().evaluate(y),
        })
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Map::Pl(m) => m.is_identity(),
            Map::Periodic(m) => m.is_identity(),
            Map::Comp(m) => m.is_identity(),
            Map::Root(_) => false,
            Map::Piecewise(m) => m.is_identity(),
        }
    }

    pub fn inverse(&self) -> Result<Map> {
        Ok(match self {
            Map::Pl(m) => Map::Pl(m.inverse()),
            Map::Periodic(m) => Map::Periodic(m.inverse()),
            Map::Comp(m) => Map::Comp(m.inverse()),
            Map::Root(r) => {
                return Err(PlError::UnsupportedRootPower {
                    degree: r.degree() as u32,
                    power: -1,
                })
            }
            Map::Piecewise(m) => Map::Piecewise(m.inverse()),
        })
    }

    /// `self` followed by `other`, when the pair stays inside one class. A
    /// plain translation may meet a periodic map; other mixed-class products
    /// need the word engine.
    pub fn compose(&self, other: &Map) -> Result<Map> {
        match (self, other) {
            (Map::Pl(a), Map::Pl(b)) => Ok(Map::Pl(a.compose(b))),
            (Map::Comp(a), Map::Comp(b)) => Ok(Map::Comp(a.compose(b)?)),
            (Map::Periodic(a), Map::Periodic(b)) => Ok(Map::Periodic(a.compose(b)?)),
            (Map::Pl(a), Map::Periodic(b)) => {
                let t = a.as_translation().ok_or_else(|| {
                    PlError::ClassIncompatible(
                        "only a pure translation can meet a periodic map".into(),
                    )
                })?;
                let lifted = PeriodicPl::translation(b.period().clone(), t.clone())?;
                Ok(Map::Periodic(lifted.compose(b)?))
            }
            (Map::Periodic(a), Map::Pl(b)) => {
                let t = b.as_translation().ok_or_else(|| {
                    PlError::ClassIncompatible(
                        "only a pure translation can meet a periodic map".into(),
                    )
                })?;
                let lifted = PeriodicPl::translation(a.period().clone(), t.clone())?;
                Ok(Map::Periodic(a.compose(&lifted)?))
            }
            (a, b) => Err(PlError::ClassIncompatible(format!(
                "{} followed by {}",
                a.class_name(),
                b.class_name()
            ))),
        }
    }

    pub fn power(&self, n: i64) -> Result<Map> {
        Ok(match self {
            Map::Pl(m) => Map::Pl(m.power(n)),
            Map::Periodic(m) => Map::Periodic(m.power(n)?),
            Map::Comp(m) => Map::Comp(m.power(n)),
            Map::Root(r) => match r.power(n)? {
                RootPower::Pl(e) => Map::Pl(e),
                RootPower::Root(r) => Map::Root(r),
            },
            Map::Piecewise(m) => Map::Piecewise(m.power(n)),
        })
    }

    /// Exact functional equality across classes, where decidable.
    pub fn equals(&self, other: &Map) -> Result<bool> {
        use Map::*;
        Ok(match (self, other) {
            (Pl(a), Pl(b)) => a == b,
            (Comp(a), Comp(b)) => {
                if a.target().same_set(b.target()) {
                    a.inner() == b.inner()
                } else {
                    a.is_identity() && b.is_identity()
                }
            }
            (Periodic(a), Periodic(b)) => {
                if a.period() == b.period() {
                    a == b
                } else {
                    // both repeat with the lcm period; agreement over one
                    // shared period decides equality
                    let l = rat_lcm(a.period(), b.period());
                    a.seg_on(&Rat::zero(), &l)? == b.seg_on(&Rat::zero(), &l)?
                }
            }
            (Piecewise(a), Piecewise(b)) => a == b,
            (Pl(a), Piecewise(b)) | (Piecewise(b), Pl(a)) => {
                b.comp_parts().is_empty() && b.pl_part() == a
            }
            (Comp(a), Piecewise(b)) | (Piecewise(b), Comp(a)) => {
                if a.is_identity() {
                    b.is_identity()
                } else {
                    b.pl_part().is_identity()
                        && b.comp_parts().len() == 1
                        && b.comp_parts()[0] == *a
                }
            }
            (Pl(a), Comp(b)) | (Comp(b), Pl(a)) => {
                // a nontrivial squeezed copy is never piecewise linear
                a.is_identity() && b.is_identity()
            }
            (Pl(a), Periodic(b)) | (Periodic(b), Pl(a)) => {
                match (a.as_translation(), b.as_translation()) {
                    (Some(s), Some(t)) => *s == t,
                    // an eventually-translation map that is not a translation
                    // is never periodic, and conversely
                    _ => false,
                }
            }
            (Root(a), Root(b)) if a == b => true,
            (a, b) => {
                return Err(PlError::IncomparableClasses(format!(
                    "{} vs {}",
                    a.class_name(),
                    b.class_name()
                )))
            }
        })
    }

    pub fn support(&self) -> MapSupport {
        match self {
            Map::Pl(m) => MapSupport {
                components: m.support(),
                period: None,
            },
            Map::Comp(m) => MapSupport {
                components: m.support(),
                period: None,
            },
            Map::Root(r) => MapSupport {
                components: r.support(),
                period: None,
            },
            Map::Piecewise(m) => MapSupport {
                components: m.support(),
                period: None,
            },
            Map::Periodic(m) => {
                if let Some(t) = m.as_translation() {
                    if t.is_zero() {
                        return MapSupport {
                            components: Vec::new(),
                            period: None,
                        };
                    }
                    return MapSupport {
                        components: vec![IntervalQ::all()],
                        period: None,
                    };
                }
                match m.moved_window() {
                    None => MapSupport {
                        components: vec![IntervalQ::all()],
                        period: None,
                    },
                    Some(components) => MapSupport {
                        components,
                        period: Some(m.period().clone()),
                    },
                }
            }
        }
    }
}

impl fmt::Display for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Map::Pl(m) => m.fmt(f),
            Map::Periodic(m) => m.fmt(f),
            Map::Comp(m) => m.fmt(f),
            Map::Root(m) => m.fmt(f),
            Map::Piecewise(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{one, rat, rat_int, zero};

    #[test]
    fn translation_meets_periodic() {
        let tau = Map::Pl(Etpl::translation(one()));
        let half = Map::Periodic(PeriodicPl::translation(one(), rat(1, 2)).unwrap());
        let m = tau.compose(&half).unwrap();
        assert_eq!(m.evaluate(&zero()).unwrap(), rat(3, 2));
        assert!(tau
            .compose(&Map::Comp(
                CompactifiedMap::new(IntervalQ::open(zero(), one()), Etpl::identity()).unwrap()
            ))
            .is_err());
    }

    #[test]
    fn cross_class_equality() {
        let t_pl = Map::Pl(Etpl::translation(rat(1, 2)));
        let t_per = Map::Periodic(PeriodicPl::translation(rat_int(3), rat(1, 2)).unwrap());
        assert!(t_pl.equals(&t_per).unwrap());
        assert!(!t_pl.equals(&Map::Pl(Etpl::identity())).unwrap());

        // same periodic map declared with different periods
        let m1 = Map::Periodic(
            PeriodicPl::from_breakpoints(
                rat_int(1),
                vec![(zero(), zero()), (rat(1, 2), rat(3, 4))],
            )
            .unwrap(),
        );
        let m2 = Map::Periodic(
            PeriodicPl::from_breakpoints(
                rat_int(2),
                vec![
                    (zero(), zero()),
                    (rat(1, 2), rat(3, 4)),
                    (one(), one()),
                    (rat(3, 2), rat(7, 4)),
                ],
            )
            .unwrap(),
        );
        assert!(m1.equals(&m2).unwrap());

        let c = Map::Comp(
            CompactifiedMap::new(IntervalQ::open(zero(), one()), Etpl::translation(one()))
                .unwrap(),
        );
        assert!(!c.equals(&t_pl).unwrap());
        assert!(c
            .equals(&Map::Piecewise(PiecewiseHomeo::from_comp(
                match &c {
                    Map::Comp(cc) => cc.clone(),
                    _ => unreachable!(),
                }
            )))
            .unwrap());
    }

    #[test]
    fn support_classification() {
        let e = Etpl::supported_on(zero(), one(), vec![(rat(1, 2), rat(3, 4))]).unwrap();
        let s = Map::Pl(e.clone()).support();
        assert_eq!(s.components, vec![IntervalQ::open(zero(), one())]);
        assert_eq!(s.period, None);

        let half = Map::Periodic(PeriodicPl::translation(one(), rat(1, 2)).unwrap());
        assert_eq!(half.support().components, vec![IntervalQ::all()]);

        let m = Map::Periodic(
            PeriodicPl::from_breakpoints(
                rat_int(1),
                vec![(zero(), zero()), (rat(1, 2), rat(3, 4))],
            )
            .unwrap(),
        );
        let s = m.support();
        assert_eq!(s.period, Some(rat_int(1)));
        assert_eq!(s.components, vec![IntervalQ::open(zero(), one())]);
    }
}
