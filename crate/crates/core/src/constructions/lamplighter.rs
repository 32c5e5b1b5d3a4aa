//! A square root of the lamplighter realization: a half translation and a
//! two-half map whose squares generate the classical copy.
//!
//! The lamplighter realization on the line is generated by the unit
//! translation `τ` together with one map supported in `(0, 1)`: the integer
//! translates of that map have pairwise disjoint supports, so they commute
//! and span the direct-sum fiber.  Here the pair is halved.  The translation
//! root is `T: x ↦ x + 1/2`; the support root is a map `ψ` assembled from
//! two independent inputs, planted on the two halves of `(0, 1)`, so that
//! `ψ(1/2) = 1/2`.  Squaring both recovers a lamplighter copy, while `ψ` and
//! its `T`-conjugate overlap on `[1/2, 1]`, where they act by the two inputs
//! — the same two-interval chain mechanism that drives the square roots of
//! the larger groups.

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::rat::{one, rat, zero, Rat};

use super::equation::commutator_map;
use super::CertRow;

/// The half-translation / half-support pair with its certificate table.
#[derive(Clone, Debug)]
pub struct LamplighterBundle {
    g1: Etpl,
    g2: Etpl,
    psi: Etpl,
    t: Etpl,
    conjugate: Etpl,
    rows: Vec<CertRow>,
}

impl LamplighterBundle {
    /// The first input, acting on the left half after planting.
    pub fn g1(&self) -> &Etpl {
        &self.g1
    }
    /// The second input, acting on the right half after planting.
    pub fn g2(&self) -> &Etpl {
        &self.g2
    }
    /// The assembled two-half map supported in `(0, 1)`.
    pub fn psi(&self) -> &Etpl {
        &self.psi
    }
    /// The half translation `T`.
    pub fn t(&self) -> &Etpl {
        &self.t
    }
    /// `T ψ T⁻¹`, the half shift of `ψ`, supported in `(1/2, 3/2)`.
    pub fn conjugate(&self) -> &Etpl {
        &self.conjugate
    }
    pub fn rows(&self) -> &[CertRow] {
        &self.rows
    }
    pub fn all_rows_pass(&self) -> bool {
        super::all_pass(&self.rows)
    }
}

/// Squeezes a map supported in `(0, 1)` onto the interval `to`.
fn squeeze(e: &Etpl, to: &IntervalQ) -> Result<Etpl> {
    let unit = IntervalQ::open(zero(), one());
    Ok(e.affine_conjugate(&Affine::between_intervals(to, &unit)?))
}

/// Undoes [`squeeze`]: carries a map supported in `from` back to `(0, 1)`.
fn unsqueeze(e: &Etpl, from: &IntervalQ) -> Result<Etpl> {
    let unit = IntervalQ::open(zero(), one());
    Ok(e.affine_conjugate(&Affine::between_intervals(&unit, from)?))
}

/// Builds the halved pair for two maps supported in `(0, 1)`.
pub fn lamplighter_root(g1: &Etpl, g2: &Etpl) -> Result<LamplighterBundle> {
    let unit = IntervalQ::open(zero(), one());
    for (label, g) in [("first", g1), ("second", g2)] {
        for c in g.support() {
            if !c.is_subset_of(&unit) {
                return Err(PlError::Hypothesis(format!(
                    "the {label} input must be supported in (0, 1); found support component {c}"
                )));
            }
        }
    }
    let left_half = IntervalQ::open(zero(), rat(1, 2));
    let right_half = IntervalQ::open(rat(1, 2), one());
    let planted1 = squeeze(g1, &left_half)?;
    let planted2 = squeeze(g2, &right_half)?;
    let psi = planted1.compose(&planted2);
    if psi.evaluate(&rat(1, 2)) != rat(1, 2) {
        return Err(PlError::Hypothesis(format!(
            "the assembled map must fix 1/2; it sends 1/2 to {}",
            psi.evaluate(&rat(1, 2))
        )));
    }
    let t = Etpl::translation(rat(1, 2));
    let tau = Etpl::translation(one());
    let conjugate = psi.affine_conjugate(&Affine::translation(-rat(1, 2)));

    let mut rows = Vec::new();
    rows.push(CertRow::check(
        "T squares to the unit translation",
        t.compose(&t) == tau,
    ));
    rows.push(CertRow::value(
        "psi fixes 1/2",
        psi.evaluate(&rat(1, 2)) == rat(1, 2),
        &psi.evaluate(&rat(1, 2)),
    ));
    let chain_shape = psi.support().iter().all(|c| c.is_subset_of(&unit))
        && conjugate
            .support()
            .iter()
            .all(|c| c.is_subset_of(&IntervalQ::open(rat(1, 2), rat(3, 2))));
    rows.push(CertRow::check(
        "the support and its half shift fit the two-interval chain (0,1), (1/2,3/2)",
        chain_shape,
    ));
    rows.push(CertRow::check(
        "psi recovers the first input on the left half",
        unsqueeze(&psi.restrict_to_region(&left_half.closure())?, &left_half)? == *g1,
    ));
    rows.push(CertRow::check(
        "psi recovers the second input on the right half",
        unsqueeze(&psi.restrict_to_region(&right_half.closure())?, &right_half)? == *g2,
    ));
    rows.push(CertRow::check(
        "the conjugate carries the first input onto the overlap [1/2, 1]",
        unsqueeze(&conjugate.restrict_to_region(&right_half.closure())?, &right_half)? == *g1,
    ));
    rows.push(CertRow::check(
        "psi is trivial exactly when both inputs are",
        psi.is_identity() == (g1.is_identity() && g2.is_identity()),
    ));

    // the lamplighter relations for the squares: integer translates of ψ²
    // have pairwise disjoint supports, hence commute
    let sq = psi.compose(&psi);
    let window: Vec<(i64, Etpl)> = (-5..=5)
        .map(|k| {
            (
                k,
                sq.affine_conjugate(&Affine::translation(Rat::from_integer((-k).into()))),
            )
        })
        .collect();
    let mut disjoint = true;
    for (i, a) in &window {
        for (j, b) in &window {
            if i >= j {
                continue;
            }
            for ca in a.support() {
                for cb in b.support() {
                    if !ca.is_disjoint_from(&cb) {
                        disjoint = false;
                    }
                }
            }
        }
    }
    rows.push(CertRow::new(
        "integer translates of psi squared have pairwise disjoint supports",
        disjoint,
        "shifts -5..=5",
    ));
    let mut commute = true;
    for (i, a) in &window {
        for (j, b) in &window {
            if i < j && (-2..=2).contains(i) && (-2..=2).contains(j) {
                if !commutator_map(a, b).is_identity() {
                    commute = false;
                }
            }
        }
    }
    rows.push(CertRow::new(
        "translates of psi squared commute exactly",
        commute,
        "all pairs with shifts -2..=2",
    ));

    Ok(LamplighterBundle {
        g1: g1.clone(),
        g2: g2.clone(),
        psi,
        t,
        conjugate,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_homeo_on, seeded_rng};

    fn bump(p: Rat, q: Rat) -> Etpl {
        Etpl::supported_on(zero(), one(), vec![(p, q)]).unwrap()
    }

    #[test]
    fn trivial_inputs_assemble_the_identity() {
        let b = lamplighter_root(&Etpl::identity(), &Etpl::identity()).unwrap();
        assert!(b.all_rows_pass(), "rows: {:?}", b.rows());
        assert!(b.psi().is_identity());
    }

    #[test]
    fn bump_inputs_pin_planted_values() {
        let g1 = bump(rat(1, 2), rat(3, 4));
        let g2 = bump(rat(1, 4), rat(1, 2));
        let b = lamplighter_root(&g1, &g2).unwrap();
        assert!(b.all_rows_pass(), "rows: {:?}", b.rows());
        // left half squeezes g1: 1/4 ↦ 3/8; right half squeezes g2: 5/8 ↦ 3/4
        assert_eq!(b.psi().evaluate(&rat(1, 4)), rat(3, 8));
        assert_eq!(b.psi().evaluate(&rat(5, 8)), rat(3, 4));
        // the conjugate replays the left half action half a unit later
        assert_eq!(b.conjugate().evaluate(&rat(3, 4)), rat(7, 8));
        // on the overlap the two roots genuinely interact
        assert!(!commutator_map(b.psi(), b.conjugate()).is_identity());
    }

    #[test]
    fn seeded_inputs_all_certify() {
        for seed in 0..4u64 {
            let mut rng = seeded_rng(seed);
            let g1 = random_homeo_on(&mut rng, &zero(), &one(), 3);
            let g2 = random_homeo_on(&mut rng, &zero(), &one(), 3);
            let b = lamplighter_root(&g1, &g2).unwrap();
            assert!(b.all_rows_pass(), "seed {seed} rows: {:?}", b.rows());
        }
    }

    #[test]
    fn leaky_input_is_rejected() {
        let leaky = Etpl::supported_on(zero(), rat(3, 2), vec![(one(), rat(5, 4))]).unwrap();
        let err = lamplighter_root(&Etpl::identity(), &leaky).unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "err: {err}");
    }
}
