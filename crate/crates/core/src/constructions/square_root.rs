//! Planting a marked extension pair on the seed pair to build a square root
//! of the Thompson pair structure.
//!
//! Given the verified seed pair `(f, g)` of [`super::step2`] and two maps
//! `h₁, h₂` supported in the interior of the sixth slot, the builder forms
//!
//! * `h₃`: the copy of `h₂` replanted a quarter to the right, onto the tenth
//!   slot — equivalently the word `f⁻¹ h₂ f`, and also `g⁻¹ h₂ g` (the build
//!   checks both agreements exactly);
//! * `λ₁ = h₁⁻¹ h₃⁻¹ f` and `λ₂ = g`;
//! * the products `m = λ₂ λ₁⁻¹` and `k₁ = λ₁⁻¹ λ₂`, whose restrictions carry
//!   the planted maps around the line;
//! * the four extracted restrictions `p₁, p₂` (left block) and `q₁, q₂`
//!   (right block), which are nested pairs certifying the marking;
//! * the squares `λ₁², λ₂²`, which form a two-chain satisfying the
//!   chained-support dynamical criterion with pushed value exactly `2`.
//!
//! [`certify_restriction_table`] re-derives all of this as ten exact
//! pass/fail rows, and [`support_carrier_report`] locates every support
//! component of `m` and `k₁` inside its designated carrier region.

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::interval::IntervalQ;
use crate::mixed::MixedWord;
use crate::rat::{fmt_rat, rat, rat_int, zero, Rat};
use crate::thompson::{
    chain_relators_and_commutation, check_nested_left, check_nested_right, check_two_chain,
    p_realization, ChainData, CriterionKind, FCertificate,
};

use super::sixteen::{slot_closed, slot_open};
use super::step2::Step2Pair;
use super::CertRow;

/// Everything produced by [`build_square_root_pair`], in exact form.
#[derive(Clone, Debug)]
pub struct SquareRootBundle {
    pair: Step2Pair,
    h1: MixedWord,
    h2: MixedWord,
    h3: MixedWord,
    lambda1: MixedWord,
    lambda2: MixedWord,
    m: MixedWord,
    k1: MixedWord,
    p1: MixedWord,
    p2: MixedWord,
    q1: MixedWord,
    q2: MixedWord,
    squares_chain: ChainData,
    squares_dyn_value: Rat,
    squares_certificate: FCertificate,
}

impl SquareRootBundle {
    pub fn pair(&self) -> &Step2Pair {
        &self.pair
    }
    pub fn h1(&self) -> &MixedWord {
        &self.h1
    }
    pub fn h2(&self) -> &MixedWord {
        &self.h2
    }
    /// `h₂` replanted onto the tenth slot.
    pub fn h3(&self) -> &MixedWord {
        &self.h3
    }
    /// The square root of `m`: the word `h₁⁻¹ h₃⁻¹ f`.
    pub fn lambda1(&self) -> &MixedWord {
        &self.lambda1
    }
    /// The second root: just `g`.
    pub fn lambda2(&self) -> &MixedWord {
        &self.lambda2
    }
    /// `m = λ₂ λ₁⁻¹`, the word `g f⁻¹ h₃ h₁`.
    pub fn m(&self) -> &MixedWord {
        &self.m
    }
    /// `k₁ = λ₁⁻¹ λ₂`, the word `f⁻¹ h₃ h₁ g`.
    pub fn k1(&self) -> &MixedWord {
        &self.k1
    }
    /// `k₁` restricted to `[0, 21/16]`.
    pub fn p1(&self) -> &MixedWord {
        &self.p1
    }
    /// `m` restricted to `[0, 17/16]`.
    pub fn p2(&self) -> &MixedWord {
        &self.p2
    }
    /// `m` restricted to `[27/16, 3]`.
    pub fn q1(&self) -> &MixedWord {
        &self.q1
    }
    /// `k₁` restricted to `[29/16, 3]`.
    pub fn q2(&self) -> &MixedWord {
        &self.q2
    }
    /// Support endpoints of the two-chain formed by `(λ₁², λ₂²)`.
    pub fn squares_chain(&self) -> &ChainData {
        &self.squares_chain
    }
    /// The exact value of `λ₂²(λ₁²(b))` pushed against the chain point `c`.
    pub fn squares_dyn_value(&self) -> &Rat {
        &self.squares_dyn_value
    }
    /// Relator-backed certificate that `(λ₁², λ₂²)` generates the marked
    /// Thompson pair via the dynamical criterion.
    pub fn squares_certificate(&self) -> &FCertificate {
        &self.squares_certificate
    }
}

/// Affinely replants a bounded-support word from the interior of `from` into
/// the interior of `to`.  Fails if the word's support leaks out of `from`.
pub fn replant(w: &MixedWord, from: &IntervalQ, to: &IntervalQ) -> Result<MixedWord> {
    for c in w.support()? {
        if !c.is_subset_of(from) {
            return Err(PlError::Hypothesis(format!(
                "support component {c} leaks outside the source region {from}"
            )));
        }
    }
    Ok(w.affine_conjugate(&Affine::between_intervals(to, from)?))
}

/// The crosswise subdirect-product realization on (0, 1) ∪ (2, 3), squeezed
/// from (0, 3) into the open sixth slot: the standard planted inputs for the
/// bundle.
pub fn squeezed_realization_pair() -> Result<(MixedWord, MixedWord)> {
    let r = p_realization(
        &IntervalQ::open(zero(), rat_int(1)),
        &IntervalQ::open(rat_int(2), rat_int(3)),
    )?;
    let big = IntervalQ::open(zero(), rat_int(3));
    let h1 = replant(&MixedWord::pl(r.s.clone()), &big, &slot_open(6))?;
    let h2 = replant(&MixedWord::pl(r.t.clone()), &big, &slot_open(6))?;
    Ok((h1, h2))
}

fn require_supported_in_slot(w: &MixedWord, who: &str) -> Result<()> {
    let slot = slot_open(6);
    for c in w.support()? {
        if !c.is_subset_of(&slot) {
            return Err(PlError::Hypothesis(format!(
                "{who} must be supported inside the open sixth slot {slot}; \
                 its support component {c} leaks out"
            )));
        }
    }
    Ok(())
}

/// The replanting conjugator: a shift by `+1/4`, carrying the sixth slot onto
/// the tenth.  (Conjugation applies the affine map first, so the shift enters
/// with a minus sign.)
fn quarter_right() -> Affine {
    Affine::translation(rat(-1, 4))
}

/// Builds the bundle from a verified seed pair and two planted maps supported
/// in the open sixth slot.
pub fn build_square_root_pair(
    pair: &Step2Pair,
    h1: &MixedWord,
    h2: &MixedWord,
) -> Result<SquareRootBundle> {
    require_supported_in_slot(h1, "the first planted map")?;
    require_supported_in_slot(h2, "the second planted map")?;

    let f = MixedWord::pl(pair.f().clone());
    let g = MixedWord::pl(pair.g().clone());

    let h3 = h2.affine_conjugate(&quarter_right());
    // both seed maps translate the closed sixth slot by +1/4, so conjugating
    // h₂ by either must replant it identically; check both against h₃
    let by_f = f.inverse().concat(h2).concat(&f);
    let by_g = g.inverse().concat(h2).concat(&g);
    if !by_f.equals(&h3)? || !by_g.equals(&h3)? {
        return Err(PlError::Hypothesis(
            "conjugating the second planted map by the seed maps does not replant it \
             a quarter to the right; the seed pair and the planted supports are \
             incompatible"
                .into(),
        ));
    }

    let lambda1 = h1.inverse().concat(&h3.inverse()).concat(&f);
    let lambda2 = g.clone();
    let m = lambda2.concat(&lambda1.inverse());
    let k1 = lambda1.inverse().concat(&lambda2);

    let p1 = k1.restricted_to(&IntervalQ::closed(zero(), rat(21, 16)))?;
    let p2 = m.restricted_to(&IntervalQ::closed(zero(), rat(17, 16)))?;
    let q1 = m.restricted_to(&IntervalQ::closed(rat(27, 16), rat_int(3)))?;
    let q2 = k1.restricted_to(&IntervalQ::closed(rat(29, 16), rat_int(3)))?;

    let a2 = lambda1.pow(2);
    let b2 = lambda2.pow(2);
    let squares_chain = check_two_chain(&a2, &b2)?;
    let squares_dyn_value = b2.evaluate(&a2.evaluate(&squares_chain.b));
    let mut failures = Vec::new();
    if !a2.is_above_identity()? {
        failures.push("the squared first root is not above the identity".to_owned());
    }
    if !b2.is_above_identity()? {
        failures.push("the squared second root is not above the identity".to_owned());
    }
    if squares_dyn_value < squares_chain.c {
        failures.push(format!(
            "pushed value {} stops short of the chain point {}",
            fmt_rat(&squares_dyn_value),
            fmt_rat(&squares_chain.c)
        ));
    }
    let (relators_hold, noncommuting_witness) = chain_relators_and_commutation(&a2, &b2)?;
    let squares_certificate = FCertificate {
        criterion: CriterionKind::Dyn,
        hypothesis_failures: failures,
        relators_hold,
        noncommuting_witness,
    };

    Ok(SquareRootBundle {
        pair: pair.clone(),
        h1: h1.clone(),
        h2: h2.clone(),
        h3,
        lambda1,
        lambda2,
        m,
        k1,
        p1,
        p2,
        q1,
        q2,
        squares_chain,
        squares_dyn_value,
        squares_certificate,
    })
}

fn cert_row(label: &str, cert: &FCertificate) -> CertRow {
    let mut detail = String::new();
    if !cert.hypothesis_failures.is_empty() {
        detail = cert.hypothesis_failures.join("; ");
    } else if !cert.relators_hold {
        detail = "a relator fails".to_owned();
    } else {
        match &cert.noncommuting_witness {
            Some(w) => detail.push_str(&format!("non-commutation witness {}", fmt_rat(w))),
            None => detail.push_str("the pair commutes"),
        }
    }
    CertRow::new(label, cert.is_valid(), detail)
}

/// The ten-row certificate table for a built bundle: where `m` and `k₁` carry
/// the planted maps, how the extracted restrictions behave at the block
/// boundaries, and the two nested-pair certificates.
pub fn certify_restriction_table(b: &SquareRootBundle) -> Result<Vec<CertRow>> {
    let f = MixedWord::pl(b.pair().f().clone());
    let g = MixedWord::pl(b.pair().g().clone());
    let j6 = slot_closed(6);
    let j10 = slot_closed(10);
    let mut rows = Vec::with_capacity(10);

    rows.push(CertRow::check(
        "m restricted to the closed sixth slot is h1",
        b.m().concat(&b.h1().inverse()).is_identity_on(&j6)?,
    ));
    rows.push(CertRow::check(
        "m restricted to the closed tenth slot is the replanted h2",
        b.m().concat(&b.h3().inverse()).is_identity_on(&j10)?,
    ));
    let h1_shifted = b.h1().affine_conjugate(&Affine::translation(rat(-1, 4)));
    rows.push(CertRow::check(
        "k1 restricted to the closed tenth slot is the replanted h1",
        b.k1().concat(&h1_shifted.inverse()).is_identity_on(&j10)?,
    ));
    rows.push(CertRow::check(
        "k1 is trivial on the closed sixth slot",
        b.k1().is_identity_on(&j6)?,
    ));

    let p1_at = b.p1().evaluate(&rat(17, 16));
    rows.push(CertRow::value(
        "p1 pushes 17/16 strictly below 1",
        p1_at < rat_int(1),
        &p1_at,
    ));
    rows.push(CertRow::check(
        "p1 and p2 both act as the inverse seed map f^-1 on [0, 1]",
        b.p1()
            .concat(&f)
            .is_identity_on(&IntervalQ::closed(zero(), rat_int(1)))?
            && b.p2()
                .concat(&f)
                .is_identity_on(&IntervalQ::closed(zero(), rat_int(1)))?,
    ));
    let q1_at = b.q1().evaluate(&rat(29, 16));
    rows.push(CertRow::value(
        "q1 pushes 29/16 strictly above 2",
        q1_at > rat_int(2),
        &q1_at,
    ));
    rows.push(CertRow::check(
        "q1 and q2 both act as the seed map g on [2, 3]",
        b.q1()
            .concat(&g.inverse())
            .is_identity_on(&IntervalQ::closed(rat_int(2), rat_int(3)))?
            && b.q2()
                .concat(&g.inverse())
                .is_identity_on(&IntervalQ::closed(rat_int(2), rat_int(3)))?,
    ));

    rows.push(cert_row(
        "nested pair (p1, p2) pushing left on (0, 21/16)",
        &check_nested_left(b.p1(), b.p2(), &zero(), &rat(17, 16), &rat(21, 16))?,
    ));
    rows.push(cert_row(
        "nested pair (q1, q2) pushing right on (27/16, 3)",
        &check_nested_right(b.q1(), b.q2(), &rat(27, 16), &rat(29, 16), &rat_int(3))?,
    ));
    Ok(rows)
}

/// Where the support of one of the combination words actually sits: each
/// maximal support component must lie inside one of the designated carrier
/// regions.
#[derive(Clone, Debug)]
pub struct CarrierReport {
    pub carriers: Vec<IntervalQ>,
    pub components: Vec<IntervalQ>,
    /// Support components inside no carrier (empty for a correct build).
    pub stray: Vec<IntervalQ>,
}

impl CarrierReport {
    pub fn within_carriers(&self) -> bool {
        self.stray.is_empty()
    }

    /// Which carriers meet the support, in carrier order.
    pub fn occupied(&self) -> Vec<bool> {
        self.carriers
            .iter()
            .map(|car| self.components.iter().any(|c| c.is_subset_of(car)))
            .collect()
    }
}

fn carrier_report(w: &MixedWord, carriers: Vec<IntervalQ>) -> Result<CarrierReport> {
    let components = w.support()?;
    let stray = components
        .iter()
        .filter(|c| !carriers.iter().any(|car| c.is_subset_of(car)))
        .cloned()
        .collect();
    Ok(CarrierReport {
        carriers,
        components,
        stray,
    })
}

/// Carrier reports for `m` (regions `(0, 17/16)`, sixth slot, tenth slot,
/// `(27/16, 3)`) and for `k₁` (regions `(0, 21/16)`, tenth slot, fourteenth
/// slot, `(31/16, 3)`).
pub fn support_carrier_report(b: &SquareRootBundle) -> Result<(CarrierReport, CarrierReport)> {
    let m_carriers = vec![
        IntervalQ::open(zero(), rat(17, 16)),
        slot_open(6),
        slot_open(10),
        IntervalQ::open(rat(27, 16), rat_int(3)),
    ];
    let k1_carriers = vec![
        IntervalQ::open(zero(), rat(21, 16)),
        slot_open(10),
        slot_open(14),
        IntervalQ::open(rat(31, 16), rat_int(3)),
    ];
    Ok((
        carrier_report(b.m(), m_carriers)?,
        carrier_report(b.k1(), k1_carriers)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::all_pass;
    use crate::constructions::step2::default_step2_pair;

    fn identity_inputs() -> (MixedWord, MixedWord) {
        (MixedWord::identity(), MixedWord::identity())
    }

    fn squeezed_realization_inputs() -> (MixedWord, MixedWord) {
        squeezed_realization_pair().unwrap()
    }

    #[test]
    fn trivial_plant_reduces_to_the_seed_pair() {
        let pair = default_step2_pair();
        let (h1, h2) = identity_inputs();
        let b = build_square_root_pair(&pair, &h1, &h2).unwrap();
        assert_eq!(b.lambda1().as_pl().unwrap(), *pair.f());
        assert_eq!(b.lambda2().as_pl().unwrap(), *pair.g());
        assert_eq!(*b.squares_dyn_value(), rat_int(2));
        assert!(b.squares_certificate().is_valid());
        let rows = certify_restriction_table(&b).unwrap();
        assert!(all_pass(&rows), "failing rows: {:?}", rows);
        let (m_rep, k1_rep) = support_carrier_report(&b).unwrap();
        assert!(m_rep.within_carriers() && k1_rep.within_carriers());
        assert_eq!(m_rep.occupied(), vec![true, false, false, true]);
        assert_eq!(k1_rep.occupied(), vec![true, false, false, true]);
    }

    #[test]
    fn squeezed_realization_plant_certifies_everything() {
        let pair = default_step2_pair();
        let (h1, h2) = squeezed_realization_inputs();
        let b = build_square_root_pair(&pair, &h1, &h2).unwrap();
        let rows = certify_restriction_table(&b).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(all_pass(&rows), "failing rows: {:?}", rows);
        // frozen boundary values
        assert_eq!(b.p1().evaluate(&rat(17, 16)), rat(17, 20));
        assert_eq!(b.q1().evaluate(&rat(29, 16)), rat(41, 20));
        assert_eq!(*b.squares_dyn_value(), rat_int(2));
        assert!(b.squares_certificate().is_valid());
        // all four carrier regions are now occupied for both words
        let (m_rep, k1_rep) = support_carrier_report(&b).unwrap();
        assert!(m_rep.within_carriers(), "stray: {:?}", m_rep.stray);
        assert!(k1_rep.within_carriers(), "stray: {:?}", k1_rep.stray);
        assert_eq!(m_rep.occupied(), vec![true, true, true, true]);
        assert_eq!(k1_rep.occupied(), vec![true, true, true, true]);
    }

    #[test]
    fn planted_maps_travel_as_predicted() {
        let pair = default_step2_pair();
        let (h1, h2) = squeezed_realization_inputs();
        let b = build_square_root_pair(&pair, &h1, &h2).unwrap();
        // m carries h1 on the sixth slot and the replanted h2 on the tenth
        assert!(b
            .m()
            .concat(&b.h1().inverse())
            .is_identity_on(&slot_closed(6))
            .unwrap());
        // h3 is h2 shifted right by a quarter
        let x = rat(43, 32);
        assert_eq!(
            b.h3().evaluate(&(&x + rat(1, 4))),
            b.h2().evaluate(&x) + rat(1, 4)
        );
        // the two roots square to a pair agreeing with (f², g²) away from the
        // planted slots
        let f2 = pair.f().compose(pair.f());
        assert_eq!(b.lambda1().pow(2).evaluate(&rat_int(1)), f2.evaluate(&rat_int(1)));
        assert_eq!(b.lambda1().pow(2).evaluate(&rat_int(1)), rat(3, 2));
    }

    #[test]
    fn leaky_input_is_rejected() {
        let pair = default_step2_pair();
        // supported on (0, 1): outside the sixth slot
        let stray = MixedWord::pl(
            crate::etpl::Etpl::supported_on(
                zero(),
                rat_int(1),
                vec![(rat(1, 2), rat(3, 4))],
            )
            .unwrap(),
        );
        let err = build_square_root_pair(&pair, &stray, &MixedWord::identity()).unwrap_err();
        assert!(err.to_string().contains("sixth slot"), "got: {err}");
    }
}
