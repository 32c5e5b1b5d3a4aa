//! Square roots of the unit translation that twist a family of interval
//! maps into their inverses.
//!
//! Each input map of the unit interval is squeezed onto `[0, 1/2]` and used
//! as the free piece of a periodic square root `Tᵢ` of the translation
//! `τ: x ↦ x + 1`.  Together with the plain half translation `T_{n+1}` this
//! gives n+1 distinct roots of the same element.  The quotients
//! `Sᵢ = T_{n+1}⁻¹ Tᵢ` translate by nothing and act on each half-integer
//! segment alternately by the (planted) squeezed input and by its inverse —
//! the skew:  conjugation by any one root flips every `Sᵢ` across its two
//! actions.  The certificate table pins the segment identities exactly and
//! checks on sampled words that restriction to either half segment turns
//! products of the `Sᵢ` into products of the corresponding interval maps.

use std::collections::BTreeMap;

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::periodic::{root_of_translation, PeriodicPl};
use crate::rat::{one, rat, zero, Rat};
use crate::sampling::{random_word, seeded_rng};
use crate::words::evaluate_etpl;

use super::CertRow;

/// A family of periodic square roots of the unit translation, one per input
/// map, plus the half translation, with the certificate table.
#[derive(Clone, Debug)]
pub struct SkewRootBundle {
    inputs: Vec<Etpl>,
    squeezed: Vec<Etpl>,
    roots: Vec<PeriodicPl>,
    half: PeriodicPl,
    s_maps: Vec<PeriodicPl>,
    rows: Vec<CertRow>,
}

impl SkewRootBundle {
    /// The original maps of the unit interval, as given.
    pub fn inputs(&self) -> &[Etpl] {
        &self.inputs
    }
    /// The inputs squeezed onto `(0, 1/2)`.
    pub fn squeezed(&self) -> &[Etpl] {
        &self.squeezed
    }
    /// The square roots `T₁, …, T_n` built from the inputs.
    pub fn roots(&self) -> &[PeriodicPl] {
        &self.roots
    }
    /// The plain half translation `T_{n+1}`.
    pub fn half_translation(&self) -> &PeriodicPl {
        &self.half
    }
    /// The skew elements `Sᵢ = T_{n+1}⁻¹ Tᵢ` (half translation applied
    /// first).
    pub fn s_maps(&self) -> &[PeriodicPl] {
        &self.s_maps
    }
    /// All designated maps in order: `T₁, …, T_n, T_{n+1}`.
    pub fn designated_maps(&self) -> Vec<&PeriodicPl> {
        self.roots.iter().chain(std::iter::once(&self.half)).collect()
    }
    pub fn rows(&self) -> &[CertRow] {
        &self.rows
    }
    pub fn all_rows_pass(&self) -> bool {
        super::all_pass(&self.rows)
    }
}

/// Plants `e` (supported in `(0, 1/2)`) half a unit to the right.
fn half_shift(e: &Etpl) -> Etpl {
    e.affine_conjugate(&Affine::translation(-rat(1, 2)))
}

/// Builds the root family for maps supported in `(0, 1)`.
pub fn skew_root_of_translation(inputs: &[Etpl]) -> Result<SkewRootBundle> {
    if inputs.is_empty() {
        return Err(PlError::Hypothesis(
            "the root family needs at least one input map".into(),
        ));
    }
    let unit = IntervalQ::open(zero(), one());
    let half_box = IntervalQ::open(zero(), rat(1, 2));
    let squeeze = Affine::between_intervals(&half_box, &unit)?;
    let mut squeezed = Vec::new();
    for (i, h) in inputs.iter().enumerate() {
        for c in h.support() {
            if !c.is_subset_of(&unit) {
                return Err(PlError::Hypothesis(format!(
                    "input {} must be supported in (0, 1); found support component {c}",
                    i + 1
                )));
            }
        }
        squeezed.push(h.affine_conjugate(&squeeze));
    }

    let tau = PeriodicPl::translation(one(), one())?;
    let half = PeriodicPl::translation(one(), rat(1, 2))?;
    let up = Affine::translation(rat(1, 2));
    let mut roots = Vec::new();
    let mut s_maps = Vec::new();
    for h in &squeezed {
        let piece = h.seg_on(&zero(), &rat(1, 2))?.then_affine(&up);
        let t = root_of_translation(one(), &[piece])?;
        let s = half.inverse().compose(&t)?;
        roots.push(t);
        s_maps.push(s);
    }

    let mut rows = Vec::new();
    rows.push(CertRow::check(
        "the extra root is the half translation and squares to the unit translation",
        half.as_translation() == Some(rat(1, 2)) && half.power(2)? == tau,
    ));
    for (i, t) in roots.iter().enumerate() {
        rows.push(CertRow::check(
            &format!("T{} squares to the unit translation", i + 1),
            t.power(2)? == tau,
        ));
    }
    for (i, s) in s_maps.iter().enumerate() {
        let ht = &squeezed[i];
        rows.push(CertRow::check(
            &format!("S{} fixes the half-integer lattice", i + 1),
            s.evaluate(&zero()) == zero() && s.evaluate(&rat(1, 2)) == rat(1, 2),
        ));
        rows.push(CertRow::check(
            &format!("S{} acts by the inverse squeezed input on [0, 1/2]", i + 1),
            s.seg_on(&zero(), &rat(1, 2))? == ht.inverse().seg_on(&zero(), &rat(1, 2))?,
        ));
        rows.push(CertRow::check(
            &format!("S{} acts by the half-shifted squeezed input on [1/2, 1]", i + 1),
            s.seg_on(&rat(1, 2), &one())? == half_shift(ht).seg_on(&rat(1, 2), &one())?,
        ));
        let planted = ht.inverse().affine_conjugate(&Affine::translation(-one()));
        rows.push(CertRow::check(
            &format!("S{} repeats with period one on [1, 3/2]", i + 1),
            s.seg_on(&one(), &rat(3, 2))? == planted.seg_on(&one(), &rat(3, 2))?,
        ));
    }

    // sampled-word contract: restricting a product of the S maps to either
    // half segment gives the product of the squeezed inputs (inverted on the
    // left half, half-shifted on the right half)
    let gens: Vec<String> = (1..=s_maps.len()).map(|i| format!("s{i}")).collect();
    let gen_refs: Vec<&str> = gens.iter().map(|g| g.as_str()).collect();
    let mut left_bind = BTreeMap::new();
    let mut right_bind = BTreeMap::new();
    for (g, ht) in gens.iter().zip(&squeezed) {
        left_bind.insert(g.clone(), ht.inverse());
        right_bind.insert(g.clone(), half_shift(ht));
    }
    let mut rng = seeded_rng(0x5eed);
    let mut contract = true;
    let words_checked = 6;
    for _ in 0..words_checked {
        let w = random_word(&mut rng, &gen_refs, 8);
        let mut u = PeriodicPl::identity(one())?;
        for (name, exp) in w.letters() {
            let idx: usize = name[1..].parse().expect("generator index");
            u = u.compose(&s_maps[idx - 1].power(*exp)?)?;
        }
        let left = evaluate_etpl(&w, &left_bind)?;
        let right = evaluate_etpl(&w, &right_bind)?;
        if u.seg_on(&zero(), &rat(1, 2))? != left.seg_on(&zero(), &rat(1, 2))?
            || u.seg_on(&rat(1, 2), &one())? != right.seg_on(&rat(1, 2), &one())?
        {
            contract = false;
        }
    }
    rows.push(CertRow::new(
        "products of the S maps restrict to products of the inputs on both half segments",
        contract,
        format!("{words_checked} sampled words of length 8"),
    ));

    Ok(SkewRootBundle {
        inputs: inputs.to_vec(),
        squeezed,
        roots,
        half,
        s_maps,
        rows,
    })
}

/// A rational where some designated map of `a` differs from the
/// corresponding map of `b`, if any does (compared over the shorter list).
pub fn distinguishing_witness(a: &SkewRootBundle, b: &SkewRootBundle) -> Option<Rat> {
    let ma = a.designated_maps();
    let mb = b.designated_maps();
    for (ta, tb) in ma.iter().zip(mb.iter()) {
        if ta == tb {
            continue;
        }
        // two period-one maps that differ somewhere differ at a node of the
        // common refinement over one period, or at a midpoint between
        // consecutive nodes
        let mut xs: Vec<Rat> = vec![zero(), one()];
        for (x, _) in ta.nodes().iter().chain(tb.nodes().iter()) {
            let mut v = x.clone();
            while v < zero() {
                v += one();
            }
            while v >= one() {
                v -= one();
            }
            xs.push(v);
        }
        xs.sort();
        xs.dedup();
        let mids: Vec<Rat> = xs
            .windows(2)
            .map(|w| (&w[0] + &w[1]) / rat(2, 1))
            .collect();
        for x in xs.into_iter().chain(mids) {
            if ta.evaluate(&x) != tb.evaluate(&x) {
                return Some(x);
            }
        }
        unreachable!("maps compare unequal but agree on the refinement");
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_homeo_on;

    fn bump(p: Rat, q: Rat) -> Etpl {
        Etpl::supported_on(zero(), one(), vec![(p, q)]).unwrap()
    }

    #[test]
    fn identity_input_gives_the_half_translation() {
        let b = skew_root_of_translation(&[Etpl::identity()]).unwrap();
        assert!(b.all_rows_pass(), "rows: {:?}", b.rows());
        assert_eq!(b.roots()[0], *b.half_translation());
        assert!(b.s_maps()[0].is_identity());
    }

    #[test]
    fn one_bump_input_certifies_and_pins_values() {
        let h = bump(rat(1, 2), rat(3, 4));
        let b = skew_root_of_translation(&[h.clone()]).unwrap();
        assert!(b.all_rows_pass(), "rows: {:?}", b.rows());
        // squeezing halves the coordinates: h̃(1/4) = 3/8
        assert_eq!(b.squeezed()[0].evaluate(&rat(1, 4)), rat(3, 8));
        // T₁ carries 1/4 to 3/8 + 1/2 = 7/8, and squaring lands at 5/4
        let t = &b.roots()[0];
        assert_eq!(t.evaluate(&rat(1, 4)), rat(7, 8));
        assert_eq!(t.evaluate(&t.evaluate(&rat(1, 4))), rat(5, 4));
        // S₁ undoes the squeezed bump on the left half
        assert_eq!(b.s_maps()[0].evaluate(&rat(3, 8)), rat(1, 4));
    }

    #[test]
    fn families_of_three_certify_with_seeded_inputs() {
        for seed in 0..4u64 {
            let mut rng = seeded_rng(seed);
            let hs: Vec<Etpl> = (0..3)
                .map(|_| random_homeo_on(&mut rng, &zero(), &one(), 2))
                .collect();
            let b = skew_root_of_translation(&hs).unwrap();
            assert!(b.all_rows_pass(), "seed {seed} rows: {:?}", b.rows());
        }
    }

    #[test]
    fn distinct_inputs_are_separated() {
        let a = skew_root_of_translation(&[bump(rat(1, 2), rat(3, 4))]).unwrap();
        let b = skew_root_of_translation(&[bump(rat(1, 2), rat(2, 3))]).unwrap();
        let x = distinguishing_witness(&a, &b).unwrap();
        assert_ne!(a.roots()[0].evaluate(&x), b.roots()[0].evaluate(&x));
        // longer family versus shorter family with the same first input
        let c = skew_root_of_translation(&[bump(rat(1, 2), rat(3, 4)), bump(rat(1, 3), rat(1, 2))])
            .unwrap();
        assert!(distinguishing_witness(&a, &c).is_some());
        assert!(distinguishing_witness(&a, &a).is_none());
    }

    #[test]
    fn leaky_input_is_rejected() {
        let leaky = Etpl::supported_on(-one(), one(), vec![(zero(), rat(1, 2))]).unwrap();
        let err = skew_root_of_translation(&[leaky]).unwrap_err();
        assert!(err.to_string().contains("(0, 1)"), "err: {err}");
    }
}
