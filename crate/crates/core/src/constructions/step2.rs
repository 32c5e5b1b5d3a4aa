//! The seed pair `(f, g)` of eventually-trivial PL maps used by the
//! square-root-of-F builder.
//!
//! `f` is supported on `(0, 2)` and `g` on `(1, 3)`; both are strictly above
//! the identity on their supports, each translates a long run of the sixteen
//! slots of [`super::sixteen`] by exactly `+1/4` (four slot positions), and
//! the combination `g f^-1` is the identity precisely on `[17/16, 27/16]`
//! inside the overlap, so its support splits into exactly two components.
//! These four conditions are what every later planting step relies on, and
//! [`verify_step2_pair`] checks each of them, reporting the first violated
//! one by its number (`Step 2 (1)` through `Step 2 (4)`).

use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::rat::{rat, rat_int, zero};

use super::sixteen::{slot_inf, slot_sup};

/// A verified seed pair.  Constructed only through [`verified_step2_pair`] or
/// [`default_step2_pair`], so holding a value of this type certifies that the
/// four seed conditions hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step2Pair {
    f: Etpl,
    g: Etpl,
}

impl Step2Pair {
    pub fn f(&self) -> &Etpl {
        &self.f
    }

    pub fn g(&self) -> &Etpl {
        &self.g
    }

    /// The map of the word `g f^-1` (apply `g` first, then `f^-1`).
    pub fn word_g_f_inverse(&self) -> Etpl {
        self.g.compose(&self.f.inverse())
    }
}

/// The stock seed pair:
///
/// * `f`: breakpoints `(0,0), (1,5/4), (27/16,31/16), (2,2)` — slope `5/4`
///   into the `+1/4` translation block, slope `1/5` back out;
/// * `g`: breakpoints `(1,1), (17/16,21/16), (7/4,2), (3,3)` — slope `5` into
///   the `+1/4` translation block, slope `4/5` back out.
pub fn default_step2_pair() -> Step2Pair {
    let f = Etpl::from_breakpoints(
        vec![
            (rat_int(0), rat_int(0)),
            (rat_int(1), rat(5, 4)),
            (rat(27, 16), rat(31, 16)),
            (rat_int(2), rat_int(2)),
        ],
        zero(),
        zero(),
    )
    .expect("stock f breakpoints are monotone");
    let g = Etpl::from_breakpoints(
        vec![
            (rat_int(1), rat_int(1)),
            (rat(17, 16), rat(21, 16)),
            (rat(7, 4), rat_int(2)),
            (rat_int(3), rat_int(3)),
        ],
        zero(),
        zero(),
    )
    .expect("stock g breakpoints are monotone");
    verified_step2_pair(f, g).expect("stock pair satisfies the seed conditions")
}

/// Wrap a candidate pair after checking the four seed conditions.
pub fn verified_step2_pair(f: Etpl, g: Etpl) -> Result<Step2Pair> {
    verify_step2_pair(&f, &g)?;
    Ok(Step2Pair { f, g })
}

/// Check the four seed conditions, reporting the first violated one:
///
/// 1. `f` is supported exactly on `(0, 2)` and `g` exactly on `(1, 3)`, each
///    strictly above the identity there;
/// 2. `f` translates by `+1/4` on `[1, 27/16]` (slots 1–11 onto slots 5–15);
/// 3. `g` translates by `+1/4` on `[17/16, 7/4]` (slots 2–12 onto slots 6–16);
/// 4. the support of the word `g f^-1` has exactly the two components
///    `(0, 17/16)` and `(27/16, 3)`.
pub fn verify_step2_pair(f: &Etpl, g: &Etpl) -> Result<()> {
    check_supported_exactly_on(f, rat_int(0), rat_int(2), "f", "(0, 2)")?;
    check_supported_exactly_on(g, rat_int(1), rat_int(3), "g", "(1, 3)")?;

    let quarter = Etpl::translation(rat(1, 4));
    if !f.agree_on(&quarter, &IntervalQ::closed(slot_inf(1), slot_sup(11))) {
        return Err(PlError::Hypothesis(
            "Step 2 (2): f is not the translation x + 1/4 on all of [1, 27/16]".into(),
        ));
    }
    if !g.agree_on(&quarter, &IntervalQ::closed(slot_inf(2), slot_sup(12))) {
        return Err(PlError::Hypothesis(
            "Step 2 (3): g is not the translation x + 1/4 on all of [17/16, 7/4]".into(),
        ));
    }

    let w = g.compose(&f.inverse());
    let want = vec![
        IntervalQ::open(rat_int(0), rat(17, 16)),
        IntervalQ::open(rat(27, 16), rat_int(3)),
    ];
    if w.support() != want {
        return Err(PlError::Hypothesis(format!(
            "Step 2 (4): support of the word g f^-1 is {:?}, not exactly (0, 17/16) and (27/16, 3)",
            w.support()
        )));
    }
    Ok(())
}

fn check_supported_exactly_on(
    map: &Etpl,
    a: crate::rat::Rat,
    b: crate::rat::Rat,
    name: &str,
    shown: &str,
) -> Result<()> {
    let exact = map.support() == vec![IntervalQ::open(a.clone(), b.clone())];
    let above = map.is_strictly_above_interior(&a, &b)?;
    if !(exact && above) {
        return Err(PlError::Hypothesis(format!(
            "Step 2 (1): {name} must be supported exactly on {shown} and strictly above the identity there"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn rr(p: i64, q: i64) -> Rat {
        rat(p, q)
    }

    #[test]
    fn stock_pair_satisfies_all_four_conditions() {
        let pair = default_step2_pair();
        assert_eq!(pair.f().evaluate(&rat_int(1)), rr(5, 4));
        assert_eq!(pair.f().evaluate(&rr(27, 16)), rr(31, 16));
        assert_eq!(pair.g().evaluate(&rr(17, 16)), rr(21, 16));
        assert_eq!(pair.g().evaluate(&rr(7, 4)), rat_int(2));
    }

    #[test]
    fn combination_is_trivial_exactly_on_the_middle_block() {
        let pair = default_step2_pair();
        let w = pair.word_g_f_inverse();
        assert!(w.agree_on(&Etpl::identity(), &IntervalQ::closed(rr(17, 16), rr(27, 16))));
        assert_eq!(
            w.support(),
            vec![
                IntervalQ::open(rat_int(0), rr(17, 16)),
                IntervalQ::open(rr(27, 16), rat_int(3)),
            ]
        );
    }

    #[test]
    fn entry_slope_of_g_stays_strictly_below_the_quarter_translation() {
        let pair = default_step2_pair();
        // On the first slot [1, 17/16], g has slope 5 and runs from g(1) = 1 to
        // g(17/16) = 21/16, so g(x) < x + 1/4 strictly inside the slot: the
        // map x -> g(x) - 1/4 is strictly below the identity there, i.e. its
        // inverse is strictly above.
        let seg = pair.g().seg_on(&rat_int(1), &rr(17, 16)).unwrap();
        let affine = seg.is_affine().expect("single slope on the first slot");
        assert_eq!(affine.slope(), &rat_int(5));
        assert_eq!(seg.evaluate(&rr(33, 32)).unwrap(), rr(37, 32));
        let shifted = pair.g().compose(&Etpl::translation(rr(-1, 4)));
        assert!(shifted
            .inverse()
            .is_strictly_above_interior(&rat_int(1), &rr(17, 16))
            .unwrap());
    }

    #[test]
    fn exit_slopes_are_reciprocal_compressions() {
        let pair = default_step2_pair();
        // f has slope 1/5 on [27/16, 2]; g has slope 4/5 on [7/4, 3].
        assert_eq!(pair.f().evaluate(&rr(31, 16)), rr(31, 16) + rr(1, 20));
        assert_eq!(pair.g().evaluate(&rr(29, 16)), rr(41, 20));
    }

    #[test]
    fn pair_with_a_too_early_translation_block_fails_condition_four() {
        // Same as stock g but already translating by +1/4 from 33/32 on: the
        // combination becomes trivial on part of the first slot, splitting
        // the left support component early.
        let f = default_step2_pair().f().clone();
        let g = Etpl::from_breakpoints(
            vec![
                (rat_int(1), rat_int(1)),
                (rr(33, 32), rr(41, 32)),
                (rr(17, 16), rr(21, 16)),
                (rr(7, 4), rat_int(2)),
                (rat_int(3), rat_int(3)),
            ],
            zero(),
            zero(),
        )
        .unwrap();
        let err = verified_step2_pair(f, g).unwrap_err();
        assert!(err.to_string().contains("Step 2 (4)"), "got: {err}");
    }

    #[test]
    fn pair_with_leaky_support_fails_condition_one() {
        let f = Etpl::from_breakpoints(
            vec![
                (rat_int(-1), rat_int(-1)),
                (rat_int(1), rr(5, 4)),
                (rr(27, 16), rr(31, 16)),
                (rat_int(2), rat_int(2)),
            ],
            zero(),
            zero(),
        )
        .unwrap();
        let g = default_step2_pair().g().clone();
        let err = verify_step2_pair(&f, &g).unwrap_err();
        assert!(err.to_string().contains("Step 2 (1)"), "got: {err}");
    }

    #[test]
    fn pair_with_a_broken_translation_block_fails_condition_two() {
        // Kink inside [1, 27/16]: still monotone and supported on (0, 2) but
        // no longer a translation across the whole block.
        let f = Etpl::from_breakpoints(
            vec![
                (rat_int(0), rat_int(0)),
                (rat_int(1), rr(5, 4)),
                (rr(3, 2), rr(7, 4) + rr(1, 64)),
                (rr(27, 16), rr(31, 16)),
                (rat_int(2), rat_int(2)),
            ],
            zero(),
            zero(),
        )
        .unwrap();
        let g = default_step2_pair().g().clone();
        let err = verify_step2_pair(&f, &g).unwrap_err();
        assert!(err.to_string().contains("Step 2 (2)"), "got: {err}");
    }
}
