//! Certificates that a pair of homeomorphisms generates a Thompson-style
//! group, via either the chained-support dynamical criterion or one of the
//! two nested-support criteria, always backed by exact relator checks.
//!
//! Also provides the classic PL generator pair on an interval, the doubled
//! realization of the subdirect product P (two marked copies of the group on
//! two disjoint intervals, generators paired crosswise), and a kernel test
//! for words against that realization.

use std::collections::BTreeMap;

use crate::affine::Affine;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::IntervalQ;
use crate::mixed::MixedWord;
use crate::rat::{one, rat, rat_int, zero, Rat};
use crate::words::{builtin, evaluate_etpl, evaluate_mixed, Word};

/// Endpoints of a two-chain: supports (a, c) and (b, d) with a < b < c < d,
/// overlapping in the proper subinterval (b, c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainData {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

fn single_support_interval(supp: &[IntervalQ]) -> Result<(Rat, Rat)> {
    if supp.len() != 1 {
        return Err(PlError::MultiComponentSupport(supp.len()));
    }
    let (lo, hi) = supp[0].finite_ends()?;
    Ok((lo.clone(), hi.clone()))
}

/// Verifies that the supports of f and g are single intervals forming a
/// two-chain, f's on the left, and returns the four endpoints.
pub fn check_two_chain(f: &MixedWord, g: &MixedWord) -> Result<ChainData> {
    let (a, c) = single_support_interval(&f.support()?)?;
    let (b, d) = single_support_interval(&g.support()?)?;
    if a >= b {
        return Err(PlError::Chain(format!(
            "the second support must begin strictly inside the first ({b} vs {a})"
        )));
    }
    if b >= c {
        return Err(PlError::Chain(format!(
            "supports ({a}, {c}) and ({b}, {d}) are disjoint"
        )));
    }
    if c >= d {
        return Err(PlError::Chain(format!(
            "support ({b}, {d}) is nested inside ({a}, {c})"
        )));
    }
    Ok(ChainData { a, b, c, d })
}

/// The chained-support dynamical criterion: for a two-chain with both maps
/// above the identity, g(f(b)) ≥ c forces the pair to generate the Thompson
/// group with its standard marking.
pub fn check_dyn_criterion(f: &MixedWord, g: &MixedWord) -> Result<bool> {
    let chain = check_two_chain(f, g)?;
    if !f.is_above_identity()? || !g.is_above_identity()? {
        return Err(PlError::Hypothesis(
            "dynamical criterion needs both maps above the identity".into(),
        ));
    }
    Ok(g.evaluate(&f.evaluate(&chain.b)) >= chain.c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    Dyn,
    NestedLeft,
    NestedRight,
    RelationsOnly,
}

/// A relator-backed certificate for one generating pair. The certificate is
/// valid when no hypothesis failed, both relators hold exactly, and a point
/// moved by the commutator witnesses non-commutation.
#[derive(Clone, Debug)]
pub struct FCertificate {
    pub criterion: CriterionKind,
    pub hypothesis_failures: Vec<String>,
    pub relators_hold: bool,
    pub noncommuting_witness: Option<Rat>,
}

impl FCertificate {
    pub fn is_valid(&self) -> bool {
        self.hypothesis_failures.is_empty()
            && self.relators_hold
            && self.noncommuting_witness.is_some()
    }
}

/// Evaluates the two standard relators at (f, g) and finds a point moved by
/// the commutator [f, g].
fn relators_and_commutation(f: &MixedWord, g: &MixedWord) -> Result<(bool, Option<Rat>)> {
    let mut bind = BTreeMap::new();
    bind.insert("a".to_owned(), f.clone());
    bind.insert("b".to_owned(), g.clone());
    let pres = builtin::f_presentation_lower();
    let mut relators_hold = true;
    for r in &pres.relators {
        if !evaluate_mixed(r, &bind)?.is_identity()? {
            relators_hold = false;
            break;
        }
    }
    let commutator = Word::commutator(&Word::gen("a"), &Word::gen("b"));
    let witness = evaluate_mixed(&commutator, &bind)?.witness_moved()?;
    Ok((relators_hold, witness))
}

/// Evaluates the two chain-marking relators at (A, B) = (f, g) and finds a
/// point moved by the commutator [f, g].
///
/// A two-chain pair corresponds to the (A, B) generating pair of the group
/// (A = a b⁻¹ carried on the left of the chain, B = b on the right), so its
/// relators are the conjugates of B by powers of AB: supp(B^{AB}) is pushed
/// past the right end of supp A exactly when the chained dynamics are fast
/// enough.
pub fn chain_relators_and_commutation(f: &MixedWord, g: &MixedWord) -> Result<(bool, Option<Rat>)> {
    let mut bind = BTreeMap::new();
    bind.insert("A".to_owned(), f.clone());
    bind.insert("B".to_owned(), g.clone());
    let pres = builtin::f_presentation_upper();
    let mut relators_hold = true;
    for r in &pres.relators {
        if !evaluate_mixed(r, &bind)?.is_identity()? {
            relators_hold = false;
            break;
        }
    }
    let commutator = Word::commutator(&Word::gen("A"), &Word::gen("B"));
    let witness = evaluate_mixed(&commutator, &bind)?.witness_moved()?;
    Ok((relators_hold, witness))
}

/// The weakest certificate: relators plus non-commutation, with no support
/// hypotheses.
pub fn relations_only_certificate(f: &MixedWord, g: &MixedWord) -> Result<FCertificate> {
    let (relators_hold, witness) = relators_and_commutation(f, g)?;
    Ok(FCertificate {
        criterion: CriterionKind::RelationsOnly,
        hypothesis_failures: Vec::new(),
        relators_hold,
        noncommuting_witness: witness,
    })
}

fn support_within(supp: &[IntervalQ], lo: &Rat, hi: &Rat) -> Result<bool> {
    for comp in supp {
        let (clo, chi) = comp.finite_ends()?;
        if clo < lo || chi > hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nested-pair criterion, pushing left: supp f ⊆ [a, b₂], supp g ⊆ [a, b₁]
/// with b₁ < b₂, f strictly below the identity on (a, b₂), and f = g on
/// [a, f(b₁)]. A valid certificate forces the standard marked Thompson group.
pub fn check_nested_left(
    f: &MixedWord,
    g: &MixedWord,
    a: &Rat,
    b1: &Rat,
    b2: &Rat,
) -> Result<FCertificate> {
    if !(a < b1 && b1 < b2) {
        return Err(PlError::InvalidInterval(format!(
            "nested-left needs a < b1 < b2, got {a}, {b1}, {b2}"
        )));
    }
    let mut failures = Vec::new();
    if !support_within(&f.support()?, a, b2)? {
        failures.push(format!("support of the first map leaks outside [{a}, {b2}]"));
    }
    if !support_within(&g.support()?, a, b1)? {
        failures.push(format!("support of the second map leaks outside [{a}, {b1}]"));
    }
    if !f
        .inverse()
        .strictly_above_on(&IntervalQ::open(a.clone(), b2.clone()))?
    {
        failures.push(format!(
            "first map is not strictly below the identity on ({a}, {b2})"
        ));
    }
    let v = f.evaluate(b1);
    if v <= *a {
        failures.push(format!("f(b1) = {v} does not stay inside (a, b1)"));
    } else if !f
        .concat(&g.inverse())
        .is_identity_on(&IntervalQ::closed(a.clone(), v.clone()))?
    {
        failures.push(format!("maps disagree on [{a}, {v}] = [a, f(b1)]"));
    }
    let (relators_hold, witness) = relators_and_commutation(f, g)?;
    Ok(FCertificate {
        criterion: CriterionKind::NestedLeft,
        hypothesis_failures: failures,
        relators_hold,
        noncommuting_witness: witness,
    })
}

/// Mirror image of [`check_nested_left`]: supp f ⊆ [a₁, b], supp g ⊆ [a₂, b]
/// with a₁ < a₂, f strictly above the identity on (a₁, b), and f = g on
/// [f(a₂), b].
pub fn check_nested_right(
    f: &MixedWord,
    g: &MixedWord,
    a1: &Rat,
    a2: &Rat,
    b: &Rat,
) -> Result<FCertificate> {
    if !(a1 < a2 && a2 < b) {
        return Err(PlError::InvalidInterval(format!(
            "nested-right needs a1 < a2 < b, got {a1}, {a2}, {b}"
        )));
    }
    let mut failures = Vec::new();
    if !support_within(&f.support()?, a1, b)? {
        failures.push(format!("support of the first map leaks outside [{a1}, {b}]"));
    }
    if !support_within(&g.support()?, a2, b)? {
        failures.push(format!("support of the second map leaks outside [{a2}, {b}]"));
    }
    if !f.strictly_above_on(&IntervalQ::open(a1.clone(), b.clone()))? {
        failures.push(format!(
            "first map is not strictly above the identity on ({a1}, {b})"
        ));
    }
    let v = f.evaluate(a2);
    if v >= *b {
        failures.push(format!("f(a2) = {v} does not stay inside (a2, b)"));
    } else if !f
        .concat(&g.inverse())
        .is_identity_on(&IntervalQ::closed(v.clone(), b.clone()))?
    {
        failures.push(format!("maps disagree on [{v}, {b}] = [f(a2), b]"));
    }
    let (relators_hold, witness) = relators_and_commutation(f, g)?;
    Ok(FCertificate {
        criterion: CriterionKind::NestedRight,
        hypothesis_failures: failures,
        relators_hold,
        noncommuting_witness: witness,
    })
}

/// The classic PL generator pair on (0, 1), orientation fixed by checking the
/// standard relators and non-commutation exactly.
fn classic_pair_on_unit() -> Result<(Etpl, Etpl)> {
    let x0 = Etpl::from_breakpoints(
        vec![
            (zero(), zero()),
            (rat(1, 2), rat(1, 4)),
            (rat(3, 4), rat(1, 2)),
            (one(), one()),
        ],
        zero(),
        zero(),
    )?;
    let x1 = Etpl::from_breakpoints(
        vec![
            (rat(1, 2), rat(1, 2)),
            (rat(3, 4), rat(5, 8)),
            (rat(7, 8), rat(3, 4)),
            (one(), one()),
        ],
        zero(),
        zero(),
    )?;
    let pres = builtin::f_presentation_lower();
    let candidates = [
        (x0.clone(), x1.clone()),
        (x0.inverse(), x1.inverse()),
    ];
    for (a, b) in candidates {
        let mut bind = BTreeMap::new();
        bind.insert("a".to_owned(), a.clone());
        bind.insert("b".to_owned(), b.clone());
        let relators_ok = pres
            .relators
            .iter()
            .map(|r| evaluate_etpl(r, &bind).map(|e| e.is_identity()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|ok| ok);
        let noncommuting = !a.compose(&b).agree_on(&b.compose(&a), &IntervalQ::all());
        if relators_ok && noncommuting {
            return Ok((a, b));
        }
    }
    Err(PlError::Hypothesis(
        "neither orientation of the classic pair satisfies the relators".into(),
    ))
}

/// A marked generating pair of the Thompson group supported in the bounded
/// interval `j`, produced by affine transport of the classic pair on (0, 1).
pub fn standard_f_generators(j: &IntervalQ) -> Result<(Etpl, Etpl)> {
    let (a, b) = classic_pair_on_unit()?;
    let unit = IntervalQ::open(zero(), one());
    if j.same_set(&unit) {
        return Ok((a, b));
    }
    let carry = Affine::between_intervals(j, &unit)?;
    Ok((a.affine_conjugate(&carry), b.affine_conjugate(&carry)))
}

/// A PL realization of the subdirect product P ≤ F × F: standard marked
/// copies on two disjoint intervals, with the generators paired crosswise —
/// s acts as the first-slot generator on the left interval and as the
/// second-slot generator on the right interval, and t the other way round.
#[derive(Clone, Debug)]
pub struct PRealization {
    pub s: Etpl,
    pub t: Etpl,
    pub left: (Etpl, Etpl),
    pub right: (Etpl, Etpl),
    pub j_left: IntervalQ,
    pub j_right: IntervalQ,
}

pub fn p_realization(j_left: &IntervalQ, j_right: &IntervalQ) -> Result<PRealization> {
    let (_, left_hi) = j_left.finite_ends()?;
    let (right_lo, _) = j_right.finite_ends()?;
    if left_hi > right_lo {
        return Err(PlError::InvalidInterval(format!(
            "realization intervals must be disjoint and ordered: {j_left} vs {j_right}"
        )));
    }
    let left = standard_f_generators(j_left)?;
    let right = standard_f_generators(j_right)?;
    let s = left.0.compose(&right.1);
    let t = left.1.compose(&right.0);
    Ok(PRealization {
        s,
        t,
        left,
        right,
        j_left: j_left.clone(),
        j_right: j_right.clone(),
    })
}

impl PRealization {
    pub fn bindings(&self) -> BTreeMap<String, Etpl> {
        let mut bind = BTreeMap::new();
        bind.insert("s".to_owned(), self.s.clone());
        bind.insert("t".to_owned(), self.t.clone());
        bind
    }
}

/// Tests whether a word in s, t lies in the kernel of the marking onto P,
/// by exact evaluation against a fixed faithful realization.
pub fn in_p_kernel_at(w: &Word, r: &PRealization) -> Result<bool> {
    Ok(evaluate_etpl(w, &r.bindings())?.is_identity())
}

/// Kernel test against the default realization on (0, 1) and (2, 3).
pub fn in_p_kernel(w: &Word) -> Result<bool> {
    let r = p_realization(
        &IntervalQ::open(zero(), one()),
        &IntervalQ::open(rat_int(2), rat_int(3)),
    )?;
    in_p_kernel_at(w, &r)
}
