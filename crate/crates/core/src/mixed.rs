//! Exact analysis of words mixing PL maps and squeezed copies.
//!
//! A word is a left-to-right product of factors, each either piecewise linear
//! or a squeezed copy. Products of such maps are generally neither, so the
//! engine analyses a word against a partition of the line into cells chosen
//! fine enough that, as the word is applied factor by factor, the image of
//! each cell never straddles a factor's breakpoints, squeeze-target endpoints,
//! or support endpoints. The cut points are found by closing the critical set
//! backward through the word; on each cell the accumulated map then stays in
//! one of two shapes — a PL segment, or a PL segment into a squeeze target
//! followed by the squeezed copy and a PL segment out — and every certificate
//! query (identity, restriction, support, order) reduces to exact rational
//! checks on those shapes.
//!
//! Multi-factor analysis requires every PL factor to have bounded support;
//! words that are purely PL (where unbounded factors are fine) short-circuit
//! to the PL algebra.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::affine::Affine;
use crate::compactified::CompactifiedMap;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::{Bound, IntervalQ};
use crate::piecewise::PiecewiseHomeo;
use crate::pointset::ClosedChunks;
use crate::rat::{witness_key, Rat};
use crate::seg::PlSeg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Pl(Etpl),
    Comp(CompactifiedMap),
}

impl Factor {
    pub fn apply(&self, x: &Rat) -> Rat {
        match self {
            Factor::Pl(e) => e.evaluate(x),
            Factor::Comp(c) => c.evaluate(x),
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Pl(e) => Factor::Pl(e.inverse()),
            Factor::Comp(c) => Factor::Comp(c.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Factor::Pl(e) => e.is_identity(),
            Factor::Comp(c) => c.is_identity(),
        }
    }

    /// The factor `a⁻¹ ∘ self ∘ a` (apply `a`, then the factor, then `a⁻¹`).
    pub fn affine_conjugate(&self, a: &Affine) -> Factor {
        match self {
            Factor::Pl(e) => Factor::Pl(e.affine_conjugate(a)),
            Factor::Comp(c) => Factor::Comp(c.affine_conjugate(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedWord {
    factors: Vec<Factor>,
}

/// What a word does on one cell of the analysis partition.
#[derive(Clone, Debug)]
enum CellOutcome {
    /// The word is PL on the cell, with this graph.
    Seg(PlSeg),
    /// The word is exactly a squeezed copy whose target is the cell.
    CompOn(CompactifiedMap),
    /// The word maps the cell to a disjoint interval, so no point is fixed.
    Displaced { above: bool },
}

/// Per-cell accumulator during the factor walk.
#[derive(Clone, Debug)]
enum Acc {
    Seg(PlSeg),
    Mixed {
        pre: PlSeg,
        comp: CompactifiedMap,
        post: PlSeg,
    },
}

struct Walked {
    cuts: Vec<Rat>,
    /// Word images of the cut points.
    images: Vec<Rat>,
    /// Merged cells (lo, hi, outcome) tiling [cuts.first, cuts.last].
    cells: Vec<(Rat, Rat, CellOutcome)>,
}

fn interval_inside(lo: &Rat, hi: &Rat, tlo: &Rat, thi: &Rat) -> bool {
    lo >= tlo && hi <= thi
}

fn meets_support(lo: &Rat, hi: &Rat, supp: &[IntervalQ]) -> bool {
    supp.iter().any(|j| {
        let (slo, shi) = j.finite_ends().expect("squeeze support is bounded");
        slo < hi && lo < shi
    })
}

/// Fixed chunks of a segment map within its own domain.
fn seg_fixed_chunks(seg: &PlSeg) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    let pts = seg.points();
    for (x, y) in pts {
        if x == y {
            out.push((x.clone(), x.clone()));
        }
    }
    for w in pts.windows(2) {
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        let s = (y1 - y0) / (x1 - x0);
        if num_traits::One::is_one(&s) {
            if x0 == y0 {
                out.push((x0.clone(), x1.clone()));
            }
        } else {
            let cross = (y0 - &s * x0) / (Rat::from_integer(1.into()) - &s);
            if cross > *x0 && cross < *x1 {
                out.push((cross.clone(), cross));
            }
        }
    }
    out
}

impl MixedWord {
    pub fn identity() -> Self {
        MixedWord {
            factors: Vec::new(),
        }
    }

    /// Builds a word, dropping identity factors and merging mergeable
    /// neighbours: adjacent PL factors compose into one, and adjacent
    /// squeezed copies with the same target compose inside the squeeze.
    /// Merging is exact, so the word is unchanged as a map but long products
    /// (powers, substituted words) stay short.
    pub fn from_factors(factors: Vec<Factor>) -> Self {
        let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.is_identity() {
                continue;
            }
            let merged = match (out.last(), &f) {
                (Some(Factor::Pl(a)), Factor::Pl(b)) => Some(Factor::Pl(a.compose(b))),
                (Some(Factor::Comp(a)), Factor::Comp(b)) if a.target() == b.target() => {
                    CompactifiedMap::new(a.target().clone(), a.inner().compose(b.inner()))
                        .ok()
                        .map(Factor::Comp)
                }
                _ => None,
            };
            match merged {
                Some(m) => {
                    out.pop();
                    if !m.is_identity() {
                        out.push(m);
                    }
                }
                None => out.push(f),
            }
        }
        MixedWord { factors: out }
    }

    pub fn pl(e: Etpl) -> Self {
        Self::from_factors(vec![Factor::Pl(e)])
    }

    pub fn comp(c: CompactifiedMap) -> Self {
        Self::from_factors(vec![Factor::Comp(c)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        self.factors.iter().fold(x.clone(), |y, f| f.apply(&y))
    }

    pub fn inverse(&self) -> MixedWord {
        MixedWord {
            factors: self.factors.iter().rev().map(Factor::inverse).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &MixedWord) -> MixedWord {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        MixedWord::from_factors(factors)
    }

    pub fn pow(&self, n: i64) -> MixedWord {
        let block = if n < 0 { self.inverse() } else { self.clone() };
        let mut factors = Vec::with_capacity(block.factors.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            factors.extend(block.factors.iter().cloned());
        }
        MixedWord::from_factors(factors)
    }

    /// The word `a⁻¹ ∘ w ∘ a`: factorwise affine conjugation, preserving
    /// order.  Conjugating by a translation re-plants the word elsewhere on
    /// the line; conjugating by a contraction squeezes it into a subinterval.
    pub fn affine_conjugate(&self, a: &Affine) -> MixedWord {
        MixedWord::from_factors(
            self.factors
                .iter()
                .map(|f| f.affine_conjugate(a))
                .collect(),
        )
    }

    /// The word as a single PL map, when every factor is PL.
    pub fn as_pl(&self) -> Option<Etpl> {
        let mut acc = Etpl::identity();
        for f in &self.factors {
            match f {
                Factor::Pl(e) => acc = acc.compose(e),
                Factor::Comp(_) => return None,
            }
        }
        Some(acc)
    }

    /// Critical points of the factors: PL breakpoints, squeeze-target
    /// endpoints, and squeeze-support endpoints.
    fn critical_points(&self) -> BTreeSet<Rat> {
        let mut s = BTreeSet::new();
        for f in &self.factors {
            match f {
                Factor::Pl(e) => {
                    for (x, _) in e.breakpoints() {
                        s.insert(x.clone());
                    }
                }
                Factor::Comp(c) => {
                    let (lo, hi) = c.target().finite_ends().expect("target is bounded");
                    s.insert(lo.clone());
                    s.insert(hi.clone());
                    for j in c.support() {
                        let (a, b) = j.finite_ends().expect("squeeze support is bounded");
                        s.insert(a.clone());
                        s.insert(b.clone());
                    }
                }
            }
        }
        s
    }

    /// Closes the critical set backward through the word, so that no cell's
    /// running image ever straddles a critical point.
    fn cut_points(&self, extra: &[Rat]) -> Result<Vec<Rat>> {
        for f in &self.factors {
            if let Factor::Pl(e) = f {
                if !e.left_offset().is_zero() || !e.right_offset().is_zero() {
                    return Err(PlError::InvalidMap(
                        "word analysis needs bounded-support factors; this word has an \
                         eventually-translating PL factor"
                            .into(),
                    ));
                }
            }
        }
        let mut s = self.critical_points();
        s.extend(extra.iter().cloned());
        let inverses: Vec<Factor> = self.factors.iter().map(Factor::inverse).collect();
        let mut t = s.clone();
        for inv in inverses.iter().rev() {
            let mut next = s.clone();
            for y in &t {
                next.insert(inv.apply(y));
            }
            t = next;
        }
        Ok(t.into_iter().collect())
    }

    fn step(&self, acc: Acc, f: &Factor) -> Result<Acc> {
        match f {
            Factor::Pl(e) => Ok(match acc {
                Acc::Seg(s) => Acc::Seg(s.then_etpl(e)),
                Acc::Mixed { pre, comp, post } => Acc::Mixed {
                    pre,
                    comp,
                    post: post.then_etpl(e),
                },
            }),
            Factor::Comp(c) => {
                let (tlo, thi) = {
                    let (a, b) = c.target().finite_ends().expect("target is bounded");
                    (a.clone(), b.clone())
                };
                let supp = c.support();
                match acc {
                    Acc::Seg(s) => {
                        let (ilo, ihi) = s.image();
                        if interval_inside(ilo, ihi, &tlo, &thi) {
                            let plo = c.evaluate(ilo);
                            let phi = c.evaluate(ihi);
                            Ok(Acc::Mixed {
                                pre: s.clone(),
                                comp: c.clone(),
                                post: PlSeg::identity_on(plo, phi)?,
                            })
                        } else if !meets_support(ilo, ihi, &supp) {
                            Ok(Acc::Seg(s))
                        } else {
                            Err(PlError::Restriction(format!(
                                "cell image [{ilo}, {ihi}] straddles the squeeze target ({tlo}, {thi})"
                            )))
                        }
                    }
                    Acc::Mixed { pre, comp, post } => {
                        let (ilo, ihi) = post.image();
                        if interval_inside(ilo, ihi, &tlo, &thi) {
                            if let Some(a) = post.is_affine() {
                                if a.apply_interval(comp.target()).same_set(c.target()) {
                                    let pre2 = pre.then_affine(&a);
                                    let inner = comp.inner().compose(c.inner());
                                    let comp2 = CompactifiedMap::new(c.target().clone(), inner)?;
                                    if comp2.is_identity() {
                                        return Ok(Acc::Seg(pre2));
                                    }
                                    let (qlo, qhi) = pre2.image();
                                    let plo = comp2.evaluate(qlo);
                                    let phi = comp2.evaluate(qhi);
                                    return Ok(Acc::Mixed {
                                        pre: pre2,
                                        comp: comp2,
                                        post: PlSeg::identity_on(plo, phi)?,
                                    });
                                }
                            }
                            if !meets_support(ilo, ihi, &supp) {
                                return Ok(Acc::Mixed { pre, comp, post });
                            }
                            Err(PlError::Restriction(
                                "two squeezed copies interleave without an affine \
                                 correspondence of their targets"
                                    .into(),
                            ))
                        } else if !meets_support(ilo, ihi, &supp) {
                            Ok(Acc::Mixed { pre, comp, post })
                        } else {
                            Err(PlError::Restriction(format!(
                                "cell image [{ilo}, {ihi}] straddles the squeeze target ({tlo}, {thi})"
                            )))
                        }
                    }
                }
            }
        }
    }

    fn finalize(&self, lo: &Rat, hi: &Rat, acc: Acc) -> Result<CellOutcome> {
        match acc {
            Acc::Seg(s) => Ok(CellOutcome::Seg(s)),
            Acc::Mixed { pre, comp, post } => {
                let supp = comp.support();
                {
                    let (plo, phi) = pre.image();
                    if !meets_support(plo, phi, &supp) {
                        // the squeezed copy never acts on this cell
                        return Ok(CellOutcome::Seg(pre.then_seg(&post)?));
                    }
                }
                let (ilo, ihi) = post.image();
                if ihi <= lo || ilo >= hi {
                    return Ok(CellOutcome::Displaced { above: ilo >= hi });
                }
                if ilo == lo && ihi == hi {
                    let a1 = pre.is_affine().ok_or_else(|| {
                        PlError::Restriction(
                            "cell maps onto itself but enters the squeeze non-affinely".into(),
                        )
                    })?;
                    let (plo, phi) = pre.image();
                    let (tlo, thi) = comp.target().finite_ends().expect("target is bounded");
                    if plo != tlo || phi != thi {
                        return Err(PlError::Restriction(
                            "cell maps onto itself through a proper part of the squeeze target"
                                .into(),
                        ));
                    }
                    let q = PlSeg::affine_on(&a1, lo.clone(), hi.clone())?.then_seg(&post)?;
                    if !q.is_identity() {
                        return Err(PlError::Restriction(
                            "cell maps onto itself but exits the squeeze non-inversely".into(),
                        ));
                    }
                    return Ok(CellOutcome::CompOn(comp.affine_conjugate(&a1)));
                }
                Err(PlError::Restriction(format!(
                    "cell [{lo}, {hi}] maps to overlapping interval [{ilo}, {ihi}] through a \
                     squeezed copy"
                )))
            }
        }
    }

    fn walk(&self, extra: &[Rat]) -> Result<Walked> {
        let cuts = self.cut_points(extra)?;
        let images = cuts.iter().map(|x| self.evaluate(x)).collect();
        let mut raw: Vec<(Rat, Rat, Acc)> = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let mut acc = Acc::Seg(PlSeg::identity_on(lo.clone(), hi.clone())?);
            for f in &self.factors {
                acc = self.step(acc, f)?;
            }
            raw.push((lo.clone(), hi.clone(), acc));
        }
        // merge adjacent cells that continue the same shape
        let mut merged: Vec<(Rat, Rat, Acc)> = Vec::new();
        for (lo, hi, acc) in raw {
            if let Some(last) = merged.last_mut() {
                let joined = match (&last.2, &acc) {
                    (Acc::Seg(a), Acc::Seg(b)) => Some(Acc::Seg(a.glue(b)?)),
                    (
                        Acc::Mixed {
                            pre: p1,
                            comp: c1,
                            post: q1,
                        },
                        Acc::Mixed {
                            pre: p2,
                            comp: c2,
                            post: q2,
                        },
                    ) if c1 == c2 => Some(Acc::Mixed {
                        pre: p1.glue(p2)?,
                        comp: c1.clone(),
                        post: q1.glue(q2)?,
                    }),
                    _ => None,
                };
                if let Some(j) = joined {
                    last.1 = hi;
                    last.2 = j;
                    continue;
                }
            }
            merged.push((lo, hi, acc));
        }
        let mut cells = Vec::with_capacity(merged.len());
        for (lo, hi, acc) in merged {
            let outcome = self.finalize(&lo, &hi, acc)?;
            cells.push((lo, hi, outcome));
        }
        Ok(Walked {
            cuts,
            images,
            cells,
        })
    }

    pub fn is_identity(&self) -> Result<bool> {
        if let Some(e) = self.as_pl() {
            return Ok(e.is_identity());
        }
        let w = self.walk(&[])?;
        for (c, i) in w.cuts.iter().zip(&w.images) {
            if c != i {
                return Ok(false);
            }
        }
        for (_, _, outcome) in &w.cells {
            match outcome {
                CellOutcome::Seg(s) => {
                    if !s.is_identity() {
                        return Ok(false);
                    }
                }
                CellOutcome::CompOn(_) | CellOutcome::Displaced { .. } => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Exact equality of two words as maps.
    pub fn equals(&self, other: &MixedWord) -> Result<bool> {
        self.concat(&other.inverse()).is_identity()
    }

    pub fn is_identity_on(&self, region: &IntervalQ) -> Result<bool> {
        if let Some(e) = self.as_pl() {
            return Ok(e.agree_on(&Etpl::identity(), region));
        }
        let (rlo, rhi) = region.finite_ends()?;
        let w = self.walk(&[rlo.clone(), rhi.clone()])?;
        for (c, i) in w.cuts.iter().zip(&w.images) {
            if region.contains(c) && c != i {
                return Ok(false);
            }
        }
        for (lo, hi, outcome) in &w.cells {
            if hi <= rlo || lo >= rhi {
                continue;
            }
            match outcome {
                CellOutcome::Seg(s) => {
                    let a = lo.max(rlo);
                    let b = hi.min(rhi);
                    if !s.restrict(a, b)?.is_identity() {
                        return Ok(false);
                    }
                }
                CellOutcome::CompOn(_) | CellOutcome::Displaced { .. } => return Ok(false),
            }
        }
        Ok(true)
    }

    /// The graph of the word over [a, b], defined when the word is PL there.
    pub fn seg_on(&self, a: &Rat, b: &Rat) -> Result<PlSeg> {
        if a >= b {
            return Err(PlError::InvalidInterval(format!("[{a}, {b}]")));
        }
        if let Some(e) = self.as_pl() {
            return e.seg_on(a, b);
        }
        let w = self.walk(&[a.clone(), b.clone()])?;
        let mut parts: Vec<PlSeg> = Vec::new();
        for (lo, hi, outcome) in &w.cells {
            if hi <= a || lo >= b {
                continue;
            }
            match outcome {
                CellOutcome::Seg(s) => {
                    parts.push(s.restrict(lo.max(a), hi.min(b))?);
                }
                _ => {
                    return Err(PlError::Restriction(format!(
                        "the word is not PL on [{lo}, {hi}]"
                    )))
                }
            }
        }
        let mut acc = match parts.first() {
            None => return PlSeg::identity_on(a.clone(), b.clone()),
            Some(s) => s.clone(),
        };
        // identity beyond the analysed hull
        if acc.domain().0 > a {
            acc = PlSeg::identity_on(a.clone(), acc.domain().0.clone())?.glue(&acc)?;
        }
        for s in &parts[1..] {
            acc = acc.glue(s)?;
        }
        if acc.domain().1 < b {
            acc = acc.glue(&PlSeg::identity_on(acc.domain().1.clone(), b.clone())?)?;
        }
        Ok(acc)
    }

    /// The word restricted to a region it preserves, as a PL map extended by
    /// the identity.
    pub fn restrict_to_etpl(&self, region: &IntervalQ) -> Result<Etpl> {
        let (a, b) = region.finite_ends()?;
        self.seg_on(a, b)?.extend_by_identity()
    }

    /// The word restricted to a region on which it is exactly a squeezed copy
    /// with that region as target.
    pub fn restrict_to_comp(&self, region: &IntervalQ) -> Result<CompactifiedMap> {
        let (a, b) = region.finite_ends()?;
        let w = self.walk(&[a.clone(), b.clone()])?;
        for (lo, hi, outcome) in &w.cells {
            if lo == a && hi == b {
                if let CellOutcome::CompOn(c) = outcome {
                    return Ok(c.clone());
                }
            }
        }
        Err(PlError::Restriction(format!(
            "the word is not a squeezed copy on {region}"
        )))
    }

    /// The word restricted to an invariant region, extended by the identity
    /// outside: the PL part is cut down to the region and every squeezed part
    /// whose target lies inside is kept.  Fails if the word has no
    /// region-by-region form, if the PL part does not preserve the region, or
    /// if a squeezed part straddles the region boundary.
    pub fn restricted_to(&self, region: &IntervalQ) -> Result<MixedWord> {
        let flat = self.flatten()?;
        let pl = flat.pl_part().restrict_to_region(region)?;
        let mut factors = vec![Factor::Pl(pl)];
        for c in flat.comp_parts() {
            if c.target().is_subset_of(region) {
                factors.push(Factor::Comp(c.clone()));
            } else if !c.target().is_disjoint_from(region) {
                return Err(PlError::Restriction(format!(
                    "a squeezed part targeted at {} straddles the region {region}",
                    c.target()
                )));
            }
        }
        Ok(MixedWord::from_factors(factors))
    }

    /// Flattens the word into a PL part and squeezed parts, when possible.
    pub fn flatten(&self) -> Result<PiecewiseHomeo> {
        if let Some(e) = self.as_pl() {
            return Ok(PiecewiseHomeo::from_etpl(e));
        }
        let w = self.walk(&[])?;
        let mut comps: Vec<CompactifiedMap> = Vec::new();
        let mut pl = Etpl::identity();
        for (lo, hi, outcome) in &w.cells {
            match outcome {
                CellOutcome::Seg(s) => {
                    if !s.is_identity() {
                        let piece = s.extend_by_identity().map_err(|_| {
                            PlError::Restriction(format!(
                                "the word moves the cell boundary of [{lo}, {hi}], so it has \
                                 no region-by-region form"
                            ))
                        })?;
                        pl = pl.compose(&piece);
                    }
                }
                CellOutcome::CompOn(c) => comps.push(c.clone()),
                CellOutcome::Displaced { .. } => {
                    return Err(PlError::Restriction(format!(
                        "the word displaces [{lo}, {hi}], so it has no region-by-region form"
                    )))
                }
            }
        }
        PiecewiseHomeo::new(pl, comps)
    }

    /// Maximal open intervals of points moved by the word.
    pub fn support(&self) -> Result<Vec<IntervalQ>> {
        if let Some(e) = self.as_pl() {
            return Ok(e.support());
        }
        let w = self.walk(&[])?;
        let mut fixed = ClosedChunks::new();
        match (w.cuts.first(), w.cuts.last()) {
            (Some(first), Some(last)) => {
                fixed.push(Bound::NegInf, Bound::Fin(first.clone()));
                fixed.push(Bound::Fin(last.clone()), Bound::PosInf);
            }
            _ => return Ok(Vec::new()),
        }
        for (c, i) in w.cuts.iter().zip(&w.images) {
            if c == i {
                fixed.push_point(c.clone());
            }
        }
        for (lo, hi, outcome) in &w.cells {
            match outcome {
                CellOutcome::Seg(s) => {
                    for (a, b) in seg_fixed_chunks(s) {
                        fixed.push(Bound::Fin(a), Bound::Fin(b));
                    }
                }
                CellOutcome::CompOn(c) => {
                    let mut prev = lo.clone();
                    for j in c.support() {
                        let (slo, shi) = j.finite_ends().expect("squeeze support is bounded");
                        if *slo > prev {
                            fixed.push(Bound::Fin(prev), Bound::Fin(slo.clone()));
                        }
                        prev = shi.clone();
                    }
                    if prev < *hi {
                        fixed.push(Bound::Fin(prev), Bound::Fin(hi.clone()));
                    }
                }
                CellOutcome::Displaced { .. } => {}
            }
        }
        fixed.normalize();
        Ok(fixed.complement())
    }

    /// True when w(x) ≥ x everywhere.
    pub fn is_above_identity(&self) -> Result<bool> {
        if let Some(e) = self.as_pl() {
            return Ok(e.is_above_identity());
        }
        let w = self.walk(&[])?;
        for (c, i) in w.cuts.iter().zip(&w.images) {
            if i < c {
                return Ok(false);
            }
        }
        for (_, _, outcome) in &w.cells {
            match outcome {
                CellOutcome::Seg(s) => {
                    if s.points().iter().any(|(x, y)| y < x) {
                        return Ok(false);
                    }
                }
                CellOutcome::CompOn(c) => {
                    if !c.inner().is_above_identity() {
                        return Ok(false);
                    }
                }
                CellOutcome::Displaced { above } => {
                    if !above {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True when the word moves every interior point of the region strictly
    /// upward.
    pub fn strictly_above_on(&self, region: &IntervalQ) -> Result<bool> {
        let (rlo, rhi) = region.finite_ends()?;
        if let Some(e) = self.as_pl() {
            return e.is_strictly_above_interior(rlo, rhi);
        }
        let w = self.walk(&[rlo.clone(), rhi.clone()])?;
        for (c, i) in w.cuts.iter().zip(&w.images) {
            if c > rlo && c < rhi && i <= c {
                return Ok(false);
            }
        }
        for (lo, hi, outcome) in &w.cells {
            if hi <= rlo || lo >= rhi {
                continue;
            }
            match outcome {
                CellOutcome::Seg(s) => {
                    let sub = s.restrict(lo.max(rlo), hi.min(rhi))?;
                    if sub.is_identity() {
                        return Ok(false);
                    }
                    for (x, y) in sub.points() {
                        if x > rlo && x < rhi {
                            if y <= x {
                                return Ok(false);
                            }
                        } else if y < x {
                            return Ok(false);
                        }
                    }
                }
                CellOutcome::CompOn(c) => {
                    if !c.inner().is_strictly_above_everywhere() {
                        return Ok(false);
                    }
                }
                CellOutcome::Displaced { above } => {
                    if !above {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// A moved point of minimal complexity (smallest denominator, then
    /// absolute value, then preferring the positive sign), if any.
    pub fn witness_moved(&self) -> Result<Option<Rat>> {
        let mut candidates: Vec<Rat> = Vec::new();
        if let Some(e) = self.as_pl() {
            for j in e.support() {
                candidates.push(midpointish(&j));
            }
        } else {
            let w = self.walk(&[])?;
            for j in self.support()? {
                candidates.push(midpointish(&j));
            }
            for (c, i) in w.cuts.iter().zip(&w.images) {
                if c != i {
                    candidates.push(c.clone());
                }
            }
        }
        Ok(candidates.into_iter().min_by_key(witness_key))
    }
}

/// A simple interior rational of an open interval.
fn midpointish(j: &IntervalQ) -> Rat {
    match (&j.lo, &j.hi) {
        (Bound::Fin(a), Bound::Fin(b)) => (a + b) / Rat::from_integer(2.into()),
        (Bound::NegInf, Bound::Fin(b)) => b - Rat::from_integer(1.into()),
        (Bound::Fin(a), Bound::PosInf) => a + Rat::from_integer(1.into()),
        _ => Rat::from_integer(0.into()),
    }
}
