//! Seeded generation of exact-rational PL data for randomized checks.
//!
//! Everything here is deterministic in the seed and produces exact rationals
//! on a dyadic-style grid, so randomized certificates are reproducible
//! bit-for-bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::etpl::Etpl;
use crate::rat::{rat_int, Rat};
use crate::root::RootPl;
use crate::seg::PlSeg;
use crate::words::Word;

/// The project-wide seeded generator.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational strictly between `lo` and `hi`, chosen from a uniform
/// grid of `grid` subintervals (so denominators stay small).
pub fn random_rat_between(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, grid: u32) -> Rat {
    assert!(lo < hi, "empty interval ({lo}, {hi})");
    assert!(grid >= 2, "grid must have at least two cells");
    let k = rng.gen_range(1..grid);
    lo + (hi - lo) * Rat::new(k.into(), grid.into())
}

/// A random PL homeomorphism fixing everything outside `(a, b)`, with `n`
/// interior breakpoints and no further constraint (it may cross the
/// identity).
pub fn random_homeo_on(rng: &mut ChaCha8Rng, a: &Rat, b: &Rat, n: usize) -> Etpl {
    let xs = ascending_points(rng, a, b, n);
    let mut prev = a.clone();
    let mut interior = Vec::with_capacity(n);
    for x in xs {
        let y = random_rat_between(rng, &prev, b, 8);
        interior.push((x, y.clone()));
        prev = y;
    }
    Etpl::supported_on(a.clone(), b.clone(), interior)
        .expect("generated breakpoints are monotone")
}

/// A random PL homeomorphism supported in `(a, b)` and above the identity:
/// every interior value is pushed strictly up.
pub fn random_bump_on(rng: &mut ChaCha8Rng, a: &Rat, b: &Rat, n: usize) -> Etpl {
    let xs = ascending_points(rng, a, b, n);
    let mut prev = a.clone();
    let mut interior = Vec::with_capacity(n);
    for x in xs {
        let floor = if x > prev { x.clone() } else { prev.clone() };
        let y = random_rat_between(rng, &floor, b, 8);
        interior.push((x, y.clone()));
        prev = y;
    }
    Etpl::supported_on(a.clone(), b.clone(), interior)
        .expect("generated breakpoints are monotone and above the identity")
}

/// `n` strictly ascending points inside `(a, b)`.
fn ascending_points(rng: &mut ChaCha8Rng, a: &Rat, b: &Rat, n: usize) -> Vec<Rat> {
    assert!(n >= 1, "need at least one interior point");
    let mut out = Vec::with_capacity(n);
    let mut lo = a.clone();
    for i in 0..n {
        // leave room for the remaining points by sampling inside the first
        // half of what is left, except for the last point
        let remaining = rat_int((n - i) as i64);
        let hi = if i + 1 == n {
            b.clone()
        } else {
            &lo + (b - &lo) / remaining
        };
        let x = random_rat_between(rng, &lo, &hi, 8);
        out.push(x.clone());
        lo = x;
    }
    out
}

/// A random degree-`n` root of a one-bump map: the anchor and the free orbit
/// divisions are sampled inside the bump, and each free piece gets one
/// random interior breakpoint, so different draws give genuinely different
/// roots of the same base.
///
/// The anchor may be pinned so that two draws share an orbit start; pass
/// `None` to sample it.
pub fn random_root(
    rng: &mut ChaCha8Rng,
    base: &Etpl,
    n: usize,
    anchor: Option<&Rat>,
) -> Result<RootPl> {
    assert!(n >= 2, "a root needs degree at least 2");
    let supp = base.support();
    let (a, b) = supp[0].finite_ends()?;
    let s0 = match anchor {
        Some(x) => x.clone(),
        None => random_rat_between(rng, a, b, 16),
    };
    let top = base.evaluate(&s0);
    // n - 1 strictly ascending division points between the anchor and its
    // image, then one free piece per gap with a random interior node
    let divisions = {
        let mut ds = vec![s0.clone()];
        ds.extend(ascending_points(rng, &s0, &top, n - 1));
        ds.push(top);
        ds
    };
    let mut pieces = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let (d0, d1, d2) = (&divisions[i], &divisions[i + 1], &divisions[i + 2]);
        let mid_x = random_rat_between(rng, d0, d1, 8);
        let mid_y = random_rat_between(rng, d1, d2, 8);
        pieces.push(PlSeg::from_points(vec![
            (d0.clone(), d1.clone()),
            (mid_x, mid_y),
            (d1.clone(), d2.clone()),
        ])?);
    }
    RootPl::new(base.clone(), pieces)
}

/// A random freely reduced word of at most `len` letters in the given
/// generators (free reduction may shorten it).
pub fn random_word(rng: &mut ChaCha8Rng, gens: &[&str], len: usize) -> Word {
    let mut w = Word::empty();
    for _ in 0..len {
        let g = gens[rng.gen_range(0..gens.len())];
        let e: i64 = if rng.gen_range(0..2) == 0 { 1 } else { -1 };
        w = w.concat(&Word::gen_pow(g, e));
    }
    w
}
