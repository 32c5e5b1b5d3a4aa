//! Exact rational calculus for piecewise-linear homeomorphisms of the real line.
//!
//! The base layer is a small family of closed map classes (eventually-translation
//! PL maps, periodic PL maps, orbit-equivariant roots, compactified maps, and
//! piecewise mixtures), all with decidable equality and exact arithmetic. On top
//! of it sit free-group words evaluated into homeomorphisms, dynamical criteria
//! recognising Thompson's group F, certified constructions of square roots and
//! commutator-equation solutions, and a Hall–Neumann style normal-form calculus.

pub mod affine;
pub mod compactified;
pub mod constructions;
pub mod error;
pub mod etpl;
pub mod hallneumann;
pub mod interval;
pub mod map;
pub mod mixed;
pub mod words;
pub mod periodic;
pub mod piecewise;
pub mod pointset;
pub mod rat;
pub mod sampling;
pub mod root;
pub mod seg;
pub mod serialize;
pub mod thompson;

pub use error::{PlError, Result};
pub use rat::Rat;
