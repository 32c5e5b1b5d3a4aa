//! Executable builders for the named constructions, with exact certificates.
//!
//! Every builder returns a bundle value holding the construction data plus a
//! table of machine-checked rows; nothing in here is approximate.  The
//! sub-modules layer bottom-up: a 16-slot partition of [1,2), a seed pair of
//! eventually-trivial PL maps shaped around it, a square-root-of-F builder
//! that plants two input maps inside one slot, a commutator-equation solver
//! over translations, the pipeline combining the two, and the skew and
//! lamplighter root builders.

pub mod equation;
pub mod lamplighter;
pub mod pipeline;
pub mod sixteen;
pub mod skew;
pub mod square_root;
pub mod step2;

use crate::rat::Rat;

/// One exact pass/fail row of a certificate table.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CertRow {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl CertRow {
    pub fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CertRow {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }

    pub fn check(label: impl Into<String>, pass: bool) -> Self {
        CertRow::new(label, pass, "")
    }

    pub fn value(label: impl Into<String>, pass: bool, value: &Rat) -> Self {
        CertRow::new(label, pass, crate::rat::fmt_rat(value))
    }
}

/// True iff every row of a table passed.
pub fn all_pass(rows: &[CertRow]) -> bool {
    rows.iter().all(|r| r.pass)
}
