//! The structured-text file format: JSON records for maps in the five closed
//! classes, free-group words, presentations, construction bundles, and
//! certificate tables.
//!
//! Rationals are rendered as canonical reduced strings (`"5/4"`, `"2"`,
//! `"-7/3"`) and every keyed collection is sorted, so output is
//! deterministic and files diff cleanly.  Realizing a record re-runs the
//! class constructors, so a hand-edited file cannot smuggle in an invalid
//! map, and `parse(print(x))` rebuilds `x` bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::compactified::CompactifiedMap;
use crate::constructions::CertRow;
use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::interval::{Bound, IntervalQ};
use crate::map::Map;
use crate::mixed::{Factor, MixedWord};
use crate::periodic::PeriodicPl;
use crate::piecewise::PiecewiseHomeo;
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::root::RootPl;
use crate::seg::PlSeg;
use crate::words::{Presentation, Word};

/// Version written into every file; parsing rejects anything newer.
pub const FORMAT_VERSION: u32 = 1;

fn pairs_of(ps: &[(Rat, Rat)]) -> Vec<(String, String)> {
    ps.iter()
        .map(|(x, y)| (fmt_rat(x), fmt_rat(y)))
        .collect()
}

fn pairs_to(ps: &[(String, String)]) -> Result<Vec<(Rat, Rat)>> {
    ps.iter()
        .map(|(x, y)| Ok((parse_rat(x)?, parse_rat(y)?)))
        .collect()
}

/// An eventually-translation PL map: its interior breakpoints and the two
/// translation offsets outside them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtplRecord {
    pub breakpoints: Vec<(String, String)>,
    pub left_offset: String,
    pub right_offset: String,
}

impl EtplRecord {
    pub fn of(e: &Etpl) -> Self {
        EtplRecord {
            breakpoints: pairs_of(e.breakpoints()),
            left_offset: fmt_rat(e.left_offset()),
            right_offset: fmt_rat(e.right_offset()),
        }
    }

    pub fn realize(&self) -> Result<Etpl> {
        Etpl::from_breakpoints(
            pairs_to(&self.breakpoints)?,
            parse_rat(&self.left_offset)?,
            parse_rat(&self.right_offset)?,
        )
    }
}

/// A periodic PL map: its period and the nodes of one fundamental window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicRecord {
    pub period: String,
    pub nodes: Vec<(String, String)>,
}

impl PeriodicRecord {
    pub fn of(p: &PeriodicPl) -> Self {
        PeriodicRecord {
            period: fmt_rat(p.period()),
            nodes: pairs_of(p.nodes()),
        }
    }

    pub fn realize(&self) -> Result<PeriodicPl> {
        PeriodicPl::from_breakpoints(parse_rat(&self.period)?, pairs_to(&self.nodes)?)
    }
}

/// An n-th root of a one-bump map: the base map plus the free orbit pieces
/// (the last piece is forced and re-derived on realization).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub base: EtplRecord,
    pub free_pieces: Vec<Vec<(String, String)>>,
}

impl RootRecord {
    pub fn of(r: &RootPl) -> Self {
        let free = &r.pieces()[..r.pieces().len() - 1];
        RootRecord {
            base: EtplRecord::of(r.base()),
            free_pieces: free.iter().map(|s| pairs_of(s.points())).collect(),
        }
    }

    pub fn realize(&self) -> Result<RootPl> {
        let pieces = self
            .free_pieces
            .iter()
            .map(|ps| PlSeg::from_points(pairs_to(ps)?))
            .collect::<Result<Vec<_>>>()?;
        RootPl::new(self.base.realize()?, pieces)
    }
}

/// An interval with rational or infinite ends; `null` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

fn bound_of(b: &Bound) -> Option<String> {
    b.fin().map(fmt_rat)
}

fn bound_to(s: &Option<String>, neg: bool) -> Result<Bound> {
    match s {
        Some(text) => Ok(Bound::Fin(parse_rat(text)?)),
        None if neg => Ok(Bound::NegInf),
        None => Ok(Bound::PosInf),
    }
}

impl IntervalRecord {
    pub fn of(j: &IntervalQ) -> Self {
        IntervalRecord {
            lo: bound_of(&j.lo),
            hi: bound_of(&j.hi),
            lo_closed: j.lo_closed,
            hi_closed: j.hi_closed,
        }
    }

    pub fn realize(&self) -> Result<IntervalQ> {
        IntervalQ::new(
            bound_to(&self.lo, true)?,
            bound_to(&self.hi, false)?,
            self.lo_closed,
            self.hi_closed,
        )
    }
}

/// A compactified copy of a line map squashed into a bounded target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactifiedRecord {
    pub target: IntervalRecord,
    pub inner: EtplRecord,
}

impl CompactifiedRecord {
    pub fn of(c: &CompactifiedMap) -> Self {
        CompactifiedRecord {
            target: IntervalRecord::of(c.target()),
            inner: EtplRecord::of(c.inner()),
        }
    }

    pub fn realize(&self) -> Result<CompactifiedMap> {
        CompactifiedMap::new(self.target.realize()?, self.inner.realize()?)
    }
}

/// A PL map decorated with compactified components on disjoint targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseRecord {
    pub pl: EtplRecord,
    pub comps: Vec<CompactifiedRecord>,
}

impl PiecewiseRecord {
    pub fn of(p: &PiecewiseHomeo) -> Self {
        PiecewiseRecord {
            pl: EtplRecord::of(p.pl_part()),
            comps: p.comp_parts().iter().map(CompactifiedRecord::of).collect(),
        }
    }

    pub fn realize(&self) -> Result<PiecewiseHomeo> {
        PiecewiseHomeo::new(
            self.pl.realize()?,
            self.comps
                .iter()
                .map(CompactifiedRecord::realize)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// A map in any of the five closed classes, tagged by class name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum MapRecord {
    Etpl(EtplRecord),
    Periodic(PeriodicRecord),
    Root(RootRecord),
    Compactified(CompactifiedRecord),
    Piecewise(PiecewiseRecord),
}

impl MapRecord {
    pub fn of_map(m: &Map) -> Self {
        match m {
            Map::Pl(e) => MapRecord::Etpl(EtplRecord::of(e)),
            Map::Periodic(p) => MapRecord::Periodic(PeriodicRecord::of(p)),
            Map::Root(r) => MapRecord::Root(RootRecord::of(r)),
            Map::Comp(c) => MapRecord::Compactified(CompactifiedRecord::of(c)),
            Map::Piecewise(p) => MapRecord::Piecewise(PiecewiseRecord::of(p)),
        }
    }

    pub fn of_etpl(e: &Etpl) -> Self {
        MapRecord::Etpl(EtplRecord::of(e))
    }

    pub fn realize(&self) -> Result<Map> {
        Ok(match self {
            MapRecord::Etpl(r) => Map::Pl(r.realize()?),
            MapRecord::Periodic(r) => Map::Periodic(r.realize()?),
            MapRecord::Root(r) => Map::Root(r.realize()?),
            MapRecord::Compactified(r) => Map::Comp(r.realize()?),
            MapRecord::Piecewise(r) => Map::Piecewise(r.realize()?),
        })
    }

    /// Realizes a record that must be in the eventually-translation class,
    /// e.g. a generator binding for word evaluation.
    pub fn realize_etpl(&self) -> Result<Etpl> {
        match self {
            MapRecord::Etpl(r) => r.realize(),
            other => Err(PlError::ClassIncompatible(format!(
                "expected a map of class etpl, found {}",
                other.class_name()
            ))),
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            MapRecord::Etpl(_) => "etpl",
            MapRecord::Periodic(_) => "periodic",
            MapRecord::Root(_) => "root",
            MapRecord::Compactified(_) => "compactified",
            MapRecord::Piecewise(_) => "piecewise",
        }
    }
}

/// The factor list of a product of PL and compactified maps, in application
/// order (leftmost applies first).
pub fn factors_record(w: &MixedWord) -> Vec<MapRecord> {
    w.factors()
        .iter()
        .map(|f| match f {
            Factor::Pl(e) => MapRecord::Etpl(EtplRecord::of(e)),
            Factor::Comp(c) => MapRecord::Compactified(CompactifiedRecord::of(c)),
        })
        .collect()
}

/// Rebuilds a product from its factor records.
pub fn realize_factors(rs: &[MapRecord]) -> Result<MixedWord> {
    let factors = rs
        .iter()
        .map(|r| match r {
            MapRecord::Etpl(e) => Ok(Factor::Pl(e.realize()?)),
            MapRecord::Compactified(c) => Ok(Factor::Comp(c.realize()?)),
            other => Err(PlError::ClassIncompatible(format!(
                "a product factor must be of class etpl or compactified, found {}",
                other.class_name()
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MixedWord::from_factors(factors))
}

/// A named construction: its maps, factored products, words, presentations,
/// and the certificate table that was checked when it was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct BundleRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub products: BTreeMap<String, Vec<MapRecord>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub words: BTreeMap<String, Word>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presentations: BTreeMap<String, Presentation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<CertRow>,
}

impl BundleRecord {
    pub fn named(name: impl Into<String>) -> Self {
        BundleRecord {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_map(mut self, key: &str, m: MapRecord) -> Self {
        self.maps.insert(key.to_owned(), m);
        self
    }

    pub fn with_product(mut self, key: &str, w: &MixedWord) -> Self {
        self.products.insert(key.to_owned(), factors_record(w));
        self
    }

    pub fn with_word(mut self, key: &str, w: Word) -> Self {
        self.words.insert(key.to_owned(), w);
        self
    }

    pub fn with_presentation(mut self, key: &str, p: Presentation) -> Self {
        self.presentations.insert(key.to_owned(), p);
        self
    }

    pub fn with_certificate(mut self, rows: Vec<CertRow>) -> Self {
        self.certificate = rows;
        self
    }
}

/// What a file carries, tagged by payload kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum Payload {
    Map(MapRecord),
    Word(Word),
    Presentation(Presentation),
    Bundle(BundleRecord),
    Certificate(Vec<CertRow>),
}

impl Payload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Payload::Map(_) => "map",
            Payload::Word(_) => "word",
            Payload::Presentation(_) => "presentation",
            Payload::Bundle(_) => "bundle",
            Payload::Certificate(_) => "certificate",
        }
    }
}

/// One on-disk artifact: a format version plus a tagged payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArtifactFile {
    pub format: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

impl ArtifactFile {
    pub fn new(payload: Payload) -> Self {
        ArtifactFile {
            format: FORMAT_VERSION,
            payload,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| PlError::Ser(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<ArtifactFile> {
        let file: ArtifactFile =
            serde_json::from_str(text).map_err(|e| PlError::Ser(e.to_string()))?;
        if file.format > FORMAT_VERSION {
            return Err(PlError::Ser(format!(
                "format version {} is newer than the supported {}",
                file.format, FORMAT_VERSION
            )));
        }
        Ok(file)
    }

    /// The payload as a map record, or an error naming the actual kind.
    pub fn expect_map(&self) -> Result<&MapRecord> {
        match &self.payload {
            Payload::Map(m) => Ok(m),
            other => Err(PlError::Ser(format!(
                "expected a map file, found kind {}",
                other.kind_name()
            ))),
        }
    }

    /// The payload as a bundle record, or an error naming the actual kind.
    pub fn expect_bundle(&self) -> Result<&BundleRecord> {
        match &self.payload {
            Payload::Bundle(b) => Ok(b),
            other => Err(PlError::Ser(format!(
                "expected a bundle file, found kind {}",
                other.kind_name()
            ))),
        }
    }
}
