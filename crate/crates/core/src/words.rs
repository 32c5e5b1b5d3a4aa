//! Free words in named generators, presentations, and word evaluation.
//!
//! A [`Word`] is a freely reduced product of generator powers, read and
//! applied left to right: the word `f g` means "apply `f`, then `g`". The
//! commutator `[u, v]` abbreviates `u v u⁻¹ v⁻¹` under the same convention.
//!
//! The text syntax accepted by [`parse_word`]:
//!
//! ```text
//! word   := item*
//! item   := atom ("^" integer)?
//! atom   := identifier | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Items are separated by whitespace; identifiers are ASCII letters, digits
//! and underscores, starting with a letter or underscore.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{PlError, Result};
use crate::etpl::Etpl;
use crate::map::Map;
use crate::mixed::MixedWord;

/// A freely reduced word: generator names with nonzero integer exponents,
/// adjacent entries having distinct names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(String, i64)>,
}

fn push_reduced(letters: &mut Vec<(String, i64)>, name: &str, exp: i64) {
    if exp == 0 {
        return;
    }
    if let Some(last) = letters.last_mut() {
        if last.0 == name {
            last.1 += exp;
            if last.1 == 0 {
                letters.pop();
            }
            return;
        }
    }
    letters.push((name.to_owned(), exp));
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn gen(name: &str) -> Word {
        Word::gen_pow(name, 1)
    }

    pub fn gen_pow(name: &str, exp: i64) -> Word {
        let mut letters = Vec::new();
        push_reduced(&mut letters, name, exp);
        Word { letters }
    }

    pub fn from_letters<I: IntoIterator<Item = (String, i64)>>(iter: I) -> Word {
        let mut letters = Vec::new();
        for (name, exp) in iter {
            push_reduced(&mut letters, &name, exp);
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total letter count, counting exponents with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn generators(&self) -> Vec<String> {
        let mut names: Vec<String> = self.letters.iter().map(|(n, _)| n.clone()).collect();
        names.sort();
        names.dedup();
        names
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for (name, exp) in &other.letters {
            push_reduced(&mut letters, name, *exp);
        }
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(n, e)| (n.clone(), -e))
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let block = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&block);
        }
        out
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// `t⁻¹ · self · t`.
    pub fn conjugated_by(&self, t: &Word) -> Word {
        t.inverse().concat(self).concat(t)
    }

    /// Exponent sums per generator.
    pub fn abelianize(&self) -> BTreeMap<String, i64> {
        let mut out: BTreeMap<String, i64> = BTreeMap::new();
        for (name, exp) in &self.letters {
            let slot = out.entry(name.clone()).or_insert(0);
            *slot += exp;
            if *slot == 0 {
                out.remove(name);
            }
        }
        out
    }

    /// Replaces each bound generator by a word; unbound generators persist.
    pub fn substitute(&self, dict: &BTreeMap<String, Word>) -> Word {
        let mut out = Word::empty();
        for (name, exp) in &self.letters {
            match dict.get(name) {
                Some(w) => out = out.concat(&w.pow(*exp)),
                None => out = out.concat(&Word::gen_pow(name, *exp)),
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (name, exp)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        parse_word(&text).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Caret,
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            b',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'-' | b'0'..=b'9' => {
                let start = i;
                if b == b'-' {
                    i += 1;
                }
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(PlError::Parse {
                        pos: start,
                        msg: "expected digits after '-'".into(),
                    });
                }
                let n: i64 = text[start..i].parse().map_err(|_| PlError::Parse {
                    pos: start,
                    msg: "integer out of range".into(),
                })?;
                toks.push((start, Tok::Int(n)));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_owned())));
            }
            _ => {
                return Err(PlError::Parse {
                    pos: i,
                    msg: format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        let at = self.here();
        match self.bump() {
            Some(ref t) if t == want => Ok(()),
            _ => Err(PlError::Parse {
                pos: at,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Word::empty();
        loop {
            match self.peek() {
                Some(Tok::Ident(_))
                | Some(Tok::LParen)
                | Some(Tok::LBracket)
                | Some(Tok::Int(1)) => {
                    let item = self.item()?;
                    out = out.concat(&item);
                }
                _ => return Ok(out),
            }
        }
    }

    fn item(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => Ok(atom.pow(n)),
                _ => Err(PlError::Parse {
                    pos: at,
                    msg: "expected an integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(Word::gen(&name)),
            // "1" denotes the empty word
            Some(Tok::Int(1)) => Ok(Word::empty()),
            Some(Tok::LParen) => {
                let inner = self.word()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                let a = self.word()?;
                self.expect(&Tok::Comma, "',' between commutator entries")?;
                let b = self.word()?;
                self.expect(&Tok::RBracket, "']'")?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(PlError::Parse {
                pos: at,
                msg: "expected a generator, '(' or '['".into(),
            }),
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        len: text.len(),
    };
    let w = p.word()?;
    if p.pos < toks.len() {
        return Err(PlError::Parse {
            pos: p.here(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(w)
}

/// A finite presentation: generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        for r in &relators {
            for g in r.generators() {
                if !generators.contains(&g) {
                    return Err(PlError::UnboundGenerator(g));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Rewrites every relator through a generator substitution.
    pub fn substitute(&self, dict: &BTreeMap<String, Word>, generators: Vec<String>) -> Result<Presentation> {
        let relators = self
            .relators
            .iter()
            .map(|r| r.substitute(dict))
            .collect();
        Presentation::new(generators, relators)
    }
}

/// Extends a presentation with a formal square root of one generator: a fresh
/// generator `y` and the relator `x y⁻²`, so that `y² = x`. Returns the new
/// presentation and the fresh generator's name.
pub fn formal_square_root(p: &Presentation, x: &str) -> Result<(Presentation, String)> {
    if !p.generators.contains(&x.to_owned()) {
        return Err(PlError::UnboundGenerator(x.to_owned()));
    }
    let mut fresh = format!("y_{x}");
    while p.generators.contains(&fresh) {
        fresh.push('_');
    }
    let mut generators = p.generators.clone();
    generators.push(fresh.clone());
    let mut relators = p.relators.clone();
    relators.push(Word::gen(x).concat(&Word::gen_pow(&fresh, -2)));
    Ok((Presentation::new(generators, relators)?, fresh))
}

/// Well-known words and presentations, retrievable by name.
pub mod builtin {
    use super::*;

    /// `w₁ = [s t⁻¹, s⁻² t s²]` — a generating test word in s, t.
    pub fn w1() -> Word {
        let s = Word::gen("s");
        let t = Word::gen("t");
        Word::commutator(
            &s.concat(&t.inverse()),
            &t.conjugated_by(&s.pow(2)),
        )
    }

    /// `w₂ = s [s t⁻¹, t⁻¹ s⁻¹ t] s⁻¹`.
    ///
    /// The outer conjugator is `s`, not `t`: with an `s`-conjugation the
    /// commutator `[w₁, w₂]` evaluated at (translation, planted solution)
    /// reproduces the displaced-block tables exactly and its support meets the
    /// first factor's support only in the two designated unit intervals.  A
    /// `t`-conjugation shifts nothing, leaves an overlap on two extra unit
    /// intervals, and breaks the final commutator identity; see the equation
    /// construction tests for the exact check.
    pub fn w2() -> Word {
        let s = Word::gen("s");
        let t = Word::gen("t");
        Word::commutator(
            &s.concat(&t.inverse()),
            &s.inverse().conjugated_by(&t),
        )
        .conjugated_by(&s.inverse())
    }

    /// `w = [w₁, w₂]`, a nontrivial word whose image lies deep in the derived
    /// series.
    pub fn w() -> Word {
        Word::commutator(&w1(), &w2())
    }

    /// Thompson-style presentation on the pair (A, B):
    /// `⟨A, B | [A, (AB)⁻¹ B (AB)], [A, (AB)⁻² B (AB)²]⟩`.
    pub fn f_presentation_upper() -> Presentation {
        let a = Word::gen("A");
        let b = Word::gen("B");
        let ab = a.concat(&b);
        Presentation::new(
            vec!["A".into(), "B".into()],
            vec![
                Word::commutator(&a, &b.conjugated_by(&ab)),
                Word::commutator(&a, &b.conjugated_by(&ab.pow(2))),
            ],
        )
        .expect("well-formed builtin")
    }

    /// The same group presented on the pair (a, b):
    /// `⟨a, b | [a b⁻¹, a⁻¹ b a], [a b⁻¹, a⁻² b a²]⟩`.
    pub fn f_presentation_lower() -> Presentation {
        let a = Word::gen("a");
        let b = Word::gen("b");
        let ab1 = a.concat(&b.inverse());
        Presentation::new(
            vec!["a".into(), "b".into()],
            vec![
                Word::commutator(&ab1, &b.conjugated_by(&a)),
                Word::commutator(&ab1, &b.conjugated_by(&a.pow(2))),
            ],
        )
        .expect("well-formed builtin")
    }

    /// The generator change carrying the (A, B) presentation to the (a, b)
    /// one: `A = a b⁻¹`, `B = b`.
    pub fn tietze_upper_to_lower() -> BTreeMap<String, Word> {
        let mut dict = BTreeMap::new();
        dict.insert("A".into(), Word::gen("a").concat(&Word::gen_pow("b", -1)));
        dict.insert("B".into(), Word::gen("b"));
        dict
    }

    pub fn lookup_word(name: &str) -> Result<Word> {
        match name {
            "w" => Ok(w()),
            "w1" => Ok(w1()),
            "w2" => Ok(w2()),
            _ => Err(PlError::UnknownBuiltin(name.to_owned())),
        }
    }

    pub fn lookup_presentation(name: &str) -> Result<Presentation> {
        match name {
            "F_AB" => Ok(f_presentation_upper()),
            "F_ab" => Ok(f_presentation_lower()),
            _ => Err(PlError::UnknownBuiltin(name.to_owned())),
        }
    }
}

pub fn evaluate_etpl(w: &Word, bind: &BTreeMap<String, Etpl>) -> Result<Etpl> {
    let mut acc = Etpl::identity();
    for (name, exp) in w.letters() {
        let e = bind
            .get(name)
            .ok_or_else(|| PlError::UnboundGenerator(name.clone()))?;
        acc = acc.compose(&e.power(*exp));
    }
    Ok(acc)
}

pub fn evaluate_mixed(w: &Word, bind: &BTreeMap<String, MixedWord>) -> Result<MixedWord> {
    let mut acc = MixedWord::identity();
    for (name, exp) in w.letters() {
        let m = bind
            .get(name)
            .ok_or_else(|| PlError::UnboundGenerator(name.clone()))?;
        acc = acc.concat(&m.pow(*exp));
    }
    Ok(acc)
}

pub fn evaluate_map(w: &Word, bind: &BTreeMap<String, Map>) -> Result<Map> {
    let mut acc = Map::Pl(Etpl::identity());
    for (name, exp) in w.letters() {
        let m = bind
            .get(name)
            .ok_or_else(|| PlError::UnboundGenerator(name.clone()))?;
        acc = acc.compose(&m.power(*exp)?)?;
    }
    Ok(acc)
}

/// Checks every relator of a presentation against PL bindings.
pub fn relators_hold_etpl(p: &Presentation, bind: &BTreeMap<String, Etpl>) -> Result<bool> {
    for r in &p.relators {
        if !evaluate_etpl(r, bind)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks every relator against mixed-word bindings.
pub fn relators_hold_mixed(p: &Presentation, bind: &BTreeMap<String, MixedWord>) -> Result<bool> {
    for r in &p.relators {
        if !evaluate_mixed(r, bind)?.is_identity()? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(text: &str) -> Word {
        parse_word(text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["a b^-1", "x0^3", "h1 tau_2", "[a, b] c^2", "(a b)^-2", "1"] {
            let w = parsed(text);
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert!(parsed("a a^-1").is_empty());
        assert_eq!(parsed("a^2 a^-1"), Word::gen("a"));
        assert_eq!(parsed("a b b^-1 a"), Word::gen_pow("a", 2));
        assert_eq!(parsed("(a b)^-1"), parsed("b^-1 a^-1"));
    }

    #[test]
    fn commutator_sugar_expands() {
        assert_eq!(parsed("[a, b]"), parsed("a b a^-1 b^-1"));
        assert_eq!(
            parsed("[a b, c]"),
            parsed("a b c b^-1 a^-1 c^-1")
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_word("a ^^2") {
            Err(PlError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_word("a b)").is_err());
        assert!(parse_word("[a b]").is_err());
        assert!(parse_word("a $ b").is_err());
    }

    #[test]
    fn commutator_identity_splits_into_two_commutators() {
        // [t y⁻¹, y⁻¹ t⁻¹ y] = [t, y⁻²] [t⁻¹, y⁻¹] already in the free group
        let lhs = parsed("[t y^-1, y^-1 t^-1 y]");
        let rhs = parsed("[t, y^-2] [t^-1, y^-1]");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_carries_one_presentation_to_the_other() {
        let upper = builtin::f_presentation_upper();
        let lower = builtin::f_presentation_lower();
        let dict = builtin::tietze_upper_to_lower();
        let carried = upper
            .substitute(&dict, vec!["a".into(), "b".into()])
            .unwrap();
        assert_eq!(carried.relators, lower.relators);
    }

    #[test]
    fn abelianization_sums_exponents() {
        let w = parsed("[a, b] a^3 c c^-1");
        let ab = w.abelianize();
        assert_eq!(ab.get("a"), Some(&3));
        assert_eq!(ab.get("b"), None);
        assert_eq!(ab.get("c"), None);
        assert!(builtin::w().abelianize().is_empty());
    }

    #[test]
    fn builtin_test_words_are_reduced_and_nontrivial() {
        for name in ["w", "w1", "w2"] {
            let w = builtin::lookup_word(name).unwrap();
            assert!(!w.is_empty());
            assert!(w.abelianize().is_empty(), "{name} must be a commutator word");
        }
        assert_eq!(builtin::w1(), parsed("[s t^-1, s^-2 t s^2]"));
        assert_eq!(builtin::w2(), parsed("s (s t^-1 (t^-1 s^-1 t) t s^-1 (t^-1 s t)) s^-1"));
        assert!(builtin::lookup_word("nope").is_err());
    }

    #[test]
    fn formal_square_root_adds_generator_and_relator() {
        let p = builtin::f_presentation_lower();
        let (p2, fresh) = formal_square_root(&p, "a").unwrap();
        assert_eq!(fresh, "y_a");
        assert_eq!(p2.generators.last().unwrap(), "y_a");
        let extra = p2.relators.last().unwrap();
        assert_eq!(extra, &parsed("a y_a^-2"));
        assert!(formal_square_root(&p, "zzz").is_err());
    }

    #[test]
    fn word_serialization_round_trips() {
        let w = builtin::w();
        let text = serde_json::to_string(&w).unwrap();
        let back: Word = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn substitution_replaces_generators() {
        let mut dict = BTreeMap::new();
        dict.insert("A".to_owned(), parsed("a b^-1"));
        dict.insert("B".to_owned(), parsed("b"));
        assert_eq!(parsed("A B").substitute(&dict), Word::gen("a"));
        assert_eq!(parsed("A^-1").substitute(&dict), parsed("b a^-1"));
        assert_eq!(parsed("C A").substitute(&dict), parsed("C a b^-1"));
    }
}
