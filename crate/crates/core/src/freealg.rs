//! Free noncommutative algebra over the Laurent ring in coloured letters
//! `t_ij(c)`.
//!
//! Function algebras of different colours are not separate instances: a
//! letter carries its colour as a tag, and letters differing only in colour
//! are distinct generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pairing::rho_apply;
use crate::ring::{parse_rational, LaurentPoly, Rational, Substitution, VarRegistry};

/// An invertible colour: a nonzero rational times a monomial in colour
/// variables. The colour group is multiplicative, so composites such as
/// `λμ` or `λ/μ` are tags too.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourTag {
    coeff: Rational,
    vars: BTreeMap<String, i32>,
}

impl ColourTag {
    pub fn one() -> Self {
        ColourTag {
            coeff: Rational::one(),
            vars: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Result<Self> {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse(format!(
                "`{name}` is not a colour variable name"
            )));
        }
        Ok(ColourTag {
            coeff: Rational::one(),
            vars: BTreeMap::from([(name.to_string(), 1)]),
        })
    }

    pub fn rational(r: Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroColour);
        }
        Ok(ColourTag {
            coeff: r,
            vars: BTreeMap::new(),
        })
    }

    /// Parses a rational (`2`, `-3/2`) or a variable name (`l`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
            Self::rational(parse_rational(s)?)
        } else {
            Self::var(s)
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.vars.is_empty()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Colour variables with their nonzero exponents.
    pub fn vars(&self) -> &BTreeMap<String, i32> {
        &self.vars
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut vars = self.vars.clone();
        for (k, e) in &other.vars {
            let slot = vars.entry(k.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                vars.remove(k);
            }
        }
        ColourTag {
            coeff: &self.coeff * &other.coeff,
            vars,
        }
    }

    pub fn inv(&self) -> Self {
        ColourTag {
            coeff: self.coeff.recip(),
            vars: self.vars.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let coeff = num_traits::pow(base.coeff.clone(), n.unsigned_abs() as usize);
        let k = n.abs();
        ColourTag {
            coeff,
            vars: base.vars.iter().map(|(v, e)| (v.clone(), e * k)).collect(),
        }
    }

    /// The tag as a ring element; every colour variable must be registered.
    pub fn to_poly(&self, reg: &Arc<VarRegistry>) -> Result<LaurentPoly> {
        let mut exps = vec![0; reg.len()];
        for (name, &e) in &self.vars {
            let idx = reg
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            exps[idx] = e;
        }
        Ok(LaurentPoly::monomial(reg, self.coeff.clone(), exps))
    }

    /// Replaces colour variables by tags.
    pub fn substitute(&self, assign: &BTreeMap<String, ColourTag>) -> Self {
        let mut out = ColourTag::rational(self.coeff.clone()).expect("nonzero");
        for (name, &e) in &self.vars {
            let piece = match assign.get(name) {
                Some(t) => t.pow(e),
                None => ColourTag {
                    coeff: Rational::one(),
                    vars: BTreeMap::from([(name.clone(), e)]),
                },
            };
            out = out.mul(&piece);
        }
        out
    }
}

impl fmt::Display for ColourTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.coeff.is_one() || self.vars.is_empty() {
            parts.push(self.coeff.to_string());
        }
        for (v, &e) in &self.vars {
            if e == 1 {
                parts.push(v.clone());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for ColourTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColourTag({self})")
    }
}

impl Serialize for ColourTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Matrix-entry generator `t_ij(colour)` with `i, j ∈ {1, 2}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub i: u8,
    pub j: u8,
    pub colour: ColourTag,
}

impl Letter {
    pub const DIM: u8 = 2;

    pub fn new(i: u8, j: u8, colour: ColourTag) -> Result<Self> {
        if !(1..=Self::DIM).contains(&i) || !(1..=Self::DIM).contains(&j) {
            return Err(Error::ShapeMismatch(format!(
                "letter index t{i}{j} outside 1..={}",
                Self::DIM
            )));
        }
        Ok(Letter { i, j, colour })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}{}({})", self.i, self.j, self.colour)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Letter", 3)?;
        st.serialize_field("i", &self.i)?;
        st.serialize_field("j", &self.j)?;
        st.serialize_field("colour", &self.colour)?;
        st.end()
    }
}

/// A monomial of the free algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }
}

/// Length first, then lexicographic letter by letter.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite ring-linear combination of words.
///
/// `result_colour` records the target colour of a coloured product. It is
/// metadata only: equality compares terms.
#[derive(Clone)]
pub struct FreeElem {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Word, LaurentPoly>,
    result_colour: Option<ColourTag>,
}

impl FreeElem {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        FreeElem {
            reg: reg.clone(),
            terms: BTreeMap::new(),
            result_colour: None,
        }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::term(Word::unit(), LaurentPoly::one(reg))
    }

    pub fn term(word: Word, coeff: LaurentPoly) -> Self {
        let mut out = Self::zero(coeff.registry());
        out.add_term(word, coeff);
        out
    }

    pub fn word(reg: &Arc<VarRegistry>, word: Word) -> Self {
        Self::term(word, LaurentPoly::one(reg))
    }

    /// The single letter `t_ij(colour)`.
    pub fn letter(reg: &Arc<VarRegistry>, i: u8, j: u8, colour: ColourTag) -> Result<Self> {
        Ok(Self::word(reg, Word(vec![Letter::new(i, j, colour)?])))
    }

    fn add_term(&mut self, word: Word, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, w: &Word) -> LaurentPoly {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.reg))
    }

    pub fn result_colour(&self) -> Option<&ColourTag> {
        self.result_colour.as_ref()
    }

    pub fn with_result_colour(mut self, c: Option<ColourTag>) -> Self {
        self.result_colour = c;
        self
    }

    /// Colours of all letters appearing in the element.
    pub fn colours(&self) -> BTreeSet<ColourTag> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().map(|l| l.colour.clone()))
            .collect()
    }

    /// The single colour of all letters, `None` for scalars, and an error
    /// when letters of several colours appear.
    pub fn uniform_colour(&self) -> Result<Option<ColourTag>> {
        let cs = self.colours();
        match cs.len() {
            0 => Ok(None),
            1 => Ok(cs.into_iter().next()),
            _ => Err(Error::MixedColours),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.reg != other.reg {
            return Err(Error::RegistryMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        if out.result_colour != other.result_colour {
            out.result_colour = None;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FreeElem {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            result_colour: self.result_colour.clone(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(&self.reg);
        out.result_colour = self.result_colour.clone();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.checked_mul(c)?);
        }
        Ok(out)
    }

    /// Bilinear extension of word concatenation.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.reg != other.reg {
            return Err(Error::RegistryMismatch);
        }
        let mut out = Self::zero(&self.reg);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every word and rescales by the returned coefficient.
    pub fn map_words(&self, f: impl Fn(&Word) -> Result<(Word, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(&self.reg);
        out.result_colour = self.result_colour.clone();
        for (w, c) in &self.terms {
            let (w2, k) = f(w)?;
            out.add_term(w2, c.checked_mul(&k)?);
        }
        Ok(out)
    }

    /// Substitutes the coefficient variables `subst`, leaving words untouched.
    pub fn substitute_coeffs(&self, subst: &Substitution) -> Result<Self> {
        let mut out = Self::zero(&self.reg);
        out.result_colour = self.result_colour.clone();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.substitute(subst)?);
        }
        Ok(out)
    }
}

impl PartialEq for FreeElem {
    fn eq(&self, other: &Self) -> bool {
        self.reg == other.reg && self.terms == other.terms
    }
}

impl Eq for FreeElem {}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else if w.is_empty() {
                    if c.is_monomial() {
                        c.to_string()
                    } else {
                        format!("({c})")
                    }
                } else if c.is_monomial() {
                    format!("{c}*{w}")
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElem({self})")
    }
}

struct TermJson<'a> {
    word: &'a Word,
    coeff: &'a LaurentPoly,
}

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("word", self.word)?;
        m.serialize_entry("coeff", self.coeff)?;
        m.end()
    }
}

/// `[{"word": [{"i":…,"j":…,"colour":…}, …], "coeff": poly}, …]` in word order.
impl Serialize for FreeElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (word, coeff) in &self.terms {
            seq.serialize_element(&TermJson { word, coeff })?;
        }
        seq.end()
    }
}

pub fn fa_add(a: &FreeElem, b: &FreeElem) -> Result<FreeElem> {
    a.checked_add(b)
}

pub fn fa_concat(a: &FreeElem, b: &FreeElem) -> Result<FreeElem> {
    a.concat(b)
}

/// Coloured product `x(λ) ·ν y(μ) = ρ^ν(ρ_λ(x) ρ_μ(y))`.
///
/// The operand colours are read from the letters; each operand must be
/// uniformly coloured. The result is tagged with `nu`.
pub fn cp_mul(a: &FreeElem, b: &FreeElem, nu: &ColourTag) -> Result<FreeElem> {
    let uncolour = |x: &FreeElem| -> Result<FreeElem> {
        match x.uniform_colour()? {
            Some(c) => rho_apply(&c.inv(), x),
            None => Ok(x.clone()),
        }
    };
    let prod = uncolour(a)?.concat(&uncolour(b)?)?;
    Ok(rho_apply(nu, &prod)?.with_result_colour(Some(nu.clone())))
}

/// Retags letters and substitutes the same colour values into coefficients.
pub fn fa_substitute_colours(
    a: &FreeElem,
    assign: &BTreeMap<String, ColourTag>,
) -> Result<FreeElem> {
    let reg = a.registry();
    let mut subst = Substitution::new();
    for (name, tag) in assign {
        if reg.index_of(name).is_some() {
            subst = subst.monomial(name, tag.to_poly(reg)?)?;
        }
    }
    let retag = |w: &Word| -> Word {
        Word(
            w.0.iter()
                .map(|l| Letter {
                    i: l.i,
                    j: l.j,
                    colour: l.colour.substitute(assign),
                })
                .collect(),
        )
    };
    let mut out = FreeElem::zero(reg);
    out.result_colour = a.result_colour.as_ref().map(|c| c.substitute(assign));
    for (w, c) in &a.terms {
        out.add_term(retag(w), c.substitute(&subst)?);
    }
    Ok(out)
}
