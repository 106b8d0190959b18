//! Exact sparse multivariate Laurent polynomials over the rationals.
//!
//! Every scalar in the crate lives in `Q[x_1^{±1}, …, x_n^{±1}]` for a
//! fixed [`VarRegistry`]. The registry fixes the order of the exponent-vector
//! slots; two polynomials can only be combined when they share a registry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p` or `p/r` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if out.contains(&name) {
                return Err(Error::DuplicateVariable(name));
            }
            out.push(name);
        }
        Ok(Arc::new(VarRegistry { names: out }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Graded lexicographic order used for display and serialization: higher
/// total degree first, then lexicographically larger exponent vectors first.
fn grlex_desc(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// A Laurent polynomial in canonical form: no stored coefficient is zero.
#[derive(Clone)]
pub struct LaurentPoly {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        LaurentPoly {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::constant(reg, Rational::one())
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: Rational) -> Self {
        Self::monomial(reg, c, vec![0; reg.len()])
    }

    pub fn from_int(reg: &Arc<VarRegistry>, c: i64) -> Self {
        Self::constant(reg, Rational::from_integer(c.into()))
    }

    /// The single variable `name`.
    pub fn var(reg: &Arc<VarRegistry>, name: &str) -> Result<Self> {
        Self::var_pow(reg, name, 1)
    }

    pub fn var_pow(reg: &Arc<VarRegistry>, name: &str, exp: i32) -> Result<Self> {
        let idx = reg
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; reg.len()];
        exps[idx] = exp;
        Ok(Self::monomial(reg, Rational::one(), exps))
    }

    /// Panics when `exps` does not have one slot per registry variable.
    pub fn monomial(reg: &Arc<VarRegistry>, coeff: Rational, exps: Vec<i32>) -> Self {
        assert_eq!(exps.len(), reg.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly {
            reg: reg.clone(),
            terms,
        }
    }

    /// Sums the given terms, dropping anything that cancels.
    pub fn from_terms<I>(reg: &Arc<VarRegistry>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut out = Self::zero(reg);
        for (exps, c) in terms {
            assert_eq!(exps.len(), reg.len(), "exponent vector length");
            out.add_term(exps, c);
        }
        out
    }

    fn add_term(&mut self, exps: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
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

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (lexicographic on exponent vectors).
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Terms sorted by the graded lexicographic display order.
    pub fn sorted_terms(&self) -> Vec<(&[i32], &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_registry(&self.reg, &other.reg) {
            return Err(Error::RegistryMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_registry(&self.reg, &other.reg) {
            return Err(Error::RegistryMismatch);
        }
        let mut out = Self::zero(&self.reg);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.reg);
        }
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Inverse of a unit. The units of a Laurent ring are exactly the
    /// nonzero monomials.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_monomial() {
            return Err(Error::NotAUnit);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(
            &self.reg,
            c.recip(),
            e.iter().map(|x| -x).collect(),
        ))
    }

    /// Integer power; negative powers require a monomial.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(&self.reg);
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluates the variables named in `subst`, leaving the rest symbolic.
    /// The result stays over the same registry.
    pub fn substitute(&self, subst: &Substitution) -> Result<Self> {
        if let Some(reg) = &subst.reg {
            if !same_registry(reg, &self.reg) {
                return Err(Error::RegistryMismatch);
            }
        }
        // slot -> (coeff, exponent vector) of the monomial it is replaced by
        let mut slots: Vec<Option<(&Rational, &[i32])>> = vec![None; self.reg.len()];
        for (name, value) in &subst.values {
            let idx = self
                .reg
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let (e, c) = value.terms.iter().next().expect("validated monomial");
            slots[idx] = Some((c, e.as_slice()));
        }
        let mut out = Self::zero(&self.reg);
        for (exps, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut e_out = vec![0i32; self.reg.len()];
            for (slot, &e) in exps.iter().enumerate() {
                match slots[slot] {
                    None => e_out[slot] += e,
                    Some((vc, ve)) => {
                        c *= pow_rational(vc, e);
                        for (k, &x) in ve.iter().enumerate() {
                            e_out[k] += e * x;
                        }
                    }
                }
            }
            out.add_term(e_out, c);
        }
        Ok(out)
    }

    /// Substitutes rationals for every variable and returns the value.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut subst = Substitution::new();
        for (k, v) in values {
            subst = subst.rational(&self.reg, k, v.clone())?;
        }
        let p = self.substitute(&subst)?;
        p.as_constant().ok_or_else(|| {
            let missing = self
                .reg
                .names()
                .iter()
                .find(|n| !values.contains_key(*n))
                .cloned()
                .unwrap_or_default();
            Error::UnknownVariable(missing)
        })
    }

    /// Short human-readable rendering, e.g. `q^2*l*m^-1 - 1/2`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn pow_rational(c: &Rational, e: i32) -> Rational {
    let base = if e < 0 { c.recip() } else { c.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Assignment of monomials (or rationals) to registry variables.
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    reg: Option<Arc<VarRegistry>>,
    values: BTreeMap<String, LaurentPoly>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rational(self, reg: &Arc<VarRegistry>, var: &str, value: Rational) -> Result<Self> {
        let p = LaurentPoly::constant(reg, value);
        self.monomial(var, p)
    }

    /// Maps `var` to a monomial. Zero and multi-term values are rejected
    /// because every variable is invertible.
    pub fn monomial(mut self, var: &str, value: LaurentPoly) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::ZeroSubstitution(var.to_string()));
        }
        if !value.is_monomial() {
            return Err(Error::NonMonomialSubstitution(var.to_string()));
        }
        if value.registry().index_of(var).is_none() {
            return Err(Error::UnknownVariable(var.to_string()));
        }
        match &self.reg {
            Some(r) if !same_registry(r, value.registry()) => return Err(Error::RegistryMismatch),
            _ => self.reg = Some(value.registry().clone()),
        }
        self.values.insert(var.to_string(), value);
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_registry(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in self.reg.names().iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct TermJson<'a> {
    names: &'a [String],
    exps: &'a [i32],
    coeff: &'a Rational,
}

struct ExpsJson<'a> {
    names: &'a [String],
    exps: &'a [i32],
}

impl Serialize for ExpsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = self
            .names
            .iter()
            .zip(self.exps)
            .filter(|(_, &e)| e != 0)
            .collect();
        let mut m = s.serialize_map(Some(nonzero.len()))?;
        for (name, e) in nonzero {
            m.serialize_entry(name, e)?;
        }
        m.end()
    }
}

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry(
            "exps",
            &ExpsJson {
                names: self.names,
                exps: self.exps,
            },
        )?;
        m.serialize_entry("coeff", &self.coeff.to_string())?;
        m.end()
    }
}

/// `[{"exps": {var: int, …}, "coeff": "p/q"}, …]` in display order. Zero
/// exponents are omitted; the zero polynomial is the empty array.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (exps, coeff) in terms {
            seq.serialize_element(&TermJson {
                names: self.reg.names(),
                exps,
                coeff,
            })?;
        }
        seq.end()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("registry mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert!(same_registry(&self.reg, &rhs.reg), "registry mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::new(["q", "l", "m"]).unwrap()
    }

    fn v(r: &Arc<VarRegistry>, n: &str) -> LaurentPoly {
        LaurentPoly::var(r, n).unwrap()
    }

    fn inv(p: &LaurentPoly) -> LaurentPoly {
        p.invert().unwrap()
    }

    #[test]
    fn additive_inverse_and_cancellation() {
        let r = reg();
        let q = v(&r, "q");
        assert!((&q + &(-&q)).is_zero());
        let qi = inv(&q);
        assert_eq!(&(&q - &qi) + &qi, q);
        let ratio = &v(&r, "l") * &inv(&v(&r, "m"));
        let two = &ratio + &ratio;
        assert_eq!(two, ratio.scale(&rat(2, 1)));
        assert_eq!(two.to_string(), "2*l*m^-1");
    }

    #[test]
    fn products() {
        let r = reg();
        let q = v(&r, "q");
        let qi = inv(&q);
        assert!((&q * &qi).is_one());
        let lhs = (&q - &qi) * (&q + &qi);
        assert_eq!(lhs, q.pow(2).unwrap() - q.pow(-2).unwrap());
        let a = &v(&r, "l") * &inv(&v(&r, "m"));
        let b = &v(&r, "m") * &inv(&v(&r, "l"));
        assert!((&a * &b).is_one());
    }

    #[test]
    fn substitution_examples() {
        let r = reg();
        let q = v(&r, "q");
        let l = v(&r, "l");
        let m = v(&r, "m");
        let p = (&q - &inv(&q)) * &l * inv(&m);
        let s = Substitution::new()
            .rational(&r, "l", rat(1, 1))
            .unwrap()
            .rational(&r, "m", rat(1, 1))
            .unwrap();
        assert_eq!(p.substitute(&s).unwrap(), &q - &inv(&q));

        let s = Substitution::new().rational(&r, "q", rat(3, 2)).unwrap();
        let val = q.pow(2).unwrap().substitute(&s).unwrap();
        assert_eq!(val.as_constant(), Some(rat(9, 4)));

        let s = Substitution::new().monomial("l", m.clone()).unwrap();
        assert!((&l * &inv(&m)).substitute(&s).unwrap().is_one());
    }

    #[test]
    fn substitution_rejects_zero_and_non_monomials() {
        let r = reg();
        let e = Substitution::new()
            .rational(&r, "l", rat(0, 1))
            .unwrap_err();
        assert_eq!(e, Error::ZeroSubstitution("l".into()));
        let two_terms = &v(&r, "q") + &LaurentPoly::one(&r);
        let e = Substitution::new().monomial("l", two_terms).unwrap_err();
        assert_eq!(e, Error::NonMonomialSubstitution("l".into()));
    }

    #[test]
    fn inversion() {
        let r = reg();
        let ql = &v(&r, "q") * &v(&r, "l");
        assert_eq!(inv(&ql), &inv(&v(&r, "q")) * &inv(&v(&r, "l")));
        let p = inv(&v(&r, "m")).scale(&rat(2, 1));
        assert_eq!(inv(&p), v(&r, "m").scale(&rat(1, 2)));
        let non_unit = &v(&r, "q") + &LaurentPoly::one(&r);
        assert_eq!(non_unit.invert().unwrap_err(), Error::NotAUnit);
        assert_eq!(LaurentPoly::zero(&r).invert().unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let a = LaurentPoly::one(&reg());
        let b = LaurentPoly::one(&VarRegistry::new(["q"]).unwrap());
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::RegistryMismatch);
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::RegistryMismatch);
    }

    #[test]
    fn duplicate_registry_names() {
        assert_eq!(
            VarRegistry::new(["q", "q"]).unwrap_err(),
            Error::DuplicateVariable("q".into())
        );
    }

    #[test]
    fn json_is_graded_lex_with_string_coefficients() {
        let r = reg();
        let q = v(&r, "q");
        let p = &q.pow(2).unwrap().scale(&rat(-3, 2)) + &LaurentPoly::one(&r) + &v(&r, "l");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"exps":{"q":2},"coeff":"-3/2"},{"exps":{"l":1},"coeff":"1"},{"exps":{},"coeff":"1"}]"#
        );
        assert_eq!(serde_json::to_string(&LaurentPoly::zero(&r)).unwrap(), "[]");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
