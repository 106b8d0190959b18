//! `U_q(sl(2))` in its 2-dimensional defining representation, coloured by
//! a multiplicative group of rescaling Hopf automorphisms.
//!
//! Conventions, all with integral powers of `q`:
//!
//! ```text
//! D(E) = e12   D(F) = e21   D(K) = diag(q, q⁻¹)
//! Δ(E) = E⊗1 + K⁻¹⊗E      Δ(F) = F⊗K + 1⊗F      Δ(K) = K⊗K
//! S(E) = −KE   S(F) = −FK⁻¹   S(K) = K⁻¹
//! ε(E) = ε(F) = 0   ε(K) = 1
//! σ^ν(E) = νE   σ^ν(F) = ν⁻¹F   σ^ν(K) = K      (conjugation by diag(ν, 1))
//! R = [[q,0,0,0],[0,1,q−q⁻¹,0],[0,0,1,0],[0,0,0,q]]
//! ```
//!
//! The coproduct is the one intertwined by `R`: `R·Δ(x) = P·Δ(x)·P·R`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::ColourTag;
use crate::ring::{rat, LaurentPoly, VarRegistry};
use crate::tensor::{kron, RingMatrix};

pub const MODEL_NAME: &str = "slq2-colour";

/// Representation dimension of the defining module.
pub const DIM: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Generator {
    E,
    F,
    K,
    Kinv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E, Generator::F, Generator::K, Generator::Kinv];

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::K => "K",
            Generator::Kinv => "Kinv",
        }
    }

    /// Exponent of ν picked up under σ^ν.
    pub fn colour_weight(self) -> i32 {
        match self {
            Generator::E => 1,
            Generator::F => -1,
            Generator::K | Generator::Kinv => 0,
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(Generator::E),
            "F" => Ok(Generator::F),
            "K" => Ok(Generator::K),
            "Kinv" | "K^-1" => Ok(Generator::Kinv),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A word in the generators; the empty word is the unit of `U_q`.
pub type UWord = Vec<Generator>;

pub fn word_weight(w: &[Generator]) -> i32 {
    w.iter().map(|g| g.colour_weight()).sum()
}

/// Element of the free algebra on the generators. Only its image under the
/// representation is ever compared, so no normal form is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UElem {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<UWord, LaurentPoly>,
}

impl UElem {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        UElem {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(reg: &Arc<VarRegistry>, w: UWord) -> Self {
        Self::term(LaurentPoly::one(reg), w)
    }

    pub fn term(coeff: LaurentPoly, w: UWord) -> Self {
        let mut out = Self::zero(coeff.registry());
        out.add_term(w, coeff);
        out
    }

    fn add_term(&mut self, w: UWord, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(w.clone())
            .or_insert_with(|| LaurentPoly::zero(&self.reg));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(&self.reg);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.reg);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().copied());
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}

/// One simple tensor `coeff · left ⊗ right` of `U_q ⊗ U_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub coeff: LaurentPoly,
    pub left: UWord,
    pub right: UWord,
}

/// The colour action σ^ν: conjugation by `diag(ν^a, ν^b)` in the
/// representation, equivalently scaling each generator by `ν^weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColourAction {
    pub conjugator_exponents: [i32; DIM],
    pub generator_weights: BTreeMap<Generator, i32>,
}

impl ColourAction {
    /// `C_ν` as a ring matrix.
    pub fn conjugator(&self, reg: &Arc<VarRegistry>, nu: &ColourTag) -> Result<RingMatrix> {
        let diag = self
            .conjugator_exponents
            .iter()
            .map(|&e| nu.pow(e).to_poly(reg))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix::diag(diag))
    }
}

/// Element σ^ν of the colour group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourGroupElement {
    pub nu: ColourTag,
}

impl ColourGroupElement {
    pub fn new(nu: ColourTag) -> Self {
        ColourGroupElement { nu }
    }

    pub fn identity() -> Self {
        Self::new(ColourTag::one())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.nu.mul(&other.nu))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.nu.inv())
    }
}

/// The coloured Hopf instance.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    name: String,
    reg: Arc<VarRegistry>,
    rep: BTreeMap<Generator, RingMatrix>,
    coproduct: BTreeMap<Generator, Vec<TensorTerm>>,
    coproduct_images: BTreeMap<Generator, RingMatrix>,
    antipode: BTreeMap<Generator, UElem>,
    antipode_images: BTreeMap<Generator, RingMatrix>,
    counit: BTreeMap<Generator, LaurentPoly>,
    colour_action: ColourAction,
    r_matrix: RingMatrix,
}

impl ModelSpec {
    /// Looks a model up by its CLI name.
    pub fn by_name(name: &str, reg: &Arc<VarRegistry>) -> Result<Self> {
        match name {
            MODEL_NAME => Self::slq2_colour(reg),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    /// The coloured `U_q(sl(2))` model. `reg` must contain `q`.
    pub fn slq2_colour(reg: &Arc<VarRegistry>) -> Result<Self> {
        use Generator::*;
        let q = LaurentPoly::var(reg, "q")?;
        let qi = q.invert()?;
        let one = LaurentPoly::one(reg);
        let zero = LaurentPoly::zero(reg);

        let rep = BTreeMap::from([
            (E, RingMatrix::unit(reg, DIM, 0, 1)),
            (F, RingMatrix::unit(reg, DIM, 1, 0)),
            (K, RingMatrix::diag(vec![q.clone(), qi.clone()])),
            (Kinv, RingMatrix::diag(vec![qi.clone(), q.clone()])),
        ]);

        let tt = |left: UWord, right: UWord| TensorTerm {
            coeff: one.clone(),
            left,
            right,
        };
        let coproduct = BTreeMap::from([
            (E, vec![tt(vec![E], vec![]), tt(vec![Kinv], vec![E])]),
            (F, vec![tt(vec![F], vec![K]), tt(vec![], vec![F])]),
            (K, vec![tt(vec![K], vec![K])]),
            (Kinv, vec![tt(vec![Kinv], vec![Kinv])]),
        ]);

        let minus = -&one;
        let antipode = BTreeMap::from([
            (E, UElem::term(minus.clone(), vec![K, E])),
            (F, UElem::term(minus, vec![F, Kinv])),
            (K, UElem::word(reg, vec![Kinv])),
            (Kinv, UElem::word(reg, vec![K])),
        ]);

        let counit = BTreeMap::from([
            (E, zero.clone()),
            (F, zero.clone()),
            (K, one.clone()),
            (Kinv, one.clone()),
        ]);

        let colour_action = ColourAction {
            conjugator_exponents: [1, 0],
            generator_weights: Generator::ALL
                .iter()
                .map(|g| (*g, g.colour_weight()))
                .collect(),
        };

        let z = || zero.clone();
        let r_matrix = RingMatrix::from_rows(vec![
            vec![q.clone(), z(), z(), z()],
            vec![z(), one.clone(), &q - &qi, z()],
            vec![z(), z(), one.clone(), z()],
            vec![z(), z(), z(), q.clone()],
        ])?;

        let mut model = ModelSpec {
            name: MODEL_NAME.to_string(),
            reg: reg.clone(),
            rep,
            coproduct,
            coproduct_images: BTreeMap::new(),
            antipode,
            antipode_images: BTreeMap::new(),
            counit,
            colour_action,
            r_matrix,
        };
        for g in Generator::ALL {
            let img = model.coproduct_image(&model.coproduct[&g])?;
            model.coproduct_images.insert(g, img);
            let s = model.rep_uelem(&model.antipode[&g])?;
            model.antipode_images.insert(g, s);
        }
        Ok(model)
    }

    /// Same model with a replaced R-matrix (negative controls).
    pub fn with_r_matrix(mut self, r: RingMatrix) -> Self {
        self.r_matrix = r;
        self
    }

    /// The model with the nilpotent R entry shifted by one, which breaks
    /// the Yang-Baxter equation.
    pub fn corrupted(self) -> Self {
        let mut r = self.r_matrix.clone();
        let bumped = r.get(1, 2) + &LaurentPoly::one(&self.reg);
        r.set(1, 2, bumped);
        self.with_r_matrix(r)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn r_matrix(&self) -> &RingMatrix {
        &self.r_matrix
    }

    pub fn colour_action(&self) -> &ColourAction {
        &self.colour_action
    }

    pub fn colour(&self, c: &ColourTag) -> Result<LaurentPoly> {
        c.to_poly(&self.reg)
    }

    pub fn rep_generator(&self, g: Generator) -> RingMatrix {
        self.rep[&g].clone()
    }

    /// Looks a generator up by name (`E`, `F`, `K`, `Kinv`).
    pub fn rep_generator_named(&self, name: &str) -> Result<RingMatrix> {
        Ok(self.rep_generator(name.parse()?))
    }

    pub fn rep_word(&self, w: &[Generator]) -> Result<RingMatrix> {
        w.iter()
            .try_fold(RingMatrix::identity(&self.reg, DIM), |acc, g| {
                acc.mul(&self.rep[g])
            })
    }

    pub fn rep_uelem(&self, x: &UElem) -> Result<RingMatrix> {
        let mut out = RingMatrix::zeros(&self.reg, DIM, DIM);
        for (w, c) in x.terms() {
            out = out.add(&self.rep_word(w)?.scale(c))?;
        }
        Ok(out)
    }

    pub fn coproduct_terms(&self, g: Generator) -> &[TensorTerm] {
        &self.coproduct[&g]
    }

    /// `(D⊗D)Δ(g)` from the coproduct table.
    pub fn coproduct_image_of(&self, g: Generator) -> &RingMatrix {
        &self.coproduct_images[&g]
    }

    pub fn antipode_of(&self, g: Generator) -> &UElem {
        &self.antipode[&g]
    }

    pub fn counit_of(&self, g: Generator) -> &LaurentPoly {
        &self.counit[&g]
    }

    /// `(D⊗D)` image of a sum of simple tensors.
    pub fn coproduct_image(&self, terms: &[TensorTerm]) -> Result<RingMatrix> {
        let mut out = RingMatrix::zeros(&self.reg, DIM * DIM, DIM * DIM);
        for t in terms {
            let m = kron(&self.rep_word(&t.left)?, &self.rep_word(&t.right)?);
            out = out.add(&m.scale(&t.coeff))?;
        }
        Ok(out)
    }

    /// Multiplicative extension of the coproduct table to a word.
    pub fn coproduct_word(&self, w: &[Generator]) -> Vec<TensorTerm> {
        let mut acc = vec![TensorTerm {
            coeff: LaurentPoly::one(&self.reg),
            left: vec![],
            right: vec![],
        }];
        for g in w {
            let mut next = Vec::with_capacity(acc.len() * 2);
            for a in &acc {
                for b in &self.coproduct[g] {
                    let mut left = a.left.clone();
                    left.extend(b.left.iter().copied());
                    let mut right = a.right.clone();
                    right.extend(b.right.iter().copied());
                    next.push(TensorTerm {
                        coeff: &a.coeff * &b.coeff,
                        left,
                        right,
                    });
                }
            }
            acc = next;
        }
        acc
    }

    /// Scalar by which σ^ν multiplies a word.
    pub fn sigma_word_factor(&self, nu: &ColourTag, w: &[Generator]) -> Result<LaurentPoly> {
        let wt: i32 = w
            .iter()
            .map(|g| self.colour_action.generator_weights[g])
            .sum();
        nu.pow(wt).to_poly(&self.reg)
    }

    /// σ^ν on an element of `U_q`.
    pub fn sigma_uelem(&self, nu: &ColourTag, x: &UElem) -> Result<UElem> {
        let mut out = UElem::zero(&self.reg);
        for (w, c) in x.terms() {
            out.add_term(w.clone(), c * &self.sigma_word_factor(nu, w)?);
        }
        Ok(out)
    }

    /// Representation-level σ^ν: `C_ν · m · C_ν⁻¹`.
    pub fn sigma_rep(&self, nu: &ColourTag, m: &RingMatrix) -> Result<RingMatrix> {
        let c = self.colour_action.conjugator(&self.reg, nu)?;
        let ci = self.colour_action.conjugator(&self.reg, &nu.inv())?;
        c.mul(m)?.mul(&ci)
    }

    /// `(σ^λ⊗σ^μ)(R)` in the representation.
    pub fn build_r_coloured(&self, lambda: &ColourTag, mu: &ColourTag) -> Result<RingMatrix> {
        let c = kron(
            &self.colour_action.conjugator(&self.reg, lambda)?,
            &self.colour_action.conjugator(&self.reg, mu)?,
        );
        let ci = kron(
            &self.colour_action.conjugator(&self.reg, &lambda.inv())?,
            &self.colour_action.conjugator(&self.reg, &mu.inv())?,
        );
        c.mul(&self.r_matrix)?.mul(&ci)
    }

    /// Symbolic coloured coproduct `(σ^λ⊗σ^μ)∘Δ∘σ_ν` of a word.
    pub fn coloured_coproduct_terms(
        &self,
        w: &[Generator],
        lambda: &ColourTag,
        mu: &ColourTag,
        nu: &ColourTag,
    ) -> Result<Vec<TensorTerm>> {
        let pre = self.sigma_word_factor(&nu.inv(), w)?;
        self.coproduct_word(w)
            .into_iter()
            .map(|t| {
                let c = &t.coeff
                    * &pre
                    * self.sigma_word_factor(lambda, &t.left)?
                    * self.sigma_word_factor(mu, &t.right)?;
                Ok(TensorTerm {
                    coeff: c,
                    left: t.left,
                    right: t.right,
                })
            })
            .collect()
    }

    /// `(D⊗D)Δ^{λ,μ}_ν(g)`, with σ^λ, σ^μ applied as conjugations on the legs.
    pub fn delta_coloured(
        &self,
        g: Generator,
        lambda: &ColourTag,
        mu: &ColourTag,
        nu: &ColourTag,
    ) -> Result<RingMatrix> {
        let pre = self.sigma_word_factor(&nu.inv(), &[g])?;
        let mut out = RingMatrix::zeros(&self.reg, DIM * DIM, DIM * DIM);
        for t in &self.coproduct[&g] {
            let left = self.sigma_rep(lambda, &self.rep_word(&t.left)?)?;
            let right = self.sigma_rep(mu, &self.rep_word(&t.right)?)?;
            out = out.add(&kron(&left, &right).scale(&(&t.coeff * &pre)))?;
        }
        Ok(out)
    }

    /// Representation image of the coloured coproduct of an arbitrary word.
    pub fn delta_coloured_word(
        &self,
        w: &[Generator],
        lambda: &ColourTag,
        mu: &ColourTag,
        nu: &ColourTag,
    ) -> Result<RingMatrix> {
        self.coproduct_image(&self.coloured_coproduct_terms(w, lambda, mu, nu)?)
    }

    pub fn counit_word(&self, w: &[Generator]) -> LaurentPoly {
        w.iter()
            .fold(LaurentPoly::one(&self.reg), |acc, g| &acc * &self.counit[g])
    }

    /// `ε_ν = ε∘σ_ν` on a word.
    pub fn counit_coloured_word(&self, w: &[Generator], nu: &ColourTag) -> Result<LaurentPoly> {
        Ok(&self.counit_word(w) * &self.sigma_word_factor(&nu.inv(), w)?)
    }

    pub fn counit_coloured(&self, g: Generator, nu: &ColourTag) -> Result<LaurentPoly> {
        self.counit_coloured_word(&[g], nu)
    }

    /// Anti-multiplicative extension of the antipode table.
    pub fn antipode_word(&self, w: &[Generator]) -> UElem {
        w.iter()
            .rev()
            .fold(UElem::word(&self.reg, vec![]), |acc, g| {
                acc.mul(&self.antipode[g])
            })
    }

    /// `S^μ_ν = σ^μ∘S∘σ_ν` on an element.
    pub fn antipode_coloured_uelem(
        &self,
        x: &UElem,
        mu: &ColourTag,
        nu: &ColourTag,
    ) -> Result<UElem> {
        let pre = self.sigma_uelem(&nu.inv(), x)?;
        let mut s = UElem::zero(&self.reg);
        for (w, c) in pre.terms() {
            s = s.add(&self.antipode_word(w).scale(c));
        }
        self.sigma_uelem(mu, &s)
    }

    pub fn antipode_coloured(
        &self,
        g: Generator,
        mu: &ColourTag,
        nu: &ColourTag,
    ) -> Result<RingMatrix> {
        let x = UElem::word(&self.reg, vec![g]);
        self.rep_uelem(&self.antipode_coloured_uelem(&x, mu, nu)?)
    }

    /// JSON dump of all tables.
    pub fn to_json(&self) -> Value {
        let by_gen = |f: &dyn Fn(Generator) -> Value| -> Value {
            Value::Object(
                Generator::ALL
                    .iter()
                    .map(|g| (g.name().to_string(), f(*g)))
                    .collect(),
            )
        };
        let antipode_terms = |g: Generator| -> Value {
            let terms: Vec<Value> = self.antipode[&g]
                .terms()
                .map(|(w, c)| json!({"word": w, "coeff": c}))
                .collect();
            Value::Array(terms)
        };
        json!({
            "name": self.name,
            "registry": self.reg.names(),
            "rep": by_gen(&|g| json!(self.rep[&g])),
            "coproduct": by_gen(&|g| json!(self.coproduct[&g])),
            "coproduct_images": by_gen(&|g| json!(self.coproduct_images[&g])),
            "antipode": by_gen(&antipode_terms),
            "antipode_images": by_gen(&|g| json!(self.antipode_images[&g])),
            "counit": by_gen(&|g| json!(self.counit[&g])),
            "colour_action": self.colour_action,
            "r_matrix": self.r_matrix,
        })
    }
}

/// Registry holding `q` and the colour names used throughout the suite.
pub fn standard_registry() -> Arc<VarRegistry> {
    VarRegistry::new(["q", "l", "m", "n", "a", "b", "k", "c", "p"]).expect("distinct names")
}

/// Registry with `q` followed by the given colour variables (deduplicated,
/// in order of first appearance).
pub fn registry_for(colours: &[ColourTag]) -> Result<Arc<VarRegistry>> {
    let mut names = vec!["q".to_string()];
    for c in colours {
        for v in c.vars().keys() {
            if v == "q" {
                return Err(Error::Parse(
                    "`q` is the deformation parameter and cannot be a colour".into(),
                ));
            }
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
    }
    VarRegistry::new(names)
}

/// Generic evaluation point for `q`.
pub fn default_q() -> crate::ring::Rational {
    rat(3, 2)
}
