//! Verification suite: coloured Yang-Baxter equation, coloured Hopf axioms
//! and the coloured RTT relations at defining-representation level.
//!
//! Every check returns a [`CheckReport`] whose residual is an exact ring
//! object; a check passes iff its residual is identically zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::freealg::{cp_mul, fa_substitute_colours, ColourTag, FreeElem};
use crate::model::{Generator, ModelSpec, UElem, DIM};
use crate::ring::{LaurentPoly, VarRegistry};
use crate::tensor::{embed_leg, flip, kron, Leg, RingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labelled<T> {
    pub label: String,
    pub value: T,
}

impl<T> Labelled<T> {
    pub fn new(label: impl Into<String>, value: T) -> Self {
        Labelled {
            label: label.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "parts", rename_all = "snake_case")]
pub enum Residual {
    Matrices(Vec<Labelled<RingMatrix>>),
    Relations(Vec<Labelled<FreeElem>>),
    Values(Vec<Labelled<LaurentPoly>>),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Matrices(v) => v.iter().all(|p| p.value.is_zero()),
            Residual::Relations(v) => v.iter().all(|p| p.value.is_zero()),
            Residual::Values(v) => v.iter().all(|p| p.value.is_zero()),
        }
    }
}

/// Outcome of one check. Ordinary checks pass iff the residual is zero;
/// negative controls pass iff it is not.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub negative_control: bool,
    pub context: BTreeMap<String, String>,
    pub residual: Residual,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        context: BTreeMap<String, String>,
        residual: Residual,
    ) -> Self {
        CheckReport {
            name: name.into(),
            passed: residual.is_zero(),
            negative_control: false,
            context,
            residual,
            details: Map::new(),
        }
    }

    /// Wraps a check that is expected to fail.
    pub fn negative_control(mut inner: CheckReport, name: impl Into<String>) -> Self {
        inner.name = name.into();
        inner.negative_control = true;
        inner.passed = !inner.residual.is_zero();
        inner
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    /// Compact JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn context(pairs: &[(&str, &ColourTag)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn ctx3(l: &ColourTag, m: &ColourTag, n: &ColourTag) -> BTreeMap<String, String> {
    context(&[("lambda", l), ("mu", m), ("nu", n)])
}

/// Representation relations `KEK⁻¹ = q²E`, `KFK⁻¹ = q⁻²F`,
/// `(q−q⁻¹)[E,F] = K − K⁻¹`, `KK⁻¹ = 1`.
pub fn check_rep_relations(model: &ModelSpec) -> Result<CheckReport> {
    use Generator::*;
    let reg = model.registry();
    let q = LaurentPoly::var(reg, "q")?;
    let qi = q.invert()?;
    let (e, f, k, ki) = (
        model.rep_generator(E),
        model.rep_generator(F),
        model.rep_generator(K),
        model.rep_generator(Kinv),
    );
    let conj = |x: &RingMatrix| -> Result<RingMatrix> { k.mul(x)?.mul(&ki) };
    let comm = e.mul(&f)?.sub(&f.mul(&e)?)?;
    let parts = vec![
        Labelled::new("KEK^-1 - q^2 E", conj(&e)?.sub(&e.scale(&q.pow(2)?))?),
        Labelled::new("KFK^-1 - q^-2 F", conj(&f)?.sub(&f.scale(&qi.pow(2)?))?),
        Labelled::new(
            "(q-q^-1)[E,F] - (K-K^-1)",
            comm.scale(&(&q - &qi)).sub(&k.sub(&ki)?)?,
        ),
        Labelled::new(
            "KK^-1 - 1",
            k.mul(&ki)?.sub(&RingMatrix::identity(reg, DIM))?,
        ),
    ];
    Ok(CheckReport::new(
        "model.relations",
        BTreeMap::new(),
        Residual::Matrices(parts),
    ))
}

/// Coloured quasitriangularity in the representation:
/// `R^{λμ}·Δ^{λ,μ}_ν(g) = P·Δ^{μ,λ}_ν(g)·P·R^{λμ}` for every generator.
pub fn check_intertwining(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<CheckReport> {
    let r = model.build_r_coloured(l, m)?;
    let mut parts = Vec::new();
    for g in Generator::ALL {
        let lhs = r.mul(&model.delta_coloured(g, l, m, n)?)?;
        let rhs = flip(&model.delta_coloured(g, m, l, n)?, DIM)?.mul(&r)?;
        parts.push(Labelled::new(g.name(), lhs.sub(&rhs)?));
    }
    Ok(CheckReport::new(
        "intertwining",
        ctx3(l, m, n),
        Residual::Matrices(parts),
    ))
}

/// `R₁₂^{λμ} R₁₃^{λν} R₂₃^{μν} − R₂₃^{μν} R₁₃^{λν} R₁₂^{λμ}` with the
/// model's coloured R-matrix.
pub fn check_cybe(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<CheckReport> {
    check_cybe_with(|a, b| model.build_r_coloured(a, b), l, m, n)
}

/// Coloured YBE for an arbitrary coloured R-matrix builder.
pub fn check_cybe_with<B>(
    build: B,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<CheckReport>
where
    B: Fn(&ColourTag, &ColourTag) -> Result<RingMatrix>,
{
    let r12 = embed_leg(&build(l, m)?, Leg::L12, DIM)?;
    let r13 = embed_leg(&build(l, n)?, Leg::L13, DIM)?;
    let r23 = embed_leg(&build(m, n)?, Leg::L23, DIM)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    let residual = Residual::Matrices(vec![Labelled::new(
        "R12 R13 R23 - R23 R13 R12",
        lhs.sub(&rhs)?,
    )]);
    Ok(CheckReport::new("ybe", ctx3(l, m, n), residual))
}

/// Six colours `(α, β, λ, μ, κ, ν)` of the coloured coassociativity law.
#[derive(Debug, Clone)]
pub struct CoassocColours {
    pub alpha: ColourTag,
    pub beta: ColourTag,
    pub lambda: ColourTag,
    pub mu: ColourTag,
    pub kappa: ColourTag,
    pub nu: ColourTag,
}

impl CoassocColours {
    pub fn from_slice(c: &[ColourTag; 6]) -> Self {
        CoassocColours {
            alpha: c[0].clone(),
            beta: c[1].clone(),
            lambda: c[2].clone(),
            mu: c[3].clone(),
            kappa: c[4].clone(),
            nu: c[5].clone(),
        }
    }

    pub fn unit() -> Self {
        Self::from_slice(&std::array::from_fn(|_| ColourTag::one()))
    }

    fn context(&self) -> BTreeMap<String, String> {
        context(&[
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("lambda", &self.lambda),
            ("mu", &self.mu),
            ("kappa", &self.kappa),
            ("nu", &self.nu),
        ])
    }
}

/// `(Δ^{α,β}_λ ⊗ id)∘Δ^{λ,μ}_ν = (id ⊗ Δ^{β,μ}_κ)∘Δ^{α,κ}_ν` on every generator.
pub fn check_coassoc_coloured(model: &ModelSpec, c: &CoassocColours) -> Result<CheckReport> {
    check_coassoc_coloured_with(model, c, &c.beta)
}

/// Coassociativity with the right-hand inner coproduct using `right_beta`
/// in place of β. Any `right_beta ≠ β` must fail.
pub fn check_coassoc_coloured_with(
    model: &ModelSpec,
    c: &CoassocColours,
    right_beta: &ColourTag,
) -> Result<CheckReport> {
    let mut parts = Vec::new();
    for g in Generator::ALL {
        let w = [g];
        let reg = model.registry();
        let mut lhs = RingMatrix::zeros(reg, 8, 8);
        for t in model.coloured_coproduct_terms(&w, &c.lambda, &c.mu, &c.nu)? {
            let inner = model.delta_coloured_word(&t.left, &c.alpha, &c.beta, &c.lambda)?;
            lhs = lhs.add(&kron(&inner, &model.rep_word(&t.right)?).scale(&t.coeff))?;
        }
        let mut rhs = RingMatrix::zeros(reg, 8, 8);
        for t in model.coloured_coproduct_terms(&w, &c.alpha, &c.kappa, &c.nu)? {
            let inner = model.delta_coloured_word(&t.right, right_beta, &c.mu, &c.kappa)?;
            rhs = rhs.add(&kron(&model.rep_word(&t.left)?, &inner).scale(&t.coeff))?;
        }
        parts.push(Labelled::new(g.name(), lhs.sub(&rhs)?));
    }
    let mut ctx = c.context();
    if right_beta != &c.beta {
        ctx.insert("right_beta".into(), right_beta.to_string());
    }
    Ok(CheckReport::new("coassoc", ctx, Residual::Matrices(parts)))
}

/// `(ε_λ⊗id)∘Δ^{λ,μ}_ν = σ^μ∘σ_ν` and `(id⊗ε_μ)∘Δ^{λ,μ}_ν = σ^λ∘σ_ν`.
pub fn check_counit_coloured(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<CheckReport> {
    check_counit_coloured_with(model, l, m, n, (m, l))
}

/// Counit laws compared against `σ^{targets.0}σ_ν` (left law) and
/// `σ^{targets.1}σ_ν` (right law).
pub fn check_counit_coloured_with(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
    targets: (&ColourTag, &ColourTag),
) -> Result<CheckReport> {
    let reg = model.registry();
    let mut parts = Vec::new();
    for g in Generator::ALL {
        let dg = model.rep_generator(g);
        let lowered = model.sigma_rep(&n.inv(), &dg)?;
        let mut left = RingMatrix::zeros(reg, DIM, DIM);
        let mut right = RingMatrix::zeros(reg, DIM, DIM);
        for t in model.coloured_coproduct_terms(&[g], l, m, n)? {
            let el = model.counit_coloured_word(&t.left, l)?;
            left = left.add(&model.rep_word(&t.right)?.scale(&(&t.coeff * &el)))?;
            let er = model.counit_coloured_word(&t.right, m)?;
            right = right.add(&model.rep_word(&t.left)?.scale(&(&t.coeff * &er)))?;
        }
        let left_target = model.sigma_rep(targets.0, &lowered)?;
        let right_target = model.sigma_rep(targets.1, &lowered)?;
        parts.push(Labelled::new(
            format!("{g} (eps x id)"),
            left.sub(&left_target)?,
        ));
        parts.push(Labelled::new(
            format!("{g} (id x eps)"),
            right.sub(&right_target)?,
        ));
    }
    Ok(CheckReport::new(
        "counit",
        ctx3(l, m, n),
        Residual::Matrices(parts),
    ))
}

/// `m∘(S^μ_λ⊗id)∘Δ^{λ,μ}_ν = ε_ν·1` and `m∘(id⊗S^λ_μ)∘Δ^{λ,μ}_ν = ε_ν·1`.
pub fn check_antipode_coloured(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<CheckReport> {
    check_antipode_coloured_with(model, l, m, n, l)
}

/// Antipode laws with the left antipode leg `S^μ_{λ'}`; any `λ' ≠ λ` fails.
pub fn check_antipode_coloured_with(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
    s_lower: &ColourTag,
) -> Result<CheckReport> {
    let reg = model.registry();
    let mut parts = Vec::new();
    for g in Generator::ALL {
        let unit = RingMatrix::identity(reg, DIM).scale(&model.counit_coloured(g, n)?);
        let mut left = RingMatrix::zeros(reg, DIM, DIM);
        let mut right = RingMatrix::zeros(reg, DIM, DIM);
        for t in model.coloured_coproduct_terms(&[g], l, m, n)? {
            let a = UElem::word(reg, t.left.clone());
            let b = UElem::word(reg, t.right.clone());
            let sa = model.rep_uelem(&model.antipode_coloured_uelem(&a, m, s_lower)?)?;
            left = left.add(&sa.mul(&model.rep_word(&t.right)?)?.scale(&t.coeff))?;
            let sb = model.rep_uelem(&model.antipode_coloured_uelem(&b, l, m)?)?;
            right = right.add(&model.rep_word(&t.left)?.mul(&sb)?.scale(&t.coeff))?;
        }
        parts.push(Labelled::new(format!("{g} m(S x id)"), left.sub(&unit)?));
        parts.push(Labelled::new(format!("{g} m(id x S)"), right.sub(&unit)?));
    }
    let mut ctx = ctx3(l, m, n);
    if s_lower != l {
        ctx.insert("s_lower".into(), s_lower.to_string());
    }
    Ok(CheckReport::new("antipode", ctx, Residual::Matrices(parts)))
}

/// Square matrix of free-algebra elements (the T legs and their products).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMatrix {
    n: usize,
    entries: Vec<FreeElem>,
}

impl FreeMatrix {
    pub fn zeros(reg: &Arc<VarRegistry>, n: usize) -> Self {
        FreeMatrix {
            n,
            entries: vec![FreeElem::zero(reg); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &FreeElem {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FreeElem) {
        self.entries[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[FreeElem] {
        &self.entries
    }

    /// Matrix product whose entry products are coloured products with target `nu`.
    pub fn cp_mul(&self, other: &FreeMatrix, nu: &ColourTag) -> Result<FreeMatrix> {
        let reg = self.entries[0].registry().clone();
        let mut out = FreeMatrix::zeros(&reg, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                let mut acc = FreeElem::zero(&reg);
                for k in 0..self.n {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&cp_mul(a, b, nu)?)?;
                }
                out.set(r, c, acc.with_result_colour(Some(nu.clone())));
            }
        }
        Ok(out)
    }

    /// `R·X` for a ring matrix `R`.
    pub fn ring_left(r: &RingMatrix, x: &FreeMatrix) -> Result<FreeMatrix> {
        let reg = r.registry().clone();
        let n = x.n;
        let mut out = FreeMatrix::zeros(&reg, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FreeElem::zero(&reg);
                for k in 0..n {
                    if r.get(i, k).is_zero() || x.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&x.get(k, j).scale(r.get(i, k))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `X·R` for a ring matrix `R`.
    pub fn ring_right(x: &FreeMatrix, r: &RingMatrix) -> Result<FreeMatrix> {
        let reg = r.registry().clone();
        let n = x.n;
        let mut out = FreeMatrix::zeros(&reg, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FreeElem::zero(&reg);
                for k in 0..n {
                    if x.get(i, k).is_zero() || r.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&x.get(i, k).scale(r.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeMatrix) -> Result<FreeMatrix> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(FreeMatrix { n: self.n, entries })
    }

    pub fn neg(&self) -> FreeMatrix {
        FreeMatrix {
            n: self.n,
            entries: self.entries.iter().map(FreeElem::neg).collect(),
        }
    }

    /// `P·X·P` with `P` the flip of `V⊗V`.
    pub fn flip(&self, dim: usize) -> FreeMatrix {
        let swap = |i: usize| (i % dim) * dim + i / dim;
        let mut out = self.clone();
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r, c, self.get(swap(r), swap(c)).clone());
            }
        }
        out
    }
}

/// The T legs `T₁ = T^λ ⊗ 1` and `T₂ = 1 ⊗ T^μ` on `V⊗V`, with
/// `T₁[(i,k),(j,l)] = δ_kl t_ij(λ)` and `T₂[(i,k),(j,l)] = δ_ij t_kl(μ)`.
pub fn build_t_legs(
    reg: &Arc<VarRegistry>,
    l: &ColourTag,
    m: &ColourTag,
) -> Result<(FreeMatrix, FreeMatrix)> {
    let mut t1 = FreeMatrix::zeros(reg, DIM * DIM);
    let mut t2 = FreeMatrix::zeros(reg, DIM * DIM);
    for i in 0..DIM {
        for k in 0..DIM {
            for j in 0..DIM {
                for ll in 0..DIM {
                    let (row, col) = (i * DIM + k, j * DIM + ll);
                    if k == ll {
                        t1.set(
                            row,
                            col,
                            FreeElem::letter(reg, i as u8 + 1, j as u8 + 1, l.clone())?,
                        );
                    }
                    if i == j {
                        t2.set(
                            row,
                            col,
                            FreeElem::letter(reg, k as u8 + 1, ll as u8 + 1, m.clone())?,
                        );
                    }
                }
            }
        }
    }
    Ok((t1, t2))
}

/// One entry of the RTT matrix relation, at 1-based slot `((i,k),(j,l))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotRelation {
    pub row: (u8, u8),
    pub col: (u8, u8),
    pub relation: FreeElem,
}

impl SlotRelation {
    pub fn label(&self) -> String {
        format!(
            "(({},{}),({},{}))",
            self.row.0, self.row.1, self.col.0, self.col.1
        )
    }
}

/// The sixteen entries of `R^{λμ}(T₁ ·ν T₂) − (T₂ ·ν T₁)R^{λμ}`, zeros kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub lambda: ColourTag,
    pub mu: ColourTag,
    pub nu: ColourTag,
    pub relations: Vec<SlotRelation>,
}

impl RelationSet {
    fn from_matrix(l: &ColourTag, m: &ColourTag, n: &ColourTag, x: &FreeMatrix) -> Self {
        let mut relations = Vec::new();
        for r in 0..x.dim() {
            for c in 0..x.dim() {
                relations.push(SlotRelation {
                    row: ((r / DIM) as u8 + 1, (r % DIM) as u8 + 1),
                    col: ((c / DIM) as u8 + 1, (c % DIM) as u8 + 1),
                    relation: x.get(r, c).clone().with_result_colour(Some(n.clone())),
                });
            }
        }
        RelationSet {
            lambda: l.clone(),
            mu: m.clone(),
            nu: n.clone(),
            relations,
        }
    }

    pub fn count(&self) -> usize {
        self.relations.len()
    }

    pub fn to_matrix(&self) -> FreeMatrix {
        let reg = self.relations[0].relation.registry().clone();
        let mut out = FreeMatrix::zeros(&reg, DIM * DIM);
        for s in &self.relations {
            let r = (s.row.0 as usize - 1) * DIM + s.row.1 as usize - 1;
            let c = (s.col.0 as usize - 1) * DIM + s.col.1 as usize - 1;
            out.set(r, c, s.relation.clone());
        }
        out
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &SlotRelation> {
        self.relations.iter().filter(|s| !s.relation.is_zero())
    }

    /// Applies a colour assignment to letters, coefficients and the colour labels.
    pub fn substitute_colours(&self, assign: &BTreeMap<String, ColourTag>) -> Result<RelationSet> {
        let relations = self
            .relations
            .iter()
            .map(|s| {
                Ok(SlotRelation {
                    row: s.row,
                    col: s.col,
                    relation: fa_substitute_colours(&s.relation, assign)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(RelationSet {
            lambda: self.lambda.substitute(assign),
            mu: self.mu.substitute(assign),
            nu: self.nu.substitute(assign),
            relations,
        })
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|s| {
                serde_json::json!({
                    "slot": {"row": [s.row.0, s.row.1], "col": [s.col.0, s.col.1]},
                    "result_colour": s.relation.result_colour(),
                    "relation": s.relation,
                })
            })
            .collect();
        serde_json::json!({
            "colours": {"lambda": self.lambda, "mu": self.mu, "nu": self.nu},
            "count": self.count(),
            "relations": rels,
        })
    }
}

/// Entries of the coloured RTT relation for the model's R-matrix.
pub fn derive_rtt_relations(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Result<RelationSet> {
    let reg = model.registry();
    let r = model.build_r_coloured(l, m)?;
    let (t1, t2) = build_t_legs(reg, l, m)?;
    let lhs = FreeMatrix::ring_left(&r, &t1.cp_mul(&t2, n)?)?;
    let rhs = FreeMatrix::ring_right(&t2.cp_mul(&t1, n)?, &r)?;
    Ok(RelationSet::from_matrix(l, m, n, &lhs.sub(&rhs)?))
}

/// Recomputes the relation set through the flipped frame and compares.
///
/// With `R̂ = P R^{λμ} P`, `A = T^μ ⊗ 1` and `B = 1 ⊗ T^λ`, the defining
/// expression satisfies
/// `R^{λμ}(T₁·T₂) − (T₂·T₁)R^{λμ} = −P[(A·B)R̂ − R̂(B·A)]P`.
pub fn check_rtt_consistency(model: &ModelSpec, rel: &RelationSet) -> Result<CheckReport> {
    let reg = model.registry();
    let (l, m, n) = (&rel.lambda, &rel.mu, &rel.nu);
    let r_hat = flip(&model.build_r_coloured(l, m)?, DIM)?;
    let (a, b) = build_t_legs(reg, m, l)?;
    let ab_r = FreeMatrix::ring_right(&a.cp_mul(&b, n)?, &r_hat)?;
    let r_ba = FreeMatrix::ring_left(&r_hat, &b.cp_mul(&a, n)?)?;
    let alt = ab_r.sub(&r_ba)?.flip(DIM).neg();
    let diff = rel.to_matrix().sub(&alt)?;
    let parts = rel
        .relations
        .iter()
        .enumerate()
        .map(|(idx, s)| Labelled::new(s.label(), diff.entries()[idx].clone()))
        .collect();
    Ok(
        CheckReport::new("rtt", ctx3(l, m, n), Residual::Relations(parts))
            .with_detail("nonzero_relations", rel.nonzero().count()),
    )
}

/// Scaling both colours by `c` multiplies the slot `((i,k),(j,l))` relation
/// by the unit `c^{[i=1]+[k=1]−[j=1]−[l=1]}`.
pub fn check_colour_scaling(
    model: &ModelSpec,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
    c: &ColourTag,
) -> Result<CheckReport> {
    let base = derive_rtt_relations(model, l, m, n)?;
    let scaled = derive_rtt_relations(model, &c.mul(l), &c.mul(m), n)?;
    let ones = |pair: (u8, u8)| (pair.0 == 1) as i32 + (pair.1 == 1) as i32;
    let mut parts = Vec::new();
    for (s0, s1) in base.relations.iter().zip(&scaled.relations) {
        let unit = model.colour(&c.pow(ones(s0.row) - ones(s0.col)))?;
        let d = s1.relation.checked_sub(&s0.relation.scale(&unit)?)?;
        parts.push(Labelled::new(s0.label(), d));
    }
    let mut ctx = ctx3(l, m, n);
    ctx.insert("scale".into(), c.to_string());
    Ok(CheckReport::new(
        "rtt.colour-scaling",
        ctx,
        Residual::Relations(parts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::standard_registry;

    fn model() -> ModelSpec {
        ModelSpec::slq2_colour(&standard_registry()).unwrap()
    }

    fn c(s: &str) -> ColourTag {
        ColourTag::parse(s).unwrap()
    }

    #[test]
    fn t_leg_bookkeeping() {
        let m = model();
        let reg = m.registry();
        let (t1, t2) = build_t_legs(reg, &c("l"), &c("m")).unwrap();
        // ((1,1),(1,2)) -> zero-based (0, 1)
        assert!(t1.get(0, 1).is_zero());
        // ((1,1),(2,1)) -> (0, 2)
        assert_eq!(t1.get(0, 2), &FreeElem::letter(reg, 1, 2, c("l")).unwrap());
        // ((1,2),(1,1)) -> (1, 0)
        assert_eq!(t2.get(1, 0), &FreeElem::letter(reg, 2, 1, c("m")).unwrap());
    }

    #[test]
    fn unit_colour_cybe_and_intertwining() {
        let m = model();
        let one = ColourTag::one();
        assert!(check_cybe(&m, &one, &one, &one).unwrap().passed);
        assert!(check_intertwining(&m, &one, &one, &one).unwrap().passed);
    }

    #[test]
    fn symbolic_cybe() {
        let m = model();
        let rep = check_cybe(&m, &c("l"), &c("m"), &c("n")).unwrap();
        assert!(rep.passed, "{:?}", rep.residual);
    }

    #[test]
    fn perturbed_r_fails_cybe() {
        let m = model();
        let perturbed = |a: &ColourTag, b: &ColourTag| -> Result<RingMatrix> {
            let mut r = m.build_r_coloured(a, b)?;
            let f = m.colour(&a.pow(2).mul(&b.inv()))?;
            let x = r.get(1, 2) * &f;
            r.set(1, 2, x);
            Ok(r)
        };
        assert!(
            !check_cybe_with(perturbed, &c("l"), &c("m"), &c("n"))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn corrupted_model_fails_unit_cybe() {
        let m = model().corrupted();
        let one = ColourTag::one();
        assert!(!check_cybe(&m, &one, &one, &one).unwrap().passed);
    }

    #[test]
    fn hopf_axioms_symbolic() {
        let m = model();
        let six = CoassocColours::from_slice(&["a", "b", "l", "m", "k", "n"].map(c));
        assert!(check_coassoc_coloured(&m, &six).unwrap().passed);
        assert!(
            !check_coassoc_coloured_with(&m, &six, &c("p"))
                .unwrap()
                .passed
        );
        let (l, mu, n) = (c("l"), c("m"), c("n"));
        assert!(check_counit_coloured(&m, &l, &mu, &n).unwrap().passed);
        assert!(check_antipode_coloured(&m, &l, &mu, &n).unwrap().passed);
        assert!(
            !check_antipode_coloured_with(&m, &l, &mu, &n, &c("p"))
                .unwrap()
                .passed
        );
        assert!(
            !check_counit_coloured_with(&m, &l, &mu, &n, (&c("p"), &l))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn counit_with_unit_lower_colour_is_sigma_mu() {
        let m = model();
        // ν = 1: the left counit law reduces to σ^μ
        let one = ColourTag::one();
        let rep = check_counit_coloured(&m, &c("l"), &c("m"), &one).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn rtt_consistency() {
        let m = model();
        let rel = derive_rtt_relations(&m, &c("l"), &c("m"), &c("n")).unwrap();
        assert_eq!(rel.count(), 16);
        assert!(rel
            .relations
            .iter()
            .all(|s| s.relation.result_colour() == Some(&c("n"))));
        assert!(check_rtt_consistency(&m, &rel).unwrap().passed);
        let mut bad = rel.clone();
        bad.relations[1].relation = bad.relations[1]
            .relation
            .scale(&m.colour(&c("2")).unwrap())
            .unwrap();
        assert!(!check_rtt_consistency(&m, &bad).unwrap().passed);
    }

    #[test]
    fn colour_scaling_law() {
        let m = model();
        let rep = check_colour_scaling(&m, &c("l"), &c("m"), &c("n"), &c("c")).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn equal_colours_reduce_to_unit_colour() {
        let m = model();
        let one = ColourTag::one();
        let unit = derive_rtt_relations(&m, &one, &one, &one).unwrap();
        let single = derive_rtt_relations(&m, &c("l"), &c("l"), &c("l")).unwrap();
        let assign = BTreeMap::from([("l".to_string(), one)]);
        assert_eq!(single.substitute_colours(&assign).unwrap(), unit);
    }
}
