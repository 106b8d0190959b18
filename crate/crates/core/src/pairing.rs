//! Dual pairing between words in the `t_ij` and PBW monomials `E^a K^b F^c`,
//! through iterated coproducts in the defining representation.
//!
//! `⟨t_{i₁j₁}⋯t_{i_kj_k}, X⟩` is the `((i₁…i_k),(j₁…j_k))` entry of
//! `D^{⊗k}(Δ^{(k−1)}X)`; the empty word pairs as the counit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{derive_rtt_relations, CheckReport, Labelled, Residual};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::freealg::{ColourTag, FreeElem, Letter, Word};
use crate::linalg::{self, QMatrix};
use crate::model::{Generator, ModelSpec, UElem, UWord, DIM};
use crate::ring::{LaurentPoly, Rational, VarRegistry};
use crate::tensor::{kron, RingMatrix};

/// `E^e K^k F^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PbwMonomial {
    pub e: u32,
    pub k: i32,
    pub f: u32,
}

impl PbwMonomial {
    pub const UNIT: PbwMonomial = PbwMonomial { e: 0, k: 0, f: 0 };

    pub fn new(e: u32, k: i32, f: u32) -> Self {
        PbwMonomial { e, k, f }
    }

    pub fn degree(&self) -> u32 {
        self.e + self.f + self.k.unsigned_abs()
    }

    pub fn as_uword(&self) -> UWord {
        let mut w = vec![Generator::E; self.e as usize];
        let kg = if self.k >= 0 {
            Generator::K
        } else {
            Generator::Kinv
        };
        w.extend(std::iter::repeat_n(kg, self.k.unsigned_abs() as usize));
        w.extend(std::iter::repeat_n(Generator::F, self.f as usize));
        w
    }

    pub fn as_uelem(&self, reg: &Arc<VarRegistry>) -> UElem {
        UElem::word(reg, self.as_uword())
    }

    /// `ε(X) = 1` iff no `E` or `F` factor.
    pub fn counit(&self) -> Rational {
        if self.e == 0 && self.f == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// All monomials of degree at most `d`: by degree, then `e`, `k`, `f` descending.
    pub fn all_up_to(d: u32) -> Vec<PbwMonomial> {
        let mut out = Vec::new();
        for deg in 0..=d {
            for e in (0..=deg).rev() {
                for k in (-((deg - e) as i32)..=(deg - e) as i32).rev() {
                    let f = deg - e - k.unsigned_abs();
                    out.push(PbwMonomial::new(e, k, f));
                }
            }
        }
        out
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |g: &str, n: i64| match n {
            0 => {}
            1 => parts.push(g.to_string()),
            n => parts.push(format!("{g}^{n}")),
        };
        push("E", self.e as i64);
        push("K", self.k as i64);
        push("F", self.f as i64);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// All words of length at most `d` with letters of the given colour,
/// length first, then lexicographic on `(i, j)`.
pub fn words_up_to(d: usize, colour: &ColourTag) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=DIM as u8)
        .flat_map(|i| (1..=DIM as u8).map(move |j| (i, j)))
        .map(|(i, j)| Letter::new(i, j, colour.clone()).expect("indices in range"))
        .collect();
    let mut out = vec![Word::unit()];
    let mut layer = vec![Word::unit()];
    for _ in 0..d {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.0.clone();
                    v.push(l.clone());
                    Word(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `ρ^ν(t_ij) = (c_j/c_i)·t_ij` with `(c₁, c₂) = (ν, 1)`, letters retagged
/// to `colour·ν`, extended multiplicatively and linearly.
pub fn rho_apply(nu: &ColourTag, x: &FreeElem) -> Result<FreeElem> {
    if nu.is_one() {
        return Ok(x.clone());
    }
    let reg = x.registry().clone();
    let exps = [1, 0];
    let out = x.map_words(|w| {
        let mut weight = 0;
        let letters =
            w.0.iter()
                .map(|l| {
                    weight += exps[l.j as usize - 1] - exps[l.i as usize - 1];
                    Letter {
                        i: l.i,
                        j: l.j,
                        colour: l.colour.mul(nu),
                    }
                })
                .collect();
        Ok((Word(letters), nu.pow(weight).to_poly(&reg)?))
    })?;
    Ok(out.with_result_colour(x.result_colour().map(|c| c.mul(nu))))
}

/// `ρ_ν = ρ^{ν⁻¹}`.
pub fn rho_lower(nu: &ColourTag, x: &FreeElem) -> Result<FreeElem> {
    rho_apply(&nu.inv(), x)
}

/// Representation images `D^{⊗k}Δ^{(k−1)}(g)` for `k = 1..=max_len`.
#[derive(Debug, Clone)]
pub struct IteratedImages {
    reg: Arc<VarRegistry>,
    by_len: Vec<BTreeMap<Generator, RingMatrix>>,
}

impl IteratedImages {
    pub fn new(model: &ModelSpec, max_len: usize) -> Result<Self> {
        let reg = model.registry().clone();
        let mut by_len: Vec<BTreeMap<Generator, RingMatrix>> = Vec::new();
        if max_len >= 1 {
            by_len.push(
                Generator::ALL
                    .iter()
                    .map(|&g| (g, model.rep_generator(g)))
                    .collect(),
            );
        }
        for k in 2..=max_len {
            let prev = &by_len[k - 2];
            let n = DIM.pow(k as u32);
            let mut next = BTreeMap::new();
            for g in Generator::ALL {
                let mut acc = RingMatrix::zeros(&reg, n, n);
                for t in model.coproduct_terms(g) {
                    let left = word_image(&reg, prev, &t.left, DIM.pow(k as u32 - 1))?;
                    acc = acc.add(&kron(&left, &model.rep_word(&t.right)?).scale(&t.coeff))?;
                }
                next.insert(g, acc);
            }
            by_len.push(next);
        }
        Ok(IteratedImages { reg, by_len })
    }

    pub fn max_len(&self) -> usize {
        self.by_len.len()
    }

    /// `D^{⊗k}Δ^{(k−1)}` of a word in the generators.
    pub fn uword(&self, k: usize, w: &[Generator]) -> Result<RingMatrix> {
        word_image(&self.reg, &self.by_len[k - 1], w, DIM.pow(k as u32))
    }

    pub fn uelem(&self, k: usize, x: &UElem) -> Result<RingMatrix> {
        let n = DIM.pow(k as u32);
        let mut out = RingMatrix::zeros(&self.reg, n, n);
        for (w, c) in x.terms() {
            out = out.add(&self.uword(k, w)?.scale(c))?;
        }
        Ok(out)
    }
}

fn word_image(
    reg: &Arc<VarRegistry>,
    images: &BTreeMap<Generator, RingMatrix>,
    w: &[Generator],
    n: usize,
) -> Result<RingMatrix> {
    w.iter()
        .try_fold(RingMatrix::identity(reg, n), |acc, g| acc.mul(&images[g]))
}

fn word_index(w: &Word) -> (usize, usize) {
    w.0.iter().fold((0, 0), |(r, c), l| {
        (r * DIM + l.i as usize - 1, c * DIM + l.j as usize - 1)
    })
}

/// Pairing of a word against an element whose `k`-fold image is `image`.
fn pair_word_image(w: &Word, image: &RingMatrix) -> LaurentPoly {
    let (r, c) = word_index(w);
    image.get(r, c).clone()
}

/// `⟨w, x⟩` for a word in the generators. Letter colours are ignored.
pub fn pair_word_uword(model: &ModelSpec, w: &Word, x: &[Generator]) -> Result<LaurentPoly> {
    if w.is_empty() {
        return Ok(model.counit_word(x));
    }
    let images = IteratedImages::new(model, w.len())?;
    Ok(pair_word_image(w, &images.uword(w.len(), x)?))
}

pub fn pair_word_pbw(model: &ModelSpec, w: &Word, x: &PbwMonomial) -> Result<LaurentPoly> {
    pair_word_uword(model, w, &x.as_uword())
}

/// Bilinear extension of the pairing.
pub fn pair(model: &ModelSpec, a: &FreeElem, x: &UElem) -> Result<LaurentPoly> {
    let max_len = a.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
    let images = IteratedImages::new(model, max_len)?;
    let reg = model.registry();
    let mut acc = LaurentPoly::zero(reg);
    for (w, cw) in a.terms() {
        let v = if w.is_empty() {
            let mut e = LaurentPoly::zero(reg);
            for (u, cu) in x.terms() {
                e = &e + &(cu * &model.counit_word(u));
            }
            e
        } else {
            pair_word_image(w, &images.uelem(w.len(), x)?)
        };
        acc = &acc + &(cw * &v);
    }
    Ok(acc)
}

/// Every `⟨w, X⟩` with `|w| ≤ d`, `deg X ≤ d`, computed from the images.
fn pairing_cells(
    model: &ModelSpec,
    rows: &[Word],
    cols: &[UElem],
    exec: Exec,
) -> Result<Vec<Vec<LaurentPoly>>> {
    let d = rows.iter().map(Word::len).max().unwrap_or(0);
    let images = IteratedImages::new(model, d)?;
    let jobs: Vec<(usize, usize)> = (0..=d)
        .flat_map(|k| (0..cols.len()).map(move |c| (k, c)))
        .collect();
    let reg = model.registry();
    let per_job = exec.map(&jobs, |&(k, c)| -> Result<RingMatrix> {
        if k == 0 {
            let mut e = LaurentPoly::zero(reg);
            for (u, cu) in cols[c].terms() {
                e = &e + &(cu * &model.counit_word(u));
            }
            return Ok(RingMatrix::diag(vec![e]));
        }
        images.uelem(k, &cols[c])
    });
    let mut table: BTreeMap<(usize, usize), RingMatrix> = BTreeMap::new();
    for (job, m) in jobs.iter().zip(per_job) {
        table.insert(*job, m?);
    }
    Ok(rows
        .iter()
        .map(|w| {
            (0..cols.len())
                .map(|c| pair_word_image(w, &table[&(w.len(), c)]))
                .collect()
        })
        .collect())
}

/// `⟨ρ^ν(w), σ^ν(X)⟩ = ⟨w, X⟩` for all words and PBW monomials of degree at most `d`.
pub fn check_duality_compat(
    model: &ModelSpec,
    nu: &ColourTag,
    d: usize,
    exec: Exec,
) -> Result<CheckReport> {
    check_duality_compat_with(model, nu, d, exec, rho_apply)
}

/// Duality check with a replacement for `ρ^ν`.
pub fn check_duality_compat_with<F>(
    model: &ModelSpec,
    nu: &ColourTag,
    d: usize,
    exec: Exec,
    rho: F,
) -> Result<CheckReport>
where
    F: Fn(&ColourTag, &FreeElem) -> Result<FreeElem>,
{
    let reg = model.registry();
    let words = words_up_to(d, &ColourTag::one());
    let pbw = PbwMonomial::all_up_to(d as u32);
    let plain_cols: Vec<UElem> = pbw.iter().map(|x| x.as_uelem(reg)).collect();
    let sigma_cols = plain_cols
        .iter()
        .map(|x| model.sigma_uelem(nu, x))
        .collect::<Result<Vec<_>>>()?;
    let plain = pairing_cells(model, &words, &plain_cols, exec)?;

    let images = IteratedImages::new(model, d)?;
    let mut parts = Vec::new();
    for (r, w) in words.iter().enumerate() {
        let moved = rho(nu, &FreeElem::word(reg, w.clone()))?;
        for (c, x) in pbw.iter().enumerate() {
            let lhs = if w.is_empty() {
                pair(model, &moved, &sigma_cols[c])?
            } else {
                let img = images.uelem(w.len(), &sigma_cols[c])?;
                let mut acc = LaurentPoly::zero(reg);
                for (mw, mc) in moved.terms() {
                    acc = &acc + &(mc * &pair_word_image(mw, &img));
                }
                acc
            };
            let diff = &lhs - &plain[r][c];
            if !diff.is_zero() {
                parts.push(Labelled::new(format!("<{w}, {x}>"), diff));
            }
        }
    }
    let ctx = BTreeMap::from([
        ("nu".to_string(), nu.to_string()),
        ("degree".to_string(), d.to_string()),
    ]);
    Ok(CheckReport::new("duality", ctx, Residual::Values(parts))
        .with_detail("cells", words.len() * pbw.len()))
}

/// Entries of a Gram table: symbolic, or evaluated at a rational `q` with a rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GramValues {
    Symbolic(Vec<Vec<LaurentPoly>>),
    Evaluated {
        q: Rational,
        values: QMatrix,
        rank: usize,
    },
}

/// Table of `⟨w, X⟩` over words of length `≤ d` and PBW monomials of degree `≤ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramTable {
    pub degree: usize,
    pub rows: Vec<Word>,
    pub cols: Vec<PbwMonomial>,
    pub values: GramValues,
}

impl GramTable {
    pub fn rank(&self) -> Option<usize> {
        match &self.values {
            GramValues::Evaluated { rank, .. } => Some(*rank),
            GramValues::Symbolic(_) => None,
        }
    }

    pub fn evaluated(&self) -> Option<&QMatrix> {
        match &self.values {
            GramValues::Evaluated { values, .. } => Some(values),
            GramValues::Symbolic(_) => None,
        }
    }

    pub fn symbolic(&self) -> Option<&[Vec<LaurentPoly>]> {
        match &self.values {
            GramValues::Symbolic(v) => Some(v),
            GramValues::Evaluated { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<String> = self.rows.iter().map(|w| w.to_string()).collect();
        let cols: Vec<Value> = self
            .cols
            .iter()
            .map(|x| json!({"e": x.e, "k": x.k, "f": x.f, "label": x.to_string()}))
            .collect();
        let mut out = json!({"degree": self.degree, "rows": rows, "cols": cols});
        match &self.values {
            GramValues::Symbolic(v) => {
                out["values"] = serde_json::to_value(v).expect("polys serialize");
            }
            GramValues::Evaluated { q, values, rank } => {
                out["q"] = json!(q.to_string());
                out["values"] = json!(values
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
                out["rank"] = json!(rank);
            }
        }
        out
    }
}

fn check_q(q: &Rational) -> Result<()> {
    if q.is_zero() || q.abs().is_one() {
        return Err(Error::DegenerateQ(q.clone()));
    }
    Ok(())
}

fn eval_q(p: &LaurentPoly, q: &Rational) -> Result<Rational> {
    p.evaluate(&BTreeMap::from([("q".to_string(), q.clone())]))
}

pub fn gram_matrix(
    model: &ModelSpec,
    d: usize,
    eval: Option<&Rational>,
    exec: Exec,
) -> Result<GramTable> {
    if let Some(q) = eval {
        check_q(q)?;
    }
    let reg = model.registry();
    let rows = words_up_to(d, &ColourTag::one());
    let cols = PbwMonomial::all_up_to(d as u32);
    let ucols: Vec<UElem> = cols.iter().map(|x| x.as_uelem(reg)).collect();
    let sym = pairing_cells(model, &rows, &ucols, exec)?;
    let values = match eval {
        None => GramValues::Symbolic(sym),
        Some(q) => {
            let values = sym
                .iter()
                .map(|r| r.iter().map(|p| eval_q(p, q)).collect::<Result<Vec<_>>>())
                .collect::<Result<QMatrix>>()?;
            let rank = linalg::rank_fraction_free(&values);
            GramValues::Evaluated {
                q: q.clone(),
                values,
                rank,
            }
        }
    };
    Ok(GramTable {
        degree: d,
        rows,
        cols,
        values,
    })
}

/// Result of the truncated universal T-matrix analysis.
#[derive(Debug, Clone)]
pub struct TCheckOutcome {
    pub report: CheckReport,
    pub rank: usize,
    pub kernel_dim: usize,
    pub rtt_span_dim: usize,
    pub rtt_in_kernel: bool,
    pub kernel_spanned_by_rtt: bool,
    /// Kernel vectors outside the span of the RTT ideal, as word combinations.
    pub complement: Vec<FreeElem>,
}

fn counit_tilde(w: &Word) -> Rational {
    if w.0.iter().all(|l| l.i == l.j) {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Degree-`≤ d` part of the two-sided ideal generated by the unit-colour
/// RTT relations, as coefficient vectors over `rows`.
fn rtt_ideal_vectors(model: &ModelSpec, rows: &[Word], d: usize, q: &Rational) -> Result<QMatrix> {
    let one = ColourTag::one();
    let rel = derive_rtt_relations(model, &one, &one, &one)?;
    let index: BTreeMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let reg = model.registry();
    let mut out = Vec::new();
    for s in rel.nonzero() {
        let r = &s.relation;
        let rlen = r.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
        if rlen > d {
            continue;
        }
        for lu in 0..=d - rlen {
            for u in words_up_to(lu, &one).into_iter().filter(|u| u.len() == lu) {
                for v in words_up_to(d - rlen - lu, &one) {
                    let x = FreeElem::word(reg, u.clone())
                        .concat(r)?
                        .concat(&FreeElem::word(reg, v))?;
                    let mut vec = vec![Rational::zero(); rows.len()];
                    for (w, c) in x.terms() {
                        vec[index[w]] += eval_q(c, q)?;
                    }
                    out.push(vec);
                }
            }
        }
    }
    Ok(out)
}

fn vector_to_elem(reg: &Arc<VarRegistry>, rows: &[Word], v: &[Rational]) -> FreeElem {
    let mut acc = FreeElem::zero(reg);
    for (w, c) in rows.iter().zip(v) {
        if !c.is_zero() {
            let t = FreeElem::term(w.clone(), LaurentPoly::constant(reg, c.clone()));
            acc = acc.checked_add(&t).expect("same registry");
        }
    }
    acc
}

/// Dual-basis analysis of the truncated pairing at `q`.
///
/// On the maximal full-rank block `B` (greedy rows in word order, then
/// pivot columns in PBW order), `C = B⁻¹` gives the dual elements
/// `x^A = Σ_w C[A,w]·w`. The counit laws are
/// `ε̃(x^A) = δ_{A,1}` and `Σ_A ε(X_A)·x^A = 1`.
pub fn truncated_t_check(
    model: &ModelSpec,
    d: usize,
    q: &Rational,
    exec: Exec,
) -> Result<TCheckOutcome> {
    let reg = model.registry();
    let gram = gram_matrix(model, d, Some(q), exec)?;
    let g = gram.evaluated().expect("evaluated");
    let rank = gram.rank().expect("evaluated");
    if rank == 0 {
        return Err(Error::RankZero);
    }
    let block_rows = linalg::independent_rows(g);
    let sub: QMatrix = block_rows.iter().map(|&r| g[r].clone()).collect();
    let block_cols = linalg::rref(&sub).1;
    let block: QMatrix = sub
        .iter()
        .map(|row| block_cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let inv = linalg::inverse(&block).ok_or(Error::RankZero)?;

    let mut parts = Vec::new();
    let constant = |x: Rational| LaurentPoly::constant(reg, x);
    for (a, &col) in block_cols.iter().enumerate() {
        let x_a = gram.cols[col];
        let mut lhs = Rational::zero();
        for (wi, &row) in block_rows.iter().enumerate() {
            lhs += &inv[a][wi] * counit_tilde(&gram.rows[row]);
        }
        let want = if x_a == PbwMonomial::UNIT {
            Rational::one()
        } else {
            Rational::zero()
        };
        parts.push(Labelled::new(
            format!("eps~(x^{x_a})"),
            constant(lhs - want),
        ));
    }
    for (wi, &row) in block_rows.iter().enumerate() {
        let mut lhs = Rational::zero();
        for (a, &col) in block_cols.iter().enumerate() {
            lhs += gram.cols[col].counit() * &inv[a][wi];
        }
        let want = if gram.rows[row].is_empty() {
            Rational::one()
        } else {
            Rational::zero()
        };
        parts.push(Labelled::new(
            format!("sum eps(X_A) x^A at {}", gram.rows[row]),
            constant(lhs - want),
        ));
    }

    let kernel = linalg::left_kernel(g);
    let kernel_dim = kernel.len();
    let (rtt_span_dim, rtt_in_kernel, complement) = if d >= 2 {
        let ideal = rtt_ideal_vectors(model, &gram.rows, d, q)?;
        let in_kernel = ideal
            .iter()
            .all(|v| linalg::vec_mat(v, g).iter().all(Zero::is_zero));
        let span = linalg::rank(&ideal);
        let mut basis = ideal.clone();
        let mut extra = Vec::new();
        let mut current = span;
        for k in &kernel {
            basis.push(k.clone());
            let r = linalg::rank(&basis);
            if r > current {
                current = r;
                extra.push(vector_to_elem(reg, &gram.rows, k));
            } else {
                basis.pop();
            }
        }
        (span, in_kernel, extra)
    } else {
        (0, true, Vec::new())
    };
    let kernel_spanned_by_rtt = rtt_in_kernel && rtt_span_dim == kernel_dim;

    let ctx = BTreeMap::from([
        ("degree".to_string(), d.to_string()),
        ("q".to_string(), q.to_string()),
    ]);
    let mut report = CheckReport::new("t-check", ctx, Residual::Values(parts));
    report.passed = report.passed && rtt_in_kernel;
    let report = report
        .with_detail("rows", gram.rows.len())
        .with_detail("cols", gram.cols.len())
        .with_detail("rank", rank)
        .with_detail("rank_deficiency", gram.rows.len() - rank)
        .with_detail("kernel_dim", kernel_dim)
        .with_detail("rtt_span_dim", rtt_span_dim)
        .with_detail("rtt_in_kernel", rtt_in_kernel)
        .with_detail("kernel_spanned_by_rtt", kernel_spanned_by_rtt)
        .with_detail(
            "block_rows",
            block_rows
                .iter()
                .map(|&r| gram.rows[r].to_string())
                .collect::<Vec<_>>(),
        )
        .with_detail(
            "block_cols",
            block_cols
                .iter()
                .map(|&c| gram.cols[c].to_string())
                .collect::<Vec<_>>(),
        )
        .with_detail(
            "kernel_complement",
            complement.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        );
    Ok(TCheckOutcome {
        report,
        rank,
        kernel_dim,
        rtt_span_dim,
        rtt_in_kernel,
        kernel_spanned_by_rtt,
        complement,
    })
}
