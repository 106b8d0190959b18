//! Brute-force expansion of `R(T₁·T₂) − (T₂·T₁)R` by explicit loops, with
//! the coloured R-matrix and the coloured product factors written out.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use chromatic_hopf::{ColourTag, FreeElem, LaurentPoly, Letter, VarRegistry, Word};
use serde_json::{json, Value};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn golden_name(colours: &[&str; 3]) -> String {
    format!("rtt_{}.json", colours.join("_").replace('/', "over"))
}

fn colour(c: &ColourTag, reg: &Arc<VarRegistry>) -> LaurentPoly {
    c.to_poly(reg).unwrap()
}

/// `R^{λμ}` entry by hand: `diag(q,1,1,q)` plus `(q−q⁻¹)λ/μ` at `(1,2)`.
fn r_entry(
    reg: &Arc<VarRegistry>,
    l: &ColourTag,
    m: &ColourTag,
    row: usize,
    col: usize,
) -> LaurentPoly {
    let q = LaurentPoly::var(reg, "q").unwrap();
    match (row, col) {
        (0, 0) | (3, 3) => q,
        (1, 1) | (2, 2) => LaurentPoly::one(reg),
        (1, 2) => &(&q - &q.invert().unwrap()) * &colour(&l.mul(&m.inv()), reg),
        _ => LaurentPoly::zero(reg),
    }
}

/// Exponent of the coloured product factor carried by `t_ij`.
fn weight(i: usize, j: usize) -> i32 {
    let e = [1, 0];
    e[j] - e[i]
}

/// `t_ij(x) ·ν t_kl(y)` written out as a scalar times `t_ij(ν) t_kl(ν)`.
fn product(
    reg: &Arc<VarRegistry>,
    (i, j, x): (usize, usize, &ColourTag),
    (k, l, y): (usize, usize, &ColourTag),
    nu: &ColourTag,
) -> FreeElem {
    let factor = nu
        .mul(&x.inv())
        .pow(weight(i, j))
        .mul(&nu.mul(&y.inv()).pow(weight(k, l)));
    let word = Word(vec![
        Letter::new(i as u8 + 1, j as u8 + 1, nu.clone()).unwrap(),
        Letter::new(k as u8 + 1, l as u8 + 1, nu.clone()).unwrap(),
    ]);
    FreeElem::term(word, colour(&factor, reg))
}

pub struct OracleSlot {
    pub row: (u8, u8),
    pub col: (u8, u8),
    pub relation: FreeElem,
}

pub fn oracle_relations(
    reg: &Arc<VarRegistry>,
    l: &ColourTag,
    m: &ColourTag,
    n: &ColourTag,
) -> Vec<OracleSlot> {
    let mut out = Vec::new();
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for ll in 0..2 {
                    let mut acc = FreeElem::zero(reg);
                    for a in 0..2 {
                        for b in 0..2 {
                            // R[(ik),(ab)] · T1T2[(ab),(jl)] with T1T2[(ab),(jl)] = t_aj(λ)·t_bl(μ)
                            let r = r_entry(reg, l, m, i * 2 + k, a * 2 + b);
                            if !r.is_zero() {
                                let p = product(reg, (a, j, l), (b, ll, m), n);
                                acc = acc.checked_add(&p.scale(&r).unwrap()).unwrap();
                            }
                            // T2T1[(ik),(ab)] · R[(ab),(jl)] with T2T1[(ik),(ab)] = t_kb(μ)·t_ia(λ)
                            let r = r_entry(reg, l, m, a * 2 + b, j * 2 + ll);
                            if !r.is_zero() {
                                let p = product(reg, (k, b, m), (i, a, l), n);
                                acc = acc.checked_sub(&p.scale(&r).unwrap()).unwrap();
                            }
                        }
                    }
                    out.push(OracleSlot {
                        row: (i as u8 + 1, k as u8 + 1),
                        col: (j as u8 + 1, ll as u8 + 1),
                        relation: acc,
                    });
                }
            }
        }
    }
    out
}

pub fn oracle_json(reg: &Arc<VarRegistry>, l: &ColourTag, m: &ColourTag, n: &ColourTag) -> Value {
    let slots = oracle_relations(reg, l, m, n);
    let rels: Vec<Value> = slots
        .iter()
        .map(|s| {
            json!({
                "slot": {"row": [s.row.0, s.row.1], "col": [s.col.0, s.col.1]},
                "result_colour": n.to_string(),
                "relation": s.relation,
            })
        })
        .collect();
    json!({
        "colours": {"lambda": l.to_string(), "mu": m.to_string(), "nu": n.to_string()},
        "count": slots.len(),
        "relations": rels,
    })
}

pub fn oracle_text(colours: &[&str; 3]) -> String {
    let tags: Vec<ColourTag> = colours
        .iter()
        .map(|s| ColourTag::parse(s).unwrap())
        .collect();
    let reg = chromatic_hopf::model::registry_for(&tags).unwrap();
    let v = oracle_json(&reg, &tags[0], &tags[1], &tags[2]);
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}
