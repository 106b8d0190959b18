//! Dense matrices over the Laurent ring, Kronecker products and leg
//! embeddings into `V⊗V⊗V`.
//!
//! Indices are zero-based and row-major. A basis vector of `V⊗W` with
//! `dim W = d` is indexed `i·d + k` for `e_i ⊗ e_k`. Every leg embedding is
//! derived from [`leg_permutation`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, Rational, VarRegistry};

#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    reg: Arc<VarRegistry>,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn zeros(reg: &Arc<VarRegistry>, rows: usize, cols: usize) -> Self {
        RingMatrix {
            reg: reg.clone(),
            rows,
            cols,
            entries: vec![LaurentPoly::zero(reg); rows * cols],
        }
    }

    pub fn identity(reg: &Arc<VarRegistry>, n: usize) -> Self {
        let mut m = Self::zeros(reg, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(reg));
        }
        m
    }

    /// Row-major construction; every entry must share one registry.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        let reg = entries
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty matrix".into()))?
            .registry()
            .clone();
        if entries.iter().any(|e| e.registry() != &reg) {
            return Err(Error::RegistryMismatch);
        }
        Ok(RingMatrix {
            reg,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Matrix with rational entries given row-major.
    pub fn from_rationals(
        reg: &Arc<VarRegistry>,
        rows: usize,
        cols: usize,
        vals: &[Rational],
    ) -> Self {
        assert_eq!(vals.len(), rows * cols);
        RingMatrix {
            reg: reg.clone(),
            rows,
            cols,
            entries: vals
                .iter()
                .map(|v| LaurentPoly::constant(reg, v.clone()))
                .collect(),
        }
    }

    /// 2×2 matrix unit `e_{ij}` (zero-based here).
    pub fn unit(reg: &Arc<VarRegistry>, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(reg, n, n);
        m.set(i, j, LaurentPoly::one(reg));
        m
    }

    pub fn diag(entries: Vec<LaurentPoly>) -> Self {
        let n = entries.len();
        let reg = entries[0].registry().clone();
        let mut m = Self::zeros(&reg, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        RingMatrix {
            reg: self.reg.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        Ok(RingMatrix {
            reg: self.reg.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|e| e * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.checked_sub(b))
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&LaurentPoly, &LaurentPoly) -> Result<LaurentPoly>,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.reg != other.reg {
            return Err(Error::RegistryMismatch);
        }
        Ok(RingMatrix {
            reg: self.reg.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RingMatrix {
            reg: self.reg.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `{"rows": n, "cols": m, "entries": [[poly, …], …]}`
impl Serialize for RingMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[LaurentPoly]> = self.entries.chunks(self.cols.max(1)).collect();
        let mut st = s.serialize_struct("RingMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

pub fn mat_mul(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let reg = a.registry().clone();
    let mut out = RingMatrix::zeros(&reg, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if bkj.is_zero() {
                    continue;
                }
                let idx = i * out.cols + j;
                out.entries[idx] += aik.checked_mul(bkj)?;
            }
        }
    }
    Ok(out)
}

/// Kronecker product: `(i,k),(j,l) ↦ (i·rows(b)+k, j·cols(b)+l)`.
pub fn kron(a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    let reg = a.registry().clone();
    let mut out = RingMatrix::zeros(&reg, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// A pair of tensor legs of `V⊗V⊗V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    L12,
    L13,
    L23,
}

impl FromStr for Leg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Leg::L12),
            "13" => Ok(Leg::L13),
            "23" => Ok(Leg::L23),
            other => Err(Error::BadLeg(other.to_string())),
        }
    }
}

/// Permutation matrix on `V^{⊗legs}` that exchanges tensor factors `a` and `b`.
pub fn leg_permutation(
    reg: &Arc<VarRegistry>,
    dim: usize,
    legs: usize,
    a: usize,
    b: usize,
) -> RingMatrix {
    let n = dim.pow(legs as u32);
    let mut out = RingMatrix::zeros(reg, n, n);
    for idx in 0..n {
        let mut digits = digits_of(idx, dim, legs);
        digits.swap(a, b);
        out.set(index_of(&digits, dim), idx, LaurentPoly::one(reg));
    }
    out
}

/// The flip `P(v⊗w) = w⊗v` on `V⊗V`.
pub fn swap(reg: &Arc<VarRegistry>, dim: usize) -> RingMatrix {
    leg_permutation(reg, dim, 2, 0, 1)
}

fn digits_of(mut idx: usize, dim: usize, legs: usize) -> Vec<usize> {
    let mut d = vec![0; legs];
    for slot in (0..legs).rev() {
        d[slot] = idx % dim;
        idx /= dim;
    }
    d
}

fn index_of(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * dim + d)
}

/// Embeds a `dim²×dim²` matrix into `V⊗V⊗V` acting on the named legs.
pub fn embed_leg(r: &RingMatrix, legs: Leg, dim: usize) -> Result<RingMatrix> {
    let n2 = dim * dim;
    if r.rows() != n2 || r.cols() != n2 {
        return Err(Error::ShapeMismatch(format!(
            "leg embedding needs a {n2}x{n2} matrix, got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    let reg = r.registry().clone();
    let id = RingMatrix::identity(&reg, dim);
    Ok(match legs {
        Leg::L12 => kron(r, &id),
        Leg::L23 => kron(&id, r),
        Leg::L13 => {
            let p23 = leg_permutation(&reg, dim, 3, 1, 2);
            p23.mul(&kron(r, &id))?.mul(&p23)?
        }
    })
}

/// Conjugation `P·M·P` by the flip of `V⊗V`.
pub fn flip(m: &RingMatrix, dim: usize) -> Result<RingMatrix> {
    let p = swap(m.registry(), dim);
    p.mul(m)?.mul(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::new(["q"]).unwrap()
    }

    #[test]
    fn identity_and_units() {
        let r = reg();
        let q = LaurentPoly::var(&r, "q").unwrap();
        let m = RingMatrix::from_rows(vec![
            vec![q.clone(), LaurentPoly::one(&r)],
            vec![LaurentPoly::zero(&r), q.invert().unwrap()],
        ])
        .unwrap();
        let m4 = kron(&m, &m);
        assert_eq!(RingMatrix::identity(&r, 4).mul(&m4).unwrap(), m4);
        let e12 = RingMatrix::unit(&r, 2, 0, 1);
        let e21 = RingMatrix::unit(&r, 2, 1, 0);
        assert_eq!(e12.mul(&e21).unwrap(), RingMatrix::unit(&r, 2, 0, 0));
    }

    #[test]
    fn kron_index_convention() {
        let r = reg();
        let i2 = RingMatrix::identity(&r, 2);
        assert_eq!(kron(&i2, &i2), RingMatrix::identity(&r, 4));
        let k = kron(
            &RingMatrix::unit(&r, 2, 0, 1),
            &RingMatrix::unit(&r, 2, 1, 0),
        );
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k.get(i, j).is_one(), (i, j) == (1, 2));
                assert_eq!(k.get(i, j).is_zero(), (i, j) != (1, 2));
            }
        }
    }

    #[test]
    fn shape_errors() {
        let r = reg();
        let a = RingMatrix::zeros(&r, 2, 3);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(
            embed_leg(&a, Leg::L12, 2),
            Err(Error::ShapeMismatch(_))
        ));
        assert_eq!("31".parse::<Leg>().unwrap_err(), Error::BadLeg("31".into()));
    }

    #[test]
    fn swap_embeddings() {
        let r = reg();
        let p = swap(&r, 2);
        assert_eq!(
            embed_leg(&RingMatrix::identity(&r, 4), Leg::L12, 2).unwrap(),
            RingMatrix::identity(&r, 8)
        );
        assert_eq!(
            embed_leg(&p, Leg::L12, 2).unwrap(),
            leg_permutation(&r, 2, 3, 0, 1)
        );
        let p13 = embed_leg(&p, Leg::L13, 2).unwrap();
        assert_eq!(p13, leg_permutation(&r, 2, 3, 0, 2));
        assert_eq!(p13.mul(&p13).unwrap(), RingMatrix::identity(&r, 8));
    }

    #[test]
    fn rational_construction() {
        let r = reg();
        let m = RingMatrix::from_rationals(&r, 1, 2, &[rat(1, 2), rat(0, 1)]);
        assert_eq!(m.get(0, 0).as_constant(), Some(rat(1, 2)));
        assert!(m.get(0, 1).is_zero());
    }
}
