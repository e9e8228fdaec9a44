//! Elements of the graded Lie torus: loop terms, central classes and derivations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::scalars::matrix::{is_zero_vec, vec_axpy, vec_scale, zero_vec};
use crate::scalars::{CycScalar, Vector};

/// Multidegree in `Z^n`.
pub type Degree = Vec<i64>;

pub fn in_lattice(r: &[i64], m: &[u32]) -> bool {
    r.iter().zip(m).all(|(ri, &mi)| ri.rem_euclid(mi as i64) == 0)
}

fn add_deg(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// An element of `Z(m)` stored in normal form: for every nonzero degree `r`
/// the coefficient of `t^r K_{i(r)}` vanishes, where `i(r)` is the first
/// index with `r_i ≠ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CentralClass {
    terms: BTreeMap<(Degree, usize), CycScalar>,
}

impl CentralClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Normal form of `Σ c t^r K_i` for raw terms `(r, i, c)` with 0-based `i`.
    pub fn normal_form(raw: impl IntoIterator<Item = (Degree, usize, CycScalar)>, m: &[u32]) -> Result<Self> {
        let mut out = Self::zero();
        for (r, i, c) in raw {
            out.add_term(&r, i, &c, m)?;
        }
        Ok(out)
    }

    /// Adds `c t^r K_i`, reducing with `Σ_j r_j t^r K_j ≡ 0`.
    pub fn add_term(&mut self, r: &[i64], i: usize, c: &CycScalar, m: &[u32]) -> Result<()> {
        if r.len() != m.len() || i >= m.len() {
            return Err(Error::InvalidInput("central term has the wrong number of variables".into()));
        }
        if !in_lattice(r, m) {
            return Err(Error::InvalidInput(format!("central degree {r:?} is outside the lattice Γ")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let lead = r.iter().position(|&x| x != 0);
        match lead {
            Some(i0) if i0 == i => {
                // K_{i0} ≡ −Σ_{j≠i0} (r_j / r_{i0}) K_j at this degree
                let ri0 = CycScalar::from_int(r[i0]);
                for (j, &rj) in r.iter().enumerate() {
                    if j != i0 && rj != 0 {
                        let coef = -(&(c * &CycScalar::from_int(rj)) / &ri0);
                        self.accumulate(r.to_vec(), j, &coef);
                    }
                }
            }
            _ => self.accumulate(r.to_vec(), i, c),
        }
        Ok(())
    }

    fn accumulate(&mut self, r: Degree, i: usize, c: &CycScalar) {
        let key = (r, i);
        let v = self.terms.entry(key.clone()).or_insert_with(CycScalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms `(r, i, c)` in canonical order (0-based `i`).
    pub fn terms(&self) -> impl Iterator<Item = (&Degree, usize, &CycScalar)> {
        self.terms.iter().map(|((r, i), c)| (r, *i, c))
    }

    pub fn coefficient(&self, r: &[i64], i: usize) -> CycScalar {
        self.terms.get(&(r.to_vec(), i)).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((r, i), c) in &other.terms {
            out.accumulate(r.clone(), *i, c);
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero();
        for ((r, i), v) in &self.terms {
            out.accumulate(r.clone(), *i, &(v * c));
        }
        out
    }
}

/// A finite sum `Σ x_k(k) + c + Σ a_i d_i` in `LT̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    pub loop_part: BTreeMap<Degree, Vector>,
    pub central: CentralClass,
    pub der: Vec<CycScalar>,
}

impl TorusElement {
    pub fn zero(n: usize) -> Self {
        TorusElement { loop_part: BTreeMap::new(), central: CentralClass::zero(), der: vec![CycScalar::zero(); n] }
    }

    pub fn n(&self) -> usize {
        self.der.len()
    }

    /// `x ⊗ t^k`.
    pub fn loop_term(k: Degree, x: Vector) -> Self {
        let mut e = Self::zero(k.len());
        if !is_zero_vec(&x) {
            e.loop_part.insert(k, x);
        }
        e
    }

    /// `t^r K_i` (0-based `i`) in normal form.
    pub fn central_term(r: Degree, i: usize, m: &[u32]) -> Result<Self> {
        let mut e = Self::zero(m.len());
        e.central.add_term(&r, i, &CycScalar::one(), m)?;
        Ok(e)
    }

    /// `d_i` (0-based `i`).
    pub fn derivation(i: usize, n: usize) -> Self {
        let mut e = Self::zero(n);
        e.der[i] = CycScalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty() && self.central.is_zero() && self.der.iter().all(|c| c.is_zero())
    }

    fn add_loop(&mut self, k: Degree, x: &[CycScalar], c: &CycScalar) {
        if c.is_zero() || is_zero_vec(x) {
            return;
        }
        let entry = self.loop_part.entry(k.clone()).or_insert_with(|| zero_vec(x.len()));
        vec_axpy(entry, c, x);
        if is_zero_vec(entry) {
            self.loop_part.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in &other.loop_part {
            out.add_loop(k.clone(), x, &CycScalar::one());
        }
        out.central = out.central.add(&other.central);
        for (a, b) in out.der.iter_mut().zip(&other.der) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero(self.n());
        for (k, x) in &self.loop_part {
            out.add_loop(k.clone(), x, c);
        }
        out.central = self.central.scale(c);
        out.der = self.der.iter().map(|d| d * c).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycScalar::from_int(-1)))
    }

    /// Homogeneous degree, if the element has a single degree and no derivation part.
    pub fn degree(&self) -> Option<Degree> {
        let mut degs: Vec<&Degree> = self.loop_part.keys().collect();
        degs.extend(self.central.terms().map(|(r, _, _)| r));
        degs.dedup();
        let first = degs.first()?;
        (degs.iter().all(|d| d == first) && self.der.iter().all(|c| c.is_zero())).then(|| (*first).clone())
    }
}

/// The `LT̃` bracket on elements whose central parts live in `Z(m)`.
///
/// Grading constraints are not checked here; see [`crate::torus::Torus::bracket`].
pub fn bracket_raw(g: &LieAlgebra, m: &[u32], a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
    let n = m.len();
    if a.n() != n || b.n() != n {
        return Err(Error::Contract("elements have the wrong number of variables".into()));
    }
    let mut out = TorusElement::zero(n);
    for (k, x) in &a.loop_part {
        for (l, y) in &b.loop_part {
            let kl = add_deg(k, l);
            out.add_loop(kl.clone(), &g.bracket(x, y), &CycScalar::one());
            let f = g.form(x, y);
            if f.is_zero() {
                continue;
            }
            for (i, &ki) in k.iter().enumerate() {
                if ki != 0 {
                    out.central.add_term(&kl, i, &(&f * &CycScalar::from_int(ki)), m).map_err(|_| {
                        Error::Contract(format!("cocycle term at degree {kl:?} outside Γ; grading constraint violated"))
                    })?;
                }
            }
        }
    }
    // [d_i, y(l)] = l_i y(l) and [d_i, t^r K_j] = r_i t^r K_j
    for (sign, left, right) in [(1i64, a, b), (-1i64, b, a)] {
        for (i, di) in left.der.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for (l, y) in &right.loop_part {
                let c = di.scale_int(sign * l[i]);
                out.add_loop(l.clone(), y, &c);
            }
            let mut extra = CentralClass::zero();
            for (r, j, c) in right.central.terms() {
                let coef = &(c * di).scale_int(sign * r[i]);
                extra.add_term(r, j, coef, m)?;
            }
            out.central = out.central.add(&extra);
        }
    }
    Ok(out)
}

/// Wire form of a [`TorusElement`]; central indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusElementJson {
    #[serde(rename = "loop")]
    pub loop_part: Vec<LoopTermJson>,
    pub central: Vec<CentralTermJson>,
    pub der: Vec<CycScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopTermJson {
    pub deg: Degree,
    pub vec: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralTermJson {
    pub deg: Degree,
    pub i: usize,
    pub c: CycScalar,
}

impl TorusElement {
    pub fn to_json(&self) -> TorusElementJson {
        TorusElementJson {
            loop_part: self.loop_part.iter().map(|(k, v)| LoopTermJson { deg: k.clone(), vec: v.clone() }).collect(),
            central: self
                .central
                .terms()
                .map(|(r, i, c)| CentralTermJson { deg: r.clone(), i: i + 1, c: c.clone() })
                .collect(),
            der: self.der.clone(),
        }
    }

    /// Parses the wire form, normalising the central part.
    pub fn from_json(j: &TorusElementJson, m: &[u32]) -> Result<Self> {
        let n = m.len();
        if j.der.len() != n {
            return Err(Error::InvalidInput("derivation part has the wrong length".into()));
        }
        let mut out = TorusElement::zero(n);
        for t in &j.loop_part {
            if t.deg.len() != n {
                return Err(Error::InvalidInput("loop degree has the wrong length".into()));
            }
            out.add_loop(t.deg.clone(), &t.vec, &CycScalar::one());
        }
        for t in &j.central {
            if t.i == 0 {
                return Err(Error::InvalidInput("central indices are 1-based".into()));
            }
            out.central.add_term(&t.deg, t.i - 1, &t.c, m)?;
        }
        out.der = j.der.clone();
        Ok(out)
    }
}

/// Scales a vector, convenient for building loop terms.
pub fn scaled(x: &[CycScalar], c: i64) -> Vector {
    vec_scale(x, &CycScalar::from_int(c))
}
