//! The graded Lie torus `LT = ⊕ g_k̄ ⊗ t^k`, its central extension by
//! `Z(m)` and the derivations `d_1..d_n`.

pub mod coords;
pub mod element;
pub mod roots;

use std::sync::OnceLock;

pub use coords::CoordinateChange;
pub use element::{bracket_raw, CentralClass, Degree, TorusElement, TorusElementJson};
pub use roots::{Coroot, RootSpace, TorusRoot, Weight};

use crate::error::{Error, Result};
use crate::liealg::{check_lie_torus, AutomorphismTuple, CartanType, Grading, LieAlgebra, LieTorusReport, SigmaSpec};
use crate::scalars::{CycScalar, Subspace};

/// A Lie torus `LT(g, σ)` with its grading data.
#[derive(Debug)]
pub struct Torus {
    pub g: LieAlgebra,
    pub sigma: AutomorphismTuple,
    pub grading: Grading,
    piece_spaces: Vec<Subspace>,
    report: OnceLock<LieTorusReport>,
}

/// All integer vectors in `[lo_i, hi_i]`, lexicographically.
pub fn box_degrees(bounds: &[(i64, i64)]) -> Vec<Degree> {
    let mut out = vec![vec![]];
    for &(lo, hi) in bounds {
        let mut next = Vec::new();
        for p in &out {
            for k in lo..=hi {
                let mut v: Degree = p.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl Torus {
    pub fn new(g: LieAlgebra, sigma: AutomorphismTuple) -> Result<Self> {
        let grading = Grading::new(&g, &sigma)?;
        let piece_spaces = grading.pieces.iter().map(|p| Subspace::from_vectors(g.dim(), p)).collect();
        Ok(Torus { g, sigma, grading, piece_spaces, report: OnceLock::new() })
    }

    pub fn from_specs(ctype: CartanType, rank: usize, specs: &[SigmaSpec]) -> Result<Self> {
        let g = LieAlgebra::new(ctype, rank)?;
        let sigma = AutomorphismTuple::from_specs(&g, specs)?;
        Self::new(g, sigma)
    }

    pub fn n(&self) -> usize {
        self.grading.n()
    }

    pub fn m(&self) -> &[u32] {
        &self.grading.m
    }

    /// The Lie torus axiom report, computed once.
    pub fn report(&self) -> &LieTorusReport {
        self.report.get_or_init(|| check_lie_torus(&self.g, &self.sigma, &self.grading))
    }

    pub fn piece_space(&self, k: &[i64]) -> &Subspace {
        &self.piece_spaces[self.grading.class_index(k)]
    }

    /// Checks the twisted support condition `x ∈ g_k̄` for every loop term.
    pub fn validate(&self, a: &TorusElement) -> Result<()> {
        if a.n() != self.n() {
            return Err(Error::Contract("element has the wrong number of variables".into()));
        }
        for (k, x) in &a.loop_part {
            if x.len() != self.g.dim() || !self.piece_space(k).contains(x) {
                return Err(Error::Contract(format!("loop term at degree {k:?} is not in the matching graded piece")));
            }
        }
        for (r, _, _) in a.central.terms() {
            if !self.grading.in_gamma(r) {
                return Err(Error::Contract(format!("central degree {r:?} is outside Γ")));
            }
        }
        Ok(())
    }

    /// The `LT̃` bracket.
    pub fn bracket(&self, a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
        self.validate(a)?;
        self.validate(b)?;
        bracket_raw(&self.g, self.m(), a, b)
    }

    /// Basis of `g_k̄ ⊗ t^k` as torus elements.
    pub fn loop_basis(&self, k: &[i64]) -> Vec<TorusElement> {
        self.grading.piece_for_degree(k).iter().map(|x| TorusElement::loop_term(k.to_vec(), x.clone())).collect()
    }

    /// Basis of the central part of degree `r` in normal form.
    pub fn central_basis(&self, r: &[i64]) -> Vec<TorusElement> {
        if !self.grading.in_gamma(r) {
            return vec![];
        }
        let n = self.n();
        let lead = r.iter().position(|&x| x != 0);
        (0..n)
            .filter(|&i| Some(i) != lead)
            .map(|i| TorusElement::central_term(r.to_vec(), i, self.m()).expect("degree in Γ"))
            .collect()
    }

    /// Loop, central and derivation basis elements with `|k_i| <= radius`.
    pub fn sample_basis(&self, radius: i64) -> Vec<TorusElement> {
        let bounds = vec![(-radius, radius); self.n()];
        let mut out = Vec::new();
        for k in box_degrees(&bounds) {
            out.extend(self.loop_basis(&k));
            out.extend(self.central_basis(&k));
        }
        out.extend((0..self.n()).map(|i| TorusElement::derivation(i, self.n())));
        out
    }

    /// First pair of `sample_basis(radius)` indices violating antisymmetry.
    pub fn antisymmetry_violation(&self, radius: i64) -> Option<(usize, usize)> {
        let basis = self.sample_basis(radius);
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate().skip(a) {
                let xy = self.bracket(x, y).expect("basis elements are valid");
                let yx = self.bracket(y, x).expect("basis elements are valid");
                if !xy.add(&yx).is_zero() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First triple of `sample_basis(radius)` indices violating the Jacobi identity.
    pub fn jacobi_violation(&self, radius: i64) -> Option<(usize, usize, usize)> {
        let basis = self.sample_basis(radius);
        let n = basis.len();
        let br = |x: &TorusElement, y: &TorusElement| self.bracket(x, y).expect("bracket of valid elements");
        let mut pair = vec![vec![None; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                pair[a][b] = Some(br(&basis[a], &basis[b]));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let ab = pair[a][b].as_ref().expect("filled");
                for c in b + 1..n {
                    let bc = pair[b][c].as_ref().expect("filled");
                    let ac = pair[a][c].as_ref().expect("filled");
                    let total = br(&basis[a], bc).sub(&br(&basis[b], ac)).add(&br(&basis[c], ab));
                    if !total.is_zero() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `x ⊗ t^k` for a basis vector of `g` given by its label, when it lies in `g_k̄`.
    pub fn labelled(&self, label: &str, k: &[i64]) -> Result<TorusElement> {
        let i = self
            .g
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidInput(format!("no basis vector labelled {label}")))?;
        let e = TorusElement::loop_term(k.to_vec(), self.g.basis_vector(i));
        self.validate(&e)?;
        Ok(e)
    }

    /// `Σ_i c_i x_i` shorthand for scaling elements.
    pub fn combine(&self, terms: &[(CycScalar, &TorusElement)]) -> TorusElement {
        terms.iter().fold(TorusElement::zero(self.n()), |acc, (c, e)| acc.add(&e.scale(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(n: usize) -> Torus {
        Torus::from_specs(CartanType::A, 1, &vec![SigmaSpec::Identity; n]).unwrap()
    }

    #[test]
    fn cocycle_example() {
        let t = sl2(2);
        let e = t.labelled("e1", &[1, 0]).unwrap();
        let f = t.labelled("f1", &[-1, 0]).unwrap();
        let r = t.bracket(&e, &f).unwrap();
        let h = t.labelled("h1", &[0, 0]).unwrap();
        let k1 = TorusElement::central_term(vec![0, 0], 0, t.m()).unwrap();
        assert_eq!(r, h.add(&k1));
    }

    #[test]
    fn derivation_scales() {
        let t = sl2(2);
        let e = t.labelled("e1", &[3, 2]).unwrap();
        let r = t.bracket(&TorusElement::derivation(0, 2), &e).unwrap();
        assert_eq!(r, e.scale(&CycScalar::from_int(3)));
    }

    #[test]
    fn central_is_central() {
        let t = sl2(2);
        let k = TorusElement::central_term(vec![0, 0], 0, t.m()).unwrap();
        for b in t.sample_basis(1) {
            if b.der.iter().all(|c| c.is_zero()) {
                assert!(t.bracket(&k, &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn grading_violation_rejected() {
        let t = Torus::from_specs(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]).unwrap();
        let e = TorusElement::loop_term(vec![0], t.g.basis_vector(t.g.e_index(0)));
        assert!(t.validate(&e).is_err());
    }
}
