//! Roots, coroots, weights, Weyl reflections and translations of `LT̃`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::element::{Degree, TorusElement};
use super::{box_degrees, Torus};
use crate::error::{Error, Result};
use crate::liealg::Weight0;
use crate::scalars::{q, qstr, CycScalar, IntLattice, Q};

/// A root `α + δ_k` of `LT̃`, with `α ∈ Δ_en ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorusRoot {
    #[serde(serialize_with = "qstr::vec")]
    pub alpha: Weight0,
    pub k: Degree,
}

impl TorusRoot {
    pub fn new(alpha: Weight0, k: Degree) -> Self {
        TorusRoot { alpha, k }
    }

    pub fn is_real(&self) -> bool {
        self.alpha.iter().any(|c| !c.is_zero())
    }

    pub fn is_null(&self) -> bool {
        !self.is_real() && self.k.iter().any(|&x| x != 0)
    }

    /// The root as a weight with zero `K`-values.
    pub fn as_weight(&self) -> Weight {
        Weight {
            finite: self.alpha.clone(),
            kappa: vec![Q::zero(); self.k.len()],
            dvals: self.k.iter().map(|&x| CycScalar::from_int(x)).collect(),
        }
    }
}

/// A linear functional on `h̃ = h_0̄ ⊕ ΣCK_i ⊕ ΣCd_i`.
///
/// `finite` holds the values on the basis `H_1..H_r` of `h_0̄`, `kappa` the
/// values on `K_i` and `dvals` the values on `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weight {
    #[serde(serialize_with = "qstr::vec")]
    pub finite: Weight0,
    #[serde(serialize_with = "qstr::vec")]
    pub kappa: Vec<Q>,
    pub dvals: Vec<CycScalar>,
}

impl Weight {
    pub fn level_zero(finite: Weight0, dvals: Vec<CycScalar>) -> Self {
        let n = dvals.len();
        Weight { finite, kappa: vec![Q::zero(); n], dvals }
    }

    /// `δ_j` for 0-based `j`.
    pub fn delta(j: usize, rank0: usize, n: usize) -> Self {
        let mut dvals = vec![CycScalar::zero(); n];
        dvals[j] = CycScalar::one();
        Self::level_zero(vec![Q::zero(); rank0], dvals)
    }

    pub fn add(&self, o: &Self) -> Self {
        Weight {
            finite: self.finite.iter().zip(&o.finite).map(|(a, b)| a + b).collect(),
            kappa: self.kappa.iter().zip(&o.kappa).map(|(a, b)| a + b).collect(),
            dvals: self.dvals.iter().zip(&o.dvals).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let cs = CycScalar::from_q(c.clone());
        Weight {
            finite: self.finite.iter().map(|a| a * c).collect(),
            kappa: self.kappa.iter().map(|a| a * c).collect(),
            dvals: self.dvals.iter().map(|a| a * &cs).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    /// Value on `h + Σ c_i K_i` with `h` on the `H` basis.
    pub fn eval_h(&self, h: &[Q], kcoeffs: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (a, b) in self.finite.iter().zip(h) {
            acc += a * b;
        }
        for (a, b) in self.kappa.iter().zip(kcoeffs) {
            acc += a * b;
        }
        acc
    }

    pub fn eval_coroot(&self, c: &Coroot) -> Q {
        self.eval_h(&c.h, &c.k)
    }
}

/// A coroot `γ^∨ = α^∨ + (2/(α|α)) Σ k_i K_i` as an element of `h_0̄ ⊕ ΣCK_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coroot {
    /// Coordinates of `α^∨` on the `H` basis.
    #[serde(serialize_with = "qstr::vec")]
    pub h: Vec<Q>,
    /// Coefficients of `K_1..K_n`.
    #[serde(serialize_with = "qstr::vec")]
    pub k: Vec<Q>,
}

impl Coroot {
    pub fn to_element(&self, torus: &Torus) -> TorusElement {
        let n = torus.n();
        let hv = torus.grading.h0_element(&self.h);
        let mut e = TorusElement::loop_term(vec![0; n], hv);
        for (i, c) in self.k.iter().enumerate() {
            if !c.is_zero() {
                e.central.add_term(&vec![0; n], i, &CycScalar::from_q(c.clone()), torus.m()).expect("degree zero");
            }
        }
        e
    }
}

/// A root space of `LT̃` together with its basis.
#[derive(Clone, Debug)]
pub struct RootSpace {
    pub root: TorusRoot,
    pub basis: Vec<TorusElement>,
    /// Dimension predicted from `g_k̄(α)` and the central contribution.
    pub expected_dim: usize,
}

impl RootSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn consistent(&self) -> bool {
        self.dim() == self.expected_dim && (!self.root.is_real() || self.dim() <= 1)
    }
}

impl Torus {
    /// The root space `(LT̃)_{α+δ_k}`; empty when `α+δ_k` is not a root.
    pub fn root_space(&self, root: &TorusRoot) -> RootSpace {
        let n = self.n();
        let ci = self.grading.class_index(&root.k);
        let loops = self.grading.weight_spaces[ci].get(&root.alpha).cloned().unwrap_or_default();
        let mut basis: Vec<TorusElement> =
            loops.iter().map(|x| TorusElement::loop_term(root.k.clone(), x.clone())).collect();
        let mut expected = loops.len();
        if root.is_null() {
            let central = self.central_basis(&root.k);
            if self.grading.in_gamma(&root.k) {
                expected += n - 1;
            }
            basis.extend(central);
        }
        RootSpace { root: root.clone(), basis, expected_dim: expected }
    }

    /// All root spaces with degrees in `[-radius, radius]^n`.
    pub fn root_spaces(&self, radius: i64) -> Result<Vec<RootSpace>> {
        if !self.report().passed {
            return Err(Error::Contract("root spaces need a Lie torus".into()));
        }
        let bounds = vec![(-radius, radius); self.n()];
        let mut out = Vec::new();
        for k in box_degrees(&bounds) {
            let ci = self.grading.class_index(&k);
            for alpha in self.grading.weight_spaces[ci].keys() {
                let root = TorusRoot::new(alpha.clone(), k.clone());
                if root.is_real() || root.is_null() {
                    out.push(self.root_space(&root));
                }
            }
            if self.grading.weight_spaces[ci].get(&self.grading.zero_weight()).is_none() && k.iter().any(|&x| x != 0) {
                let root = TorusRoot::new(self.grading.zero_weight(), k.clone());
                let rs = self.root_space(&root);
                if rs.dim() > 0 {
                    out.push(rs);
                }
            }
        }
        Ok(out)
    }

    pub fn coroot(&self, root: &TorusRoot) -> Result<Coroot> {
        if !root.is_real() {
            return Err(Error::InvalidInput("null roots have no coroot".into()));
        }
        let norm = self.grading.weight_inner(&root.alpha, &root.alpha);
        let h = self.grading.coroot(&root.alpha);
        let k = root.k.iter().map(|&ki| q(2) * q(ki) / &norm).collect();
        Ok(Coroot { h, k })
    }

    /// `r_γ(λ) = λ − λ(γ^∨) γ`.
    pub fn weyl_reflect(&self, root: &TorusRoot, lambda: &Weight) -> Result<Weight> {
        let c = self.coroot(root)?;
        let v = lambda.eval_coroot(&c);
        Ok(lambda.sub(&root.as_weight().scale(&v)))
    }

    /// Generators of the translation lattice `M_j`: the images `2w(θ)/(θ|θ)`
    /// of the coroots in the `W_0̄`-orbit of `θ^∨`, i.e. the long roots of
    /// `Δ_0` rescaled.
    pub fn translation_generators(&self) -> Vec<Weight0> {
        let d0 = self.grading.roots_zero();
        let norms: Vec<Q> = d0.iter().map(|a| self.grading.weight_inner(a, a)).collect();
        let Some(max) = norms.iter().max().cloned() else { return vec![] };
        let s = q(2) / &max;
        d0.iter().zip(&norms).filter(|(_, n)| **n == max).map(|(a, _)| a.iter().map(|c| c * &s).collect()).collect()
    }

    /// Whether `a` lies in `M_j`.
    pub fn in_translation_lattice(&self, a: &[Q]) -> bool {
        let gens = self.translation_generators();
        let r = self.grading.rank0();
        let mut den = num_bigint::BigInt::one();
        for v in gens.iter().chain(std::iter::once(&a.to_vec())) {
            for c in v {
                den = num_integer::Integer::lcm(&den, c.denom());
            }
        }
        let to_int = |v: &[Q]| -> Option<Vec<i64>> {
            v.iter()
                .map(|c| {
                    let x = c * Q::from_integer(den.clone());
                    i64::try_from(x.to_integer()).ok()
                })
                .collect()
        };
        let Some(rows) = gens.iter().map(|g| to_int(g)).collect::<Option<Vec<_>>>() else { return false };
        let Some(target) = to_int(a) else { return false };
        IntLattice::new(r, rows).contains(&target)
    }

    /// `t_a(μ) = μ − μ(a^∨) δ_j` with `μ(a^∨) = (μ̄ | a)`, for `a ∈ M_j` and `κ_j = 0`.
    pub fn weyl_translate(&self, j: usize, a: &[Q], mu: &Weight) -> Result<Weight> {
        if j >= self.n() {
            return Err(Error::InvalidInput(format!("translation index {} out of range", j + 1)));
        }
        if !mu.kappa[j].is_zero() {
            return Err(Error::InvalidInput("translation formula needs K_j to act trivially".into()));
        }
        if !self.in_translation_lattice(a) {
            return Err(Error::InvalidInput("translation vector is not in M_j".into()));
        }
        let v = self.grading.weight_inner(&mu.finite, a);
        let delta = Weight::delta(j, self.grading.rank0(), self.n());
        Ok(mu.sub(&delta.scale(&v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{CartanType, SigmaSpec};

    fn sl2(n: usize) -> Torus {
        Torus::from_specs(CartanType::A, 1, &vec![SigmaSpec::Identity; n]).unwrap()
    }

    fn alpha(t: &Torus) -> Weight0 {
        t.grading.basis_weight(t.g.e_index(0)).clone()
    }

    #[test]
    fn coroot_of_long_root() {
        let t = sl2(2);
        let c = t.coroot(&TorusRoot::new(alpha(&t), vec![1, 0])).unwrap();
        assert_eq!(c.k, vec![q(1), q(0)]);
        let c0 = t.coroot(&TorusRoot::new(alpha(&t), vec![0, 0])).unwrap();
        assert_eq!(c0.k, vec![q(0), q(0)]);
        assert!(t.coroot(&TorusRoot::new(vec![q(0)], vec![1, 0])).is_err());
    }

    #[test]
    fn reflection_negates_root() {
        let t = sl2(1);
        let g = TorusRoot::new(alpha(&t), vec![1]);
        let r = t.weyl_reflect(&g, &g.as_weight()).unwrap();
        assert_eq!(r, g.as_weight().scale(&q(-1)));
    }

    #[test]
    fn translate_example() {
        let t = sl2(1);
        let a = alpha(&t);
        let two_omega = Weight::level_zero(a.clone(), vec![CycScalar::zero()]);
        let r = t.weyl_translate(0, &a, &two_omega).unwrap();
        assert_eq!(r.dvals, vec![CycScalar::from_int(-2)]);
        let back = t.weyl_translate(0, &a.iter().map(|c| -c).collect::<Vec<_>>(), &r).unwrap();
        assert_eq!(back, two_omega);
    }
}
