//! The component lattice `S` generated by degrees of highest central operators.

use serde::Serialize;

use super::window::generator_period;
use crate::repmod::{monomial, EvalModule};
use crate::scalars::matrix::is_zero_vec;
use crate::scalars::{CycScalar, IntLattice};
use crate::torus::{box_degrees, Degree, Torus};

#[derive(Clone, Debug, Serialize)]
pub struct ComponentLattice {
    /// `S = ⟨L⟩` with `L = {r ∈ Γ : Σ_i λ_i(h) b_i^r ≠ 0 for some h ∈ h_0̄}`.
    pub lattice: IntLattice,
    pub index: Option<u64>,
    /// True when every `b_ij` is a root of unity, so that `L` is periodic and
    /// was enumerated over a full period.
    pub certified: bool,
    pub period: Option<Vec<i64>>,
    pub zero_highest_weight: bool,
    /// Elements of `L` found in the generating box.
    pub degrees_found: Vec<Degree>,
    /// Lattice generated by all degrees `r ∈ Z^n` at which some
    /// `x ∈ g_r̄(0)` acts nontrivially on `v₊`.
    pub extended: IntLattice,
    pub extended_index: Option<u64>,
}

/// Radius of the search box used when the points are not roots of unity.
const UNCERTIFIED_RADIUS_FACTOR: i64 = 2;

pub fn component_lattice(torus: &Torus, module: &EvalModule) -> ComponentLattice {
    let n = torus.n();
    let m = torus.m();
    let period = generator_period(module, m);
    let search: Vec<(i64, i64)> = match &period {
        Some(p) => p.iter().map(|&x| (0, x - 1)).collect(),
        None => {
            let r = UNCERTIFIED_RADIUS_FACTOR * m.iter().copied().max().unwrap_or(1) as i64;
            vec![(-r, r); n]
        }
    };
    let restricted: Vec<Vec<CycScalar>> = module
        .factors
        .iter()
        .map(|f| torus.grading.restrict_dynkin(&f.highest).into_iter().map(CycScalar::from_q).collect())
        .collect();
    let zero_highest_weight = restricted.iter().all(|v| is_zero_vec(v));
    let rank0 = torus.grading.rank0();
    let top = module.top_vector();
    let zero_w = torus.grading.zero_weight();

    let mut found = Vec::new();
    let mut extended_found = Vec::new();
    for r in box_degrees(&search) {
        if torus.grading.in_gamma(&r) {
            let mut c = vec![CycScalar::zero(); rank0];
            for (lam, b) in restricted.iter().zip(&module.points) {
                let br = monomial(b, &r);
                for (acc, x) in c.iter_mut().zip(lam) {
                    *acc += &(&br * x);
                }
            }
            if !is_zero_vec(&c) {
                found.push(r.clone());
            }
        }
        let ci = torus.grading.class_index(&r);
        if let Some(xs) = torus.grading.weight_spaces[ci].get(&zero_w) {
            let acts = xs.iter().any(|x| !is_zero_vec(&module.op(torus, x, &r).expect("piece vector").apply(&top)));
            if acts {
                extended_found.push(r.clone());
            }
        }
    }
    let close = |gens: &[Degree]| -> IntLattice {
        let mut all: Vec<Vec<i64>> = gens.to_vec();
        if let (Some(p), false) = (&period, gens.is_empty()) {
            for (j, &pj) in p.iter().enumerate() {
                let mut e = vec![0; n];
                e[j] = pj;
                all.push(e);
            }
        }
        IntLattice::new(n, all)
    };
    let lattice = close(&found);
    let extended = close(&extended_found);
    ComponentLattice {
        index: lattice.index(),
        extended_index: extended.index(),
        lattice,
        extended,
        certified: period.is_some(),
        period,
        zero_highest_weight,
        degrees_found: found,
    }
}
