//! Finite-dimensional irreducible highest weight modules over a simple Lie algebra.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::rootsys::is_dominant;
use crate::liealg::LieAlgebra;
use crate::scalars::matrix::zero_vec;
use crate::scalars::{q_frac, CycScalar, SpanResult, SpanTracker, SparseMatrix, Vector};

type SVec = BTreeMap<usize, CycScalar>;

fn sv_axpy(acc: &mut SVec, c: &CycScalar, v: &SVec) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(CycScalar::zero);
        *e += &(c * x);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// The irreducible module `V(λ)` with an explicit weight basis.
///
/// Basis vector `0` is the highest weight vector. Vectors are produced
/// level by level as `f_i b`, and a candidate is kept only when the tuple
/// `(e_1 w, ..., e_l w)` is independent of those already kept. In the
/// irreducible quotient a vector below the top is zero exactly when every
/// `e_j` kills it, so this tuple embeds each weight space.
#[derive(Clone, Debug)]
pub struct HWModule {
    pub highest: Vec<i64>,
    /// Dynkin labels of the weight of each basis vector.
    pub weights: Vec<Vec<i64>>,
    /// Action matrix of every Chevalley basis element of `g`.
    pub actions: Vec<SparseMatrix>,
}

impl HWModule {
    pub fn new(g: &LieAlgebra, lambda: &[i64]) -> Result<Self> {
        let l = g.rank();
        if lambda.len() != l {
            return Err(Error::InvalidInput(format!("highest weight needs {l} Dynkin labels")));
        }
        if !is_dominant(lambda) {
            return Err(Error::InvalidInput(format!("highest weight {lambda:?} is not dominant")));
        }
        let simple: Vec<Vec<i64>> = (0..l).map(|i| g.rs.root_to_weight(&g.rs.positive[i])).collect();
        let shift = |w: &[i64], i: usize, s: i64| -> Vec<i64> { w.iter().zip(&simple[i]).map(|(a, b)| a + s * b).collect() };

        let mut weights = vec![lambda.to_vec()];
        let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        by_weight.insert(lambda.to_vec(), vec![0]);
        let mut e: Vec<Vec<SVec>> = vec![vec![SVec::new()]; l];
        let mut f: Vec<Vec<Option<SVec>>> = vec![vec![None]; l];
        let mut frontier = vec![lambda.to_vec()];

        while !frontier.is_empty() {
            let mut candidates: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
            for nu in &frontier {
                for i in 0..l {
                    candidates.insert(shift(nu, i, -1));
                }
            }
            let mut next = Vec::new();
            for mu in candidates.into_iter().rev() {
                let targets: Vec<(usize, Vec<usize>)> =
                    (0..l).filter_map(|j| by_weight.get(&shift(&mu, j, 1)).map(|b| (j, b.clone()))).collect();
                let sig_dim: usize = targets.iter().map(|(_, b)| b.len()).sum();
                let mut tracker = SpanTracker::new(sig_dim);
                let mut new_ids: Vec<usize> = Vec::new();
                for i in 0..l {
                    let nu = shift(&mu, i, 1);
                    let Some(sources) = by_weight.get(&nu).cloned() else { continue };
                    for b in sources {
                        let mut sig = zero_vec(sig_dim);
                        let mut parts: Vec<SVec> = Vec::with_capacity(targets.len());
                        let mut offset = 0;
                        for (j, basis_j) in &targets {
                            // e_j f_i b = f_i e_j b + δ_ij ⟨ν, α_i^∨⟩ b
                            let mut img = SVec::new();
                            for (c, coef) in &e[*j][b] {
                                let fi = f[i][*c].as_ref().expect("lower level images are known");
                                sv_axpy(&mut img, coef, fi);
                            }
                            if *j == i && nu[i] != 0 {
                                sv_axpy(&mut img, &CycScalar::from_int(nu[i]), &SVec::from([(b, CycScalar::one())]));
                            }
                            for (gid, c) in &img {
                                let pos = basis_j.iter().position(|x| x == gid).expect("image lies in the target weight space");
                                sig[offset + pos] = c.clone();
                            }
                            offset += basis_j.len();
                            parts.push(img);
                        }
                        match tracker.insert(&sig) {
                            SpanResult::New(_) => {
                                let id = weights.len();
                                weights.push(mu.clone());
                                for jj in 0..l {
                                    e[jj].push(SVec::new());
                                    f[jj].push(None);
                                }
                                for ((j, _), part) in targets.iter().zip(parts) {
                                    e[*j][id] = part;
                                }
                                new_ids.push(id);
                                f[i][b] = Some(SVec::from([(id, CycScalar::one())]));
                            }
                            SpanResult::Dependent(coeffs) => {
                                let mut img = SVec::new();
                                for (t, c) in coeffs.iter().enumerate() {
                                    if !c.is_zero() {
                                        img.insert(new_ids[t], c.clone());
                                    }
                                }
                                f[i][b] = Some(img);
                            }
                        }
                    }
                }
                if !new_ids.is_empty() {
                    by_weight.insert(mu.clone(), new_ids);
                    next.push(mu);
                }
            }
            frontier = next;
        }

        let dim = weights.len();
        let to_matrix = |cols: &[SVec]| {
            SparseMatrix::from_entries(
                dim,
                dim,
                cols.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |(r, x)| (*r, c, x.clone()))),
            )
        };
        let mut actions: Vec<Option<SparseMatrix>> = vec![None; g.dim()];
        for i in 0..l {
            let fcols: Vec<SVec> = f[i].iter().map(|v| v.clone().unwrap_or_default()).collect();
            actions[g.e_index(i)] = Some(to_matrix(&e[i]));
            actions[g.f_index(i)] = Some(to_matrix(&fcols));
            let diag: Vec<CycScalar> = weights.iter().map(|w| CycScalar::from_int(w[i])).collect();
            actions[g.h_index(i)] = Some(SparseMatrix::diagonal(&diag));
        }
        for xi in l..g.num_positive() {
            let root = &g.rs.positive[xi];
            let (gamma, i) = (0..l)
                .find_map(|i| {
                    let mut r = root.clone();
                    r[i] -= 1;
                    g.rs.positive_index(&r).map(|gi| (gi, i))
                })
                .expect("non-simple positive root has a simple predecessor");
            for (a, b, target) in
                [(g.e_index(gamma), g.e_index(i), g.e_index(xi)), (g.f_index(gamma), g.f_index(i), g.f_index(xi))]
            {
                let n = g.bracket_basis(a, b).iter().find(|(k, _)| *k == target).map(|(_, c)| *c).unwrap_or(0);
                if n == 0 {
                    return Err(Error::Contract("missing structure constant for root decomposition".into()));
                }
                let ra = actions[a].as_ref().expect("lower height action known");
                let rb = actions[b].as_ref().expect("simple action known");
                actions[target] = Some(ra.commutator(rb).scale(&CycScalar::from_q(q_frac(1, n))));
            }
        }
        let actions = actions.into_iter().map(|a| a.expect("all actions assigned")).collect();
        Ok(HWModule { highest: lambda.to_vec(), weights, actions })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `ρ(x)` for `x` on the Chevalley basis.
    pub fn act(&self, x: &[CycScalar]) -> SparseMatrix {
        let d = self.dim();
        let mut out = SparseMatrix::zeros(d, d);
        for (c, m) in x.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn weight_table(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut t = BTreeMap::new();
        for w in &self.weights {
            *t.entry(w.clone()).or_insert(0) += 1;
        }
        t
    }

    /// First basis pair `(i, j)` with `ρ[x_i, x_j] ≠ [ρ x_i, ρ x_j]`.
    pub fn representation_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = self.act(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                if lhs != self.actions[i].commutator(&self.actions[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        crate::scalars::matrix::unit_vec(self.dim(), i)
    }

    pub fn to_json(&self, g: &LieAlgebra) -> ModuleJson {
        ModuleJson {
            highest: self.highest.clone(),
            dim: self.dim(),
            weights: self.weight_table().into_iter().map(|(w, m)| (w, m)).collect(),
            basis_weights: self.weights.clone(),
            actions: self
                .actions
                .iter()
                .enumerate()
                .map(|(i, m)| ActionJson {
                    element: g.labels()[i].clone(),
                    entries: m.entries().map(|(r, c, v)| (r, c, v.clone())).collect(),
                })
                .collect(),
        }
    }
}

/// Wire form of a module: weight table, basis weights and sparse actions.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub highest: Vec<i64>,
    pub dim: usize,
    pub weights: Vec<(Vec<i64>, usize)>,
    pub basis_weights: Vec<Vec<i64>>,
    pub actions: Vec<ActionJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionJson {
    pub element: String,
    pub entries: Vec<(usize, usize, CycScalar)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::CartanType;

    #[test]
    fn sl2_small() {
        let g = LieAlgebra::new(CartanType::A, 1).unwrap();
        let v = HWModule::new(&g, &[1]).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.weights, vec![vec![1], vec![-1]]);
        let adj = HWModule::new(&g, &[2]).unwrap();
        assert_eq!(adj.dim(), 3);
        assert_eq!(adj.representation_violation(&g), None);
        assert!(HWModule::new(&g, &[-1]).is_err());
    }

    #[test]
    fn sl3_adjoint() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let v = HWModule::new(&g, &[1, 1]).unwrap();
        assert_eq!(v.dim(), 8);
        assert_eq!(v.weight_table()[&vec![0, 0]], 2);
        assert_eq!(v.representation_violation(&g), None);
    }
}
