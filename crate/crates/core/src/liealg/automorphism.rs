//! Diagram automorphisms and commuting automorphism tuples.

use serde::{Deserialize, Serialize};

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalars::matrix::{unit_vec, vec_scale};
use crate::scalars::{CycScalar, ExactMatrix, Vector};

/// Largest order searched when computing the order of an automorphism.
const MAX_ORDER: u32 = 64;

/// A finite-order automorphism of a simple Lie algebra, as a matrix in the
/// Chevalley basis (column `j` is the image of basis vector `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub matrix: ExactMatrix,
    pub order: u32,
    /// Node permutation for diagram automorphisms (0-based), `None` otherwise.
    pub perm: Option<Vec<usize>>,
}

/// How one automorphism of a tuple is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SigmaSpec {
    Identity,
    /// Node permutation in 1-based notation: node `i` maps to `perm[i-1]`.
    Diagram { perm: Vec<usize> },
}

fn matrix_order(m: &ExactMatrix) -> Option<u32> {
    let mut acc = m.clone();
    for k in 1..=MAX_ORDER {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m).ok()?;
    }
    None
}

impl Automorphism {
    pub fn identity(g: &LieAlgebra) -> Self {
        Automorphism { matrix: ExactMatrix::identity(g.dim()), order: 1, perm: Some((0..g.rank()).collect()) }
    }

    /// The automorphism induced by a Dynkin diagram symmetry (0-based permutation).
    pub fn diagram(g: &LieAlgebra, perm: &[usize]) -> Result<Self> {
        let l = g.rank();
        let mut seen = vec![false; l];
        if perm.len() != l || perm.iter().any(|&p| p >= l || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation of {l} nodes")));
        }
        for i in 0..l {
            for j in 0..l {
                if g.rs.cartan[perm[i]][perm[j]] != g.rs.cartan[i][j] {
                    return Err(Error::InvalidInput(format!(
                        "permutation {:?} is not a symmetry of the {} diagram",
                        perm.iter().map(|p| p + 1).collect::<Vec<_>>(),
                        g.rs.label()
                    )));
                }
            }
        }
        let dim = g.dim();
        let p = g.num_positive();
        let mut images: Vec<Option<Vector>> = vec![None; dim];
        for i in 0..l {
            images[g.e_index(i)] = Some(unit_vec(dim, g.e_index(perm[i])));
            images[g.f_index(i)] = Some(unit_vec(dim, g.f_index(perm[i])));
            images[g.h_index(i)] = Some(unit_vec(dim, g.h_index(perm[i])));
        }
        for xi in l..p {
            let root = g.rs.positive[xi].clone();
            let (gamma, i) = (0..l)
                .find_map(|i| {
                    let mut r = root.clone();
                    r[i] -= 1;
                    g.rs.positive_index(&r).map(|gi| (gi, i))
                })
                .expect("non-simple positive root has a simple predecessor");
            for (a, b, target) in [
                (g.e_index(gamma), g.e_index(i), g.e_index(xi)),
                (g.f_index(gamma), g.f_index(i), g.f_index(xi)),
            ] {
                let n = g.bracket_basis(a, b).iter().find(|(k, _)| *k == target).map(|(_, c)| *c).unwrap_or(0);
                if n == 0 {
                    return Err(Error::Contract("missing structure constant for root decomposition".into()));
                }
                let sa = images[a].as_ref().expect("lower height image known");
                let sb = images[b].as_ref().expect("simple image known");
                let img = vec_scale(&g.bracket(sa, sb), &CycScalar::from_q(crate::scalars::q_frac(1, n)));
                images[target] = Some(img);
            }
        }
        let cols: Vec<Vector> = images.into_iter().map(|v| v.expect("all images assigned")).collect();
        let matrix = ExactMatrix::from_columns(dim, &cols);
        let order = matrix_order(&matrix).ok_or_else(|| Error::Contract("automorphism has no finite order".into()))?;
        Ok(Automorphism { matrix, order, perm: Some(perm.to_vec()) })
    }

    /// Inner automorphism `e_β ↦ ζ_N^{Σ s_i β_i} e_β` acting trivially on `h`.
    pub fn inner_torus(g: &LieAlgebra, s: &[i64], n: u32) -> Result<Self> {
        if s.len() != g.rank() || n == 0 {
            return Err(Error::InvalidInput("inner torus automorphism needs one exponent per node".into()));
        }
        let dim = g.dim();
        let mut m = ExactMatrix::zeros(dim, dim);
        for i in 0..dim {
            let r = g.basis_root(i);
            let e: i64 = r.iter().zip(s).map(|(a, b)| a * b).sum();
            m.set(i, i, CycScalar::zeta(n, e));
        }
        let order = matrix_order(&m).ok_or_else(|| Error::Contract("automorphism has no finite order".into()))?;
        Ok(Automorphism { matrix: m, order, perm: None })
    }

    pub fn from_spec(g: &LieAlgebra, spec: &SigmaSpec) -> Result<Self> {
        match spec {
            SigmaSpec::Identity => Ok(Self::identity(g)),
            SigmaSpec::Diagram { perm } => {
                if perm.iter().any(|&p| p == 0) {
                    return Err(Error::InvalidInput("diagram permutations are 1-based".into()));
                }
                let p0: Vec<usize> = perm.iter().map(|p| p - 1).collect();
                Self::diagram(g, &p0)
            }
        }
    }

    pub fn apply(&self, x: &[CycScalar]) -> Vector {
        self.matrix.mul_vec(x)
    }

    /// First basis pair with `σ[x,y] ≠ [σx,σy]`.
    pub fn homomorphism_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        let cols: Vec<Vector> = (0..g.dim()).map(|j| self.matrix.col(j)).collect();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let lhs = self.apply(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                let rhs = g.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Commuting automorphisms `σ_1..σ_n` with orders `m_1..m_n`.
#[derive(Clone, Debug)]
pub struct AutomorphismTuple {
    pub sigmas: Vec<Automorphism>,
}

impl AutomorphismTuple {
    pub fn new(g: &LieAlgebra, sigmas: Vec<Automorphism>) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::InvalidInput("at least one automorphism (n >= 1) is required".into()));
        }
        for (k, s) in sigmas.iter().enumerate() {
            if s.matrix.rows() != g.dim() {
                return Err(Error::InvalidInput(format!("sigma_{} has the wrong size", k + 1)));
            }
            if let Some((i, j)) = s.homomorphism_violation(g) {
                return Err(Error::InvalidInput(format!(
                    "sigma_{} is not an automorphism: fails on ({}, {})",
                    k + 1,
                    g.labels()[i],
                    g.labels()[j]
                )));
            }
        }
        for a in 0..sigmas.len() {
            for b in a + 1..sigmas.len() {
                if sigmas[a].matrix.mul(&sigmas[b].matrix)? != sigmas[b].matrix.mul(&sigmas[a].matrix)? {
                    return Err(Error::InvalidInput(format!("sigma_{} and sigma_{} do not commute", a + 1, b + 1)));
                }
            }
        }
        Ok(AutomorphismTuple { sigmas })
    }

    pub fn from_specs(g: &LieAlgebra, specs: &[SigmaSpec]) -> Result<Self> {
        let sigmas = specs.iter().map(|s| Automorphism::from_spec(g, s)).collect::<Result<Vec<_>>>()?;
        Self::new(g, sigmas)
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    pub fn orders(&self) -> Vec<u32> {
        self.sigmas.iter().map(|s| s.order).collect()
    }

    /// Order of the group generated by the tuple, by breadth-first search.
    /// The search stops once `limit` elements are found.
    pub fn group_order(&self, limit: usize) -> usize {
        let dim = self.sigmas[0].matrix.rows();
        let mut elements = vec![ExactMatrix::identity(dim)];
        let mut frontier = elements.clone();
        while !frontier.is_empty() && elements.len() < limit {
            let mut next = Vec::new();
            for m in &frontier {
                for s in &self.sigmas {
                    let p = m.mul(&s.matrix).expect("square matrices");
                    if !elements.contains(&p) {
                        elements.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::CartanType;

    #[test]
    fn identity_permutation_gives_identity() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let s = Automorphism::diagram(&g, &[0, 1]).unwrap();
        assert!(s.matrix.is_identity());
        assert_eq!(s.order, 1);
    }

    #[test]
    fn a2_swap_is_involution() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let s = Automorphism::diagram(&g, &[1, 0]).unwrap();
        assert_eq!(s.order, 2);
        assert_eq!(s.homomorphism_violation(&g), None);
    }

    #[test]
    fn d4_triality_has_order_three() {
        let g = LieAlgebra::new(CartanType::D, 4).unwrap();
        let s = Automorphism::diagram(&g, &[2, 1, 3, 0]).unwrap();
        assert_eq!(s.order, 3);
        assert_eq!(s.homomorphism_violation(&g), None);
    }

    #[test]
    fn non_symmetry_rejected() {
        let g = LieAlgebra::new(CartanType::B, 3).unwrap();
        assert!(Automorphism::diagram(&g, &[2, 1, 0]).is_err());
        let a3 = LieAlgebra::new(CartanType::A, 3).unwrap();
        assert!(Automorphism::diagram(&a3, &[1, 0, 2]).is_err());
    }

    #[test]
    fn duplicate_generators_give_small_group() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let spec = SigmaSpec::Diagram { perm: vec![2, 1] };
        let t = AutomorphismTuple::from_specs(&g, &[spec.clone(), spec]).unwrap();
        assert_eq!(t.group_order(16), 2);
    }

    #[test]
    fn inner_torus_is_automorphism() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let s = Automorphism::inner_torus(&g, &[1, 0], 2).unwrap();
        assert_eq!(s.order, 2);
        assert_eq!(s.homomorphism_violation(&g), None);
    }
}
