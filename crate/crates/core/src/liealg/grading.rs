//! Eigenspace grading `g = ⊕ g_k̄` and its refinement by `h_0̄`-weights.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::algebra::LieAlgebra;
use super::automorphism::AutomorphismTuple;
use crate::error::{Error, Result};
use crate::scalars::matrix::{is_zero_vec, vec_axpy, zero_vec};
use crate::scalars::{q, simultaneous_eigenspace, CycScalar, ExactMatrix, Subspace, Vector, Q};

/// A weight of `h_0̄`, given by its values on the chosen basis `H_1..H_r`.
pub type Weight0 = Vec<Q>;

/// The grading of `g` by `Λ̄ = ∏ Z/m_i`.
#[derive(Clone, Debug)]
pub struct Grading {
    pub m: Vec<u32>,
    /// All classes `k̄` in lexicographic order.
    pub classes: Vec<Vec<u32>>,
    /// Basis of `g_k̄`, parallel to `classes`.
    pub pieces: Vec<Vec<Vector>>,
    /// Basis `H_1..H_r` of `h_0̄` as vectors of `g`.
    pub h0: Vec<Vector>,
    /// Coordinates of each `H_j` on `h_1..h_l`.
    pub h0_coords: Vec<Vec<Q>>,
    /// Gram matrix `(H_j|H_k)`.
    pub gram: Vec<Vec<Q>>,
    gram_inv: Vec<Vec<Q>>,
    /// Coordinates on `H_1..H_r` of the element on which every simple root of `g` is 1.
    pub rho: Vec<Q>,
    /// `h_0̄`-weight spaces of each piece, sorted by weight.
    pub weight_spaces: Vec<BTreeMap<Weight0, Vec<Vector>>>,
    /// `h_0̄`-weight of every Chevalley basis vector.
    basis_weights: Vec<Weight0>,
}

fn invert_rational(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].clone();
        for v in a[c].iter_mut() {
            *v = &*v / &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn all_classes(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &mi in m {
        let mut next = Vec::new();
        for prefix in &out {
            for k in 0..mi {
                let mut p = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl Grading {
    pub fn new(g: &LieAlgebra, sigma: &AutomorphismTuple) -> Result<Self> {
        let m = sigma.orders();
        let classes = all_classes(&m);
        let ops: Vec<ExactMatrix> = sigma.sigmas.iter().map(|s| s.matrix.clone()).collect();
        let mut pieces = Vec::with_capacity(classes.len());
        for k in &classes {
            let eig: Vec<CycScalar> = k.iter().zip(&m).map(|(&ki, &mi)| CycScalar::zeta(mi, ki as i64)).collect();
            pieces.push(simultaneous_eigenspace(&ops, &eig)?);
        }

        // h_0̄ = h^σ
        let l = g.rank();
        let hidx: Vec<usize> = (0..l).map(|i| g.h_index(i)).collect();
        let mut blocks = Vec::new();
        for s in &sigma.sigmas {
            let mut b = ExactMatrix::zeros(l, l);
            for (a, &ia) in hidx.iter().enumerate() {
                for j in 0..g.dim() {
                    let v = s.matrix.get(j, ia);
                    if v.is_zero() {
                        continue;
                    }
                    let Some(row) = hidx.iter().position(|&h| h == j) else {
                        return Err(Error::Contract(
                            "automorphism does not preserve the Cartan subalgebra; unsupported".into(),
                        ));
                    };
                    b.set(row, a, v.clone());
                }
            }
            blocks.push(b);
        }
        let ones = vec![CycScalar::one(); blocks.len()];
        let fixed = simultaneous_eigenspace(&blocks, &ones)?;
        let h0_coords: Vec<Vec<Q>> = fixed
            .iter()
            .map(|v| v.iter().map(|c| c.to_rational().expect("rational Cartan element")).collect())
            .collect();
        let h0: Vec<Vector> = fixed.iter().map(|c| g.cartan_element(c)).collect();
        let r = h0.len();
        let gram: Vec<Vec<Q>> = (0..r)
            .map(|a| (0..r).map(|b| g.form(&h0[a], &h0[b]).to_rational().expect("rational form")).collect())
            .collect();
        let gram_inv = invert_rational(&gram)
            .ok_or_else(|| Error::Contract("form is degenerate on the fixed Cartan subalgebra".into()))?;

        let basis_weights: Vec<Weight0> = (0..g.dim())
            .map(|i| {
                let root = g.basis_root(i);
                h0_coords
                    .iter()
                    .map(|c| {
                        let mut acc = Q::zero();
                        for (t, ct) in c.iter().enumerate() {
                            acc += ct * q(g.rs.pair_coroot(root, t));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();

        // ρ^∨ = Σ c_i h_i with α_j(ρ^∨) = 1 for all j, written on the H basis
        let cart_t = ExactMatrix::from_i64(
            &(0..l).map(|j| (0..l).map(|i| g.rs.cartan[i][j]).collect()).collect::<Vec<_>>(),
        );
        let rho_h = cart_t.solve(&vec![CycScalar::one(); l])?;
        let h0_mat = ExactMatrix::from_columns(l, &fixed);
        let rho = h0_mat
            .solve(&rho_h)
            .map_err(|_| Error::Contract("rho-check element is not fixed by the automorphisms".into()))?
            .iter()
            .map(|c| c.to_rational().expect("rational"))
            .collect();

        let mut weight_spaces = Vec::with_capacity(pieces.len());
        for piece in &pieces {
            let mut groups: BTreeMap<Weight0, Vec<usize>> = BTreeMap::new();
            for (i, w) in basis_weights.iter().enumerate() {
                groups.entry(w.clone()).or_default().push(i);
            }
            let mut spaces = BTreeMap::new();
            for (w, idx) in groups {
                let mut sub = Subspace::new(g.dim());
                for v in piece {
                    let mut proj = zero_vec(g.dim());
                    for &i in &idx {
                        proj[i] = v[i].clone();
                    }
                    if !is_zero_vec(&proj) {
                        sub.insert(&proj);
                    }
                }
                if sub.dim() > 0 {
                    spaces.insert(w, sub.basis().to_vec());
                }
            }
            weight_spaces.push(spaces);
        }

        let grading = Grading { m, classes, pieces, h0, h0_coords, gram, gram_inv, rho, weight_spaces, basis_weights };
        grading.verify_cartan(g)?;
        Ok(grading)
    }

    /// Checks that `h_0̄` is abelian and self-normalising in `g_0̄`.
    fn verify_cartan(&self, g: &LieAlgebra) -> Result<()> {
        for a in &self.h0 {
            for b in &self.h0 {
                if !is_zero_vec(&g.bracket(a, b)) {
                    return Err(Error::Contract("fixed Cartan part is not abelian".into()));
                }
            }
        }
        let h0_space = Subspace::from_vectors(g.dim(), &self.h0);
        let g0 = &self.pieces[0];
        let mut cols = Vec::new();
        for y in g0 {
            let mut col = Vec::new();
            for h in &self.h0 {
                col.extend(h0_space.reduce(&g.bracket(y, h)));
            }
            cols.push(col);
        }
        let rows = cols.first().map_or(0, |c| c.len());
        let normaliser = ExactMatrix::from_columns(rows, &cols).kernel().len();
        if normaliser != self.h0.len() {
            return Err(Error::Contract(
                "fixed part of h is not a Cartan subalgebra of g_0; regular-element search unsupported".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn rank0(&self) -> usize {
        self.h0.len()
    }

    /// Class index of an integer degree.
    pub fn class_index(&self, k: &[i64]) -> usize {
        let mut idx = 0;
        for (ki, &mi) in k.iter().zip(&self.m) {
            idx = idx * mi as usize + ki.rem_euclid(mi as i64) as usize;
        }
        idx
    }

    pub fn piece_for_degree(&self, k: &[i64]) -> &[Vector] {
        &self.pieces[self.class_index(k)]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.len()).collect()
    }

    /// True when `x ∈ g_k̄` for the class of `k`.
    pub fn contains(&self, k: &[i64], x: &[CycScalar]) -> bool {
        Subspace::from_vectors(x.len(), self.piece_for_degree(k)).contains(x)
    }

    /// True when `k ∈ Γ = ⊕ m_i Z`.
    pub fn in_gamma(&self, k: &[i64]) -> bool {
        k.iter().zip(&self.m).all(|(ki, &mi)| ki.rem_euclid(mi as i64) == 0)
    }

    pub fn basis_weight(&self, i: usize) -> &Weight0 {
        &self.basis_weights[i]
    }

    /// `h_0̄`-weight of a vector of `g` that lies in a single weight space.
    pub fn weight_of(&self, x: &[CycScalar]) -> Option<Weight0> {
        let mut found: Option<&Weight0> = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(&self.basis_weights[i]),
                Some(w) if *w == self.basis_weights[i] => {}
                Some(_) => return None,
            }
        }
        found.cloned()
    }

    pub fn zero_weight(&self) -> Weight0 {
        vec![Q::zero(); self.rank0()]
    }

    /// `(a, b)` on `h_0̄*` induced by the invariant form.
    pub fn weight_inner(&self, a: &[Q], b: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                acc += ai * &self.gram_inv[i][j] * bj;
            }
        }
        acc
    }

    /// Coordinates on `H_1..H_r` of `t_α`, the element dual to `α` under the form.
    pub fn dual_element(&self, a: &[Q]) -> Vec<Q> {
        (0..self.rank0())
            .map(|i| {
                let mut acc = Q::zero();
                for (j, aj) in a.iter().enumerate() {
                    acc += &self.gram_inv[i][j] * aj;
                }
                acc
            })
            .collect()
    }

    /// Coordinates on `H_1..H_r` of the coroot `α^∨ = 2 t_α / (α, α)`.
    pub fn coroot(&self, a: &[Q]) -> Vec<Q> {
        let n = self.weight_inner(a, a);
        self.dual_element(a).into_iter().map(|c| q(2) * c / &n).collect()
    }

    pub fn is_positive(&self, w: &[Q]) -> bool {
        let mut acc = Q::zero();
        for (a, b) in w.iter().zip(&self.rho) {
            acc += a * b;
        }
        acc.is_positive()
    }

    /// Nonzero `h_0̄`-weights of `g_0̄`.
    pub fn roots_zero(&self) -> Vec<Weight0> {
        self.weight_spaces[0].keys().filter(|w| w.iter().any(|c| !c.is_zero())).cloned().collect()
    }

    /// Nonzero `h_0̄`-weights of `g`.
    pub fn roots_all(&self) -> Vec<Weight0> {
        let mut all: std::collections::BTreeSet<Weight0> = std::collections::BTreeSet::new();
        for ws in &self.weight_spaces {
            for w in ws.keys() {
                if w.iter().any(|c| !c.is_zero()) {
                    all.insert(w.clone());
                }
            }
        }
        all.into_iter().collect()
    }

    /// First pair of basis vectors violating `[g_k̄, g_l̄] ⊆ g_{k̄+l̄}`.
    pub fn grading_law_violation(&self, g: &LieAlgebra) -> Option<(Vec<u32>, Vec<u32>)> {
        let spaces: Vec<Subspace> = self.pieces.iter().map(|p| Subspace::from_vectors(g.dim(), p)).collect();
        for (a, ka) in self.classes.iter().enumerate() {
            for (b, kb) in self.classes.iter().enumerate() {
                let sum: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| (*x + *y) as i64).collect();
                let target = &spaces[self.class_index(&sum)];
                for x in &self.pieces[a] {
                    for y in &self.pieces[b] {
                        if !target.contains(&g.bracket(x, y)) {
                            return Some((ka.clone(), kb.clone()));
                        }
                    }
                }
            }
        }
        None
    }

    /// Writes an element of `h_0̄` given on the `H` basis as a vector of `g`.
    pub fn h0_element(&self, coords: &[Q]) -> Vector {
        let mut v = zero_vec(self.h0.first().map_or(0, |h| h.len()));
        for (c, h) in coords.iter().zip(&self.h0) {
            vec_axpy(&mut v, &CycScalar::from_q(c.clone()), h);
        }
        v
    }

    /// Values on the `H` basis of a weight of `h` given by Dynkin labels.
    pub fn restrict_dynkin(&self, labels: &[i64]) -> Weight0 {
        self.h0_coords
            .iter()
            .map(|c| {
                let mut acc = Q::zero();
                for (ct, lt) in c.iter().zip(labels) {
                    acc += ct * q(*lt);
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{CartanType, SigmaSpec};

    fn grading(t: CartanType, l: usize, specs: &[SigmaSpec]) -> (LieAlgebra, Grading) {
        let g = LieAlgebra::new(t, l).unwrap();
        let s = AutomorphismTuple::from_specs(&g, specs).unwrap();
        let gr = Grading::new(&g, &s).unwrap();
        assert_eq!(gr.dims().iter().sum::<usize>(), g.dim());
        assert_eq!(gr.grading_law_violation(&g), None);
        (g, gr)
    }

    #[test]
    fn trivial_grading() {
        let (_, gr) = grading(CartanType::A, 1, &[SigmaSpec::Identity]);
        assert_eq!(gr.dims(), vec![3]);
    }

    #[test]
    fn twisted_a2_dims() {
        let (_, gr) = grading(CartanType::A, 2, &[SigmaSpec::Diagram { perm: vec![2, 1] }]);
        assert_eq!(gr.dims(), vec![3, 5]);
        assert_eq!(gr.rank0(), 1);
        assert_eq!(gr.roots_zero().len(), 2);
        assert_eq!(gr.roots_all().len(), 4);
    }

    #[test]
    fn triality_dims() {
        let (_, gr) = grading(CartanType::D, 4, &[SigmaSpec::Diagram { perm: vec![3, 2, 4, 1] }]);
        assert_eq!(gr.dims(), vec![14, 7, 7]);
        assert_eq!(gr.roots_zero().len(), 12);
    }

    #[test]
    fn twisted_a3_dims() {
        let (_, gr) = grading(CartanType::A, 3, &[SigmaSpec::Diagram { perm: vec![3, 2, 1] }]);
        assert_eq!(gr.dims(), vec![10, 5]);
    }

    #[test]
    fn two_variable_grading() {
        let (_, gr) = grading(
            CartanType::A,
            2,
            &[SigmaSpec::Diagram { perm: vec![2, 1] }, SigmaSpec::Identity],
        );
        assert_eq!(gr.dims(), vec![3, 5]);
        assert_eq!(gr.class_index(&[3, 7]), 1);
    }
}
