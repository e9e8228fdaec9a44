//! Simple Lie algebras in a Chevalley basis.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rootsys::{CartanType, RootSystem};
use crate::error::{Error, Result};
use crate::scalars::matrix::zero_vec;
use crate::scalars::{q, CycScalar, ExactMatrix, SparseMatrix, Vector, Q};

/// A finite-dimensional simple Lie algebra with basis
/// `e_β (β ∈ Φ⁺), f_β (β ∈ Φ⁺), h_1..h_l`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    dim: usize,
    labels: Vec<String>,
    /// Root of each basis element in simple-root coordinates (zero for `h_i`).
    basis_roots: Vec<Vec<i64>>,
    structure: Vec<Vec<Vec<(usize, i64)>>>,
    form: Vec<Vec<(usize, Q)>>,
}

/// Structure constants `N_{α,β}` computed from extraspecial pairs.
struct StructureConstants<'a> {
    rs: &'a RootSystem,
    extraspecial: Vec<Option<(usize, usize, i64)>>,
    memo: HashMap<(Vec<i64>, Vec<i64>), i64>,
}

impl<'a> StructureConstants<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let mut extraspecial = vec![None; rs.num_positive()];
        for (xi_idx, xi) in rs.positive.iter().enumerate() {
            if RootSystem::height(xi) == 1 {
                continue;
            }
            for i in 0..rs.rank {
                let mut rest = xi.clone();
                rest[i] -= 1;
                if let Some(z2) = rs.positive_index(&rest) {
                    let z1 = rs.positive_index(&unit(rs.rank, i)).expect("simple root");
                    // p = largest k with ζ2 − kζ1 a root
                    let mut p = 0;
                    loop {
                        let mut g = rest.clone();
                        g[i] -= p + 1;
                        if rs.is_root(&g) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    extraspecial[xi_idx] = Some((z1, z2, p + 1));
                    break;
                }
            }
        }
        StructureConstants { rs, extraspecial, memo: HashMap::new() }
    }

    fn is_positive(r: &[i64]) -> bool {
        r.iter().any(|&x| x > 0)
    }

    fn n(&mut self, a: &[i64], b: &[i64]) -> i64 {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if s.iter().all(|&x| x == 0) || !self.rs.is_root(&s) {
            return 0;
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let pa = Self::is_positive(a);
        let pb = Self::is_positive(b);
        let v = if pa && pb {
            self.positive_pair(a, b, &s)
        } else if !pa && !pb {
            -self.n(&neg(a), &neg(b))
        } else {
            // a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
            let c = neg(&s);
            let pc = Self::is_positive(&c);
            let val = if pb == pc {
                self.rs.norm(&c) / self.rs.norm(a) * q(self.n(b, &c))
            } else {
                self.rs.norm(&c) / self.rs.norm(b) * q(self.n(&c, a))
            };
            to_int(&val)
        };
        self.memo.insert(key, v);
        v
    }

    fn positive_pair(&mut self, a: &[i64], b: &[i64], xi: &[i64]) -> i64 {
        let xi_idx = self.rs.positive_index(xi).expect("positive root");
        let (z1, z2, np) = self.extraspecial[xi_idx].expect("non-simple root has an extraspecial pair");
        let zeta1 = self.rs.positive[z1].clone();
        let zeta2 = self.rs.positive[z2].clone();
        if a == zeta1.as_slice() && b == zeta2.as_slice() {
            return np;
        }
        if a == zeta2.as_slice() && b == zeta1.as_slice() {
            return -np;
        }
        let m1 = neg(&zeta1);
        let m2 = neg(&zeta2);
        let mut acc = Q::zero();
        let bz: Vec<i64> = b.iter().zip(&zeta1).map(|(x, y)| x - y).collect();
        if bz.iter().any(|&x| x != 0) && self.rs.is_root(&bz) {
            acc += q(self.n(b, &m1) * self.n(a, &m2)) / self.rs.norm(&bz);
        }
        let az: Vec<i64> = a.iter().zip(&zeta1).map(|(x, y)| x - y).collect();
        if az.iter().any(|&x| x != 0) && self.rs.is_root(&az) {
            acc += q(self.n(&m1, a) * self.n(b, &m2)) / self.rs.norm(&az);
        }
        to_int(&(self.rs.norm(xi) / q(np) * acc))
    }
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn to_int(v: &Q) -> i64 {
    assert!(v.is_integer(), "structure constant {v} is not an integer");
    v.to_integer().try_into().expect("small structure constant")
}

impl LieAlgebra {
    /// Builds the simple Lie algebra of the given type and rank.
    pub fn new(ctype: CartanType, rank: usize) -> Result<Self> {
        let rs = RootSystem::new(ctype, rank)?;
        let p = rs.num_positive();
        let l = rs.rank;
        let dim = 2 * p + l;
        let mut labels = Vec::with_capacity(dim);
        let mut basis_roots = Vec::with_capacity(dim);
        for r in &rs.positive {
            labels.push(format!("e{}", root_label(r)));
            basis_roots.push(r.clone());
        }
        for r in &rs.positive {
            labels.push(format!("f{}", root_label(r)));
            basis_roots.push(neg(r));
        }
        for i in 0..l {
            labels.push(format!("h{}", i + 1));
            basis_roots.push(vec![0; l]);
        }
        let root_index: HashMap<Vec<i64>, usize> =
            basis_roots.iter().take(2 * p).enumerate().map(|(i, r)| (r.clone(), i)).collect();

        let mut sc = StructureConstants::new(&rs);
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let (ri, rj) = (&basis_roots[i], &basis_roots[j]);
                let hi = i >= 2 * p;
                let hj = j >= 2 * p;
                let entry: Vec<(usize, i64)> = match (hi, hj) {
                    (true, true) => Vec::new(),
                    (true, false) => {
                        let c = rs.pair_coroot(rj, i - 2 * p);
                        if c == 0 { Vec::new() } else { vec![(j, c)] }
                    }
                    (false, true) => {
                        let c = -rs.pair_coroot(ri, j - 2 * p);
                        if c == 0 { Vec::new() } else { vec![(i, c)] }
                    }
                    (false, false) => {
                        let s: Vec<i64> = ri.iter().zip(rj).map(|(a, b)| a + b).collect();
                        if s.iter().all(|&x| x == 0) {
                            // [e_α, f_α] = h_α and [f_α, e_α] = −h_α
                            let pos = if i < p { ri } else { rj };
                            let sign = if i < p { 1 } else { -1 };
                            rs.coroot_coords(pos)
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| *c != 0)
                                .map(|(k, c)| (2 * p + k, sign * c))
                                .collect()
                        } else if let Some(&k) = root_index.get(&s) {
                            let c = sc.n(ri, rj);
                            if c == 0 { Vec::new() } else { vec![(k, c)] }
                        } else {
                            Vec::new()
                        }
                    }
                };
                structure[i][j] = entry;
            }
        }

        let mut form = vec![Vec::new(); dim];
        for i in 0..p {
            let v = q(2) / rs.norm(&rs.positive[i]);
            form[i].push((i + p, v.clone()));
            form[i + p].push((i, v));
        }
        for i in 0..l {
            for j in 0..l {
                let v = q(4) * &rs.form[i][j] / (&rs.form[i][i] * &rs.form[j][j]);
                if !v.is_zero() {
                    form[2 * p + i].push((2 * p + j, v));
                }
            }
        }
        Ok(LieAlgebra { rs, dim, labels, basis_roots, structure, form })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_root(&self, i: usize) -> &[i64] {
        &self.basis_roots[i]
    }

    pub fn e_index(&self, pos_root: usize) -> usize {
        pos_root
    }

    pub fn f_index(&self, pos_root: usize) -> usize {
        self.num_positive() + pos_root
    }

    pub fn h_index(&self, i: usize) -> usize {
        2 * self.num_positive() + i
    }

    pub fn is_cartan_index(&self, i: usize) -> bool {
        i >= 2 * self.num_positive()
    }

    /// `[b_i, b_j]` as a sparse list of integer coefficients.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.structure[i][j]
    }

    pub fn bracket(&self, x: &[CycScalar], y: &[CycScalar]) -> Vector {
        let mut out = zero_vec(self.dim);
        let xs: Vec<usize> = (0..self.dim).filter(|&i| !x[i].is_zero()).collect();
        let ys: Vec<usize> = (0..self.dim).filter(|&j| !y[j].is_zero()).collect();
        for &i in &xs {
            for &j in &ys {
                let entry = &self.structure[i][j];
                if entry.is_empty() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for &(k, n) in entry {
                    out[k] += &c.scale_int(n);
                }
            }
        }
        out
    }

    /// Normalised invariant form `(x|y)` with `(θ|θ) = 2`.
    pub fn form(&self, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, v) in &self.form[i] {
                if !y[*j].is_zero() {
                    acc += &(&(xi * &y[*j]) * &CycScalar::from_q(v.clone()));
                }
            }
        }
        acc
    }

    pub fn form_basis(&self, i: usize, j: usize) -> Q {
        self.form[i].iter().find(|(k, _)| *k == j).map(|(_, v)| v.clone()).unwrap_or_else(Q::zero)
    }

    pub fn form_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.form.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, CycScalar::from_q(v.clone()));
            }
        }
        m
    }

    /// Matrix of `ad x` in the basis.
    pub fn ad(&self, x: &[CycScalar]) -> SparseMatrix {
        let mut entries = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for &(k, n) in &self.structure[i][j] {
                    entries.push((k, j, xi.scale_int(n)));
                }
            }
        }
        SparseMatrix::from_entries(self.dim, self.dim, entries)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        crate::scalars::matrix::unit_vec(self.dim, i)
    }

    /// The Cartan element with the given coordinates on `h_1..h_l`.
    pub fn cartan_element(&self, coords: &[CycScalar]) -> Vector {
        let mut v = zero_vec(self.dim);
        for (i, c) in coords.iter().enumerate() {
            v[self.h_index(i)] = c.clone();
        }
        v
    }

    /// Overwrites one structure constant; used for fault-injection tests.
    pub fn corrupt_structure_constant(&mut self, i: usize, j: usize, k: usize, value: i64) {
        let entry = &mut self.structure[i][j];
        entry.retain(|(t, _)| *t != k);
        if value != 0 {
            entry.push((k, value));
            entry.sort();
        }
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut acc = vec![0i64; d];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(t, n1) in &self.structure[b][c] {
                            for &(u, n2) in &self.structure[a][t] {
                                acc[u] += n1 * n2;
                            }
                        }
                    }
                    if acc.iter().any(|&x| x != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, n) in &self.structure[i][j] {
                    *acc.entry(k).or_default() += n;
                }
                for &(k, n) in &self.structure[j][i] {
                    *acc.entry(k).or_default() += n;
                }
                if acc.values().any(|&v| v != 0) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple with `([x,y]|z) ≠ (x|[y,z])`.
    pub fn form_invariance_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let lhs = |i: usize, j: usize, k: usize| {
            let mut acc = Q::zero();
            for &(t, n) in &self.structure[i][j] {
                acc += q(n) * self.form_basis(t, k);
            }
            acc
        };
        let rhs = |i: usize, j: usize, k: usize| {
            let mut acc = Q::zero();
            for &(t, n) in &self.structure[j][k] {
                acc += q(n) * self.form_basis(i, t);
            }
            acc
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if lhs(i, j, k) != rhs(i, j, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn form_is_nondegenerate(&self) -> bool {
        self.form_matrix().rank() == self.dim
    }

    /// The element of `h` dual to a root under the form, `t_β` with `(t_β|h) = β(h)`.
    pub fn theta_element(&self) -> Vector {
        let theta = self.rs.highest_root().to_vec();
        let c = self.rs.coroot_coords(&theta);
        // θ long, so t_θ = θ^∨
        self.cartan_element(&c.iter().map(|&x| CycScalar::from_int(x)).collect::<Vec<_>>())
    }

    pub fn check_dimensions(&self) -> Result<()> {
        let expected = RootSystem::expected_num_roots(self.rs.ctype, self.rs.rank) + self.rs.rank;
        if expected != self.dim {
            return Err(Error::Contract(format!("dimension {} differs from {expected}", self.dim)));
        }
        Ok(())
    }
}

/// Serialised form of an algebra: sparse structure constants and the dense form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(rename = "type")]
    pub ctype: String,
    pub rank: usize,
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure: Vec<(usize, usize, Vec<(usize, CycScalar)>)>,
    pub form: Vec<Vec<CycScalar>>,
}

impl LieAlgebra {
    pub fn to_json(&self) -> AlgebraJson {
        let mut structure = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = &self.structure[i][j];
                if !e.is_empty() {
                    structure.push((i, j, e.iter().map(|&(k, c)| (k, CycScalar::from_int(c))).collect()));
                }
            }
        }
        let fm = self.form_matrix();
        let form = (0..self.dim).map(|i| fm.row(i).to_vec()).collect();
        AlgebraJson {
            ctype: self.rs.ctype.letter().to_string(),
            rank: self.rs.rank,
            dim: self.dim,
            labels: self.labels.clone(),
            structure,
            form,
        }
    }
}

fn root_label(r: &[i64]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(ctype: CartanType, rank: usize, dim: usize) -> LieAlgebra {
        let g = LieAlgebra::new(ctype, rank).unwrap();
        assert_eq!(g.dim(), dim);
        assert_eq!(g.jacobi_violation(), None, "{ctype}{rank} Jacobi");
        assert_eq!(g.antisymmetry_violation(), None);
        assert_eq!(g.form_invariance_violation(), None, "{ctype}{rank} invariance");
        assert!(g.form_is_nondegenerate());
        g
    }

    #[test]
    fn sl2_relations() {
        let g = check(CartanType::A, 1, 3);
        assert_eq!(g.bracket_basis(0, 1), &[(2, 1)]);
        assert_eq!(g.bracket_basis(2, 0), &[(0, 2)]);
        assert_eq!(g.form_basis(0, 1), q(1));
    }

    #[test]
    fn small_types_satisfy_axioms() {
        check(CartanType::A, 2, 8);
        check(CartanType::A, 3, 15);
        check(CartanType::B, 2, 10);
        check(CartanType::C, 3, 21);
        check(CartanType::D, 4, 28);
    }

    #[test]
    fn g2_form_and_axioms() {
        let g = check(CartanType::G, 2, 14);
        let p = g.num_positive();
        let theta = p - 1;
        assert_eq!(g.form_basis(theta, theta + p), q(1));
        let t = g.theta_element();
        assert_eq!(g.form(&t, &t), CycScalar::from_int(2));
    }

    #[test]
    fn structure_constants_are_p_plus_one() {
        let g = LieAlgebra::new(CartanType::G, 2).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..g.num_positive() {
            for j in 0..g.num_positive() {
                for &(_, n) in g.bracket_basis(i, j) {
                    seen.insert(n.abs());
                }
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn json_round_trip() {
        let g = LieAlgebra::new(CartanType::A, 2).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.dim, 8);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn corruption_breaks_jacobi() {
        let mut g = LieAlgebra::new(CartanType::A, 2).unwrap();
        g.corrupt_structure_constant(0, 1, 2, 5);
        assert!(g.jacobi_violation().is_some());
    }
}
