//! Finite root systems in Bourbaki numbering.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{q, q_frac, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            other => return Err(Error::InvalidInput(format!("unknown Cartan type '{other}'"))),
        })
    }

    pub fn letter(self) -> &'static str {
        match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// A root system with simple roots `α_1..α_l`, roots in simple-root
/// coordinates and the symmetric form scaled so that long roots have
/// squared length 2.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ctype: CartanType,
    pub rank: usize,
    /// `(α_i, α_j)`.
    pub form: Vec<Vec<Q>>,
    /// `a_ij = ⟨α_j, α_i^∨⟩ = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots ordered by height, simple roots first in index order.
    pub positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn simple_form(ctype: CartanType, l: usize) -> Vec<Vec<Q>> {
    let mut b = vec![vec![Q::zero(); l]; l];
    let link = |b: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        b[i - 1][j - 1] = v.clone();
        b[j - 1][i - 1] = v;
    };
    let mut lengths = vec![q(2); l];
    match ctype {
        CartanType::A => (1..l).for_each(|i| link(&mut b, i, i + 1, q(-1))),
        CartanType::B => {
            lengths[l - 1] = q(1);
            (1..l).for_each(|i| link(&mut b, i, i + 1, q(-1)));
        }
        CartanType::C => {
            for len in lengths.iter_mut().take(l - 1) {
                *len = q(1);
            }
            (1..l - 1).for_each(|i| link(&mut b, i, i + 1, q_frac(-1, 2)));
            link(&mut b, l - 1, l, q(-1));
        }
        CartanType::D => {
            (1..l - 1).for_each(|i| link(&mut b, i, i + 1, q(-1)));
            link(&mut b, l - 2, l, q(-1));
        }
        CartanType::E => {
            link(&mut b, 1, 3, q(-1));
            link(&mut b, 2, 4, q(-1));
            (3..l).for_each(|i| link(&mut b, i, i + 1, q(-1)));
        }
        CartanType::F => {
            lengths[2] = q(1);
            lengths[3] = q(1);
            link(&mut b, 1, 2, q(-1));
            link(&mut b, 2, 3, q(-1));
            link(&mut b, 3, 4, q_frac(-1, 2));
        }
        CartanType::G => {
            lengths[0] = q_frac(2, 3);
            link(&mut b, 1, 2, q(-1));
        }
    }
    for (i, len) in lengths.into_iter().enumerate() {
        b[i][i] = len;
    }
    b
}

impl RootSystem {
    pub fn new(ctype: CartanType, rank: usize) -> Result<Self> {
        if !ctype.valid_rank(rank) {
            return Err(Error::InvalidInput(format!("no simple Lie algebra of type {ctype}{rank}")));
        }
        let form = simple_form(ctype, rank);
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = q(2) * &form[i][j] / &form[i][i];
                        assert!(v.is_integer(), "non-integral Cartan entry");
                        v.to_integer().try_into().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let mut rs = RootSystem { ctype, rank, form, cartan, positive: Vec::new(), index: HashMap::new() };
        rs.generate_positive();
        Ok(rs)
    }

    fn generate_positive(&mut self) {
        let l = self.rank;
        let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..l)
            .map(|i| {
                let mut v = vec![0; l];
                v[i] = 1;
                v
            })
            .collect()];
        let mut all: std::collections::HashSet<Vec<i64>> = layers[0].iter().cloned().collect();
        loop {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in layers.last().unwrap() {
                for i in 0..l {
                    // q = largest k with β − kα_i a root
                    let mut qn = 0;
                    loop {
                        let mut g = beta.clone();
                        g[i] -= qn + 1;
                        if all.contains(&g) {
                            qn += 1;
                        } else {
                            break;
                        }
                    }
                    let pn = qn - self.pair_coroot(beta, i);
                    if pn > 0 {
                        let mut g = beta.clone();
                        g[i] += 1;
                        if !all.contains(&g) && !next.contains(&g) {
                            next.push(g);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layers.push(next);
        }
        let mut pos: Vec<Vec<i64>> = layers.into_iter().flatten().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.index = pos.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        self.positive = pos;
    }

    /// `⟨β, α_i^∨⟩` for `β` in simple-root coordinates.
    pub fn pair_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, a)| b * a).sum()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    acc += &self.form[i][j] * q(a[i] * b[j]);
                }
            }
        }
        acc
    }

    pub fn norm(&self, a: &[i64]) -> Q {
        self.inner(a, a)
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Index of a positive root.
    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        if self.positive_index(root).is_some() {
            return true;
        }
        let neg: Vec<i64> = root.iter().map(|x| -x).collect();
        self.positive_index(&neg).is_some()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().expect("nonempty root system")
    }

    pub fn is_long(&self, root: &[i64]) -> bool {
        self.norm(root) == q(2)
    }

    /// Squared length of short roots; equals 2 for simply-laced types.
    pub fn short_norm(&self) -> Q {
        (0..self.rank).map(|i| self.form[i][i].clone()).min().expect("rank >= 1")
    }

    /// `⟨λ, α^∨⟩` for `λ` in fundamental-weight coordinates and a root `α`.
    pub fn weight_pair_root(&self, lambda: &[i64], root: &[i64]) -> Q {
        // α^∨ = Σ a_i (α_i,α_i)/(α,α) α_i^∨
        let n = self.norm(root);
        let mut acc = Q::zero();
        for i in 0..self.rank {
            acc += q(root[i] * lambda[i]) * &self.form[i][i] / &n;
        }
        acc
    }

    /// Coordinates of `α^∨` in the basis of simple coroots.
    pub fn coroot_coords(&self, root: &[i64]) -> Vec<i64> {
        let n = self.norm(root);
        (0..self.rank)
            .map(|i| {
                let c = q(root[i]) * &self.form[i][i] / &n;
                assert!(c.is_integer(), "coroot not in the coroot lattice");
                c.to_integer().try_into().expect("small coroot")
            })
            .collect()
    }

    /// Inner product of weights given in fundamental-weight coordinates.
    pub fn weight_inner(&self, a: &[i64], b: &[i64]) -> Q {
        // ω_i = Σ_j (C^{-1})... use (ω_i, α_j^∨) = δ_ij, i.e. (ω_i, α_j) = δ_ij (α_j,α_j)/2
        let ra = self.weight_to_root_coords(a);
        let mut acc = Q::zero();
        for j in 0..self.rank {
            acc += &ra[j] * q(b[j]) * &self.form[j][j] / q(2);
        }
        acc
    }

    /// Expresses a weight given by Dynkin labels in simple-root coordinates.
    pub fn weight_to_root_coords(&self, lambda: &[i64]) -> Vec<Q> {
        // solve Σ_j c_j a_ij = λ_i, i.e. C c = λ with C_ij = a_ij
        let l = self.rank;
        let mut m: Vec<Vec<Q>> = (0..l)
            .map(|i| {
                let mut row: Vec<Q> = (0..l).map(|j| q(self.cartan[i][j])).collect();
                row.push(q(lambda[i]));
                row
            })
            .collect();
        for col in 0..l {
            let p = (col..l).find(|&r| !m[r][col].is_zero()).expect("invertible Cartan matrix");
            m.swap(col, p);
            let inv = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &inv;
            }
            for r in 0..l {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pr = m[col].clone();
                    for (a, b) in m[r].iter_mut().zip(&pr) {
                        *a -= &f * b;
                    }
                }
            }
        }
        m.into_iter().map(|r| r[l].clone()).collect()
    }

    /// Dynkin labels of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.pair_coroot(root, i)).collect()
    }

    /// Sum of the positive roots halved, as Dynkin labels (all ones).
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Number of roots predicted by the classification.
    pub fn expected_num_roots(ctype: CartanType, l: usize) -> usize {
        match ctype {
            CartanType::A => l * (l + 1),
            CartanType::B | CartanType::C => 2 * l * l,
            CartanType::D => 2 * l * (l - 1),
            CartanType::E => match l {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            CartanType::F => 48,
            CartanType::G => 12,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank).all(|i| self.form[i][i] == q(2))
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ctype, self.rank)
    }
}

/// True when a weight (Dynkin labels) is dominant integral.
pub fn is_dominant(lambda: &[i64]) -> bool {
    lambda.iter().all(|&x| x >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_match_classification() {
        let cases = [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::A, 3),
            (CartanType::B, 2),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::D, 5),
            (CartanType::E, 6),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ];
        for (t, l) in cases {
            let rs = RootSystem::new(t, l).unwrap();
            assert_eq!(rs.num_roots(), RootSystem::expected_num_roots(t, l), "{t}{l}");
            assert_eq!(rs.norm(rs.highest_root()), q(2), "highest root of {t}{l} is long");
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::G, 3).is_err());
        assert!(RootSystem::new(CartanType::A, 0).is_err());
    }

    #[test]
    fn g2_data() {
        let rs = RootSystem::new(CartanType::G, 2).unwrap();
        assert_eq!(rs.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(rs.highest_root(), &[3, 2]);
        assert_eq!(rs.short_norm(), q_frac(2, 3));
    }

    #[test]
    fn b_and_c_short_roots() {
        let b = RootSystem::new(CartanType::B, 3).unwrap();
        let c = RootSystem::new(CartanType::C, 3).unwrap();
        let count_short = |rs: &RootSystem| rs.positive.iter().filter(|r| !rs.is_long(r)).count();
        assert_eq!(count_short(&b), 3);
        assert_eq!(count_short(&c), 6);
    }

    #[test]
    fn weight_coordinates() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        // θ = ω1 + ω2
        assert_eq!(rs.root_to_weight(&[1, 1]), vec![1, 1]);
        assert_eq!(rs.weight_to_root_coords(&[1, 1]), vec![q(1), q(1)]);
        assert_eq!(rs.weight_inner(&[1, 0], &[1, 0]), q_frac(2, 3));
    }
}
