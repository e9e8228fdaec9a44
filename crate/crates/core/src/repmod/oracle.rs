//! Weyl dimension formula and Freudenthal multiplicities.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::liealg::RootSystem;
use crate::scalars::{q, Q};

/// `∏_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> u64 {
    let rho = rs.rho();
    let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut acc = q(1);
    for root in &rs.positive {
        let a = rs.root_to_weight(root);
        acc = acc * rs.weight_inner(&lr, &a) / rs.weight_inner(&rho, &a);
    }
    assert!(acc.is_integer(), "Weyl dimension must be an integer");
    u64::try_from(acc.to_integer()).expect("dimension fits in u64")
}

/// Multiplicities of weights of `V(λ)` by Freudenthal's recursion.
pub struct Freudenthal<'a> {
    rs: &'a RootSystem,
    lambda: Vec<i64>,
    pos: Vec<Vec<i64>>,
    norm_top: Q,
    memo: HashMap<Vec<i64>, u64>,
}

impl<'a> Freudenthal<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &[i64]) -> Self {
        let pos = rs.positive.iter().map(|r| rs.root_to_weight(r)).collect();
        let lr: Vec<i64> = lambda.iter().zip(rs.rho()).map(|(a, b)| a + b).collect();
        let norm_top = rs.weight_inner(&lr, &lr);
        Freudenthal { rs, lambda: lambda.to_vec(), pos, norm_top, memo: HashMap::new() }
    }

    fn below_top(&self, mu: &[i64]) -> bool {
        let diff: Vec<i64> = self.lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.rs.weight_to_root_coords(&diff).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    fn dominant(&self, mu: &[i64]) -> Vec<i64> {
        let mut w = mu.to_vec();
        while let Some(i) = w.iter().position(|&x| x < 0) {
            let s = w[i];
            let a = &self.pos[i];
            for (x, y) in w.iter_mut().zip(a) {
                *x -= s * y;
            }
        }
        w
    }

    pub fn multiplicity(&mut self, mu: &[i64]) -> u64 {
        let mu = self.dominant(mu);
        if let Some(&m) = self.memo.get(&mu) {
            return m;
        }
        let m = if mu == self.lambda {
            1
        } else if !self.below_top(&mu) {
            0
        } else {
            let mr: Vec<i64> = mu.iter().zip(self.rs.rho()).map(|(a, b)| a + b).collect();
            let denom = &self.norm_top - self.rs.weight_inner(&mr, &mr);
            let mut num = Q::zero();
            for a in self.pos.clone() {
                let mut k = 1;
                loop {
                    let shifted: Vec<i64> = mu.iter().zip(&a).map(|(x, y)| x + k * y).collect();
                    if !self.below_top(&shifted) {
                        break;
                    }
                    let mult = self.multiplicity(&shifted);
                    if mult > 0 {
                        num += q(mult as i64) * self.rs.weight_inner(&shifted, &a);
                    }
                    k += 1;
                }
            }
            let v = q(2) * num / denom;
            assert!(v.is_integer() && !v.is_negative(), "Freudenthal value must be a natural number");
            u64::try_from(v.to_integer()).expect("multiplicity fits")
        };
        self.memo.insert(mu, m);
        m
    }
}
