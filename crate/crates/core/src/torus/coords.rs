//! Change of coordinates `T_B` for `B ∈ GL(n, Z)`.

use super::element::{CentralClass, Degree, TorusElement};
use crate::error::{Error, Result};
use crate::scalars::{CycScalar, ExactMatrix, Q};

/// The map `x(k) ↦ x(Bk)`, `t^r K_i ↦ Σ_j B_ji t^{Br} K_j`, `d_i ↦ Σ_j (B^{-1})_ij d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub b: Vec<Vec<i64>>,
    pub b_inv: Vec<Vec<i64>>,
}

fn to_i64(c: &CycScalar) -> Option<i64> {
    let r: Q = c.to_rational()?;
    r.is_integer().then(|| i64::try_from(r.to_integer()).ok()).flatten()
}

impl CoordinateChange {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if n == 0 || b.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("change of coordinates needs a square integer matrix".into()));
        }
        let m = ExactMatrix::from_i64(&b);
        let cols: Vec<Vec<CycScalar>> = (0..n)
            .map(|j| {
                let e: Vec<CycScalar> =
                    (0..n).map(|i| if i == j { CycScalar::one() } else { CycScalar::zero() }).collect();
                m.solve(&e)
            })
            .collect::<Result<_>>()
            .map_err(|_| Error::InvalidInput("matrix is singular".into()))?;
        let mut b_inv = vec![vec![0; n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                b_inv[i][j] = to_i64(c).ok_or_else(|| Error::InvalidInput("|det B| must be 1".into()))?;
            }
        }
        Ok(CoordinateChange { b, b_inv })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn apply_degree(&self, k: &[i64]) -> Degree {
        self.b.iter().map(|row| row.iter().zip(k).map(|(a, x)| a * x).sum()).collect()
    }

    /// Image of an element; central terms are renormalised for the lattice `Γ` given by `m`.
    pub fn apply(&self, a: &TorusElement, m: &[u32]) -> Result<TorusElement> {
        let n = self.n();
        if a.n() != n || m.len() != n {
            return Err(Error::Contract("change of coordinates applied in the wrong rank".into()));
        }
        let mut out = TorusElement::zero(n);
        for (k, x) in &a.loop_part {
            out.loop_part.insert(self.apply_degree(k), x.clone());
        }
        let mut central = CentralClass::zero();
        for (r, i, c) in a.central.terms() {
            let br = self.apply_degree(r);
            for j in 0..n {
                if self.b[j][i] != 0 {
                    central.add_term(&br, j, &c.scale_int(self.b[j][i]), m)?;
                }
            }
        }
        out.central = central;
        for (i, ai) in a.der.iter().enumerate() {
            for j in 0..n {
                out.der[j] += &ai.scale_int(self.b_inv[i][j]);
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n();
        let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| x[i][t] * y[t][j]).sum()).collect()).collect()
        };
        CoordinateChange { b: mul(&self.b, &other.b), b_inv: mul(&other.b_inv, &self.b_inv) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_checked() {
        assert!(CoordinateChange::new(vec![vec![2, 0], vec![0, 1]]).is_err());
        assert!(CoordinateChange::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        let c = CoordinateChange::new(vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(c.b_inv, vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(c.apply_degree(&[0, 1]), vec![1, 1]);
        assert_eq!(c.apply_degree(&[1, 0]), vec![1, 0]);
    }
}
