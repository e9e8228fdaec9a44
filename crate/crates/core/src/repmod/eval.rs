//! Evaluation modules `V(λ, b, k) = V(λ_1, b_1) ⊗ ⋯ ⊗ V(λ_k, b_k)` over the Lie torus.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::hw::HWModule;
use crate::error::{Error, Result};
use crate::liealg::Weight0;
use crate::scalars::matrix::{is_zero_vec, unit_vec};
use crate::scalars::{qstr, CycScalar, ExactMatrix, SparseMatrix, Subspace, Vector, Q};
use crate::torus::{box_degrees, Degree, Torus};

/// Largest exponent tried when certifying nilpotence, beyond `dim + 1`.
const NILPOTENCE_SLACK: usize = 1;

#[derive(Clone, Debug)]
pub struct EvalModule {
    pub factors: Vec<HWModule>,
    /// Evaluation points `b_i ∈ (C^×)^n`.
    pub points: Vec<Vec<CycScalar>>,
    pub m: Vec<u32>,
    dim: usize,
    /// `embedded[i][a]` is `I ⊗ ρ_i(x_a) ⊗ I` for Chevalley basis element `a`.
    embedded: Vec<Vec<SparseMatrix>>,
    weights: Vec<Vec<i64>>,
}

/// `b^k = ∏_j b_j^{k_j}`.
pub fn monomial(b: &[CycScalar], k: &[i64]) -> CycScalar {
    let mut acc = CycScalar::one();
    for (bj, &kj) in b.iter().zip(k) {
        if kj != 0 {
            acc = &acc * &bj.pow(kj).expect("evaluation points are nonzero");
        }
    }
    acc
}

impl EvalModule {
    pub fn new(torus: &Torus, lambdas: &[Vec<i64>], points: Vec<Vec<CycScalar>>) -> Result<Self> {
        let n = torus.n();
        if lambdas.len() != points.len() {
            return Err(Error::InvalidInput("need one evaluation point per highest weight".into()));
        }
        for (i, b) in points.iter().enumerate() {
            if b.len() != n {
                return Err(Error::InvalidInput(format!("point b_{} needs {n} coordinates", i + 1)));
            }
            if b.iter().any(|c| c.is_zero()) {
                return Err(Error::InvalidInput(format!("point b_{} has a zero coordinate", i + 1)));
            }
        }
        let factors = lambdas.iter().map(|l| HWModule::new(&torus.g, l)).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
        let dim: usize = dims.iter().product();
        let mut embedded = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let left: usize = dims[..i].iter().product();
            let right: usize = dims[i + 1..].iter().product();
            embedded.push(f.actions.iter().map(|a| a.embed(left, right)).collect());
        }
        let mut weights = vec![vec![0i64; torus.g.rank()]];
        for f in &factors {
            let mut next = Vec::with_capacity(weights.len() * f.dim());
            for w in &weights {
                for fw in &f.weights {
                    next.push(w.iter().zip(fw).map(|(a, b)| a + b).collect());
                }
            }
            weights = next;
        }
        Ok(EvalModule { factors, points, m: torus.m().to_vec(), dim, embedded, weights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// Dynkin labels (for `h`) of each tensor basis vector.
    pub fn dynkin_weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// `h_0̄`-weights of the tensor basis vectors.
    pub fn h0_weights(&self, torus: &Torus) -> Vec<Weight0> {
        self.weights.iter().map(|w| torus.grading.restrict_dynkin(w)).collect()
    }

    /// `m(b_i) = (b_{i1}^{m_1}, …, b_{in}^{m_n})`.
    pub fn m_of(&self, i: usize) -> Vec<CycScalar> {
        self.points[i].iter().zip(&self.m).map(|(b, &mi)| b.pow(mi as i64).expect("nonzero")).collect()
    }

    /// The separation predicate `m(b_i) ≠ m(b_j)` for all `i ≠ j`.
    pub fn separated(&self) -> bool {
        let ms: Vec<_> = (0..self.k()).map(|i| self.m_of(i)).collect();
        (0..ms.len()).all(|i| (i + 1..ms.len()).all(|j| ms[i] != ms[j]))
    }

    fn op_unchecked(&self, x: &[CycScalar], k: &[i64]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim, self.dim);
        for (i, emb) in self.embedded.iter().enumerate() {
            let c = monomial(&self.points[i], k);
            for (a, xa) in x.iter().enumerate() {
                if !xa.is_zero() {
                    out = out.add(&emb[a].scale(&(&c * xa)));
                }
            }
        }
        out
    }

    /// The operator of `x ⊗ t^k`: `Σ_i b_i^k ρ_i(x)`.
    pub fn op(&self, torus: &Torus, x: &[CycScalar], k: &[i64]) -> Result<SparseMatrix> {
        if k.len() != torus.n() || !torus.piece_space(k).contains(x) {
            return Err(Error::Contract(format!("x is not in the graded piece of degree {k:?}")));
        }
        Ok(self.op_unchecked(x, k))
    }

    /// `(x ⊗ f)·v` for a Laurent polynomial `f = Σ c_k t^k`.
    pub fn eval_action(&self, torus: &Torus, x: &[CycScalar], f: &[(Degree, CycScalar)], v: &[CycScalar]) -> Result<Vector> {
        let mut out = crate::scalars::matrix::zero_vec(self.dim);
        for (k, c) in f {
            let w = self.op(torus, x, k)?.apply(v);
            crate::scalars::matrix::vec_axpy(&mut out, c, &w);
        }
        Ok(out)
    }

    /// Operators of a basis of `g_k̄(α) ⊗ t^k` for every degree in the box and
    /// every weight `α` accepted by `filter`.
    pub fn generator_ops(&self, torus: &Torus, radius: i64, filter: impl Fn(&Weight0) -> bool) -> Vec<(Degree, Weight0, SparseMatrix)> {
        let mut out = Vec::new();
        for k in box_degrees(&vec![(-radius, radius); torus.n()]) {
            let ci = torus.grading.class_index(&k);
            for (alpha, vs) in &torus.grading.weight_spaces[ci] {
                if filter(alpha) {
                    for x in vs {
                        out.push((k.clone(), alpha.clone(), self.op_unchecked(x, &k)));
                    }
                }
            }
        }
        out
    }

    pub fn weight_table(&self, torus: &Torus) -> BTreeMap<Weight0, usize> {
        let mut t = BTreeMap::new();
        for w in self.h0_weights(torus) {
            *t.entry(w).or_insert(0) += 1;
        }
        t
    }

    pub fn check_integrable(&self, torus: &Torus, radius: i64) -> IntegrabilityReport {
        let real = self.generator_ops(torus, radius, |a| a.iter().any(|c| !c.is_zero()));
        let mut max_n = 0;
        let mut failure = None;
        for (k, alpha, op) in &real {
            let mut p = op.clone();
            let mut n = 1;
            while !p.is_zero() && n <= self.dim + NILPOTENCE_SLACK {
                p = p.mul(op);
                n += 1;
            }
            if !p.is_zero() {
                failure.get_or_insert_with(|| format!("root vector of weight {alpha:?} at degree {k:?} is not nilpotent"));
            }
            max_n = max_n.max(n);
        }
        let hw = self.h0_weights(torus);
        let h_ok = (0..torus.grading.rank0()).all(|j| {
            let h = self.op_unchecked(&torus.grading.h0[j], &vec![0; torus.n()]);
            (0..self.dim).all(|b| {
                let img = h.apply(&unit_vec(self.dim, b));
                img == crate::scalars::matrix::vec_scale(&unit_vec(self.dim, b), &CycScalar::from_q(hw[b][j].clone()))
            })
        });
        let table = self.weight_table(torus);
        let roots = torus.grading.roots_all();
        let mut integral = true;
        let mut weyl_invariant = true;
        for (mu, &mult) in &table {
            for a in &roots {
                let co = torus.grading.coroot(a);
                let v: Q = mu.iter().zip(&co).map(|(x, y)| x * y).sum();
                if !v.is_integer() {
                    integral = false;
                }
                let refl: Weight0 = mu.iter().zip(a).map(|(x, y)| x - &v * y).collect();
                if table.get(&refl).copied().unwrap_or(0) != mult {
                    weyl_invariant = false;
                }
            }
        }
        IntegrabilityReport {
            integrable: failure.is_none() && h_ok,
            weight_decomposition: h_ok,
            max_nilpotency: max_n,
            root_vectors_checked: real.len(),
            integral_coroot_values: integral,
            weyl_invariant,
            failure,
        }
    }

    /// Irreducibility over `LT`, escalating the generator degree radius
    /// `R = 1, 2, 4, …` until the verdict data repeats twice.
    pub fn check_irreducible(&self, torus: &Torus, max_radius: i64) -> IrreducibilityReport {
        let mut prev: Option<(usize, usize, bool)> = None;
        let mut stable = 0;
        let mut r = 1;
        let mut last = None;
        while r <= max_radius.max(1) {
            let rep = self.irreducible_at(torus, r);
            let sig = (rep.hw_dim, rep.generated_dim, rep.irreducible);
            if prev.as_ref() == Some(&sig) {
                stable += 1;
            } else {
                stable = 0;
            }
            prev = Some(sig);
            last = Some(rep);
            if stable >= 1 {
                break;
            }
            r *= 2;
        }
        let mut rep = last.expect("at least one round");
        rep.stabilized = stable >= 1;
        rep
    }

    /// Irreducibility with generators of degree `|k_i| ≤ radius`.
    ///
    /// Every nonzero submodule contains a nonzero vector killed by all
    /// positive real root vectors, so the module is irreducible exactly when
    /// that joint kernel `V⁺` lies in one weight space, is an absolutely
    /// irreducible module for the weight-zero operators, and generates `V`.
    pub fn irreducible_at(&self, torus: &Torus, radius: i64) -> IrreducibilityReport {
        let d = self.dim;
        let positive = self.generator_ops(torus, radius, |a| torus.grading.is_positive(a));
        let zero = self.generator_ops(torus, radius, |a| a.iter().all(|c| c.is_zero()));
        let all = self.generator_ops(torus, radius, |_| true);
        let hw = self.h0_weights(torus);
        let mut by_weight: BTreeMap<&Weight0, Vec<usize>> = BTreeMap::new();
        for (b, w) in hw.iter().enumerate() {
            by_weight.entry(w).or_default().push(b);
        }
        let mut vplus: Vec<Vector> = Vec::new();
        let mut vplus_weights = Vec::new();
        for (w, cols) in &by_weight {
            let mut rows: Vec<Vector> = Vec::new();
            for (_, _, op) in &positive {
                for i in 0..d {
                    let row: Vector = cols.iter().map(|&c| op.get(i, c)).collect();
                    if !is_zero_vec(&row) {
                        rows.push(row);
                    }
                }
            }
            let ker = if rows.is_empty() {
                (0..cols.len()).map(|i| unit_vec(cols.len(), i)).collect()
            } else {
                ExactMatrix::from_rows(rows).expect("rectangular").kernel()
            };
            for kv in ker {
                let mut v = crate::scalars::matrix::zero_vec(d);
                for (c, x) in cols.iter().zip(kv) {
                    v[*c] = x;
                }
                vplus.push(v);
                vplus_weights.push((*w).clone());
            }
        }
        let hw_dim = vplus.len();
        let mut weights_seen = vplus_weights.clone();
        weights_seen.dedup();
        let single_weight = weights_seen.len() == 1;

        let space = Subspace::from_vectors(d, &vplus);
        let burnside_dim = if single_weight {
            let gens: Vec<ExactMatrix> = zero
                .iter()
                .map(|(_, _, op)| {
                    let cols: Vec<Vector> = space
                        .basis()
                        .iter()
                        .map(|v| space.coords(&op.apply(v)).unwrap_or_else(|| vec![CycScalar::zero(); hw_dim]))
                        .collect();
                    ExactMatrix::from_columns(hw_dim, &cols)
                })
                .collect();
            algebra_dimension(hw_dim, &gens)
        } else {
            0
        };
        let absolutely_irreducible = single_weight && burnside_dim == hw_dim * hw_dim;
        let ops: Vec<&SparseMatrix> = all.iter().map(|(_, _, op)| op).collect();
        let generated = spin(d, &vplus, &ops);
        let irreducible = d > 0 && absolutely_irreducible && generated.is_full();
        IrreducibilityReport {
            irreducible,
            separated: self.separated(),
            radius,
            hw_dim,
            hw_single_weight: single_weight,
            burnside_dim,
            generated_dim: generated.dim(),
            dim: d,
            stabilized: false,
        }
    }

    /// Span of the highest weight vectors `v₊ = v_1 ⊗ ⋯ ⊗ v_k`.
    pub fn top_vector(&self) -> Vector {
        unit_vec(self.dim, 0)
    }

    pub fn to_json(&self, torus: &Torus) -> EvalModuleJson {
        EvalModuleJson {
            dim: self.dim,
            highest_weights: self.factors.iter().map(|f| f.highest.clone()).collect(),
            points: self.points.clone(),
            separated: self.separated(),
            weights: self
                .weight_table(torus)
                .into_iter()
                .map(|(w, mlt)| WeightEntry { weight: w, mult: mlt })
                .collect(),
        }
    }
}

/// Closure of `start` under the operators.
pub fn spin(dim: usize, start: &[Vector], ops: &[&SparseMatrix]) -> Subspace {
    let mut space = Subspace::new(dim);
    let mut queue: Vec<Vector> = Vec::new();
    for v in start {
        if space.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let w = op.apply(&v);
            if !space.is_full() && space.insert(&w) {
                queue.push(w);
            }
        }
    }
    space
}

/// Dimension of the unital associative algebra generated by the matrices.
pub fn algebra_dimension(n: usize, gens: &[ExactMatrix]) -> usize {
    if n == 0 {
        return 0;
    }
    let flat = |m: &ExactMatrix| -> Vector { (0..n).flat_map(|i| m.row(i).to_vec()).collect() };
    let mut span = Subspace::new(n * n);
    let mut queue = vec![ExactMatrix::identity(n)];
    span.insert(&flat(&queue[0]));
    while let Some(a) = queue.pop() {
        for g in gens {
            let p = g.mul(&a).expect("square matrices");
            if span.insert(&flat(&p)) {
                queue.push(p);
            }
            if span.is_full() {
                return n * n;
            }
        }
    }
    span.dim()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    pub weight_decomposition: bool,
    pub max_nilpotency: usize,
    pub root_vectors_checked: usize,
    pub integral_coroot_values: bool,
    pub weyl_invariant: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    /// The separation predicate `m(b_i) ≠ m(b_j)`.
    pub separated: bool,
    pub radius: i64,
    pub hw_dim: usize,
    pub hw_single_weight: bool,
    pub burnside_dim: usize,
    pub generated_dim: usize,
    pub dim: usize,
    pub stabilized: bool,
}

impl IrreducibilityReport {
    pub fn agrees_with_separation(&self) -> bool {
        self.irreducible == self.separated
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    #[serde(serialize_with = "qstr::vec")]
    pub weight: Weight0,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalModuleJson {
    pub dim: usize,
    pub highest_weights: Vec<Vec<i64>>,
    pub points: Vec<Vec<CycScalar>>,
    pub separated: bool,
    pub weights: Vec<WeightEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{CartanType, SigmaSpec};

    fn sl2() -> Torus {
        Torus::from_specs(CartanType::A, 1, &[SigmaSpec::Identity]).unwrap()
    }

    fn pts(v: &[i64]) -> Vec<Vec<CycScalar>> {
        v.iter().map(|&x| vec![CycScalar::from_int(x)]).collect()
    }

    #[test]
    fn h_t_on_top_vector() {
        let t = sl2();
        let m = EvalModule::new(&t, &[vec![1]], pts(&[2])).unwrap();
        let h = t.g.basis_vector(t.g.h_index(0));
        let w = m.eval_action(&t, &h, &[(vec![1], CycScalar::one())], &m.top_vector()).unwrap();
        assert_eq!(w, crate::scalars::matrix::vec_scale(&m.top_vector(), &CycScalar::from_int(2)));
    }

    #[test]
    fn opposite_points_cancel_on_top() {
        let t = sl2();
        let m = EvalModule::new(&t, &[vec![1], vec![1]], pts(&[1, -1])).unwrap();
        let h = t.g.basis_vector(t.g.h_index(0));
        let w = m.eval_action(&t, &h, &[(vec![1], CycScalar::one())], &m.top_vector()).unwrap();
        assert!(is_zero_vec(&w));
    }

    #[test]
    fn irreducibility_examples() {
        let t = sl2();
        let one = EvalModule::new(&t, &[vec![1]], pts(&[5])).unwrap();
        assert!(one.check_irreducible(&t, 8).irreducible);
        let same = EvalModule::new(&t, &[vec![1], vec![1]], pts(&[1, 1])).unwrap();
        let r = same.check_irreducible(&t, 8);
        assert!(!r.irreducible && r.agrees_with_separation());
        let opp = EvalModule::new(&t, &[vec![1], vec![1]], pts(&[1, -1])).unwrap();
        let r = opp.check_irreducible(&t, 8);
        assert!(r.irreducible && r.agrees_with_separation() && r.stabilized);
    }

    #[test]
    fn finite_modules_are_integrable() {
        let t = sl2();
        let m = EvalModule::new(&t, &[vec![2]], pts(&[3])).unwrap();
        let rep = m.check_integrable(&t, 2);
        assert!(rep.integrable && rep.weyl_invariant && rep.integral_coroot_values);
        assert_eq!(rep.max_nilpotency, 3);
    }
}
