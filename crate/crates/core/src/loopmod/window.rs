//! The shifted loop module `(V̄ ⊗ A, ρ(α))` restricted to a box of degrees.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Serialize;

use super::decompose::Verdict;
use crate::error::{Error, Result};
use crate::liealg::Weight0;
use crate::repmod::EvalModule;
use crate::scalars::matrix::{is_zero_vec, unit_vec, vec_axpy, zero_vec};
use crate::scalars::{CycScalar, ExactMatrix, SparseMatrix, Subspace, Vector};
use crate::torus::{box_degrees, Degree, Torus, TorusElement};

/// A graded subspace `⊕_s C_s ⊗ t^s` of the window, holding nonzero parts only.
#[derive(Clone, Debug, Default)]
pub struct GradedSubspace {
    pub parts: BTreeMap<Degree, Subspace>,
}

impl GradedSubspace {
    pub fn dim_at(&self, s: &[i64]) -> usize {
        self.parts.get(s).map_or(0, |p| p.dim())
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().all(|(k, p)| other.parts.get(k).is_some_and(|q| q.same_as(p)))
    }

    pub fn profile(&self) -> BTreeMap<Degree, usize> {
        self.parts.iter().map(|(k, p)| (k.clone(), p.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.values().map(|p| p.dim()).sum()
    }
}

/// Generator operators `X(r)` of one degree, tagged with their `h_0̄`-weight.
pub type GeneratorOps = Vec<(Weight0, SparseMatrix)>;

#[derive(Debug)]
pub struct LoopWindow<'a> {
    pub torus: &'a Torus,
    pub module: &'a EvalModule,
    /// The shift `α`: `d_i` acts on `v̄ ⊗ t^s` by `α_i + s_i`.
    pub alpha: Vec<CycScalar>,
    pub bounds: Vec<(i64, i64)>,
    pub degrees: Vec<Degree>,
    /// Period of `r ↦ X(r)` per axis, when every evaluation point is a root of unity.
    pub period: Option<Vec<i64>>,
    store: Vec<GeneratorOps>,
    gens: BTreeMap<Degree, usize>,
}

/// Period per axis of `r ↦ (b_i^r, r mod m)`, if all `b_ij` are roots of unity.
pub fn generator_period(module: &EvalModule, m: &[u32]) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(m.len());
    for (j, &mj) in m.iter().enumerate() {
        let mut p = mj as i64;
        for b in &module.points {
            let o = b[j].multiplicative_order()? as i64;
            p = p.lcm(&o);
        }
        out.push(p);
    }
    Some(out)
}

/// Joint kernel in `K^d` of the given operators.
pub fn joint_kernel<'b>(d: usize, ops: impl IntoIterator<Item = &'b SparseMatrix>) -> Subspace {
    let mut rowspace = Subspace::new(d);
    for op in ops {
        for i in 0..d {
            if rowspace.is_full() {
                return Subspace::new(d);
            }
            let row: Vector = (0..d).map(|j| op.get(i, j)).collect();
            if !is_zero_vec(&row) {
                rowspace.insert(&row);
            }
        }
    }
    if rowspace.dim() == 0 {
        return Subspace::full(d);
    }
    let m = ExactMatrix::from_rows(rowspace.basis().to_vec()).expect("rectangular");
    Subspace::from_vectors(d, &m.kernel())
}

impl<'a> LoopWindow<'a> {
    pub fn new(torus: &'a Torus, module: &'a EvalModule, alpha: Vec<CycScalar>, bounds: Vec<(i64, i64)>) -> Result<Self> {
        let n = torus.n();
        if bounds.len() != n || alpha.len() != n {
            return Err(Error::InvalidInput(format!("box and shift need {n} coordinates")));
        }
        if bounds.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidInput("empty box".into()));
        }
        let degrees = box_degrees(&bounds);
        let period = generator_period(module, torus.m());
        let diff: Vec<(i64, i64)> = bounds.iter().map(|(lo, hi)| (lo - hi, hi - lo)).collect();
        let mut store: Vec<GeneratorOps> = Vec::new();
        let mut by_residue: HashMap<Degree, usize> = HashMap::new();
        let mut gens = BTreeMap::new();
        for r in box_degrees(&diff) {
            let key = match &period {
                Some(p) => r.iter().zip(p).map(|(x, q)| x.rem_euclid(*q)).collect(),
                None => r.clone(),
            };
            let idx = *by_residue.entry(key).or_insert_with(|| {
                let ci = torus.grading.class_index(&r);
                let mut ops = Vec::new();
                for (w, vs) in &torus.grading.weight_spaces[ci] {
                    for x in vs {
                        let op = module.op(torus, x, &r).expect("weight space vectors lie in their piece");
                        if !op.is_zero() {
                            ops.push((w.clone(), op));
                        }
                    }
                }
                store.push(ops);
                store.len() - 1
            });
            gens.insert(r, idx);
        }
        Ok(LoopWindow { torus, module, alpha, bounds, degrees, period, store, gens })
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn vdim(&self) -> usize {
        self.module.dim()
    }

    pub fn in_box(&self, s: &[i64]) -> bool {
        s.iter().zip(&self.bounds).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Degrees at distance at least `margin` from the boundary on every axis.
    pub fn is_interior(&self, s: &[i64], margin: i64) -> bool {
        s.iter().zip(&self.bounds).all(|(x, (lo, hi))| lo + margin <= *x && *x <= hi - margin)
    }

    /// Operators `X(r)` of a basis of `g_r̄ ⊗ t^r`, for `r` with `s + r` in the box for some `s`.
    pub fn generators(&self, r: &[i64]) -> &[(Weight0, SparseMatrix)] {
        self.gens.get(r).map_or(&[], |&i| &self.store[i])
    }

    /// `d_i` eigenvalue on `v̄ ⊗ t^s`.
    pub fn d_eigenvalue(&self, i: usize, s: &[i64]) -> CycScalar {
        &self.alpha[i] + &CycScalar::from_int(s[i])
    }

    /// Submodule generated by the given vectors, truncated to the box.
    pub fn closure(&self, start: &[(Degree, Vector)]) -> GradedSubspace {
        let d = self.vdim();
        let mut out = GradedSubspace::default();
        let mut queue: Vec<(Degree, Vector)> = Vec::new();
        for (s, v) in start {
            if self.in_box(s) && out.parts.entry(s.clone()).or_insert_with(|| Subspace::new(d)).insert(v) {
                queue.push((s.clone(), v.clone()));
            }
        }
        while let Some((s, v)) = queue.pop() {
            for t in &self.degrees {
                if out.parts.get(t).is_some_and(|p| p.is_full()) {
                    continue;
                }
                let r: Degree = t.iter().zip(&s).map(|(a, b)| a - b).collect();
                for (_, op) in self.generators(&r) {
                    let w = op.apply(&v);
                    if is_zero_vec(&w) {
                        continue;
                    }
                    let part = out.parts.entry(t.clone()).or_insert_with(|| Subspace::new(d));
                    if part.insert(&w) {
                        queue.push((t.clone(), w));
                    }
                }
            }
        }
        out.parts.retain(|_, p| p.dim() > 0);
        out
    }

    /// `V̄⁺`: joint kernel in `V̄` of `X(r)` over positive real root vectors of all degrees.
    pub fn vbar_plus(&self) -> Subspace {
        let mut seen = std::collections::BTreeSet::new();
        let ops = self
            .gens
            .values()
            .filter(|&&idx| seen.insert(idx))
            .flat_map(|&idx| self.store[idx].iter())
            .filter(|(w, _)| self.torus.grading.is_positive(w))
            .map(|(_, op)| op);
        joint_kernel(self.vdim(), ops)
    }

    /// Highest weight space per degree: the kernel of the positive real root
    /// vectors whose target degree stays in the box. The flag marks degrees
    /// where this kernel is larger than `V̄⁺`, i.e. where escaping generators
    /// left it undetermined.
    pub fn highest_weight_space(&self) -> BTreeMap<Degree, (Subspace, bool)> {
        let full_plus = self.vbar_plus();
        let mut out = BTreeMap::new();
        for s in &self.degrees {
            let ops = self
                .degrees
                .iter()
                .flat_map(|t| {
                    let r: Degree = t.iter().zip(s).map(|(a, b)| a - b).collect();
                    self.generators(&r).iter()
                })
                .filter(|(w, _)| self.torus.grading.is_positive(w))
                .map(|(_, op)| op);
            let sub = joint_kernel(self.vdim(), ops);
            let boundary = !sub.same_as(&full_plus);
            out.insert(s.clone(), (sub, boundary));
        }
        out
    }

    /// `ρ(a)` applied to `v̄ ⊗ t^s`; returns the image by degree and whether any term left the box.
    pub fn apply_element(&self, a: &TorusElement, s: &[i64], v: &[CycScalar]) -> (BTreeMap<Degree, Vector>, bool) {
        let mut out: BTreeMap<Degree, Vector> = BTreeMap::new();
        let mut escaped = false;
        for (k, x) in &a.loop_part {
            let t: Degree = s.iter().zip(k).map(|(p, q)| p + q).collect();
            let w = self.module.op(self.torus, x, k).expect("valid element").apply(v);
            if is_zero_vec(&w) {
                continue;
            }
            if !self.in_box(&t) {
                escaped = true;
                continue;
            }
            let e = out.entry(t).or_insert_with(|| zero_vec(v.len()));
            vec_axpy(e, &CycScalar::one(), &w);
        }
        // central elements act by zero
        let mut dsum = CycScalar::zero();
        for (i, c) in a.der.iter().enumerate() {
            if !c.is_zero() {
                dsum += &(c * &self.d_eigenvalue(i, s));
            }
        }
        if !dsum.is_zero() {
            let e = out.entry(s.to_vec()).or_insert_with(|| zero_vec(v.len()));
            vec_axpy(e, &dsum, v);
        }
        out.retain(|_, w| !is_zero_vec(w));
        (out, escaped)
    }

    /// Checks that `K_i` and all `t^r K_i` act as zero and that
    /// `ρ[a,b] = [ρa, ρb]` on sampled elements of `LT̃` with central output
    /// sent to zero. The relation is probed on the interior degree closest
    /// to the origin.
    pub fn check_central_trivial(&self, sample_radius: i64, margin: i64) -> CentralReport {
        let d = self.vdim();
        let mut central_zero = true;
        let mut central_checked = 0;
        for r in box_degrees(&self.bounds) {
            for c in self.torus.central_basis(&r) {
                for s in &self.degrees {
                    for b in 0..d {
                        central_checked += 1;
                        if !self.apply_element(&c, s, &unit_vec(d, b)).0.is_empty() {
                            central_zero = false;
                        }
                    }
                }
            }
        }
        let probe = self
            .degrees
            .iter()
            .filter(|s| self.is_interior(s, margin))
            .min_by_key(|s| (s.iter().map(|x| x.abs()).sum::<i64>(), (*s).clone()));
        let Some(probe) = probe.cloned() else {
            let failure = Some("no interior degree to probe".to_string());
            return CentralReport { central_zero, central_checked, probe: None, pairs_checked: 0, homomorphism: false, failure };
        };
        let basis = self.torus.sample_basis(sample_radius);
        let rhos: Vec<Rho> = basis.iter().map(|a| self.rho(a)).collect();
        let mut pairs = 0;
        let mut failure = None;
        for (ia, a) in basis.iter().enumerate() {
            for (ib, b) in basis.iter().enumerate().skip(ia + 1) {
                let ab = self.rho(&self.torus.bracket(a, b).expect("sampled elements are valid"));
                for i in 0..d {
                    let start = BTreeMap::from([(probe.clone(), unit_vec(d, i))]);
                    let (bv, e1) = self.apply_rho(&rhos[ib], &start);
                    let (abv, e2) = self.apply_rho(&rhos[ia], &bv);
                    let (av, e3) = self.apply_rho(&rhos[ia], &start);
                    let (bav, e4) = self.apply_rho(&rhos[ib], &av);
                    let (lhs, e5) = self.apply_rho(&ab, &start);
                    if e1 || e2 || e3 || e4 || e5 {
                        continue;
                    }
                    pairs += 1;
                    let mut rhs = abv;
                    for (t, w) in bav {
                        let e = rhs.entry(t).or_insert_with(|| zero_vec(d));
                        vec_axpy(e, &CycScalar::from_int(-1), &w);
                    }
                    rhs.retain(|_, w| !is_zero_vec(w));
                    if lhs != rhs && failure.is_none() {
                        failure = Some(format!("bracket relation fails for basis pair ({ia}, {ib}) at degree {probe:?}"));
                    }
                }
            }
        }
        CentralReport { central_zero, central_checked, probe: Some(probe), pairs_checked: pairs, homomorphism: failure.is_none(), failure }
    }

    fn rho(&self, a: &TorusElement) -> Rho {
        let loops = a
            .loop_part
            .iter()
            .map(|(k, x)| (k.clone(), self.module.op(self.torus, x, k).expect("valid element")))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Rho { loops, der: a.der.clone() }
    }

    fn apply_rho(&self, a: &Rho, input: &BTreeMap<Degree, Vector>) -> (BTreeMap<Degree, Vector>, bool) {
        let mut out: BTreeMap<Degree, Vector> = BTreeMap::new();
        let mut escaped = false;
        for (s, v) in input {
            for (k, op) in &a.loops {
                let w = op.apply(v);
                if is_zero_vec(&w) {
                    continue;
                }
                let t: Degree = s.iter().zip(k).map(|(p, q)| p + q).collect();
                if !self.in_box(&t) {
                    escaped = true;
                    continue;
                }
                let e = out.entry(t).or_insert_with(|| zero_vec(v.len()));
                vec_axpy(e, &CycScalar::one(), &w);
            }
            let mut dsum = CycScalar::zero();
            for (i, c) in a.der.iter().enumerate() {
                if !c.is_zero() {
                    dsum += &(c * &self.d_eigenvalue(i, s));
                }
            }
            if !dsum.is_zero() {
                let e = out.entry(s.clone()).or_insert_with(|| zero_vec(v.len()));
                vec_axpy(e, &dsum, v);
            }
        }
        out.retain(|_, w| !is_zero_vec(w));
        (out, escaped)
    }

    /// `dim (C_s ∩ V̄_μ)` for every degree and `h_0̄`-weight of a graded subspace.
    pub fn weight_table(&self, c: &GradedSubspace) -> BTreeMap<(Weight0, Degree), usize> {
        let hw = self.module.h0_weights(self.torus);
        let mut by_weight: BTreeMap<&Weight0, Vec<usize>> = BTreeMap::new();
        for (b, w) in hw.iter().enumerate() {
            by_weight.entry(w).or_default().push(b);
        }
        let mut out = BTreeMap::new();
        for (s, part) in &c.parts {
            for (w, cols) in &by_weight {
                let rows: Vec<Vector> =
                    part.basis().iter().map(|v| cols.iter().map(|&j| v[j].clone()).collect()).collect();
                let r = if rows.is_empty() { 0 } else { ExactMatrix::from_rows(rows).expect("rectangular").rank() };
                if r > 0 {
                    out.insert(((*w).clone(), s.clone()), r);
                }
            }
        }
        out
    }

    /// Weyl-orbit invariance of weight multiplicities inside the window, and
    /// integrality of `μ(γ^∨)` on module weights.
    pub fn weyl_check(&self, c: &GradedSubspace) -> WeylReport {
        let table = self.weight_table(c);
        let extent: Vec<(i64, i64)> = self.bounds.iter().map(|(lo, hi)| (lo - hi, hi - lo)).collect();
        let mut roots: Vec<(Weight0, Degree)> = Vec::new();
        for k in box_degrees(&extent) {
            let ci = self.torus.grading.class_index(&k);
            for w in self.torus.grading.weight_spaces[ci].keys() {
                if w.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    roots.push((w.clone(), k.clone()));
                }
            }
        }
        let mut coroots: HashMap<Weight0, Vec<crate::scalars::Q>> = HashMap::new();
        let mut checked = 0;
        let mut failures = Vec::new();
        let mut integral = true;
        for ((mu, s), &mult) in &table {
            for (beta, k) in &roots {
                let co = coroots.entry(beta.clone()).or_insert_with(|| self.torus.grading.coroot(beta));
                let v: crate::scalars::Q = mu.iter().zip(co.iter()).map(|(x, y)| x * y).sum();
                if !v.is_integer() {
                    integral = false;
                    continue;
                }
                let vi = i64::try_from(v.to_integer()).expect("small pairing");
                let t: Degree = s.iter().zip(k).map(|(a, b)| a - vi * b).collect();
                if !self.in_box(&t) {
                    continue;
                }
                let refl: Weight0 = mu.iter().zip(beta).map(|(x, y)| x - &v * y).collect();
                checked += 1;
                let other = table.get(&(refl, t.clone())).copied().unwrap_or(0);
                if other != mult && failures.len() < 5 {
                    failures.push(format!("weight at degree {s:?} has multiplicity {mult}, reflection at {t:?} has {other}"));
                }
            }
        }
        WeylReport { invariant: failures.is_empty(), integral, comparisons: checked, failures }
    }

    /// Weights `μ|_{h_0̄}` occurring in the window, with multiplicities summed over degrees.
    pub fn finite_weights(&self, c: &GradedSubspace) -> std::collections::BTreeSet<Weight0> {
        self.weight_table(c).into_keys().map(|(w, _)| w).collect()
    }
}

/// `ρ(a)` as cached loop operators plus derivation coefficients; central terms act by zero.
struct Rho {
    loops: Vec<(Degree, SparseMatrix)>,
    der: Vec<CycScalar>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CentralReport {
    pub central_zero: bool,
    pub central_checked: usize,
    /// Degree at which the bracket relations were probed.
    pub probe: Option<Degree>,
    pub pairs_checked: usize,
    pub homomorphism: bool,
    pub failure: Option<String>,
}

impl CentralReport {
    pub fn passed(&self) -> bool {
        self.central_zero && self.homomorphism
    }

    pub fn verdict(&self) -> Verdict {
        if !self.central_zero {
            Verdict::Fail
        } else if self.probe.is_none() {
            Verdict::Inconclusive
        } else {
            Verdict::from_bool(self.homomorphism)
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeylReport {
    pub invariant: bool,
    pub integral: bool,
    pub comparisons: usize,
    pub failures: Vec<String>,
}
