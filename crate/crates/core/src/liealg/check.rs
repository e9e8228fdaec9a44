//! The Lie torus axioms, condition (M) and root system classification for `g_0̄`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::algebra::LieAlgebra;
use super::automorphism::AutomorphismTuple;
use super::grading::{Grading, Weight0};
use super::rootsys::{CartanType, RootSystem};
use crate::scalars::matrix::{is_zero_vec, zero_vec};
use crate::scalars::{q, ExactMatrix, Subspace, Vector, Q};

/// Type of a reduced root system given by its roots as `h_0̄`-weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystemType {
    pub ctype: CartanType,
    pub rank: usize,
}

impl RootSystemType {
    pub fn label(&self) -> String {
        format!("{}{}", self.ctype, self.rank)
    }

    /// Type `B_l`, counting `A_1` as `B_1` and `C_2` as `B_2`.
    pub fn is_type_b(&self) -> bool {
        matches!(self.ctype, CartanType::B) || (self.ctype == CartanType::A && self.rank == 1)
    }
}

fn scale(a: &[Q], c: i64) -> Weight0 {
    a.iter().map(|x| x * q(c)).collect()
}

/// Classifies a reduced root system from its roots, positivity and form.
pub fn classify(roots: &[Weight0], grading: &Grading) -> Option<RootSystemType> {
    if roots.is_empty() {
        return None;
    }
    let set: BTreeSet<&Weight0> = roots.iter().collect();
    let positive: Vec<&Weight0> = roots.iter().filter(|r| grading.is_positive(r)).collect();
    let simple: Vec<&Weight0> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                let rest: Weight0 = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                set.contains(&rest) && grading.is_positive(&rest)
            })
        })
        .copied()
        .collect();
    let l = simple.len();
    let norms: Vec<Q> = roots.iter().map(|r| grading.weight_inner(r, r)).collect();
    let long = norms.iter().max()?.clone();
    let short = norms.iter().min()?.clone();
    let n_short = norms.iter().filter(|n| **n == short).count();
    let count = roots.len();
    let pick = |ctype: CartanType, rank: usize| {
        (RootSystem::expected_num_roots(ctype, rank) == count && ctype.valid_rank(rank))
            .then_some(RootSystemType { ctype, rank })
    };
    if long == short {
        if l == 1 && count == 2 {
            return Some(RootSystemType { ctype: CartanType::A, rank: 1 });
        }
        return pick(CartanType::A, l).or_else(|| pick(CartanType::D, l)).or_else(|| pick(CartanType::E, l));
    }
    let ratio = &long / &short;
    if ratio == q(3) {
        return pick(CartanType::G, l);
    }
    if ratio != q(2) {
        return None;
    }
    if l == 4 && count == 48 && n_short == 24 {
        return Some(RootSystemType { ctype: CartanType::F, rank: 4 });
    }
    if n_short == 2 * l {
        return pick(CartanType::B, l);
    }
    if n_short == 2 * l * (l - 1) {
        return pick(CartanType::C, l);
    }
    None
}

/// `Δ_en = Δ ∪ 2Δ_sh` for type `B_l`, otherwise `Δ`.
pub fn extended_roots(roots: &[Weight0], ty: Option<&RootSystemType>, grading: &Grading) -> Vec<Weight0> {
    let mut out: BTreeSet<Weight0> = roots.iter().cloned().collect();
    if ty.is_some_and(|t| t.is_type_b()) {
        let norms: Vec<Q> = roots.iter().map(|r| grading.weight_inner(r, r)).collect();
        if let Some(short) = norms.iter().min() {
            for (r, n) in roots.iter().zip(&norms) {
                if n == short {
                    out.insert(scale(r, 2));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Outcome of the condition (M) test.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionMReport {
    pub holds: bool,
    pub irreducible: bool,
    pub dimension: usize,
    pub weights_in_extended_roots: bool,
    pub stray_weights: Vec<Vec<String>>,
}

/// Condition (M): irreducible, dimension greater than one, weights in `Δ_en ∪ {0}`.
pub fn check_condition_m(weights: &[(Weight0, usize)], irreducible: bool, delta_en: &[Weight0]) -> ConditionMReport {
    let dimension: usize = weights.iter().map(|(_, d)| d).sum();
    let stray: Vec<&Weight0> = weights
        .iter()
        .filter(|(w, d)| *d > 0 && w.iter().any(|c| !c.is_zero()) && !delta_en.contains(w))
        .map(|(w, _)| w)
        .collect();
    let in_en = stray.is_empty();
    ConditionMReport {
        holds: irreducible && dimension > 1 && in_en,
        irreducible,
        dimension,
        weights_in_extended_roots: in_en,
        stray_weights: stray.iter().map(|w| w.iter().map(|c| c.to_string()).collect()).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub passed: bool,
    pub message: String,
}

impl AxiomResult {
    fn ok(message: impl Into<String>) -> Self {
        AxiomResult { passed: true, message: message.into() }
    }

    fn fail(message: impl Into<String>) -> Self {
        AxiomResult { passed: false, message: message.into() }
    }
}

/// Verdict of the Lie torus check.
#[derive(Clone, Debug, Serialize)]
pub struct LieTorusReport {
    pub algebra: String,
    pub orders: Vec<u32>,
    pub piece_dims: Vec<usize>,
    pub g0_type: Option<String>,
    pub axiom1: AxiomResult,
    pub axiom2: AxiomResult,
    pub axiom3: AxiomResult,
    /// `dim g_k̄(α) <= 1` for all `α ≠ 0`.
    pub lt3: bool,
    /// The root set of `g` agrees with `Δ_0` or `Δ_0,en` (type `B` only).
    pub lt2: bool,
    pub group_order: usize,
    pub passed: bool,
    pub failed_axiom: Option<u8>,
}

/// Span closure of `start` under `ad` of the given elements.
fn ideal_closure(g: &LieAlgebra, start: &[Vector], by: &[Vector]) -> Subspace {
    let mut sub = Subspace::new(g.dim());
    let mut frontier: Vec<Vector> = Vec::new();
    for v in start {
        if sub.insert(v) {
            frontier.push(v.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        for y in by {
            let w = g.bracket(y, &v);
            if sub.insert(&w) {
                frontier.push(w);
            }
        }
    }
    sub
}

fn centre_dimension(g: &LieAlgebra, basis: &[Vector]) -> usize {
    let cols: Vec<Vector> = basis
        .iter()
        .map(|x| basis.iter().flat_map(|y| g.bracket(x, y)).collect())
        .collect();
    let rows = basis.len() * g.dim();
    ExactMatrix::from_columns(rows, &cols).kernel().len()
}

fn axiom1(g: &LieAlgebra, gr: &Grading) -> AxiomResult {
    let g0 = &gr.pieces[0];
    if g0.is_empty() {
        return AxiomResult::fail("g_0 is zero");
    }
    let abelian = g0.iter().all(|x| g0.iter().all(|y| is_zero_vec(&g.bracket(x, y))));
    if abelian {
        return AxiomResult::fail("g_0 is abelian");
    }
    let centre = centre_dimension(g, g0);
    if centre > 0 {
        return AxiomResult::fail(format!("g_0 has a centre of dimension {centre}"));
    }
    let mut generators: Vec<Vector> = Vec::new();
    for (w, vs) in &gr.weight_spaces[0] {
        if w.iter().any(|c| !c.is_zero()) {
            generators.extend(vs.iter().cloned());
        }
    }
    generators.extend(gr.h0.iter().cloned());
    for x in &generators {
        let ideal = ideal_closure(g, std::slice::from_ref(x), g0);
        if ideal.dim() != g0.len() {
            return AxiomResult::fail(format!(
                "g_0 has a proper ideal of dimension {} (dim g_0 = {})",
                ideal.dim(),
                g0.len()
            ));
        }
    }
    AxiomResult::ok(format!("g_0 is simple of dimension {}", g0.len()))
}

/// Weights of a subspace stable under `h_0̄`, with multiplicities.
fn subspace_weights(g: &LieAlgebra, gr: &Grading, basis: &[Vector]) -> Vec<(Weight0, usize)> {
    let mut groups: std::collections::BTreeMap<Weight0, Vec<usize>> = Default::default();
    for i in 0..g.dim() {
        groups.entry(gr.basis_weight(i).clone()).or_default().push(i);
    }
    let mut out = Vec::new();
    for (w, idx) in groups {
        let mut sub = Subspace::new(g.dim());
        for v in basis {
            let mut p = zero_vec(g.dim());
            for &i in &idx {
                p[i] = v[i].clone();
            }
            sub.insert(&p);
        }
        if sub.dim() > 0 {
            out.push((w, sub.dim()));
        }
    }
    out
}

fn axiom2(g: &LieAlgebra, gr: &Grading, delta_en: &[Weight0]) -> AxiomResult {
    let g0 = &gr.pieces[0];
    let positive: Vec<Vector> = gr.weight_spaces[0]
        .iter()
        .filter(|(w, _)| gr.is_positive(w))
        .flat_map(|(_, vs)| vs.iter().cloned())
        .collect();
    for (idx, class) in gr.classes.iter().enumerate().skip(1) {
        let piece = &gr.pieces[idx];
        if piece.is_empty() {
            continue;
        }
        let space = Subspace::from_vectors(g.dim(), piece);
        // U = centraliser of g_0 in the piece
        let cols: Vec<Vector> = piece.iter().map(|x| g0.iter().flat_map(|y| g.bracket(y, x)).collect()).collect();
        let u_dim = ExactMatrix::from_columns(g0.len() * g.dim(), &cols).kernel().len();
        let mut w = Subspace::new(g.dim());
        for y in g0 {
            for x in piece {
                w.insert(&g.bracket(y, x));
            }
        }
        if !space.contains_subspace(&w) {
            return AxiomResult::fail(format!("[g_0, g_{class:?}] leaves the piece"));
        }
        if u_dim + w.dim() != piece.len() {
            return AxiomResult::fail(format!(
                "g_{class:?} is not trivial part plus [g_0, g_k]: {} + {} != {}",
                u_dim,
                w.dim(),
                piece.len()
            ));
        }
        if w.dim() == 0 {
            continue;
        }
        // highest weight vectors of W: joint kernel of the positive root vectors
        let wb = w.basis().to_vec();
        let cols: Vec<Vector> = wb.iter().map(|x| positive.iter().flat_map(|e| g.bracket(e, x)).collect()).collect();
        let hw = ExactMatrix::from_columns(positive.len() * g.dim(), &cols).kernel().len();
        let weights = subspace_weights(g, gr, &wb);
        let report = check_condition_m(&weights, hw == 1, delta_en);
        if !report.holds {
            return AxiomResult::fail(format!(
                "[g_0, g_{class:?}] fails condition (M): irreducible={}, dim={}, weights in extended roots={}",
                report.irreducible, report.dimension, report.weights_in_extended_roots
            ));
        }
    }
    AxiomResult::ok("every nonzero class splits as trivial part plus a condition (M) module")
}

/// Checks the three Lie torus axioms and the derived properties (LT2), (LT3).
pub fn check_lie_torus(g: &LieAlgebra, sigma: &AutomorphismTuple, gr: &Grading) -> LieTorusReport {
    let orders = sigma.orders();
    let a1 = axiom1(g, gr);
    let delta0 = gr.roots_zero();
    let ty = classify(&delta0, gr);
    let delta0_en = extended_roots(&delta0, ty.as_ref(), gr);
    let a2 = if a1.passed {
        axiom2(g, gr, &delta0_en)
    } else {
        AxiomResult::fail("not checked: g_0 is not simple")
    };
    let expected: usize = orders.iter().map(|&m| m as usize).product();
    let group_order = sigma.group_order(expected + 1);
    let a3 = if group_order == expected {
        AxiomResult::ok(format!("group order {group_order} equals product of orders"))
    } else {
        AxiomResult::fail(format!("group order {group_order} != {expected}"))
    };
    let lt3 = gr
        .weight_spaces
        .iter()
        .all(|ws| ws.iter().all(|(w, vs)| w.iter().all(|c| c.is_zero()) || vs.len() <= 1));
    let delta = gr.roots_all();
    let lt2 = delta == delta0 || (ty.as_ref().is_some_and(|t| t.is_type_b()) && delta == delta0_en);
    let failed_axiom = if !a1.passed {
        Some(1)
    } else if !a2.passed {
        Some(2)
    } else if !a3.passed {
        Some(3)
    } else {
        None
    };
    LieTorusReport {
        algebra: g.rs.label(),
        orders,
        piece_dims: gr.dims(),
        g0_type: ty.map(|t| t.label()),
        axiom1: a1,
        axiom2: a2,
        axiom3: a3,
        lt3,
        lt2,
        group_order,
        passed: failed_axiom.is_none(),
        failed_axiom,
    }
}

/// Dominant weights `μ <= λ` that are minimal among dominant weights.
pub fn minimal_dominant_weights(rs: &RootSystem, lambda: &[i64]) -> Vec<Vec<i64>> {
    let coords = rs.weight_to_root_coords(lambda);
    let bounds: Vec<i64> = coords
        .iter()
        .map(|c| {
            let f = c.floor().to_integer();
            i64::try_from(f).unwrap_or(0).max(0)
        })
        .collect();
    let l = rs.rank;
    let mut dominant: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut c = vec![0i64; l];
    loop {
        let mu: Vec<i64> = (0..l)
            .map(|i| lambda[i] - (0..l).map(|j| c[j] * rs.cartan[i][j]).sum::<i64>())
            .collect();
        if mu.iter().all(|&x| x >= 0) {
            dominant.push((c.clone(), mu));
        }
        let mut i = 0;
        loop {
            if i == l {
                break;
            }
            c[i] += 1;
            if c[i] <= bounds[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == l {
            break;
        }
    }
    // ν < μ iff c_ν >= c_μ componentwise and they differ
    let mut out: Vec<Vec<i64>> = dominant
        .iter()
        .filter(|(cm, _)| {
            !dominant.iter().any(|(cn, _)| cn != cm && cn.iter().zip(cm.iter()).all(|(a, b)| a >= b))
        })
        .map(|(_, mu)| mu.clone())
        .collect();
    out.sort();
    out
}
