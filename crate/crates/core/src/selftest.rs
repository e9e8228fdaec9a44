//! The invariant suite run by `selftest` on a matrix of instances.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;
use crate::liealg::{CartanType, LieAlgebra, SigmaSpec};
use crate::loopmod::{component_lattice, decompose, LoopWindow, Verdict};
use crate::loopmod::pipeline::{default_box, generator_radius};
use crate::repmod::{weyl_dimension, Freudenthal, HWModule};
use crate::torus::Torus;

/// Radius of the `LT̃` basis sample used for Jacobi and antisymmetry.
pub const JACOBI_RADIUS: i64 = 1;
/// Weyl dimension cap for the module oracle sweep.
pub const ORACLE_DIM_CAP: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub config: RunConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub instance: String,
    pub property: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub results: Vec<PropertyResult>,
    pub warnings: Vec<String>,
    pub overall: Verdict,
}

impl SelftestReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for r in &self.results {
            let _ = writeln!(out, "{:<14} {:<28} {:<13} {}", r.instance, r.property, r.verdict.label(), r.detail);
        }
        let _ = writeln!(out, "overall {}", self.overall.label());
        out
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn find(&self, instance: &str, property: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.instance == instance && r.property == property)
    }
}

fn instance(name: &str, ctype: &str, rank: usize, sigma: Vec<SigmaSpec>, lambda: Vec<Vec<i64>>, b: Vec<Vec<&str>>) -> Instance {
    Instance {
        name: name.into(),
        config: RunConfig {
            cartan_type: ctype.into(),
            rank,
            n: None,
            sigma,
            m: None,
            lambda,
            b: b.into_iter().map(|r| r.into_iter().map(String::from).collect()).collect(),
            alpha: None,
            bounds: None,
            checks: None,
            escalate: None,
        },
    }
}

/// Untwisted A1 and A2, twisted A2, twisted D4 and twisted A3.
pub fn builtin_matrix() -> Vec<Instance> {
    let diagram = |p: &[usize]| SigmaSpec::Diagram { perm: p.to_vec() };
    vec![
        instance("A1", "A", 1, vec![SigmaSpec::Identity], vec![vec![1], vec![1]], vec![vec!["1"], vec!["-1"]]),
        instance("A2xA2", "A", 2, vec![SigmaSpec::Identity; 2], vec![vec![1, 0]], vec![vec!["1", "-1"]]),
        instance("A2-twisted", "A", 2, vec![diagram(&[2, 1])], vec![vec![1, 0]], vec![vec!["1"]]),
        instance("D4-triality", "D", 4, vec![diagram(&[3, 2, 4, 1])], vec![vec![1, 0, 0, 0]], vec![vec!["1"]]),
        instance("A3-twisted", "A", 3, vec![diagram(&[3, 2, 1])], vec![vec![1, 0, 0]], vec![vec!["1"]]),
    ]
}

/// Dominant weights with Weyl dimension at most `cap`, in lexicographic order.
pub fn dominant_weights_up_to(g: &LieAlgebra, cap: u64) -> Vec<Vec<i64>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![vec![0i64; g.rank()]];
    while let Some(w) = stack.pop() {
        if seen.contains(&w) || weyl_dimension(&g.rs, &w) > cap {
            continue;
        }
        seen.insert(w.clone());
        for i in 0..w.len() {
            let mut next = w.clone();
            next[i] += 1;
            stack.push(next);
        }
    }
    seen.into_iter().collect()
}

/// Builds every module of dimension at most `cap` and compares it with the
/// Weyl dimension formula and Freudenthal multiplicities. Returns the number
/// of modules checked or the first mismatch.
pub fn oracle_sweep(g: &LieAlgebra, cap: u64) -> std::result::Result<usize, String> {
    let ws = dominant_weights_up_to(g, cap);
    for w in &ws {
        let v = HWModule::new(g, w).map_err(|e| format!("{w:?}: {e}"))?;
        let expected = weyl_dimension(&g.rs, w);
        if v.dim() as u64 != expected {
            return Err(format!("{w:?}: dimension {} but Weyl gives {expected}", v.dim()));
        }
        let mut fr = Freudenthal::new(&g.rs, w);
        for (mu, mult) in v.weight_table() {
            let f = fr.multiplicity(&mu);
            if mult as u64 != f {
                return Err(format!("{w:?}: multiplicity {mult} at {mu:?}, Freudenthal gives {f}"));
            }
        }
    }
    Ok(ws.len())
}

fn parse_label(label: &str) -> Option<(CartanType, usize)> {
    let (t, r) = label.split_at(1);
    Some((CartanType::parse(t).ok()?, r.parse().ok()?))
}

struct Collector<'a> {
    name: &'a str,
    out: &'a mut Vec<PropertyResult>,
}

impl Collector<'_> {
    fn push(&mut self, property: &str, verdict: Verdict, detail: impl Into<String>) {
        self.out.push(PropertyResult { instance: self.name.into(), property: property.into(), verdict, detail: detail.into() });
    }
}

fn check_instance(inst: &Instance, inject_fault: bool, out: &mut Vec<PropertyResult>) -> Result<()> {
    let mut c = Collector { name: &inst.name, out };
    let cfg = &inst.config;
    let mut g = LieAlgebra::new(cfg.ctype()?, cfg.rank)?;
    if inject_fault {
        let (i, j) = (g.e_index(0), g.f_index(0));
        let h = g.h_index(0);
        let current = g.bracket_basis(i, j).iter().find(|(k, _)| *k == h).map_or(0, |x| x.1);
        g.corrupt_structure_constant(i, j, h, current + 1);
    }
    match g.jacobi_violation() {
        None => c.push("algebra_jacobi", Verdict::Pass, format!("dim {}", g.dim())),
        Some((i, j, k)) => {
            let l = g.labels();
            c.push("algebra_jacobi", Verdict::Fail, format!("witness ({}, {}, {})", l[i], l[j], l[k]));
        }
    }
    if inject_fault {
        return Ok(());
    }
    let torus = cfg.torus()?;
    let basis = torus.sample_basis(JACOBI_RADIUS);
    match torus.antisymmetry_violation(JACOBI_RADIUS) {
        None => c.push("antisymmetry", Verdict::Pass, format!("{} basis elements", basis.len())),
        Some((a, b)) => c.push("antisymmetry", Verdict::Fail, format!("witness ({a}, {b})")),
    }
    match torus.jacobi_violation(JACOBI_RADIUS) {
        None => c.push("jacobi", Verdict::Pass, format!("{} basis elements", basis.len())),
        Some((a, b, d)) => c.push("jacobi", Verdict::Fail, format!("witness ({a}, {b}, {d})")),
    }
    let dims = torus.grading.dims();
    let sum: usize = dims.iter().sum();
    c.push("eigenspace_dims", Verdict::from_bool(sum == g.dim()), format!("{dims:?} sum {sum}"));
    let rep = torus.report();
    let label = rep.failed_axiom.map_or("all axioms".to_string(), |a| format!("axiom {a}"));
    c.push("lie_torus", Verdict::from_bool(rep.passed), format!("{label}, g0 {}", rep.g0_type.clone().unwrap_or_default()));

    match rep.g0_type.as_deref().and_then(parse_label) {
        Some((t, r)) => {
            let g0 = LieAlgebra::new(t, r)?;
            match oracle_sweep(&g0, ORACLE_DIM_CAP) {
                Ok(k) => c.push("oracles_g0", Verdict::Pass, format!("{k} modules of {t}{r}")),
                Err(e) => c.push("oracles_g0", Verdict::Fail, e),
            }
        }
        None => c.push("oracles_g0", Verdict::Inconclusive, "g0 type not classified"),
    }

    let module = cfg.module(&torus)?;
    let margin = generator_radius(&torus);
    let lat = component_lattice(&torus, &module);
    let bounds = default_box(&lat, torus.n(), margin);
    let window = LoopWindow::new(&torus, &module, cfg.alpha_values()?, bounds)?;
    let central = window.check_central_trivial(1, margin);
    c.push(
        "cocycle",
        central.verdict(),
        format!("{} central actions, {} bracket probes", central.central_checked, central.pairs_checked),
    );
    let all = window.closure(&[(vec![0; torus.n()], module.top_vector())]);
    let weyl = window.weyl_check(&all);
    c.push("weyl", Verdict::from_bool(weyl.invariant && weyl.integral), format!("{} comparisons", weyl.comparisons));
    let (dec, comps) = decompose(&window, &lat, margin);
    let idx = |x: Option<u64>| x.map_or("infinite".to_string(), |v| v.to_string());
    let count_s = match lat.index {
        Some(i) if dec.verdicts.window == Verdict::Pass => Verdict::from_bool(i == comps.len() as u64),
        _ => Verdict::Inconclusive,
    };
    c.push("lattice_decompose", count_s, format!("{} components, index of S {}", comps.len(), idx(lat.index)));
    let count_ext = match lat.extended_index {
        Some(i) if dec.verdicts.window == Verdict::Pass => Verdict::from_bool(i == comps.len() as u64),
        _ => Verdict::Inconclusive,
    };
    c.push(
        "lattice_decompose_extended",
        count_ext,
        format!("{} components, index of extended lattice {}", comps.len(), idx(lat.extended_index)),
    );
    c.push("decompose", dec.verdicts.overall, format!("grade shift {}, interior irreducible {}", dec.verdicts.grade_shift.label(), dec.verdicts.interior_irreducible.label()));
    Ok(())
}

/// The axiom (3) counterexample `(σ, σ)` must fail with the right label.
fn counterexample(out: &mut Vec<PropertyResult>) -> Result<()> {
    let swap = SigmaSpec::Diagram { perm: vec![2, 1] };
    let t = Torus::from_specs(CartanType::A, 2, &[swap.clone(), swap])?;
    let rep = t.report();
    out.push(PropertyResult {
        instance: "A2-swap-swap".into(),
        property: "lie_torus_rejects".into(),
        verdict: Verdict::from_bool(!rep.passed && rep.failed_axiom == Some(3)),
        detail: format!("failed axiom {:?}", rep.failed_axiom),
    });
    Ok(())
}

/// Runs the suite. An empty matrix passes vacuously with a warning.
pub fn run_selftest(matrix: &[Instance], inject_fault: bool) -> SelftestReport {
    let mut results = Vec::new();
    let mut warnings = Vec::new();
    if matrix.is_empty() {
        warnings.push("empty instance matrix: nothing to check".into());
    }
    for inst in matrix {
        if let Err(e) = check_instance(inst, inject_fault, &mut results) {
            results.push(PropertyResult { instance: inst.name.clone(), property: "build".into(), verdict: Verdict::Fail, detail: e.to_string() });
        }
    }
    if !matrix.is_empty() && !inject_fault {
        if let Err(e) = counterexample(&mut results) {
            results.push(PropertyResult { instance: "A2-swap-swap".into(), property: "build".into(), verdict: Verdict::Fail, detail: e.to_string() });
        }
    }
    let overall = results.iter().fold(Verdict::Pass, |acc, r| acc.combine(r.verdict));
    SelftestReport { results, warnings, overall }
}
