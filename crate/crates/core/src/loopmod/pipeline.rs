//! End-to-end verification of one classification instance.

use serde::Serialize;
use serde_json::{json, Value};

use super::decompose::{decompose, ComponentReport, Verdict};
use super::lattice::{component_lattice, ComponentLattice};
use super::window::LoopWindow;
use crate::config::RunConfig;
use crate::error::Result;
use crate::repmod::EvalModule;
use crate::torus::Torus;

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub verdict: Verdict,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub algebra: String,
    pub orders: Vec<u32>,
    pub module_dim: usize,
    pub stages: Vec<StageReport>,
    pub decomposition: Option<ComponentReport>,
    pub overall: Verdict,
}

impl ClassificationReport {
    pub fn stage(&self, name: &str) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.stage == name)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} with automorphism orders {:?}, module dimension {}\n", self.algebra, self.orders, self.module_dim);
        for s in &self.stages {
            out.push_str(&format!("{:<20} {}\n", s.stage, s.verdict.label()));
        }
        if let Some(d) = &self.decomposition {
            out.push_str(&d.to_text());
        }
        out.push_str(&format!("{:<20} {}\n", "overall", self.overall.label()));
        out
    }
}

/// Largest automorphism order; used as the margin between the fundamental
/// domain and the box boundary.
pub fn generator_radius(torus: &Torus) -> i64 {
    torus.m().iter().copied().max().unwrap_or(1) as i64
}

/// Box covering one fundamental domain of `S` and one period of the action
/// with `margin` on every side.
pub fn default_box(lat: &ComponentLattice, n: usize, margin: i64) -> Vec<(i64, i64)> {
    let diag = lat.lattice.diagonal().unwrap_or_else(|| vec![1; n]);
    (0..n)
        .map(|i| {
            let p = lat.period.as_ref().map_or(1, |p| p[i]);
            (-margin, diag[i].max(p) - 1 + margin)
        })
        .collect()
}

fn widen(bounds: &[(i64, i64)], by: i64) -> Vec<(i64, i64)> {
    bounds.iter().map(|(lo, hi)| (lo - by, hi + by)).collect()
}

/// Runs every enabled stage and combines the verdicts. Configuration
/// problems are errors; mathematical failures are verdicts.
pub fn verify_classification_instance(cfg: &RunConfig, box_override: Option<Vec<(i64, i64)>>, escalate: Option<i64>) -> Result<ClassificationReport> {
    cfg.validate()?;
    let torus = cfg.torus()?;
    let module = cfg.module(&torus)?;
    let alpha = cfg.alpha_values()?;
    verify_instance(&torus, &module, alpha, box_override.or_else(|| cfg.bounds.clone()), escalate.or(cfg.escalate), |n| cfg.check_enabled(n))
}

pub fn verify_instance(
    torus: &Torus,
    module: &EvalModule,
    alpha: Vec<crate::scalars::CycScalar>,
    bounds: Option<Vec<(i64, i64)>>,
    escalate: Option<i64>,
    enabled: impl Fn(&str) -> bool,
) -> Result<ClassificationReport> {
    let n = torus.n();
    let margin = generator_radius(torus);
    let mut stages = Vec::new();

    if enabled("lie_torus") {
        let r = torus.report();
        stages.push(StageReport { stage: "lie_torus".into(), verdict: Verdict::from_bool(r.passed), detail: serde_json::to_value(r)? });
    }
    stages.push(StageReport {
        stage: "eval_module".into(),
        verdict: Verdict::Pass,
        detail: json!({
            "dim": module.dim(),
            "separated": module.separated(),
        }),
    });
    if enabled("irreducible") {
        let r = module.check_irreducible(torus, 4 * margin);
        let verdict = if !r.stabilized {
            Verdict::Inconclusive
        } else {
            Verdict::from_bool(r.irreducible)
        };
        let mut detail = serde_json::to_value(&r)?;
        detail["agrees_with_separation"] = json!(r.agrees_with_separation());
        stages.push(StageReport { stage: "eval_irreducible".into(), verdict, detail });
    }

    let lat = component_lattice(torus, module);
    if enabled("component_lattice") {
        let verdict = if lat.zero_highest_weight || !lat.certified || lat.index.is_none() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        stages.push(StageReport { stage: "component_lattice".into(), verdict, detail: serde_json::to_value(&lat)? });
    }

    let mut bounds = match bounds {
        Some(b) => {
            if b.len() != n {
                return Err(crate::Error::InvalidInput(format!("box: needs {n} intervals")));
            }
            b
        }
        None => default_box(&lat, n, margin),
    };
    let mut window = LoopWindow::new(torus, module, alpha.clone(), bounds.clone())?;
    let (mut rep, mut comps) = decompose(&window, &lat, margin);
    let mut attempts = vec![json!({"box": bounds, "verdict": rep.verdicts.overall})];
    if let Some(limit) = escalate {
        let mut step = margin;
        while rep.verdicts.overall == Verdict::Inconclusive && !lat.zero_highest_weight {
            let radius = bounds.iter().map(|(lo, hi)| lo.abs().max(hi.abs())).max().unwrap_or(0) + step;
            if radius > limit {
                break;
            }
            bounds = widen(&bounds, step);
            window = LoopWindow::new(torus, module, alpha.clone(), bounds.clone())?;
            (rep, comps) = decompose(&window, &lat, margin);
            attempts.push(json!({"box": bounds, "verdict": rep.verdicts.overall}));
            step *= 2;
        }
    }
    if enabled("decompose") {
        stages.push(StageReport {
            stage: "decompose".into(),
            verdict: rep.verdicts.overall,
            detail: json!({ "attempts": attempts, "components": comps.len() }),
        });
    }
    if enabled("central") {
        let r = window.check_central_trivial(1, margin);
        stages.push(StageReport { stage: "central_trivial".into(), verdict: r.verdict(), detail: serde_json::to_value(&r)? });
    }
    if enabled("integrable") {
        let r = module.check_integrable(torus, margin);
        stages.push(StageReport { stage: "integrable".into(), verdict: Verdict::from_bool(r.integrable), detail: serde_json::to_value(&r)? });
    }
    if enabled("weyl") {
        let mut verdict = if comps.is_empty() { Verdict::Inconclusive } else { Verdict::Pass };
        let mut per = Vec::new();
        for c in &comps {
            let r = window.weyl_check(&c.space);
            verdict = verdict.combine(Verdict::from_bool(r.invariant && r.integral));
            per.push(json!({"rep": c.rep, "report": r}));
        }
        stages.push(StageReport { stage: "weyl".into(), verdict, detail: json!({ "components": per }) });
    }
    let overall = stages.iter().fold(Verdict::Pass, |acc, s| acc.combine(s.verdict));
    Ok(ClassificationReport {
        algebra: torus.g.rs.label(),
        orders: torus.m().to_vec(),
        module_dim: module.dim(),
        stages,
        decomposition: Some(rep),
        overall,
    })
}
