//! Decomposition of the windowed loop module into the submodules generated
//! by `v₊ ⊗ t^r` for coset representatives `r` of `Z^n / S`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::lattice::ComponentLattice;
use super::window::{GradedSubspace, LoopWindow};
use crate::scalars::Subspace;
use crate::torus::Degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Self) -> Self {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub rep: Degree,
    /// Other representatives whose closure coincided with this one.
    pub merged: Vec<Degree>,
    pub space: GradedSubspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeJson {
    pub hnf: Vec<Vec<i64>>,
    pub index: Option<u64>,
    pub certified: bool,
    pub extended_hnf: Vec<Vec<i64>>,
    pub extended_index: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub rep: Degree,
    pub merged: Vec<Degree>,
    pub dims: BTreeMap<String, usize>,
    pub interior_irreducible: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeShiftJson {
    pub from: usize,
    pub to: usize,
    pub shift: Degree,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub window: Verdict,
    pub component_count: Verdict,
    pub completeness: Verdict,
    pub grade_shift: Verdict,
    pub interior_irreducible: Verdict,
    pub overall: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub lattice: LatticeJson,
    #[serde(rename = "box")]
    pub bounds: Vec<(i64, i64)>,
    pub margin: i64,
    pub components: Vec<ComponentJson>,
    pub grade_shift_pairs: Vec<GradeShiftJson>,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
}

pub fn degree_key(s: &[i64]) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Whether `v ⊗ t^d ↦ v ⊗ t^{d+s}` maps `c1` onto `c2` on interior degrees
/// and intertwines every generator whose source and target stay interior.
pub fn grade_shift_isomorphic(w: &LoopWindow, c1: &GradedSubspace, c2: &GradedSubspace, s: &[i64], margin: i64) -> bool {
    let d = w.vdim();
    let empty = Subspace::new(d);
    let shifted = |t: &[i64]| -> Degree { t.iter().zip(s).map(|(a, b)| a + b).collect() };
    let mut compared = 0;
    for t in &w.degrees {
        let u = shifted(t);
        if !w.is_interior(t, margin) || !w.is_interior(&u, margin) {
            continue;
        }
        let a = c1.parts.get(t).unwrap_or(&empty);
        let b = c2.parts.get(&u).unwrap_or(&empty);
        if !a.same_as(b) {
            return false;
        }
        compared += a.dim();
        for v in a.basis() {
            for t2 in &w.degrees {
                let u2 = shifted(t2);
                if !w.is_interior(t2, margin) || !w.is_interior(&u2, margin) {
                    continue;
                }
                let r: Degree = t2.iter().zip(t).map(|(x, y)| x - y).collect();
                for (_, op) in w.generators(&r) {
                    let img = op.apply(v);
                    let in1 = c1.parts.get(t2).unwrap_or(&empty).contains(&img);
                    let in2 = c2.parts.get(&u2).unwrap_or(&empty).contains(&img);
                    if in1 != in2 {
                        return false;
                    }
                }
            }
        }
    }
    compared > 0
}

/// Interior irreducibility of a component: every top vector `h ⊗ t^s` with
/// `h ∈ C_s ∩ V̄⁺` at an interior degree regenerates the component on the
/// interior. Inconclusive when some `C_s ∩ V̄⁺` has dimension above one, or
/// when the interior does not cover a full period of the action.
pub fn interior_irreducible(w: &LoopWindow, c: &GradedSubspace, margin: i64) -> Verdict {
    let vplus = w.vbar_plus();
    let interior: Vec<&Degree> = w.degrees.iter().filter(|s| w.is_interior(s, margin)).collect();
    let covers_period = match &w.period {
        Some(p) => (0..w.n()).all(|i| {
            let (lo, hi) = w.bounds[i];
            (hi - margin) - (lo + margin) + 1 >= p[i]
        }),
        None => false,
    };
    let mut any_top = false;
    for s in &interior {
        let Some(part) = c.parts.get(*s) else { continue };
        let h = part.intersection(&vplus);
        if h.dim() > 1 {
            return Verdict::Inconclusive;
        }
        if h.dim() == 0 {
            continue;
        }
        any_top = true;
        let gen = w.closure(&[((*s).clone(), h.basis()[0].clone())]);
        for t in &interior {
            let a = gen.parts.get(*t).map_or(0, |p| p.dim());
            let b = c.parts.get(*t).map_or(0, |p| p.dim());
            if a != b {
                return Verdict::Fail;
            }
        }
    }
    if !any_top {
        return Verdict::Inconclusive;
    }
    if covers_period {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

/// Decomposes the window into the closures of `v₊ ⊗ t^r`, `0 ≤ r_i < l_i`.
pub fn decompose(w: &LoopWindow, lat: &ComponentLattice, margin: i64) -> (ComponentReport, Vec<Component>) {
    let d = w.vdim();
    let lattice = LatticeJson {
        hnf: lat.lattice.hnf.clone(),
        index: lat.index,
        certified: lat.certified,
        extended_hnf: lat.extended.hnf.clone(),
        extended_index: lat.extended_index,
    };
    let mut notes = Vec::new();
    let mut report = ComponentReport {
        lattice,
        bounds: w.bounds.clone(),
        margin,
        components: vec![],
        grade_shift_pairs: vec![],
        verdicts: Verdicts {
            window: Verdict::Inconclusive,
            component_count: Verdict::Inconclusive,
            completeness: Verdict::Inconclusive,
            grade_shift: Verdict::Inconclusive,
            interior_irreducible: Verdict::Inconclusive,
            overall: Verdict::Inconclusive,
        },
        notes: vec![],
    };
    if lat.zero_highest_weight {
        notes.push("zero highest weight: the module is trivial and splits into one line per degree".into());
        report.notes = notes;
        return (report, vec![]);
    }
    if !lat.certified {
        notes.push("evaluation points are not all roots of unity; S was computed on a finite box".into());
    }
    let Some(diag) = lat.lattice.diagonal() else {
        notes.push("S does not have full rank".into());
        report.notes = notes;
        return (report, vec![]);
    };
    let fits = w.bounds.iter().zip(&diag).all(|((lo, hi), l)| *lo <= -margin && *hi >= l - 1 + margin);
    if !fits {
        notes.push(format!(
            "box too small: need [-{margin}, l_i - 1 + {margin}] on each axis with l = {diag:?}"
        ));
        report.notes = notes;
        return (report, vec![]);
    }
    report.verdicts.window = Verdict::Pass;

    let reps = lat.lattice.coset_representatives().expect("full rank");
    let mut comps: Vec<Component> = Vec::new();
    for r in reps {
        let space = w.closure(&[(r.clone(), w.module.top_vector())]);
        if let Some(c) = comps.iter_mut().find(|c| c.space.same_as(&space)) {
            c.merged.push(r);
        } else {
            comps.push(Component { rep: r, merged: vec![], space });
        }
    }
    for c in &comps {
        if !c.merged.is_empty() {
            notes.push(format!("closures of {:?} and {:?} coincide", c.rep, c.merged));
        }
    }

    let interior: Vec<&Degree> = w.degrees.iter().filter(|s| w.is_interior(s, margin)).collect();
    let mut complete = !interior.is_empty();
    for s in &interior {
        let mut total = Subspace::new(d);
        let mut sum = 0;
        for c in &comps {
            if let Some(p) = c.space.parts.get(*s) {
                sum += p.dim();
                total = total.sum(p);
            }
        }
        if sum != d || total.dim() != d {
            complete = false;
            if sum > total.dim() {
                notes.push(format!("components overlap at degree {s:?}"));
            }
        }
    }
    report.verdicts.completeness = Verdict::from_bool(complete);
    report.verdicts.component_count = match lat.index {
        Some(i) => Verdict::from_bool(i == comps.len() as u64),
        None => Verdict::Inconclusive,
    };
    if let Some(i) = lat.index {
        if i != comps.len() as u64 {
            notes.push(format!("found {} component(s), index of S is {i}", comps.len()));
        }
    }

    let mut shift_ok = true;
    for j in 1..comps.len() {
        let s: Degree = comps[j].rep.iter().zip(&comps[0].rep).map(|(a, b)| a - b).collect();
        let iso = grade_shift_isomorphic(w, &comps[0].space, &comps[j].space, &s, margin);
        shift_ok &= iso;
        report.grade_shift_pairs.push(GradeShiftJson { from: 0, to: j, shift: s, isomorphic: iso });
    }
    report.verdicts.grade_shift = Verdict::from_bool(shift_ok);

    let mut irr = Verdict::Pass;
    for c in &comps {
        let v = interior_irreducible(w, &c.space, margin);
        irr = irr.combine(v);
        report.components.push(ComponentJson {
            rep: c.rep.clone(),
            merged: c.merged.clone(),
            dims: c.space.profile().into_iter().map(|(k, v)| (degree_key(&k), v)).collect(),
            interior_irreducible: v,
        });
    }
    report.verdicts.interior_irreducible = irr;
    report.verdicts.overall = [
        report.verdicts.window,
        report.verdicts.component_count,
        report.verdicts.completeness,
        report.verdicts.grade_shift,
        report.verdicts.interior_irreducible,
    ]
    .into_iter()
    .fold(Verdict::Pass, Verdict::combine);
    report.notes = notes;
    (report, comps)
}

impl ComponentReport {
    /// Plain-text table of the report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lattice S: hnf {:?}, index {}", self.lattice.hnf, opt(self.lattice.index));
        let _ = writeln!(
            out,
            "extended lattice: hnf {:?}, index {}",
            self.lattice.extended_hnf,
            opt(self.lattice.extended_index)
        );
        let _ = writeln!(out, "box {:?}, margin {}", self.bounds, self.margin);
        let _ = writeln!(out, "{:<12} {:<14} {}", "rep", "irreducible", "dims by degree");
        for c in &self.components {
            let dims: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(out, "{:<12} {:<14} {}", format!("{:?}", c.rep), c.interior_irreducible.label(), dims.join(" "));
        }
        for g in &self.grade_shift_pairs {
            let _ = writeln!(out, "grade shift {} -> {} by {:?}: {}", g.from, g.to, g.shift, g.isomorphic);
        }
        let v = &self.verdicts;
        for (name, x) in [
            ("window", v.window),
            ("component_count", v.component_count),
            ("completeness", v.completeness),
            ("grade_shift", v.grade_shift),
            ("interior_irreducible", v.interior_irreducible),
            ("overall", v.overall),
        ] {
            let _ = writeln!(out, "{name:<22} {}", x.label());
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn opt(x: Option<u64>) -> String {
    x.map_or("infinite".into(), |v| v.to_string())
}
