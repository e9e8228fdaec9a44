//! Run configuration: a single JSON document describing one classification instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{CartanType, SigmaSpec};
use crate::repmod::EvalModule;
use crate::scalars::CycScalar;
use crate::torus::Torus;

/// Names accepted in the `checks` field.
pub const CHECK_NAMES: [&str; 7] =
    ["lie_torus", "irreducible", "component_lattice", "decompose", "central", "integrable", "weyl"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub sigma: Vec<SigmaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<u32>>,
    #[serde(default)]
    pub lambda: Vec<Vec<i64>>,
    #[serde(default)]
    pub b: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub escalate: Option<i64>,
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{field}: {msg}"))
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn ctype(&self) -> Result<CartanType> {
        CartanType::parse(&self.cartan_type).map_err(|e| field_err("type", e))
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(self.sigma.len())
    }

    /// Builds the torus and cross-checks `n` and `m`.
    pub fn torus(&self) -> Result<Torus> {
        let ctype = self.ctype()?;
        if let Some(n) = self.n {
            if n != self.sigma.len() {
                return Err(field_err("n", format!("{n} but sigma lists {} automorphisms", self.sigma.len())));
            }
        }
        if self.sigma.is_empty() {
            return Err(field_err("sigma", "at least one automorphism is required"));
        }
        let t = Torus::from_specs(ctype, self.rank, &self.sigma).map_err(|e| field_err("sigma", e))?;
        if let Some(m) = &self.m {
            if m.as_slice() != t.m() {
                return Err(field_err("m", format!("{m:?} but the automorphism orders are {:?}", t.m())));
            }
        }
        Ok(t)
    }

    pub fn points(&self) -> Result<Vec<Vec<CycScalar>>> {
        let n = self.n();
        self.b
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != n {
                    return Err(field_err(&format!("b[{i}]"), format!("needs {n} entries, got {}", row.len())));
                }
                row.iter()
                    .enumerate()
                    .map(|(j, s)| CycScalar::parse(s).map_err(|e| field_err(&format!("b[{i}][{j}]"), e)))
                    .collect()
            })
            .collect()
    }

    pub fn alpha_values(&self) -> Result<Vec<CycScalar>> {
        let n = self.n();
        match &self.alpha {
            None => Ok(vec![CycScalar::zero(); n]),
            Some(a) if a.len() != n => Err(field_err("alpha", format!("needs {n} entries, got {}", a.len()))),
            Some(a) => a
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let x = CycScalar::parse(s).map_err(|e| field_err(&format!("alpha[{i}]"), e))?;
                    if !x.is_rational() {
                        return Err(field_err(&format!("alpha[{i}]"), "must be rational"));
                    }
                    Ok(x)
                })
                .collect(),
        }
    }

    /// The evaluation module; requires `lambda` and `b` of equal nonzero length.
    pub fn module(&self, torus: &Torus) -> Result<EvalModule> {
        if self.lambda.is_empty() {
            return Err(field_err("lambda", "at least one highest weight is required"));
        }
        if self.lambda.len() != self.b.len() {
            return Err(field_err("b", format!("{} points for {} highest weights", self.b.len(), self.lambda.len())));
        }
        for (i, l) in self.lambda.iter().enumerate() {
            if l.len() != self.rank {
                return Err(field_err(&format!("lambda[{i}]"), format!("needs {} entries", self.rank)));
            }
            if l.iter().any(|&x| x < 0) {
                return Err(field_err(&format!("lambda[{i}]"), "must be dominant"));
            }
        }
        EvalModule::new(torus, &self.lambda, self.points()?).map_err(|e| field_err("b", e))
    }

    pub fn bounds_or_default(&self, default: Vec<(i64, i64)>) -> Result<Vec<(i64, i64)>> {
        match &self.bounds {
            None => Ok(default),
            Some(b) if b.len() != self.n() => Err(field_err("box", format!("needs {} intervals", self.n()))),
            Some(b) => {
                if b.iter().any(|(lo, hi)| lo > hi) {
                    return Err(field_err("box", "empty interval"));
                }
                Ok(b.clone())
            }
        }
    }

    pub fn check_enabled(&self, name: &str) -> bool {
        self.checks.as_ref().is_none_or(|c| c.iter().any(|x| x == name))
    }

    /// Field-level validation without running any computation beyond the grading.
    pub fn validate(&self) -> Result<()> {
        if let Some(c) = &self.checks {
            for x in c {
                if !CHECK_NAMES.contains(&x.as_str()) {
                    return Err(field_err("checks", format!("unknown check {x:?}; known: {}", CHECK_NAMES.join(", "))));
                }
            }
        }
        if let Some(e) = self.escalate {
            if e < 1 {
                return Err(field_err("escalate", "must be positive"));
            }
        }
        let t = self.torus()?;
        if !self.lambda.is_empty() || !self.b.is_empty() {
            self.module(&t)?;
        }
        self.alpha_values()?;
        self.bounds_or_default(vec![(0, 0); self.n()])?;
        Ok(())
    }
}

/// Parses `--box` text such as `-4:4,-2:3`.
pub fn parse_box(text: &str) -> Result<Vec<(i64, i64)>> {
    text.split(',')
        .map(|part| {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| field_err("box", format!("expected lo:hi, got {part:?}")))?;
            let lo = a.trim().parse::<i64>().map_err(|e| field_err("box", e))?;
            let hi = b.trim().parse::<i64>().map_err(|e| field_err("box", e))?;
            if lo > hi {
                return Err(field_err("box", format!("empty interval {lo}:{hi}")));
            }
            Ok((lo, hi))
        })
        .collect()
}
