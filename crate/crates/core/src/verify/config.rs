//! Parameter grids for the checks, read from `config/grids.toml`, and the
//! command-line overrides that narrow them.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, partitions_up_to, Partition};

const BUILTIN: &str = include_str!("../../config/grids.toml");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Master seed; each grid point derives its own seed from it.
    pub seed: u64,
    /// Nonnegative chamber points keyed by coordinate count.
    #[serde(default)]
    pub points: BTreeMap<String, Vec<Vec<f64>>>,
    /// Points of the full chamber keyed by coordinate count.
    #[serde(default)]
    pub signed_points: BTreeMap<String, Vec<Vec<f64>>>,
    #[serde(default)]
    pub checks: BTreeMap<String, GridConfig>,
}

/// Axes of one check's grid. Axes a check does not use are ignored.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub theta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub n: Vec<usize>,
    pub t: Vec<f64>,
    pub shift: Vec<usize>,
    pub kinds: Vec<String>,
    pub fields: Vec<String>,
    /// Explicit partitions; otherwise all `|λ| ≤ max_weight` that fit.
    pub lambda: Vec<Partition>,
    /// Explicit truncations; otherwise all `|λ_max| = max_weight` that fit.
    pub lmax: Vec<Partition>,
    pub max_weight: Option<usize>,
    /// Starting point, replacing the shared point table.
    pub x: Option<Vec<f64>>,
    pub draws: Option<usize>,
    pub step: Option<f64>,
}

impl VerifyConfig {
    /// The grids shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("bundled grid config parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("grid config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn grid(&self, check_id: &str) -> GridConfig {
        self.checks.get(check_id).cloned().unwrap_or_default()
    }

    /// Points with `count` coordinates from the nonnegative or signed table.
    pub fn points(&self, count: usize, signed: bool) -> Vec<Vec<f64>> {
        let table = if signed { &self.signed_points } else { &self.points };
        table.get(&count.to_string()).cloned().unwrap_or_default()
    }
}

/// Single-value replacements for grid axes, as given on the command line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub n: Option<usize>,
    pub lambda: Option<Partition>,
    pub lmax: Option<Partition>,
    pub t: Option<f64>,
    pub x: Option<Vec<f64>>,
    pub draws: Option<usize>,
    pub field: Option<String>,
    pub kind: Option<String>,
    pub step: Option<f64>,
}

impl GridConfig {
    pub fn with_overrides(&self, o: &Overrides) -> GridConfig {
        let mut g = self.clone();
        if let Some(v) = o.theta {
            g.theta = vec![v];
        }
        if let Some(v) = o.alpha {
            g.alpha = vec![v];
        }
        if let Some(v) = o.n {
            g.n = vec![v];
        }
        if let Some(v) = &o.lambda {
            g.lambda = vec![v.clone()];
        }
        if let Some(v) = &o.lmax {
            g.lmax = vec![v.clone()];
        }
        if let Some(v) = o.t {
            g.t = vec![v];
        }
        if let Some(v) = &o.x {
            g.x = Some(v.clone());
        }
        if let Some(v) = o.draws {
            g.draws = Some(v);
        }
        if let Some(v) = &o.field {
            g.fields = vec![v.clone()];
        }
        if let Some(v) = &o.kind {
            g.kinds = vec![v.clone()];
        }
        if let Some(v) = o.step {
            g.step = Some(v);
        }
        g
    }

    /// Partitions with at most `n` parts: the explicit list if given,
    /// otherwise every partition of weight at most `max_weight`.
    pub fn partitions(&self, n: usize) -> Vec<Partition> {
        if self.lambda.is_empty() {
            partitions_up_to(self.max_weight.unwrap_or(0), n)
        } else {
            self.lambda.clone()
        }
    }

    /// Nonempty partitions for moment checks.
    pub fn moment_partitions(&self, n: usize) -> Vec<Partition> {
        self.partitions(n).into_iter().filter(|l| !l.is_empty()).collect()
    }

    /// Truncations `λ_max`: the explicit list, otherwise all partitions of
    /// weight exactly `max_weight` with at most `n` parts (their contained
    /// sets cover every `|μ| ≤ max_weight`).
    pub fn truncations(&self, n: usize) -> Vec<Partition> {
        if self.lmax.is_empty() {
            partitions_of(self.max_weight.unwrap_or(0), n)
        } else {
            self.lmax.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn builtin_parses_and_overrides_apply() {
        let cfg = VerifyConfig::builtin();
        let g = cfg.grid("thm-1.7-matrix");
        assert_eq!(g.n, vec![1, 2, 3]);
        let o = Overrides { theta: Some(1.5), lmax: Some(part![2, 1]), ..Default::default() };
        let g = g.with_overrides(&o);
        assert_eq!(g.theta, vec![1.5]);
        assert_eq!(g.truncations(2), vec![part![2, 1]]);
        assert_eq!(cfg.points(3, false).len(), 3);
        assert!(VerifyConfig::parse("seed = 1\n[checks.x]\nbogus = 2").is_err());
    }
}
