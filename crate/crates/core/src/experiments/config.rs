use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::degree_engine::{VerdictConfig, DEFAULT_CANONICAL_STEPS, DEFAULT_TOLERANCE};
use crate::heights::TorusEmbedding;
use crate::map_zoo::{OrbitOptions, Point, SelfMap, SpecError, DEFAULT_BIT_BUDGET};
use crate::ns_calculus::{NSModel, NsDocument, PullbackAction};

use super::ParamCurve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// Location of the offending field, e.g. `maps[1].map.A`.
    pub path: String,
    pub message: String,
    /// Position in the source text when the parser knows it.
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error")?;
        if !self.path.is_empty() {
            write!(f, " at `{}`", self.path)?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " (line {l}, column {c})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

impl From<SpecError> for ConfigError {
    fn from(e: SpecError) -> Self {
        ConfigError { path: e.path, message: e.message, line: None, column: None }
    }
}

fn field_error(path: String, message: impl fmt::Display) -> ConfigError {
    ConfigError { path, message: message.to_string(), line: None, column: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[default]
    #[serde(alias = "verdict-sweep", alias = "verify_ks", alias = "verify-ks")]
    VerdictSweep,
    #[serde(alias = "find-points")]
    FindPoints,
    #[serde(alias = "disjoint-orbits")]
    DisjointOrbits,
    #[serde(alias = "ns-check")]
    NsCheck,
    #[serde(alias = "invariance-suite")]
    InvarianceSuite,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExperimentKind::VerdictSweep => "verdict_sweep",
            ExperimentKind::FindPoints => "find_points",
            ExperimentKind::DisjointOrbits => "disjoint_orbits",
            ExperimentKind::NsCheck => "ns_check",
            ExperimentKind::InvarianceSuite => "invariance_suite",
        };
        write!(f, "{s}")
    }
}

fn default_n_max() -> usize {
    20
}
fn default_bit_budget() -> u64 {
    DEFAULT_BIT_BUDGET
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
fn default_canonical_steps() -> usize {
    DEFAULT_CANONICAL_STEPS
}
fn default_n_samples() -> usize {
    20
}
fn default_epsilon() -> f64 {
    0.1
}
fn default_target() -> usize {
    5
}
fn default_segment() -> usize {
    50
}
fn default_candidates() -> usize {
    200
}
fn default_t_start() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    experiment: ExperimentKind,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_n_max")]
    n_max: usize,
    #[serde(default = "default_bit_budget")]
    bit_budget: u64,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    embedding: TorusEmbedding,
    #[serde(default)]
    density_degree: Option<u32>,
    #[serde(default = "default_canonical_steps")]
    canonical_n_max: usize,
    #[serde(default = "default_n_samples")]
    n_samples: usize,
    #[serde(default = "default_epsilon")]
    epsilon: f64,
    #[serde(default = "default_target")]
    target_size: usize,
    #[serde(default = "default_segment")]
    segment_length: usize,
    #[serde(default = "default_candidates")]
    max_candidates: usize,
    #[serde(default)]
    maps: Vec<RawMapEntry>,
    #[serde(default)]
    model: Option<Value>,
    #[serde(default)]
    output: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMapEntry {
    id: String,
    map: Value,
    #[serde(default)]
    points: Vec<Value>,
    #[serde(default)]
    random_points: usize,
    #[serde(default)]
    curve: Option<RawCurve>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    coords: Vec<String>,
    #[serde(default = "default_t_start")]
    t_start: i64,
}

#[derive(Debug, Clone)]
pub struct MapEntry {
    pub id: String,
    pub map: SelfMap,
    pub points: Vec<Point>,
    /// Extra points drawn from the map's sampler with the config seed.
    pub random_points: usize,
    pub curve: Option<ParamCurve>,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub n_max: usize,
    pub bit_budget: u64,
    pub tolerance: f64,
    pub embedding: TorusEmbedding,
    pub density_degree: Option<u32>,
    pub canonical_n_max: usize,
    pub n_samples: usize,
    pub epsilon: f64,
    pub target_size: usize,
    pub segment_length: usize,
    pub max_candidates: usize,
    pub maps: Vec<MapEntry>,
    pub model: Option<(NSModel, Option<PullbackAction>)>,
    pub output: Option<String>,
}

impl ExperimentConfig {
    /// Parse and validate a JSON configuration.
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            ConfigError {
                path: if path == "." { String::new() } else { path },
                message: strip_position(&inner.to_string()),
                line: (line > 0).then_some(line),
                column: (line > 0).then_some(column),
            }
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawConfig) -> Result<Self, ConfigError> {
        if !(raw.tolerance.is_finite() && raw.tolerance >= 0.0) {
            return Err(field_error("tolerance".into(), "must be a nonnegative number"));
        }
        let mut maps = Vec::with_capacity(raw.maps.len());
        for (i, entry) in raw.maps.into_iter().enumerate() {
            let here = format!("maps[{i}]");
            let map = SelfMap::from_json(&entry.map, &format!("{here}.map"))?;
            let domain = map.domain();
            let points = entry
                .points
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    Point::from_json_for(domain, v).map_err(|e| field_error(format!("{here}.points[{j}]"), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let curve = entry
                .curve
                .map(|c| {
                    let refs: Vec<&str> = c.coords.iter().map(String::as_str).collect();
                    ParamCurve::parse(domain, &refs, c.t_start).map_err(|e| field_error(format!("{here}.curve"), e))
                })
                .transpose()?;
            maps.push(MapEntry { id: entry.id, map, points, random_points: entry.random_points, curve });
        }
        let model = raw
            .model
            .map(|v| {
                let doc: NsDocument = serde_json::from_value(v).map_err(|e| field_error("model".into(), e))?;
                doc.into_parts().map_err(|e| field_error("model".into(), e))
            })
            .transpose()?;
        Ok(ExperimentConfig {
            kind: raw.experiment,
            seed: raw.seed,
            n_max: raw.n_max,
            bit_budget: raw.bit_budget,
            tolerance: raw.tolerance,
            embedding: raw.embedding,
            density_degree: raw.density_degree,
            canonical_n_max: raw.canonical_n_max,
            n_samples: raw.n_samples,
            epsilon: raw.epsilon,
            target_size: raw.target_size,
            segment_length: raw.segment_length,
            max_candidates: raw.max_candidates,
            maps,
            model,
            output: raw.output,
        })
    }

    /// Listed points of the `i`-th map followed by its seeded random samples.
    pub fn points_for(&self, i: usize) -> Vec<Point> {
        let entry = &self.maps[i];
        let mut pts = entry.points.clone();
        if entry.random_points > 0 {
            let seed = self.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            pts.extend(entry.map.sample_points(entry.random_points, seed));
        }
        pts
    }

    pub fn verdict_config(&self) -> VerdictConfig {
        VerdictConfig {
            n_max: self.n_max,
            bit_budget: self.bit_budget,
            tolerance: self.tolerance,
            embedding: self.embedding,
            density_degree: self.density_degree,
        }
    }

    /// Orbit options for canonical heights.
    pub fn canonical_options(&self) -> OrbitOptions {
        OrbitOptions::new(self.canonical_n_max).with_bit_budget(self.bit_budget).with_embedding(self.embedding)
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}
